#include "madelung/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace madelung {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_label(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& basename,
                                  const Table& table, OutputFormat format) {
    std::filesystem::create_directories(dir);
    if (format == OutputFormat::Csv) {
        std::string text;
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            if (i) text += ',';
            text += table.header[i];
        }
        text += '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) text += ',';
                if (std::holds_alternative<double>(row[i]))
                    text += format_double(std::get<double>(row[i]));
                else
                    text += csv_escape(std::get<std::string>(row[i]));
            }
            text += '\n';
        }
        const auto path = dir / (basename + ".csv");
        write_text(path, text);
        return path;
    }

    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i) {
            if (std::holds_alternative<double>(row[i]))
                obj[table.header[i]] = std::get<double>(row[i]);
            else
                obj[table.header[i]] = std::get<std::string>(row[i]);
        }
        arr.push_back(std::move(obj));
    }
    const auto path = dir / (basename + ".json");
    write_text(path, arr.dump(2) + "\n");
    return path;
}

}  // namespace madelung
