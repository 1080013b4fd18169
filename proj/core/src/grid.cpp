#include "madelung/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "madelung/errors.hpp"

namespace madelung {

void GridFunction::validate() const {
    if (nodes.size() < 3) throw std::invalid_argument("GridFunction: need at least 3 nodes");
    if (nodes.size() != values.size())
        throw std::invalid_argument("GridFunction: nodes/values size mismatch");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!std::isfinite(nodes[i]) || !std::isfinite(values[i]))
            throw std::invalid_argument("GridFunction: non-finite entry");
        if (i > 0 && !(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("GridFunction: nodes not strictly increasing");
    }
}

bool GridFunction::is_uniform() const {
    if (nodes.size() < 2) return false;
    const double h = span() / static_cast<double>(nodes.size() - 1);
    const double tol = 1e-12 * std::abs(span()) + 1e-300;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (std::abs((nodes[i] - nodes[i - 1]) - h) > tol) return false;
    }
    return true;
}

double GridFunction::uniform_spacing() const {
    if (!is_uniform()) throw NonUniformGrid("grid spacing is not uniform");
    return span() / static_cast<double>(nodes.size() - 1);
}

std::vector<double> uniform_nodes(double a, double b, std::size_t n) {
    if (n < 2 || !(b > a)) throw std::invalid_argument("uniform_nodes: bad range");
    std::vector<double> x(n);
    const double w = b - a;
    for (std::size_t i = 0; i < n; ++i)
        x[i] = a + w * (static_cast<double>(i) / static_cast<double>(n - 1));
    x.front() = a;
    x.back() = b;
    return x;
}

GridFunction make_uniform_grid(double a, double b, std::size_t n,
                               const std::function<double(double)>& fn) {
    GridFunction g;
    g.nodes = uniform_nodes(a, b, n);
    g.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) g.values[i] = fn(g.nodes[i]);
    g.validate();
    return g;
}

}  // namespace madelung
