#pragma once

#include <functional>
#include <vector>

namespace madelung {

// Discrete carrier for a real-valued function of one coordinate (length or
// time). Nodes are strictly increasing, values finite, at least 3 nodes.
struct GridFunction {
    std::vector<double> nodes;
    std::vector<double> values;

    std::size_t size() const { return nodes.size(); }
    double front() const { return nodes.front(); }
    double back() const { return nodes.back(); }
    double span() const { return nodes.back() - nodes.front(); }

    // Throws std::invalid_argument if any invariant is violated.
    void validate() const;

    // Mean spacing if the grid is uniform to relative tolerance; throws
    // NonUniformGrid otherwise.
    double uniform_spacing() const;

    bool is_uniform() const;
};

// n equally spaced nodes on [a, b], values from fn. Nodes are computed as
// a + i*(b-a)/(n-1), not by accumulation, so spacing checks stay exact.
GridFunction make_uniform_grid(double a, double b, std::size_t n,
                               const std::function<double(double)>& fn);

std::vector<double> uniform_nodes(double a, double b, std::size_t n);

}  // namespace madelung
