#pragma once

#include <cstdint>
#include <vector>

namespace bicm {

// Nodes and weights for the integral of f(t) exp(-t^2) over the real line.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussHermiteRule gauss_hermite(int order);

// Tensor product of a Gauss-Hermite rule over N dimensions, with weights
// rescaled so that sum(weight * f(t)) approximates E[f(T)] for T ~ N(0, I/2).
struct GaussHermiteGrid {
    std::size_t dimension = 0;
    std::vector<double> nodes;   // count x dimension, row-major
    std::vector<double> weights; // sum to one
    std::vector<double> norm2;   // ||t||^2 per node

    std::size_t size() const noexcept { return weights.size(); }
    const double* node(std::size_t j) const { return nodes.data() + j * dimension; }
};

GaussHermiteGrid gauss_hermite_grid(int order, std::size_t dimension);

struct QuadratureSpec {
    int gh_order = 40;
    std::size_t mc_samples = 10000;
    std::uint64_t seed = 20110101;

    void validate() const;
};

}  // namespace bicm
