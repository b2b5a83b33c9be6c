#include "bicmlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bicm {

// Newton iteration on the orthonormal Hermite recurrence, with the usual
// asymptotic starting guesses for the largest roots and deflation of the
// roots already found. The recurrence carries the
// factor exp(-z^2/2) so high orders do not overflow near the outer nodes.
GaussHermiteRule gauss_hermite(int order) {
    if (order < 1 || order > 200) throw std::invalid_argument("gauss_hermite: order must be in [1, 200]");
    const int n = order;
    GaussHermiteRule rule{std::vector<double>(n), std::vector<double>(n)};
    const double pim4 = std::pow(std::numbers::pi, -0.25);
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[1];
        } else {
            z = 2.0 * z - rule.nodes[i - 2];
        }
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4 * std::exp(-0.5 * z * z);
            double p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            // Deflate the roots already found so a poor guess cannot fall back onto one.
            double deflate = 0.0;
            for (int k = 0; k < i; ++k) deflate += 1.0 / (z - rule.nodes[k]);
            const double step = p1 / (pp - p1 * deflate);
            const double prev = z;
            z -= step;
            // Roots are found in decreasing order; stay between 0 and the previous one.
            if (i > 0 && z >= rule.nodes[i - 1]) z = 0.5 * (prev + rule.nodes[i - 1]);
            if (z < 0.0) z = 0.5 * prev;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        rule.nodes[i] = z;
        rule.nodes[n - 1 - i] = -z;
        rule.weights[i] = 2.0 * std::exp(-z * z) / (pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

GaussHermiteGrid gauss_hermite_grid(int order, std::size_t dimension) {
    if (dimension < 1 || dimension > 4) throw std::invalid_argument("gauss_hermite_grid: dimension must be 1..4");
    const GaussHermiteRule rule = gauss_hermite(order);
    const std::size_t n = rule.nodes.size();
    std::size_t count = 1;
    for (std::size_t d = 0; d < dimension; ++d) count *= n;

    GaussHermiteGrid grid;
    grid.dimension = dimension;
    grid.nodes.resize(count * dimension);
    grid.weights.resize(count);
    grid.norm2.resize(count);
    const double scale = std::pow(std::numbers::pi, -0.5 * static_cast<double>(dimension));
    for (std::size_t j = 0; j < count; ++j) {
        std::size_t rem = j;
        double w = scale;
        double r2 = 0.0;
        for (std::size_t d = 0; d < dimension; ++d) {
            const std::size_t idx = rem % n;
            rem /= n;
            const double t = rule.nodes[idx];
            grid.nodes[j * dimension + d] = t;
            w *= rule.weights[idx];
            r2 += t * t;
        }
        grid.weights[j] = w;
        grid.norm2[j] = r2;
    }
    return grid;
}

void QuadratureSpec::validate() const {
    if (gh_order < 8) throw std::invalid_argument("quadrature: gh_order must be >= 8");
    if (mc_samples < 1) throw std::invalid_argument("quadrature: mc_samples must be >= 1");
}

}  // namespace bicm
