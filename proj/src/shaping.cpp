#include "bicmlab/shaping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bicmlab/parallel.hpp"

namespace bicm {

namespace {

struct Lattice {
    int units = 0;   // lattice points per unit interval
    int coarse = 0;  // coarse stride in lattice units
};

Lattice make_lattice(const ShapingOptions& o) {
    if (!(o.grid_step > 0.0) || o.grid_step > 1.0) throw std::invalid_argument("shaping: grid_step must be in (0, 1]");
    const double units = std::round(1.0 / o.grid_step);
    if (std::abs(units * o.grid_step - 1.0) > 1e-9) throw std::invalid_argument("shaping: grid_step must divide 1");
    if (!(o.coarse_step > 0.0)) throw std::invalid_argument("shaping: coarse_step must be > 0");
    Lattice lat;
    lat.units = static_cast<int>(units);
    lat.coarse = std::max(1, static_cast<int>(std::lround(o.coarse_step / o.grid_step)));
    return lat;
}

void check_order(const Labeling& l) {
    if (l.order() > kMaxShapingOrder) throw std::invalid_argument("shaping: at most 4 bits per symbol");
}

// Candidate lattice coordinates per bit; the product is visited lexicographically.
using Axes = std::vector<std::vector<int>>;

std::size_t product_size(const Axes& axes) {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.size();
    return n;
}

std::vector<int> point_at(const Axes& axes, std::size_t index) {
    std::vector<int> out(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
        out[k] = axes[k][index % axes[k].size()];
        index /= axes[k].size();
    }
    return out;
}

struct Best {
    std::vector<int> point;
    double rate = -1.0;
};

Best search(const InputAlphabet& x, const Labeling& l, double snr, const FadingModel& fading,
            const QuadratureSpec& q, const ShapingOptions& o, const Lattice& lat, const Axes& axes, bool parallel) {
    const std::size_t n = product_size(axes);
    std::vector<double> rates(n);
    auto eval = [&](std::size_t i) {
        const auto pt = point_at(axes, i);
        std::vector<double> p0(pt.size());
        for (std::size_t k = 0; k < pt.size(); ++k) p0[k] = static_cast<double>(pt[k]) / lat.units;
        rates[i] = shaped_bicm_capacity(x, l, p0, snr, fading, q, o.coincident);
    };
    if (parallel)
        parallel_for(n, eval);
    else
        for (std::size_t i = 0; i < n; ++i) eval(i);

    Best best;
    for (std::size_t i = 0; i < n; ++i) {
        if (best.point.empty() || rates[i] > best.rate + o.tie_tolerance) {
            best.point = point_at(axes, i);
            best.rate = rates[i];
        }
    }
    return best;
}

ShapingResult finish(const InputAlphabet& x, const Labeling& l, double snr, const FadingModel& fading,
                     const QuadratureSpec& q, const ShapingOptions& o, const Lattice& lat, const Best& best) {
    ShapingResult r;
    r.snr = snr;
    r.best_rate = best.rate;
    for (int v : best.point) r.best_p0.push_back(static_cast<double>(v) / lat.units);
    const std::vector<double> half(l.order(), 0.5);
    r.baseline_rate = shaped_bicm_capacity(x, l, half, snr, fading, q, o.coincident);
    return r;
}

ShapingResult two_stage(const InputAlphabet& x, const Labeling& l, double snr, const FadingModel& fading,
                        const QuadratureSpec& q, const ShapingOptions& o, bool parallel) {
    check_order(l);
    const Lattice lat = make_lattice(o);
    const int m = l.order();

    std::vector<int> coarse_axis;
    for (int v = 0; v < lat.units; v += lat.coarse) coarse_axis.push_back(v);
    coarse_axis.push_back(lat.units);
    const Best coarse = search(x, l, snr, fading, q, o, lat, Axes(m, coarse_axis), parallel);

    Axes fine(m);
    for (int k = 0; k < m; ++k) {
        const int lo = std::max(0, coarse.point[k] - lat.coarse);
        const int hi = std::min(lat.units, coarse.point[k] + lat.coarse);
        for (int v = lo; v <= hi; ++v) fine[k].push_back(v);
    }
    const Best refined = search(x, l, snr, fading, q, o, lat, fine, parallel);
    return finish(x, l, snr, fading, q, o, lat, refined);
}

}  // namespace

double shaped_bicm_capacity(const InputAlphabet& x, const Labeling& l, std::span<const double> p0, double snr,
                            const FadingModel& fading, const QuadratureSpec& q, CoincidentPoints coincident) {
    BitDistribution bits{std::vector<double>(p0.begin(), p0.end())};
    bits.validate();
    double es = 0.0;
    const auto pmf = symbol_pmf(bits, l);
    for (std::size_t i = 0; i < x.size(); ++i) es += pmf.probs[i] * norm2(x.point(i));
    // All mass on the origin carries no information.
    if (!(es > 0.0)) return 0.0;
    return bicm_capacity(Constellation(x, l, std::move(bits), coincident), snr, fading, q);
}

ShapingResult optimize_bit_pmfs(const InputAlphabet& x, const Labeling& l, double snr, const FadingModel& fading,
                                const QuadratureSpec& q, const ShapingOptions& options) {
    return two_stage(x, l, snr, fading, q, options, true);
}

ShapingResult optimize_bit_pmfs_serial(const InputAlphabet& x, const Labeling& l, double snr,
                                       const FadingModel& fading, const QuadratureSpec& q,
                                       const ShapingOptions& options) {
    return two_stage(x, l, snr, fading, q, options, false);
}

ShapingResult full_grid_search(const InputAlphabet& x, const Labeling& l, double snr, const FadingModel& fading,
                               const QuadratureSpec& q, const ShapingOptions& options) {
    check_order(l);
    const Lattice lat = make_lattice(options);
    std::vector<int> axis;
    for (int v = 0; v <= lat.units; ++v) axis.push_back(v);
    const Best best = search(x, l, snr, fading, q, options, lat, Axes(l.order(), axis), true);
    return finish(x, l, snr, fading, q, options, lat, best);
}

}  // namespace bicm
