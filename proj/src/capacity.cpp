#include "bicmlab/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "bicmlab/parallel.hpp"

namespace bicm {

namespace {

std::shared_ptr<const GaussHermiteGrid> cached_grid(int order, std::size_t dimension) {
    static std::mutex mutex;
    static std::map<std::pair<int, std::size_t>, std::shared_ptr<const GaussHermiteGrid>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[{order, dimension}];
    if (!slot) slot = std::make_shared<const GaussHermiteGrid>(gauss_hermite_grid(order, dimension));
    return slot;
}

void check_snr(double snr) {
    if (!std::isfinite(snr) || snr < 0.0) throw std::invalid_argument("snr must be finite and >= 0");
}

// A discrete mixture restricted to symbols with positive probability.
struct Mixture {
    std::size_t dim = 0;
    int m = 0;
    std::vector<double> points;      // active x count x dim
    std::vector<double> log_prob;    // log P_j, normalized over the active set
    std::vector<double> prob;
    std::vector<std::uint8_t> bits;  // active x m
    std::vector<double> log_bit_prob;  // active x m: log P_{C_k}(c_{j,k})

    std::size_t size() const noexcept { return prob.size(); }
};

Mixture make_mixture(const Constellation& c, const std::vector<std::size_t>& subset, double total) {
    Mixture mix;
    mix.dim = c.dimension();
    mix.m = c.order();
    const auto& pmf = c.pmf();
    for (std::size_t i : subset) {
        if (pmf[i] <= 0.0) continue;
        const auto x = c.alphabet().point(i);
        mix.points.insert(mix.points.end(), x.begin(), x.end());
        mix.prob.push_back(pmf[i] / total);
        mix.log_prob.push_back(std::log(pmf[i] / total));
        for (int k = 0; k < mix.m; ++k) {
            const int u = c.labeling().bit(i, k);
            mix.bits.push_back(static_cast<std::uint8_t>(u));
            mix.log_bit_prob.push_back(std::log(c.bits().prob(k, u)));
        }
    }
    return mix;
}

Mixture full_mixture(const Constellation& c) {
    std::vector<std::size_t> all(c.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return make_mixture(c, all, 1.0);
}

// Natural-log AMI terms at a fixed effective scale h / sqrt(N0).
// out_bits, when non-empty, receives I(C_k; Y) per k.
double mixture_kernel(const Mixture& mix, double scale, const GaussHermiteGrid& grid, std::span<double> out_bits) {
    const std::size_t n = mix.size();
    const std::size_t dim = mix.dim;
    const int m = mix.m;
    const bool want_bits = !out_bits.empty();
    std::fill(out_bits.begin(), out_bits.end(), 0.0);

    std::vector<double> delta(n * dim);
    std::vector<double> lw(n);
    std::vector<double> ew(n);
    std::vector<double> bit_acc(want_bits ? m : 0);
    double cm = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = mix.points.data() + i * dim;
        for (std::size_t j = 0; j < n; ++j) {
            const double* xj = mix.points.data() + j * dim;
            for (std::size_t d = 0; d < dim; ++d) delta[j * dim + d] = scale * (xi[d] - xj[d]);
        }
        const std::uint8_t* bi = mix.bits.data() + i * m;
        double cm_i = 0.0;
        std::fill(bit_acc.begin(), bit_acc.end(), 0.0);

        for (std::size_t g = 0; g < grid.size(); ++g) {
            const double* t = grid.node(g);
            double mx = -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < n; ++j) {
                double r2 = 0.0;
                for (std::size_t d = 0; d < dim; ++d) {
                    const double v = delta[j * dim + d] + t[d];
                    r2 += v * v;
                }
                lw[j] = mix.log_prob[j] - r2;
                mx = std::max(mx, lw[j]);
            }
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                ew[j] = std::exp(lw[j] - mx);
                s += ew[j];
            }
            const double lse = mx + std::log(s);
            const double w = grid.weights[g];
            cm_i += w * (-grid.norm2[g] - lse);

            if (!want_bits) continue;
            for (int k = 0; k < m; ++k) {
                double sk = 0.0;
                double mk = -std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < n; ++j) {
                    if (mix.bits[j * m + k] != bi[k]) continue;
                    sk += ew[j];
                    mk = std::max(mk, lw[j]);
                }
                double lse_k = 0.0;
                if (sk > 0.0) {
                    lse_k = mx + std::log(sk);
                } else {
                    // Every term of the subset underflowed against the global max.
                    double acc = 0.0;
                    for (std::size_t j = 0; j < n; ++j)
                        if (mix.bits[j * m + k] == bi[k]) acc += std::exp(lw[j] - mk);
                    lse_k = mk + std::log(acc);
                }
                bit_acc[k] += w * (lse_k - lse);
            }
        }
        cm += mix.prob[i] * cm_i;
        for (int k = 0; k < (want_bits ? m : 0); ++k)
            out_bits[k] += mix.prob[i] * (bit_acc[k] - mix.log_bit_prob[i * m + k]);
    }
    return cm;
}

struct FadingDraws {
    std::vector<double> h;  // a single 1.0 for AWGN
};

FadingDraws draws_for(const FadingModel& fading, const QuadratureSpec& q) {
    if (fading.is_awgn()) return {{1.0}};
    return {fading.sample(q.mc_samples, q.seed)};
}

RateEstimate summarize(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

// Evaluates the mixture over fading draws; returns per-draw results in bits.
template <typename PerDraw>
RateEstimate average_over_fading(const FadingModel& fading, const QuadratureSpec& q, PerDraw&& per_draw) {
    const FadingDraws draws = draws_for(fading, q);
    std::vector<double> values(draws.h.size());
    for (std::size_t s = 0; s < draws.h.size(); ++s) values[s] = per_draw(draws.h[s]);
    return summarize(values);
}

constexpr double kLn2 = std::numbers::ln2;

}  // namespace

double awgn_capacity(double snr, int dimensions) {
    check_snr(snr);
    if (dimensions < 1) throw std::invalid_argument("awgn_capacity: dimensions must be >= 1");
    const double n = dimensions;
    return 0.5 * n * std::log2(1.0 + 2.0 * snr / n);
}

double noise_density(const Constellation& c, double snr, const FadingModel& fading) {
    check_snr(snr);
    if (snr == 0.0) return std::numeric_limits<double>::infinity();
    return fading.second_moment * c.energy() / snr;
}

RateEstimate cm_capacity_estimate(const Constellation& c, double snr, const FadingModel& fading,
                                  const QuadratureSpec& q) {
    q.validate();
    check_snr(snr);
    if (snr == 0.0) return {};
    const double inv_sqrt_n0 = 1.0 / std::sqrt(noise_density(c, snr, fading));
    const auto grid = cached_grid(q.gh_order, c.dimension());
    const Mixture mix = full_mixture(c);
    return average_over_fading(fading, q, [&](double h) {
        return mixture_kernel(mix, h * inv_sqrt_n0, *grid, {}) / kLn2;
    });
}

double cm_capacity(const Constellation& c, double snr, const FadingModel& fading, const QuadratureSpec& q) {
    return cm_capacity_estimate(c, snr, fading, q).rate;
}

std::vector<double> bitlevel_amis(const Constellation& c, double snr, const FadingModel& fading,
                                  const QuadratureSpec& q) {
    q.validate();
    check_snr(snr);
    const int m = c.order();
    std::vector<double> total(m, 0.0);
    if (snr == 0.0) return total;
    const double inv_sqrt_n0 = 1.0 / std::sqrt(noise_density(c, snr, fading));
    const auto grid = cached_grid(q.gh_order, c.dimension());
    const Mixture mix = full_mixture(c);
    const FadingDraws draws = draws_for(fading, q);
    std::vector<double> bits(m);
    for (double h : draws.h) {
        mixture_kernel(mix, h * inv_sqrt_n0, *grid, bits);
        for (int k = 0; k < m; ++k) total[k] += bits[k];
    }
    for (double& v : total) v /= kLn2 * static_cast<double>(draws.h.size());
    return total;
}

double bitlevel_ami(const Constellation& c, int k, double snr, const FadingModel& fading, const QuadratureSpec& q) {
    if (k < 0 || k >= c.order()) throw std::invalid_argument("bitlevel_ami: bit index out of range");
    return bitlevel_amis(c, snr, fading, q)[k];
}

RateEstimate bicm_capacity_estimate(const Constellation& c, double snr, const FadingModel& fading,
                                    const QuadratureSpec& q) {
    q.validate();
    check_snr(snr);
    if (snr == 0.0) return {};
    const double inv_sqrt_n0 = 1.0 / std::sqrt(noise_density(c, snr, fading));
    const auto grid = cached_grid(q.gh_order, c.dimension());
    const Mixture mix = full_mixture(c);
    std::vector<double> bits(c.order());
    return average_over_fading(fading, q, [&](double h) {
        mixture_kernel(mix, h * inv_sqrt_n0, *grid, bits);
        double sum = 0.0;
        for (double b : bits) sum += b;
        return sum / kLn2;
    });
}

double bicm_capacity(const Constellation& c, double snr, const FadingModel& fading, const QuadratureSpec& q) {
    return bicm_capacity_estimate(c, snr, fading, q).rate;
}

double conditional_ami(const Constellation& c, int k, int u, double snr, const FadingModel& fading,
                       const QuadratureSpec& q) {
    q.validate();
    check_snr(snr);
    if (k < 0 || k >= c.order() || (u != 0 && u != 1))
        throw std::invalid_argument("conditional_ami: bit index or value out of range");
    const double pu = c.bits().prob(k, u);
    if (snr == 0.0 || pu <= 0.0) return 0.0;
    const double inv_sqrt_n0 = 1.0 / std::sqrt(noise_density(c, snr, fading));
    const auto grid = cached_grid(q.gh_order, c.dimension());
    const Mixture mix = make_mixture(c, c.index_set(k, u), pu);
    return average_over_fading(fading, q, [&](double h) {
               return mixture_kernel(mix, h * inv_sqrt_n0, *grid, {}) / kLn2;
           })
        .rate;
}

double bicm_capacity_diff(const Constellation& c, double snr, const FadingModel& fading, const QuadratureSpec& q) {
    const double cm = cm_capacity(c, snr, fading, q);
    double total = 0.0;
    for (int k = 0; k < c.order(); ++k) {
        for (int u = 0; u <= 1; ++u) {
            const double pu = c.bits().prob(k, u);
            if (pu <= 0.0) continue;
            total += pu * (cm - conditional_ami(c, k, u, snr, fading, q));
        }
    }
    return total;
}

double capacity(CapacityMode mode, const Constellation& c, double snr, const FadingModel& fading,
                const QuadratureSpec& q) {
    return mode == CapacityMode::CM ? cm_capacity(c, snr, fading, q) : bicm_capacity(c, snr, fading, q);
}

double lvalue(std::span<const double> y, std::span<const double> h, int k, const Constellation& c, double n0,
              LlrMode mode) {
    if (!(n0 > 0.0)) throw std::invalid_argument("lvalue: n0 must be > 0");
    if (y.size() != c.dimension() || h.size() != c.dimension())
        throw std::invalid_argument("lvalue: y and h must match the constellation dimension");
    if (k < 0 || k >= c.order()) throw std::invalid_argument("lvalue: bit index out of range");

    auto metric = [&](std::size_t j) {
        const auto x = c.alphabet().point(j);
        double r2 = 0.0;
        for (std::size_t d = 0; d < y.size(); ++d) {
            const double v = y[d] - h[d] * x[d];
            r2 += v * v;
        }
        return r2;
    };
    auto reduce = [&](int u) {
        const auto& set = c.index_set(k, u);
        if (set.empty()) throw std::invalid_argument("lvalue: empty index set");
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> d(set.size());
        for (std::size_t a = 0; a < set.size(); ++a) {
            d[a] = metric(set[a]);
            best = std::min(best, d[a]);
        }
        if (mode == LlrMode::maxlog) return -best / n0;
        double s = 0.0;
        for (double v : d) s += std::exp(-(v - best) / n0);
        return -best / n0 + std::log(s);
    };
    return reduce(1) - reduce(0);
}

std::vector<CapacityPoint> capacity_curve_serial(CapacityMode mode, const Constellation& c,
                                                 std::span<const double> snrs, const FadingModel& fading,
                                                 const QuadratureSpec& q) {
    std::vector<CapacityPoint> out(snrs.size());
    for (std::size_t i = 0; i < snrs.size(); ++i) out[i] = {snrs[i], capacity(mode, c, snrs[i], fading, q)};
    return out;
}

std::vector<CapacityPoint> capacity_curve(CapacityMode mode, const Constellation& c, std::span<const double> snrs,
                                          const FadingModel& fading, const QuadratureSpec& q) {
    q.validate();
    for (double s : snrs) check_snr(s);
    std::vector<CapacityPoint> out(snrs.size());
    parallel_for(snrs.size(), [&](std::size_t i) { out[i] = {snrs[i], capacity(mode, c, snrs[i], fading, q)}; });
    return out;
}

}  // namespace bicm
