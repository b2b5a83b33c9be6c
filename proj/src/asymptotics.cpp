#include "bicmlab/asymptotics.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include "bicmlab/hadamard.hpp"

namespace bicm {

namespace {

double squared_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return s;
}

}  // namespace

AlphaCoefficient alpha_cm(const Constellation& c) {
    return {kLog2e * (1.0 - norm2(c.mean()) / c.energy())};
}

AlphaCoefficient alpha_bicm(const Constellation& c) {
    if (!c.is_uniform()) return alpha_bicm_general(c);
    const std::size_t M = c.size();
    const std::size_t N = c.dimension();
    const int m = c.order();
    double total = 0.0;
    std::vector<double> acc(N);
    for (int k = 0; k < m; ++k) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t i = 0; i < M; ++i) {
            const double s = c.labeling().bit(i, k) ? -1.0 : 1.0;
            const auto x = c.alphabet().point(i);
            for (std::size_t n = 0; n < N; ++n) acc[n] += s * x[n];
        }
        total += squared_norm(acc) / static_cast<double>(M * M);
    }
    return {kLog2e * total / c.energy()};
}

// Per bit k, with w_ik = sqrt(P_{C_k}(c_ik)) prod_{k' != k} P_{C_k'}(c_ik'):
// (1/2)(||sum_i x_i w_ik||^2 + ||sum_i s_ik x_i w_ik||^2) - ||E[X]||^2.
AlphaCoefficient alpha_bicm_general(const Constellation& c) {
    const std::size_t M = c.size();
    const std::size_t N = c.dimension();
    const int m = c.order();
    const auto& bits = c.bits();
    const double mean2 = norm2(c.mean());
    double total = 0.0;
    std::vector<double> plain(N);
    std::vector<double> signed_sum(N);
    for (int k = 0; k < m; ++k) {
        std::fill(plain.begin(), plain.end(), 0.0);
        std::fill(signed_sum.begin(), signed_sum.end(), 0.0);
        for (std::size_t i = 0; i < M; ++i) {
            const int u = c.labeling().bit(i, k);
            double w = std::sqrt(bits.prob(k, u));
            for (int kk = 0; kk < m; ++kk)
                if (kk != k) w *= bits.prob(kk, c.labeling().bit(i, kk));
            if (w == 0.0) continue;
            const double s = u ? -1.0 : 1.0;
            const auto x = c.alphabet().point(i);
            for (std::size_t n = 0; n < N; ++n) {
                plain[n] += w * x[n];
                signed_sum[n] += s * w * x[n];
            }
        }
        total += 0.5 * (squared_norm(plain) + squared_norm(signed_sum)) - mean2;
    }
    return {kLog2e * total / c.energy()};
}

AlphaCoefficient alpha_bicm_ht(const InputAlphabet& x, const Labeling& l) {
    if (x.size() != l.size()) throw std::invalid_argument("alpha_bicm_ht: alphabet and labeling sizes differ");
    const std::size_t M = x.size();
    const std::size_t N = x.dimension();
    Matrix ordered(M, N);
    double es = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        const auto p = x.point(i);
        std::copy(p.begin(), p.end(), ordered.row(l.codeword(i)).begin());
        es += norm2(p);
    }
    es /= static_cast<double>(M);
    if (!(es > 0.0)) throw std::invalid_argument("alpha_bicm_ht: zero average energy");
    const Matrix xt = transform(ordered);
    double total = 0.0;
    for (int k = 0; k < l.order(); ++k) total += norm2(xt.row(std::size_t{1} << k));
    return {kLog2e * total / es};
}

AlphaCoefficient alpha_closed_form(AlphabetKind alphabet, LabelingKind labeling, std::size_t M) {
    if (!is_power_of_two(M) || M < 2 || M > (std::size_t{1} << 30))
        throw std::invalid_argument("alpha_closed_form: M must be a power of two in [2, 2^30]");
    const int m = std::countr_zero(M);
    if (labeling == LabelingKind::BSGC && m < 3)
        throw std::invalid_argument("alpha_closed_form: BSGC needs M >= 8");
    if (labeling == LabelingKind::FBC && m < 2) throw std::invalid_argument("alpha_closed_form: FBC needs M >= 4");
    const double Md = static_cast<double>(M);

    if (alphabet == AlphabetKind::PAM) {
        switch (labeling) {
            case LabelingKind::BRGC:
            case LabelingKind::FBC:
                return {3.0 * Md * Md / (4.0 * (Md * Md - 1.0)) * kLog2e};
            case LabelingKind::NBC:
                return {kLog2e};
            case LabelingKind::BSGC:
                return {0.0};
        }
    }

    if (m < 2) throw std::invalid_argument("alpha_closed_form: PSK needs M >= 4");
    const double s = std::sin(std::numbers::pi / Md);
    const double base = 4.0 * kLog2e / (Md * Md * s * s);
    switch (labeling) {
        case LabelingKind::BRGC:
            return {2.0 * base};
        case LabelingKind::NBC:
            return {base};
        case LabelingKind::BSGC: {
            const double t = 1.0 - 1.0 / std::cos(2.0 * std::numbers::pi / Md);
            return {base * (1.0 + t * t)};
        }
        case LabelingKind::FBC: {
            double sum = 1.0;
            for (int k = 2; k <= m; ++k) {
                const double t = std::tan(std::numbers::pi / std::ldexp(1.0, k));
                sum += t * t;
            }
            return {base * sum};
        }
    }
    throw std::invalid_argument("alpha_closed_form: unsupported combination");
}

FooVerdict is_foo(const InputAlphabet& x, const Labeling& l) {
    if (x.size() != l.size()) throw std::invalid_argument("is_foo: alphabet and labeling sizes differ");
    const Matrix q = modified_matrix(l);
    const Matrix& pts = x.points();
    FooVerdict verdict;
    verdict.projection = multiply(transpose(q), pts);
    for (double& v : verdict.projection.data()) v /= static_cast<double>(x.size());

    const Matrix fit = multiply(q, verdict.projection);
    double err = 0.0;
    for (std::size_t i = 0; i < pts.data().size(); ++i) {
        const double d = pts.data()[i] - fit.data()[i];
        err += d * d;
    }
    const double energy = frobenius_norm2(pts);
    verdict.residual = energy > 0.0 ? err / energy : 0.0;
    verdict.is_foo = energy > 0.0 && verdict.residual <= kFooTolerance;

    verdict.orthogonal = true;
    const Matrix& v = verdict.projection;
    for (std::size_t a = 0; a < v.rows(); ++a) {
        for (std::size_t b = a + 1; b < v.rows(); ++b) {
            double dot = 0.0;
            for (std::size_t n = 0; n < v.cols(); ++n) dot += v(a, n) * v(b, n);
            const double scale = std::sqrt(norm2(v.row(a)) * norm2(v.row(b)));
            if (std::abs(dot) > kFooTolerance * std::max(scale, 1e-300)) verdict.orthogonal = false;
        }
    }
    return verdict;
}

FooVerdict is_foo(const Constellation& c) {
    if (!c.is_uniform()) throw std::invalid_argument("is_foo: requires a uniform input distribution");
    return is_foo(c.alphabet(), c.labeling());
}

double f_awgn(double rc, int dimensions) {
    if (!(rc > 0.0)) throw std::invalid_argument("f_awgn: rc must be > 0");
    const double n = dimensions;
    return n / (2.0 * rc) * std::expm1(2.0 * rc / n * std::numbers::ln2);
}

double g_awgn(double rc, int dimensions) {
    if (!(rc > 0.0)) throw std::invalid_argument("g_awgn: rc must be > 0");
    const double n = dimensions;
    const double p = std::exp2(2.0 * rc / n);
    return (n + (2.0 * rc * std::numbers::ln2 - n) * p) / (2.0 * rc * rc);
}

RateFunction::RateFunction(std::function<double(double)> rate, double second_moment,
                           std::vector<CapacityPoint> samples)
    : rate_(std::move(rate)), second_moment_(second_moment), samples_(std::move(samples)) {
    if (!rate_) throw std::invalid_argument("RateFunction: empty rate callable");
    if (!(second_moment_ > 0.0)) throw std::invalid_argument("RateFunction: E[H^2] must be > 0");
    if (samples_.empty()) throw std::invalid_argument("RateFunction: no samples");
    double prev_snr = 0.0;
    double prev_rate = 0.0;
    for (const auto& p : samples_) {
        if (!(p.snr > prev_snr)) throw std::invalid_argument("RateFunction: snr samples must increase");
        if (!(p.rate > prev_rate))
            throw NumericError("capacity curve is not strictly increasing near snr = " + std::to_string(p.snr));
        prev_snr = p.snr;
        prev_rate = p.rate;
    }
}

RateFunction RateFunction::sample(CapacityMode mode, const Constellation& c, const FadingModel& fading,
                                  const QuadratureSpec& q, double snr_lo, double snr_hi, std::size_t count) {
    if (!(snr_lo > 0.0) || !(snr_hi > snr_lo) || count < 2)
        throw std::invalid_argument("RateFunction::sample: need 0 < snr_lo < snr_hi and count >= 2");
    std::vector<double> snrs(count);
    const double step = std::log(snr_hi / snr_lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) snrs[i] = snr_lo * std::exp(step * static_cast<double>(i));
    auto curve = capacity_curve(mode, c, snrs, fading, q);

    // Drop the saturated tail, where increments fall below quadrature accuracy.
    const double ceiling = static_cast<double>(c.order()) - 1e-3;
    std::size_t keep = 0;
    while (keep < curve.size() && curve[keep].rate < ceiling) ++keep;
    if (keep < curve.size()) ++keep;
    curve.resize(std::max<std::size_t>(keep, 1));

    auto rate = [mode, c, fading, q](double snr) { return capacity(mode, c, snr, fading, q); };
    return RateFunction(rate, fading.second_moment, std::move(curve));
}

double RateFunction::inverse(double rc) const {
    if (!(rc > 0.0) || !(rc <= max_rate()))
        throw std::invalid_argument("RateFunction: rc outside the sampled range (0, " + std::to_string(max_rate()) +
                                    "]");
    double lo = 0.0;
    double hi = samples_.back().snr;
    for (const auto& p : samples_) {
        if (p.rate >= rc) {
            hi = p.snr;
            break;
        }
        lo = p.snr;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (rate_(mid) < rc)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double RateFunction::f(double rc) const { return inverse(rc) / (second_moment_ * rc); }

double RateFunction::g(double rc) const {
    const double h = 1e-4 * rc;
    return (f(rc + h) - f(rc - h)) / (2.0 * h);
}

double RateFunction::zero_rate_limit(double h) const {
    return (8.0 * f(h) - 6.0 * f(2.0 * h) + f(4.0 * h)) / 3.0;
}

MinimumEbN0 RateFunction::min_ebn0(double rc_lo, double rc_hi) const {
    if (rc_hi <= 0.0) rc_hi = 0.95 * max_rate();
    if (!(rc_lo > 0.0) || !(rc_hi > rc_lo)) throw std::invalid_argument("min_ebn0: need 0 < rc_lo < rc_hi");
    constexpr int kScan = 200;
    std::vector<double> rcs(kScan);
    std::vector<double> gs(kScan);
    const double step = std::log(rc_hi / rc_lo) / (kScan - 1);
    for (int i = 0; i < kScan; ++i) {
        rcs[i] = rc_lo * std::exp(step * i);
        gs[i] = g(rcs[i]);
    }

    MinimumEbN0 out;
    out.zero_rate_limit = zero_rate_limit(rc_lo);
    out.rc = 0.0;
    out.ebn0 = out.zero_rate_limit;
    for (int i = 0; i + 1 < kScan; ++i) {
        if (!(gs[i] < 0.0 && gs[i + 1] >= 0.0)) continue;
        double lo = rcs[i];
        double hi = rcs[i + 1];
        for (int it = 0; it < 60 && hi - lo > 1e-12 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (g(mid) < 0.0)
                lo = mid;
            else
                hi = mid;
        }
        const double root = 0.5 * (lo + hi);
        out.interior_roots.push_back(root);
        const double value = f(root);
        if (value < out.ebn0) {
            out.ebn0 = value;
            out.rc = root;
        }
    }
    return out;
}

double snr_gap_db(const RateFunction& rf, double rc, int dimensions) {
    return to_db(rf.f(rc) / f_awgn(rc, dimensions));
}

double asymptotic_gap_db(const AlphaCoefficient& alpha) {
    if (alpha.value <= 0.0) return std::numeric_limits<double>::infinity();
    return to_db(kLog2e / alpha.value);
}

double zero_rate_ebn0_db(const AlphaCoefficient& alpha) {
    if (alpha.value <= 0.0) return std::numeric_limits<double>::infinity();
    return to_db(1.0 / alpha.value);
}

}  // namespace bicm
