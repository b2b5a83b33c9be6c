#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "bicmlab/alphabets.hpp"
#include "bicmlab/capacity.hpp"
#include "bicmlab/labelings.hpp"
#include "bicmlab/matrix.hpp"

namespace bicm {

inline constexpr double kLog2e = std::numbers::log2e;

// Low-SNR slope of a capacity curve, in bits per unit SNR.
struct AlphaCoefficient {
    double value = 0.0;

    double normalized() const noexcept { return value / kLog2e; }
};

// log2(e) (1 - ||E[X]||^2 / Es)
AlphaCoefficient alpha_cm(const Constellation& c);

// Uses the uniform fast path when every bit is equiprobable.
AlphaCoefficient alpha_bicm(const Constellation& c);
// Always evaluates the arbitrary-pmf expression. A bit with a zero-probability
// value contributes through its surviving branch only.
AlphaCoefficient alpha_bicm_general(const Constellation& c);
// Uniform inputs: (log2 e / Es) sum_k ||xt_{2^k}||^2, where xt is the
// transform of the alphabet with rows ordered by codeword value.
AlphaCoefficient alpha_bicm_ht(const InputAlphabet& x, const Labeling& l);

// Literal closed forms for PAM and PSK with the four named labelings.
// Valid for any power-of-two M the labeling supports (M up to 2^30).
AlphaCoefficient alpha_closed_form(AlphabetKind alphabet, LabelingKind labeling, std::size_t M);

struct FooVerdict {
    bool is_foo = false;
    Matrix projection;        // m x N, row k is v_k (columns of Q)
    double residual = 0.0;    // ||X - Q V||^2 / ||X||^2
    bool orthogonal = false;  // v_k pairwise orthogonal
};

inline constexpr double kFooTolerance = 1e-9;

// Least-squares fit of X = Q(L) V for uniform inputs.
FooVerdict is_foo(const InputAlphabet& x, const Labeling& l);
// Throws std::invalid_argument unless the bit distribution is uniform.
FooVerdict is_foo(const Constellation& c);

// f^AW(rc) = N/(2 rc) (2^{2 rc / N} - 1), linear
double f_awgn(double rc, int dimensions);
// d f^AW / d rc
double g_awgn(double rc, int dimensions);

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

struct MinimumEbN0 {
    double rc = 0.0;         // 0 when the minimum is the zero-rate limit
    double ebn0 = 0.0;       // linear
    std::vector<double> interior_roots;  // rc values where g changes sign - to +
    double zero_rate_limit = 0.0;        // linear
};

// Monotone map snr -> rate with inversion support. The callable is the
// capacity evaluator; the samples fix the bracketing grid and are checked for
// strict monotonicity on construction.
class RateFunction {
public:
    RateFunction(std::function<double(double)> rate, double second_moment, std::vector<CapacityPoint> samples);

    // Samples the capacity of c over count log-spaced snr values in [snr_lo, snr_hi].
    static RateFunction sample(CapacityMode mode, const Constellation& c, const FadingModel& fading,
                               const QuadratureSpec& q, double snr_lo = 1e-4, double snr_hi = 1e3,
                               std::size_t count = 57);

    const std::vector<CapacityPoint>& samples() const noexcept { return samples_; }
    double max_rate() const noexcept { return samples_.back().rate; }
    double rate(double snr) const { return rate_(snr); }

    // snr such that rate(snr) = rc, bisected to full double precision.
    double inverse(double rc) const;
    // C^{-1}(rc) / (E[H^2] rc), linear Eb/N0
    double f(double rc) const;
    double f_db(double rc) const { return to_db(f(rc)); }
    // Central difference of f with relative step 1e-4.
    double g(double rc) const;

    // rc -> 0+ limit of f from Richardson extrapolation over {4h, 2h, h}.
    double zero_rate_limit(double h = 1e-3) const;

    // Scans 200 log-spaced rc values in [rc_lo, rc_hi] for g sign changes.
    // rc_hi defaults to 0.95 max_rate().
    MinimumEbN0 min_ebn0(double rc_lo = 1e-3, double rc_hi = 0.0) const;

private:
    std::function<double(double)> rate_;
    double second_moment_ = 1.0;
    std::vector<CapacityPoint> samples_;
};

// 10 log10(f(rc) / f^AW(rc))
double snr_gap_db(const RateFunction& rf, double rc, int dimensions);
// 10 log10(log2 e / alpha); +infinity when alpha = 0.
double asymptotic_gap_db(const AlphaCoefficient& alpha);
// 10 log10(1 / alpha): the rc -> 0+ limit of f in dB.
double zero_rate_ebn0_db(const AlphaCoefficient& alpha);

}  // namespace bicm
