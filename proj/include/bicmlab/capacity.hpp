#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "bicmlab/alphabets.hpp"
#include "bicmlab/quadrature.hpp"

namespace bicm {

// Raised when a numerical result violates a structural guarantee
// (e.g. a capacity curve that is not increasing).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// All SNR values are linear: snr = E[H^2] Es / N0.
struct CapacityPoint {
    double snr = 0.0;
    double rate = 0.0;  // bits per N-dimensional symbol
};

// Fading averages are Monte-Carlo estimates; std_error is zero for AWGN.
struct RateEstimate {
    double rate = 0.0;
    double std_error = 0.0;
};

enum class CapacityMode { CM, BICM };

// (N/2) log2(1 + 2 snr / N)
double awgn_capacity(double snr, int dimensions);

double noise_density(const Constellation& c, double snr, const FadingModel& fading);

double cm_capacity(const Constellation& c, double snr, const FadingModel& fading, const QuadratureSpec& q);
double bitlevel_ami(const Constellation& c, int k, double snr, const FadingModel& fading, const QuadratureSpec& q);
// I(C_k; Y) for every k in one pass.
std::vector<double> bitlevel_amis(const Constellation& c, double snr, const FadingModel& fading,
                                  const QuadratureSpec& q);
double bicm_capacity(const Constellation& c, double snr, const FadingModel& fading, const QuadratureSpec& q);

RateEstimate cm_capacity_estimate(const Constellation& c, double snr, const FadingModel& fading,
                                  const QuadratureSpec& q);
RateEstimate bicm_capacity_estimate(const Constellation& c, double snr, const FadingModel& fading,
                                    const QuadratureSpec& q);

// I_{X|C_k=u}(X;Y): AMI of the sub-constellation I_{k,u} under P_{X|C_k=u},
// at the noise level of the full constellation. Zero when P_{C_k}(u) = 0.
double conditional_ami(const Constellation& c, int k, int u, double snr, const FadingModel& fading,
                       const QuadratureSpec& q);

// sum_k sum_u P_{C_k}(u) [I(X;Y) - I_{X|C_k=u}(X;Y)]
double bicm_capacity_diff(const Constellation& c, double snr, const FadingModel& fading, const QuadratureSpec& q);

double capacity(CapacityMode mode, const Constellation& c, double snr, const FadingModel& fading,
                const QuadratureSpec& q);

enum class LlrMode { exact, maxlog };

// log P(Y=y|C_k=1) / P(Y=y|C_k=0) for equiprobable symbols, natural log.
double lvalue(std::span<const double> y, std::span<const double> h, int k, const Constellation& c, double n0,
              LlrMode mode);

// Capacity over an SNR grid. The OpenMP version and the serial reference
// return bit-identical results: each point is evaluated by the same serial code.
std::vector<CapacityPoint> capacity_curve(CapacityMode mode, const Constellation& c, std::span<const double> snrs,
                                          const FadingModel& fading, const QuadratureSpec& q);
std::vector<CapacityPoint> capacity_curve_serial(CapacityMode mode, const Constellation& c,
                                                 std::span<const double> snrs, const FadingModel& fading,
                                                 const QuadratureSpec& q);

}  // namespace bicm
