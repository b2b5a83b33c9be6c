#pragma once

#include <span>
#include <vector>

#include "bicmlab/alphabets.hpp"
#include "bicmlab/capacity.hpp"
#include "bicmlab/labelings.hpp"

namespace bicm {

struct ShapingResult {
    double snr = 0.0;
    std::vector<double> best_p0;
    double best_rate = 0.0;
    double baseline_rate = 0.0;  // uniform bits at the same snr
};

struct ShapingOptions {
    double grid_step = 0.01;
    double coarse_step = 0.05;
    // A candidate replaces the incumbent only if it is better by more than this.
    double tie_tolerance = 1e-12;
    CoincidentPoints coincident = CoincidentPoints::reject;
};

inline constexpr int kMaxShapingOrder = 4;

// BICM capacity with bits distributed as p0. Zero when the pmf collapses onto
// a point set with no energy.
double shaped_bicm_capacity(const InputAlphabet& x, const Labeling& l, std::span<const double> p0, double snr,
                            const FadingModel& fading, const QuadratureSpec& q,
                            CoincidentPoints coincident = CoincidentPoints::reject);

// Coarse exhaustive pass, then a fine pass in a box of +-coarse_step around the
// coarse optimum. Ties resolve to the lexicographically smallest p0.
ShapingResult optimize_bit_pmfs(const InputAlphabet& x, const Labeling& l, double snr, const FadingModel& fading,
                                const QuadratureSpec& q, const ShapingOptions& options = {});
ShapingResult optimize_bit_pmfs_serial(const InputAlphabet& x, const Labeling& l, double snr,
                                       const FadingModel& fading, const QuadratureSpec& q,
                                       const ShapingOptions& options = {});

// Single-stage exhaustive search over the whole grid_step lattice.
ShapingResult full_grid_search(const InputAlphabet& x, const Labeling& l, double snr, const FadingModel& fading,
                               const QuadratureSpec& q, const ShapingOptions& options = {});

}  // namespace bicm
