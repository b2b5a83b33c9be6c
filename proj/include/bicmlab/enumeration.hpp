#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bicmlab/alphabets.hpp"
#include "bicmlab/labelings.hpp"

namespace bicm {

struct AlphaClass {
    double normalized = 0.0;  // alpha / log2(e)
    std::size_t count = 0;
};

// Distinct first-order coefficients over every labeling of an alphabet.
struct AlphaCensus {
    std::vector<AlphaClass> classes;  // ascending in alpha
    std::size_t total = 0;
    double min_class_gap = 0.0;  // smallest spacing between adjacent classes

    std::size_t class_count() const noexcept { return classes.size(); }
    // Number of distinct multiplicities (the distinct masses of the alpha pmf).
    std::size_t distinct_multiplicities() const;
};

// Absolute merge tolerance on normalized alpha.
inline constexpr double kCensusTolerance = 1e-9;

// Every bijection codewords -> points of an 8-point alphabet. Throws unless M = 8.
AlphaCensus classify_labelings(const InputAlphabet& x);
AlphaCensus classify_labelings_serial(const InputAlphabet& x);

// Visits all M! labelings of order m (m <= 3) in lexicographic codeword order:
// row i of the visited labeling carries codeword perm[i].
void for_each_labeling(int m, const std::function<void(const Labeling&)>& visit);

}  // namespace bicm
