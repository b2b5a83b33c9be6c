#include "bicmlab/enumeration.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bicmlab/asymptotics.hpp"
#include "bicmlab/parallel.hpp"

namespace bicm {

namespace {

constexpr std::size_t kCensusSize = 8;

void check_alphabet(const InputAlphabet& x) {
    if (x.size() != kCensusSize) throw std::invalid_argument("classify_labelings: alphabet must have 8 points");
}

// Normalized alpha for every permutation whose first codeword is `first`.
std::vector<double> sweep_prefix(const InputAlphabet& x, unsigned first) {
    std::vector<unsigned> rest;
    for (unsigned v = 0; v < kCensusSize; ++v)
        if (v != first) rest.push_back(v);
    std::vector<double> out;
    out.reserve(5040);
    std::vector<unsigned> codes(kCensusSize);
    do {
        codes[0] = first;
        std::copy(rest.begin(), rest.end(), codes.begin() + 1);
        out.push_back(alpha_bicm_ht(x, Labeling::from_codewords(3, codes)).normalized());
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

AlphaCensus bucket(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    AlphaCensus census;
    census.total = values.size();
    for (double v : values) {
        if (!census.classes.empty() && v - census.classes.back().normalized <= kCensusTolerance)
            ++census.classes.back().count;
        else
            census.classes.push_back({v, 1});
    }
    census.min_class_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < census.classes.size(); ++i)
        census.min_class_gap =
            std::min(census.min_class_gap, census.classes[i].normalized - census.classes[i - 1].normalized);
    return census;
}

}  // namespace

std::size_t AlphaCensus::distinct_multiplicities() const {
    std::set<std::size_t> counts;
    for (const auto& c : classes) counts.insert(c.count);
    return counts.size();
}

AlphaCensus classify_labelings(const InputAlphabet& x) {
    check_alphabet(x);
    std::vector<std::vector<double>> parts(kCensusSize);
    parallel_for(kCensusSize, [&](std::size_t p) { parts[p] = sweep_prefix(x, static_cast<unsigned>(p)); });
    std::vector<double> all;
    for (const auto& part : parts) all.insert(all.end(), part.begin(), part.end());
    return bucket(std::move(all));
}

AlphaCensus classify_labelings_serial(const InputAlphabet& x) {
    check_alphabet(x);
    std::vector<double> all;
    for (unsigned p = 0; p < kCensusSize; ++p) {
        const auto part = sweep_prefix(x, p);
        all.insert(all.end(), part.begin(), part.end());
    }
    return bucket(std::move(all));
}

void for_each_labeling(int m, const std::function<void(const Labeling&)>& visit) {
    if (m < 1 || m > 3) throw std::invalid_argument("for_each_labeling: m must be in [1, 3]");
    std::vector<unsigned> codes(std::size_t{1} << m);
    std::iota(codes.begin(), codes.end(), 0u);
    do {
        visit(Labeling::from_codewords(m, codes));
    } while (std::next_permutation(codes.begin(), codes.end()));
}

}  // namespace bicm
