#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bicmlab/alphabets.hpp"
#include "bicmlab/labelings.hpp"

namespace bicm::cli {

enum ExitCode : int { kSuccess = 0, kNumericFailure = 1, kUsageError = 2 };

// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

// A resolved --constellation / --labeling / --bit-p0 triple.
struct ConstellationSpec {
    std::string name;
    InputAlphabet alphabet;
    Labeling labeling;
    BitDistribution bits;
    CoincidentPoints coincident = CoincidentPoints::reject;
    std::optional<AlphabetKind> alphabet_kind;   // set for pamM / pskM
    std::optional<LabelingKind> labeling_kind;   // set for named labelings

    Constellation build() const { return Constellation(alphabet, labeling, bits, coincident); }
};

// Presets: pamM, pskM, qamM (square), qamAxB, otto, ototo, hier:d0,d1,...
// Anything else is read as a JSON file {"alphabet": [...], "labeling": [...], "bit_p0": [...]}.
// labeling: brgc|nbc|bsgc|fbc, or comma-separated bit strings; empty picks the default
// (brgc for pam/psk/qam, nbc otherwise). bit_p0: comma-separated P(C_k = 0); empty is uniform.
ConstellationSpec resolve_constellation(const std::string& source, const std::string& labeling,
                                        const std::string& bit_p0);

// awgn | rayleigh | nakagami:<m>
FadingModel parse_fading(const std::string& text);

// "start:stop:step" (inclusive) or a single value; strictly increasing.
std::vector<double> parse_range(const std::string& text);

std::vector<double> parse_number_list(const std::string& text);

}  // namespace bicm::cli
