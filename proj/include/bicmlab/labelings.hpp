#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bicmlab/matrix.hpp"

namespace bicm {

enum class LabelingKind { BRGC, NBC, BSGC, FBC };

std::string_view to_string(LabelingKind kind);
std::optional<LabelingKind> parse_labeling_kind(std::string_view name);

inline constexpr int kMaxLabelingOrder = 10;

// Binary labeling of order m: an M x m bit matrix, M = 2^m, all rows distinct.
// Row i is the codeword c_i = [c_{i,0}, ..., c_{i,m-1}]; c_{i,0} is printed first.
class Labeling {
public:
    // rows[i][k] = c_{i,k}. Throws std::invalid_argument if the rows do not
    // form a one-to-one labeling.
    explicit Labeling(const std::vector<std::vector<std::uint8_t>>& rows);

    // Row i given as a string of '0'/'1' characters, c_{i,0} first.
    static Labeling from_bit_strings(const std::vector<std::string>& rows);

    // Codeword i is the integer codes[i], c_{i,0} being its most significant bit.
    static Labeling from_codewords(int order, const std::vector<unsigned>& codes);

    int order() const noexcept { return m_; }
    std::size_t size() const noexcept { return std::size_t{1} << m_; }

    std::uint8_t bit(std::size_t i, int k) const { return bits_[i * m_ + k]; }

    // Integer value of codeword i with c_{i,0} as the most significant bit.
    unsigned codeword(std::size_t i) const;

    std::vector<std::string> to_bit_strings() const;

    bool operator==(const Labeling&) const = default;

private:
    Labeling(int m, std::vector<std::uint8_t> bits);
    void validate() const;

    int m_ = 0;
    std::vector<std::uint8_t> bits_;
};

// The trivial labeling [0; 1].
Labeling trivial_labeling();

// Recursive constructions. expand() appends the 0110... column on the right
// after duplicating each codeword; repeat() and reflect() prepend a 0^M 1^M
// column on the left of [L; L] and [L; reversed L] respectively.
Labeling expand(const Labeling& l);
Labeling repeat(const Labeling& l);
Labeling reflect(const Labeling& l);

// Throws std::invalid_argument when m is too small for the kind
// (BRGC/NBC need m >= 1, FBC m >= 2, BSGC m >= 3) or above kMaxLabelingOrder.
Labeling generate(LabelingKind kind, int m);

// q_{i,k} = -1 if c_{i,m-1-k} = 1, +1 otherwise (columns reversed).
Matrix modified_matrix(const Labeling& l);

// Row (q*i + j) = [row_i(a), row_j(b)], q = 2^{order(b)}.
Labeling ordered_product(const Labeling& a, const Labeling& b);

// Canonical representative of the class generated by per-column inversion and
// column permutation: every column flipped so row 0 is zero, then columns
// sorted by their bit pattern read top to bottom.
Labeling canonical_form(const Labeling& l);

// True iff l is the NBC up to per-column inversion and column permutation.
bool nbc_equivalent(const Labeling& l);

}  // namespace bicm
