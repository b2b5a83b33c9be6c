#include "bicmlab/labelings.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace bicm {

std::string_view to_string(LabelingKind kind) {
    switch (kind) {
        case LabelingKind::BRGC: return "brgc";
        case LabelingKind::NBC: return "nbc";
        case LabelingKind::BSGC: return "bsgc";
        case LabelingKind::FBC: return "fbc";
    }
    return "?";
}

std::optional<LabelingKind> parse_labeling_kind(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "brgc") return LabelingKind::BRGC;
    if (s == "nbc") return LabelingKind::NBC;
    if (s == "bsgc") return LabelingKind::BSGC;
    if (s == "fbc") return LabelingKind::FBC;
    return std::nullopt;
}

Labeling::Labeling(int m, std::vector<std::uint8_t> bits) : m_(m), bits_(std::move(bits)) {
    validate();
}

Labeling::Labeling(const std::vector<std::vector<std::uint8_t>>& rows) {
    if (rows.empty()) throw std::invalid_argument("labeling: no rows");
    m_ = static_cast<int>(rows.front().size());
    bits_.reserve(rows.size() * rows.front().size());
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != m_) throw std::invalid_argument("labeling: ragged rows");
        bits_.insert(bits_.end(), r.begin(), r.end());
    }
    if (m_ < 1 || m_ > kMaxLabelingOrder || rows.size() != (std::size_t{1} << m_))
        throw std::invalid_argument("labeling: need M = 2^m rows with 1 <= m <= 10");
    validate();
}

Labeling Labeling::from_bit_strings(const std::vector<std::string>& rows) {
    std::vector<std::vector<std::uint8_t>> bits;
    bits.reserve(rows.size());
    for (const auto& s : rows) {
        std::vector<std::uint8_t> r;
        for (char ch : s) {
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("labeling: codeword '" + s + "' is not a bit string");
            r.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        bits.push_back(std::move(r));
    }
    return Labeling(bits);
}

Labeling Labeling::from_codewords(int order, const std::vector<unsigned>& codes) {
    if (order < 1 || order > kMaxLabelingOrder || codes.size() != (std::size_t{1} << order))
        throw std::invalid_argument("labeling: codeword count must be 2^order");
    std::vector<std::uint8_t> bits(codes.size() * order);
    for (std::size_t i = 0; i < codes.size(); ++i)
        for (int k = 0; k < order; ++k) bits[i * order + k] = (codes[i] >> (order - 1 - k)) & 1u;
    return Labeling(order, std::move(bits));
}

void Labeling::validate() const {
    const std::size_t M = size();
    if (bits_.size() != M * static_cast<std::size_t>(m_))
        throw std::invalid_argument("labeling: bit matrix has the wrong shape");
    std::vector<bool> seen(M, false);
    for (std::size_t i = 0; i < M; ++i) {
        for (int k = 0; k < m_; ++k)
            if (bit(i, k) > 1) throw std::invalid_argument("labeling: entries must be 0 or 1");
        const unsigned c = codeword(i);
        if (seen[c]) throw std::invalid_argument("labeling: codewords are not distinct");
        seen[c] = true;
    }
}

unsigned Labeling::codeword(std::size_t i) const {
    unsigned c = 0;
    for (int k = 0; k < m_; ++k) c = (c << 1) | bit(i, k);
    return c;
}

std::vector<std::string> Labeling::to_bit_strings() const {
    std::vector<std::string> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        std::string s;
        for (int k = 0; k < m_; ++k) s.push_back(static_cast<char>('0' + bit(i, k)));
        out.push_back(std::move(s));
    }
    return out;
}

Labeling trivial_labeling() { return Labeling::from_codewords(1, {0, 1}); }

namespace {

void check_growable(const Labeling& l) {
    if (l.order() >= kMaxLabelingOrder)
        throw std::invalid_argument("labeling: order limit reached");
}

// New column prepended on the left: 0 for the first M rows, 1 for the rest.
Labeling prepend_half_column(const Labeling& l, bool reversed_second_half) {
    check_growable(l);
    const int m = l.order();
    const std::size_t M = l.size();
    std::vector<std::vector<std::uint8_t>> rows;
    rows.reserve(2 * M);
    for (std::size_t r = 0; r < 2 * M; ++r) {
        const std::size_t src = r < M ? r : (reversed_second_half ? 2 * M - 1 - r : r - M);
        std::vector<std::uint8_t> row{static_cast<std::uint8_t>(r < M ? 0 : 1)};
        for (int k = 0; k < m; ++k) row.push_back(l.bit(src, k));
        rows.push_back(std::move(row));
    }
    return Labeling(rows);
}

}  // namespace

Labeling expand(const Labeling& l) {
    check_growable(l);
    const int m = l.order();
    std::vector<std::vector<std::uint8_t>> rows;
    rows.reserve(2 * l.size());
    for (std::size_t r = 0; r < 2 * l.size(); ++r) {
        std::vector<std::uint8_t> row(m + 1);
        for (int k = 0; k < m; ++k) row[k] = l.bit(r / 2, k);
        // appended column 0,1,1,0,0,1,1,0,...
        row[m] = static_cast<std::uint8_t>(((r + 1) / 2) % 2);
        rows.push_back(std::move(row));
    }
    return Labeling(rows);
}

Labeling repeat(const Labeling& l) { return prepend_half_column(l, false); }
Labeling reflect(const Labeling& l) { return prepend_half_column(l, true); }

Labeling generate(LabelingKind kind, int m) {
    const int min_order = kind == LabelingKind::BSGC ? 3 : kind == LabelingKind::FBC ? 2 : 1;
    if (m < min_order)
        throw std::invalid_argument("labeling " + std::string(to_string(kind)) + " needs order >= " +
                                    std::to_string(min_order));
    if (m > kMaxLabelingOrder) throw std::invalid_argument("labeling order too large");

    switch (kind) {
        case LabelingKind::BRGC: {
            Labeling g = trivial_labeling();
            for (int i = 1; i < m; ++i) g = expand(g);
            return g;
        }
        case LabelingKind::NBC: {
            std::vector<unsigned> codes(std::size_t{1} << m);
            for (unsigned i = 0; i < codes.size(); ++i) codes[i] = i;
            return Labeling::from_codewords(m, codes);
        }
        case LabelingKind::BSGC: {
            const Labeling g = generate(LabelingKind::BRGC, m);
            std::vector<std::vector<std::uint8_t>> rows(g.size(), std::vector<std::uint8_t>(m));
            for (std::size_t i = 0; i < g.size(); ++i) {
                for (int k = 0; k < m; ++k) rows[i][k] = g.bit(i, k);
                rows[i][0] = g.bit(i, 0) ^ g.bit(i, m - 1);
            }
            return Labeling(rows);
        }
        case LabelingKind::FBC:
            return reflect(generate(LabelingKind::NBC, m - 1));
    }
    throw std::invalid_argument("unknown labeling kind");
}

Matrix modified_matrix(const Labeling& l) {
    const int m = l.order();
    Matrix q(l.size(), m);
    for (std::size_t i = 0; i < l.size(); ++i)
        for (int k = 0; k < m; ++k) q(i, k) = l.bit(i, m - 1 - k) ? -1.0 : 1.0;
    return q;
}

Labeling ordered_product(const Labeling& a, const Labeling& b) {
    const int ma = a.order();
    const int mb = b.order();
    if (ma + mb > kMaxLabelingOrder) throw std::invalid_argument("ordered_product: order too large");
    std::vector<std::vector<std::uint8_t>> rows;
    rows.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::vector<std::uint8_t> row;
            row.reserve(ma + mb);
            for (int k = 0; k < ma; ++k) row.push_back(a.bit(i, k));
            for (int k = 0; k < mb; ++k) row.push_back(b.bit(j, k));
            rows.push_back(std::move(row));
        }
    }
    return Labeling(rows);
}

Labeling canonical_form(const Labeling& l) {
    const int m = l.order();
    const std::size_t M = l.size();
    std::vector<std::vector<std::uint8_t>> columns(m, std::vector<std::uint8_t>(M));
    for (int k = 0; k < m; ++k) {
        const std::uint8_t flip = l.bit(0, k);
        for (std::size_t i = 0; i < M; ++i) columns[k][i] = l.bit(i, k) ^ flip;
    }
    std::sort(columns.begin(), columns.end());
    std::vector<std::vector<std::uint8_t>> rows(M, std::vector<std::uint8_t>(m));
    for (std::size_t i = 0; i < M; ++i)
        for (int k = 0; k < m; ++k) rows[i][k] = columns[k][i];
    return Labeling(rows);
}

bool nbc_equivalent(const Labeling& l) {
    return canonical_form(l) == canonical_form(generate(LabelingKind::NBC, l.order()));
}

}  // namespace bicm
