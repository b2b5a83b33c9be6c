#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bicmlab/labelings.hpp"
#include "bicmlab/matrix.hpp"

namespace bicm {

// M x N matrix of real constellation points, M = 2^m. Coincident rows are
// allowed here; Constellation decides whether they are acceptable.
class InputAlphabet {
public:
    explicit InputAlphabet(Matrix points);

    std::size_t size() const noexcept { return points_.rows(); }
    std::size_t dimension() const noexcept { return points_.cols(); }
    int order() const { return log2_exact(size()); }

    std::span<const double> point(std::size_t i) const { return points_.row(i); }
    const Matrix& points() const noexcept { return points_; }

    // Points i and j agree to within 1e-12 of the largest coordinate (projections
    // such as OTOTO produce coincident points only up to rounding).
    bool coincide(std::size_t i, std::size_t j) const;
    bool has_coincident_points() const;

    // Rows reordered so that row j of the result is row perm[j] of this alphabet.
    InputAlphabet permuted(std::span<const std::size_t> perm) const;

private:
    Matrix points_;
    double scale_ = 0.0;
};

enum class AlphabetKind { PAM, PSK };

// x_i = -(M - 2i - 1)
InputAlphabet pam(std::size_t M);
// x_i = [cos((2i+1)pi/M), sin((2i+1)pi/M)]
InputAlphabet psk(std::size_t M);
// Ordered direct product pam(M1) x pam(M2): point (M2*l + j) = [pam(M1)_l, pam(M2)_j].
InputAlphabet qam(std::size_t M1, std::size_t M2);
// x_i = sum_k (2 b_k(i) - 1) d_k; throws unless the points strictly increase.
InputAlphabet hierarchical(std::span<const double> distances);
// X = Q(L) V. V is m x N. The result may contain coincident points.
InputAlphabet project_hypercube(const Labeling& l, const Matrix& v);

// Projection matrices of the two 8-point hypercube-projection examples
// (one-three-three-one and one-two-one-two-one point layers).
Matrix otto_projection();
Matrix ototo_projection();

// P_{C_k}(0) per bit position.
struct BitDistribution {
    std::vector<double> p0;

    static BitDistribution uniform(int m) { return {std::vector<double>(m, 0.5)}; }
    double prob(int k, int u) const { return u == 0 ? p0[k] : 1.0 - p0[k]; }
    bool is_uniform() const;
    void validate() const;
};

struct SymbolDistribution {
    std::vector<double> probs;
};

// P_X(x_i) = prod_k P_{C_k}(c_{i,k}).
SymbolDistribution symbol_pmf(const BitDistribution& bits, const Labeling& l);

enum class CoincidentPoints { reject, allow };

// [alphabet, labeling, bit distribution] plus the derived statistics.
class Constellation {
public:
    // Throws std::invalid_argument on order mismatches, invalid bit pmfs, zero
    // energy, or (unless allowed) coincident points that both carry probability.
    Constellation(InputAlphabet alphabet, Labeling labeling, BitDistribution bits,
                  CoincidentPoints coincident = CoincidentPoints::reject);
    Constellation(InputAlphabet alphabet, Labeling labeling,
                  CoincidentPoints coincident = CoincidentPoints::reject);

    const InputAlphabet& alphabet() const noexcept { return alphabet_; }
    const Labeling& labeling() const noexcept { return labeling_; }
    const BitDistribution& bits() const noexcept { return bits_; }
    const std::vector<double>& pmf() const noexcept { return pmf_.probs; }

    std::size_t size() const noexcept { return alphabet_.size(); }
    std::size_t dimension() const noexcept { return alphabet_.dimension(); }
    int order() const noexcept { return labeling_.order(); }
    bool is_uniform() const { return bits_.is_uniform(); }

    // Es = E[||X||^2]
    double energy() const noexcept { return energy_; }
    // E[X]
    std::span<const double> mean() const noexcept { return mean_; }

    // I_{k,u}: indices whose label has bit u at position k.
    const std::vector<std::size_t>& index_set(int k, int u) const { return index_sets_[2 * k + u]; }

    // E[X | C_k = u] and E[||X||^2 | C_k = u]; both zero when P_{C_k}(u) = 0.
    std::vector<double> conditional_mean(int k, int u) const;
    double conditional_energy(int k, int u) const;

private:
    InputAlphabet alphabet_;
    Labeling labeling_;
    BitDistribution bits_;
    SymbolDistribution pmf_;
    double energy_ = 0.0;
    std::vector<double> mean_;
    std::vector<std::vector<std::size_t>> index_sets_;
};

enum class FadingKind { AWGN, Rayleigh, Nakagami };

// Scalar fade H shared by all N dimensions, normalized to E[H^2] = 1 for the
// Rayleigh and Nakagami-m laws.
struct FadingModel {
    FadingKind kind = FadingKind::AWGN;
    double nakagami_m = 1.0;
    double second_moment = 1.0;

    static FadingModel awgn() { return {}; }
    static FadingModel rayleigh() { return {FadingKind::Rayleigh, 1.0, 1.0}; }
    static FadingModel nakagami(double m);

    bool is_awgn() const noexcept { return kind == FadingKind::AWGN; }

    // Deterministic draw of `count` fading amplitudes.
    std::vector<double> sample(std::size_t count, std::uint64_t seed) const;
};

}  // namespace bicm
