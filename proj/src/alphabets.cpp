#include "bicmlab/alphabets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bicm {

InputAlphabet::InputAlphabet(Matrix points) : points_(std::move(points)) {
    if (!is_power_of_two(points_.rows()) || points_.rows() < 2)
        throw std::invalid_argument("alphabet: number of points must be a power of two >= 2");
    if (points_.rows() > (std::size_t{1} << kMaxLabelingOrder))
        throw std::invalid_argument("alphabet: more than 1024 points");
    if (points_.cols() < 1) throw std::invalid_argument("alphabet: zero dimensions");
    for (double v : points_.data()) {
        if (!std::isfinite(v)) throw std::invalid_argument("alphabet: non-finite coordinate");
        scale_ = std::max(scale_, std::abs(v));
    }
}

bool InputAlphabet::coincide(std::size_t i, std::size_t j) const {
    double d2 = 0.0;
    for (std::size_t n = 0; n < dimension(); ++n) {
        const double d = point(i)[n] - point(j)[n];
        d2 += d * d;
    }
    return d2 <= 1e-24 * scale_ * scale_;
}

bool InputAlphabet::has_coincident_points() const {
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (coincide(i, j)) return true;
    return false;
}

InputAlphabet InputAlphabet::permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != size()) throw std::invalid_argument("permuted: wrong permutation length");
    Matrix p(size(), dimension());
    for (std::size_t j = 0; j < size(); ++j) {
        auto src = point(perm[j]);
        std::copy(src.begin(), src.end(), p.row(j).begin());
    }
    return InputAlphabet(std::move(p));
}

InputAlphabet pam(std::size_t M) {
    if (!is_power_of_two(M) || M < 2) throw std::invalid_argument("pam: M must be a power of two >= 2");
    Matrix x(M, 1);
    for (std::size_t i = 0; i < M; ++i)
        x(i, 0) = -(static_cast<double>(M) - 2.0 * static_cast<double>(i) - 1.0);
    return InputAlphabet(std::move(x));
}

InputAlphabet psk(std::size_t M) {
    if (!is_power_of_two(M) || M < 2) throw std::invalid_argument("psk: M must be a power of two >= 2");
    Matrix x(M, 2);
    for (std::size_t i = 0; i < M; ++i) {
        const double phase = (2.0 * static_cast<double>(i) + 1.0) * std::numbers::pi / static_cast<double>(M);
        x(i, 0) = std::cos(phase);
        x(i, 1) = std::sin(phase);
    }
    return InputAlphabet(std::move(x));
}

InputAlphabet qam(std::size_t M1, std::size_t M2) {
    const InputAlphabet a = pam(M1);
    const InputAlphabet b = pam(M2);
    Matrix x(M1 * M2, 2);
    for (std::size_t l = 0; l < M1; ++l) {
        for (std::size_t j = 0; j < M2; ++j) {
            x(M2 * l + j, 0) = a.points()(l, 0);
            x(M2 * l + j, 1) = b.points()(j, 0);
        }
    }
    return InputAlphabet(std::move(x));
}

InputAlphabet hierarchical(std::span<const double> distances) {
    const std::size_t m = distances.size();
    if (m < 1 || m > static_cast<std::size_t>(kMaxLabelingOrder))
        throw std::invalid_argument("hierarchical: need 1..10 distances");
    for (double d : distances)
        if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("hierarchical: distances must be positive");
    const std::size_t M = std::size_t{1} << m;
    Matrix x(M, 1);
    for (std::size_t i = 0; i < M; ++i) {
        double v = 0.0;
        for (std::size_t k = 0; k < m; ++k) v += (2.0 * static_cast<double>((i >> k) & 1u) - 1.0) * distances[k];
        x(i, 0) = v;
        if (i > 0 && !(x(i, 0) > x(i - 1, 0)))
            throw std::invalid_argument("hierarchical: points are not strictly increasing");
    }
    return InputAlphabet(std::move(x));
}

InputAlphabet project_hypercube(const Labeling& l, const Matrix& v) {
    if (v.rows() != static_cast<std::size_t>(l.order()))
        throw std::invalid_argument("project_hypercube: V must have m rows");
    for (double e : v.data())
        if (!std::isfinite(e)) throw std::invalid_argument("project_hypercube: non-finite V");
    return InputAlphabet(multiply(modified_matrix(l), v));
}

Matrix otto_projection() { return Matrix{{-1.0, -1.0}, {1.0, 0.0}, {-1.0, 1.0}}; }

Matrix ototo_projection() {
    const double c = std::cos(std::numbers::pi / 3.0);
    const double s = std::sin(std::numbers::pi / 3.0);
    return Matrix{{-1.0, 0.0}, {c, s}, {c, -s}};
}

bool BitDistribution::is_uniform() const {
    for (double p : p0)
        if (p != 0.5) return false;
    return true;
}

void BitDistribution::validate() const {
    for (double p : p0)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bit distribution: P(0) must lie in [0, 1]");
}

SymbolDistribution symbol_pmf(const BitDistribution& bits, const Labeling& l) {
    if (bits.p0.size() != static_cast<std::size_t>(l.order()))
        throw std::invalid_argument("symbol_pmf: bit distribution order does not match labeling");
    bits.validate();
    SymbolDistribution out{std::vector<double>(l.size(), 1.0)};
    for (std::size_t i = 0; i < l.size(); ++i)
        for (int k = 0; k < l.order(); ++k) out.probs[i] *= bits.prob(k, l.bit(i, k));
    return out;
}

Constellation::Constellation(InputAlphabet alphabet, Labeling labeling, CoincidentPoints coincident)
    : Constellation(alphabet, labeling, BitDistribution::uniform(labeling.order()), coincident) {}

Constellation::Constellation(InputAlphabet alphabet, Labeling labeling, BitDistribution bits,
                             CoincidentPoints coincident)
    : alphabet_(std::move(alphabet)), labeling_(std::move(labeling)), bits_(std::move(bits)) {
    if (alphabet_.size() != labeling_.size())
        throw std::invalid_argument("constellation: alphabet and labeling sizes differ");
    pmf_ = symbol_pmf(bits_, labeling_);

    const std::size_t M = size();
    const std::size_t N = dimension();
    if (coincident == CoincidentPoints::reject) {
        for (std::size_t i = 0; i < M; ++i) {
            for (std::size_t j = i + 1; j < M; ++j) {
                if (pmf_.probs[i] > 0.0 && pmf_.probs[j] > 0.0 && alphabet_.coincide(i, j))
                    throw std::invalid_argument("constellation: coincident points with positive probability");
            }
        }
    }

    mean_.assign(N, 0.0);
    for (std::size_t i = 0; i < M; ++i) {
        const double p = pmf_.probs[i];
        auto x = alphabet_.point(i);
        energy_ += p * norm2(x);
        for (std::size_t n = 0; n < N; ++n) mean_[n] += p * x[n];
    }
    if (!(energy_ > 0.0)) throw std::invalid_argument("constellation: zero average energy");

    const int m = order();
    index_sets_.assign(2 * m, {});
    for (int k = 0; k < m; ++k)
        for (std::size_t i = 0; i < M; ++i) index_sets_[2 * k + labeling_.bit(i, k)].push_back(i);
}

std::vector<double> Constellation::conditional_mean(int k, int u) const {
    std::vector<double> out(dimension(), 0.0);
    const double pu = bits_.prob(k, u);
    if (pu == 0.0) return out;
    for (std::size_t i : index_set(k, u)) {
        const double w = pmf_.probs[i] / pu;
        auto x = alphabet_.point(i);
        for (std::size_t n = 0; n < out.size(); ++n) out[n] += w * x[n];
    }
    return out;
}

double Constellation::conditional_energy(int k, int u) const {
    const double pu = bits_.prob(k, u);
    if (pu == 0.0) return 0.0;
    double e = 0.0;
    for (std::size_t i : index_set(k, u)) e += pmf_.probs[i] / pu * norm2(alphabet_.point(i));
    return e;
}

FadingModel FadingModel::nakagami(double m) {
    if (!(m >= 0.5)) throw std::invalid_argument("nakagami: shape parameter must be >= 0.5");
    return {FadingKind::Nakagami, m, 1.0};
}

std::vector<double> FadingModel::sample(std::size_t count, std::uint64_t seed) const {
    std::vector<double> h(count, 1.0);
    if (kind == FadingKind::AWGN) return h;
    std::mt19937_64 rng(seed);
    if (kind == FadingKind::Rayleigh) {
        std::normal_distribution<double> g(0.0, std::sqrt(0.5));
        for (auto& a : h) {
            const double re = g(rng);
            const double im = g(rng);
            a = std::sqrt(re * re + im * im);
        }
    } else {
        std::gamma_distribution<double> power(nakagami_m, 1.0 / nakagami_m);
        for (auto& a : h) a = std::sqrt(power(rng));
    }
    return h;
}

}  // namespace bicm
