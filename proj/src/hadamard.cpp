#include "bicmlab/hadamard.hpp"

#include <stdexcept>

namespace bicm {

namespace {
constexpr std::size_t kFastThreshold = 16;

void check_rows(const Matrix& x) {
    if (!is_power_of_two(x.rows())) throw std::invalid_argument("hadamard: row count is not a power of two");
}
}  // namespace

Matrix hadamard_matrix(std::size_t M) {
    if (!is_power_of_two(M)) throw std::invalid_argument("hadamard: order is not a power of two");
    Matrix h(M, M);
    h(0, 0) = 1.0;
    for (std::size_t n = 1; n < M; n *= 2) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double v = h(i, j);
                h(i, j + n) = v;
                h(i + n, j) = v;
                h(i + n, j + n) = -v;
            }
        }
    }
    return h;
}

void fwht_inplace(std::span<double> data, std::size_t stride, std::size_t length) {
    for (std::size_t half = 1; half < length; half *= 2) {
        for (std::size_t i = 0; i < length; i += 2 * half) {
            for (std::size_t j = i; j < i + half; ++j) {
                const double a = data[j * stride];
                const double b = data[(j + half) * stride];
                data[j * stride] = a + b;
                data[(j + half) * stride] = a - b;
            }
        }
    }
}

Matrix transform_dense(const Matrix& x) {
    check_rows(x);
    Matrix out = multiply(hadamard_matrix(x.rows()), x);
    const double scale = 1.0 / static_cast<double>(x.rows());
    for (double& v : out.data()) v *= scale;
    return out;
}

Matrix transform_fast(const Matrix& x) {
    check_rows(x);
    Matrix out = x;
    for (std::size_t c = 0; c < out.cols(); ++c) fwht_inplace(out.data().subspan(c), out.cols(), out.rows());
    const double scale = 1.0 / static_cast<double>(x.rows());
    for (double& v : out.data()) v *= scale;
    return out;
}

Matrix transform(const Matrix& x) {
    return x.rows() >= kFastThreshold ? transform_fast(x) : transform_dense(x);
}

Matrix inverse_transform(const Matrix& xt) {
    check_rows(xt);
    Matrix out = xt;
    if (xt.rows() >= kFastThreshold) {
        for (std::size_t c = 0; c < out.cols(); ++c) fwht_inplace(out.data().subspan(c), out.cols(), out.rows());
        return out;
    }
    return multiply(hadamard_matrix(xt.rows()), xt);
}

}  // namespace bicm
