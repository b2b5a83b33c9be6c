#pragma once

#include <span>

#include "bicmlab/matrix.hpp"

namespace bicm {

// Sylvester-ordered Hadamard matrix H_M, M a power of two.
// h_{i,j} = prod_k (-1)^{b_k(i) b_k(j)}; h_{i,0} = 1, h_{i,2^l} = (-1)^{b_l(i)}.
Matrix hadamard_matrix(std::size_t M);

// X~ = (1/M) H X. Uses the butterfly for M >= 16 and the dense product below that.
Matrix transform(const Matrix& x);
// X = H X~
Matrix inverse_transform(const Matrix& xt);

// Reference path: explicit (1/M) H X multiply.
Matrix transform_dense(const Matrix& x);
// Butterfly path, O(M log M) per column, any power-of-two M.
Matrix transform_fast(const Matrix& x);

// Unnormalized in-place Walsh-Hadamard butterfly on a strided column.
void fwht_inplace(std::span<double> data, std::size_t stride, std::size_t length);

}  // namespace bicm
