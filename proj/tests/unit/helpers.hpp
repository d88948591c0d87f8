#pragma once

#include <hopfdual/linalg.hpp>
#include <hopfdual/rng.hpp>

namespace hopfdual::testing {

inline CMatrix random_matrix(Rng& rng, int rows, int cols) {
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_box();
    return m;
}

inline CMatrix random_hermitian(Rng& rng, int n) {
    CMatrix m = random_matrix(rng, n, n);
    return (m + m.adjoint()) * cplx(0.5);
}

/// Random unitary via QR of a random matrix (orthonormal_range of a square
/// generic matrix is unitary).
inline CMatrix random_unitary(Rng& rng, int n) {
    return orthonormal_range(random_matrix(rng, n, n), 1e-12);
}

} // namespace hopfdual::testing
