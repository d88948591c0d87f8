#pragma once

#include <complex>
#include <vector>

#include "hopfdual/errors.hpp"

namespace hopfdual {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. Sized for desk-scale work (dims up to a
/// few hundred); every constructed value is checked to be free of NaN/Inf.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
    CMatrix(int rows, int cols, std::vector<cplx> data);

    static CMatrix identity(int n);
    static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }
    static CMatrix column(const std::vector<cplx>& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    cplx& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    CMatrix operator+(const CMatrix& o) const;
    CMatrix operator-(const CMatrix& o) const;
    CMatrix operator*(const CMatrix& o) const;
    CMatrix operator*(cplx s) const;
    CMatrix& operator+=(const CMatrix& o);
    CMatrix& operator-=(const CMatrix& o);

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;

    CMatrix col(int j) const;
    void set_col(int j, const CMatrix& v);
    CMatrix block(int i0, int j0, int r, int c) const;

    double max_abs() const;
    double frobenius() const;
    bool is_finite() const;

    /// Throws on NaN/Inf; called by constructors taking data and by solvers
    /// before handing results back.
    void ensure_finite(const char* what) const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

/// Column-vector helpers (n x 1 matrices are used as coordinate vectors).
cplx dot(const CMatrix& x, const CMatrix& y); // <x, y> = sum x_i conj(y_i)
double norm2(const CMatrix& x);

/// Kronecker product with the fixed index convention (i,k) -> i*rows(B)+k.
CMatrix kron(const CMatrix& A, const CMatrix& B);

/// Flat index for the tensor convention above.
inline int tensor_index(int i, int k, int dimB) { return i * dimB + k; }

struct EigResult {
    std::vector<double> eigenvalues; // ascending
    CMatrix vectors;                 // unitary, columns are eigenvectors
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
/// Throws NotHermitian if max|A - A^dagger| > herm_tol, NoConvergence if the
/// sweep budget is exhausted before all off-diagonal mass falls under
/// conv_tol (absolute, relative to the initial magnitude scale).
EigResult hermitian_eig(const CMatrix& A, double herm_tol = 1e-9,
                        double conv_tol = 1e-12, int max_sweeps = 100);

struct LeastSquaresResult {
    CMatrix solution;
    double residual; // max-abs entry of A*X - B
};

/// Minimize ||A X - B||_F via Householder QR with column pivoting.
LeastSquaresResult least_squares(const CMatrix& A, const CMatrix& B);

/// Exact solve; throws RankDeficient when the least-squares residual
/// exceeds tol.
CMatrix solve_exact(const CMatrix& A, const CMatrix& B, double tol = 1e-9);

/// Orthonormal basis (columns) of the kernel of A, QR-based.
CMatrix nullspace(const CMatrix& A, double rtol = 1e-9);

/// Orthonormal basis (columns) of the column span of A.
CMatrix orthonormal_range(const CMatrix& A, double rtol = 1e-10);

/// Numerical rank with threshold rtol relative to the largest singular
/// value; singular values come from the Hermitian eigensolver on A^dagger A.
int numeric_rank(const CMatrix& A, double rtol = 1e-9);

/// Hermitian square root / inverse square root of a positive definite matrix.
CMatrix positive_sqrt(const CMatrix& A, double tol = 1e-9);
CMatrix positive_inv_sqrt(const CMatrix& A, double tol = 1e-9);

/// Inverse of a square full-rank matrix (RankDeficient otherwise).
CMatrix inverse(const CMatrix& A, double tol = 1e-9);

} // namespace hopfdual
