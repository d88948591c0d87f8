#include "hopfdual/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hopfdual {

CMatrix::CMatrix(int rows, int cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), a_(std::move(data)) {
    if (a_.size() != size_t(rows_) * cols_)
        fail("DimensionMismatch", "CMatrix data size does not match shape");
    ensure_finite("CMatrix constructor");
}

CMatrix CMatrix::identity(int n) {
    CMatrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

CMatrix CMatrix::column(const std::vector<cplx>& v) {
    return CMatrix(int(v.size()), 1, v);
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail("DimensionMismatch", "matrix add");
    CMatrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail("DimensionMismatch", "matrix sub");
    CMatrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail("DimensionMismatch", "matrix add");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail("DimensionMismatch", "matrix sub");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
    if (cols_ != o.rows_) fail("DimensionMismatch", "matrix multiply");
    CMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        const cplx* ai = &a_[size_t(i) * cols_];
        cplx* ri = &r.a_[size_t(i) * o.cols_];
        for (int k = 0; k < cols_; ++k) {
            const cplx aik = ai[k];
            if (aik == cplx(0.0)) continue;
            const cplx* ok = &o.a_[size_t(k) * o.cols_];
            for (int j = 0; j < o.cols_; ++j) ri[j] += aik * ok[j];
        }
    }
    return r;
}

CMatrix CMatrix::operator*(cplx s) const {
    CMatrix r = *this;
    for (auto& v : r.a_) v *= s;
    return r;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

CMatrix CMatrix::transpose() const {
    CMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

CMatrix CMatrix::conjugate() const {
    CMatrix r = *this;
    for (auto& v : r.a_) v = std::conj(v);
    return r;
}

CMatrix CMatrix::col(int j) const {
    CMatrix r(rows_, 1);
    for (int i = 0; i < rows_; ++i) r(i, 0) = (*this)(i, j);
    return r;
}

void CMatrix::set_col(int j, const CMatrix& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v(i, 0);
}

CMatrix CMatrix::block(int i0, int j0, int r, int c) const {
    CMatrix out(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) out(i, j) = (*this)(i0 + i, j0 + j);
    return out;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

double CMatrix::frobenius() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

bool CMatrix::is_finite() const {
    for (const auto& v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

void CMatrix::ensure_finite(const char* what) const {
    if (!is_finite()) fail("NotFinite", std::string("non-finite entries in ") + what);
}

cplx dot(const CMatrix& x, const CMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != 1 || y.cols() != 1)
        fail("DimensionMismatch", "dot product");
    cplx s = 0.0;
    for (int i = 0; i < x.rows(); ++i) s += x(i, 0) * std::conj(y(i, 0));
    return s;
}

double norm2(const CMatrix& x) { return x.frobenius(); }

CMatrix kron(const CMatrix& A, const CMatrix& B) {
    CMatrix r(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) {
            const cplx aij = A(i, j);
            if (aij == cplx(0.0)) continue;
            for (int k = 0; k < B.rows(); ++k)
                for (int l = 0; l < B.cols(); ++l)
                    r(i * B.rows() + k, j * B.cols() + l) = aij * B(k, l);
        }
    return r;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver: cyclic Jacobi with complex rotations.
// ---------------------------------------------------------------------------

EigResult hermitian_eig(const CMatrix& A, double herm_tol, double conv_tol,
                        int max_sweeps) {
    const int n = A.rows();
    if (A.cols() != n) fail("NotHermitian", "matrix is not square");
    double dev = (A - A.adjoint()).max_abs();
    if (dev > herm_tol)
        fail("NotHermitian", "max |A - A^dagger| = " + std::to_string(dev));

    // Work on the Hermitian average so tiny asymmetries cannot drift.
    CMatrix M = (A + A.adjoint()) * cplx(0.5);
    CMatrix U = CMatrix::identity(n);
    const double scale = std::max(1.0, M.max_abs());
    const double thresh = conv_tol * scale;

    auto off_max = [&]() {
        double m = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) m = std::max(m, std::abs(M(i, j)));
        return m;
    };

    bool converged = (n <= 1) || off_max() <= thresh;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = M(p, q);
                const double r = std::abs(apq);
                if (r <= thresh * 1e-3) continue;
                const double app = M(p, p).real();
                const double aqq = M(q, q).real();
                const cplx phase = apq / r; // e^{i phi}

                // Real rotation for [[app, r], [r, aqq]].
                const double tau = (aqq - app) / (2.0 * r);
                double t;
                if (tau >= 0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Unitary on the (p,q) plane transporting the real rotation
                // [[c, s], [-s, c]] through the phase; J^dagger M J kills (p,q).
                const cplx jpp = c, jpq = s * phase;
                const cplx jqp = -s * std::conj(phase), jqq = c;

                for (int i = 0; i < n; ++i) { // M <- M J (columns p,q)
                    const cplx mip = M(i, p), miq = M(i, q);
                    M(i, p) = mip * jpp + miq * jqp;
                    M(i, q) = mip * jpq + miq * jqq;
                }
                for (int j = 0; j < n; ++j) { // M <- J^dagger M (rows p,q)
                    const cplx mpj = M(p, j), mqj = M(q, j);
                    M(p, j) = std::conj(jpp) * mpj + std::conj(jqp) * mqj;
                    M(q, j) = std::conj(jpq) * mpj + std::conj(jqq) * mqj;
                }
                for (int i = 0; i < n; ++i) { // U <- U J
                    const cplx uip = U(i, p), uiq = U(i, q);
                    U(i, p) = uip * jpp + uiq * jqp;
                    U(i, q) = uip * jpq + uiq * jqq;
                }
                M(p, q) = std::conj(M(q, p)); // keep exact Hermitian symmetry
            }
        }
        converged = off_max() <= thresh;
    }
    if (!converged)
        fail("NoConvergence", "Jacobi sweep budget exhausted (off-diagonal " +
                                  std::to_string(off_max()) + ")");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = M(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return diag[a] < diag[b]; });

    EigResult res;
    res.eigenvalues.resize(n);
    res.vectors = CMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        res.eigenvalues[j] = diag[order[j]];
        for (int i = 0; i < n; ++i) res.vectors(i, j) = U(i, order[j]);
    }
    res.vectors.ensure_finite("hermitian_eig vectors");
    return res;
}

// ---------------------------------------------------------------------------
// Householder QR with column pivoting, and the solvers built on it.
// ---------------------------------------------------------------------------

namespace {

struct QrCp {
    CMatrix Q;              // m x m unitary (explicit; desk scale)
    CMatrix R;              // m x n upper triangular
    std::vector<int> perm;  // A[:, perm[j]] = (QR)[:, j]
    int rank = 0;           // with respect to rtol * |R(0,0)|
};

QrCp qr_cp(const CMatrix& A, double rtol) {
    const int m = A.rows(), n = A.cols();
    QrCp f;
    f.Q = CMatrix::identity(m);
    f.R = A;
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), 0);

    std::vector<double> colnorm(n, 0.0);
    auto tail_norm = [&](int j, int from) {
        double s = 0.0;
        for (int i = from; i < m; ++i) s += std::norm(f.R(i, j));
        return std::sqrt(s);
    };

    const int kmax = std::min(m, n);
    double r00 = 0.0;
    for (int k = 0; k < kmax; ++k) {
        int best = k;
        double bestn = -1.0;
        for (int j = k; j < n; ++j) {
            colnorm[j] = tail_norm(j, k);
            if (colnorm[j] > bestn) { bestn = colnorm[j]; best = j; }
        }
        if (best != k) {
            for (int i = 0; i < m; ++i) std::swap(f.R(i, k), f.R(i, best));
            std::swap(f.perm[k], f.perm[best]);
        }
        if (k == 0) r00 = bestn;
        // Absolute floor: data in this library is O(1)-normalized, so a
        // pivot below rtol is noise even when the whole matrix is tiny.
        if (bestn <= rtol * std::max(r00, 1.0)) break;
        f.rank = k + 1;

        // Householder vector for column k below the diagonal.
        cplx alpha = f.R(k, k);
        double xnorm = bestn;
        cplx phase = (std::abs(alpha) > 0) ? alpha / std::abs(alpha) : cplx(1.0);
        cplx beta = -phase * xnorm;
        std::vector<cplx> v(m, 0.0);
        v[k] = alpha - beta;
        for (int i = k + 1; i < m; ++i) v[i] = f.R(i, k);
        double vnorm2 = 0.0;
        for (int i = k; i < m; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 <= 0) continue;

        // Apply H = I - 2 v v^dagger / |v|^2 to R (left) and accumulate in Q.
        for (int j = k; j < n; ++j) {
            cplx w = 0.0;
            for (int i = k; i < m; ++i) w += std::conj(v[i]) * f.R(i, j);
            w *= 2.0 / vnorm2;
            for (int i = k; i < m; ++i) f.R(i, j) -= w * v[i];
        }
        for (int i2 = 0; i2 < m; ++i2) {
            cplx w = 0.0;
            for (int i = k; i < m; ++i) w += f.Q(i2, i) * v[i];
            w *= 2.0 / vnorm2;
            for (int i = k; i < m; ++i) f.Q(i2, i) -= w * std::conj(v[i]);
        }
        f.R(k, k) = beta;
        for (int i = k + 1; i < m; ++i) f.R(i, k) = 0.0;
    }
    return f;
}

} // namespace

LeastSquaresResult least_squares(const CMatrix& A, const CMatrix& B) {
    if (A.rows() != B.rows()) fail("DimensionMismatch", "least_squares shapes");
    const int n = A.cols(), p = B.cols();
    QrCp f = qr_cp(A, 1e-13);
    const int r = f.rank;

    CMatrix Y = f.Q.adjoint() * B; // m x p
    CMatrix Xp(n, p);              // pivoted solution, basic (zeros beyond rank)
    for (int col = 0; col < p; ++col) {
        for (int i = r - 1; i >= 0; --i) {
            cplx s = Y(i, col);
            for (int j = i + 1; j < r; ++j) s -= f.R(i, j) * Xp(j, col);
            Xp(i, col) = s / f.R(i, i);
        }
    }
    CMatrix X(n, p);
    for (int j = 0; j < n; ++j)
        for (int col = 0; col < p; ++col) X(f.perm[j], col) = Xp(j, col);

    X.ensure_finite("least_squares solution");
    double res = (A * X - B).max_abs();
    return {X, res};
}

CMatrix solve_exact(const CMatrix& A, const CMatrix& B, double tol) {
    LeastSquaresResult ls = least_squares(A, B);
    if (ls.residual > tol)
        fail("RankDeficient", "exact solve residual " + std::to_string(ls.residual));
    return ls.solution;
}

CMatrix nullspace(const CMatrix& A, double rtol) {
    const int n = A.cols();
    if (A.rows() == 0) return CMatrix::identity(n);
    QrCp f = qr_cp(A, rtol);
    const int r = f.rank;
    const int k = n - r;
    CMatrix N(n, k);
    if (k == 0) return N;

    // Basic kernel vectors [-R11^{-1} R12; I] in pivoted coordinates.
    for (int c = 0; c < k; ++c) {
        std::vector<cplx> x(n, 0.0);
        x[r + c] = 1.0;
        for (int i = r - 1; i >= 0; --i) {
            cplx s = -f.R(i, r + c);
            for (int j = i + 1; j < r; ++j) s -= f.R(i, j) * x[j];
            x[i] = s / f.R(i, i);
        }
        for (int j = 0; j < n; ++j) N(f.perm[j], c) = x[j];
    }
    return orthonormal_range(N, 1e-12);
}

CMatrix orthonormal_range(const CMatrix& A, double rtol) {
    if (A.cols() == 0) return CMatrix(A.rows(), 0);
    QrCp f = qr_cp(A, rtol);
    CMatrix Q(A.rows(), f.rank);
    for (int j = 0; j < f.rank; ++j)
        for (int i = 0; i < A.rows(); ++i) Q(i, j) = f.Q(i, j);
    return Q;
}

int numeric_rank(const CMatrix& A, double rtol) {
    if (A.rows() == 0 || A.cols() == 0) return 0;
    // Per design: singular values from the Hermitian eigensolver on A^dagger A.
    CMatrix G = A.adjoint() * A;
    EigResult e = hermitian_eig(G, 1e-8 * std::max(1.0, G.max_abs()));
    double lmax = 0.0;
    for (double l : e.eigenvalues) lmax = std::max(lmax, l);
    if (lmax <= rtol * rtol) return 0; // numerically the zero matrix
    // Relative cut with a floor at the eigensolver's resolution.
    const double cut = lmax * std::max(rtol * rtol, 1e-12);
    int r = 0;
    for (double l : e.eigenvalues)
        if (l > cut) ++r;
    return r;
}

namespace {
CMatrix positive_power(const CMatrix& A, double expnt, double tol) {
    EigResult e = hermitian_eig(A, tol);
    const int n = A.rows();
    double lmax = 0.0;
    for (double l : e.eigenvalues) lmax = std::max(lmax, std::abs(l));
    CMatrix D(n, n);
    for (int i = 0; i < n; ++i) {
        if (e.eigenvalues[i] <= tol * std::max(1.0, lmax))
            fail("RankDeficient", "matrix not positive definite");
        D(i, i) = std::pow(e.eigenvalues[i], expnt);
    }
    return e.vectors * D * e.vectors.adjoint();
}
} // namespace

CMatrix positive_sqrt(const CMatrix& A, double tol) { return positive_power(A, 0.5, tol); }
CMatrix positive_inv_sqrt(const CMatrix& A, double tol) { return positive_power(A, -0.5, tol); }

CMatrix inverse(const CMatrix& A, double tol) {
    if (A.rows() != A.cols()) fail("DimensionMismatch", "inverse of non-square");
    return solve_exact(A, CMatrix::identity(A.rows()), tol);
}

} // namespace hopfdual
