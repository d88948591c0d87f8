#include "hopfdual/predual.hpp"

#include <cmath>

namespace hopfdual {

cplx PredualAlgebra::pair(const CMatrix& mu, const CMatrix& x) const {
    cplx s = 0.0;
    for (int i = 0; i < algebra.dim; ++i) s += mu(i, 0) * x(i, 0);
    return s;
}

CMatrix PredualAlgebra::kappa_tilde(const CMatrix& mu) const {
    return parent->kappa().transpose() * mu;
}

CMatrix PredualAlgebra::kappa_tilde_matrix() const { return parent->kappa().transpose(); }

PredualPtr build_predual(const HopfPtr& M) {
    const int n = M->dim();
    auto P = std::make_shared<PredualAlgebra>();
    P->parent = M;
    FinStarAlgebra& A = P->algebra;
    A.dim = n;
    A.labels.resize(n);
    for (int i = 0; i < n; ++i) A.labels[i] = "mu[" + M->labels()[i] + "]";

    // (mu^i mu^j)(e_k) = (mu^i ⊗ mu^j)(Delta e_k) = Delta[(i,j), k].
    A.structure.assign(size_t(n) * n * n, 0.0);
    const CMatrix& D = M->delta();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) A.c(i, j, k) = D(i * n + j, k);

    // mu*(e_k) = conj(mu(kappa(e_k)*)): star matrix (S conj(K))^dagger.
    A.star = (M->star() * M->kappa().conjugate()).adjoint();

    // A unit exists iff Delta admits a counit; solve and keep it when present.
    {
        CMatrix sys(2 * n * n, n), rhs(2 * n * n, 1);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                for (int i = 0; i < n; ++i) {
                    sys(j * n + k, i) = A.c(i, j, k);
                    sys(n * n + j * n + k, i) = A.c(j, i, k);
                }
                rhs(j * n + k, 0) = (j == k) ? 1.0 : 0.0;
                rhs(n * n + j * n + k, 0) = (j == k) ? 1.0 : 0.0;
            }
        LeastSquaresResult ls = least_squares(sys, rhs);
        if (ls.residual < 1e-9) A.unit = ls.solution;
    }

    AxiomReport rep = verify_star_algebra(A);
    if (!rep.pass(1e-9))
        fail("ExtensionInconsistent", "predual fails *-algebra axioms: " + rep.summary());
    return P;
}

CoefficientFunctional coefficient(const HopfPtr& M, const CMatrix& x, const CMatrix& y) {
    const int H = M->shape().hilbert_dim();
    if (x.rows() != H || y.rows() != H || x.cols() != 1 || y.cols() != 1)
        fail("DimensionMismatch", "coefficient vectors must live on H");
    CoefficientFunctional f;
    f.x = x;
    f.y = y;
    f.coords = CMatrix(M->dim(), 1);
    for (int i = 0; i < M->dim(); ++i) {
        const CMatrix op = M->to_operator(M->basis_vector(i));
        f.coords(i, 0) = dot(op * x, y); // <a x, y>
    }
    return f;
}

CMatrix coefficient_span(const HopfPtr& M) {
    const int H = M->shape().hilbert_dim();
    CMatrix span(M->dim(), H * H);
    for (int a = 0; a < H; ++a)
        for (int b = 0; b < H; ++b) {
            CMatrix ea(H, 1), eb(H, 1);
            ea(a, 0) = 1.0;
            eb(b, 0) = 1.0;
            span.set_col(a * H + b, coefficient(M, ea, eb).coords);
        }
    return span;
}

CMatrix functional_representative(const HopfPtr& M, const CMatrix& mu) {
    // mu(u_{(b,r,c)}) = tr(u_{(b,r,c)} T) = T[c_global][r_global]; block parts
    // of T are transposes of mu's coordinate blocks, zero elsewhere.
    const BlockShape& shape = M->shape();
    const int H = shape.hilbert_dim();
    CMatrix T(H, H);
    int idx = 0, hoff = 0;
    for (int d : shape.dims) {
        for (int r = 0; r < d; ++r)
            for (int cc = 0; cc < d; ++cc) T(hoff + cc, hoff + r) = mu(idx + r * d + cc, 0);
        idx += d * d;
        hoff += d;
    }
    return T;
}

} // namespace hopfdual
