#include "hopfdual/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hopfdual {

double AxiomReport::max_residual() const {
    double m = 0.0;
    for (const auto& [name, v] : residuals) m = std::max(m, v);
    return m;
}

std::string AxiomReport::summary() const {
    std::ostringstream os;
    for (const auto& [name, v] : residuals) os << name << "=" << v << " ";
    return os.str();
}

CMatrix FinStarAlgebra::mul(const CMatrix& x, const CMatrix& y) const {
    CMatrix r(dim, 1);
    for (int i = 0; i < dim; ++i) {
        const cplx xi = x(i, 0);
        if (xi == cplx(0.0)) continue;
        for (int j = 0; j < dim; ++j) {
            const cplx f = xi * y(j, 0);
            if (f == cplx(0.0)) continue;
            for (int k = 0; k < dim; ++k) r(k, 0) += f * c(i, j, k);
        }
    }
    return r;
}

CMatrix FinStarAlgebra::star_of(const CMatrix& x) const { return star * x.conjugate(); }

CMatrix FinStarAlgebra::left_mult(const CMatrix& x) const {
    CMatrix L(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            const cplx xi = x(i, 0);
            if (xi == cplx(0.0)) continue;
            for (int k = 0; k < dim; ++k) L(k, j) += xi * c(i, j, k);
        }
    }
    return L;
}

CMatrix FinStarAlgebra::right_mult(const CMatrix& x) const {
    CMatrix R(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const cplx xj = x(j, 0);
            if (xj == cplx(0.0)) continue;
            for (int k = 0; k < dim; ++k) R(k, i) += xj * c(i, j, k);
        }
    }
    return R;
}

CMatrix FinStarAlgebra::basis_vector(int i) const {
    CMatrix v(dim, 1);
    v(i, 0) = 1.0;
    return v;
}

bool FinStarAlgebra::commutative(double tol) const {
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (std::abs(c(i, j, k) - c(j, i, k)) > tol) return false;
    return true;
}

CMatrix AlgebraRep::apply(const CMatrix& coords) const {
    CMatrix r(degree, degree);
    for (int i = 0; i < int(mats.size()); ++i) {
        const cplx w = coords(i, 0);
        if (w == cplx(0.0)) continue;
        r += mats[i] * w;
    }
    return r;
}

std::vector<cplx> AlgebraRep::trace_fingerprint() const {
    std::vector<cplx> f;
    f.reserve(mats.size());
    for (const auto& m : mats) {
        cplx t = 0.0;
        for (int i = 0; i < degree; ++i) t += m(i, i);
        f.push_back(t);
    }
    return f;
}

double Subspace::distance(const CMatrix& v) const {
    if (basis.cols() == 0) return v.max_abs();
    return (v - basis * (basis.adjoint() * v)).max_abs();
}

Subspace make_subspace(int ambient, const CMatrix& spanning, double rtol) {
    Subspace s;
    s.ambient = ambient;
    s.basis = spanning.cols() == 0 ? CMatrix(ambient, 0) : orthonormal_range(spanning, rtol);
    return s;
}

bool same_fingerprint(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

AxiomReport verify_star_algebra(const FinStarAlgebra& A) {
    AxiomReport rep;
    const int n = A.dim;

    std::vector<CMatrix> L(n);
    for (int i = 0; i < n; ++i) L[i] = A.left_mult(A.basis_vector(i));

    double assoc = 0.0; // sum_m c_ijm L_m == L_i L_j
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            CMatrix lhs(n, n);
            for (int m = 0; m < n; ++m) {
                const cplx w = A.c(i, j, m);
                if (w != cplx(0.0)) lhs += L[m] * w;
            }
            assoc = std::max(assoc, (lhs - L[i] * L[j]).max_abs());
        }
    rep.add("associativity", assoc);

    if (A.unit) {
        double uerr = 0.0;
        for (int i = 0; i < n; ++i) {
            const CMatrix e = A.basis_vector(i);
            uerr = std::max(uerr, (A.mul(*A.unit, e) - e).max_abs());
            uerr = std::max(uerr, (A.mul(e, *A.unit) - e).max_abs());
        }
        rep.add("unit", uerr);
    }

    rep.add("star_involutive", (A.star * A.star.conjugate() - CMatrix::identity(n)).max_abs());

    double anti = 0.0; // (xy)* = y* x*
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const CMatrix ei = A.basis_vector(i), ej = A.basis_vector(j);
            const CMatrix lhs = A.star_of(A.mul(ei, ej));
            const CMatrix rhs = A.mul(A.star_of(ej), A.star_of(ei));
            anti = std::max(anti, (lhs - rhs).max_abs());
        }
    rep.add("star_antimultiplicative", anti);

    // Antilinearity is structural in coords(x*) = star * conj(x).
    rep.add("star_antilinear", 0.0);
    return rep;
}

AxiomReport verify_ideal(const FinStarAlgebra& A, const Subspace& X) {
    AxiomReport rep;
    double closure = 0.0, starres = 0.0;
    for (int cidx = 0; cidx < X.dim(); ++cidx) {
        const CMatrix b = X.basis.col(cidx);
        starres = std::max(starres, X.distance(A.star_of(b)));
        for (int i = 0; i < A.dim; ++i) {
            const CMatrix e = A.basis_vector(i);
            closure = std::max(closure, X.distance(A.mul(e, b)));
            closure = std::max(closure, X.distance(A.mul(b, e)));
        }
    }
    rep.add("ideal_closure", closure);
    rep.add("ideal_star_closed", starres);
    return rep;
}

// ---------------------------------------------------------------------------
// Radical
// ---------------------------------------------------------------------------

namespace {

// Unitization A+ = A ⊕ C·1 (used when A carries no unit of its own; the
// radical of A+ lies inside A).
FinStarAlgebra unitize(const FinStarAlgebra& A) {
    FinStarAlgebra B;
    B.dim = A.dim + 1;
    B.labels = A.labels;
    B.labels.push_back("one");
    B.structure.assign(size_t(B.dim) * B.dim * B.dim, 0.0);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int k = 0; k < A.dim; ++k) B.c(i, j, k) = A.c(i, j, k);
    const int u = A.dim;
    for (int i = 0; i <= A.dim; ++i) {
        B.c(u, i, i) = 1.0;
        B.c(i, u, i) = 1.0;
    }
    B.c(u, u, u) = 1.0; // set once more; the loops above already wrote it
    B.star = CMatrix(B.dim, B.dim);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) B.star(i, j) = A.star(i, j);
    B.star(u, u) = 1.0;
    CMatrix unit(B.dim, 1);
    unit(u, 0) = 1.0;
    B.unit = unit;
    return B;
}

} // namespace

Subspace jacobson_radical(const FinStarAlgebra& A) {
    const bool need_unitize = !A.unit.has_value();
    const FinStarAlgebra& B = A; // alias for readability
    FinStarAlgebra Aplus;
    const FinStarAlgebra* W = &B;
    if (need_unitize) {
        Aplus = unitize(A);
        W = &Aplus;
    }
    const int n = W->dim;

    // tr(L_{e_k}) and the trace form M[j][i] = tr(L_{e_i e_j}).
    std::vector<cplx> trL(n, 0.0);
    for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) trL[k] += W->c(k, m, m);

    CMatrix M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < n; ++k) s += W->c(i, j, k) * trL[k];
            M(j, i) = s;
        }

    CMatrix N = nullspace(M, 1e-9);
    if (need_unitize) {
        // rad(A+) ⊆ A: drop the adjoined coordinate (it must be ~0).
        CMatrix P(A.dim, N.cols());
        for (int j = 0; j < N.cols(); ++j) {
            if (std::abs(N(A.dim, j)) > 1e-7)
                fail("SplitFailure", "radical leaked into the unitization");
            for (int i = 0; i < A.dim; ++i) P(i, j) = N(i, j);
        }
        N = P;
    }
    Subspace rad = make_subspace(A.dim, N);
    rad.ideal_flag = true;
    return rad;
}

// ---------------------------------------------------------------------------
// Polynomial roots (Durand–Kerner) for the non-positive-involution fallback.
// ---------------------------------------------------------------------------

namespace {

std::vector<cplx> durand_kerner(const std::vector<cplx>& monic_coeffs /* a_0..a_{d-1} */) {
    const int d = int(monic_coeffs.size());
    if (d == 0) return {};
    auto eval = [&](cplx z) {
        cplx p = 1.0;
        for (int k = d - 1; k >= 0; --k) p = p * z + monic_coeffs[k];
        return p;
    };
    double radius = 1.0;
    for (const auto& a : monic_coeffs) radius = std::max(radius, 1.0 + std::abs(a));
    std::vector<cplx> z(d);
    const cplx w(0.4, 0.9);
    cplx p = 1.0;
    for (int k = 0; k < d; ++k) {
        p *= w;
        z[k] = radius * p;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double delta = 0.0;
        for (int k = 0; k < d; ++k) {
            cplx denom = 1.0;
            for (int j = 0; j < d; ++j)
                if (j != k) denom *= (z[k] - z[j]);
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            const cplx step = eval(z[k]) / denom;
            z[k] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-13 * radius) break;
    }
    return z;
}

// Minimal polynomial of x relative to the given unit; returns monic
// coefficients a_0..a_{d-1} with x^d + sum a_k x^k = 0.
std::vector<cplx> minimal_polynomial(const FinStarAlgebra& A, const CMatrix& unit,
                                     const CMatrix& x, double tol) {
    std::vector<CMatrix> powers{unit};
    CMatrix cur = unit;
    for (int deg = 1; deg <= A.dim + 1; ++deg) {
        cur = A.mul(x, cur);
        CMatrix P(A.dim, int(powers.size()));
        for (int j = 0; j < int(powers.size()); ++j) P.set_col(j, powers[j]);
        LeastSquaresResult ls = least_squares(P, cur);
        if (ls.residual < tol) {
            std::vector<cplx> coeffs(powers.size());
            for (int k = 0; k < int(powers.size()); ++k) coeffs[k] = -ls.solution(k, 0);
            return coeffs;
        }
        powers.push_back(cur);
    }
    fail("SplitFailure", "minimal polynomial did not terminate");
}

} // namespace

// ---------------------------------------------------------------------------
// Wedderburn machinery
// ---------------------------------------------------------------------------

namespace {

struct QuotientAlgebra {
    FinStarAlgebra Q;
    CMatrix lift;  // n x q (orthonormal complement of the radical)
    CMatrix proj;  // q x n (= lift^dagger)
};

QuotientAlgebra quotient_by_radical(const FinStarAlgebra& A, const Subspace& rad) {
    const int n = A.dim;
    const int q = n - rad.dim();
    // Complement = kernel of the projection onto the radical.
    CMatrix B;
    if (rad.dim() == 0) {
        B = CMatrix::identity(n);
    } else {
        B = nullspace(rad.basis.adjoint(), 1e-12);
    }
    if (B.cols() != q) fail("SplitFailure", "radical complement has wrong dimension");

    QuotientAlgebra out;
    out.lift = B;
    out.proj = B.adjoint();
    FinStarAlgebra& Q = out.Q;
    Q.dim = q;
    Q.labels.resize(q);
    for (int i = 0; i < q; ++i) Q.labels[i] = "q" + std::to_string(i);
    Q.structure.assign(size_t(q) * q * q, 0.0);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            const CMatrix p = out.proj * A.mul(B.col(i), B.col(j));
            for (int k = 0; k < q; ++k) Q.c(i, j, k) = p(k, 0);
        }
    Q.star = out.proj * A.star * B.conjugate();

    if (q > 0) {
        // A semisimple algebra is unital; solve L_u = id, R_u = id jointly.
        CMatrix sys(2 * q * q, q), rhs(2 * q * q, 1);
        for (int j = 0; j < q; ++j)
            for (int k = 0; k < q; ++k) {
                for (int i = 0; i < q; ++i) {
                    sys(j * q + k, i) = Q.c(i, j, k);
                    sys(q * q + j * q + k, i) = Q.c(j, i, k);
                }
                rhs(j * q + k, 0) = (j == k) ? 1.0 : 0.0;
                rhs(q * q + j * q + k, 0) = (j == k) ? 1.0 : 0.0;
            }
        LeastSquaresResult ls = least_squares(sys, rhs);
        if (ls.residual > 1e-7) fail("SplitFailure", "semisimple quotient has no unit");
        Q.unit = ls.solution;
    } else {
        Q.unit = CMatrix(0, 1);
    }
    return out;
}

CMatrix center_basis(const FinStarAlgebra& Q) {
    const int q = Q.dim;
    if (q == 0) return CMatrix(0, 0);
    CMatrix stack(q * q, q);
    for (int j = 0; j < q; ++j) {
        const CMatrix e = Q.basis_vector(j);
        const CMatrix C = Q.left_mult(e) - Q.right_mult(e);
        for (int r = 0; r < q; ++r)
            for (int x = 0; x < q; ++x) stack(j * q + r, x) = C(r, x);
    }
    return nullspace(stack, 1e-10);
}

// Sesquilinear trace form g(x, y) = tr(L_{y* x}); GM[i][j] = g(e_j, e_i)
// so that g(x, y) = y^dagger GM x.
CMatrix trace_gram(const FinStarAlgebra& Q) {
    const int q = Q.dim;
    std::vector<cplx> trL(q, 0.0);
    for (int k = 0; k < q; ++k)
        for (int m = 0; m < q; ++m) trL[k] += Q.c(k, m, m);
    CMatrix GM(q, q);
    for (int i = 0; i < q; ++i) {
        const CMatrix si = Q.star_of(Q.basis_vector(i));
        for (int j = 0; j < q; ++j) {
            const CMatrix prod = Q.mul(si, Q.basis_vector(j));
            cplx s = 0.0;
            for (int k = 0; k < q; ++k) s += prod(k, 0) * trL[k];
            GM(i, j) = s; // g(e_j, e_i) = tr(L_{e_i* e_j})
        }
    }
    return GM;
}

// Coordinates of v in the columns of B (consistency-checked).
CMatrix coords_in(const CMatrix& B, const CMatrix& v, double tol = 1e-7) {
    LeastSquaresResult ls = least_squares(B, v);
    if (ls.residual > tol) fail("SplitFailure", "vector left its expected subspace");
    return ls.solution;
}

std::vector<double> sorted_unique(std::vector<double> vals, double sep) {
    std::sort(vals.begin(), vals.end());
    std::vector<double> out;
    for (double v : vals) {
        if (out.empty() || v - out.back() > sep)
            out.push_back(v);
        else
            out.back() = (out.back() + v) / 2.0; // merge cluster
    }
    return out;
}

struct SplitAttempt {
    std::vector<CMatrix> idempotents; // central, minimal, in Q coords
};

// Split the (semisimple) algebra Q along its center. Positive-involution
// inputs go through the Hermitian eigensolver; the rest through minimal
// polynomial + Durand–Kerner.
SplitAttempt split_center(const FinStarAlgebra& Q, const CMatrix& Z, bool positive,
                          const CMatrix& GM, Rng& rng) {
    const int q = Q.dim;
    const int m = Z.cols();
    const CMatrix unit = *Q.unit;
    SplitAttempt out;
    if (m == 1) {
        out.idempotents.push_back(unit);
        return out;
    }

    CMatrix hcoefs(m, 1);
    for (int i = 0; i < m; ++i) hcoefs(i, 0) = rng.complex_box();
    CMatrix h = Z * hcoefs;

    std::vector<CMatrix> idems;
    if (positive) {
        h = h + Q.star_of(h); // self-adjoint central element
        // Multiplication operator restricted to the center.
        CMatrix T(m, m);
        for (int b = 0; b < m; ++b) T.set_col(b, coords_in(Z, Q.mul(h, Z.col(b))));
        // Orthonormalize the center against the positive trace form.
        CMatrix GZ(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                // g(z_j, z_i) = (z_i)^dagger GM z_j
                GZ(i, j) = dot(GM * Z.col(j), Z.col(i));
            }
        EigResult ge = hermitian_eig(GZ, 1e-7 * std::max(1.0, GZ.max_abs()));
        for (double l : ge.eigenvalues)
            if (l <= 0) fail("SplitFailure", "trace form lost positivity on the center");
        CMatrix W(m, m), Winv(m, m);
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) {
                W(i, j) = ge.vectors(i, j) / std::sqrt(ge.eigenvalues[j]);
                Winv(j, i) = std::conj(ge.vectors(i, j)) * std::sqrt(ge.eigenvalues[j]);
            }
        CMatrix Ton = Winv * T * W;
        const double hermdev = (Ton - Ton.adjoint()).max_abs();
        if (hermdev > 1e-6 * std::max(1.0, Ton.max_abs()))
            fail("SplitFailure", "central multiplication operator not Hermitian");
        EigResult te = hermitian_eig(Ton, 1e-5 * std::max(1.0, Ton.max_abs()));
        const double sep = 1e-6 * std::max(1.0, Ton.max_abs());
        for (int k = 1; k < m; ++k)
            if (te.eigenvalues[k] - te.eigenvalues[k - 1] < sep)
                fail("SplitFailure", "central eigenvalue collision");
        for (int k = 0; k < m; ++k) idems.push_back(Z * (W * te.vectors.col(k)));
    } else {
        std::vector<cplx> mp = minimal_polynomial(Q, unit, h, 1e-9);
        if (int(mp.size()) != m) fail("SplitFailure", "central element is not generic");
        std::vector<cplx> roots = durand_kerner(mp);
        for (size_t a = 0; a < roots.size(); ++a)
            for (size_t b = a + 1; b < roots.size(); ++b)
                if (std::abs(roots[a] - roots[b]) < 1e-6)
                    fail("SplitFailure", "central spectrum collision");
        std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        for (int k = 0; k < m; ++k) {
            CMatrix p = unit;
            for (int j = 0; j < m; ++j) {
                if (j == k) continue;
                p = Q.mul(h - unit * roots[j], p) * (1.0 / (roots[k] - roots[j]));
            }
            idems.push_back(p);
        }
    }

    // Normalize eigenvectors to idempotents: v^2 = alpha v.
    for (auto& v : idems) {
        const CMatrix v2 = Q.mul(v, v);
        const cplx alpha = dot(v2, v) / dot(v, v);
        if (std::abs(alpha) < 1e-8) fail("SplitFailure", "degenerate central idempotent");
        v = v * (1.0 / alpha);
        if ((Q.mul(v, v) - v).max_abs() > 1e-7)
            fail("SplitFailure", "central idempotent drifted");
    }
    CMatrix total(q, 1);
    for (const auto& p : idems) total += p;
    if ((total - unit).max_abs() > 1e-7)
        fail("SplitFailure", "central idempotents do not sum to the unit");
    out.idempotents = idems;
    return out;
}

// One simple block Q p (p a minimal central idempotent) realized as Mat(d).
AlgebraRep realize_block(const FinStarAlgebra& A, const QuotientAlgebra& qa,
                         const FinStarAlgebra& Q, const CMatrix& p, bool positive,
                         Rng& rng) {
    const int q = Q.dim;
    // Basis of the two-sided ideal S = Q p.
    CMatrix cols(q, q);
    for (int j = 0; j < q; ++j) cols.set_col(j, Q.mul(Q.basis_vector(j), p));
    CMatrix Sb = orthonormal_range(cols, 1e-9);
    const int sz = Sb.cols();
    const int d = int(std::lround(std::sqrt(double(sz))));
    if (d * d != sz) fail("SplitFailure", "simple block dimension is not a square");

    // Structure of S in the Sb coordinates.
    FinStarAlgebra S;
    S.dim = sz;
    S.labels.resize(sz, "s");
    S.structure.assign(size_t(sz) * sz * sz, 0.0);
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j) {
            const CMatrix prod = coords_in(Sb, Q.mul(Sb.col(i), Sb.col(j)));
            for (int k = 0; k < sz; ++k) S.c(i, j, k) = prod(k, 0);
        }
    S.star = CMatrix::identity(sz); // placeholder; S is used star-free here
    const CMatrix punit = coords_in(Sb, p);
    S.unit = punit;

    // Primitive idempotent from the spectral projector of a generic element.
    const bool block_star_closed =
        positive && (Q.star_of(p) - p).max_abs() < 1e-7;
    CMatrix e;
    {
        CMatrix xc(sz, 1);
        for (int i = 0; i < sz; ++i) xc(i, 0) = rng.complex_box();
        CMatrix s_elt = Sb * xc;
        std::vector<cplx> lambdas;
        if (block_star_closed) {
            s_elt = s_elt + Q.star_of(s_elt);
            // Hermitian route: eigenvalues of L_s on S w.r.t. the trace form.
            CMatrix T(sz, sz);
            for (int b = 0; b < sz; ++b)
                T.set_col(b, coords_in(Sb, Q.mul(s_elt, Sb.col(b))));
            // Orthonormalize S against the positive form inherited from Q.
            CMatrix GMQ = trace_gram(Q);
            CMatrix GS(sz, sz);
            for (int i = 0; i < sz; ++i)
                for (int j = 0; j < sz; ++j) GS(i, j) = dot(GMQ * Sb.col(j), Sb.col(i));
            EigResult ge = hermitian_eig(GS, 1e-7 * std::max(1.0, GS.max_abs()));
            for (double l : ge.eigenvalues)
                if (l <= 0) fail("SplitFailure", "trace form lost positivity on a block");
            CMatrix W(sz, sz), Winv(sz, sz);
            for (int j = 0; j < sz; ++j)
                for (int i = 0; i < sz; ++i) {
                    W(i, j) = ge.vectors(i, j) / std::sqrt(ge.eigenvalues[j]);
                    Winv(j, i) = std::conj(ge.vectors(i, j)) * std::sqrt(ge.eigenvalues[j]);
                }
            CMatrix Ton = Winv * T * W;
            if ((Ton - Ton.adjoint()).max_abs() > 1e-6 * std::max(1.0, Ton.max_abs()))
                fail("SplitFailure", "block multiplication operator not Hermitian");
            EigResult te = hermitian_eig(Ton, 1e-5 * std::max(1.0, Ton.max_abs()));
            const double sep = 1e-6 * std::max(1.0, Ton.max_abs());
            std::vector<double> uniq = sorted_unique(te.eigenvalues, sep);
            if (int(uniq.size()) != d)
                fail("SplitFailure", "block spectrum is not generic");
            lambdas.assign(uniq.begin(), uniq.end());
        } else {
            const CMatrix sc = coords_in(Sb, s_elt);
            std::vector<cplx> mp = minimal_polynomial(S, punit, sc, 1e-9);
            if (int(mp.size()) != d) fail("SplitFailure", "block element is not generic");
            lambdas = durand_kerner(mp);
            for (size_t a = 0; a < lambdas.size(); ++a)
                for (size_t b = a + 1; b < lambdas.size(); ++b)
                    if (std::abs(lambdas[a] - lambdas[b]) < 1e-6)
                        fail("SplitFailure", "block spectrum collision");
            std::sort(lambdas.begin(), lambdas.end(), [](cplx x, cplx y) {
                if (x.real() != y.real()) return x.real() < y.real();
                return x.imag() < y.imag();
            });
        }
        // Lagrange spectral projector for the first eigenvalue.
        const CMatrix sc = coords_in(Sb, s_elt);
        CMatrix proj = punit;
        for (int j = 1; j < d; ++j)
            proj = S.mul(sc - punit * lambdas[j], proj) * (1.0 / (lambdas[0] - lambdas[j]));
        if ((S.mul(proj, proj) - proj).max_abs() > 1e-6)
            fail("SplitFailure", "primitive idempotent drifted");
        e = proj;
    }

    // Minimal left ideal V = S e and the representation by left multiplication.
    CMatrix vcols(sz, sz);
    for (int j = 0; j < sz; ++j) vcols.set_col(j, S.mul(S.basis_vector(j), e));
    CMatrix Vb = orthonormal_range(vcols, 1e-9);
    if (Vb.cols() != d) fail("SplitFailure", "minimal left ideal has wrong dimension");

    AlgebraRep rep;
    rep.degree = d;
    rep.mats.resize(A.dim);
    for (int i = 0; i < A.dim; ++i) {
        const CMatrix w = qa.proj * A.basis_vector(i); // image in Q
        CMatrix cols_i(sz, d);
        for (int v = 0; v < d; ++v) {
            const CMatrix sv = Sb * Vb.col(v);       // element of S in Q coords
            const CMatrix prod = Q.mul(w, sv);        // stays in S
            cols_i.set_col(v, coords_in(Sb, prod));
        }
        rep.mats[i] = solve_exact(Vb, cols_i, 1e-6);
    }
    return rep;
}

} // namespace

std::vector<AlgebraRep> wedderburn_blocks(const FinStarAlgebra& A, std::uint64_t seed) {
    auto algebra_ptr = std::make_shared<FinStarAlgebra>(A);
    const Subspace rad = jacobson_radical(A);
    QuotientAlgebra qa = quotient_by_radical(A, rad);
    const FinStarAlgebra& Q = qa.Q;
    if (Q.dim == 0) return {};

    const CMatrix Z = center_basis(Q);
    const CMatrix GM = trace_gram(Q);
    bool positive = false;
    {
        const double dev = (GM - GM.adjoint()).max_abs();
        if (dev < 1e-7 * std::max(1.0, GM.max_abs())) {
            EigResult ge = hermitian_eig((GM + GM.adjoint()) * cplx(0.5),
                                         1e-6 * std::max(1.0, GM.max_abs()));
            double lmax = 0.0;
            for (double l : ge.eigenvalues) lmax = std::max(lmax, std::abs(l));
            positive = !ge.eigenvalues.empty() && ge.eigenvalues.front() > 1e-9 * lmax;
        }
    }

    Error last("SplitFailure", "unreachable");
    for (int attempt = 0; attempt < 10; ++attempt) {
        Rng rng = Rng(seed).derive(attempt);
        try {
            SplitAttempt sp = split_center(Q, Z, positive, GM, rng);
            std::vector<AlgebraRep> reps;
            for (const auto& p : sp.idempotents) {
                AlgebraRep r = realize_block(A, qa, Q, p, positive, rng);
                r.algebra = algebra_ptr;
                reps.push_back(std::move(r));
            }
            // Consistency: sum of d^2 equals dim(A/rad).
            int total = 0;
            for (const auto& r : reps) total += r.degree * r.degree;
            if (total != Q.dim) fail("SplitFailure", "block dimensions do not add up");
            // Multiplicativity spot check.
            for (const auto& r : reps) {
                double res = 0.0;
                for (int i = 0; i < A.dim; ++i)
                    for (int j = 0; j < A.dim; ++j) {
                        const CMatrix lhs = r.apply(A.mul(A.basis_vector(i), A.basis_vector(j)));
                        res = std::max(res, (lhs - r.mats[i] * r.mats[j]).max_abs());
                    }
                if (res > 1e-7) fail("SplitFailure", "block representation not multiplicative");
            }
            // Deterministic order: (dimension, lexicographic rounded fingerprint).
            std::vector<std::pair<std::vector<double>, int>> keys;
            for (int i = 0; i < int(reps.size()); ++i) {
                std::vector<double> key{double(reps[i].degree)};
                for (const auto& t : reps[i].trace_fingerprint()) {
                    key.push_back(std::round(t.real() * 1e6) / 1e6);
                    key.push_back(std::round(t.imag() * 1e6) / 1e6);
                }
                keys.emplace_back(std::move(key), i);
            }
            std::sort(keys.begin(), keys.end());
            std::vector<AlgebraRep> sorted;
            for (auto& [k, i] : keys) sorted.push_back(std::move(reps[i]));
            return sorted;
        } catch (const Error& e) {
            if (e.code() != "SplitFailure" && e.code() != "RankDeficient") throw;
            last = Error(e.code(), e.what());
        }
    }
    fail("SplitFailure", std::string("no generic split after 10 reseeds: ") + last.what());
}

std::vector<AlgebraRep> irreducible_star_reps(const FinStarAlgebra& A, std::uint64_t seed) {
    std::vector<AlgebraRep> blocks = wedderburn_blocks(A, seed);
    std::vector<AlgebraRep> out;
    for (auto& rho : blocks) {
        const int d = rho.degree;
        const int n = A.dim;
        // Conjugate-dual representation rho'(a) = rho(a*)^dagger.
        std::vector<CMatrix> rho_dual(n);
        for (int i = 0; i < n; ++i) {
            CMatrix m(d, d);
            for (int j = 0; j < n; ++j) {
                const cplx w = std::conj(A.star(j, i));
                if (w != cplx(0.0)) m += rho.mats[j].adjoint() * w;
            }
            rho_dual[i] = m;
        }
        // Intertwiner space: T rho(a) = rho'(a) T, row-major vec(T).
        CMatrix stack(n * d * d, d * d);
        for (int i = 0; i < n; ++i) {
            const CMatrix blockmat =
                kron(CMatrix::identity(d), rho.mats[i].transpose()) - kron(rho_dual[i], CMatrix::identity(d));
            for (int r = 0; r < d * d; ++r)
                for (int cidx = 0; cidx < d * d; ++cidx) stack(i * d * d + r, cidx) = blockmat(r, cidx);
        }
        CMatrix N = nullspace(stack, 1e-9);
        if (N.cols() == 0) continue; // block carries no *-structure
        if (N.cols() > 1) fail("SplitFailure", "intertwiner space has dimension > 1");

        CMatrix T0(d, d);
        for (int r = 0; r < d; ++r)
            for (int cidx = 0; cidx < d; ++cidx) T0(r, cidx) = N(r * d + cidx, 0);
        CMatrix H1 = T0 + T0.adjoint();
        CMatrix H2 = (T0 - T0.adjoint()) * cplx(0.0, 1.0);
        CMatrix T = (H1.frobenius() >= H2.frobenius()) ? H1 : H2;
        T = T * (1.0 / T.frobenius());

        EigResult te = hermitian_eig(T, 1e-8);
        double lmax = 0.0;
        for (double l : te.eigenvalues) lmax = std::max(lmax, std::abs(l));
        double lminabs = lmax;
        for (double l : te.eigenvalues) lminabs = std::min(lminabs, std::abs(l));
        if (lminabs < 1e-8 * lmax)
            fail("SplitFailure", "singular Hermitian intertwiner");
        const bool pos = te.eigenvalues.front() > 0;
        const bool neg = te.eigenvalues.back() < 0;
        if (!pos && !neg) continue; // indefinite: no *-structure
        if (neg) T = T * cplx(-1.0);

        const CMatrix W = positive_sqrt(T, 1e-10);
        const CMatrix Winv = positive_inv_sqrt(T, 1e-10);
        AlgebraRep pi = rho;
        for (auto& m : pi.mats) m = W * m * Winv;
        // Verify pi(a*) = pi(a)^dagger over the basis.
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            CMatrix lhs(d, d);
            for (int j = 0; j < n; ++j) {
                const cplx w = A.star(j, i);
                if (w != cplx(0.0)) lhs += pi.mats[j] * w;
            }
            res = std::max(res, (lhs - pi.mats[i].adjoint()).max_abs());
        }
        if (res > 1e-7) fail("SplitFailure", "unitarization failed the *-check");
        pi.star_rep = true;
        out.push_back(std::move(pi));
    }
    return out;
}

FinStarAlgebra block_algebra(const std::vector<int>& dims) {
    FinStarAlgebra E;
    int n = 0;
    for (int d : dims) n += d * d;
    E.dim = n;
    E.structure.assign(size_t(n) * n * n, 0.0);
    E.labels.resize(n);
    E.star = CMatrix(n, n);
    CMatrix unit(n, 1);

    int off = 0, blk = 0;
    for (int d : dims) {
        auto idx = [&](int r, int cc) { return off + r * d + cc; };
        for (int r = 0; r < d; ++r)
            for (int cc = 0; cc < d; ++cc) {
                E.labels[idx(r, cc)] =
                    "B" + std::to_string(blk) + "[" + std::to_string(r) + "," + std::to_string(cc) + "]";
                E.star(idx(cc, r), idx(r, cc)) = 1.0;
            }
        for (int r = 0; r < d; ++r) {
            unit(idx(r, r), 0) = 1.0;
            for (int cc = 0; cc < d; ++cc)
                for (int c2 = 0; c2 < d; ++c2)
                    E.c(idx(r, cc), idx(cc, c2), idx(r, c2)) = 1.0;
        }
        off += d * d;
        ++blk;
    }
    E.unit = unit;
    return E;
}

Envelope cstar_envelope(const FinStarAlgebra& A, std::uint64_t seed) {
    Envelope env;
    env.reps = irreducible_star_reps(A, seed);
    for (const auto& r : env.reps) env.block_dims.push_back(r.degree);
    env.algebra = block_algebra(env.block_dims);
    int total = env.algebra.dim;
    env.embedding = CMatrix(total, A.dim);
    for (int i = 0; i < A.dim; ++i) {
        int off = 0;
        for (const auto& r : env.reps) {
            const int d = r.degree;
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) env.embedding(off + a * d + b, i) = r.mats[i](a, b);
            off += d * d;
        }
    }
    return env;
}

std::vector<int> hull(const std::vector<AlgebraRep>& reps, const Subspace& X, double tol) {
    std::vector<int> out;
    for (int i = 0; i < int(reps.size()); ++i) {
        double m = 0.0;
        for (int j = 0; j < X.dim(); ++j)
            m = std::max(m, reps[i].apply(X.basis.col(j)).max_abs());
        if (m < tol) out.push_back(i);
    }
    return out;
}

std::vector<int> hull(const FinStarAlgebra& A, const Subspace& X, std::uint64_t seed) {
    return hull(irreducible_star_reps(A, seed), X);
}

Envelope envelope_of_ideal(const FinStarAlgebra& A, const Subspace& B, std::uint64_t seed) {
    if (!B.ideal_flag) fail("NotAnIdeal", "subspace is not flagged as an ideal");
    AxiomReport chk = verify_ideal(A, B);
    if (!chk.pass(1e-8)) fail("NotAnIdeal", "subspace fails ideal closure: " + chk.summary());

    std::vector<AlgebraRep> reps = irreducible_star_reps(A, seed);
    std::vector<int> h = hull(reps, B);
    std::vector<bool> in_hull(reps.size(), false);
    for (int i : h) in_hull[i] = true;

    Envelope env;
    for (int i = 0; i < int(reps.size()); ++i)
        if (!in_hull[i]) {
            env.reps.push_back(reps[i]);
            env.block_dims.push_back(reps[i].degree);
        }
    env.algebra = block_algebra(env.block_dims);
    // Embedding of the ideal: columns are images of B's orthonormal basis.
    env.embedding = CMatrix(env.algebra.dim, B.dim());
    for (int j = 0; j < B.dim(); ++j) {
        int off = 0;
        for (const auto& r : env.reps) {
            const int d = r.degree;
            const CMatrix img = r.apply(B.basis.col(j));
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) env.embedding(off + a * d + b, j) = img(a, b);
            off += d * d;
        }
    }
    return env;
}

} // namespace hopfdual
