#include "hopfdual/duality.hpp"

#include <algorithm>
#include <cmath>

namespace hopfdual {

std::pair<Subspace, RepPartition> absolutely_continuous_ideal(const PredualPtr& P,
                                                              std::uint64_t seed) {
    const int n = P->dim();
    RepPartition part;
    for (const AlgebraRep& r : irreducible_star_reps(P->algebra, seed))
        part.reps.push_back(lift_rep(P, r));
    for (int i = 0; i < int(part.reps.size()); ++i) {
        StandardVerdict v = is_standard(part.reps[i]);
        part.standard_residuals.push_back(v.residual);
        (v.standard ? part.standard_idx : part.nonstandard_idx).push_back(i);
    }

    Subspace ideal;
    if (part.nonstandard_idx.empty()) {
        ideal.ambient = n;
        ideal.basis = CMatrix::identity(n);
    } else {
        int rows = 0;
        for (int i : part.nonstandard_idx) rows += part.reps[i].degree * part.reps[i].degree;
        CMatrix stacked(rows, n);
        int off = 0;
        for (int i : part.nonstandard_idx) {
            const StarRep& s = part.reps[i];
            const int d = s.degree;
            for (int col = 0; col < n; ++col)
                for (int a = 0; a < d; ++a)
                    for (int b = 0; b < d; ++b) stacked(off + a * d + b, col) = s.mats[col](a, b);
            off += d * d;
        }
        ideal.ambient = n;
        ideal.basis = nullspace(stacked, 1e-9);
    }
    ideal.ideal_flag = true;
    AxiomReport chk = verify_ideal(P->algebra, ideal);
    if (!chk.pass(1e-8))
        fail("ExtensionInconsistent", "absolutely continuous ideal is not an ideal: " + chk.summary());
    return {ideal, part};
}

namespace {

// Solve the linear extension A * X = R for A given by its action on the
// spanning columns X0 (A unknown, X0 known, R known), with rank and
// consistency checks; names the failing stage in the error.
CMatrix solve_extension(const CMatrix& X0, const CMatrix& R, int unknown_rows, double tol,
                        const std::string& stage, double* residual_out) {
    if (X0.cols() != R.cols()) fail("DimensionMismatch", "extension system shapes");
    if (numeric_rank(X0, 1e-9) < unknown_rows)
        fail("ExtensionInconsistent", stage + ": spanning columns are rank-deficient");
    LeastSquaresResult ls = least_squares(X0.transpose(), R.transpose());
    const double res = ls.residual;
    if (residual_out) *residual_out = res;
    if (res > tol) fail("ExtensionInconsistent", stage + ": residual " + std::to_string(res));
    return ls.solution.transpose();
}

} // namespace

DualConstruction dualize(const HopfPtr& M, std::uint64_t seed, double tol) {
    DualConstruction dc;
    dc.source = M;
    dc.predual = build_predual(M);
    const int n = M->dim();

    auto [ideal, part] = absolutely_continuous_ideal(dc.predual, seed);
    dc.ideal = std::move(ideal);
    dc.partition = std::move(part);

    // Blocks of the dual: irreducibles not vanishing on M_*^0. They must all
    // be standard (finite-dimensional shadow of the nondegeneracy result).
    std::vector<int> kept;
    for (int i = 0; i < int(dc.partition.reps.size()); ++i) {
        double m = 0.0;
        for (int j = 0; j < dc.ideal.dim(); ++j)
            m = std::max(m, dc.partition.reps[i].apply(dc.ideal.basis.col(j)).max_abs());
        if (m >= 1e-9) kept.push_back(i);
    }
    for (int i : kept) {
        const bool std_ok = std::find(dc.partition.standard_idx.begin(),
                                      dc.partition.standard_idx.end(),
                                      i) != dc.partition.standard_idx.end();
        if (!std_ok)
            fail("ExtensionInconsistent",
                 "an irreducible nonzero on M_*^0 failed the standardness test");
    }

    BlockShape shape;
    for (int i : kept) shape.dims.push_back(dc.partition.reps[i].degree);
    const int nd = shape.algebra_dim();

    // Phi = direct sum of the kept representations.
    dc.phi = CMatrix(nd, n);
    for (int col = 0; col < n; ++col) {
        int off = 0;
        for (int i : kept) {
            const StarRep& s = dc.partition.reps[i];
            const int d = s.degree;
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) dc.phi(off + a * d + b, col) = s.mats[col](a, b);
            off += d * d;
        }
    }
    dc.phi_hat = dc.phi.transpose();

    // Coefficient elements of Phi and their products in M.
    std::vector<CMatrix> P(nd);
    for (int j = 0; j < nd; ++j) {
        CMatrix pj(n, 1);
        for (int i = 0; i < n; ++i) pj(i, 0) = dc.phi(j, i);
        P[j] = std::move(pj);
    }

    const int k = dc.ideal.dim();
    CMatrix X0(nd, k), Rdelta(nd * nd, k), Rkappa(nd, k);
    const CMatrix ktilde = dc.predual->kappa_tilde_matrix();
    double kappa_invariance = 0.0;
    for (int j = 0; j < k; ++j) {
        const CMatrix b = dc.ideal.basis.col(j);
        X0.set_col(j, dc.phi * b);
        const CMatrix kb = ktilde * b;
        kappa_invariance = std::max(kappa_invariance, dc.ideal.distance(kb));
        Rkappa.set_col(j, dc.phi * kb);
    }
    dc.residuals["kappa_tilde_invariance"] = kappa_invariance;
    if (kappa_invariance > tol)
        fail("ExtensionInconsistent", "kappa~ does not preserve M_*^0");

    std::vector<CMatrix> prods(size_t(nd) * nd);
    for (int a = 0; a < nd; ++a)
        for (int b = 0; b < nd; ++b) prods[size_t(a) * nd + b] = M->mul(P[a], P[b]);
    for (int j = 0; j < k; ++j) {
        const CMatrix b = dc.ideal.basis.col(j);
        for (int a = 0; a < nd; ++a)
            for (int b2 = 0; b2 < nd; ++b2) {
                cplx s = 0.0;
                const CMatrix& pr = prods[size_t(a) * nd + b2];
                for (int i = 0; i < n; ++i) s += b(i, 0) * pr(i, 0);
                Rdelta(a * nd + b2, j) = s;
            }
    }

    double delta_solve = 0.0, kappa_solve = 0.0;
    CMatrix delta_hat(0, 0), kappa_hat(0, 0);
    if (nd > 0) {
        delta_hat = solve_extension(X0, Rdelta, nd, tol, "delta extension", &delta_solve);
        kappa_hat = solve_extension(X0, Rkappa, nd, tol, "kappa extension", &kappa_solve);
    } else {
        delta_hat = CMatrix(0, 0);
        kappa_hat = CMatrix(0, 0);
    }
    dc.residuals["delta_extension"] = delta_solve;
    dc.residuals["kappa_extension"] = kappa_solve;

    auto dual = std::make_shared<HopfVNAlgebra>(shape, shape.canonical_star(), delta_hat,
                                                kappa_hat, "dual(" + M->provenance() + ")");
    dc.dual = dual;

    // Residual ledger: Delta^ Phi = Phi x Phi and kappa^ Phi = Phi kappa~ on
    // all of M_*, and Phi a *-homomorphism of preduals.
    double dphi = 0.0, kphi = 0.0, phi_hom = 0.0, phi_star = 0.0;
    const FinStarAlgebra& PA = dc.predual->algebra;
    for (int i = 0; i < n; ++i) {
        const CMatrix col = dc.phi.col(i);
        const CMatrix lhs = nd > 0 ? delta_hat * col : CMatrix(0, 1);
        for (int a = 0; a < nd; ++a)
            for (int b = 0; b < nd; ++b) {
                const CMatrix& pr = prods[size_t(a) * nd + b];
                dphi = std::max(dphi, std::abs(lhs(a * nd + b, 0) - pr(i, 0)));
            }
        if (nd > 0)
            kphi = std::max(kphi, (kappa_hat * col - dc.phi * ktilde.col(i)).max_abs());
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const CMatrix mu_prod = PA.mul(PA.basis_vector(i), PA.basis_vector(j));
            const CMatrix lhs = dc.phi * mu_prod;
            const CMatrix rhs = dual->mul(dc.phi.col(i), dc.phi.col(j));
            phi_hom = std::max(phi_hom, (lhs - rhs).max_abs());
        }
        const CMatrix lhs = dc.phi * PA.star_of(PA.basis_vector(i));
        const CMatrix rhs = dual->star_of(dc.phi.col(i));
        phi_star = std::max(phi_star, (lhs - rhs).max_abs());
    }
    dc.residuals["delta_hat_phi_vs_phi_x_phi"] = dphi;
    dc.residuals["kappa_hat_phi_vs_phi_kappa_tilde"] = kphi;
    dc.residuals["phi_homomorphism"] = phi_hom;
    dc.residuals["phi_star_map"] = phi_star;
    if (phi_hom > tol || phi_star > tol)
        fail("ExtensionInconsistent", "Phi is not a *-homomorphism");

    AxiomReport hopf = verify_hopf(*dual);
    dc.residuals["dual_hopf_axioms"] = hopf.max_residual();
    if (!hopf.pass(tol))
        fail("ExtensionInconsistent", "dual fails Hopf axioms: " + hopf.summary());
    return dc;
}

HopfMorphism dual_morphism(const HopfMorphism& f, const DualConstruction& dc_source,
                           const DualConstruction& dc_target, double tol) {
    if (f.source.get() != dc_source.source.get() || f.target.get() != dc_target.source.get())
        fail("DimensionMismatch", "dualizations do not match the morphism endpoints");
    const CMatrix f_pre = f.phi.transpose(); // N_* -> M_*
    const int k = dc_target.ideal.dim();
    const int nd_target = dc_target.dual->dim(); // dim N^
    const int nd_source = dc_source.dual->dim(); // dim M^

    CMatrix X0(nd_target, k), R(nd_source, k);
    for (int j = 0; j < k; ++j) {
        const CMatrix nu = dc_target.ideal.basis.col(j);
        X0.set_col(j, dc_target.phi * nu);
        R.set_col(j, dc_source.phi * (f_pre * nu));
    }
    double res = 0.0;
    const CMatrix phat = solve_extension(X0, R, nd_target, tol, "dual morphism", &res);
    return {dc_target.dual, dc_source.dual, phat};
}

HopfMorphism canonical_D(const DualConstruction& dc, const DualConstruction& ddc,
                         double tol) {
    if (ddc.source.get() != dc.dual.get())
        fail("DimensionMismatch", "double dualization does not chain");
    const int k = ddc.ideal.dim();
    const int ndd = ddc.dual->dim();
    CMatrix X0(ndd, k), R(dc.source->dim(), k);
    for (int j = 0; j < k; ++j) {
        const CMatrix x = ddc.ideal.basis.col(j);
        X0.set_col(j, ddc.phi * x);
        R.set_col(j, dc.phi_hat * x);
    }
    double res = 0.0;
    const CMatrix D = solve_extension(X0, R, ndd, tol, "canonical D", &res);
    return {ddc.dual, dc.source, D};
}

CanonicalE canonical_E(const DualConstruction& dc, const DualConstruction& ddc,
                       const DualConstruction& dddc, double tol) {
    CanonicalE out;
    const HopfMorphism D_M = canonical_D(dc, ddc, tol);
    out.E = dual_morphism(D_M, dddc, dc, tol); // N = M^ -> N^^
    out.D_N = canonical_D(ddc, dddc, tol);
    out.de_identity_residual =
        (out.D_N.phi * out.E.phi - CMatrix::identity(dc.dual->dim())).max_abs();
    return out;
}

AnnihilatorReport annihilator_ideal_check(const DualConstruction& dc, double tol) {
    AnnihilatorReport rep;
    const int n = dc.source->dim();
    rep.applicable = numeric_rank(dc.phi, 1e-9) == n;
    if (!rep.applicable) return rep;

    // (M_*^0)^perp under the bilinear pairing mu(x) = sum mu_i x_i.
    const CMatrix perp = nullspace(dc.ideal.basis.transpose(), 1e-10);
    rep.perp_dim = perp.cols();
    Subspace sp = make_subspace(n, perp);
    const FinStarAlgebra& A = dc.source->as_algebra();
    double closure = 0.0;
    for (int j = 0; j < sp.dim(); ++j) {
        const CMatrix b = sp.basis.col(j);
        for (int i = 0; i < n; ++i) {
            const CMatrix e = A.basis_vector(i);
            closure = std::max(closure, sp.distance(A.mul(e, b)));
            closure = std::max(closure, sp.distance(A.mul(b, e)));
        }
    }
    rep.ideal_residual = closure;
    rep.verified = closure < tol;
    return rep;
}

// ---------------------------------------------------------------------------
// Group reconstruction
// ---------------------------------------------------------------------------

namespace {

int match_basis_functional(const CMatrix& row, int n, double tol) {
    int hit = -1;
    for (int u = 0; u < n; ++u) {
        double dev = 0.0;
        for (int i = 0; i < n; ++i)
            dev = std::max(dev, std::abs(row(i, 0) - ((i == u) ? cplx(1.0) : cplx(0.0))));
        if (dev < tol) {
            if (hit != -1) return -2; // ambiguous
            hit = u;
        }
    }
    return hit;
}

} // namespace

GroupReconstruction reconstruct_group(const HopfPtr& M, std::uint64_t seed, double tol) {
    if (!M->commutative()) fail("NotCommutative", "spectrum reconstruction needs commutative M");
    const int n = M->dim();
    const CMatrix& D = M->delta();
    const CMatrix& K = M->kappa();

    FiniteGroup G;
    G.order = n;
    G.name = "spectrum(" + M->provenance() + ")";
    G.table.resize(n * n);
    double res = 0.0;
    for (int s = 0; s < n; ++s) {
        G.labels.push_back("x" + std::to_string(s));
        for (int t = 0; t < n; ++t) {
            CMatrix row(n, 1);
            for (int u = 0; u < n; ++u) row(u, 0) = D(s * n + t, u);
            const int hit = match_basis_functional(row, n, 0.5);
            if (hit < 0) fail("NotAGroup", "comultiplication row is not a point evaluation");
            double dev = 0.0;
            for (int u = 0; u < n; ++u)
                dev = std::max(dev, std::abs(row(u, 0) - ((u == hit) ? cplx(1.0) : cplx(0.0))));
            if (dev > tol) fail("NotAGroup", "comultiplication row has residual " + std::to_string(dev));
            res = std::max(res, dev);
            G.table[s * n + t] = hit;
        }
    }
    // Identity: unique e with m(e, t) = t for all t.
    int e = -1;
    for (int s = 0; s < n; ++s) {
        bool ok = true;
        for (int t = 0; t < n; ++t) ok = ok && G.table[s * n + t] == t && G.table[t * n + s] == t;
        if (ok) {
            if (e != -1) fail("NotAGroup", "two identities in the spectrum");
            e = s;
        }
    }
    if (e == -1) fail("NotAGroup", "spectrum multiplication has no identity");
    G.identity = e;
    // Inverses via kappa: chi_s ∘ kappa must be another point evaluation.
    G.inverse.assign(n, -1);
    for (int s = 0; s < n; ++s) {
        CMatrix row(n, 1);
        for (int u = 0; u < n; ++u) row(u, 0) = K(s, u);
        const int hit = match_basis_functional(row, n, 0.5);
        if (hit < 0) fail("NotAGroup", "kappa does not act on the spectrum");
        double dev = 0.0;
        for (int u = 0; u < n; ++u)
            dev = std::max(dev, std::abs(row(u, 0) - ((u == hit) ? cplx(1.0) : cplx(0.0))));
        if (dev > tol) fail("NotAGroup", "kappa row has residual " + std::to_string(dev));
        res = std::max(res, dev);
        if (G.table[s * n + hit] != e || G.table[hit * n + s] != e)
            fail("NotAGroup", "kappa does not provide inverses");
        G.inverse[s] = hit;
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int cidx = 0; cidx < n; ++cidx)
                if (G.mul(G.mul(a, b), cidx) != G.mul(a, G.mul(b, cidx)))
                    fail("NotAGroup", "spectrum multiplication is not associative");

    GroupReconstruction out;
    out.group = G;
    out.residual = res;

    // Cross-check: group-like unitaries of M = unitary characters of G that
    // survive the star/kappa filter; they are exactly Hom(G, T) lifted from
    // the abelianization, each re-verified in M.
    {
        const std::vector<int> N = commutator_subgroup(G);
        const FiniteGroup Q = quotient_group(G, N);
        // proj: G -> Q via coset labels (same coset order as quotient_group).
        std::vector<int> proj(n, -1);
        int next = 0;
        for (int a = 0; a < n; ++a) {
            if (proj[a] != -1) continue;
            for (int h : N) proj[G.mul(a, h)] = next;
            ++next;
        }
        // Candidate group-likes are the characters of Q lifted along proj;
        // their values come from the 1-dim *-reps of the group algebra of Q.
        const FinStarAlgebra CQ = group_star_algebra(Q);
        std::vector<AlgebraRep> chars = irreducible_star_reps(CQ, seed);
        int verified = 0;
        const CMatrix unit = M->unit_coords();
        const CMatrix& Dm = M->delta();
        for (const AlgebraRep& chi : chars) {
            CMatrix x(n, 1);
            for (int s = 0; s < n; ++s) x(s, 0) = chi.mats[proj[s]](0, 0);
            // Delta x = x ⊗ x
            const CMatrix dx = Dm * x;
            double dev = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    dev = std::max(dev, std::abs(dx(a * n + b, 0) - x(a, 0) * x(b, 0)));
            const CMatrix xs = M->star_of(x);
            dev = std::max(dev, (M->mul(xs, x) - unit).max_abs());
            dev = std::max(dev, (M->mul(x, xs) - unit).max_abs());
            dev = std::max(dev, (M->kappa() * x - xs).max_abs());
            if (dev < tol) ++verified;
        }
        out.group_like_count = verified;
        out.group_like_bijection = G.abelian() && verified == n;
    }
    return out;
}

GroupReconstruction reconstruct_group_cocommutative(const HopfPtr& M, std::uint64_t seed,
                                                    double tol) {
    if (!M->cocommutative(tol))
        fail("NotCocommutative", "group-like reconstruction needs cocommutative M");
    const PredualPtr P = build_predual(M);
    const int n = M->dim();
    if (!P->algebra.commutative(1e-8))
        fail("NotCocommutative", "predual of a cocommutative algebra must be commutative");

    // Plain characters of the commutative predual (no star needed).
    std::vector<AlgebraRep> blocks = wedderburn_blocks(P->algebra, seed);
    std::vector<CMatrix> candidates;
    for (const AlgebraRep& b : blocks) {
        if (b.degree != 1) fail("NotCocommutative", "commutative algebra with a big block");
        CMatrix x(n, 1);
        for (int i = 0; i < n; ++i) x(i, 0) = b.mats[i](0, 0);
        candidates.push_back(std::move(x));
    }

    const CMatrix unit = M->unit_coords();
    const CMatrix& D = M->delta();
    std::vector<CMatrix> gl;
    double res = 0.0;
    for (const CMatrix& x : candidates) {
        const CMatrix dx = D * x;
        double dev = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                dev = std::max(dev, std::abs(dx(a * n + b, 0) - x(a, 0) * x(b, 0)));
        const CMatrix xs = M->star_of(x);
        dev = std::max(dev, (M->mul(xs, x) - unit).max_abs());
        dev = std::max(dev, (M->mul(x, xs) - unit).max_abs());
        dev = std::max(dev, (M->kappa() * x - xs).max_abs());
        if (dev < tol) {
            gl.push_back(x);
            res = std::max(res, dev);
        }
    }
    if (gl.empty()) fail("NotAGroup", "no group-like unitaries found");

    const int m = int(gl.size());
    auto match = [&](const CMatrix& y) {
        for (int i = 0; i < m; ++i)
            if ((gl[i] - y).max_abs() < 1e-6) return i;
        return -1;
    };
    FiniteGroup G;
    G.order = m;
    G.name = "group_likes(" + M->provenance() + ")";
    G.table.resize(m * m);
    for (int a = 0; a < m; ++a) {
        G.labels.push_back("u" + std::to_string(a));
        for (int b = 0; b < m; ++b) {
            const int hit = match(M->mul(gl[a], gl[b]));
            if (hit < 0) fail("NotAGroup", "group-like unitaries are not closed under product");
            G.table[a * m + b] = hit;
        }
    }
    const int e = match(unit);
    if (e < 0) fail("NotAGroup", "unit is not among the group-like unitaries");
    G.identity = e;
    G.inverse.assign(m, -1);
    for (int a = 0; a < m; ++a) {
        const int hit = match(M->star_of(gl[a]));
        if (hit < 0 || G.mul(a, hit) != e || G.mul(hit, a) != e)
            fail("NotAGroup", "group-like unitaries lack inverses");
        G.inverse[a] = hit;
    }
    G.verify();

    GroupReconstruction out;
    out.group = G;
    out.group_like_count = m;
    out.group_like_bijection = (m == int(candidates.size()));
    out.residual = res;
    return out;
}

// ---------------------------------------------------------------------------
// Reflexivity and the triple dual
// ---------------------------------------------------------------------------

ReflexivityReport is_reflexive(const HopfPtr& M, std::uint64_t seed, double tol) {
    ReflexivityReport rep;
    rep.first = dualize(M, seed, tol);
    rep.second = dualize(rep.first.dual, seed, tol);
    rep.D = canonical_D(rep.first, rep.second, tol);

    rep.sig_M = M->block_signature();
    rep.sig_DD = rep.second.dual->block_signature();

    const int n = M->dim();
    const int ndd = rep.second.dual->dim();
    rep.bijective = (n == ndd) && numeric_rank(rep.D.phi, 1e-9) == n;

    double mres = verify_morphism(rep.D).max_residual();
    if (rep.bijective) {
        HopfMorphism inv{rep.D.target, rep.D.source, inverse(rep.D.phi, 1e-9)};
        mres = std::max(mres, verify_morphism(inv).max_residual());
    }
    rep.morphism_residual = mres;
    rep.canonical = rep.bijective && mres < tol;

    // Structural corroboration. Reconstruction can legitimately fail (a
    // commutative M need not be of C(G) form — that is the counterexample's
    // whole point); fall back to the block-signature comparison then.
    try {
        if (M->commutative() && rep.second.dual->commutative()) {
            rep.structural_kind = "group";
            rep.recon_M = reconstruct_group(M, seed, tol);
            rep.recon_DD = reconstruct_group(rep.second.dual, seed, tol);
            rep.structural_ok = are_isomorphic(rep.recon_M->group, rep.recon_DD->group);
            return rep;
        }
        if (M->cocommutative(tol) && rep.second.dual->cocommutative(tol)) {
            rep.structural_kind = "group-like";
            rep.recon_M = reconstruct_group_cocommutative(M, seed, tol);
            rep.recon_DD = reconstruct_group_cocommutative(rep.second.dual, seed, tol);
            rep.structural_ok = are_isomorphic(rep.recon_M->group, rep.recon_DD->group);
            return rep;
        }
    } catch (const Error& e) {
        if (e.code() != "NotAGroup" && e.code() != "NotCommutative" &&
            e.code() != "NotCocommutative")
            throw;
        rep.recon_M.reset();
        rep.recon_DD.reset();
    }
    rep.structural_kind = "signature";
    rep.structural_ok = rep.sig_M == rep.sig_DD;
    return rep;
}

TripleDualReport triple_dual_check(const HopfPtr& M, std::uint64_t seed, double tol) {
    DualConstruction dc = dualize(M, seed, tol);
    DualConstruction ddc = dualize(dc.dual, seed, tol);
    DualConstruction dddc = dualize(ddc.dual, seed, tol);
    return triple_dual_check(dc, ddc, dddc, tol);
}

TripleDualReport triple_dual_check(const DualConstruction& dc, const DualConstruction& ddc,
                                   const DualConstruction& dddc, double tol) {
    TripleDualReport rep;
    rep.sig_first = dc.dual->block_signature();
    rep.sig_third = dddc.dual->block_signature();
    const HopfMorphism D_N = canonical_D(ddc, dddc, tol);
    const int n = dc.dual->dim();
    const bool bij = (dddc.dual->dim() == n) && numeric_rank(D_N.phi, 1e-9) == n;
    double mres = verify_morphism(D_N).max_residual();
    if (bij) {
        HopfMorphism inv{D_N.target, D_N.source, inverse(D_N.phi, 1e-9)};
        mres = std::max(mres, verify_morphism(inv).max_residual());
    }
    rep.morphism_residual = mres;
    rep.holds = bij && mres < tol && rep.sig_first == rep.sig_third;
    return rep;
}

// ---------------------------------------------------------------------------
// Reporting
// ---------------------------------------------------------------------------

namespace {

json::Value signature_json(const std::vector<int>& sig) {
    json::Value v = json::Value::array();
    for (int d : sig) v.push(json::Value::integer(d));
    return v;
}

json::Value construction_json(const DualConstruction& dc) {
    json::Value v = json::Value::object();
    v.set("dim", json::Value::integer(dc.dual->dim()));
    v.set("block_signature", signature_json(dc.dual->block_signature()));
    v.set("ideal_dim", json::Value::integer(dc.ideal.dim()));
    json::Value part = json::Value::object();
    part.set("standard", json::Value::integer(int(dc.partition.standard_idx.size())));
    part.set("nonstandard", json::Value::integer(int(dc.partition.nonstandard_idx.size())));
    v.set("rep_partition", std::move(part));
    json::Value res = json::Value::object();
    for (const auto& [k, val] : dc.residuals) res.set(k, json::Value::number(val));
    v.set("residuals", std::move(res));
    return v;
}

json::Value group_json(const GroupReconstruction& g) {
    json::Value v = json::Value::object();
    v.set("order", json::Value::integer(g.group.order));
    v.set("name", json::Value::str(g.group.name));
    json::Value rows = json::Value::array();
    for (int a = 0; a < g.group.order; ++a) {
        json::Value row = json::Value::array();
        for (int b = 0; b < g.group.order; ++b) row.push(json::Value::integer(g.group.mul(a, b)));
        rows.push(std::move(row));
    }
    v.set("cayley", std::move(rows));
    v.set("group_like_count", json::Value::integer(g.group_like_count));
    v.set("group_like_bijection", json::Value::boolean(g.group_like_bijection));
    v.set("residual", json::Value::number(g.residual));
    return v;
}

} // namespace

json::Value duality_report(const DualityRunResult& r) {
    json::Value root = json::Value::object();
    root.set("schema_version", json::Value::integer(1));
    root.set("tool", json::Value::str("hopfdual"));
    root.set("input", json::parse(r.input_spec_json));
    root.set("side", json::Value::str(r.side));
    root.set("seed", json::Value::integer(static_cast<long long>(r.seed)));
    root.set("tol", json::Value::number(r.tol));

    if (r.M) {
        json::Value alg = json::Value::object();
        alg.set("dim", json::Value::integer(r.M->dim()));
        alg.set("block_signature", signature_json(r.M->block_signature()));
        alg.set("commutative", json::Value::boolean(r.M->commutative()));
        alg.set("cocommutative", json::Value::boolean(r.M->cocommutative()));
        alg.set("provenance", json::Value::str(r.M->provenance()));
        root.set("algebra", std::move(alg));
    }
    if (r.axioms) {
        json::Value ax = json::Value::object();
        for (const auto& [k, v] : r.axioms->residuals) ax.set(k, json::Value::number(v));
        root.set("axioms", std::move(ax));
        root.set("axioms_pass", json::Value::boolean(r.axioms->pass(r.tol)));
    }
    if (r.first) root.set("dual", construction_json(*r.first));
    if (r.second) root.set("double_dual", construction_json(*r.second));
    if (r.third) root.set("triple_dual", construction_json(*r.third));
    if (r.reflexivity) {
        json::Value v = json::Value::object();
        v.set("canonical", json::Value::boolean(r.reflexivity->canonical));
        v.set("bijective", json::Value::boolean(r.reflexivity->bijective));
        v.set("morphism_residual", json::Value::number(r.reflexivity->morphism_residual));
        v.set("structural_kind", json::Value::str(r.reflexivity->structural_kind));
        v.set("structural_ok", json::Value::boolean(r.reflexivity->structural_ok));
        root.set("reflexive", std::move(v));
    }
    if (r.dual_reconstruction) root.set("reconstructed_group", group_json(*r.dual_reconstruction));
    if (r.triple) {
        json::Value v = json::Value::object();
        v.set("holds", json::Value::boolean(r.triple->holds));
        v.set("first_signature", signature_json(r.triple->sig_first));
        v.set("third_signature", signature_json(r.triple->sig_third));
        v.set("morphism_residual", json::Value::number(r.triple->morphism_residual));
        root.set("kirchberg_triple_dual", std::move(v));
    }
    if (r.wall_ms) root.set("wall_clock_ms", json::Value::number(*r.wall_ms));
    return root;
}

} // namespace hopfdual
