#include <doctest.h>

#include <hopfdual/groups.hpp>
#include <hopfdual/predual.hpp>

#include "helpers.hpp"

using namespace hopfdual;

TEST_CASE("predual of C(G) is the group convolution algebra") {
    const FiniteGroup G = symmetric_group(3);
    const PredualPtr P = build_predual(function_algebra(G));
    const FinStarAlgebra expected = group_star_algebra(G);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k)
                CHECK(std::abs(P->algebra.c(i, j, k) - expected.c(i, j, k)) < 1e-12);
    CHECK((P->algebra.star - expected.star).max_abs() < 1e-12);
    REQUIRE(P->algebra.unit.has_value());
    CHECK((*P->algebra.unit - *expected.unit).max_abs() < 1e-9); // delta_e
}

TEST_CASE("twisted predual has the usual convolution structure") {
    // kappa = id and the permuted star conspire to the ordinary C[Z_n].
    const PredualPtr P = build_predual(twisted_hopf(5));
    const FinStarAlgebra expected = group_star_algebra(cyclic_group(5));
    double dev = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int k = 0; k < 5; ++k)
                dev = std::max(dev, std::abs(P->algebra.c(i, j, k) - expected.c(i, j, k)));
    CHECK(dev < 1e-12);
    CHECK((P->algebra.star - expected.star).max_abs() < 1e-12); // delta_t* = delta_{-t}
}

TEST_CASE("predual of W*(G) is a commutative pointwise algebra") {
    const PredualPtr P = build_predual(group_vn_algebra(cyclic_group(4), 0x5EED));
    CHECK(P->algebra.commutative(1e-9));
    CHECK(P->algebra.unit.has_value());

    const PredualPtr PS3 = build_predual(group_vn_algebra(symmetric_group(3), 0x5EED));
    CHECK(PS3->algebra.commutative(1e-9)); // B(S_3) is pointwise functions on S_3
}

TEST_CASE("coefficient functionals") {
    const FiniteGroup G = cyclic_group(3);
    const HopfPtr M = function_algebra(G);
    Rng rng(31);
    CMatrix x = testing::random_matrix(rng, 3, 1);

    // mu_{x,x}(1) = |x|^2.
    const CoefficientFunctional mu = coefficient(M, x, x);
    const PredualPtr P = build_predual(M);
    const cplx val = P->pair(mu.coords, M->unit_coords());
    CHECK(std::abs(val - cplx(norm2(x) * norm2(x))) < 1e-10);

    // Basis pair (t, t) gives evaluation at t.
    CMatrix et(3, 1);
    et(1, 0) = 1.0;
    const CoefficientFunctional ev = coefficient(M, et, et);
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(ev.coords(i, 0) - ((i == 1) ? cplx(1.0) : cplx(0.0))) < 1e-12);

    CHECK_THROWS_WITH_AS(coefficient(M, CMatrix(2, 1), et), doctest::Contains("DimensionMismatch"),
                         Error);
}

TEST_CASE("coefficient functionals span the predual (rank check)") {
    for (const HopfPtr& M : {function_algebra(symmetric_group(3)),
                             group_vn_algebra(symmetric_group(3), 0x5EED), twisted_hopf(5)}) {
        CHECK(numeric_rank(coefficient_span(M)) == M->dim());
    }
}

TEST_CASE("product expansion over a basis (series identity)") {
    // (ab)(mu_xy) = sum_e mu_{e y}(a) mu_{x e}(b) over an orthonormal basis of H.
    for (const HopfPtr& M :
         {function_algebra(symmetric_group(3)), group_vn_algebra(symmetric_group(3), 0x5EED)}) {
        Rng rng(41);
        const int H = M->shape().hilbert_dim();
        const PredualPtr P = build_predual(M);
        const CMatrix a = testing::random_matrix(rng, M->dim(), 1);
        const CMatrix b = testing::random_matrix(rng, M->dim(), 1);
        const CMatrix x = testing::random_matrix(rng, H, 1);
        const CMatrix y = testing::random_matrix(rng, H, 1);

        const cplx lhs = P->pair(coefficient(M, x, y).coords, M->mul(a, b));
        cplx rhs = 0.0;
        for (int e = 0; e < H; ++e) {
            CMatrix ee(H, 1);
            ee(e, 0) = 1.0;
            rhs += P->pair(coefficient(M, ee, y).coords, a) *
                   P->pair(coefficient(M, x, ee).coords, b);
        }
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("functional representatives reproduce the pairing") {
    const HopfPtr M = group_vn_algebra(symmetric_group(3), 0x5EED);
    Rng rng(43);
    const PredualPtr P = build_predual(M);
    const CMatrix mu = testing::random_matrix(rng, M->dim(), 1);
    const CMatrix T = functional_representative(M, mu);
    for (int i = 0; i < M->dim(); ++i) {
        const CMatrix op = M->to_operator(M->basis_vector(i));
        cplx tr = 0.0;
        const CMatrix prod = op * T;
        for (int r = 0; r < prod.rows(); ++r) tr += prod(r, r);
        CHECK(std::abs(tr - mu(i, 0)) < 1e-10);
    }
}

TEST_CASE("kappa~ is a *-antihomomorphism of the predual") {
    for (const HopfPtr& M :
         {function_algebra(symmetric_group(3)), group_vn_algebra(cyclic_group(6), 0x5EED),
          twisted_hopf(5)}) {
        const PredualPtr P = build_predual(M);
        const FinStarAlgebra& A = P->algebra;
        const CMatrix kt = P->kappa_tilde_matrix();
        double anti = 0.0, star = 0.0, invol = 0.0;
        for (int i = 0; i < A.dim; ++i) {
            for (int j = 0; j < A.dim; ++j) {
                const CMatrix lhs = kt * A.mul(A.basis_vector(i), A.basis_vector(j));
                const CMatrix rhs = A.mul(kt.col(j), kt.col(i));
                anti = std::max(anti, (lhs - rhs).max_abs());
            }
            const CMatrix ls = kt * A.star_of(A.basis_vector(i));
            const CMatrix rs = A.star_of(kt.col(i));
            star = std::max(star, (ls - rs).max_abs());
        }
        invol = (kt * kt - CMatrix::identity(A.dim)).max_abs();
        CHECK(anti < 1e-9);
        CHECK(star < 1e-9);
        CHECK(invol < 1e-9);
    }
}
