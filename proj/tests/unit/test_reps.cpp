#include <doctest.h>

#include <hopfdual/groups.hpp>
#include <hopfdual/reps.hpp>

#include "helpers.hpp"

using namespace hopfdual;

namespace {

// Regular representation of the predual on itself (left multiplication).
StarRep regular_rep(const PredualPtr& P) {
    StarRep r;
    r.predual = P;
    r.degree = P->dim();
    for (int i = 0; i < P->dim(); ++i)
        r.mats.push_back(P->algebra.left_mult(P->algebra.basis_vector(i)));
    return r;
}

// The characters of the predual, as 1-dimensional StarReps.
std::vector<StarRep> predual_characters(const PredualPtr& P, std::uint64_t seed) {
    std::vector<StarRep> out;
    for (const AlgebraRep& r : irreducible_star_reps(P->algebra, seed))
        if (r.degree == 1) out.push_back(lift_rep(P, r));
    return out;
}

} // namespace

TEST_CASE("coefficients: trivial character gives the unit of M") {
    const HopfPtr M = function_algebra(symmetric_group(3));
    const PredualPtr P = build_predual(M);
    StarRep triv;
    triv.predual = P;
    triv.degree = 1;
    for (int i = 0; i < P->dim(); ++i) triv.mats.push_back(CMatrix::identity(1));
    CHECK(verify_star_rep(triv).pass(1e-9));
    const auto coef = coefficients(triv);
    REQUIRE(coef.size() == 1);
    CHECK((coef[0].element - M->unit_coords()).max_abs() < 1e-12);
}

TEST_CASE("coefficients: diagonalized regular rep of C[Z_2] yields the characters") {
    const HopfPtr M = function_algebra(cyclic_group(2));
    const PredualPtr P = build_predual(M);
    const StarRep reg = regular_rep(P);
    CHECK(verify_star_rep(reg).pass(1e-9));
    // Hadamard conjugation diagonalizes the 2-point convolution algebra.
    CMatrix F(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    F(0, 0) = s;
    F(0, 1) = s;
    F(1, 0) = s;
    F(1, 1) = -s;
    const StarRep diag = conjugate_rep(reg, F);
    // Coefficient elements on the diagonal are the two characters of Z_2 as
    // elements of C(Z_2): (1,1) and (1,-1).
    const CMatrix c0 = diag.coefficient_element(0, 0);
    const CMatrix c1 = diag.coefficient_element(1, 1);
    CHECK(std::abs(c0(0, 0) - cplx(1.0)) < 1e-10);
    CHECK(std::abs(c0(1, 0) - cplx(1.0)) < 1e-10);
    CHECK(std::abs(c1(0, 0) - cplx(1.0)) < 1e-10);
    CHECK(std::abs(c1(1, 0) - cplx(-1.0)) < 1e-10);
    // Off-diagonal coefficients vanish.
    CHECK(diag.coefficient_element(0, 1).max_abs() < 1e-10);
}

TEST_CASE("coefficients: evaluation characters of the W*(G) predual are the lambda(t)") {
    const FiniteGroup G = cyclic_group(3);
    std::vector<CMatrix> lambda;
    const HopfPtr W = group_vn_algebra(G, 0x5EED, &lambda);
    const PredualPtr P = build_predual(W);
    const auto chars = predual_characters(P, 0x5EED);
    REQUIRE(int(chars.size()) == G.order);
    int matched = 0;
    for (const StarRep& chi : chars) {
        const CMatrix x = chi.coefficient_element(0, 0);
        for (const CMatrix& lt : lambda)
            if ((x - lt).max_abs() < 1e-8) ++matched;
    }
    CHECK(matched == G.order);
}

TEST_CASE("is_standard: evaluation characters on the W*(G) predual are standard") {
    const PredualPtr P = build_predual(group_vn_algebra(symmetric_group(3), 0x5EED));
    for (const StarRep& chi : predual_characters(P, 0x5EED)) {
        const StandardVerdict v = is_standard(chi);
        CHECK(v.standard);
        CHECK(v.residual < 1e-9);
    }
}

TEST_CASE("is_standard: twisted Z_5 keeps only the trivial character") {
    const PredualPtr P = build_predual(twisted_hopf(5));
    const auto chars = predual_characters(P, 0x5EED);
    REQUIRE(chars.size() == 5);
    int standard = 0;
    for (const StarRep& chi : chars) {
        const StandardVerdict v = is_standard(chi);
        if (v.standard)
            ++standard;
        else
            CHECK(v.residual > 1e-3); // decisively non-standard
    }
    CHECK(standard == 1);
}

TEST_CASE("is_standard: regular representation of C[S_3] is standard") {
    const PredualPtr P = build_predual(function_algebra(symmetric_group(3)));
    const StarRep reg = regular_rep(P);
    const StandardVerdict v = is_standard(reg);
    CHECK(v.standard);
    CHECK(v.residual < 1e-9);
}

TEST_CASE("is_standard: basis independence under random unitaries") {
    Rng rng(59);
    const PredualPtr P5 = build_predual(twisted_hopf(5));
    const auto chars = predual_characters(P5, 0x5EED);
    const PredualPtr PS3 = build_predual(function_algebra(symmetric_group(3)));
    const StarRep reg = regular_rep(PS3);

    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix U6 = testing::random_unitary(rng, reg.degree);
        CHECK(is_standard(conjugate_rep(reg, U6)).standard);
        // 1-dim characters: conjugation by a phase.
        for (const StarRep& chi : chars) {
            const CMatrix ph = testing::random_unitary(rng, 1);
            CHECK(is_standard(conjugate_rep(chi, ph)).standard == is_standard(chi).standard);
        }
    }
}

TEST_CASE("is_standard rejects degenerate reps; restrict_nondegenerate compresses") {
    const PredualPtr P = build_predual(group_vn_algebra(cyclic_group(3), 0x5EED));
    const auto chars = predual_characters(P, 0x5EED);
    REQUIRE(!chars.empty());
    // Pad a character with a zero block.
    StarRep padded;
    padded.predual = P;
    padded.degree = 2;
    for (const CMatrix& m : chars[0].mats) {
        CMatrix big(2, 2);
        big(0, 0) = m(0, 0);
        padded.mats.push_back(big);
    }
    CHECK(!is_nondegenerate(padded));
    CHECK_THROWS_WITH_AS(is_standard(padded), doctest::Contains("DegenerateRep"), Error);
    const StarRep cut = restrict_nondegenerate(padded);
    CHECK(cut.degree == 1);
    CHECK(is_standard(cut).standard);
}

TEST_CASE("build_generator: C(G) representation has U = sum_t e_t ⊗ pi(t)") {
    const FiniteGroup G = symmetric_group(3);
    const HopfPtr M = function_algebra(G);
    const PredualPtr P = build_predual(M);
    // Take the 2-dimensional irreducible *-rep of C[S_3] = predual of C(G).
    StarRep pi;
    for (const AlgebraRep& r : irreducible_star_reps(P->algebra, 0x5EED))
        if (r.degree == 2) pi = lift_rep(P, r);
    REQUIRE(pi.degree == 2);

    const Generator gen = build_generator(pi);
    CHECK(gen.unitarity_residual < 1e-9);
    CHECK(gen.pairing_residual < 1e-9);
    CHECK(gen.commutant_residual < 1e-9);

    // Expected block form: U = sum_t E_tt ⊗ pi(delta_t).
    const int H = 6, K = 2;
    CMatrix expected(H * K, H * K);
    for (int t = 0; t < H; ++t)
        for (int a = 0; a < K; ++a)
            for (int b = 0; b < K; ++b)
                expected(t * K + a, t * K + b) = pi.mats[t](a, b);
    CHECK((gen.U - expected).max_abs() < 1e-10);
}

TEST_CASE("build_generator: scalar product identity of the generator") {
    const HopfPtr M = function_algebra(symmetric_group(3));
    const PredualPtr P = build_predual(M);
    StarRep pi;
    for (const AlgebraRep& r : irreducible_star_reps(P->algebra, 0x5EED))
        if (r.degree == 2) pi = lift_rep(P, r);
    const Generator gen = build_generator(pi);

    Rng rng(61);
    const int H = 6, K = 2;
    const CMatrix x = testing::random_matrix(rng, H, 1);
    const CMatrix y = testing::random_matrix(rng, H, 1);
    const CMatrix muxy = coefficient(M, x, y).coords;
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b) {
            CMatrix xa(H * K, 1), yb(H * K, 1);
            for (int h = 0; h < H; ++h) {
                xa(h * K + a, 0) = x(h, 0);
                yb(h * K + b, 0) = y(h, 0);
            }
            const cplx lhs = dot(gen.U * xa, gen.U * yb);
            CMatrix sum(M->dim(), 1);
            for (int eta = 0; eta < K; ++eta)
                sum += M->mul(M->star_of(pi.coefficient_element(eta, b)),
                              pi.coefficient_element(eta, a));
            const cplx rhs = P->pair(muxy, sum);
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
}

TEST_CASE("build_generator: scalar product identity for the adjoint generator") {
    // <U*(x ⊗ f_a), U*(y ⊗ f_b)> = sum_eta (pi_{b eta} pi*_{a eta})(mu_{x,y}).
    const HopfPtr M = function_algebra(symmetric_group(3));
    const PredualPtr P = build_predual(M);
    StarRep pi;
    for (const AlgebraRep& r : irreducible_star_reps(P->algebra, 0x5EED))
        if (r.degree == 2) pi = lift_rep(P, r);
    const Generator gen = build_generator(pi);
    const CMatrix Uadj = gen.U.adjoint(); // spatial star here

    Rng rng(67);
    const int H = 6, K = 2;
    const CMatrix x = testing::random_matrix(rng, H, 1);
    const CMatrix y = testing::random_matrix(rng, H, 1);
    const CMatrix muxy = coefficient(M, x, y).coords;
    for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b) {
            CMatrix xa(H * K, 1), yb(H * K, 1);
            for (int h = 0; h < H; ++h) {
                xa(h * K + a, 0) = x(h, 0);
                yb(h * K + b, 0) = y(h, 0);
            }
            const cplx lhs = dot(Uadj * xa, Uadj * yb);
            CMatrix sum(M->dim(), 1);
            for (int eta = 0; eta < K; ++eta)
                sum += M->mul(pi.coefficient_element(b, eta),
                              M->star_of(pi.coefficient_element(a, eta)));
            const cplx rhs = P->pair(muxy, sum);
            CHECK(std::abs(lhs - rhs) < 1e-9);
        }
}

TEST_CASE("build_generator refuses non-standard reps; raw candidate is far from unitary") {
    const PredualPtr P = build_predual(twisted_hopf(5));
    const auto chars = predual_characters(P, 0x5EED);
    int nonstandard_checked = 0;
    for (const StarRep& chi : chars) {
        if (is_standard(chi).standard) continue;
        CHECK_THROWS_WITH_AS(build_generator(chi), doctest::Contains("NotStandard"), Error);
        // Unitarity in M ⊗ B(K) fails decisively (the star of the twisted
        // algebra is not the operator adjoint, so U^* U = op(chi_{2s}) != 1).
        const CMatrix U = generator_matrix(chi);
        const CMatrix Us = generator_matrix_star(chi);
        const double dev = (Us * U - CMatrix::identity(U.rows())).max_abs();
        CHECK(dev > 1e-3);
        ++nonstandard_checked;
    }
    CHECK(nonstandard_checked == 4);
}

TEST_CASE("extract_rep round-trips generators") {
    const HopfPtr M = function_algebra(symmetric_group(3));
    const PredualPtr P = build_predual(M);
    for (const AlgebraRep& r : irreducible_star_reps(P->algebra, 0x5EED)) {
        const StarRep pi = lift_rep(P, r);
        const Generator gen = build_generator(pi);
        const StarRep back = extract_rep(P, gen.U, pi.degree);
        double dev = 0.0;
        for (int i = 0; i < P->dim(); ++i) dev = std::max(dev, (back.mats[i] - pi.mats[i]).max_abs());
        CHECK(dev < 1e-9);

        // A perturbed generator no longer reproduces the representation.
        CMatrix Upert = gen.U;
        Upert(0, 0) += 0.01;
        const StarRep off = extract_rep(P, Upert, pi.degree);
        double pert = 0.0;
        for (int i = 0; i < P->dim(); ++i) pert = std::max(pert, (off.mats[i] - pi.mats[i]).max_abs());
        CHECK(pert > 1e-4);
    }
}

TEST_CASE("extract_rep: U = identity gives the trivial character") {
    const HopfPtr M = function_algebra(cyclic_group(4));
    const PredualPtr P = build_predual(M);
    const StarRep triv = extract_rep(P, CMatrix::identity(4), 1);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(triv.mats[i](0, 0) - cplx(1.0)) < 1e-12);
}

TEST_CASE("kronecker: characters of C(Z_n) preduals add") {
    const HopfPtr M = function_algebra(cyclic_group(5));
    const PredualPtr P = build_predual(M);
    const auto chars = predual_characters(P, 0x5EED);
    REQUIRE(chars.size() == 5);
    // Identify chi_k by its value at delta_1.
    auto index_of = [&](const StarRep& chi) {
        const cplx v = chi.mats[1](0, 0);
        for (int k = 0; k < 5; ++k)
            if (std::abs(v - std::polar(1.0, 2.0 * 3.14159265358979323846 * k / 5.0)) < 1e-8)
                return k;
        return -1;
    };
    for (const StarRep& a : chars)
        for (const StarRep& b : chars) {
            const StarRep prod = kronecker(a, b);
            const int expect = (index_of(a) + index_of(b)) % 5;
            for (int t = 0; t < 5; ++t) {
                const cplx want =
                    std::polar(1.0, 2.0 * 3.14159265358979323846 * expect * t / 5.0);
                CHECK(std::abs(prod.mats[t](0, 0) - want) < 1e-8);
            }
        }
}

TEST_CASE("kronecker: trivial factor acts like the identity up to equivalence") {
    const HopfPtr M = function_algebra(symmetric_group(3));
    const PredualPtr P = build_predual(M);
    StarRep pi, triv;
    for (const AlgebraRep& r : irreducible_star_reps(P->algebra, 0x5EED)) {
        if (r.degree == 2) pi = lift_rep(P, r);
        if (r.degree == 1) {
            StarRep cand = lift_rep(P, r);
            bool is_trivial = true;
            for (int i = 0; i < P->dim(); ++i)
                is_trivial = is_trivial && std::abs(cand.mats[i](0, 0) - cplx(1.0)) < 1e-8;
            if (is_trivial) triv = cand;
        }
    }
    REQUIRE(pi.degree == 2);
    REQUIRE(triv.degree == 1);
    const StarRep prod = kronecker(pi, triv);
    for (int i = 0; i < P->dim(); ++i) {
        cplx tp = 0.0, tq = 0.0;
        for (int r = 0; r < prod.degree; ++r) tp += prod.mats[i](r, r);
        for (int r = 0; r < pi.degree; ++r) tq += pi.mats[i](r, r);
        CHECK(std::abs(tp - tq) < 1e-9); // equal trace fingerprints
    }
}

TEST_CASE("kronecker: standard x standard is standard") {
    const HopfPtr M = function_algebra(symmetric_group(3));
    const PredualPtr P = build_predual(M);
    StarRep pi;
    for (const AlgebraRep& r : irreducible_star_reps(P->algebra, 0x5EED))
        if (r.degree == 2) pi = lift_rep(P, r);
    const StarRep prod = kronecker(pi, pi);
    CHECK(is_standard(prod).standard);
}

TEST_CASE("kronecker rejects mixed parents") {
    const PredualPtr P1 = build_predual(function_algebra(cyclic_group(3)));
    const PredualPtr P2 = build_predual(function_algebra(cyclic_group(4)));
    const auto c1 = predual_characters(P1, 0x5EED);
    const auto c2 = predual_characters(P2, 0x5EED);
    CHECK_THROWS_WITH_AS(kronecker(c1[0], c2[0]), doctest::Contains("MixedParents"), Error);
}

TEST_CASE("direct sums: standardness is conjunctive") {
    const PredualPtr P = build_predual(twisted_hopf(5));
    const auto chars = predual_characters(P, 0x5EED);
    StarRep std_one, bad_one;
    for (const StarRep& chi : chars)
        (is_standard(chi).standard ? std_one : bad_one) = chi;
    REQUIRE(std_one.degree == 1);
    REQUIRE(bad_one.degree == 1);
    CHECK(is_standard(direct_sum(std_one, std_one)).standard);
    CHECK(!is_standard(direct_sum(std_one, bad_one)).standard);
}

TEST_CASE("nondegenerate_on_ideal: twisted Z_5 uniform line") {
    const HopfPtr M = twisted_hopf(5);
    const PredualPtr P = build_predual(M);
    CMatrix uniform(5, 1);
    for (int t = 0; t < 5; ++t) uniform(t, 0) = 1.0;
    Subspace I = make_subspace(5, uniform);
    I.ideal_flag = true;
    REQUIRE(verify_ideal(P->algebra, I).pass(1e-9));

    const auto chars = predual_characters(P, 0x5EED);
    int on = 0, off = 0;
    for (const StarRep& chi : chars) {
        if (nondegenerate_on_ideal(chi, I))
            ++on;
        else
            ++off;
        // Whole predual: every character is nondegenerate.
        Subspace whole = make_subspace(5, CMatrix::identity(5));
        whole.ideal_flag = true;
        CHECK(nondegenerate_on_ideal(chi, whole));
    }
    CHECK(on == 1);  // only chi_0 survives on the uniform line
    CHECK(off == 4);

    Subspace notflagged = make_subspace(5, uniform);
    CHECK_THROWS_WITH_AS(nondegenerate_on_ideal(chars[0], notflagged),
                         doctest::Contains("NotAnIdeal"), Error);
}
