#include <doctest.h>

#include <hopfdual/duality.hpp>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace hopfdual;

TEST_CASE("absolutely_continuous_ideal: all-standard preduals keep everything") {
    for (const HopfPtr& M :
         {function_algebra(cyclic_group(4)), group_vn_algebra(cyclic_group(4), 0x5EED)}) {
        const PredualPtr P = build_predual(M);
        auto [ideal, part] = absolutely_continuous_ideal(P, 0x5EED);
        CHECK(ideal.dim() == M->dim());
        CHECK(part.nonstandard_idx.empty());
    }
}

TEST_CASE("absolutely_continuous_ideal: twisted Z_5 keeps the uniform line") {
    const PredualPtr P = build_predual(twisted_hopf(5));
    auto [ideal, part] = absolutely_continuous_ideal(P, 0x5EED);
    CHECK(part.standard_idx.size() == 1);
    CHECK(part.nonstandard_idx.size() == 4);
    REQUIRE(ideal.dim() == 1);
    // Fourier oracle: the common kernel of chi_1..chi_4 is spanned by the
    // uniform vector (1,1,1,1,1)/sqrt(5).
    CMatrix uniform(5, 1);
    for (int t = 0; t < 5; ++t) uniform(t, 0) = 1.0 / std::sqrt(5.0);
    CHECK(ideal.contains(uniform, 1e-9));
}

TEST_CASE("dualize C(S_3): blocks {1,1,2}, Hopf-isomorphic to W*(S_3)") {
    const FiniteGroup S3 = symmetric_group(3);
    const DualConstruction dc = dualize(function_algebra(S3), 0x5EED);
    CHECK(dc.dual->block_signature() == std::vector<int>({1, 1, 2}));
    for (const auto& [k, v] : dc.residuals) {
        INFO(k);
        CHECK(v < 1e-9);
    }
    CHECK(dc.dual->cocommutative());
    // Group-like reconstruction of the dual recovers S_3.
    const GroupReconstruction rec = reconstruct_group_cocommutative(dc.dual, 0x5EED);
    CHECK(are_isomorphic(rec.group, S3));
    CHECK(rec.group_like_bijection);
    // Same block signature as the directly built W*(S_3).
    CHECK(dc.dual->block_signature() ==
          group_vn_algebra(S3, 0x5EED)->block_signature());
}

TEST_CASE("dualize W*(Z_4): commutative dual reconstructing Z_4") {
    const DualConstruction dc = dualize(group_vn_algebra(cyclic_group(4), 0x5EED), 0x5EED);
    CHECK(dc.dual->block_signature() == std::vector<int>(4, 1));
    CHECK(dc.dual->commutative());
    const GroupReconstruction rec = reconstruct_group(dc.dual, 0x5EED);
    CHECK(are_isomorphic(rec.group, cyclic_group(4)));
}

TEST_CASE("dualize twisted Z_5: one-dimensional dual") {
    const DualConstruction dc = dualize(twisted_hopf(5), 0x5EED);
    CHECK(dc.dual->dim() == 1);
    CHECK(dc.ideal.dim() == 1);
    CHECK(dc.partition.nonstandard_idx.size() == 4);
}

TEST_CASE("dualize twisted Z_6: exactly two standard characters survive") {
    const DualConstruction dc = dualize(twisted_hopf(6), 0x5EED);
    CHECK(dc.partition.standard_idx.size() == 2); // s = 0 and s = 3
    CHECK(dc.partition.nonstandard_idx.size() == 4);
    CHECK(dc.ideal.dim() == 2);
    CHECK(dc.dual->dim() == 2);
}

TEST_CASE("dual of the full envelope when everything is standard") {
    // When all irreducibles are standard, M^ is the full envelope of M_*.
    const HopfPtr M = function_algebra(symmetric_group(3));
    const DualConstruction dc = dualize(M, 0x5EED);
    const Envelope env = cstar_envelope(build_predual(M)->algebra, 0x5EED);
    std::vector<int> ed = env.block_dims;
    std::sort(ed.begin(), ed.end());
    CHECK(dc.dual->block_signature() == ed);
}

TEST_CASE("dual_morphism: identity dualizes to the identity") {
    const HopfPtr M = function_algebra(cyclic_group(4));
    const DualConstruction dc = dualize(M, 0x5EED);
    const HopfMorphism idd = dual_morphism(identity_morphism(M), dc, dc);
    CHECK((idd.phi - CMatrix::identity(dc.dual->dim())).max_abs() < 1e-9);
}

TEST_CASE("dual_morphism: pullback of Z_4 ->> Z_2 dualizes to lambda-push") {
    const FiniteGroup Z4 = cyclic_group(4), Z2 = cyclic_group(2);
    const HopfPtr C4 = function_algebra(Z4), C2 = function_algebra(Z2);
    std::vector<int> q(4);
    for (int k = 0; k < 4; ++k) q[k] = k % 2;
    const HopfMorphism f = function_pullback(C2, C4, Z4, Z2, q); // C2 -> C4

    const DualConstruction d2 = dualize(C2, 0x5EED);
    const DualConstruction d4 = dualize(C4, 0x5EED);
    const HopfMorphism fhat = dual_morphism(f, d2, d4); // C4^ -> C2^
    CHECK(verify_morphism(fhat).pass(1e-9));

    // Generator images: fhat(Phi_4(delta_t)) = Phi_2(delta_{q(t)}).
    for (int t = 0; t < 4; ++t) {
        const CMatrix lhs = fhat.phi * d4.phi.col(t);
        const CMatrix rhs = d2.phi.col(q[t]);
        CHECK((lhs - rhs).max_abs() < 1e-9);
    }
}

TEST_CASE("dual_morphism: contravariant composition on the Z_8 chain") {
    const FiniteGroup Z8 = cyclic_group(8), Z4 = cyclic_group(4), Z2 = cyclic_group(2);
    const HopfPtr C8 = function_algebra(Z8), C4 = function_algebra(Z4), C2 = function_algebra(Z2);
    std::vector<int> q84(8), q42(4);
    for (int k = 0; k < 8; ++k) q84[k] = k % 4;
    for (int k = 0; k < 4; ++k) q42[k] = k % 2;
    const HopfMorphism f = function_pullback(C4, C8, Z8, Z4, q84); // C4 -> C8
    const HopfMorphism g = function_pullback(C2, C4, Z4, Z2, q42); // C2 -> C4
    const HopfMorphism fg = compose(f, g);                         // C2 -> C8

    const DualConstruction d2 = dualize(C2, 0x5EED);
    const DualConstruction d4 = dualize(C4, 0x5EED);
    const DualConstruction d8 = dualize(C8, 0x5EED);

    const HopfMorphism fhat = dual_morphism(f, d4, d8); // C8^ -> C4^
    const HopfMorphism ghat = dual_morphism(g, d2, d4); // C4^ -> C2^
    const HopfMorphism fghat = dual_morphism(fg, d2, d8);

    CHECK((fghat.phi - compose(ghat, fhat).phi).max_abs() < 1e-9);
}

TEST_CASE("canonical_D behaves across the fleet of examples") {
    // C(Z_3): bijection.
    {
        const HopfPtr M = function_algebra(cyclic_group(3));
        const DualConstruction dc = dualize(M, 0x5EED);
        const DualConstruction ddc = dualize(dc.dual, 0x5EED);
        const HopfMorphism D = canonical_D(dc, ddc);
        CHECK(numeric_rank(D.phi) == 3);
        CHECK(verify_morphism(D).pass(1e-9));
    }
    // Twisted Z_5: rank one, image the scalars.
    {
        const HopfPtr M = twisted_hopf(5);
        const DualConstruction dc = dualize(M, 0x5EED);
        const DualConstruction ddc = dualize(dc.dual, 0x5EED);
        const HopfMorphism D = canonical_D(dc, ddc);
        CHECK(ddc.dual->dim() == 1);
        CHECK(numeric_rank(D.phi) == 1);
        // Image is the line of scalars: D maps the unit to the unit line.
        const CMatrix img = D.phi.col(0);
        const CMatrix unit = M->unit_coords();
        // img proportional to unit
        cplx ratio = 0.0;
        for (int i = 0; i < 5; ++i)
            if (std::abs(unit(i, 0)) > 0.5) ratio = img(i, 0);
        CHECK((img - unit * ratio).max_abs() < 1e-9);
    }
    // C(S_3): bijective and Hopf-compatible.
    {
        const HopfPtr M = function_algebra(symmetric_group(3));
        const DualConstruction dc = dualize(M, 0x5EED);
        const DualConstruction ddc = dualize(dc.dual, 0x5EED);
        const HopfMorphism D = canonical_D(dc, ddc);
        CHECK(numeric_rank(D.phi) == 6);
        CHECK(verify_morphism(D).pass(1e-9));
    }
}

TEST_CASE("canonical_E: D ∘ E = id on duals") {
    for (const HopfPtr& M :
         {function_algebra(symmetric_group(3)), group_vn_algebra(cyclic_group(6), 0x5EED),
          twisted_hopf(5)}) {
        const DualConstruction dc = dualize(M, 0x5EED);
        const DualConstruction ddc = dualize(dc.dual, 0x5EED);
        const DualConstruction dddc = dualize(ddc.dual, 0x5EED);
        const CanonicalE e = canonical_E(dc, ddc, dddc);
        CHECK(e.de_identity_residual < 1e-9);
        CHECK(verify_morphism(e.E).pass(1e-9));
    }
}

TEST_CASE("annihilator_ideal_check") {
    // C(Z_4): Phi injective, annihilator trivial.
    {
        const DualConstruction dc = dualize(function_algebra(cyclic_group(4)), 0x5EED);
        const AnnihilatorReport rep = annihilator_ideal_check(dc);
        CHECK(rep.applicable);
        CHECK(rep.perp_dim == 0);
        CHECK(rep.verified);
    }
    // Twisted Z_5 and Z_6: Phi has small rank, the test is not applicable.
    {
        const DualConstruction dc = dualize(twisted_hopf(5), 0x5EED);
        CHECK(numeric_rank(dc.phi) == 1);
        CHECK(!annihilator_ideal_check(dc).applicable);
    }
    {
        const DualConstruction dc = dualize(twisted_hopf(6), 0x5EED);
        CHECK(numeric_rank(dc.phi) == 2);
        const AnnihilatorReport rep = annihilator_ideal_check(dc);
        CHECK(!rep.applicable);
        // And rightly so: the would-be annihilator is NOT an ideal here, so
        // the injectivity hypothesis is doing real work.
        const CMatrix perp = nullspace(dc.ideal.basis.transpose(), 1e-10);
        Subspace sp = make_subspace(6, perp);
        CHECK(!verify_ideal(dc.source->as_algebra(), sp).pass(1e-6));
    }
}

TEST_CASE("is_reflexive: function and group algebras are, twisted Z_5 is not") {
    {
        const ReflexivityReport rep = is_reflexive(function_algebra(symmetric_group(3)), 0x5EED);
        CHECK(rep.canonical);
        CHECK(rep.morphism_residual < 1e-9);
        CHECK(rep.structural_kind == "group");
        CHECK(rep.structural_ok);
    }
    {
        const ReflexivityReport rep =
            is_reflexive(group_vn_algebra(symmetric_group(3), 0x5EED), 0x5EED);
        CHECK(rep.canonical);
        CHECK(rep.structural_kind == "group-like");
        CHECK(rep.structural_ok);
    }
    {
        const ReflexivityReport rep = is_reflexive(twisted_hopf(5), 0x5EED);
        CHECK(!rep.canonical);
        CHECK(!rep.bijective);
        CHECK(rep.sig_DD == std::vector<int>({1}));
    }
}

TEST_CASE("triple_dual_check (Kirchberg) on the three designated inputs") {
    CHECK(triple_dual_check(function_algebra(symmetric_group(3)), 0x5EED).holds);
    CHECK(triple_dual_check(group_vn_algebra(cyclic_group(6), 0x5EED), 0x5EED).holds);
    CHECK(triple_dual_check(twisted_hopf(5), 0x5EED).holds); // all three are C
}

TEST_CASE("reconstruct_group: C(Z_6) round-trip") {
    const GroupReconstruction rec = reconstruct_group(function_algebra(cyclic_group(6)), 0x5EED);
    CHECK(are_isomorphic(rec.group, cyclic_group(6)));
    CHECK(rec.group_like_count == 6);
    CHECK(rec.group_like_bijection);
}

TEST_CASE("reconstruct_group: double dual of C(S_3) is S_3 again") {
    const DualConstruction dc = dualize(function_algebra(symmetric_group(3)), 0x5EED);
    const DualConstruction ddc = dualize(dc.dual, 0x5EED);
    const GroupReconstruction rec = reconstruct_group(ddc.dual, 0x5EED);
    CHECK(are_isomorphic(rec.group, symmetric_group(3)));
    // S_3 is nonabelian: its group-like unitaries are the two linear
    // characters, not a bijection with the elements.
    CHECK(rec.group_like_count == 2);
    CHECK(!rec.group_like_bijection);
}

TEST_CASE("reconstruct_group: dual of W*(Z_5) is the character group of Z_5") {
    const DualConstruction dc = dualize(group_vn_algebra(cyclic_group(5), 0x5EED), 0x5EED);
    const GroupReconstruction rec = reconstruct_group(dc.dual, 0x5EED);
    CHECK(are_isomorphic(rec.group, dual_group(cyclic_group(5))));
}

TEST_CASE("reconstruct_group error paths") {
    CHECK_THROWS_WITH_AS(reconstruct_group(group_vn_algebra(symmetric_group(3), 0x5EED), 0x5EED),
                         doctest::Contains("NotCommutative"), Error);
    // kappa = id cannot provide inverses on Z_5.
    CHECK_THROWS_WITH_AS(reconstruct_group(twisted_hopf(5), 0x5EED),
                         doctest::Contains("NotAGroup"), Error);
}

TEST_CASE("irreducibles nondegenerate on M_*^0 are standard (exhaustive)") {
    for (const HopfPtr& M : {twisted_hopf(5), twisted_hopf(6),
                             function_algebra(symmetric_group(3)),
                             group_vn_algebra(dihedral_group(4), 0x5EED)}) {
        const PredualPtr P = build_predual(M);
        auto [ideal, part] = absolutely_continuous_ideal(P, 0x5EED);
        for (int i = 0; i < int(part.reps.size()); ++i) {
            if (!nondegenerate_on_ideal(part.reps[i], ideal)) continue;
            CHECK(is_standard(part.reps[i]).standard);
        }
    }
}

TEST_CASE("extended fleet: groups beyond the required set stay reflexive") {
    std::vector<FiniteGroup> extra;
    extra.push_back(cyclic_group(9));
    extra.push_back(product_group(cyclic_group(3), cyclic_group(3)));
    extra.push_back(dihedral_group(5));                                // blocks {1,1,2,2}
    extra.push_back(product_group(symmetric_group(3), cyclic_group(2))); // blocks {1,1,1,1,2,2}
    for (const FiniteGroup& G : extra) {
        const std::vector<int> oracle = testing::expected_block_dims(G);
        const ReflexivityReport rf = is_reflexive(function_algebra(G), 0x5EED);
        CHECK(rf.canonical);
        CHECK(rf.structural_ok);
        if (!oracle.empty()) CHECK(rf.first.dual->block_signature() == oracle);
        const ReflexivityReport rw = is_reflexive(group_vn_algebra(G, 0x5EED), 0x5EED);
        CHECK(rw.canonical);
        CHECK(rw.structural_ok);
    }
}

TEST_CASE("a doctored comultiplication trips the consistency sentinel") {
    const HopfPtr good = function_algebra(cyclic_group(3));
    CMatrix bad_delta = good->delta();
    bad_delta(0, 0) += 1e-3; // breaks coassociativity / predual associativity
    const HopfPtr broken = std::make_shared<HopfVNAlgebra>(
        good->shape(), good->star(), bad_delta, good->kappa(), "broken");
    CHECK_THROWS_WITH_AS(dualize(broken, 0x5EED), doctest::Contains("ExtensionInconsistent"),
                         Error);
}

TEST_CASE("trivial group: both sides coincide") {
    const FiniteGroup triv = cyclic_group(1);
    const HopfPtr C = function_algebra(triv);
    const HopfPtr W = group_vn_algebra(triv, 0x5EED);
    CHECK(C->dim() == 1);
    CHECK(W->dim() == 1);
    CHECK((C->delta() - W->delta()).max_abs() < 1e-12);
    CHECK((C->kappa() - W->kappa()).max_abs() < 1e-12);
    CHECK((C->star() - W->star()).max_abs() < 1e-12);
}

TEST_CASE("duality_report is deterministic and wall-clock-free by default") {
    DualityRunResult r;
    r.input_spec_json = R"({"type":"cyclic","n":3})";
    r.side = "function";
    r.seed = 0x5EED;
    r.tol = 1e-9;
    r.M = function_algebra(cyclic_group(3));
    r.first = dualize(r.M, r.seed);
    const std::string a = duality_report(r).dump(1);
    const std::string b = duality_report(r).dump(1);
    CHECK(a == b);
    CHECK(a.find("wall_clock_ms") == std::string::npos);
    r.wall_ms = 12.5;
    CHECK(duality_report(r).dump(1).find("wall_clock_ms") != std::string::npos);
}
