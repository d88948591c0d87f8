#pragma once

#include <map>
#include <optional>

#include "hopfdual/groups.hpp"
#include "hopfdual/report.hpp"
#include "hopfdual/reps.hpp"

namespace hopfdual {

/// Enumerated irreducible *-representations of a predual, split into
/// standard and non-standard classes.
struct RepPartition {
    std::vector<StarRep> reps;
    std::vector<int> standard_idx;
    std::vector<int> nonstandard_idx;
    std::vector<double> standard_residuals; // is_standard residual per rep
};

/// One dualization M -> M^ = W*_st(M_*): the absolutely continuous ideal,
/// the rep partition, the dual algebra with Delta^ and kappa^, the canonical
/// maps Phi and Phi^, and the residual ledger.
struct DualConstruction {
    HopfPtr source;
    PredualPtr predual;
    Subspace ideal; // M_*^0 in dual-basis coordinates
    RepPartition partition;
    HopfPtr dual;
    CMatrix phi;     // dim(dual) x dim(source)
    CMatrix phi_hat; // dim(source) x dim(dual), = phi^T
    std::map<std::string, double> residuals;
};

/// M_*^0 = common kernel of all irreducible non-standard representations
/// (all of M_* when there are none), returned as a verified two-sided
/// *-ideal together with the partition that defined it.
///
/// In infinite dimensions non-standard characters can separate points,
/// collapsing the ideal (and the dual) to zero while the envelope of the
/// standard representations stays nonzero. At finite scale that divergence
/// is invisible: the common kernel always retains the lines dual to the
/// standard characters (for the twisted family, the trivial one), so the
/// dual below coincides with the envelope of the standard characters.
std::pair<Subspace, RepPartition> absolutely_continuous_ideal(const PredualPtr& P,
                                                              std::uint64_t seed);

/// Full dualization. Throws ExtensionInconsistent when a residual breaches
/// tol (a genuine theory violation), SplitFailure from the block machinery.
DualConstruction dualize(const HopfPtr& M, std::uint64_t seed, double tol = 1e-9);

/// Dual morphism of f: M -> N; solves phi^ ∘ Phi_N = Phi_M ∘ f_* on N_*^0.
/// dc_source/dc_target are the dualizations of f's source and target.
HopfMorphism dual_morphism(const HopfMorphism& f, const DualConstruction& dc_source,
                           const DualConstruction& dc_target, double tol = 1e-9);

/// D_M: M^^ -> M with D_M ∘ Phi_{M^} = Phi^_M.
HopfMorphism canonical_D(const DualConstruction& dc, const DualConstruction& ddc,
                         double tol = 1e-9);

struct CanonicalE {
    HopfMorphism E;   // N -> N^^ for N = M^
    HopfMorphism D_N; // N^^ -> N
    double de_identity_residual = 0.0;
};

/// E_N = (D_M)^ with D_N ∘ E_N = id_N; needs the triple-dual chain.
CanonicalE canonical_E(const DualConstruction& dc, const DualConstruction& ddc,
                       const DualConstruction& dddc, double tol = 1e-9);

struct AnnihilatorReport {
    bool applicable = false; // Phi injective
    int perp_dim = 0;
    double ideal_residual = 0.0; // closure residual of (M_*^0)^perp in M
    bool verified = false;
};

AnnihilatorReport annihilator_ideal_check(const DualConstruction& dc, double tol = 1e-9);

struct GroupReconstruction {
    FiniteGroup group;
    int group_like_count = 0;      // verified group-like unitaries of M
    bool group_like_bijection = false;
    double residual = 0.0;
};

/// Spectrum-side reconstruction for commutative M: points are the characters
/// of M, multiplication from Delta, inversion from kappa. Cross-checked
/// against the group-like unitaries (Delta x = x ⊗ x, x*x = 1, kappa x = x*).
/// Throws NotCommutative / NotAGroup.
GroupReconstruction reconstruct_group(const HopfPtr& M, std::uint64_t seed,
                                      double tol = 1e-9);

/// Group-like-side reconstruction for cocommutative M: the group-like
/// unitaries form the group. Throws NotCocommutative / NotAGroup.
GroupReconstruction reconstruct_group_cocommutative(const HopfPtr& M, std::uint64_t seed,
                                                    double tol = 1e-9);

struct ReflexivityReport {
    bool canonical = false; // D_M is a Hopf isomorphism
    bool bijective = false;
    double morphism_residual = 0.0; // worst residual of D and its inverse
    std::string structural_kind;    // "group", "group-like", "signature"
    bool structural_ok = false;
    std::vector<int> sig_M, sig_DD;
    std::optional<GroupReconstruction> recon_M, recon_DD;
    DualConstruction first, second;
    HopfMorphism D;
};

ReflexivityReport is_reflexive(const HopfPtr& M, std::uint64_t seed, double tol = 1e-9);

struct TripleDualReport {
    bool holds = false;
    std::vector<int> sig_first, sig_third;
    double morphism_residual = 0.0;
};

/// Compares dual(dual(dual(M))) with dual(M) through the canonical map.
TripleDualReport triple_dual_check(const HopfPtr& M, std::uint64_t seed, double tol = 1e-9);
/// Same, over an already computed chain.
TripleDualReport triple_dual_check(const DualConstruction& dc, const DualConstruction& ddc,
                                   const DualConstruction& dddc, double tol = 1e-9);

/// Everything a dualization run may report; optional stages stay absent
/// from the JSON. wall_ms is serialized only when set, keeping default
/// reports byte-deterministic for fixed (spec, seed, tol).
struct DualityRunResult {
    std::string input_spec_json; // canonical spec
    std::string side;            // "function" | "groupvn" | "twisted"
    std::uint64_t seed = 0;
    double tol = 1e-9;
    HopfPtr M;
    std::optional<DualConstruction> first;
    std::optional<DualConstruction> second;
    std::optional<DualConstruction> third;
    std::optional<ReflexivityReport> reflexivity;
    std::optional<GroupReconstruction> dual_reconstruction;
    std::optional<TripleDualReport> triple;
    std::optional<AxiomReport> axioms;
    std::optional<double> wall_ms;
};

json::Value duality_report(const DualityRunResult& r);

} // namespace hopfdual
