#pragma once

#include <string>
#include <vector>

#include "hopfdual/hopf.hpp"

// At finite scale the usual menagerie of algebras attached to a group
// collapses: the measure algebra and the L^1 algebra are both the group
// algebra C[G]; continuous, bounded, and essentially bounded functions are
// all the pointwise algebra C(G), which equals its own enveloping von
// Neumann algebra; the Fourier and Fourier-Stieltjes algebras are the
// pointwise functions viewed as the predual of C[G]; and the full and
// reduced C*-completions and the group von Neumann algebra all coincide
// with C[G] in block form. The constructors below build the two Hopf-von
// Neumann structures that survive this collapse.

namespace hopfdual {

/// Finite group as a verified Cayley table.
struct FiniteGroup {
    int order = 0;
    std::vector<int> table; // table[a * order + b] = a*b
    int identity = 0;
    std::vector<int> inverse;
    std::vector<std::string> labels;
    std::string name;

    int mul(int a, int b) const { return table[a * order + b]; }
    int inv(int a) const { return inverse[a]; }
    bool abelian() const;
    int element_order(int g) const;
    /// Exhaustive associativity / identity / inverse verification.
    void verify() const; // throws BadSpec
};

/// Spec for the CLI-facing constructors:
///   {"type":"cyclic","n":6}, {"type":"sym","n":3}, {"type":"dihedral","n":4},
///   {"type":"quaternion"}, {"type":"product","factors":[...]},
///   {"type":"twisted","n":5}
struct GroupSpec {
    enum class Type { Cyclic, Sym, Dihedral, Quaternion, Product, Twisted };
    Type type = Type::Cyclic;
    int n = 1;
    std::vector<GroupSpec> factors;

    std::string to_json() const; // canonical form
    std::string describe() const;
};

GroupSpec parse_group_spec(const std::string& json_text); // throws BadSpec

FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group(int n); // n <= 4
FiniteGroup dihedral_group(int n);  // order 2n
FiniteGroup quaternion_group();
FiniteGroup product_group(const FiniteGroup& G, const FiniteGroup& H);
FiniteGroup make_group(const GroupSpec& spec); // throws BadSpec (Twisted rejected)

/// C(G): pointwise function algebra with Delta e_g = sum_{st=g} e_s ⊗ e_t,
/// kappa e_g = e_{g^{-1}}, coordinatewise conjugation.
HopfPtr function_algebra(const FiniteGroup& G);

/// W*(G): block form of the group *-algebra via its irreducible unitary
/// representations; Delta lambda(t) = lambda(t) ⊗ lambda(t),
/// kappa lambda(t) = lambda(t^{-1}).
HopfPtr group_vn_algebra(const FiniteGroup& G, std::uint64_t seed);
/// Also exposes the generators lambda(t) in block coordinates.
HopfPtr group_vn_algebra(const FiniteGroup& G, std::uint64_t seed,
                         std::vector<CMatrix>* lambda_coords);

/// The counterexample family: function-algebra Delta on Z_n, kappa = id,
/// star e_g = e_{-g} extended antilinearly.
HopfPtr twisted_hopf(int n);

/// The group *-algebra C[G] as plain structure constants (delta_t basis,
/// delta_t* = delta_{t^{-1}}).
FinStarAlgebra group_star_algebra(const FiniteGroup& G);

/// Character group of a finite abelian group; throws NotAbelian.
FiniteGroup dual_group(const FiniteGroup& G, std::uint64_t seed = 0x5EED);

/// Brute-force isomorphism testing, feasible to order ~24.
bool are_isomorphic(const FiniteGroup& G, const FiniteGroup& H);

std::vector<int> commutator_subgroup(const FiniteGroup& G);
FiniteGroup quotient_group(const FiniteGroup& G, const std::vector<int>& normal_subgroup);

/// Pullback C(H) -> C(G) of a surjection q: G -> H (q given elementwise).
HopfMorphism function_pullback(const HopfPtr& CH, const HopfPtr& CG, const FiniteGroup& G,
                               const FiniteGroup& H, const std::vector<int>& q);

} // namespace hopfdual
