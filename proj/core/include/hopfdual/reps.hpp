#pragma once

#include "hopfdual/predual.hpp"

namespace hopfdual {

/// *-representation of a predual algebra on C^degree; one matrix per
/// dual-basis element of M_*.
struct StarRep {
    PredualPtr predual;
    int degree = 0;
    std::vector<CMatrix> mats;

    CMatrix apply(const CMatrix& mu) const;
    /// Coefficient element pi_{alpha beta} of M: mu -> <pi(mu) f_beta, f_alpha>.
    CMatrix coefficient_element(int alpha, int beta) const;
};

StarRep lift_rep(const PredualPtr& P, const AlgebraRep& rep);
StarRep direct_sum(const StarRep& a, const StarRep& b);
StarRep conjugate_rep(const StarRep& a, const CMatrix& unitary);

/// Checks pi(mu nu) = pi(mu) pi(nu) and pi(mu*) = pi(mu)^dagger.
AxiomReport verify_star_rep(const StarRep& pi);

/// All d^2 coefficient elements, with the defining identity re-verified.
struct CoefficientElement {
    int alpha = 0, beta = 0;
    CMatrix element; // coords in M
};
std::vector<CoefficientElement> coefficients(const StarRep& pi);

bool is_nondegenerate(const StarRep& pi, double tol = 1e-9);
/// Compression onto the essential subspace span{pi(mu) xi}.
StarRep restrict_nondegenerate(const StarRep& pi);

struct StandardVerdict {
    bool standard = false;
    double residual = 0.0; // max deviation in the two coefficient sums
};

/// Standardness test: sum_g pi*_{g a} pi_{g b} = delta_{ab} 1 and
/// sum_g pi_{a g} pi*_{b g} = delta_{ab} 1, products taken in M. Both sums
/// are finite at this scale, so no convergence questions arise. The verdict
/// is basis-independent. Throws DegenerateRep on degenerate input.
StandardVerdict is_standard(const StarRep& pi, double tol = 1e-9);

struct Generator {
    StarRep rep;
    CMatrix U; // on H ⊗ K
    double unitarity_residual = 0.0;
    double pairing_residual = 0.0;
    double commutant_residual = 0.0;
};

/// The entrywise candidate <U(x ⊗ f_a), y ⊗ f_b> = pi_{b a}(mu_{x,y});
/// no standardness requirement (used to exhibit failures).
CMatrix generator_matrix(const StarRep& pi);

/// The involution of M ⊗ B(K) applied to the candidate: the star of M on
/// the left leg (which is the operator adjoint only for spatial stars) and
/// the adjoint on B(K).
CMatrix generator_matrix_star(const StarRep& pi);

/// Builds and verifies the generator of a standard representation:
/// unitarity, the pairing U(mu, omega) = omega(pi(mu)), and commutation
/// with M' ⊗ 1. Throws NotStandard when is_standard fails.
Generator build_generator(const StarRep& pi, double tol = 1e-9);

/// Pairing value U(mu, omega_{x',y'}) = (mu ⊗ omega)(U) through canonical
/// trace-class representatives.
cplx generator_pairing(const HopfPtr& M, const CMatrix& U, int K, const CMatrix& mu,
                       const CMatrix& xprime, const CMatrix& yprime);

/// Recovers pi from a generator; round-trips build_generator.
StarRep extract_rep(const PredualPtr& P, const CMatrix& U, int degree);

/// Kronecker product: the representation whose coefficient elements are the
/// products pi_{a b} rho_{a' b'} in M. Throws MixedParents.
StarRep kronecker(const StarRep& pi, const StarRep& rho);

/// True iff span{pi(mu) xi : mu in I} = K. Throws NotAnIdeal if I is not
/// flagged as an ideal of the predual.
bool nondegenerate_on_ideal(const StarRep& pi, const Subspace& I);

} // namespace hopfdual
