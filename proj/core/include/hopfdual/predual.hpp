#pragma once

#include "hopfdual/hopf.hpp"

namespace hopfdual {

/// The predual M_* on the dual basis of M's matrix-unit basis, as a
/// convolution *-algebra: (mu nu)(x) = (mu ⊗ nu)(Delta x) and
/// mu*(x) = conj(mu(kappa(x)*)). Possibly non-unital.
struct PredualAlgebra {
    HopfPtr parent;
    FinStarAlgebra algebra; // structure on the dual basis; unit solved if any

    int dim() const { return algebra.dim; }
    /// Evaluate a functional (coords in the dual basis) on an element of M.
    cplx pair(const CMatrix& mu, const CMatrix& x) const;
    /// kappa-transpose map on functionals: (kappa~ mu) = mu ∘ kappa.
    CMatrix kappa_tilde(const CMatrix& mu) const;
    CMatrix kappa_tilde_matrix() const; // = kappa^T
};

using PredualPtr = std::shared_ptr<const PredualAlgebra>;

/// Builds the predual; verifies the derived *-algebra axioms.
PredualPtr build_predual(const HopfPtr& M);

/// mu_{xy}(a) = <a x, y> for vectors x, y in the block Hilbert space H.
struct CoefficientFunctional {
    CMatrix x, y;   // H x 1
    CMatrix coords; // dual-basis coordinates
};

CoefficientFunctional coefficient(const HopfPtr& M, const CMatrix& x, const CMatrix& y);

/// Matrix whose columns are the coefficient functionals of all basis-vector
/// pairs of H (used for the spanning rank check).
CMatrix coefficient_span(const HopfPtr& M);

/// A trace-class representative T with mu(a) = tr(to_operator(a) T) for all
/// a in M; canonical block-supported choice.
CMatrix functional_representative(const HopfPtr& M, const CMatrix& mu);

} // namespace hopfdual
