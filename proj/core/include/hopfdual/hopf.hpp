#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hopfdual/algebra.hpp"

namespace hopfdual {

/// Shape of a finite-dimensional von Neumann algebra ⊕ Mat(d_k) acting on
/// H = ⊕ C^{d_k}; the algebra basis is the matrix units, block by block,
/// row-major inside each block.
struct BlockShape {
    std::vector<int> dims;

    int hilbert_dim() const;
    int algebra_dim() const;
    /// Flat basis index of matrix unit (block, row, col).
    int unit_index(int block, int row, int col) const;
    /// Offset of a block inside H.
    int hilbert_offset(int block) const;
    /// (block, row, col) of a flat basis index.
    void locate(int index, int& block, int& row, int& col) const;

    /// Block-diagonal operator on H for a coordinate vector.
    CMatrix to_operator(const CMatrix& coords) const;
    /// Coordinates of an operator's block-diagonal part; *residual (when
    /// non-null) receives the off-block mass, i.e. the projection error.
    CMatrix coords_of(const CMatrix& op, double* residual = nullptr) const;

    CMatrix mul(const CMatrix& x, const CMatrix& y) const;
    CMatrix unit_coords() const;
    /// Canonical spatial star: blockwise conjugate transpose.
    CMatrix canonical_star() const;
};

/// Finite-dimensional coinvolutive Hopf–von Neumann algebra: a certified
/// block realization of the underlying algebra, a comultiplication matrix
/// Delta (n^2 x n over the induced tensor basis), a coinvolution matrix
/// Kappa (n x n), and the involution coords(x*) = star * conj(x). The star
/// need not be the spatial one (the twisted family stores a permuted star).
class HopfVNAlgebra {
public:
    HopfVNAlgebra(BlockShape shape, CMatrix star, CMatrix delta, CMatrix kappa,
                  std::string provenance);

    const BlockShape& shape() const { return shape_; }
    int dim() const { return shape_.algebra_dim(); }
    const CMatrix& star() const { return star_; }
    const CMatrix& delta() const { return delta_; }
    const CMatrix& kappa() const { return kappa_; }
    const std::string& provenance() const { return provenance_; }
    const std::vector<std::string>& labels() const { return labels_; }

    CMatrix mul(const CMatrix& x, const CMatrix& y) const { return shape_.mul(x, y); }
    CMatrix star_of(const CMatrix& x) const { return star_ * x.conjugate(); }
    CMatrix unit_coords() const { return shape_.unit_coords(); }
    CMatrix to_operator(const CMatrix& x) const { return shape_.to_operator(x); }

    CMatrix basis_vector(int i) const;
    std::vector<int> block_signature() const; // sorted copy of dims

    bool commutative(double tol = 1e-9) const;
    bool cocommutative(double tol = 1e-9) const;
    bool star_is_spatial(double tol = 1e-9) const;

    /// The algebra as structure constants over the matrix-unit basis (cached).
    const FinStarAlgebra& as_algebra() const;

    /// Commutant of the block algebra inside B(H), solved once from the
    /// linear system [X, u_i] = 0 and cached (write-once, thread-safe).
    const std::vector<CMatrix>& commutant() const;

private:
    BlockShape shape_;
    CMatrix star_, delta_, kappa_;
    std::string provenance_;
    std::vector<std::string> labels_;

    mutable std::mutex cache_mutex_;
    mutable std::shared_ptr<const FinStarAlgebra> algebra_cache_;
    mutable std::shared_ptr<const std::vector<CMatrix>> commutant_cache_;
};

using HopfPtr = std::shared_ptr<const HopfVNAlgebra>;

struct HopfMorphism {
    HopfPtr source;
    HopfPtr target;
    CMatrix phi; // dim(target) x dim(source)
};

/// theta(a ⊗ b) = b ⊗ a on coordinates of M ⊗ M (n = dim M).
CMatrix flip_tensor(const CMatrix& x, int n);
/// Matrix of theta on the n^2-dimensional tensor coordinates.
CMatrix flip_matrix(int n);

/// Full axiom suite: underlying *-algebra, Delta a unital injective
/// *-homomorphism, coassociativity, kappa a *-antihomomorphism with
/// kappa^2 = id, and the flip axiom (kappa ⊗ kappa) Delta = theta Delta kappa.
AxiomReport verify_hopf(const HopfVNAlgebra& M);

/// Morphism axioms: *-homomorphism, Delta- and kappa-compatibility.
/// phi(1) = 1 is deliberately not required.
AxiomReport verify_morphism(const HopfMorphism& f);

HopfMorphism identity_morphism(const HopfPtr& M);
HopfMorphism compose(const HopfMorphism& g, const HopfMorphism& f); // g ∘ f

/// JSON serialization; round-trips bit-exactly at double precision
/// (decimal with 17 significant digits).
std::string hopf_to_json(const HopfVNAlgebra& M);
HopfPtr hopf_from_json(const std::string& text);

} // namespace hopfdual
