#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfdual/linalg.hpp"
#include "hopfdual/rng.hpp"

namespace hopfdual {

/// Named residuals from a verification pass. `pass(tol)` holds iff every
/// residual is below tol.
struct AxiomReport {
    std::vector<std::pair<std::string, double>> residuals;

    void add(const std::string& name, double value) { residuals.emplace_back(name, value); }
    double max_residual() const;
    bool pass(double tol = 1e-9) const { return max_residual() < tol; }
    std::string summary() const;
};

/// Finite-dimensional associative *-algebra over the complex numbers, given
/// by structure constants e_i e_j = sum_k c[i][j][k] e_k, an optional unit,
/// and the antilinear involution coords(x*) = star * conj(coords(x)).
struct FinStarAlgebra {
    int dim = 0;
    std::vector<std::string> labels;
    std::vector<cplx> structure; // c[(i*dim + j)*dim + k]
    CMatrix star;                // dim x dim
    std::optional<CMatrix> unit; // dim x 1; preduals may be non-unital

    cplx c(int i, int j, int k) const { return structure[(size_t(i) * dim + j) * dim + k]; }
    cplx& c(int i, int j, int k) { return structure[(size_t(i) * dim + j) * dim + k]; }

    CMatrix mul(const CMatrix& x, const CMatrix& y) const;
    CMatrix star_of(const CMatrix& x) const; // star * conj(x)
    CMatrix left_mult(const CMatrix& x) const;
    CMatrix right_mult(const CMatrix& x) const;
    CMatrix basis_vector(int i) const;
    bool commutative(double tol = 1e-9) const;
};

/// Linear representation of a FinStarAlgebra: one degree x degree matrix per
/// basis element. star_rep marks rho(x*) = rho(x)^dagger verified.
struct AlgebraRep {
    std::shared_ptr<const FinStarAlgebra> algebra;
    int degree = 0;
    std::vector<CMatrix> mats;
    bool star_rep = false;

    CMatrix apply(const CMatrix& coords) const;
    /// (tr rho(e_1), ..., tr rho(e_n)) — the equivalence-class fingerprint.
    std::vector<cplx> trace_fingerprint() const;
};

/// Subspace of an algebra, stored as orthonormal columns; ideal_flag marks a
/// verified two-sided ideal.
struct Subspace {
    int ambient = 0;
    CMatrix basis; // ambient x k, orthonormal columns
    bool ideal_flag = false;

    int dim() const { return basis.cols(); }
    /// Max-abs residual of v against the span.
    double distance(const CMatrix& v) const;
    bool contains(const CMatrix& v, double tol = 1e-9) const { return distance(v) < tol; }
};

Subspace make_subspace(int ambient, const CMatrix& spanning, double rtol = 1e-10);

/// Axioms: associativity, unit (when present), involution laws.
AxiomReport verify_star_algebra(const FinStarAlgebra& A);

/// Two-sided *-ideal check for an explicit subspace.
AxiomReport verify_ideal(const FinStarAlgebra& A, const Subspace& X);

/// Jacobson radical via the characteristic-zero trace-form criterion
/// rad(A) = null space of (a,b) -> tr(L_{ab}); non-unital inputs are handled
/// through the unitization.
Subspace jacobson_radical(const FinStarAlgebra& A);

/// Artin–Wedderburn decomposition of A/rad(A): one surjective irreducible
/// representation per simple block, pairwise inequivalent, deterministically
/// ordered by (dimension, rounded trace fingerprint).
/// Throws SplitFailure after 10 reseeds.
std::vector<AlgebraRep> wedderburn_blocks(const FinStarAlgebra& A, std::uint64_t seed);

/// One representative per unitary-equivalence class of irreducible
/// *-representations: each Wedderburn block is unitarized through the
/// Hermitian intertwiner T rho(a) = rho(a*)^dagger T when T is definite, and
/// discarded when the block carries no *-structure.
std::vector<AlgebraRep> irreducible_star_reps(const FinStarAlgebra& A, std::uint64_t seed);

struct Envelope {
    FinStarAlgebra algebra;        // block-canonical: matrix units of ⊕ Mat(d)
    std::vector<int> block_dims;
    CMatrix embedding;             // i_A: dim(E) x dim(A)
    std::vector<AlgebraRep> reps;  // the reps realizing the blocks
    bool vn_equals_cstar = true;   // finite dimensions: W*(A) = C*(A)
};

/// C*-envelope E = ⊕ Mat(d) over irreducible_star_reps(A), with the
/// canonical *-homomorphism i_A (kernel = common kernel of all *-reps).
Envelope cstar_envelope(const FinStarAlgebra& A, std::uint64_t seed);

/// Indices (into irreducible_star_reps(A, seed)) of the irreducible
/// *-representations vanishing on X.
std::vector<int> hull(const FinStarAlgebra& A, const Subspace& X, std::uint64_t seed);
std::vector<int> hull(const std::vector<AlgebraRep>& reps, const Subspace& X,
                      double tol = 1e-9);

/// C*-envelope of a two-sided *-ideal B: the blocks of A not in hull(A, B),
/// restricted to B. Ideals with equal hulls yield isomorphic envelopes.
Envelope envelope_of_ideal(const FinStarAlgebra& A, const Subspace& B, std::uint64_t seed);

/// Block-canonical FinStarAlgebra on matrix units of ⊕ Mat(dims[k]).
FinStarAlgebra block_algebra(const std::vector<int>& dims);

/// True when the two fingerprints agree within tol (equivalence test for
/// semisimple finite-dimensional representations).
bool same_fingerprint(const std::vector<cplx>& a, const std::vector<cplx>& b,
                      double tol = 1e-8);

} // namespace hopfdual
