#include "hopfdual/hopf.hpp"

#include <algorithm>
#include <cmath>

#include "hopfdual/report.hpp"

namespace hopfdual {

int BlockShape::hilbert_dim() const {
    int s = 0;
    for (int d : dims) s += d;
    return s;
}

int BlockShape::algebra_dim() const {
    int s = 0;
    for (int d : dims) s += d * d;
    return s;
}

int BlockShape::unit_index(int block, int row, int col) const {
    int off = 0;
    for (int b = 0; b < block; ++b) off += dims[b] * dims[b];
    return off + row * dims[block] + col;
}

int BlockShape::hilbert_offset(int block) const {
    int off = 0;
    for (int b = 0; b < block; ++b) off += dims[b];
    return off;
}

void BlockShape::locate(int index, int& block, int& row, int& col) const {
    int off = 0;
    for (int b = 0; b < int(dims.size()); ++b) {
        const int sz = dims[b] * dims[b];
        if (index < off + sz) {
            block = b;
            row = (index - off) / dims[b];
            col = (index - off) % dims[b];
            return;
        }
        off += sz;
    }
    fail("DimensionMismatch", "basis index out of range");
}

CMatrix BlockShape::to_operator(const CMatrix& coords) const {
    const int H = hilbert_dim();
    CMatrix op(H, H);
    int idx = 0;
    int hoff = 0;
    for (int d : dims) {
        for (int r = 0; r < d; ++r)
            for (int cidx = 0; cidx < d; ++cidx) op(hoff + r, hoff + cidx) = coords(idx + r * d + cidx, 0);
        idx += d * d;
        hoff += d;
    }
    return op;
}

CMatrix BlockShape::coords_of(const CMatrix& op, double* residual) const {
    CMatrix coords(algebra_dim(), 1);
    int idx = 0, hoff = 0;
    for (int d : dims) {
        for (int r = 0; r < d; ++r)
            for (int cidx = 0; cidx < d; ++cidx) coords(idx + r * d + cidx, 0) = op(hoff + r, hoff + cidx);
        idx += d * d;
        hoff += d;
    }
    if (residual) *residual = (op - to_operator(coords)).max_abs();
    return coords;
}

CMatrix BlockShape::mul(const CMatrix& x, const CMatrix& y) const {
    CMatrix out(algebra_dim(), 1);
    int idx = 0;
    for (int d : dims) {
        for (int r = 0; r < d; ++r)
            for (int cidx = 0; cidx < d; ++cidx) {
                cplx s = 0.0;
                for (int k = 0; k < d; ++k) s += x(idx + r * d + k, 0) * y(idx + k * d + cidx, 0);
                out(idx + r * d + cidx, 0) = s;
            }
        idx += d * d;
    }
    return out;
}

CMatrix BlockShape::unit_coords() const {
    CMatrix u(algebra_dim(), 1);
    int idx = 0;
    for (int d : dims) {
        for (int r = 0; r < d; ++r) u(idx + r * d + r, 0) = 1.0;
        idx += d * d;
    }
    return u;
}

CMatrix BlockShape::canonical_star() const {
    const int n = algebra_dim();
    CMatrix S(n, n);
    int idx = 0;
    for (int d : dims) {
        for (int r = 0; r < d; ++r)
            for (int cidx = 0; cidx < d; ++cidx) S(idx + cidx * d + r, idx + r * d + cidx) = 1.0;
        idx += d * d;
    }
    return S;
}

HopfVNAlgebra::HopfVNAlgebra(BlockShape shape, CMatrix star, CMatrix delta, CMatrix kappa,
                             std::string provenance)
    : shape_(std::move(shape)),
      star_(std::move(star)),
      delta_(std::move(delta)),
      kappa_(std::move(kappa)),
      provenance_(std::move(provenance)) {
    const int n = shape_.algebra_dim();
    if (star_.rows() != n || star_.cols() != n) fail("DimensionMismatch", "star matrix shape");
    if (delta_.rows() != n * n || delta_.cols() != n) fail("DimensionMismatch", "delta matrix shape");
    if (kappa_.rows() != n || kappa_.cols() != n) fail("DimensionMismatch", "kappa matrix shape");
    labels_.resize(n);
    for (int i = 0; i < n; ++i) {
        int b, r, cidx;
        shape_.locate(i, b, r, cidx);
        labels_[i] = "B" + std::to_string(b) + "[" + std::to_string(r) + "," + std::to_string(cidx) + "]";
    }
}

CMatrix HopfVNAlgebra::basis_vector(int i) const {
    CMatrix v(dim(), 1);
    v(i, 0) = 1.0;
    return v;
}

std::vector<int> HopfVNAlgebra::block_signature() const {
    std::vector<int> s = shape_.dims;
    std::sort(s.begin(), s.end());
    return s;
}

bool HopfVNAlgebra::commutative(double tol) const {
    for (int d : shape_.dims)
        if (d > 1) return false;
    (void)tol;
    return true;
}

bool HopfVNAlgebra::cocommutative(double tol) const {
    const int n = dim();
    return (flip_matrix(n) * delta_ - delta_).max_abs() < tol;
}

bool HopfVNAlgebra::star_is_spatial(double tol) const {
    return (star_ - shape_.canonical_star()).max_abs() < tol;
}

const FinStarAlgebra& HopfVNAlgebra::as_algebra() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!algebra_cache_) {
        auto A = std::make_shared<FinStarAlgebra>();
        const int n = dim();
        A->dim = n;
        A->labels = labels_;
        A->structure.assign(size_t(n) * n * n, 0.0);
        for (int i = 0; i < n; ++i) {
            int bi, ri, ci;
            shape_.locate(i, bi, ri, ci);
            for (int j = 0; j < n; ++j) {
                int bj, rj, cj;
                shape_.locate(j, bj, rj, cj);
                if (bi == bj && ci == rj) A->c(i, j, shape_.unit_index(bi, ri, cj)) = 1.0;
            }
        }
        A->star = star_;
        A->unit = unit_coords();
        algebra_cache_ = A;
    }
    return *algebra_cache_;
}

const std::vector<CMatrix>& HopfVNAlgebra::commutant() const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    if (!commutant_cache_) {
        const int H = shape_.hilbert_dim();
        const int n = dim();
        // Normal matrix of the system [X, u_i] = 0 over all matrix units,
        // accumulated sparsely (each row of a commutator block has <= 2
        // non-zeros), then a QR-based kernel.
        CMatrix N(H * H, H * H);
        for (int i = 0; i < n; ++i) {
            const CMatrix u = shape_.to_operator(basis_vector(i));
            // C = kron(I, u^T)... row-major vec: vec(Xu - uX) = (kron(I,u^T) - kron(u,I)) vec(X)
            // Accumulate C^dagger C without materializing C.
            for (int r = 0; r < H; ++r)
                for (int cidx = 0; cidx < H; ++cidx) {
                    // Row (r,c) of C: entries  X[r][k] u[k][c]  -  u[r][k] X[k][c]
                    // i.e. coefficient u[k][c] at column (r,k), -u[r][k] at (k,c).
                    std::vector<std::pair<int, cplx>> row;
                    for (int k = 0; k < H; ++k) {
                        const cplx a = u(k, cidx);
                        if (a != cplx(0.0)) row.emplace_back(r * H + k, a);
                    }
                    for (int k = 0; k < H; ++k) {
                        const cplx b = -u(r, k);
                        if (b != cplx(0.0)) {
                            bool merged = false;
                            for (auto& [col, val] : row)
                                if (col == k * H + cidx) {
                                    val += b;
                                    merged = true;
                                    break;
                                }
                            if (!merged) row.emplace_back(k * H + cidx, b);
                        }
                    }
                    for (const auto& [ca, va] : row)
                        for (const auto& [cb, vb] : row) N(ca, cb) += std::conj(va) * vb;
                }
        }
        CMatrix kernel = nullspace(N, 1e-9);
        auto basis = std::make_shared<std::vector<CMatrix>>();
        for (int j = 0; j < kernel.cols(); ++j) {
            CMatrix X(H, H);
            for (int r = 0; r < H; ++r)
                for (int cidx = 0; cidx < H; ++cidx) X(r, cidx) = kernel(r * H + cidx, j);
            basis->push_back(std::move(X));
        }
        commutant_cache_ = basis;
    }
    return *commutant_cache_;
}

CMatrix flip_matrix(int n) {
    CMatrix T(n * n, n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) T(j * n + i, i * n + j) = 1.0;
    return T;
}

CMatrix flip_tensor(const CMatrix& x, int n) {
    if (x.rows() != n * n || x.cols() != 1) fail("DimensionMismatch", "flip_tensor input");
    CMatrix y(n * n, 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) y(j * n + i, 0) = x(i * n + j, 0);
    return y;
}

namespace {

// Product in M ⊗ M on tensor coordinates, through the block structure of M:
// (a ⊗ b)(c ⊗ d) = ac ⊗ bd, extended bilinearly via operators on H ⊗ H.
CMatrix tensor_mul(const BlockShape& shape, const CMatrix& x, const CMatrix& y) {
    const int n = shape.algebra_dim();
    CMatrix out(n * n, 1);
    // Represent x, y as block matrices indexed by basis pairs and multiply
    // pairwise per block pair;  x = sum x_{(i,j)} u_i ⊗ u_j.
    // Work block-pair by block-pair to stay cheap.
    const int nb = int(shape.dims.size());
    for (int b1 = 0; b1 < nb; ++b1) {
        const int d1 = shape.dims[b1];
        for (int b2 = 0; b2 < nb; ++b2) {
            const int d2 = shape.dims[b2];
            // Dense d1^2 x d2^2 slices of x and y for this block pair.
            CMatrix X(d1 * d1, d2 * d2), Y(d1 * d1, d2 * d2);
            for (int p = 0; p < d1 * d1; ++p)
                for (int q = 0; q < d2 * d2; ++q) {
                    const int i = shape.unit_index(b1, p / d1, p % d1);
                    const int j = shape.unit_index(b2, q / d2, q % d2);
                    X(p, q) = x(i * n + j, 0);
                    Y(p, q) = y(i * n + j, 0);
                }
            // Multiply as operators on C^{d1} ⊗ C^{d2}: reshape to (d1 d2)^2.
            auto to_op = [&](const CMatrix& Z) {
                CMatrix op(d1 * d2, d1 * d2);
                for (int r1 = 0; r1 < d1; ++r1)
                    for (int c1 = 0; c1 < d1; ++c1)
                        for (int r2 = 0; r2 < d2; ++r2)
                            for (int c2 = 0; c2 < d2; ++c2)
                                op(r1 * d2 + r2, c1 * d2 + c2) = Z(r1 * d1 + c1, r2 * d2 + c2);
                return op;
            };
            const CMatrix prod = to_op(X) * to_op(Y);
            for (int r1 = 0; r1 < d1; ++r1)
                for (int c1 = 0; c1 < d1; ++c1)
                    for (int r2 = 0; r2 < d2; ++r2)
                        for (int c2 = 0; c2 < d2; ++c2) {
                            const int i = shape.unit_index(b1, r1, c1);
                            const int j = shape.unit_index(b2, r2, c2);
                            out(i * n + j, 0) = prod(r1 * d2 + r2, c1 * d2 + c2);
                        }
        }
    }
    return out;
}

} // namespace

AxiomReport verify_hopf(const HopfVNAlgebra& M) {
    AxiomReport rep = verify_star_algebra(M.as_algebra());
    const int n = M.dim();
    const CMatrix& D = M.delta();
    const CMatrix& K = M.kappa();
    const CMatrix& S = M.star();

    // Delta is an algebra homomorphism: Delta(e_i e_j) = Delta(e_i) Delta(e_j).
    double hom = 0.0;
    const FinStarAlgebra& A = M.as_algebra();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const CMatrix lhs = D * A.mul(A.basis_vector(i), A.basis_vector(j));
            const CMatrix rhs = tensor_mul(M.shape(), D.col(i), D.col(j));
            hom = std::max(hom, (lhs - rhs).max_abs());
        }
    rep.add("delta_homomorphism", hom);

    // Delta is a *-map: Delta ∘ star = (star ⊗ star) ∘ Delta.
    rep.add("delta_star", (D * S - kron(S, S) * D.conjugate()).max_abs());

    // Unitality Delta(1) = 1 ⊗ 1.
    const CMatrix u = M.unit_coords();
    rep.add("delta_unital", (D * u - kron(u, u)).max_abs());

    // Injectivity by numerical rank.
    rep.add("delta_injective", double(n - numeric_rank(D, 1e-9)));

    // Coassociativity (Delta ⊗ id) Delta = (id ⊗ Delta) Delta, streamed
    // column by column so the n^3-row tensor never materializes as a matrix.
    double coassoc = 0.0;
    for (int i = 0; i < n; ++i) {
        std::vector<cplx> left(size_t(n) * n * n, 0.0), right(size_t(n) * n * n, 0.0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const cplx w = D(a * n + b, i);
                if (w == cplx(0.0)) continue;
                for (int pq = 0; pq < n * n; ++pq) {
                    const cplx dva = D(pq, a);
                    if (dva != cplx(0.0)) left[size_t(pq) * n + b] += w * dva;
                    const cplx dvb = D(pq, b);
                    if (dvb != cplx(0.0)) right[size_t(a) * n * n + pq] += w * dvb;
                }
            }
        for (size_t k = 0; k < left.size(); ++k)
            coassoc = std::max(coassoc, std::abs(left[k] - right[k]));
    }
    rep.add("coassociativity", coassoc);

    // kappa axioms.
    double anti = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const CMatrix lhs = K * A.mul(A.basis_vector(i), A.basis_vector(j));
            const CMatrix rhs = A.mul(K.col(j), K.col(i));
            anti = std::max(anti, (lhs - rhs).max_abs());
        }
    rep.add("kappa_antihomomorphism", anti);
    rep.add("kappa_star", (K * S - S * K.conjugate()).max_abs());
    rep.add("kappa_involutive", (K * K - CMatrix::identity(n)).max_abs());

    // Flip axiom (kappa ⊗ kappa) Delta = theta Delta kappa.
    rep.add("flip_axiom", (kron(K, K) * D - flip_matrix(n) * D * K).max_abs());
    return rep;
}

AxiomReport verify_morphism(const HopfMorphism& f) {
    AxiomReport rep;
    const HopfVNAlgebra& Msrc = *f.source;
    const HopfVNAlgebra& Mtgt = *f.target;
    const CMatrix& phi = f.phi;
    const int nsrc = Msrc.dim();

    double mult = 0.0;
    for (int i = 0; i < nsrc; ++i)
        for (int j = 0; j < nsrc; ++j) {
            const CMatrix lhs = phi * Msrc.mul(Msrc.basis_vector(i), Msrc.basis_vector(j));
            const CMatrix rhs = Mtgt.mul(phi.col(i), phi.col(j));
            mult = std::max(mult, (lhs - rhs).max_abs());
        }
    rep.add("multiplicative", mult);
    rep.add("star_hom", (phi * Msrc.star() - Mtgt.star() * phi.conjugate()).max_abs());
    rep.add("delta_compat", (Mtgt.delta() * phi - kron(phi, phi) * Msrc.delta()).max_abs());
    rep.add("kappa_compat", (Mtgt.kappa() * phi - phi * Msrc.kappa()).max_abs());
    return rep;
}

HopfMorphism identity_morphism(const HopfPtr& M) {
    return {M, M, CMatrix::identity(M->dim())};
}

HopfMorphism compose(const HopfMorphism& g, const HopfMorphism& f) {
    if (g.source.get() != f.target.get())
        fail("DimensionMismatch", "morphism composition endpoints do not match");
    return {f.source, g.target, g.phi * f.phi};
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {
json::Value matrix_to_json(const CMatrix& m) {
    json::Value rows = json::Value::array();
    for (int i = 0; i < m.rows(); ++i) {
        json::Value row = json::Value::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push(json::complex_value(m(i, j).real(), m(i, j).imag()));
        rows.push(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json::Value& v, int rows, int cols) {
    CMatrix m(rows, cols);
    if (int(v.size()) != rows) fail("BadSpec", "matrix row count mismatch");
    for (int i = 0; i < rows; ++i) {
        const auto& row = v.items()[i];
        if (int(row.size()) != cols) fail("BadSpec", "matrix column count mismatch");
        for (int j = 0; j < cols; ++j) {
            const auto& z = row.items()[j];
            m(i, j) = cplx(z.items()[0].as_double(), z.items()[1].as_double());
        }
    }
    return m;
}
} // namespace

std::string hopf_to_json(const HopfVNAlgebra& M) {
    const FinStarAlgebra& A = M.as_algebra();
    const int n = M.dim();
    json::Value root = json::Value::object();
    root.set("schema_version", json::Value::integer(1));
    root.set("kind", json::Value::str("hopf_vn_algebra"));
    json::Value sig = json::Value::array();
    for (int d : M.shape().dims) sig.push(json::Value::integer(d));
    root.set("block_signature", std::move(sig));
    json::Value labels = json::Value::array();
    for (const auto& l : M.labels()) labels.push(json::Value::str(l));
    root.set("basis_labels", std::move(labels));

    json::Value structure = json::Value::array();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const cplx val = A.c(i, j, k);
                if (val != cplx(0.0)) {
                    json::Value entry = json::Value::array();
                    entry.push(json::Value::integer(i))
                        .push(json::Value::integer(j))
                        .push(json::Value::integer(k))
                        .push(json::complex_value(val.real(), val.imag()));
                    structure.push(std::move(entry));
                }
            }
    root.set("structure", std::move(structure));

    json::Value unit = json::Value::array();
    const CMatrix u = M.unit_coords();
    for (int i = 0; i < n; ++i) unit.push(json::complex_value(u(i, 0).real(), u(i, 0).imag()));
    root.set("unit", std::move(unit));
    root.set("star", matrix_to_json(M.star()));
    root.set("delta", matrix_to_json(M.delta()));
    root.set("kappa", matrix_to_json(M.kappa()));
    root.set("provenance", json::Value::str(M.provenance()));
    return root.dump(1);
}

HopfPtr hopf_from_json(const std::string& text) {
    json::Value root = json::parse(text);
    BlockShape shape;
    for (const auto& d : root.at("block_signature").items())
        shape.dims.push_back(int(d.as_int()));
    const int n = shape.algebra_dim();
    CMatrix star = matrix_from_json(root.at("star"), n, n);
    CMatrix delta = matrix_from_json(root.at("delta"), n * n, n);
    CMatrix kappa = matrix_from_json(root.at("kappa"), n, n);
    std::string prov = root.find("provenance") ? root.at("provenance").as_string() : "";
    return std::make_shared<HopfVNAlgebra>(std::move(shape), std::move(star), std::move(delta),
                                           std::move(kappa), std::move(prov));
}

} // namespace hopfdual
