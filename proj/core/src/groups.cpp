#include "hopfdual/groups.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "hopfdual/report.hpp"

namespace hopfdual {

bool FiniteGroup::abelian() const {
    for (int a = 0; a < order; ++a)
        for (int b = a + 1; b < order; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

int FiniteGroup::element_order(int g) const {
    int k = 1, cur = g;
    while (cur != identity) {
        cur = mul(cur, g);
        ++k;
        if (k > order) fail("BadSpec", "element order exceeded group order");
    }
    return k;
}

void FiniteGroup::verify() const {
    const int n = order;
    if (int(table.size()) != n * n) fail("BadSpec", "Cayley table size");
    for (int a = 0; a < n; ++a) {
        if (mul(identity, a) != a || mul(a, identity) != a)
            fail("BadSpec", "identity law fails");
        if (mul(a, inverse[a]) != identity || mul(inverse[a], a) != identity)
            fail("BadSpec", "inverse law fails");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int cc = 0; cc < n; ++cc)
                if (mul(mul(a, b), cc) != mul(a, mul(b, cc)))
                    fail("BadSpec", "associativity fails");
}

namespace {

FiniteGroup finalize(FiniteGroup g) {
    const int n = g.order;
    g.inverse.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.table[a * n + b] == g.identity) g.inverse[a] = b;
    g.verify();
    return g;
}

} // namespace

FiniteGroup cyclic_group(int n) {
    if (n < 1) fail("BadSpec", "cyclic group needs n >= 1");
    FiniteGroup g;
    g.order = n;
    g.identity = 0;
    g.name = "Z" + std::to_string(n);
    g.table.resize(n * n);
    for (int a = 0; a < n; ++a) {
        g.labels.push_back(std::to_string(a));
        for (int b = 0; b < n; ++b) g.table[a * n + b] = (a + b) % n;
    }
    return finalize(std::move(g));
}

FiniteGroup symmetric_group(int n) {
    if (n < 1 || n > 4) fail("BadSpec", "symmetric group supported for 1 <= n <= 4");
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    FiniteGroup g;
    g.order = int(perms.size());
    g.name = "S" + std::to_string(n);
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < g.order; ++i) {
        index[perms[i]] = i;
        std::string l;
        for (int v : perms[i]) l += std::to_string(v + 1);
        g.labels.push_back(l);
    }
    std::vector<int> idp(n);
    std::iota(idp.begin(), idp.end(), 0);
    g.identity = index[idp];
    g.table.resize(g.order * g.order);
    for (int a = 0; a < g.order; ++a)
        for (int b = 0; b < g.order; ++b) {
            std::vector<int> comp(n); // (a*b)(x) = a(b(x))
            for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
            g.table[a * g.order + b] = index[comp];
        }
    return finalize(std::move(g));
}

FiniteGroup dihedral_group(int n) {
    if (n < 1) fail("BadSpec", "dihedral group needs n >= 1");
    // Elements r^k (0..n-1) then s r^k (n..2n-1); s r^k s = r^{-k}.
    const int ord = 2 * n;
    FiniteGroup g;
    g.order = ord;
    g.identity = 0;
    g.name = "D" + std::to_string(n);
    g.table.resize(ord * ord);
    for (int i = 0; i < ord; ++i)
        g.labels.push_back(i < n ? "r" + std::to_string(i) : "sr" + std::to_string(i - n));
    auto idx = [&](int flip, int rot) { return flip * n + ((rot % n) + n) % n; };
    for (int a = 0; a < ord; ++a)
        for (int b = 0; b < ord; ++b) {
            const int fa = a / n, ra = a % n, fb = b / n, rb = b % n;
            // (s^fa r^ra)(s^fb r^rb) = s^{fa+fb} r^{(-1)^{fb} ra + rb}
            const int flip = (fa + fb) % 2;
            const int rot = (fb ? -ra : ra) + rb;
            g.table[a * ord + b] = idx(flip, rot);
        }
    return finalize(std::move(g));
}

FiniteGroup quaternion_group() {
    // 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k
    FiniteGroup g;
    g.order = 8;
    g.identity = 0;
    g.name = "Q8";
    g.labels = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    // Encode elements as (sign, axis) with axes 0=1, 1=i, 2=j, 3=k.
    auto enc = [&](int sign, int axis) { return axis == 0 ? (sign ? 1 : 0) : (2 * axis + (sign ? 1 : 0)); };
    auto dec_axis = [&](int e) { return e < 2 ? 0 : e / 2; };
    auto dec_sign = [&](int e) { return e < 2 ? e : e % 2; };
    static const int axmul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int axsign_fix[4][4] = {
        {0, 0, 0, 0},
        {0, 1, 0, 1}, // i*i=-1, i*j=+k, i*k=-j
        {0, 1, 1, 0}, // j*i=-k, j*j=-1, j*k=+i
        {0, 0, 1, 1}, // k*i=+j, k*j=-i, k*k=-1
    };
    g.table.resize(64);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const int ax = dec_axis(a), bx = dec_axis(b);
            const int sign = (dec_sign(a) + dec_sign(b) + axsign_fix[ax][bx]) % 2;
            g.table[a * 8 + b] = enc(sign, axmul[ax][bx]);
        }
    return finalize(std::move(g));
}

FiniteGroup product_group(const FiniteGroup& G, const FiniteGroup& H) {
    FiniteGroup g;
    g.order = G.order * H.order;
    g.identity = G.identity * H.order + H.identity;
    g.name = G.name + "x" + H.name;
    g.table.resize(g.order * g.order);
    for (int a1 = 0; a1 < G.order; ++a1)
        for (int a2 = 0; a2 < H.order; ++a2)
            g.labels.push_back("(" + G.labels[a1] + "," + H.labels[a2] + ")");
    for (int a1 = 0; a1 < G.order; ++a1)
        for (int a2 = 0; a2 < H.order; ++a2)
            for (int b1 = 0; b1 < G.order; ++b1)
                for (int b2 = 0; b2 < H.order; ++b2) {
                    const int a = a1 * H.order + a2, b = b1 * H.order + b2;
                    g.table[a * g.order + b] = G.mul(a1, b1) * H.order + H.mul(a2, b2);
                }
    return finalize(std::move(g));
}

FiniteGroup make_group(const GroupSpec& spec) {
    switch (spec.type) {
        case GroupSpec::Type::Cyclic: return cyclic_group(spec.n);
        case GroupSpec::Type::Sym: return symmetric_group(spec.n);
        case GroupSpec::Type::Dihedral: return dihedral_group(spec.n);
        case GroupSpec::Type::Quaternion: return quaternion_group();
        case GroupSpec::Type::Product: {
            if (spec.factors.empty()) fail("BadSpec", "product needs factors");
            FiniteGroup g = make_group(spec.factors[0]);
            for (size_t i = 1; i < spec.factors.size(); ++i)
                g = product_group(g, make_group(spec.factors[i]));
            return g;
        }
        case GroupSpec::Type::Twisted:
            fail("BadSpec", "twisted spec builds a Hopf algebra, not a group");
    }
    fail("BadSpec", "unknown group spec");
}

std::string GroupSpec::to_json() const {
    json::Value v = json::Value::object();
    switch (type) {
        case Type::Cyclic: v.set("type", json::Value::str("cyclic")); v.set("n", json::Value::integer(n)); break;
        case Type::Sym: v.set("type", json::Value::str("sym")); v.set("n", json::Value::integer(n)); break;
        case Type::Dihedral: v.set("type", json::Value::str("dihedral")); v.set("n", json::Value::integer(n)); break;
        case Type::Quaternion: v.set("type", json::Value::str("quaternion")); break;
        case Type::Twisted: v.set("type", json::Value::str("twisted")); v.set("n", json::Value::integer(n)); break;
        case Type::Product: {
            v.set("type", json::Value::str("product"));
            json::Value f = json::Value::array();
            for (const auto& s : factors) f.push(json::parse(s.to_json()));
            v.set("factors", std::move(f));
            break;
        }
    }
    return v.dump();
}

std::string GroupSpec::describe() const {
    switch (type) {
        case Type::Cyclic: return "Z" + std::to_string(n);
        case Type::Sym: return "S" + std::to_string(n);
        case Type::Dihedral: return "D" + std::to_string(n);
        case Type::Quaternion: return "Q8";
        case Type::Twisted: return "twisted(Z" + std::to_string(n) + ")";
        case Type::Product: {
            std::string s;
            for (size_t i = 0; i < factors.size(); ++i) {
                if (i) s += "x";
                s += factors[i].describe();
            }
            return s;
        }
    }
    return "?";
}

namespace {
GroupSpec spec_from_value(const json::Value& v) {
    GroupSpec s;
    const std::string& t = v.at("type").as_string();
    auto need_n = [&](int lo, int hi) {
        const long long n = v.at("n").as_int();
        if (n < lo || n > hi) fail("BadSpec", "spec field n out of range");
        s.n = int(n);
    };
    if (t == "cyclic") {
        s.type = GroupSpec::Type::Cyclic;
        need_n(1, 64);
    } else if (t == "sym") {
        s.type = GroupSpec::Type::Sym;
        need_n(1, 4);
    } else if (t == "dihedral") {
        s.type = GroupSpec::Type::Dihedral;
        need_n(1, 12);
    } else if (t == "quaternion") {
        s.type = GroupSpec::Type::Quaternion;
    } else if (t == "twisted") {
        s.type = GroupSpec::Type::Twisted;
        need_n(1, 64);
    } else if (t == "product") {
        s.type = GroupSpec::Type::Product;
        for (const auto& f : v.at("factors").items()) s.factors.push_back(spec_from_value(f));
        if (s.factors.empty()) fail("BadSpec", "product needs at least one factor");
    } else {
        fail("BadSpec", "unknown group spec type '" + t + "'");
    }
    return s;
}
} // namespace

GroupSpec parse_group_spec(const std::string& json_text) {
    return spec_from_value(json::parse(json_text));
}

// ---------------------------------------------------------------------------
// Hopf-von Neumann algebras of a group
// ---------------------------------------------------------------------------

HopfPtr function_algebra(const FiniteGroup& G) {
    const int n = G.order;
    BlockShape shape;
    shape.dims.assign(n, 1);
    CMatrix star = CMatrix::identity(n); // coordinatewise conjugation
    CMatrix delta(n * n, n);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) delta(s * n + t, G.mul(s, t)) = 1.0;
    CMatrix kappa(n, n);
    for (int t = 0; t < n; ++t) kappa(G.inv(t), t) = 1.0;
    return std::make_shared<HopfVNAlgebra>(shape, star, delta, kappa,
                                           "function_algebra(" + G.name + ")");
}

HopfPtr twisted_hopf(int n) {
    if (n < 1) fail("BadSpec", "twisted_hopf needs n >= 1");
    const FiniteGroup G = cyclic_group(n);
    BlockShape shape;
    shape.dims.assign(n, 1);
    CMatrix star(n, n); // e_g -> e_{-g}, antilinear
    for (int gidx = 0; gidx < n; ++gidx) star((n - gidx) % n, gidx) = 1.0;
    CMatrix delta(n * n, n);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) delta(s * n + t, (s + t) % n) = 1.0;
    CMatrix kappa = CMatrix::identity(n);
    return std::make_shared<HopfVNAlgebra>(shape, star, delta, kappa,
                                           "twisted_hopf(" + std::to_string(n) + ")");
}

FinStarAlgebra group_star_algebra(const FiniteGroup& G) {
    const int n = G.order;
    FinStarAlgebra A;
    A.dim = n;
    A.labels.resize(n);
    for (int t = 0; t < n; ++t) A.labels[t] = "d_" + G.labels[t];
    A.structure.assign(size_t(n) * n * n, 0.0);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) A.c(s, t, G.mul(s, t)) = 1.0;
    A.star = CMatrix(n, n);
    for (int t = 0; t < n; ++t) A.star(G.inv(t), t) = 1.0;
    CMatrix unit(n, 1);
    unit(G.identity, 0) = 1.0;
    A.unit = unit;
    return A;
}

HopfPtr group_vn_algebra(const FiniteGroup& G, std::uint64_t seed,
                         std::vector<CMatrix>* lambda_coords) {
    const FinStarAlgebra CG = group_star_algebra(G);
    Envelope env = cstar_envelope(CG, seed);
    const int n = env.algebra.dim;
    if (n != G.order)
        fail("SplitFailure", "group algebra envelope has wrong dimension");

    // lambda(t) in block coordinates; they span, so Delta and kappa transport.
    CMatrix L(n, G.order);
    for (int t = 0; t < G.order; ++t) L.set_col(t, env.embedding.col(t));
    CMatrix rhs_delta(n * n, G.order);
    for (int t = 0; t < G.order; ++t) {
        const CMatrix lt = L.col(t);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rhs_delta(i * n + j, t) = lt(i, 0) * lt(j, 0);
    }
    CMatrix rhs_kappa(n, G.order);
    for (int t = 0; t < G.order; ++t) rhs_kappa.set_col(t, L.col(G.inv(t)));

    // Solve Delta * L = rhs_delta and kappa * L = rhs_kappa.
    const CMatrix Lt = L.transpose();
    CMatrix delta = least_squares(Lt, rhs_delta.transpose()).solution.transpose();
    CMatrix kappa = least_squares(Lt, rhs_kappa.transpose()).solution.transpose();
    if ((delta * L - rhs_delta).max_abs() > 1e-8 || (kappa * L - rhs_kappa).max_abs() > 1e-8)
        fail("SplitFailure", "group generators failed to span the envelope");

    BlockShape shape;
    shape.dims = env.block_dims;
    auto M = std::make_shared<HopfVNAlgebra>(shape, shape.canonical_star(), delta, kappa,
                                             "group_vn_algebra(" + G.name + ")");
    if (lambda_coords) {
        lambda_coords->clear();
        for (int t = 0; t < G.order; ++t) lambda_coords->push_back(L.col(t));
    }
    return M;
}

HopfPtr group_vn_algebra(const FiniteGroup& G, std::uint64_t seed) {
    return group_vn_algebra(G, seed, nullptr);
}

// ---------------------------------------------------------------------------
// Character groups, quotients, isomorphism testing
// ---------------------------------------------------------------------------

FiniteGroup dual_group(const FiniteGroup& G, std::uint64_t seed) {
    if (!G.abelian()) fail("NotAbelian", "dual group needs an abelian input");
    const int n = G.order;
    const FinStarAlgebra CG = group_star_algebra(G);
    std::vector<AlgebraRep> chars = irreducible_star_reps(CG, seed);
    if (int(chars.size()) != n) fail("SplitFailure", "abelian group has wrong character count");

    // Snap character values to exact roots of unity: chi(t)^ord(t) = 1.
    const double two_pi = 2.0 * 3.14159265358979323846;
    std::vector<std::vector<int>> expo(n, std::vector<int>(n)); // expo[c][t] over lcm order
    int exponent = 1;
    for (int t = 0; t < n; ++t) exponent = std::lcm(exponent, G.element_order(t));
    for (int cidx = 0; cidx < n; ++cidx) {
        for (int t = 0; t < n; ++t) {
            const cplx v = chars[cidx].mats[t](0, 0);
            const int m = G.element_order(t);
            const double arg = std::arg(v);
            int k = int(std::lround(arg * m / two_pi));
            k = ((k % m) + m) % m;
            const cplx exact = std::polar(1.0, two_pi * k / m);
            if (std::abs(v - exact) > 1e-6) fail("SplitFailure", "character value failed to snap");
            expo[cidx][t] = k * (exponent / m);
        }
    }
    // Canonical order: lexicographic by exponent vector.
    std::vector<int> order_idx(n);
    std::iota(order_idx.begin(), order_idx.end(), 0);
    std::sort(order_idx.begin(), order_idx.end(),
              [&](int a, int b) { return expo[a] < expo[b]; });
    std::vector<std::vector<int>> rows;
    for (int i : order_idx) rows.push_back(expo[i]);

    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index[rows[i]] = i;
    FiniteGroup D;
    D.order = n;
    D.name = "dual(" + G.name + ")";
    D.table.resize(n * n);
    for (int i = 0; i < n; ++i) {
        std::string l = "chi" + std::to_string(i);
        D.labels.push_back(l);
        for (int j = 0; j < n; ++j) {
            std::vector<int> prod(n);
            for (int t = 0; t < n; ++t) prod[t] = (rows[i][t] + rows[j][t]) % exponent;
            auto it = index.find(prod);
            if (it == index.end()) fail("SplitFailure", "character product left the table");
            D.table[i * n + j] = it->second;
        }
    }
    D.identity = index.at(std::vector<int>(n, 0));
    return finalize(std::move(D));
}

namespace {

std::vector<int> subgroup_closure(const FiniteGroup& G, std::vector<int> gens) {
    std::set<int> seen(gens.begin(), gens.end());
    seen.insert(G.identity);
    std::vector<int> queue(seen.begin(), seen.end());
    while (!queue.empty()) {
        const int a = queue.back();
        queue.pop_back();
        for (int b : std::vector<int>(seen.begin(), seen.end())) {
            for (int cand : {G.mul(a, b), G.mul(b, a), G.inv(a)}) {
                if (seen.insert(cand).second) queue.push_back(cand);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<int> minimal_generators(const FiniteGroup& G) {
    std::vector<int> gens;
    std::vector<int> have{G.identity};
    std::set<int> haveset(have.begin(), have.end());
    while (int(haveset.size()) < G.order) {
        for (int g = 0; g < G.order; ++g)
            if (!haveset.count(g)) {
                gens.push_back(g);
                break;
            }
        have = subgroup_closure(G, gens);
        haveset = std::set<int>(have.begin(), have.end());
    }
    return gens;
}

bool extend_isomorphism(const FiniteGroup& G, const FiniteGroup& H, const std::vector<int>& gens,
                        size_t pos, std::vector<int>& img) {
    if (pos == gens.size()) {
        // Build the full map by closure and verify it is a bijective hom.
        std::vector<int> phi(G.order, -1);
        phi[G.identity] = H.identity;
        std::vector<std::pair<int, int>> frontier{{G.identity, H.identity}};
        for (size_t i = 0; i < gens.size(); ++i) {
            if (phi[gens[i]] != -1 && phi[gens[i]] != img[i]) return false;
            phi[gens[i]] = img[i];
            frontier.emplace_back(gens[i], img[i]);
        }
        bool grown = true;
        while (grown) {
            grown = false;
            for (int a = 0; a < G.order; ++a) {
                if (phi[a] == -1) continue;
                for (int b = 0; b < G.order; ++b) {
                    if (phi[b] == -1) continue;
                    const int gab = G.mul(a, b), hab = H.mul(phi[a], phi[b]);
                    if (phi[gab] == -1) {
                        phi[gab] = hab;
                        grown = true;
                    } else if (phi[gab] != hab) {
                        return false;
                    }
                }
            }
        }
        std::vector<bool> hit(H.order, false);
        for (int a = 0; a < G.order; ++a) {
            if (phi[a] == -1) return false;
            if (hit[phi[a]]) return false;
            hit[phi[a]] = true;
        }
        return true;
    }
    const int g = gens[pos];
    const int og = G.element_order(g);
    for (int h = 0; h < H.order; ++h) {
        if (H.element_order(h) != og) continue;
        img[pos] = h;
        if (extend_isomorphism(G, H, gens, pos + 1, img)) return true;
    }
    return false;
}

} // namespace

bool are_isomorphic(const FiniteGroup& G, const FiniteGroup& H) {
    if (G.order != H.order) return false;
    std::multiset<int> og, oh;
    for (int a = 0; a < G.order; ++a) og.insert(G.element_order(a));
    for (int a = 0; a < H.order; ++a) oh.insert(H.element_order(a));
    if (og != oh) return false;
    const std::vector<int> gens = minimal_generators(G);
    std::vector<int> img(gens.size(), -1);
    return extend_isomorphism(G, H, gens, 0, img);
}

std::vector<int> commutator_subgroup(const FiniteGroup& G) {
    std::vector<int> gens;
    for (int a = 0; a < G.order; ++a)
        for (int b = 0; b < G.order; ++b)
            gens.push_back(G.mul(G.mul(a, b), G.inv(G.mul(b, a))));
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return subgroup_closure(G, gens);
}

FiniteGroup quotient_group(const FiniteGroup& G, const std::vector<int>& normal_subgroup) {
    std::set<int> N(normal_subgroup.begin(), normal_subgroup.end());
    std::vector<int> coset_of(G.order, -1);
    std::vector<int> reps;
    for (int a = 0; a < G.order; ++a) {
        if (coset_of[a] != -1) continue;
        const int id = int(reps.size());
        reps.push_back(a);
        for (int h : N) coset_of[G.mul(a, h)] = id;
    }
    FiniteGroup Q;
    Q.order = int(reps.size());
    Q.name = G.name + "/N";
    Q.identity = coset_of[G.identity];
    Q.table.resize(Q.order * Q.order);
    for (int i = 0; i < Q.order; ++i) {
        Q.labels.push_back("[" + G.labels[reps[i]] + "]");
        for (int j = 0; j < Q.order; ++j) Q.table[i * Q.order + j] = coset_of[G.mul(reps[i], reps[j])];
    }
    return finalize(std::move(Q));
}

HopfMorphism function_pullback(const HopfPtr& CH, const HopfPtr& CG, const FiniteGroup& G,
                               const FiniteGroup& H, const std::vector<int>& q) {
    if (int(q.size()) != G.order) fail("BadSpec", "quotient map size mismatch");
    CMatrix phi(G.order, H.order);
    for (int g = 0; g < G.order; ++g) phi(g, q[g]) = 1.0; // e_h -> sum_{q(g)=h} e_g
    (void)H;
    return {CH, CG, phi};
}

} // namespace hopfdual
