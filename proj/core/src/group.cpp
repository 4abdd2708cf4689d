#include "conic/group.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "conic/incidence.hpp"
#include "conic/parallel.hpp"

namespace conic {
namespace {

std::vector<int64_t> prime_divisors(int64_t n) {
    std::vector<int64_t> out;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// GF(q^2) as GF(q)[w]/(w^2 - xi); xi is a nonsquare since it generates the
// multiplicative group of a field of odd order.
struct Quad {
    FieldElem lo, hi;
    friend bool operator==(const Quad&, const Quad&) = default;
};

struct QuadExt {
    const FieldCtx& F;
    FieldElem xi;
    Quad one() const { return {F.one(), F.zero()}; }
    Quad mul(const Quad& x, const Quad& y) const {
        return {F.add(F.mul(x.lo, y.lo), F.mul(xi, F.mul(x.hi, y.hi))),
                F.add(F.mul(x.lo, y.hi), F.mul(x.hi, y.lo))};
    }
    Quad pow(Quad x, int64_t k) const {
        Quad r = one();
        while (k) {
            if (k & 1) r = mul(r, x);
            x = mul(x, x);
            k >>= 1;
        }
        return r;
    }
};

Mat3 mat3_from_sl2(const FieldCtx& F, const Sl2& s) {
    FieldElem a = s.m[0], b = s.m[1], c = s.m[2], d = s.m[3];
    FieldElem two = F.from_residue(2);
    Mat3 m;
    m.at(0, 0) = F.mul(a, a);
    m.at(0, 1) = F.mul(a, b);
    m.at(0, 2) = F.mul(b, b);
    m.at(1, 0) = F.mul(two, F.mul(a, c));
    m.at(1, 1) = F.add(F.mul(a, d), F.mul(b, c));
    m.at(1, 2) = F.mul(two, F.mul(b, d));
    m.at(2, 0) = F.mul(c, c);
    m.at(2, 1) = F.mul(c, d);
    m.at(2, 2) = F.mul(d, d);
    return m;
}

}  // namespace

Mat3 symmetric_square(const FieldCtx& F, FieldElem a, FieldElem b, FieldElem c, FieldElem d) {
    if (F.sub(F.mul(a, d), F.mul(b, c)).v == 0)
        throw std::invalid_argument("singular 2x2 input");
    return mat3_from_sl2(F, Sl2{{a, b, c, d}});
}

Sl2 GroupCtx::normalize(FieldElem a, FieldElem b, FieldElem c, FieldElem d) const {
    const FieldCtx& F = field();
    int64_t half = (F.q() - 1) / 2;
    for (FieldElem x : {a, b, c, d}) {
        if (x.v == 0) continue;
        if (F.dlog(x) < half) return Sl2{{a, b, c, d}};
        return Sl2{{F.neg(a), F.neg(b), F.neg(c), F.neg(d)}};
    }
    throw std::invalid_argument("zero matrix");
}

uint64_t GroupCtx::sl2_key(const Sl2& s) const {
    uint64_t q = uint64_t(plane_->q());
    return ((uint64_t(s.m[0].v) * q + s.m[1].v) * q + s.m[2].v) * q + s.m[3].v;
}

GroupCtx GroupCtx::build(std::shared_ptr<const PlaneCtx> plane, int64_t max_q) {
    if (!plane) throw std::invalid_argument("null plane");
    if (plane->q() > max_q) throw std::invalid_argument("group enumeration guard exceeded");
    GroupCtx G;
    G.plane_ = std::move(plane);
    const FieldCtx& F = G.field();
    int64_t q = F.q();

    // Every determinant-1 pair: a != 0 determines d; a = 0 forces c = -1/b.
    for (int64_t av = 0; av < q; ++av) {
        FieldElem a = F.element(uint32_t(av));
        for (int64_t bv = 0; bv < q; ++bv) {
            FieldElem b = F.element(uint32_t(bv));
            if (av != 0) {
                for (int64_t cv = 0; cv < q; ++cv) {
                    FieldElem c = F.element(uint32_t(cv));
                    FieldElem d = F.mul(F.inv(a), F.add(F.one(), F.mul(b, c)));
                    Sl2 s = G.normalize(a, b, c, d);
                    if (G.index_.emplace(G.sl2_key(s), int32_t(G.elems_.size())).second)
                        G.elems_.push_back(s);
                }
            } else {
                if (bv == 0) continue;
                FieldElem c = F.neg(F.inv(b));
                for (int64_t dv = 0; dv < q; ++dv) {
                    Sl2 s = G.normalize(a, b, c, F.element(uint32_t(dv)));
                    if (G.index_.emplace(G.sl2_key(s), int32_t(G.elems_.size())).second)
                        G.elems_.push_back(s);
                }
            }
        }
    }
    if (int64_t(G.elems_.size()) != q * (q * q - 1) / 2)
        throw std::logic_error("group enumeration produced the wrong order");

    G.m3_.reserve(G.elems_.size());
    for (const Sl2& s : G.elems_) G.m3_.push_back(mat3_from_sl2(F, s));

    G.inv_.resize(G.elems_.size());
    for (size_t i = 0; i < G.elems_.size(); ++i) {
        const Sl2& s = G.elems_[i];
        Sl2 inv = G.normalize(s.m[3], F.neg(s.m[1]), F.neg(s.m[2]), s.m[0]);
        G.inv_[i] = G.index_.at(G.sl2_key(inv));
    }
    G.id_index_ = G.index_.at(G.sl2_key(G.normalize(F.one(), F.zero(), F.zero(), F.one())));

    G.classify();
    return G;
}

int32_t GroupCtx::index_of(const Sl2& s) const {
    auto it = index_.find(sl2_key(s));
    if (it == index_.end()) throw std::invalid_argument("not a group element");
    return it->second;
}

int32_t GroupCtx::multiply(int32_t i, int32_t j) const {
    const FieldCtx& F = field();
    const Sl2& x = elems_[size_t(i)];
    const Sl2& y = elems_[size_t(j)];
    Sl2 s = normalize(F.add(F.mul(x.m[0], y.m[0]), F.mul(x.m[1], y.m[2])),
                      F.add(F.mul(x.m[0], y.m[1]), F.mul(x.m[1], y.m[3])),
                      F.add(F.mul(x.m[2], y.m[0]), F.mul(x.m[3], y.m[2])),
                      F.add(F.mul(x.m[2], y.m[1]), F.mul(x.m[3], y.m[3])));
    return index_.at(sl2_key(s));
}

int32_t GroupCtx::conjugate(int32_t g, int32_t h) const {
    return multiply(multiply(inverse(h), g), h);
}

FieldElem GroupCtx::trace_invariant(int32_t i) const {
    const FieldCtx& F = field();
    FieldElem t = F.add(elems_[size_t(i)].m[0], elems_[size_t(i)].m[3]);
    return F.mul(t, t);
}

void GroupCtx::classify() {
    const FieldCtx& F = field();
    int64_t q = F.q();
    bool q1 = (q % 4 == 1);
    theta_n_ = int(q1 ? (q - 5) / 4 : (q - 3) / 4);
    pi_n_ = int(q1 ? (q - 1) / 4 : (q - 3) / 4);

    // Canonical class order: identity, the two unipotent classes, split
    // semisimple by index, the involution class, nonsplit semisimple by index.
    class_label_.clear();
    class_label_.push_back({ClassTag::Identity, 0});
    class_label_.push_back({ClassTag::UnipotentPlus, 0});
    class_label_.push_back({ClassTag::UnipotentMinus, 0});
    for (int l = 1; l <= theta_n_; ++l) class_label_.push_back({ClassTag::SplitSemisimple, l});
    class_label_.push_back({ClassTag::Involution, 0});
    for (int k = 1; k <= pi_n_; ++k) class_label_.push_back({ClassTag::NonsplitSemisimple, k});
    int nc = int(class_label_.size());

    // Trace invariants of the split family: diag(xi^l, xi^-l).
    std::unordered_map<uint32_t, int> by_trace;
    std::vector<Sl2> reps;
    reps.resize(size_t(nc));
    reps[0] = normalize(F.one(), F.zero(), F.zero(), F.one());
    reps[1] = normalize(F.one(), F.zero(), F.one(), F.one());
    reps[2] = normalize(F.one(), F.zero(), F.xi(), F.one());
    for (int l = 1; l <= theta_n_; ++l) {
        FieldElem t = F.pow(F.xi(), l);
        FieldElem tr = F.add(t, F.inv(t));
        FieldElem theta = F.mul(tr, tr);
        if (F.square_class(F.sub(theta, F.from_residue(4))) != SquareClass::Square)
            throw std::logic_error("split trace invariant not in the expected residue class");
        if (!by_trace.emplace(theta.v, 3 + (l - 1)).second)
            throw std::logic_error("split trace invariants collide");
        reps[size_t(3 + l - 1)] = normalize(t, F.zero(), F.zero(), F.inv(t));
    }
    int inv_cid = 3 + theta_n_;
    reps[size_t(inv_cid)] = normalize(F.zero(), F.neg(F.one()), F.one(), F.zero());

    // Nonsplit family via the order-(q+1) subgroup of GF(q^2)*.
    {
        QuadExt E{F, F.xi()};
        int64_t n2 = q * q - 1;
        auto divs = prime_divisors(n2);
        Quad gen{};
        bool found = false;
        for (int64_t a = 0; a < q && !found; ++a) {
            for (int64_t b = (a == 0 ? 1 : 0); b < q && !found; ++b) {
                Quad x{F.element(uint32_t(a)), F.element(uint32_t(b))};
                bool ok = true;
                for (int64_t d : divs)
                    if (E.pow(x, n2 / d) == E.one()) { ok = false; break; }
                if (ok) { gen = x; found = true; }
            }
        }
        if (!found) throw std::logic_error("no generator of the quadratic extension");
        Quad nu = E.pow(gen, q - 1);
        for (int k = 1; k <= pi_n_; ++k) {
            Quad z = E.pow(nu, k);
            Quad zi = E.pow(nu, q + 1 - k);
            Quad t = {F.add(z.lo, zi.lo), F.add(z.hi, zi.hi)};
            if (t.hi.v != 0) throw std::logic_error("nonsplit trace not in the base field");
            FieldElem pi = F.mul(t.lo, t.lo);
            if (F.square_class(F.sub(pi, F.from_residue(4))) != SquareClass::NonSquare)
                throw std::logic_error("nonsplit trace invariant not in the expected residue class");
            int cid = inv_cid + 1 + (k - 1);
            if (!by_trace.emplace(pi.v, cid).second)
                throw std::logic_error("trace invariants collide");
            reps[size_t(cid)] = normalize(t.lo, F.neg(F.one()), F.one(), F.zero());
        }
    }

    // The unipotent classes split the trace-4 set; separate them by the full
    // conjugation orbit of the first representative.
    std::vector<char> in_plus(elems_.size(), 0);
    {
        int32_t rep = index_.at(sl2_key(reps[1]));
        for (size_t h = 0; h < elems_.size(); ++h)
            in_plus[size_t(conjugate(rep, int32_t(h)))] = 1;
    }

    FieldElem four = F.from_residue(4);
    class_of_.resize(elems_.size());
    class_members_.assign(size_t(nc), {});
    for (size_t i = 0; i < elems_.size(); ++i) {
        int cid;
        if (int32_t(i) == id_index_) {
            cid = 0;
        } else {
            FieldElem T = trace_invariant(int32_t(i));
            if (T.v == 0) {
                cid = inv_cid;
            } else if (T == four) {
                cid = in_plus[i] ? 1 : 2;
            } else {
                auto it = by_trace.find(T.v);
                if (it == by_trace.end()) throw std::logic_error("unclassified trace invariant");
                cid = it->second;
            }
        }
        class_of_[i] = cid;
        class_members_[size_t(cid)].push_back(int32_t(i));
    }

    class_rep_.resize(size_t(nc));
    for (int c = 0; c < nc; ++c) {
        if (class_members_[size_t(c)].empty()) throw std::logic_error("empty conjugacy class");
        class_rep_[size_t(c)] = index_.at(sl2_key(reps[size_t(c)]));
        if (class_of_[size_t(class_rep_[size_t(c)])] != c)
            throw std::logic_error("class representative misclassified");
    }

    // Size profile: 1, (q^2-1)/2 twice, q(q+1) per split class, q(q±1)/2 for
    // the involutions, q(q-1) per nonsplit class.
    std::vector<int64_t> expect(size_t(nc), 0);
    expect[0] = 1;
    expect[1] = expect[2] = (q * q - 1) / 2;
    for (int l = 0; l < theta_n_; ++l) expect[size_t(3 + l)] = q * (q + 1);
    expect[size_t(inv_cid)] = q1 ? q * (q + 1) / 2 : q * (q - 1) / 2;
    for (int k = 0; k < pi_n_; ++k) expect[size_t(inv_cid + 1 + k)] = q * (q - 1);
    for (int c = 0; c < nc; ++c)
        if (int64_t(class_members_[size_t(c)].size()) != expect[size_t(c)])
            throw std::logic_error("conjugacy class sizes do not match the census");

    class_order_.resize(size_t(nc));
    for (int c = 0; c < nc; ++c) {
        int32_t g = class_rep_[size_t(c)];
        int32_t x = g;
        int64_t o = 1;
        while (x != id_index_) {
            x = multiply(x, g);
            ++o;
        }
        class_order_[size_t(c)] = o;
    }
    if (class_order_[size_t(inv_cid)] != 2)
        throw std::logic_error("involution class has the wrong element order");
}

std::string GroupCtx::class_name(int cid) const {
    ClassLabel lab = class_label_[size_t(cid)];
    switch (lab.tag) {
        case ClassTag::Identity: return "identity";
        case ClassTag::UnipotentPlus: return "unipotent+";
        case ClassTag::UnipotentMinus: return "unipotent-";
        case ClassTag::Involution: return "involution";
        case ClassTag::SplitSemisimple: return "split" + std::to_string(lab.index);
        case ClassTag::NonsplitSemisimple: return "nonsplit" + std::to_string(lab.index);
    }
    return "?";
}

int GroupCtx::class_id(ClassLabel lab) const {
    for (int c = 0; c < n_classes(); ++c)
        if (class_label_[size_t(c)] == lab) return c;
    throw std::invalid_argument("no such class");
}

const std::vector<int64_t>& GroupCtx::structure_constants() const {
    std::call_once(lazy_->struct_once, [&] {
        int nc = n_classes();
        lazy_->structc.assign(size_t(nc) * nc * nc, 0);
        for (int k = 0; k < nc; ++k) {
            int32_t zk = class_rep_[size_t(k)];
            for (int i = 0; i < nc; ++i) {
                for (int32_t x : class_members_[size_t(i)]) {
                    int j = class_of_[size_t(multiply(inverse(x), zk))];
                    ++lazy_->structc[(size_t(i) * nc + size_t(j)) * nc + size_t(k)];
                }
            }
        }
    });
    return lazy_->structc;
}

Mat3 GroupCtx::coset_extra() const {
    const FieldCtx& F = field();
    return mat3_diag(F, F.one(), F.inv(F.xi()), F.inv(F.mul(F.xi(), F.xi())));
}

void GroupCtx::ensure_perms() const {
    std::call_once(lazy_->perm_once, [&] {
        auto ext = plane_->external_points();
        int64_t ne = int64_t(ext.size());
        lazy_->eperm.assign(elems_.size() * size_t(ne), 0);
        parallel_for(int64_t(elems_.size()), [&](int64_t h) {
            int32_t* dst = lazy_->eperm.data() + h * ne;
            for (int64_t e = 0; e < ne; ++e)
                dst[e] = plane_->external_ordinal(plane_->act_point(m3_[size_t(h)], ext[size_t(e)]));
        });
    });
}

std::span<const int32_t> GroupCtx::external_perm(int32_t elem) const {
    ensure_perms();
    size_t ne = plane_->external_points().size();
    return {lazy_->eperm.data() + size_t(elem) * ne, ne};
}

std::vector<int32_t> GroupCtx::stab_h(int32_t point) const {
    std::vector<int32_t> out;
    for (size_t h = 0; h < elems_.size(); ++h)
        if (plane_->act_point(m3_[h], point) == point) out.push_back(int32_t(h));
    return out;
}

StabilizerReport GroupCtx::stabilizers(int32_t point) const {
    if (plane_->point_class(point) != PointClass::External)
        throw std::invalid_argument("stabilizer profile needs an external point");
    const FieldCtx& F = field();
    int64_t q = F.q();
    StabilizerReport rep;
    rep.class_counts.assign(size_t(n_classes()), 0);
    for (size_t h = 0; h < elems_.size(); ++h) {
        if (plane_->act_point(m3_[h], point) == point) {
            ++rep.order_h;
            ++rep.class_counts[size_t(class_of_[h])];
        }
    }
    Mat3 t = coset_extra();
    rep.order_g = rep.order_h;
    for (size_t h = 0; h < elems_.size(); ++h) {
        Mat3 m = mat3_mul(F, t, m3_[h]);
        if (plane_->act_point(m, point) == point) ++rep.order_g;
    }

    // Expected profile: one identity, (q±1)/2 involutions, two per split
    // class, nothing unipotent or nonsplit.
    bool ok = rep.order_h == q - 1 && rep.order_g == 2 * (q - 1);
    for (int c = 0; c < n_classes() && ok; ++c) {
        int64_t got = rep.class_counts[size_t(c)];
        switch (class_label_[size_t(c)].tag) {
            case ClassTag::Identity: ok = (got == 1); break;
            case ClassTag::Involution: ok = (got == (q % 4 == 1 ? (q + 1) / 2 : (q - 1) / 2)); break;
            case ClassTag::SplitSemisimple: ok = (got == 2); break;
            default: ok = (got == 0); break;
        }
    }
    rep.profile_ok = ok;
    return rep;
}

OrbitReport GroupCtx::orbit_checks() const {
    const FieldCtx& F = field();
    int64_t q = F.q();
    OrbitReport rep;
    auto fail = [&](const std::string& m) {
        if (rep.first_failure.empty()) rep.first_failure = m;
    };

    std::vector<Mat3> g_mats;
    g_mats.reserve(elems_.size() * 2);
    for (const Mat3& m : m3_) g_mats.push_back(m);
    Mat3 t = coset_extra();
    for (const Mat3& m : m3_) g_mats.push_back(mat3_mul(F, t, m));
    std::vector<Mat3> g_adj;
    g_adj.reserve(g_mats.size());
    for (const Mat3& m : g_mats) g_adj.push_back(mat3_adjugate(F, m));

    auto point_orbit_size = [&](int32_t P) {
        std::vector<char> seen(size_t(plane_->n()), 0);
        int64_t count = 0;
        for (const Mat3& m : g_mats) {
            int32_t img = plane_->act_point(m, P);
            if (!seen[size_t(img)]) { seen[size_t(img)] = 1; ++count; }
        }
        return count;
    };
    auto line_orbit_size = [&](int32_t L) {
        std::vector<char> seen(size_t(plane_->n()), 0);
        int64_t count = 0;
        for (const Mat3& adj : g_adj) {
            int32_t img = plane_->act_line_pre(adj, L);
            if (!seen[size_t(img)]) { seen[size_t(img)] = 1; ++count; }
        }
        return count;
    };

    rep.transitive_points =
        point_orbit_size(plane_->external_points()[0]) == int64_t(plane_->external_points().size()) &&
        point_orbit_size(plane_->internal_points()[0]) == int64_t(plane_->internal_points().size()) &&
        point_orbit_size(plane_->conic_points()[0]) == q + 1;
    if (!rep.transitive_points) fail("full group is not transitive on a point class");

    rep.transitive_lines =
        line_orbit_size(plane_->secant_lines()[0]) == int64_t(plane_->secant_lines().size()) &&
        line_orbit_size(plane_->passant_lines()[0]) == int64_t(plane_->passant_lines().size()) &&
        line_orbit_size(plane_->tangent_lines()[0]) == q + 1;
    if (!rep.transitive_lines) fail("full group is not transitive on a line class");

    rep.stab_orders_ok = true;
    for (int32_t P : plane_->external_points()) {
        int64_t s = 0;
        for (const Mat3& m : g_mats)
            if (plane_->act_point(m, P) == P) ++s;
        if (s != 2 * (q - 1)) {
            rep.stab_orders_ok = false;
            fail("external point stabilizer in the full group has order != 2(q-1)");
            break;
        }
    }

    int32_t P0 = plane_->external_points()[0];
    int32_t L0 = plane_->polarity_point(P0);
    std::vector<size_t> K;
    for (size_t i = 0; i < g_mats.size(); ++i)
        if (plane_->act_point(g_mats[i], P0) == P0) K.push_back(i);

    auto k_orbit = [&](int32_t P) {
        std::vector<int32_t> orb;
        std::vector<char> seen(size_t(plane_->n()), 0);
        for (size_t i : K) {
            int32_t img = plane_->act_point(g_mats[i], P);
            if (!seen[size_t(img)]) { seen[size_t(img)] = 1; orb.push_back(img); }
        }
        return orb;
    };

    int64_t n_int = 0, n_ext = 0, n_abs = 0;
    int32_t first_int = -1, first_ext = -1, first_abs = -1;
    for (int32_t P : plane_->points_on_line(L0)) {
        switch (plane_->point_class(P)) {
            case PointClass::Internal: ++n_int; if (first_int < 0) first_int = P; break;
            case PointClass::External: ++n_ext; if (first_ext < 0) first_ext = P; break;
            case PointClass::Absolute: ++n_abs; if (first_abs < 0) first_abs = P; break;
        }
    }
    rep.k_transitive_polar = int64_t(k_orbit(first_int).size()) == n_int &&
                             int64_t(k_orbit(first_ext).size()) == n_ext &&
                             int64_t(k_orbit(first_abs).size()) == n_abs;
    if (!rep.k_transitive_polar) fail("point stabilizer not transitive on the polar line classes");

    rep.k_point_stab_orders = true;
    for (int32_t P : plane_->points_on_line(L0)) {
        int64_t s = 0;
        for (size_t i : K)
            if (plane_->act_point(g_mats[i], P) == P) ++s;
        int64_t want = plane_->point_class(P) == PointClass::Absolute ? q - 1 : 4;
        if (s != want) {
            rep.k_point_stab_orders = false;
            fail("point stabilizer order on the polar line is off");
            break;
        }
    }

    auto k_line_orbit_size = [&](int32_t L) {
        std::vector<char> seen(size_t(plane_->n()), 0);
        int64_t count = 0;
        for (size_t i : K) {
            int32_t img = plane_->act_line_pre(g_adj[i], L);
            if (!seen[size_t(img)]) { seen[size_t(img)] = 1; ++count; }
        }
        return count;
    };
    int32_t first_sec = -1, first_pas = -1, first_tan = -1;
    int64_t n_sec = 0, n_pas = 0, n_tan = 0;
    for (int32_t L : plane_->lines_through_point(P0)) {
        switch (plane_->line_class(L)) {
            case LineClass::Secant: ++n_sec; if (first_sec < 0) first_sec = L; break;
            case LineClass::Passant: ++n_pas; if (first_pas < 0) first_pas = L; break;
            case LineClass::Tangent: ++n_tan; if (first_tan < 0) first_tan = L; break;
        }
    }
    rep.k_transitive_pencils = k_line_orbit_size(first_sec) == n_sec &&
                               k_line_orbit_size(first_pas) == n_pas &&
                               k_line_orbit_size(first_tan) == n_tan;
    if (!rep.k_transitive_pencils) fail("point stabilizer not transitive on the pencils");

    std::vector<size_t> stab_line;
    for (size_t i = 0; i < g_mats.size(); ++i)
        if (plane_->act_line_pre(g_adj[i], L0) == L0) stab_line.push_back(i);
    rep.polar_stab_equal = (stab_line == K);
    if (!rep.polar_stab_equal) fail("stabilizers of a point and its polar differ");

    rep.ok = rep.transitive_points && rep.transitive_lines && rep.stab_orders_ok &&
             rep.k_transitive_polar && rep.k_transitive_pencils && rep.k_point_stab_orders &&
             rep.polar_stab_equal;
    return rep;
}

std::vector<int32_t> GroupCtx::polar_image_set(int32_t P, int32_t secant_line) const {
    if (plane_->line_class(secant_line) != LineClass::Secant)
        throw std::invalid_argument("target must be a secant line");
    int32_t target = plane_->polarity_line(secant_line);
    std::vector<int32_t> out;
    for (size_t h = 0; h < elems_.size(); ++h)
        if (plane_->act_point(m3_[h], P) == target) out.push_back(int32_t(h));
    return out;
}

std::vector<int32_t> GroupCtx::polar_pencil_set(int32_t P, int32_t Q) const {
    std::vector<int32_t> out;
    for (size_t h = 0; h < elems_.size(); ++h) {
        int32_t img = plane_->act_point(m3_[h], P);  // polar(P)^h = polar(P^h)
        if (plane_->incident(Q, plane_->polarity_point(img))) out.push_back(int32_t(h));
    }
    return out;
}

std::vector<int32_t> GroupCtx::orbit_subset_set(int32_t P, std::span<const char> member_of_e) const {
    std::vector<int32_t> out;
    for (size_t h = 0; h < elems_.size(); ++h) {
        int32_t ord = plane_->external_ordinal(plane_->act_point(m3_[h], P));
        if (ord >= 0 && member_of_e[size_t(ord)]) out.push_back(int32_t(h));
    }
    return out;
}

CardinalityReport GroupCtx::intersection_cardinalities() const {
    ensure_perms();
    const int64_t q = this->q();
    auto ext = plane_->external_points();
    int64_t ne = int64_t(ext.size());
    CardinalityReport rep;

    // Regularity: each external point reaches each external point q-1 times.
    rep.regular_on_externals = true;
    std::vector<int64_t> hist(size_t(ne), 0);
    for (int64_t e = 0; e < ne && rep.regular_on_externals; ++e) {
        std::fill(hist.begin(), hist.end(), 0);
        for (size_t h = 0; h < elems_.size(); ++h) ++hist[size_t(lazy_->eperm[h * size_t(ne) + size_t(e)])];
        for (int64_t r = 0; r < ne; ++r)
            if (hist[size_t(r)] != q - 1) { rep.regular_on_externals = false; break; }
    }

    // Polar-map counts, computed through the honest line action for one point.
    {
        const FieldCtx& F = field();
        int32_t L0 = plane_->polarity_point(ext[0]);
        std::vector<int64_t> lhist(size_t(plane_->n()), int64_t(0));
        for (const Mat3& m : m3_) ++lhist[size_t(plane_->act_line_pre(mat3_adjugate(F, m), L0))];
        rep.polar_map_counts_ok = true;
        for (int32_t L : plane_->secant_lines())
            if (lhist[size_t(L)] != q - 1) { rep.polar_map_counts_ok = false; break; }
    }

    // Pair counts |{h : polar(P)^h passes through Q}| = (q-1)^2/2.
    BitMatrix B = build_B(*plane_);
    std::vector<std::vector<int32_t>> on_perp;
    on_perp.resize(size_t(ne));
    for (int64_t r = 0; r < ne; ++r)
        for (int64_t c = 0; c < ne; ++c)
            if (B.get(r, c)) on_perp[size_t(r)].push_back(int32_t(c));
    rep.pair_counts_ok = true;
    std::vector<int64_t> cnt(size_t(ne), 0);
    for (int64_t e = 0; e < ne && rep.pair_counts_ok; ++e) {
        std::fill(cnt.begin(), cnt.end(), 0);
        for (size_t h = 0; h < elems_.size(); ++h)
            for (int32_t qq : on_perp[size_t(lazy_->eperm[h * size_t(ne) + size_t(e)])]) ++cnt[size_t(qq)];
        for (int64_t r = 0; r < ne; ++r)
            if (cnt[size_t(r)] != (q - 1) * (q - 1) / 2) { rep.pair_counts_ok = false; break; }
    }

    // Subset counts for the neighbor sets of the first few externals.
    rep.subset_counts_ok = true;
    for (int64_t j = 0; j < std::min<int64_t>(ne, 3) && rep.subset_counts_ok; ++j) {
        NeighborSets ns = neighbor_sets(*plane_, ext[size_t(j)]);
        for (const auto* set : {&ns.closed, &ns.complement}) {
            std::vector<char> member(size_t(ne), 0);
            for (int32_t x : *set) member[size_t(x)] = 1;
            int64_t count = 0;
            for (size_t h = 0; h < elems_.size(); ++h)
                if (member[size_t(lazy_->eperm[h * size_t(ne)])]) ++count;
            if (count != (q - 1) * int64_t(set->size())) rep.subset_counts_ok = false;
        }
    }

    rep.ok = rep.regular_on_externals && rep.polar_map_counts_ok && rep.pair_counts_ok &&
             rep.subset_counts_ok;
    return rep;
}

GroupParityReport GroupCtx::parity_profile() const {
    ensure_perms();
    const int64_t q = this->q();
    bool q1 = (q % 4 == 1);
    auto ext = plane_->external_points();
    int64_t ne = int64_t(ext.size());
    int nc = n_classes();
    GroupParityReport rep;

    BitMatrix B = build_B(*plane_);
    BitMatrix W = q1 ? build_D(*plane_) : build_C(*plane_);
    if (!(B == B.transpose()) || !(W == W.transpose()))
        throw std::logic_error("incidence matrices lost symmetry");

    int id_c = 0;
    int up_c = 1, um_c = 2;
    int inv_c = involution_class();
    std::vector<int> theta_ids, pi_ids;
    for (int c = 0; c < nc; ++c) {
        if (class_label_[size_t(c)].tag == ClassTag::SplitSemisimple) theta_ids.push_back(c);
        if (class_label_[size_t(c)].tag == ClassTag::NonsplitSemisimple) pi_ids.push_back(c);
    }

    int64_t wpr = B.words_per_row();
    std::vector<uint8_t> bad(size_t(ne), 0);
    std::vector<std::string> bad_msg;
    bad_msg.resize(size_t(ne));

    parallel_for(ne, [&](int64_t e) {
        // Class-parity bit rows over Q for the polar-image and orbit-membership sets.
        std::vector<uint64_t> par_pol(size_t(nc) * size_t(wpr), 0);
        std::vector<uint64_t> par_orb(size_t(nc) * size_t(wpr), 0);
        for (size_t h = 0; h < elems_.size(); ++h) {
            int32_t r = lazy_->eperm[h * size_t(ne) + size_t(e)];
            int c = class_of_[h];
            auto brow = B.row(r);
            auto wrow = W.row(r);
            uint64_t* dp = par_pol.data() + size_t(c) * size_t(wpr);
            uint64_t* dob = par_orb.data() + size_t(c) * size_t(wpr);
            for (int64_t w = 0; w < wpr; ++w) {
                dp[w] ^= brow[size_t(w)];
                dob[w] ^= wrow[size_t(w)];
            }
        }
        auto bit = [&](const std::vector<uint64_t>& par, int c, int64_t qq) {
            return (par[size_t(c) * size_t(wpr) + size_t(qq >> 6)] >> (qq & 63)) & 1;
        };
        auto fail_here = [&](int64_t qq, uint8_t which, const char* what) {
            bad[size_t(e)] |= which;
            if (bad_msg[size_t(e)].empty()) {
                std::ostringstream os;
                os << what << " at pair (" << e << "," << qq << ")";
                bad_msg[size_t(e)] = os.str();
            }
        };

        for (int64_t qq = 0; qq < ne; ++qq) {
            bool same = (qq == e);
            bool on_polar = B.get(e, qq);
            LineClass join_class = LineClass::Secant;
            if (!same) join_class = plane_->line_class(plane_->join(ext[size_t(e)], ext[size_t(qq)]));

            // polar-image parities: identity, merged unipotent, split, nonsplit
            bool pD = bit(par_pol, id_c, qq);
            bool p4 = bit(par_pol, up_c, qq) ^ bit(par_pol, um_c, qq);
            int odd_theta = 0, odd_pi = 0;
            for (int c : theta_ids) odd_theta += bit(par_pol, c, qq);
            for (int c : pi_ids) odd_pi += bit(par_pol, c, qq);

            if (same) {
                if (pD || p4 || odd_theta || odd_pi) fail_here(qq, 1, "polar-image self parity");
            } else if (q1) {
                if (join_class == LineClass::Passant) {
                    if (pD || p4 || odd_theta || odd_pi) fail_here(qq, 1, "polar-image passant parity");
                } else if (join_class == LineClass::Secant) {
                    if (on_polar) {
                        if (p4 || odd_theta || odd_pi) fail_here(qq, 1, "polar-image polar-secant parity");
                    } else {
                        if (pD || p4 || odd_pi || odd_theta > 2)
                            fail_here(qq, 1, "polar-image secant parity");
                    }
                } else {  // tangent join
                    if (pD || p4 || odd_pi) fail_here(qq, 1, "polar-image tangent parity");
                }
            } else {
                if (join_class == LineClass::Secant) {
                    if (pD || p4 || odd_theta || odd_pi) fail_here(qq, 1, "polar-image secant parity");
                } else if (join_class == LineClass::Passant) {
                    if (on_polar) {
                        if (p4 || odd_theta || odd_pi) fail_here(qq, 1, "polar-image polar-passant parity");
                    } else {
                        if (pD || p4 || odd_theta || odd_pi > 2)
                            fail_here(qq, 1, "polar-image passant parity");
                    }
                } else {
                    if (pD || p4 || odd_theta || odd_pi > 1)
                        fail_here(qq, 1, "polar-image tangent parity");
                }
            }

            // orbit-membership parities
            bool oD = bit(par_orb, id_c, qq);
            bool o4 = bit(par_orb, up_c, qq) ^ bit(par_orb, um_c, qq);
            bool o0 = bit(par_orb, inv_c, qq);
            int oodd_theta = 0, oodd_pi = 0;
            for (int c : theta_ids) oodd_theta += bit(par_orb, c, qq);
            for (int c : pi_ids) oodd_pi += bit(par_orb, c, qq);

            if (same) {
                if (oD || o4 || o0 || oodd_theta || oodd_pi)
                    fail_here(qq, 2, "orbit-membership self parity");
            } else if (q1) {
                if (join_class == LineClass::Passant) {
                    if (o4 || oodd_theta || oodd_pi > 1) fail_here(qq, 2, "orbit-membership passant parity");
                } else if (join_class == LineClass::Secant) {
                    if (oD || o4 || oodd_theta || oodd_pi) fail_here(qq, 2, "orbit-membership secant parity");
                } else {
                    bool allow_d = (q % 8 == 5);
                    if (o4 || oodd_theta || (oD && !allow_d))
                        fail_here(qq, 2, "orbit-membership tangent parity");
                }
            } else {
                if (join_class == LineClass::Secant) {
                    if (o4 || oodd_pi || oodd_theta > 1) fail_here(qq, 2, "orbit-membership secant parity");
                } else if (join_class == LineClass::Passant) {
                    if (oD || o4 || oodd_theta || oodd_pi) fail_here(qq, 2, "orbit-membership passant parity");
                } else {
                    bool allow_d = (q % 8 == 7);
                    if (o4 || oodd_pi || (oD && !allow_d))
                        fail_here(qq, 2, "orbit-membership tangent parity");
                }
            }
        }
    });

    rep.pairs_checked = ne * ne;
    uint8_t any_bad = 0;
    for (int64_t e = 0; e < ne; ++e) {
        if (bad[size_t(e)]) {
            any_bad |= bad[size_t(e)];
            if (rep.first_failure.empty()) rep.first_failure = bad_msg[size_t(e)];
        }
    }
    rep.polar_image_ok = !(any_bad & 1);
    rep.orbit_membership_ok = !(any_bad & 2);
    rep.ok = any_bad == 0;
    return rep;
}

}  // namespace conic
