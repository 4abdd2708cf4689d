#include "conic/plane.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace conic {

const char* to_string(PointClass c) {
    switch (c) {
        case PointClass::Internal: return "internal";
        case PointClass::Absolute: return "absolute";
        case PointClass::External: return "external";
    }
    return "?";
}

const char* to_string(LineClass c) {
    switch (c) {
        case LineClass::Passant: return "passant";
        case LineClass::Tangent: return "tangent";
        case LineClass::Secant: return "secant";
    }
    return "?";
}

Mat3 mat3_identity(const FieldCtx& F) {
    Mat3 m;
    m.at(0, 0) = m.at(1, 1) = m.at(2, 2) = F.one();
    return m;
}

Mat3 mat3_diag(const FieldCtx& F, FieldElem a, FieldElem b, FieldElem c) {
    Mat3 m;
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    m.at(2, 2) = c;
    (void)F;
    return m;
}

Mat3 mat3_mul(const FieldCtx& F, const Mat3& A, const Mat3& B) {
    Mat3 C;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            FieldElem s = F.zero();
            for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(A.at(i, k), B.at(k, j)));
            C.at(i, j) = s;
        }
    return C;
}

FieldElem mat3_det(const FieldCtx& F, const Mat3& A) {
    auto m = [&](int r, int c) { return A.at(r, c); };
    FieldElem t0 = F.mul(m(0, 0), F.sub(F.mul(m(1, 1), m(2, 2)), F.mul(m(1, 2), m(2, 1))));
    FieldElem t1 = F.mul(m(0, 1), F.sub(F.mul(m(1, 0), m(2, 2)), F.mul(m(1, 2), m(2, 0))));
    FieldElem t2 = F.mul(m(0, 2), F.sub(F.mul(m(1, 0), m(2, 1)), F.mul(m(1, 1), m(2, 0))));
    return F.add(F.sub(t0, t1), t2);
}

Mat3 mat3_adjugate(const FieldCtx& F, const Mat3& A) {
    auto m = [&](int r, int c) { return A.at(r, c); };
    auto cof = [&](int r0, int c0, int r1, int c1) {
        return F.sub(F.mul(m(r0, c0), m(r1, c1)), F.mul(m(r0, c1), m(r1, c0)));
    };
    Mat3 adj;
    adj.at(0, 0) = cof(1, 1, 2, 2);
    adj.at(0, 1) = F.neg(cof(0, 1, 2, 2));
    adj.at(0, 2) = cof(0, 1, 1, 2);
    adj.at(1, 0) = F.neg(cof(1, 0, 2, 2));
    adj.at(1, 1) = cof(0, 0, 2, 2);
    adj.at(1, 2) = F.neg(cof(0, 0, 1, 2));
    adj.at(2, 0) = cof(1, 0, 2, 1);
    adj.at(2, 1) = F.neg(cof(0, 0, 2, 1));
    adj.at(2, 2) = cof(0, 0, 1, 1);
    return adj;
}

uint64_t PlaneCtx::key(const Triple& t) const {
    uint64_t q = uint64_t(field_->q());
    return (uint64_t(t[0].v) * q + t[1].v) * q + t[2].v;
}

Triple PlaneCtx::normalize(const Triple& t) const {
    const FieldCtx& F = *field_;
    for (int i = 0; i < 3; ++i) {
        if (t[size_t(i)].v != 0) {
            FieldElem s = F.inv(t[size_t(i)]);
            return {F.mul(s, t[0]), F.mul(s, t[1]), F.mul(s, t[2])};
        }
    }
    throw std::invalid_argument("zero triple");
}

PlaneCtx PlaneCtx::build(std::shared_ptr<const FieldCtx> field) {
    if (!field) throw std::invalid_argument("null field");
    if (field->q() > 1023) throw std::invalid_argument("plane guard: q must be <= 1023");
    PlaneCtx P;
    P.field_ = std::move(field);
    const FieldCtx& F = *P.field_;
    int64_t q = F.q();
    int64_t n = q * q + q + 1;

    P.points_.reserve(size_t(n));
    for (int64_t y = 0; y < q; ++y)
        for (int64_t z = 0; z < q; ++z)
            P.points_.push_back({F.one(), F.element(uint32_t(y)), F.element(uint32_t(z))});
    for (int64_t z = 0; z < q; ++z)
        P.points_.push_back({F.zero(), F.one(), F.element(uint32_t(z))});
    P.points_.push_back({F.zero(), F.zero(), F.one()});
    std::sort(P.points_.begin(), P.points_.end(), [&](const Triple& a, const Triple& b) {
        return P.key(a) < P.key(b);
    });
    P.index_.reserve(size_t(n) * 2);
    for (int32_t i = 0; i < n; ++i) P.index_.emplace(P.key(P.points_[size_t(i)]), i);

    // Point classes from the quadratic form X1^2 - X0*X2; line classes from
    // the dual discriminant b1^2 - 4 b0 b2.
    P.pclass_.resize(size_t(n));
    P.lclass_.resize(size_t(n));
    FieldElem four = F.from_residue(4);
    for (int32_t i = 0; i < n; ++i) {
        const Triple& t = P.points_[size_t(i)];
        SquareClass sp = F.square_class(F.sub(F.mul(t[1], t[1]), F.mul(t[0], t[2])));
        P.pclass_[size_t(i)] = sp == SquareClass::Zero      ? PointClass::Absolute
                               : sp == SquareClass::Square  ? PointClass::External
                                                            : PointClass::Internal;
        SquareClass sl = F.square_class(
            F.sub(F.mul(t[1], t[1]), F.mul(four, F.mul(t[0], t[2]))));
        P.lclass_[size_t(i)] = sl == SquareClass::Zero      ? LineClass::Tangent
                               : sl == SquareClass::Square  ? LineClass::Secant
                                                            : LineClass::Passant;
    }

    auto fill_class = [&](auto pred, std::vector<int32_t>& list, std::vector<int32_t>& ord) {
        ord.assign(size_t(n), -1);
        for (int32_t i = 0; i < n; ++i)
            if (pred(i)) {
                ord[size_t(i)] = int32_t(list.size());
                list.push_back(i);
            }
    };
    fill_class([&](int32_t i) { return P.pclass_[size_t(i)] == PointClass::Absolute; }, P.absolute_, P.abs_ord_);
    fill_class([&](int32_t i) { return P.pclass_[size_t(i)] == PointClass::Internal; }, P.internal_, P.int_ord_);
    fill_class([&](int32_t i) { return P.pclass_[size_t(i)] == PointClass::External; }, P.external_, P.ext_ord_);
    fill_class([&](int32_t i) { return P.lclass_[size_t(i)] == LineClass::Tangent; }, P.tangent_, P.tan_ord_);
    fill_class([&](int32_t i) { return P.lclass_[size_t(i)] == LineClass::Passant; }, P.passant_, P.pas_ord_);
    fill_class([&](int32_t i) { return P.lclass_[size_t(i)] == LineClass::Secant; }, P.secant_, P.sec_ord_);

    // Incidence lists: solutions of b.x = 0 parameterized from a basis pair.
    auto solve = [&](const Triple& b) {
        Triple u, v;
        if (b[0].v != 0) {
            u = {F.neg(b[1]), F.one(), F.zero()};
            v = {F.neg(b[2]), F.zero(), F.one()};
        } else if (b[1].v != 0) {
            u = {F.one(), F.zero(), F.zero()};
            v = {F.zero(), F.neg(b[2]), F.one()};
        } else {
            u = {F.one(), F.zero(), F.zero()};
            v = {F.zero(), F.one(), F.zero()};
        }
        std::vector<int32_t> out;
        out.reserve(size_t(q) + 1);
        for (int64_t t = 0; t < q; ++t) {
            FieldElem s = F.element(uint32_t(t));
            Triple w = {F.add(u[0], F.mul(s, v[0])), F.add(u[1], F.mul(s, v[1])),
                        F.add(u[2], F.mul(s, v[2]))};
            out.push_back(P.index_.at(P.key(P.normalize(w))));
        }
        out.push_back(P.index_.at(P.key(P.normalize(v))));
        std::sort(out.begin(), out.end());
        return out;
    };
    P.on_line_.resize(size_t(n) * size_t(q + 1));
    P.through_pt_.resize(size_t(n) * size_t(q + 1));
    for (int32_t i = 0; i < n; ++i) {
        auto sol = solve(P.points_[size_t(i)]);
        std::copy(sol.begin(), sol.end(), P.on_line_.begin() + size_t(i) * size_t(q + 1));
        std::copy(sol.begin(), sol.end(), P.through_pt_.begin() + size_t(i) * size_t(q + 1));
    }

    // Polarity tables. -2y comes from field negation; p odd keeps 2 invertible.
    P.ppol_.resize(size_t(n));
    P.lpol_.resize(size_t(n));
    FieldElem two = F.from_residue(2);
    for (int32_t i = 0; i < n; ++i) {
        const Triple& t = P.points_[size_t(i)];
        Triple img = {t[2], F.neg(F.mul(two, t[1])), t[0]};
        P.ppol_[size_t(i)] = P.index_.at(P.key(P.normalize(img)));
    }
    for (int32_t i = 0; i < n; ++i) P.lpol_[size_t(P.ppol_[size_t(i)])] = i;
    for (int32_t i = 0; i < n; ++i) {
        if (P.ppol_[size_t(P.lpol_[size_t(i)])] != i)
            throw std::logic_error("polarity is not an involution");
    }
    return P;
}

int32_t PlaneCtx::locate_point(const Triple& raw) const {
    auto it = index_.find(key(normalize(raw)));
    if (it == index_.end()) throw std::logic_error("triple not indexed");
    return it->second;
}

int32_t PlaneCtx::locate_line(const Triple& raw) const { return locate_point(raw); }

std::span<const int32_t> PlaneCtx::points_on_line(int32_t L) const {
    size_t w = size_t(q() + 1);
    return {on_line_.data() + size_t(L) * w, w};
}

std::span<const int32_t> PlaneCtx::lines_through_point(int32_t P) const {
    size_t w = size_t(q() + 1);
    return {through_pt_.data() + size_t(P) * w, w};
}

int32_t PlaneCtx::act_point(const Mat3& g, int32_t Pt) const {
    const FieldCtx& F = *field_;
    const Triple& a = points_[size_t(Pt)];
    Triple img;
    for (int j = 0; j < 3; ++j) {
        FieldElem s = F.zero();
        for (int i = 0; i < 3; ++i) s = F.add(s, F.mul(a[size_t(i)], g.at(i, j)));
        img[size_t(j)] = s;
    }
    return index_.at(key(normalize(img)));
}

int32_t PlaneCtx::act_line_pre(const Mat3& adj_g, int32_t L) const {
    const FieldCtx& F = *field_;
    const Triple& b = points_[size_t(L)];
    Triple img;
    for (int i = 0; i < 3; ++i) {
        FieldElem s = F.zero();
        for (int j = 0; j < 3; ++j) s = F.add(s, F.mul(adj_g.at(i, j), b[size_t(j)]));
        img[size_t(i)] = s;
    }
    return index_.at(key(normalize(img)));
}

int32_t PlaneCtx::act_line(const Mat3& g, int32_t L) const {
    const FieldCtx& F = *field_;
    if (mat3_det(F, g).v == 0) throw std::invalid_argument("singular matrix");
    return act_line_pre(mat3_adjugate(F, g), L);
}

int32_t PlaneCtx::join(int32_t P1, int32_t P2) const {
    const FieldCtx& F = *field_;
    if (P1 == P2) throw std::invalid_argument("join of equal points");
    const Triple& a = points_[size_t(P1)];
    const Triple& b = points_[size_t(P2)];
    Triple w = {F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])),
                F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
                F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))};
    return index_.at(key(normalize(w)));
}

int32_t PlaneCtx::meet(int32_t L1, int32_t L2) const { return join(L1, L2); }

PlaneCensus PlaneCtx::census() const {
    PlaneCensus c;
    c.internal_points = int64_t(internal_.size());
    c.absolute_points = int64_t(absolute_.size());
    c.external_points = int64_t(external_.size());
    c.passant_lines = int64_t(passant_.size());
    c.tangent_lines = int64_t(tangent_.size());
    c.secant_lines = int64_t(secant_.size());
    return c;
}

IncidenceTableReport PlaneCtx::verify_incidence_tables() const {
    IncidenceTableReport rep;
    int64_t q = this->q();
    auto fail = [&](const std::string& msg) {
        if (rep.first_failure.empty()) rep.first_failure = msg;
    };
    // Per line: (absolute, external, internal) counts must be
    // tangent (1, q, 0), secant (2, (q-1)/2, (q-1)/2), passant (0, (q+1)/2, (q+1)/2).
    for (int32_t L = 0; L < n(); ++L) {
        int64_t a = 0, e = 0, i = 0;
        for (int32_t P : points_on_line(L)) {
            switch (pclass_[size_t(P)]) {
                case PointClass::Absolute: ++a; break;
                case PointClass::External: ++e; break;
                case PointClass::Internal: ++i; break;
            }
        }
        bool ok = false;
        switch (lclass_[size_t(L)]) {
            case LineClass::Tangent: ok = (a == 1 && e == q && i == 0); break;
            case LineClass::Secant: ok = (a == 2 && e == (q - 1) / 2 && i == (q - 1) / 2); break;
            case LineClass::Passant: ok = (a == 0 && e == (q + 1) / 2 && i == (q + 1) / 2); break;
        }
        if (!ok) {
            std::ostringstream os;
            os << "line " << L << " (" << to_string(lclass_[size_t(L)]) << ") profile ("
               << a << "," << e << "," << i << ")";
            fail(os.str());
        }
        ++rep.lines_checked;
    }
    // Dual profile through every point: (tangent, secant, passant) counts.
    for (int32_t P = 0; P < n(); ++P) {
        int64_t t = 0, s = 0, pa = 0;
        for (int32_t L : lines_through_point(P)) {
            switch (lclass_[size_t(L)]) {
                case LineClass::Tangent: ++t; break;
                case LineClass::Secant: ++s; break;
                case LineClass::Passant: ++pa; break;
            }
        }
        bool ok = false;
        switch (pclass_[size_t(P)]) {
            case PointClass::Absolute: ok = (t == 1 && s == q && pa == 0); break;
            case PointClass::External: ok = (t == 2 && s == (q - 1) / 2 && pa == (q - 1) / 2); break;
            case PointClass::Internal: ok = (t == 0 && s == (q + 1) / 2 && pa == (q + 1) / 2); break;
        }
        if (!ok) {
            std::ostringstream os;
            os << "point " << P << " (" << to_string(pclass_[size_t(P)]) << ") profile ("
               << t << "," << s << "," << pa << ")";
            fail(os.str());
        }
        ++rep.points_checked;
    }
    rep.ok = rep.first_failure.empty();
    return rep;
}

PointClass PlaneCtx::perp_meet_class(int32_t P, int32_t L) const {
    if (pclass_[size_t(P)] == PointClass::Absolute)
        throw std::invalid_argument("P lies on the conic");
    if (lclass_[size_t(L)] == LineClass::Tangent)
        throw std::invalid_argument("tangent line");
    if (!incident(P, L)) throw std::invalid_argument("P is not on the line");
    int32_t perp = polarity_point(P);
    if (perp == L) throw std::invalid_argument("line equals the polar of P");
    return pclass_[size_t(meet(perp, L))];
}

}  // namespace conic
