#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "conic/field.hpp"
#include "conic/plane.hpp"

using namespace conic;

namespace {

std::shared_ptr<const PlaneCtx> make(int64_t q) {
    auto F = std::make_shared<FieldCtx>(FieldCtx::from_order(q));
    return std::make_shared<PlaneCtx>(PlaneCtx::build(F));
}

Triple tr(const FieldCtx& F, int64_t a, int64_t b, int64_t c) {
    return {F.from_residue(a), F.from_residue(b), F.from_residue(c)};
}

Mat3 random_invertible(const PlaneCtx& P, std::mt19937& rng) {
    const FieldCtx& F = P.field();
    std::uniform_int_distribution<int64_t> d(0, F.q() - 1);
    while (true) {
        Mat3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(i, j) = F.element(uint32_t(d(rng)));
        if (mat3_det(F, m).v != 0) return m;
    }
}

}  // namespace

TEST_CASE("census matches the closed forms") {
    auto p5 = make(5);
    CHECK(p5->n() == 31);
    PlaneCensus c5 = p5->census();
    CHECK(c5.absolute_points == 6);
    CHECK(c5.external_points == 15);
    CHECK(c5.internal_points == 10);

    PlaneCensus c7 = make(7)->census();
    CHECK(c7.secant_lines == 28);
    CHECK(c7.passant_lines == 21);
    CHECK(c7.tangent_lines == 8);

    CHECK(make(9)->census().external_points == 45);
}

TEST_CASE("incidence form") {
    auto p = make(5);
    const FieldCtx& F = p->field();
    int32_t P = p->locate_point(tr(F, 0, 1, 0));
    CHECK_FALSE(p->incident(P, p->locate_line(tr(F, 0, 1, 0))));
    CHECK(p->incident(P, p->locate_line(tr(F, 1, 0, 0))));
    // every line carries q+1 points, pairwise incident
    for (int32_t L = 0; L < p->n(); ++L) {
        auto pts = p->points_on_line(L);
        CHECK(pts.size() == 6);
        std::set<int32_t> uniq(pts.begin(), pts.end());
        CHECK(uniq.size() == 6);
        for (int32_t Q : pts) CHECK(p->incident(Q, L));
    }
}

TEST_CASE("collineations preserve incidence") {
    auto p = make(9);
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int32_t> dp(0, p->n() - 1);
    for (int rep = 0; rep < 1000; ++rep) {
        Mat3 g = random_invertible(*p, rng);
        int32_t P = dp(rng), L = dp(rng);
        CHECK(p->incident(P, L) == p->incident(p->act_point(g, P), p->act_line(g, L)));
    }
    Mat3 id = mat3_identity(p->field());
    for (int32_t P = 0; P < p->n(); ++P) CHECK(p->act_point(id, P) == P);
}

TEST_CASE("singular matrices are rejected for the line action") {
    auto p = make(5);
    Mat3 z;  // zero matrix
    CHECK_THROWS_AS(p->act_line(z, 0), std::invalid_argument);
}

TEST_CASE("polarity closed form and involution") {
    auto p7 = make(7);
    const FieldCtx& F7 = p7->field();
    int32_t P = p7->locate_point(tr(F7, 1, 2, 3));
    CHECK(p7->polarity_point(P) == p7->locate_line(tr(F7, 3, 3, 1)));  // [z,-2y,x], -4 = 3 mod 7

    for (int64_t q : {5, 7, 9}) {
        auto p = make(q);
        for (int32_t i = 0; i < p->n(); ++i) {
            CHECK(p->polarity_line(p->polarity_point(i)) == i);
            // class swap under the polarity
            PointClass pc = p->point_class(i);
            LineClass lc = p->line_class(p->polarity_point(i));
            if (pc == PointClass::External) CHECK(lc == LineClass::Secant);
            if (pc == PointClass::Internal) CHECK(lc == LineClass::Passant);
            if (pc == PointClass::Absolute) CHECK(lc == LineClass::Tangent);
        }
    }
}

TEST_CASE("point and line classification examples") {
    auto p = make(5);
    const FieldCtx& F = p->field();
    CHECK(p->point_class(p->locate_point(tr(F, 0, 1, 0))) == PointClass::External);
    CHECK(p->point_class(p->locate_point(tr(F, 0, 0, 1))) == PointClass::Absolute);
    CHECK(p->line_class(p->locate_line(tr(F, 0, 1, 0))) == LineClass::Secant);
    // the conic is exactly {(1,t,t^2)} ∪ {(0,0,1)}
    std::set<int32_t> conic(p->conic_points().begin(), p->conic_points().end());
    CHECK(conic.size() == 6);
    for (int64_t t = 0; t < 5; ++t) {
        FieldElem te = F.element(uint32_t(t));
        CHECK(conic.count(p->locate_point({F.one(), te, F.mul(te, te)})) == 1);
    }
    CHECK(conic.count(p->locate_point(tr(F, 0, 0, 1))) == 1);
}

TEST_CASE("incidence table profiles") {
    for (int64_t q : {5, 7, 9}) {
        auto p = make(q);
        CHECK(p->verify_incidence_tables().ok);
    }
    // spot profiles
    auto p5 = make(5);
    for (int32_t L : p5->secant_lines()) {
        int64_t a = 0, e = 0, i = 0;
        for (int32_t P : p5->points_on_line(L)) {
            if (p5->point_class(P) == PointClass::Absolute) ++a;
            if (p5->point_class(P) == PointClass::External) ++e;
            if (p5->point_class(P) == PointClass::Internal) ++i;
        }
        CHECK(a == 2);
        CHECK(e == 2);
        CHECK(i == 2);
    }
    auto p7 = make(7);
    for (int32_t L : p7->passant_lines()) {
        int64_t e = 0, i = 0;
        for (int32_t P : p7->points_on_line(L)) {
            if (p7->point_class(P) == PointClass::External) ++e;
            if (p7->point_class(P) == PointClass::Internal) ++i;
        }
        CHECK(e == 4);
        CHECK(i == 4);
    }
    auto p9 = make(9);
    for (int32_t P : p9->external_points()) {
        int64_t t = 0, s = 0, pa = 0;
        for (int32_t L : p9->lines_through_point(P)) {
            if (p9->line_class(L) == LineClass::Tangent) ++t;
            if (p9->line_class(L) == LineClass::Secant) ++s;
            if (p9->line_class(L) == LineClass::Passant) ++pa;
        }
        CHECK(t == 2);
        CHECK(s == 4);
        CHECK(pa == 4);
    }
}

TEST_CASE("polar meet classes") {
    // all four cases, both residue classes of q
    auto expected = [](int64_t q, PointClass pc, LineClass lc) {
        bool one = (q % 4 == 1);
        if (pc == PointClass::Internal)
            return (lc == LineClass::Passant) == one ? PointClass::External : PointClass::Internal;
        return (lc == LineClass::Passant) == one ? PointClass::Internal : PointClass::External;
    };
    for (int64_t q : {5, 7, 13}) {
        auto p = make(q);
        for (int32_t P = 0; P < p->n(); ++P) {
            if (p->point_class(P) == PointClass::Absolute) continue;
            for (int32_t L : p->lines_through_point(P)) {
                if (p->line_class(L) == LineClass::Tangent) continue;
                if (p->polarity_point(P) == L) continue;
                CHECK(p->perp_meet_class(P, L) == expected(q, p->point_class(P), p->line_class(L)));
            }
        }
    }
    auto p = make(7);
    int32_t conic_pt = p->conic_points()[0];
    CHECK_THROWS_AS(p->perp_meet_class(conic_pt, p->lines_through_point(conic_pt)[0]),
                    std::invalid_argument);
    int32_t ext = p->external_points()[0];
    for (int32_t L : p->lines_through_point(ext))
        if (p->line_class(L) == LineClass::Tangent)
            CHECK_THROWS_AS(p->perp_meet_class(ext, L), std::invalid_argument);
    // a line not through the point
    for (int32_t L = 0; L < p->n(); ++L)
        if (!p->incident(ext, L) && p->line_class(L) == LineClass::Secant) {
            CHECK_THROWS_AS(p->perp_meet_class(ext, L), std::invalid_argument);
            break;
        }
}

TEST_CASE("polar images of a polar pencil") {
    // for external P, the polars of the external points on the polar line of P
    // are exactly the secants through P
    for (int64_t q : {5, 7, 9}) {
        auto p = make(q);
        for (int32_t P : p->external_points()) {
            int32_t L = p->polarity_point(P);
            std::set<int32_t> images;
            for (int32_t Q : p->points_on_line(L))
                if (p->point_class(Q) == PointClass::External)
                    images.insert(p->polarity_point(Q));
            std::set<int32_t> secants;
            for (int32_t M : p->lines_through_point(P))
                if (p->line_class(M) == LineClass::Secant) secants.insert(M);
            CHECK(images == secants);
        }
    }
}

TEST_CASE("join and meet") {
    auto p = make(9);
    std::mt19937 rng(99);
    std::uniform_int_distribution<int32_t> d(0, p->n() - 1);
    for (int rep = 0; rep < 200; ++rep) {
        int32_t a = d(rng), b = d(rng);
        if (a == b) continue;
        int32_t L = p->join(a, b);
        CHECK(p->incident(a, L));
        CHECK(p->incident(b, L));
    }
    CHECK_THROWS_AS(p->join(3, 3), std::invalid_argument);
}

TEST_CASE("plane guard") {
    auto F = std::make_shared<FieldCtx>(FieldCtx::make(1031, 1));
    CHECK_THROWS_AS(PlaneCtx::build(F), std::invalid_argument);
}
