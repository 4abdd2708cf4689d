#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "conic/field.hpp"

using namespace conic;

namespace {

// brute-force square set {y^2 : y != 0}
std::set<uint32_t> square_set(const FieldCtx& F) {
    std::set<uint32_t> s;
    for (int64_t v = 1; v < F.q(); ++v) {
        FieldElem y = F.element(uint32_t(v));
        s.insert(F.mul(y, y).v);
    }
    return s;
}

// schoolbook polynomial multiplication oracle for the log-table product
FieldElem naive_mul(const FieldCtx& F, FieldElem a, FieldElem b) {
    auto ca = F.coeffs(a), cb = F.coeffs(b);
    int e = F.e();
    int64_t p = F.p();
    std::vector<int64_t> prod(size_t(2 * e - 1), 0);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) prod[size_t(i + j)] = (prod[size_t(i + j)] + ca[size_t(i)] * cb[size_t(j)]) % p;
    const auto& mod = F.modulus();
    for (int i = 2 * e - 2; i >= e; --i) {
        int64_t c = prod[size_t(i)];
        if (!c) continue;
        prod[size_t(i)] = 0;
        for (int j = 0; j < e; ++j)
            prod[size_t(i - e + j)] = ((prod[size_t(i - e + j)] - c * mod[size_t(j)]) % p + p) % p;
    }
    prod.resize(size_t(e));
    return F.from_coeffs(prod);
}

}  // namespace

TEST_CASE("prime field construction picks the least primitive root") {
    FieldCtx F = FieldCtx::make(5, 1);
    CHECK(F.q() == 5);
    CHECK(F.xi().v == 2);  // 2 has order 4 mod 5
    int64_t o = 1;
    FieldElem x = F.xi();
    while (x != F.one()) {
        x = F.mul(x, F.xi());
        ++o;
    }
    CHECK(o == 4);
}

TEST_CASE("explicit GF(9) modulus with primitive x") {
    std::vector<int64_t> mod{2, 1, 1};  // x^2 + x + 2
    FieldCtx F = FieldCtx::make(3, 2, &mod);
    CHECK(F.q() == 9);
    // x is primitive: exhaustive powering hits all 8 nonzero elements
    std::set<uint32_t> seen;
    FieldElem x = F.xi();
    FieldElem cur = F.one();
    for (int i = 0; i < 8; ++i) {
        cur = F.mul(cur, x);
        seen.insert(cur.v);
    }
    CHECK(seen.size() == 8);
    CHECK(cur == F.one());
}

TEST_CASE("rejected constructions") {
    CHECK_THROWS_AS(FieldCtx::make(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx::make(9, 1), std::invalid_argument);   // not prime
    CHECK_THROWS_AS(FieldCtx::make(3, 0), std::invalid_argument);
    std::vector<int64_t> red{1, 0, 1};  // x^2 + 1 has root 2 mod 5
    CHECK_THROWS_AS(FieldCtx::make(5, 2, &red), std::invalid_argument);
    std::vector<int64_t> nonmonic{1, 1, 2};
    CHECK_THROWS_AS(FieldCtx::make(5, 2, &nonmonic), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx::make(3, 13), std::invalid_argument);  // 3^13 > 2^20
    CHECK_THROWS_AS(FieldCtx::from_order(15), std::invalid_argument);
    CHECK_THROWS_AS(FieldCtx::from_order(8), std::invalid_argument);
}

TEST_CASE("high-degree moduli are certified by the unit group") {
    // for degree > 4 irreducibility is certified by finding an element of
    // multiplicative order q-1; x^5 + 2x + 1 is irreducible over GF(3)
    std::vector<int64_t> good{1, 2, 0, 0, 0, 1};
    FieldCtx F = FieldCtx::make(3, 5, &good);
    CHECK(F.q() == 243);
    CHECK(F.pow(F.xi(), 242) == F.one());
    CHECK(F.pow(F.xi(), 121) != F.one());
    // x^5 + x = x (x^2+x-1)(x^2-x-1) is reducible: no full-order unit exists
    std::vector<int64_t> bad{0, 1, 0, 0, 0, 1};
    CHECK_THROWS_AS(FieldCtx::make(3, 5, &bad), std::invalid_argument);
}

TEST_CASE("from_order factors prime powers") {
    FieldCtx F = FieldCtx::from_order(25);
    CHECK(F.p() == 5);
    CHECK(F.e() == 2);
    FieldCtx G = FieldCtx::from_order(13);
    CHECK(G.p() == 13);
    CHECK(G.e() == 1);
}

TEST_CASE("square classification agrees with brute force") {
    for (int64_t q : {5, 7, 9, 11, 13, 25, 27, 49, 81, 121, 125}) {
        FieldCtx F = FieldCtx::from_order(q);
        auto sq = square_set(F);
        CHECK(int64_t(sq.size()) == (q - 1) / 2);
        for (int64_t v = 0; v < q; ++v) {
            FieldElem x = F.element(uint32_t(v));
            SquareClass c = F.square_class(x);
            if (v == 0)
                CHECK(c == SquareClass::Zero);
            else
                CHECK((c == SquareClass::Square) == (sq.count(x.v) > 0));
        }
    }
}

TEST_CASE("specific square examples in GF(7)") {
    FieldCtx F = FieldCtx::make(7, 1);
    CHECK(F.square_class(F.from_residue(2)) == SquareClass::Square);     // {1,2,4}
    CHECK(F.square_class(F.from_residue(3)) == SquareClass::NonSquare);
    CHECK(F.square_class(F.zero()) == SquareClass::Zero);
}

TEST_CASE("shifted residue counts") {
    CHECK(FieldCtx::from_order(13).residue_shift_counts() == std::array<int64_t, 4>{2, 3, 3, 3});
    CHECK(FieldCtx::from_order(7).residue_shift_counts() == std::array<int64_t, 4>{1, 1, 2, 1});
    CHECK(FieldCtx::from_order(5).residue_shift_counts() == std::array<int64_t, 4>{0, 1, 1, 1});
    // the closed forms, across both residue classes of q
    for (int64_t q : {9, 11, 17, 19, 23, 25, 27, 29, 31, 37, 49, 81, 121, 125}) {
        auto c = FieldCtx::from_order(q).residue_shift_counts();
        if (q % 4 == 1) {
            CHECK(c == std::array<int64_t, 4>{(q - 5) / 4, (q - 1) / 4, (q - 1) / 4, (q - 1) / 4});
        } else {
            CHECK(c == std::array<int64_t, 4>{(q - 3) / 4, (q - 3) / 4, (q + 1) / 4, (q - 3) / 4});
        }
    }
}

TEST_CASE("field axioms hold on full enumerations") {
    for (int64_t q : {5, 9, 27, 49}) {
        FieldCtx F = FieldCtx::from_order(q);
        for (int64_t v = 1; v < q; ++v) {
            FieldElem x = F.element(uint32_t(v));
            CHECK(F.mul(x, F.inv(x)) == F.one());
            CHECK(F.add(x, F.neg(x)) == F.zero());
        }
        CHECK(F.pow(F.xi(), q - 1) == F.one());
        for (int64_t d = 1; d < q - 1; ++d) {
            if ((q - 1) % d != 0) continue;  // proper divisors only
            CHECK(F.pow(F.xi(), d) != F.one());
        }
    }
}

TEST_CASE("table product matches schoolbook polynomial product") {
    for (int64_t q : {9, 27, 25}) {
        FieldCtx F = FieldCtx::from_order(q);
        for (int64_t a = 0; a < q; ++a)
            for (int64_t b = 0; b < q; ++b) {
                FieldElem x = F.element(uint32_t(a)), y = F.element(uint32_t(b));
                CHECK(F.mul(x, y) == naive_mul(F, x, y));
            }
    }
}

TEST_CASE("coefficient encoding round trip") {
    FieldCtx F = FieldCtx::from_order(27);
    for (int64_t v = 0; v < 27; ++v) {
        FieldElem x = F.element(uint32_t(v));
        CHECK(F.from_coeffs(F.coeffs(x)) == x);
    }
    CHECK(F.from_residue(-1) == F.neg(F.one()));
    CHECK(F.from_residue(4) == F.add(F.from_residue(2), F.from_residue(2)));
}

TEST_CASE("power edge cases") {
    FieldCtx F = FieldCtx::make(7, 1);
    CHECK(F.pow(F.zero(), 0) == F.one());
    CHECK(F.pow(F.zero(), 3) == F.zero());
    CHECK_THROWS_AS(F.pow(F.zero(), -1), std::domain_error);
    CHECK_THROWS_AS(F.inv(F.zero()), std::domain_error);
    CHECK(F.pow(F.from_residue(3), -1) == F.inv(F.from_residue(3)));
}
