#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "conic/bitmatrix.hpp"

using namespace conic;

namespace {

BitMatrix random_matrix(int64_t r, int64_t c, std::mt19937& rng, double density = 0.5) {
    BitMatrix m(r, c);
    std::bernoulli_distribution d(density);
    for (int64_t i = 0; i < r; ++i)
        for (int64_t j = 0; j < c; ++j)
            if (d(rng)) m.set(i, j, true);
    return m;
}

BitMatrix naive_mul(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows(), b.cols());
    for (int64_t i = 0; i < a.rows(); ++i)
        for (int64_t j = 0; j < b.cols(); ++j) {
            bool s = false;
            for (int64_t k = 0; k < a.cols(); ++k) s ^= a.get(i, k) && b.get(k, j);
            out.set(i, j, s);
        }
    return out;
}

}  // namespace

TEST_CASE("identity and all-ones basics") {
    std::mt19937 rng(7);
    BitMatrix a = random_matrix(64, 96, rng);
    CHECK(BitMatrix::identity(64) * a == a);
    // J^2 = J for odd n (odd row sums), zero for even n
    BitMatrix j7 = BitMatrix::all_ones(7);
    CHECK(j7 * j7 == j7);
    BitMatrix j8 = BitMatrix::all_ones(8);
    CHECK((j8 * j8).is_zero());
    CHECK(BitMatrix::identity(10).rank() == 10);
    CHECK(BitMatrix::all_ones(8).rank() == 1);
}

TEST_CASE("product matches the schoolbook oracle") {
    std::mt19937 rng(42);
    for (int rep = 0; rep < 5; ++rep) {
        BitMatrix a = random_matrix(64, 64, rng);
        BitMatrix b = random_matrix(64, 64, rng);
        CHECK(a * b == naive_mul(a, b));
    }
    // non-square shapes
    BitMatrix a = random_matrix(17, 70, rng);
    BitMatrix b = random_matrix(70, 33, rng);
    CHECK(a * b == naive_mul(a, b));
    CHECK_THROWS_AS(b * a, std::invalid_argument);
}

TEST_CASE("powers") {
    std::mt19937 rng(5);
    BitMatrix a = random_matrix(16, 16, rng);
    BitMatrix a5 = a * a * a * a * a;
    CHECK(a.pow(5) == a5);
    CHECK(a.pow(1) == a);
    CHECK_THROWS_AS(a.pow(0), std::invalid_argument);
    CHECK_THROWS_AS(random_matrix(3, 4, rng).pow(2), std::invalid_argument);
}

TEST_CASE("rank-nullity and nullspace correctness") {
    std::mt19937 rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        BitMatrix a = random_matrix(40, 55, rng, 0.3);
        BitMatrix ns = a.nullspace_basis();
        CHECK(a.rank() + ns.rows() == a.cols());
        CHECK(ns.rank() == ns.rows());  // basis vectors independent
        // A v^T = 0 for every basis vector
        CHECK((a * ns.transpose()).is_zero());
    }
}

TEST_CASE("rank is permutation invariant") {
    std::mt19937 rng(13);
    BitMatrix a = random_matrix(48, 48, rng, 0.2);
    int64_t r = a.rank();
    std::vector<int32_t> rows(48), cols(48);
    std::iota(rows.begin(), rows.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    for (int rep = 0; rep < 5; ++rep) {
        std::shuffle(rows.begin(), rows.end(), rng);
        std::shuffle(cols.begin(), cols.end(), rng);
        CHECK(a.submatrix(rows, cols).rank() == r);
    }
}

TEST_CASE("row space utilities") {
    std::mt19937 rng(17);
    BitMatrix a = random_matrix(30, 50, rng, 0.25);
    BitMatrix basis = a.row_space_basis();
    CHECK(basis.rows() == a.rank());
    CHECK(rowspace_contains(basis, a));
    CHECK(rowspace_contains(a, basis));
    CHECK(rowspace_intersection_dim(a, a) == a.rank());
    BitMatrix empty_meet = random_matrix(30, 50, rng, 0.25);
    int64_t inter = rowspace_intersection_dim(a, empty_meet);
    CHECK(inter >= a.rank() + empty_meet.rank() - 50);
    CHECK(inter <= std::min(a.rank(), empty_meet.rank()));
}

TEST_CASE("transpose and stacking") {
    std::mt19937 rng(23);
    BitMatrix a = random_matrix(20, 70, rng);
    CHECK(a.transpose().transpose() == a);
    BitMatrix st = BitMatrix::vstack(a, a);
    CHECK(st.rows() == 40);
    CHECK(st.rank() == a.rank());
}

TEST_CASE("prime field ranks") {
    PFMatrix d(4, 4, 7);
    for (int i = 0; i < 3; ++i) d.set(i, i, i + 1);
    CHECK(d.rank() == 3);

    // 2x2 with det = 0 mod 5 but nonzero over Z
    PFMatrix s(2, 2, 5);
    s.set(0, 0, 1);
    s.set(0, 1, 2);
    s.set(1, 0, 3);
    s.set(1, 1, 6);  // det = 0 mod 5? 6-6=0 -> rank 1
    CHECK(s.rank() == 1);

    std::mt19937 rng(31);
    BitMatrix b = random_matrix(24, 24, rng);
    PFMatrix pb = PFMatrix::from_bits(b, 3);
    CHECK(pb.rank() <= 24);
    CHECK(pb.p() == 3);
}
