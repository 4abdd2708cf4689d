#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "conic/cyclotomic.hpp"

namespace conic {

/// GF(2^k) as GF(2)[x]/(f), elements as coefficient bitmasks (bit i = coeff
/// of x^i). k <= 32. Addition is xor.
class GF2k {
public:
    GF2k() = default;
    GF2k(int k, uint64_t modulus_bits) : k_(k), f_(modulus_bits) {}
    int k() const { return k_; }
    uint64_t modulus_bits() const { return f_; }
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t pow(uint32_t a, uint64_t n) const;
    uint32_t inv(uint32_t a) const;

private:
    int k_ = 0;
    uint64_t f_ = 0;
};

/// Returns the `which`-th (lexicographically, coefficients read as the integer
/// sum c_i 2^i) irreducible factor over GF(2) of the M-th cyclotomic
/// polynomial, M odd. All factors share degree k = ord_M(2).
struct CyclotomicFactor {
    uint64_t poly_bits = 0;
    int degree = 0;
    int total_factors = 0;
};
CyclotomicFactor cyclotomic_factor_mod2(int64_t M, int which);

/// Largest residue degree the GF(2^k) machinery supports.
inline constexpr int kMaxResidueDegree = 30;
/// ord of 2 modulo the odd part of N, i.e. the degree of the residue field a
/// BrauerReduction for conductor N would use. Cheap feasibility probe.
int residue_field_degree(int64_t N);

/// Residue map from Z[zeta_N] onto GF(2^k) killing the 2-primary part of the
/// root group: with N = 2^a * M (M odd), k = ord_M(2), the map sends zeta_N to
/// g^u where g = x mod f is a fixed primitive M-th root of unity in GF(2^k)
/// and u = (2^a)^-1 mod M. `which_factor` selects the maximal ideal.
class BrauerReduction {
public:
    static BrauerReduction make(int64_t N, int which_factor = 0);

    int64_t n() const { return n_; }
    int64_t odd_part() const { return m_; }
    int two_exponent() const { return a_; }
    int k() const { return field_.k(); }
    const GF2k& field() const { return field_; }
    uint64_t factor_bits() const { return field_.modulus_bits(); }

    /// Image of a cyclotomic integer in GF(2^k).
    uint32_t reduce(const CycInt& x) const;

    /// Coefficients over zeta_M^0..zeta_M^(M-1) of the normalized trace of x
    /// onto Q(zeta_M); equals x itself whenever x lies in Z[zeta_M].
    std::vector<int64_t> project_odd_part(const CycInt& x) const;
    /// Re-embeds such a coefficient vector into Z[zeta_N] (zeta_M = zeta_N^(2^a)).
    CycInt embed_odd_part(const Cyclotomic& ring, std::span<const int64_t> vec_m) const;

private:
    int64_t n_ = 0, m_ = 0;
    int a_ = 0;
    int64_t u_ = 0, v_ = 0;  // u*2^a + v*M = 1
    GF2k field_;
    std::vector<uint32_t> root_pow_;  // t -> g^(u*t mod M), t < N
};

/// Unramified 2-adic lift (Z/2^P)[x]/(F) of GF(2^k) = GF(2)[x]/(f), with F the
/// Hensel lift of f along x^M - 1, so x has exact multiplicative order M.
class GaloisRing {
public:
    static GaloisRing make(const BrauerReduction& br, int precision_bits);

    int precision() const { return prec_; }
    int k() const { return k_; }
    /// Evaluates sum(vec_m[t] * x^t) in the ring; coefficients mod 2^P.
    std::vector<uint32_t> eval_odd_vector(std::span<const int64_t> vec_m) const;
    /// Minimal 2-adic valuation over the coordinates (prec_ if all zero).
    int valuation(std::span<const uint32_t> x) const;
    /// (x / 2^shift) mod 2 as a GF(2^k) element; valuation(x) must be >= shift.
    uint32_t shift_to_residue(std::span<const uint32_t> x, int shift) const;

private:
    int prec_ = 0, k_ = 0;
    int64_t m_ = 0;
    uint32_t mask_ = 0;
    std::vector<uint32_t> modulus_;           // lifted f, ascending, monic, length k+1
    std::vector<std::vector<uint32_t>> xpow_;  // x^t mod modulus, t < M
};

}  // namespace conic
