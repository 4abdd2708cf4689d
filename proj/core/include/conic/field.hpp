#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace conic {

/// Element of GF(p^e), stored as the integer encoding sum(c_i * p^i) of its
/// polynomial-basis coordinates (ascending degree). Elements are totally
/// ordered by this encoding; every enumeration in the library uses that order.
struct FieldElem {
    uint32_t v = 0;
    friend constexpr bool operator==(FieldElem, FieldElem) = default;
    friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

enum class SquareClass : uint8_t { Zero, Square, NonSquare };

/// Exact arithmetic context for GF(p^e), q = p^e odd, q <= 2^20.
///
/// Multiplication, inversion and powering go through discrete-log tables
/// built eagerly at construction; addition is digit-wise mod p (with a flat
/// q x q table for small q). The context is immutable after construction and
/// safe to share across threads.
class FieldCtx {
public:
    /// Builds GF(p^e). With no modulus: degree 1 uses x - r (r the least
    /// primitive root mod p); higher degrees use a fixed table of primitive
    /// polynomials covering q in {9,25,27,49,81,121,125,169}. An explicit
    /// modulus must be monic of degree e (coefficients ascending); it is
    /// rejected if reducible.
    static FieldCtx make(int64_t p, int e, const std::vector<int64_t>* modulus = nullptr);

    /// Factors q = p^e and delegates to make(). Rejects even or non-prime-power q.
    static FieldCtx from_order(int64_t q, const std::vector<int64_t>* modulus = nullptr);

    int64_t p() const { return p_; }
    int e() const { return e_; }
    int64_t q() const { return q_; }
    const std::vector<int64_t>& modulus() const { return mod_; }

    FieldElem zero() const { return {0}; }
    FieldElem one() const { return {1}; }
    FieldElem xi() const { return xi_; }  ///< fixed primitive element
    FieldElem element(uint32_t code) const;
    std::vector<int64_t> coeffs(FieldElem x) const;
    FieldElem from_coeffs(std::span<const int64_t> c) const;
    FieldElem from_residue(int64_t n) const;  ///< the constant (n mod p)

    FieldElem add(FieldElem a, FieldElem b) const {
        if (!add_tab_.empty()) return {add_tab_[size_t(a.v) * q_ + b.v]};
        return add_digits(a, b);
    }
    FieldElem neg(FieldElem a) const { return {neg_tab_[a.v]}; }
    FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
    FieldElem mul(FieldElem a, FieldElem b) const {
        if (a.v == 0 || b.v == 0) return {0};
        int64_t s = log_tab_[a.v] + log_tab_[b.v];
        if (s >= q_ - 1) s -= q_ - 1;
        return {exp_tab_[size_t(s)]};
    }
    FieldElem inv(FieldElem a) const;
    FieldElem pow(FieldElem a, int64_t k) const;
    int64_t dlog(FieldElem a) const;  ///< discrete log base xi; throws on zero

    SquareClass square_class(FieldElem x) const {
        if (x.v == 0) return SquareClass::Zero;
        return (log_tab_[x.v] & 1) ? SquareClass::NonSquare : SquareClass::Square;
    }
    bool is_square(FieldElem x) const { return square_class(x) == SquareClass::Square; }

    /// Counts (|(S-1) ∩ S|, |(S-1) ∩ NS|, |(NS-1) ∩ S|, |(NS-1) ∩ NS|) where
    /// S is the set of nonzero squares and NS the nonsquares.
    std::array<int64_t, 4> residue_shift_counts() const;

    std::string describe() const;

private:
    FieldCtx() = default;
    FieldElem add_digits(FieldElem a, FieldElem b) const;
    void build_tables();

    int64_t p_ = 0, q_ = 0;
    int e_ = 0;
    std::vector<int64_t> mod_;  // monic, ascending, length e+1
    FieldElem xi_{};
    std::vector<uint32_t> exp_tab_;  // size q-1
    std::vector<int32_t> log_tab_;   // size q, -1 for zero
    std::vector<uint32_t> neg_tab_;  // size q
    std::vector<uint32_t> add_tab_;  // q*q when q small, else empty
};

}  // namespace conic
