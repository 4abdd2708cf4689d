#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace conic {

/// Element of Z[zeta_N]: integer coefficients on zeta_N^0 .. zeta_N^(N-1),
/// i.e. a representative in Z[x]/(x^N - 1). Canonical comparisons reduce
/// modulo the N-th cyclotomic polynomial through the owning ring.
struct CycInt {
    std::vector<int64_t> c;
};

/// Arithmetic context for Z[zeta_N]. Ring operations work on raw length-N
/// coefficient vectors; equality, integrality and scalar division go through
/// the power-basis canonical form (degree phi(N)).
class Cyclotomic {
public:
    explicit Cyclotomic(int64_t N);

    int64_t n() const { return n_; }
    int64_t degree() const { return int64_t(phi_.size()) - 1; }  // phi(N)
    const std::vector<int64_t>& cyclotomic_polynomial() const { return phi_; }

    CycInt zero() const { return {std::vector<int64_t>(size_t(n_), 0)}; }
    CycInt integer(int64_t k) const;
    CycInt root(int64_t j) const;  // zeta_N^j, j taken mod N

    CycInt add(const CycInt& a, const CycInt& b) const;
    CycInt sub(const CycInt& a, const CycInt& b) const;
    CycInt mul(const CycInt& a, const CycInt& b) const;
    CycInt scale(const CycInt& a, int64_t k) const;
    CycInt conj(const CycInt& a) const;  // zeta -> zeta^-1

    std::vector<int64_t> canon(const CycInt& a) const;  // length degree()
    bool is_zero(const CycInt& a) const;
    bool equal(const CycInt& a, const CycInt& b) const;
    /// Exact division by a rational integer in the power basis; throws if any
    /// canonical coefficient is not divisible.
    CycInt div_exact(const CycInt& a, int64_t k) const;
    /// The rational integer value, if the element is rational.
    std::optional<int64_t> as_integer(const CycInt& a) const;

    /// Canonical rendering as a polynomial in z = zeta_N, e.g. "1-z^3+2z^5".
    std::string to_string(const CycInt& a) const;

private:
    int64_t n_;
    std::vector<int64_t> phi_;  // ascending, monic
};

/// Quadratic Gauss sum scaled to a square root of +-q = +-p^e (sign forced by
/// p mod 4): for odd e, p^((e-1)/2) * sum_t legendre(t|p) zeta_p^t with
/// zeta_p = zeta_N^(N/p); for even e just the integer p^(e/2). Requires p | N
/// when e is odd.
CycInt sqrt_q_cyc(const Cyclotomic& ring, int64_t p, int e);

}  // namespace conic
