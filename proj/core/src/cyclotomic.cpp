#include "conic/cyclotomic.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace conic {
namespace {

// Exact division of integer polynomials (divisor monic-or-exact), ascending
// coefficients; used to build cyclotomic polynomials by the divisor product.
std::vector<int64_t> poly_div_exact(const std::vector<int64_t>& num,
                                    const std::vector<int64_t>& den) {
    std::vector<int64_t> r = num;
    int64_t dn = int64_t(r.size()) - 1, dd = int64_t(den.size()) - 1;
    if (dd > dn) throw std::logic_error("polynomial division underflow");
    std::vector<int64_t> qout(size_t(dn - dd + 1), 0);
    for (int64_t i = dn; i >= dd; --i) {
        int64_t lead = r[size_t(i)];
        if (lead == 0) continue;
        if (lead % den[size_t(dd)] != 0) throw std::logic_error("non-exact polynomial division");
        int64_t f = lead / den[size_t(dd)];
        qout[size_t(i - dd)] = f;
        for (int64_t j = 0; j <= dd; ++j) r[size_t(i - dd + j)] -= f * den[size_t(j)];
    }
    for (int64_t i = 0; i < dd; ++i)
        if (r[size_t(i)] != 0) throw std::logic_error("nonzero remainder in exact division");
    return qout;
}

std::vector<int64_t> cyclotomic_poly_nolock(std::vector<std::vector<int64_t>>& cache, int64_t n) {
    if (int64_t(cache.size()) <= n) cache.resize(size_t(n) + 1);
    if (!cache[size_t(n)].empty()) return cache[size_t(n)];
    std::vector<int64_t> acc(size_t(n) + 1, 0);
    acc[0] = -1;
    acc[size_t(n)] = 1;  // x^n - 1
    for (int64_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        acc = poly_div_exact(acc, cyclotomic_poly_nolock(cache, d));
    }
    if (int64_t(cache.size()) <= n) cache.resize(size_t(n) + 1);
    cache[size_t(n)] = acc;
    return acc;
}

std::vector<int64_t> cyclotomic_poly(int64_t n) {
    static std::mutex mu;
    static std::vector<std::vector<int64_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    return cyclotomic_poly_nolock(cache, n);
}

}  // namespace

Cyclotomic::Cyclotomic(int64_t N) : n_(N) {
    if (N < 1) throw std::invalid_argument("conductor must be positive");
    phi_ = cyclotomic_poly(N);
}

CycInt Cyclotomic::integer(int64_t k) const {
    CycInt out = zero();
    out.c[0] = k;
    return out;
}

CycInt Cyclotomic::root(int64_t j) const {
    CycInt out = zero();
    out.c[size_t(((j % n_) + n_) % n_)] = 1;
    return out;
}

CycInt Cyclotomic::add(const CycInt& a, const CycInt& b) const {
    CycInt out = a;
    for (int64_t i = 0; i < n_; ++i) out.c[size_t(i)] += b.c[size_t(i)];
    return out;
}

CycInt Cyclotomic::sub(const CycInt& a, const CycInt& b) const {
    CycInt out = a;
    for (int64_t i = 0; i < n_; ++i) out.c[size_t(i)] -= b.c[size_t(i)];
    return out;
}

namespace {

inline int64_t mul_checked(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
    return r;
}

inline int64_t add_checked(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("cyclotomic coefficient overflow");
    return r;
}

}  // namespace

CycInt Cyclotomic::mul(const CycInt& a, const CycInt& b) const {
    CycInt out = zero();
    for (int64_t i = 0; i < n_; ++i) {
        int64_t ai = a.c[size_t(i)];
        if (ai == 0) continue;
        for (int64_t j = 0; j < n_; ++j) {
            int64_t bj = b.c[size_t(j)];
            if (bj == 0) continue;
            int64_t k = i + j;
            if (k >= n_) k -= n_;
            out.c[size_t(k)] = add_checked(out.c[size_t(k)], mul_checked(ai, bj));
        }
    }
    return out;
}

CycInt Cyclotomic::scale(const CycInt& a, int64_t k) const {
    CycInt out = a;
    for (auto& x : out.c) x = mul_checked(x, k);
    return out;
}

CycInt Cyclotomic::conj(const CycInt& a) const {
    CycInt out = zero();
    for (int64_t i = 0; i < n_; ++i) out.c[size_t((n_ - i) % n_)] += a.c[size_t(i)];
    return out;
}

std::vector<int64_t> Cyclotomic::canon(const CycInt& a) const {
    int64_t deg = degree();
    std::vector<int64_t> r = a.c;
    for (int64_t i = n_ - 1; i >= deg; --i) {
        int64_t c = r[size_t(i)];
        if (c == 0) continue;
        // subtract c * x^(i-deg) * phi_N
        for (int64_t j = 0; j <= deg; ++j)
            r[size_t(i - deg + j)] = add_checked(r[size_t(i - deg + j)], mul_checked(-c, phi_[size_t(j)]));
    }
    r.resize(size_t(deg));
    return r;
}

bool Cyclotomic::is_zero(const CycInt& a) const {
    for (int64_t x : canon(a))
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::equal(const CycInt& a, const CycInt& b) const { return is_zero(sub(a, b)); }

CycInt Cyclotomic::div_exact(const CycInt& a, int64_t k) const {
    if (k == 0) throw std::invalid_argument("division by zero");
    auto r = canon(a);
    CycInt out = zero();
    for (size_t i = 0; i < r.size(); ++i) {
        if (r[i] % k != 0) throw std::domain_error("non-integral cyclotomic division");
        out.c[i] = r[i] / k;
    }
    return out;
}

std::optional<int64_t> Cyclotomic::as_integer(const CycInt& a) const {
    auto r = canon(a);
    for (size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) return std::nullopt;
    return r[0];
}

std::string Cyclotomic::to_string(const CycInt& a) const {
    auto r = canon(a);
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < r.size(); ++i) {
        int64_t c = r[i];
        if (c == 0) continue;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? "-" : "+");
        }
        int64_t mag = c < 0 ? -c : c;
        if (mag != 1 || i == 0) os << mag;
        if (i >= 1) os << "z";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

CycInt sqrt_q_cyc(const Cyclotomic& ring, int64_t p, int e) {
    if (e % 2 == 0) {
        int64_t v = 1;
        for (int i = 0; i < e / 2; ++i) v *= p;
        return ring.integer(v);
    }
    if (ring.n() % p != 0) throw std::invalid_argument("conductor lacks the p factor");
    int64_t zp = ring.n() / p;
    CycInt g = ring.zero();
    for (int64_t t = 1; t < p; ++t) {
        // Legendre symbol by Euler's criterion
        int64_t s = 1, b = t % p, k = (p - 1) / 2;
        while (k) {
            if (k & 1) s = s * b % p;
            b = b * b % p;
            k >>= 1;
        }
        g.c[size_t((zp * t) % ring.n())] += (s == 1) ? 1 : -1;
    }
    int64_t scalefac = 1;
    for (int i = 0; i < (e - 1) / 2; ++i) scalefac *= p;
    return ring.scale(g, scalefac);
}

}  // namespace conic
