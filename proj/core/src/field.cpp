#include "conic/field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace conic {
namespace {

constexpr int64_t kMaxQ = int64_t(1) << 20;
constexpr int64_t kAddTableMaxQ = 1024;

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

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

int64_t pow_mod(int64_t b, int64_t k, int64_t m) {
    int64_t r = 1 % m;
    b %= m;
    while (k) {
        if (k & 1) r = r * b % m;
        b = b * b % m;
        k >>= 1;
    }
    return r;
}

int64_t least_primitive_root(int64_t p) {
    auto divs = prime_divisors(p - 1);
    for (int64_t a = 2; a < p; ++a) {
        bool ok = true;
        for (int64_t d : divs)
            if (pow_mod(a, (p - 1) / d, p) == 1) { ok = false; break; }
        if (ok) return a;
    }
    throw std::logic_error("no primitive root found");
}

// Primitive polynomials for the extension fields shipped by default,
// coefficients ascending (constant first), monic.
struct DefaultModulus { int64_t q; std::vector<int64_t> coeffs; };
const DefaultModulus kDefaultModuli[] = {
    {9,   {2, 2, 1}},
    {25,  {2, 4, 1}},
    {27,  {1, 2, 0, 1}},
    {49,  {3, 6, 1}},
    {81,  {2, 0, 0, 2, 1}},
    {121, {2, 7, 1}},
    {125, {3, 3, 0, 1}},
    {169, {2, 12, 1}},
};

// Raw ring arithmetic in Z_p[x]/(mod), elements as integer encodings.
struct RawRing {
    int64_t p, q;
    int e;
    const std::vector<int64_t>& mod;

    std::vector<int64_t> dec(int64_t v) const {
        std::vector<int64_t> c(e);
        for (int i = 0; i < e; ++i) { c[i] = v % p; v /= p; }
        return c;
    }
    int64_t enc(std::span<const int64_t> c) const {
        int64_t v = 0;
        for (int i = e - 1; i >= 0; --i) v = v * p + c[i];
        return v;
    }
    int64_t mul(int64_t a, int64_t b) const {
        auto ca = dec(a), cb = dec(b);
        std::vector<int64_t> prod(2 * e - 1, 0);
        for (int i = 0; i < e; ++i)
            if (ca[i])
                for (int j = 0; j < e; ++j)
                    prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
        for (int i = 2 * e - 2; i >= e; --i) {
            int64_t c = prod[i];
            if (c == 0) continue;
            prod[i] = 0;
            for (int j = 0; j < e; ++j) {
                prod[i - e + j] = ((prod[i - e + j] - c * mod[j]) % p + p) % p;
            }
        }
        prod.resize(e);
        return enc(prod);
    }
    int64_t pw(int64_t a, int64_t k) const {
        int64_t r = 1;
        while (k) {
            if (k & 1) r = mul(r, a);
            a = mul(a, a);
            k >>= 1;
        }
        return r;
    }
    // multiplicative order if a is a unit whose order divides q-1, else 0
    int64_t order_dividing(int64_t a, int64_t n, const std::vector<int64_t>& nprimes) const {
        if (a == 0 || pw(a, n) != 1) return 0;
        int64_t o = n;
        for (int64_t d : nprimes)
            while (o % d == 0 && pw(a, o / d) == 1) o /= d;
        return o;
    }
};

// Irreducibility over Z_p by trial factors, valid for degree <= 4:
// degree 2,3 need only a root check; degree 4 also needs quadratic factors.
bool irreducible_low_degree(int64_t p, const std::vector<int64_t>& mod) {
    int e = int(mod.size()) - 1;
    auto eval = [&](int64_t x) {
        int64_t acc = 0;
        for (int i = e; i >= 0; --i) acc = (acc * x + mod[i]) % p;
        return acc;
    };
    for (int64_t x = 0; x < p; ++x)
        if (eval(x) == 0) return false;
    if (e <= 3) return true;
    // degree 4: divide by every monic quadratic
    for (int64_t b = 0; b < p; ++b) {
        for (int64_t c = 0; c < p; ++c) {
            // remainder of mod(x) by x^2 + b x + c
            std::vector<int64_t> r(mod);
            for (int i = e; i >= 2; --i) {
                int64_t k = r[i] % p;
                if (k == 0) continue;
                r[i] = 0;
                r[i - 1] = ((r[i - 1] - k * b) % p + p) % p;
                r[i - 2] = ((r[i - 2] - k * c) % p + p) % p;
            }
            if (r[0] % p == 0 && r[1] % p == 0) return false;
        }
    }
    return true;
}

}  // namespace

FieldCtx FieldCtx::make(int64_t p, int e, const std::vector<int64_t>* modulus) {
    if (p == 2) throw std::invalid_argument("characteristic 2 is not supported (q must be odd)");
    if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    if (e < 1) throw std::invalid_argument("extension degree must be >= 1");
    int64_t q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        if (q > kMaxQ) throw std::invalid_argument("q exceeds the 2^20 guard");
    }

    FieldCtx F;
    F.p_ = p;
    F.e_ = e;
    F.q_ = q;

    if (modulus) {
        if (int(modulus->size()) != e + 1) throw std::invalid_argument("modulus must have degree e");
        F.mod_.resize(e + 1);
        for (int i = 0; i <= e; ++i) F.mod_[i] = ((*modulus)[i] % p + p) % p;
        if (F.mod_[e] != 1) throw std::invalid_argument("modulus must be monic");
        if (e <= 4 && !irreducible_low_degree(p, F.mod_))
            throw std::invalid_argument("modulus is reducible over Z_p");
    } else if (e == 1) {
        int64_t r = least_primitive_root(p);
        F.mod_ = {(p - r) % p, 1};  // x - r
    } else {
        const DefaultModulus* found = nullptr;
        for (const auto& d : kDefaultModuli)
            if (d.q == q) { found = &d; break; }
        if (!found)
            throw std::invalid_argument("no default modulus for this q; supply one explicitly");
        F.mod_ = found->coeffs;
    }

    F.build_tables();
    return F;
}

FieldCtx FieldCtx::from_order(int64_t q, const std::vector<int64_t>* modulus) {
    if (q < 3) throw std::invalid_argument("q must be an odd prime power >= 3");
    if (q % 2 == 0) throw std::invalid_argument("q must be odd");
    int64_t p = 0;
    for (int64_t d = 3; d * d <= q; d += 2)
        if (q % d == 0) { p = d; break; }
    if (p == 0) p = q;
    int e = 0;
    int64_t m = q;
    while (m > 1) {
        if (m % p != 0) throw std::invalid_argument("q is not a prime power");
        m /= p;
        ++e;
    }
    return make(p, e, modulus);
}

void FieldCtx::build_tables() {
    RawRing ring{p_, q_, e_, mod_};
    auto nprimes = prime_divisors(q_ - 1);

    // Prefer x itself as the primitive element; fall back to the least element
    // (by encoding) of full multiplicative order. Finding one also certifies
    // irreducibility of the modulus: a cyclic unit group of order q-1 forces
    // the quotient ring to be a field.
    int64_t xi = 0;
    int64_t x_code = (e_ == 1) ? (((p_ - mod_[0]) % p_ + p_) % p_)  // x = -c0 mod (x - r)
                               : p_;
    if (ring.order_dividing(x_code, q_ - 1, nprimes) == q_ - 1) {
        xi = x_code;
    } else {
        for (int64_t a = 2; a < q_; ++a) {
            if (ring.order_dividing(a, q_ - 1, nprimes) == q_ - 1) { xi = a; break; }
        }
        if (xi == 0)
            throw std::invalid_argument("no element of full order: modulus is reducible");
    }
    xi_ = {uint32_t(xi)};

    exp_tab_.assign(size_t(q_ - 1), 0);
    log_tab_.assign(size_t(q_), -1);
    int64_t cur = 1;
    for (int64_t i = 0; i < q_ - 1; ++i) {
        exp_tab_[size_t(i)] = uint32_t(cur);
        if (log_tab_[size_t(cur)] != -1)
            throw std::invalid_argument("xi is not primitive");
        log_tab_[size_t(cur)] = int32_t(i);
        cur = ring.mul(cur, xi);
    }
    if (cur != 1) throw std::logic_error("exp table did not close");

    neg_tab_.assign(size_t(q_), 0);
    for (int64_t v = 0; v < q_; ++v) {
        auto c = ring.dec(v);
        for (auto& x : c) x = (p_ - x) % p_;
        neg_tab_[size_t(v)] = uint32_t(ring.enc(c));
    }

    if (q_ <= kAddTableMaxQ) {
        add_tab_.assign(size_t(q_) * q_, 0);
        for (int64_t a = 0; a < q_; ++a) {
            auto ca = ring.dec(a);
            for (int64_t b = 0; b < q_; ++b) {
                auto cb = ring.dec(b);
                std::vector<int64_t> s(e_);
                for (int i = 0; i < e_; ++i) s[i] = (ca[i] + cb[i]) % p_;
                add_tab_[size_t(a) * q_ + b] = uint32_t(ring.enc(s));
            }
        }
    }
}

FieldElem FieldCtx::add_digits(FieldElem a, FieldElem b) const {
    int64_t va = a.v, vb = b.v, out = 0, mult = 1;
    for (int i = 0; i < e_; ++i) {
        out += mult * ((va % p_ + vb % p_) % p_);
        va /= p_;
        vb /= p_;
        mult *= p_;
    }
    return {uint32_t(out)};
}

FieldElem FieldCtx::element(uint32_t code) const {
    if (code >= q_) throw std::out_of_range("element code out of range");
    return {code};
}

std::vector<int64_t> FieldCtx::coeffs(FieldElem x) const {
    std::vector<int64_t> c(e_);
    int64_t v = x.v;
    for (int i = 0; i < e_; ++i) { c[i] = v % p_; v /= p_; }
    return c;
}

FieldElem FieldCtx::from_coeffs(std::span<const int64_t> c) const {
    if (int(c.size()) != e_) throw std::invalid_argument("coefficient count != e");
    int64_t v = 0;
    for (int i = e_ - 1; i >= 0; --i) v = v * p_ + ((c[i] % p_ + p_) % p_);
    return {uint32_t(v)};
}

FieldElem FieldCtx::from_residue(int64_t n) const {
    return {uint32_t((n % p_ + p_) % p_)};
}

FieldElem FieldCtx::inv(FieldElem a) const {
    if (a.v == 0) throw std::domain_error("inverse of zero");
    int64_t l = log_tab_[a.v];
    return {exp_tab_[size_t((q_ - 1 - l) % (q_ - 1))]};
}

FieldElem FieldCtx::pow(FieldElem a, int64_t k) const {
    if (a.v == 0) {
        if (k < 0) throw std::domain_error("negative power of zero");
        return k == 0 ? one() : zero();
    }
    int64_t l = log_tab_[a.v];
    int64_t m = q_ - 1;
    int64_t s = ((l % m) * (k % m)) % m;
    if (s < 0) s += m;
    return {exp_tab_[size_t(s)]};
}

int64_t FieldCtx::dlog(FieldElem a) const {
    if (a.v == 0) throw std::domain_error("discrete log of zero");
    return log_tab_[a.v];
}

std::array<int64_t, 4> FieldCtx::residue_shift_counts() const {
    std::array<int64_t, 4> c{0, 0, 0, 0};
    for (int64_t v = 1; v < q_; ++v) {
        FieldElem x{uint32_t(v)};
        bool x_sq = (square_class(x) == SquareClass::Square);
        FieldElem y = sub(x, one());
        SquareClass sy = square_class(y);
        if (sy == SquareClass::Zero) continue;
        int row = x_sq ? 0 : 2;
        int col = (sy == SquareClass::Square) ? 0 : 1;
        ++c[size_t(row + col)];
    }
    return c;
}

std::string FieldCtx::describe() const {
    std::ostringstream os;
    os << "GF(" << q_ << ")";
    if (e_ > 1) {
        os << " = GF(" << p_ << ")[x]/(";
        bool first = true;
        for (int i = e_; i >= 0; --i) {
            if (mod_[i] == 0) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0 || mod_[i] != 1) os << mod_[i];
            if (i >= 1) os << "x";
            if (i >= 2) os << "^" << i;
        }
        os << ")";
    }
    return os.str();
}

}  // namespace conic
