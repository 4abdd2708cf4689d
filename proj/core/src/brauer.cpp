#include "conic/brauer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

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

int64_t mod_inverse(int64_t a, int64_t m) {
    int64_t t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
    while (nr != 0) {
        int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::invalid_argument("not invertible");
    return ((t % m) + m) % m;
}

// --- GF(2)[x] with 64-bit packed polynomials (degree < 64) ---

int deg64(uint64_t p) { return p ? 63 - int(__builtin_clzll(p)) : -1; }

uint64_t mul64(uint64_t a, uint64_t b) {
    uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

uint64_t mod64(uint64_t a, uint64_t m) {
    int dm = deg64(m);
    int da = deg64(a);
    while (da >= dm && a) {
        a ^= m << (da - dm);
        da = deg64(a);
    }
    return a;
}

uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) { return mod64(mul64(a, b), m); }

uint64_t powmod64(uint64_t a, uint64_t n, uint64_t m) {
    uint64_t r = mod64(1, m);
    a = mod64(a, m);
    while (n) {
        if (n & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        n >>= 1;
    }
    return r;
}

uint64_t gcd64(uint64_t a, uint64_t b) {
    while (b) {
        a = mod64(a, b);
        std::swap(a, b);
    }
    return a;
}

// x^(2^j) mod f by repeated squaring of the Frobenius image
bool irreducible64(uint64_t f) {
    int d = deg64(f);
    if (d <= 0) return false;
    uint64_t x2 = 2;  // x
    // f irreducible iff x^(2^d) = x mod f and gcd(x^(2^(d/r)) - x, f) = 1 for prime r | d
    std::vector<int64_t> divs = prime_divisors(d);
    uint64_t frob = 2;
    std::vector<uint64_t> frob_pow(size_t(d) + 1);
    frob_pow[0] = 2;
    for (int j = 1; j <= d; ++j) {
        frob = mulmod64(frob, frob, f);
        frob_pow[size_t(j)] = frob;
    }
    if (frob_pow[size_t(d)] != mod64(x2, f)) return false;
    for (int64_t r : divs) {
        uint64_t g = gcd64(frob_pow[size_t(d / r)] ^ mod64(x2, f), f);
        if (deg64(g) != 0) return false;
    }
    return true;
}

uint64_t find_irreducible64(int k) {
    for (uint64_t f = (uint64_t(1) << k) | 1; f < (uint64_t(1) << (k + 1)); f += 2)
        if (irreducible64(f)) return f;
    throw std::logic_error("no irreducible polynomial found");
}

// --- GF(2)[x] with arbitrary degree, packed in words (ascending bits) ---

struct BigPoly {
    std::vector<uint64_t> w;
    int64_t degree() const {
        for (int64_t i = int64_t(w.size()) - 1; i >= 0; --i)
            if (w[size_t(i)]) return i * 64 + deg64(w[size_t(i)]);
        return -1;
    }
    bool get(int64_t i) const {
        size_t wi = size_t(i >> 6);
        return wi < w.size() && ((w[wi] >> (i & 63)) & 1);
    }
    void set(int64_t i) {
        size_t wi = size_t(i >> 6);
        if (wi >= w.size()) w.resize(wi + 1, 0);
        w[wi] |= uint64_t(1) << (i & 63);
    }
    void xor_shifted(const BigPoly& o, int64_t sh) {
        for (int64_t i = o.degree(); i >= 0; --i)
            if (o.get(i)) {
                size_t wi = size_t((i + sh) >> 6);
                if (wi >= w.size()) w.resize(wi + 1, 0);
                w[wi] ^= uint64_t(1) << ((i + sh) & 63);
            }
    }
};

BigPoly big_from_bits(uint64_t bits) {
    BigPoly p;
    p.w.push_back(bits);
    return p;
}

BigPoly big_mul(const BigPoly& a, const BigPoly& b) {
    BigPoly r;
    for (int64_t i = a.degree(); i >= 0; --i)
        if (a.get(i)) r.xor_shifted(b, i);
    return r;
}

// returns quotient, reduces a to the remainder in place
BigPoly big_divmod(BigPoly& a, const BigPoly& m) {
    BigPoly q;
    int64_t dm = m.degree();
    if (dm < 0) throw std::invalid_argument("division by zero polynomial");
    int64_t da = a.degree();
    while (da >= dm) {
        q.set(da - dm);
        a.xor_shifted(m, da - dm);
        da = a.degree();
    }
    return q;
}

// extended euclid: returns (g, s, t) with s*a + t*b = g over GF(2)
void big_bezout(BigPoly a, BigPoly b, BigPoly& g, BigPoly& s, BigPoly& t) {
    BigPoly r0 = a, r1 = b;
    BigPoly s0 = big_from_bits(1), s1 = big_from_bits(0);
    BigPoly t0 = big_from_bits(0), t1 = big_from_bits(1);
    while (r1.degree() >= 0) {
        BigPoly rem = r0;
        BigPoly q = big_divmod(rem, r1);
        r0 = r1;
        r1 = rem;
        BigPoly qs = big_mul(q, s1);
        qs.xor_shifted(s0, 0);
        s0 = s1;
        s1 = qs;
        BigPoly qt = big_mul(q, t1);
        qt.xor_shifted(t0, 0);
        t0 = t1;
        t1 = qt;
    }
    g = r0;
    s = s0;
    t = t0;
}

// --- integer-coefficient polynomials mod 2^P, ascending ---

std::vector<uint32_t> zp_mul(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                             uint32_t mask) {
    std::vector<uint32_t> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) & mask;
    }
    return out;
}

}  // namespace

uint32_t GF2k::mul(uint32_t a, uint32_t b) const {
    return uint32_t(mulmod64(a, b, f_));
}

uint32_t GF2k::pow(uint32_t a, uint64_t n) const {
    return uint32_t(powmod64(a, n, f_));
}

uint32_t GF2k::inv(uint32_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return pow(a, (uint64_t(1) << k_) - 2);
}

int residue_field_degree(int64_t N) {
    int64_t m = N;
    while (m % 2 == 0) m /= 2;
    if (m == 1) return 1;
    int k = 1;
    int64_t t = 2 % m;
    while (t != 1) {
        t = t * 2 % m;
        ++k;
    }
    return k;
}

CyclotomicFactor cyclotomic_factor_mod2(int64_t M, int which) {
    if (M % 2 == 0 || M < 1) throw std::invalid_argument("M must be odd and positive");
    if (M == 1) return {uint64_t(0b11), 1, 1};  // x + 1
    int k = 1;
    {
        int64_t t = 2 % M;
        while (t != 1) {
            t = t * 2 % M;
            ++k;
        }
    }
    if (k > 30) throw std::invalid_argument("residue degree too large");

    // Scratch field GF(2^k); zeta = element of multiplicative order M.
    GF2k K(k, find_irreducible64(k));
    uint64_t group = (uint64_t(1) << k) - 1;
    auto divs = prime_divisors(int64_t(group));
    uint32_t gen = 0;
    for (uint32_t a = 2; a < (uint32_t(1) << k); ++a) {
        bool ok = true;
        for (int64_t d : divs)
            if (K.pow(a, group / uint64_t(d)) == 1) { ok = false; break; }
        if (ok) { gen = a; break; }
    }
    if (!gen) throw std::logic_error("no generator of the scratch field");
    uint32_t zeta = K.pow(gen, group / uint64_t(M));

    // Minimal polynomials of the primitive M-th roots, one per 2-cyclotomic coset.
    std::vector<char> seen(size_t(M), 0);
    std::vector<uint64_t> factors;
    for (int64_t j = 1; j < M; ++j) {
        if (std::gcd(j, M) != 1 || seen[size_t(j)]) continue;
        std::vector<int64_t> coset;
        int64_t t = j;
        while (!seen[size_t(t)]) {
            seen[size_t(t)] = 1;
            coset.push_back(t);
            t = t * 2 % M;
        }
        std::vector<uint32_t> poly = {1};  // ascending coeffs in GF(2^k)
        for (int64_t i : coset) {
            uint32_t r = K.pow(zeta, uint64_t(i));
            std::vector<uint32_t> np(poly.size() + 1, 0);
            for (size_t d = 0; d < poly.size(); ++d) {
                np[d + 1] ^= poly[d];
                np[d] ^= K.mul(poly[d], r);
            }
            poly = std::move(np);
        }
        uint64_t bits = 0;
        for (size_t d = 0; d < poly.size(); ++d) {
            if (poly[d] > 1) throw std::logic_error("minimal polynomial not over GF(2)");
            bits |= uint64_t(poly[d]) << d;
        }
        factors.push_back(bits);
    }
    std::sort(factors.begin(), factors.end());
    CyclotomicFactor out;
    out.total_factors = int(factors.size());
    out.poly_bits = factors[size_t(which % int(factors.size()))];
    out.degree = k;
    return out;
}

BrauerReduction BrauerReduction::make(int64_t N, int which_factor) {
    BrauerReduction br;
    br.n_ = N;
    br.m_ = N;
    br.a_ = 0;
    while (br.m_ % 2 == 0) {
        br.m_ /= 2;
        ++br.a_;
    }
    CyclotomicFactor f = cyclotomic_factor_mod2(br.m_, which_factor);
    br.field_ = GF2k(f.degree, f.poly_bits);
    int64_t two_a = int64_t(1) << br.a_;
    br.u_ = (br.m_ == 1) ? 0 : mod_inverse(two_a % br.m_, br.m_);
    br.v_ = (br.a_ == 0) ? 0 : mod_inverse(br.m_ % two_a, two_a);

    // g = x has order exactly M in GF(2)[x]/(f) since f divides the M-th
    // cyclotomic polynomial mod 2.
    uint32_t g = (br.m_ == 1) ? 1 : 2;
    if (br.field_.pow(g, uint64_t(br.m_)) != 1) throw std::logic_error("root order broken");
    br.root_pow_.resize(size_t(N));
    for (int64_t t = 0; t < N; ++t)
        br.root_pow_[size_t(t)] = br.field_.pow(g, uint64_t((br.u_ * t) % br.m_));
    return br;
}

uint32_t BrauerReduction::reduce(const CycInt& x) const {
    if (int64_t(x.c.size()) != n_) throw std::invalid_argument("wrong conductor");
    uint32_t r = 0;
    for (int64_t t = 0; t < n_; ++t)
        if (x.c[size_t(t)] & 1) r ^= root_pow_[size_t(t)];
    return r;
}

std::vector<int64_t> BrauerReduction::project_odd_part(const CycInt& x) const {
    if (int64_t(x.c.size()) != n_) throw std::invalid_argument("wrong conductor");
    std::vector<int64_t> out(size_t(m_), 0);
    int64_t two_a = int64_t(1) << a_;
    int64_t half = two_a >> 1;
    for (int64_t t = 0; t < n_; ++t) {
        int64_t c = x.c[size_t(t)];
        if (c == 0) continue;
        // normalized trace of zeta_N^t onto Q(zeta_M): the 2-primary component
        // averages to +1, -1 or 0 by the Ramanujan sum for 2^a
        int64_t s = (a_ == 0) ? 0 : (v_ * t) % two_a;
        if (s == 0)
            out[size_t((u_ * t) % m_)] += c;
        else if (half > 0 && s == half)
            out[size_t((u_ * t) % m_)] -= c;
    }
    return out;
}

CycInt BrauerReduction::embed_odd_part(const Cyclotomic& ring, std::span<const int64_t> vec_m) const {
    if (ring.n() != n_) throw std::invalid_argument("ring conductor mismatch");
    CycInt out = ring.zero();
    int64_t two_a = int64_t(1) << a_;
    for (int64_t t = 0; t < m_; ++t)
        out.c[size_t((t * two_a) % n_)] += vec_m[size_t(t)];
    return out;
}

GaloisRing GaloisRing::make(const BrauerReduction& br, int precision_bits) {
    if (precision_bits < 1 || precision_bits > 30)
        throw std::invalid_argument("precision out of range");
    GaloisRing R;
    R.prec_ = precision_bits;
    R.k_ = br.k();
    R.m_ = br.odd_part();
    R.mask_ = (precision_bits == 30) ? ((uint32_t(1) << 30) - 1)
                                     : ((uint32_t(1) << precision_bits) - 1);

    // Hensel: lift the factorization x^M - 1 = f * h from mod 2 to mod 2^P,
    // one bit per step, using fixed Bezout cofactors over GF(2).
    int64_t M = R.m_;
    BigPoly F;  // x^M - 1 over GF(2) for cofactor computation
    F.set(M);
    F.set(0);
    BigPoly f2 = big_from_bits(br.factor_bits());
    BigPoly h2 = F;
    BigPoly hq = big_divmod(h2, f2);  // h2 now remainder (must be 0)
    if (h2.degree() >= 0) throw std::logic_error("factor does not divide x^M-1 mod 2");
    h2 = hq;
    BigPoly g, s, t;
    big_bezout(f2, h2, g, s, t);
    if (g.degree() != 0) throw std::logic_error("factor and cofactor are not coprime");
    // s*f + t*h = 1 mod 2

    int64_t df = int64_t(br.k());
    int64_t dh = M - df;
    uint32_t mask = R.mask_;
    std::vector<uint32_t> fl(size_t(df) + 1, 0), hl(size_t(dh) + 1, 0);
    for (int64_t i = 0; i <= df; ++i) fl[size_t(i)] = f2.get(i);
    for (int64_t i = 0; i <= dh; ++i) hl[size_t(i)] = h2.get(i);

    std::vector<uint32_t> target(size_t(M) + 1, 0);
    target[0] = (uint32_t(0) - 1) & mask;  // -1 mod 2^P
    target[size_t(M)] = 1;

    for (int step = 1; step < R.prec_; ++step) {
        // E = (target - f*h) / 2^step, a GF(2) polynomial
        auto prod = zp_mul(fl, hl, mask);
        prod.resize(size_t(M) + 1, 0);
        BigPoly E;
        for (int64_t i = 0; i <= M; ++i) {
            uint32_t diff = (target[size_t(i)] - prod[size_t(i)]) & mask;
            if (diff & ((uint32_t(1) << step) - 1))
                throw std::logic_error("Hensel lift lost exactness");
            if ((diff >> step) & 1) E.set(i);
        }
        // delta_f = t*E mod f, delta_h = s*E + h*floor(t*E/f) over GF(2)
        BigPoly tE = big_mul(t, E);
        BigPoly w = big_divmod(tE, f2);  // tE now = t*E mod f
        BigPoly sE = big_mul(s, E);
        BigPoly hw = big_mul(h2, w);
        sE.xor_shifted(hw, 0);
        for (int64_t i = 0; i < df; ++i)
            if (tE.get(i)) fl[size_t(i)] = (fl[size_t(i)] + (uint32_t(1) << step)) & mask;
        for (int64_t i = 0; i <= dh; ++i)
            if (sE.get(i)) hl[size_t(i)] = (hl[size_t(i)] + (uint32_t(1) << step)) & mask;
    }
    {
        auto prod = zp_mul(fl, hl, mask);
        prod.resize(size_t(M) + 1, 0);
        for (int64_t i = 0; i <= M; ++i)
            if (prod[size_t(i)] != target[size_t(i)])
                throw std::logic_error("Hensel lift failed verification");
    }
    R.modulus_ = fl;

    // powers of x mod the lifted modulus
    R.xpow_.resize(size_t(M));
    std::vector<uint32_t> cur(size_t(R.k_), 0);
    cur[0] = 1;
    auto mul_x = [&](std::vector<uint32_t>& v) {
        uint32_t carry = v[size_t(R.k_ - 1)];
        for (int64_t i = R.k_ - 1; i >= 1; --i) v[size_t(i)] = v[size_t(i - 1)];
        v[0] = 0;
        if (carry) {
            for (int64_t i = 0; i < R.k_; ++i)
                v[size_t(i)] = (v[size_t(i)] - carry * fl[size_t(i)]) & mask;
        }
    };
    for (int64_t tt = 0; tt < M; ++tt) {
        R.xpow_[size_t(tt)] = cur;
        mul_x(cur);
    }
    // closure: x^M must come back to 1
    std::vector<uint32_t> one(size_t(R.k_), 0);
    one[0] = 1;
    if (cur != one) throw std::logic_error("lifted root has wrong order");
    return R;
}

std::vector<uint32_t> GaloisRing::eval_odd_vector(std::span<const int64_t> vec_m) const {
    if (int64_t(vec_m.size()) != m_) throw std::invalid_argument("wrong length");
    std::vector<uint32_t> out(size_t(k_), 0);
    for (int64_t t = 0; t < m_; ++t) {
        int64_t c = vec_m[size_t(t)];
        if (c == 0) continue;
        uint32_t cm = uint32_t(((c % int64_t(mask_ + 1)) + int64_t(mask_ + 1)) % int64_t(mask_ + 1));
        const auto& xp = xpow_[size_t(t)];
        for (int64_t i = 0; i < k_; ++i)
            out[size_t(i)] = (out[size_t(i)] + cm * xp[size_t(i)]) & mask_;
    }
    return out;
}

int GaloisRing::valuation(std::span<const uint32_t> x) const {
    int v = prec_;
    for (uint32_t c : x) {
        if (c == 0) continue;
        int b = __builtin_ctz(c);
        if (b < v) v = b;
    }
    return v;
}

uint32_t GaloisRing::shift_to_residue(std::span<const uint32_t> x, int shift) const {
    if (valuation(x) < shift) throw std::domain_error("2-adic valuation too small");
    uint32_t bits = 0;
    for (int64_t i = 0; i < k_; ++i)
        if ((x[size_t(i)] >> shift) & 1) bits |= uint32_t(1) << i;
    return bits;
}

}  // namespace conic
