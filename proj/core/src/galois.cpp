#include "lg/galois.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace lg {

namespace {

constexpr uint64_t table_cap = 1ull << 22;

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<uint32_t> prime_divisors(uint64_t n) {
    std::vector<uint32_t> ps;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            ps.push_back((uint32_t)d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) ps.push_back((uint32_t)n);
    return ps;
}

uint8_t inv_mod(uint32_t c, uint32_t q) {
    // q prime, 0 < c < q
    int64_t t = 0, nt = 1, r = q, nr = c;
    while (nr != 0) {
        int64_t qu = r / nr;
        t -= qu * nt;
        std::swap(t, nt);
        r -= qu * nr;
        std::swap(r, nr);
    }
    return (uint8_t)((t % q + q) % q);
}

// ---- small dense polynomials over F_q, constant term first ----
// Used only for irreducibility testing and table bootstrap; hot arithmetic
// runs on the packed representations below.

using poly = std::vector<uint8_t>;

int pdeg(const poly& a) {
    for (int i = (int)a.size() - 1; i >= 0; --i)
        if (a[i]) return i;
    return -1;
}

poly pmod(poly a, const poly& f, uint32_t q) {
    int df = pdeg(f);
    uint8_t ilead = inv_mod(f[df], q);
    for (int i = pdeg(a); i >= df; i = pdeg(a)) {
        uint32_t c = (uint32_t)a[i] * ilead % q;
        for (int j = 0; j <= df; ++j) {
            uint32_t v = a[i - df + j] + (uint32_t)(q - 1) * c % q * f[j];
            a[i - df + j] = (uint8_t)(v % q);
        }
    }
    a.resize(df);
    a.resize(std::max(df, 1));
    return a;
}

poly pmulmod(const poly& a, const poly& b, const poly& f, uint32_t q) {
    int da = pdeg(a), db = pdeg(b);
    if (da < 0 || db < 0) return poly(1, 0);
    poly p(da + db + 1, 0);
    for (int i = 0; i <= da; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j <= db; ++j)
            p[i + j] = (uint8_t)((p[i + j] + (uint32_t)a[i] * b[j]) % q);
    }
    return pmod(std::move(p), f, q);
}

poly ppow(poly a, uint64_t e, const poly& f, uint32_t q) {
    poly r(1, 1);
    while (e) {
        if (e & 1) r = pmulmod(r, a, f, q);
        a = pmulmod(a, a, f, q);
        e >>= 1;
    }
    return r;
}

poly psub(poly a, const poly& b, uint32_t q) {
    a.resize(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < b.size(); ++i)
        a[i] = (uint8_t)((a[i] + q - b[i]) % q);
    return a;
}

poly pgcd(poly a, poly b, uint32_t q) {
    while (pdeg(b) >= 0) {
        a = pmod(std::move(a), b, q);
        // pmod returns a polynomial of degree < deg b, but with deg b slots;
        // that is fine for the next round.
        std::swap(a, b);
    }
    return a;
}

// Rabin's test: f (degree m) is irreducible over F_q iff x^(q^m) = x mod f
// and gcd(x^(q^(m/p)) - x, f) = 1 for every prime p | m.
bool poly_irreducible(const poly& f, uint32_t q) {
    int m = pdeg(f);
    if (m < 1) return false;
    if (m >= 2 && f[0] == 0) return false; // x divides f
    poly x{0, 1};
    auto checkpoints = prime_divisors((uint64_t)m);
    poly u = pmod(x, f, q);
    for (int i = 1; i <= m; ++i) {
        u = ppow(u, q, f, q);
        for (uint32_t p : checkpoints) {
            if (i != m / (int)p) continue;
            poly g = pgcd(psub(u, pmod(x, f, q), q), f, q);
            if (pdeg(g) != 0) return false;
        }
    }
    return pdeg(psub(u, pmod(x, f, q), q)) < 0;
}

std::vector<uint8_t> default_modulus(uint32_t q, uint32_t m) {
    // Smallest irreducible monic polynomial of degree m, ordering the
    // coefficient vector as a base-q integer with the constant term least
    // significant. Deterministic, so serialized keys are portable.
    poly f(m + 1, 0);
    f[m] = 1;
    for (;;) {
        if ((m < 2 || f[0] != 0) && poly_irreducible(f, q)) return f;
        uint32_t i = 0;
        while (i < m && ++f[i] == q) f[i++] = 0;
        if (i == m) fail(errc::internal, "no irreducible polynomial found");
    }
}

void xor_shifted(uint64_t* p, const uint64_t* v, int nw, int sh) {
    int ws = sh >> 6, bs = sh & 63;
    for (int j = 0; j < nw; ++j) {
        uint64_t x = v[j];
        if (!x) continue;
        p[j + ws] ^= x << bs;
        if (bs) p[j + ws + 1] ^= x >> (64 - bs);
    }
}

} // namespace

// ---- construction ----

field_ctx::field_ctx(uint32_t q, uint32_t m, std::optional<std::vector<uint8_t>> modulus)
    : q_(q), m_(m) {
    if (!is_prime_u32(q)) fail(errc::not_prime, "q = " + std::to_string(q) + " is not prime");
    if (q >= 256) fail(errc::unsupported, "base fields with q >= 256 are not supported");
    if (m < 1) fail(errc::bad_input, "extension degree must be >= 1");
    binary_ = (q == 2);
    if (binary_) {
        if (m > 192) fail(errc::unsupported, "binary extensions supported up to m = 192");
    } else {
        uint64_t card = 1;
        for (uint32_t i = 0; i < m; ++i) {
            if (card > table_cap / q) fail(errc::unsupported, "odd-characteristic fields need q^m <= 2^22");
            card *= q;
        }
    }

    if (modulus) {
        if (modulus->size() != m + 1)
            fail(errc::degree_mismatch, "modulus must have degree m (m+1 digits)");
        for (uint8_t d : *modulus)
            if (d >= q) fail(errc::degree_mismatch, "modulus digit out of range");
        if ((*modulus)[m] == 0) fail(errc::degree_mismatch, "modulus is not of degree m");
        modulus_ = *modulus;
        if (modulus_[m] != 1) { // normalize monic
            uint8_t il = inv_mod(modulus_[m], q);
            for (auto& d : modulus_) d = (uint8_t)((uint32_t)d * il % q);
        }
        if (!poly_irreducible(modulus_, q))
            fail(errc::reducible_modulus, "modulus is reducible over F_q");
    } else {
        modulus_ = default_modulus(q, m);
    }

    if (binary_) {
        for (uint32_t i = 0; i <= m; ++i)
            if (modulus_[i]) modbits_[i >> 6] |= 1ull << (i & 63);
    } else {
        qpow_.resize(m + 1);
        qpow_[0] = 1;
        for (uint32_t i = 1; i <= m; ++i) qpow_[i] = qpow_[i - 1] * q;
    }

    uint64_t card = 1;
    bool fits = true;
    for (uint32_t i = 0; i < m && fits; ++i) {
        if (card > table_cap / q) fits = false;
        else card *= q;
    }
    if (fits && card <= table_cap) {
        card_ = card;
        build_tables();
        tabled_ = true;
    }
}

std::shared_ptr<const field_ctx> field_ctx::get(uint32_t q, uint32_t m,
                                                std::optional<std::vector<uint8_t>> modulus) {
    static std::mutex mu;
    static std::map<std::tuple<uint32_t, uint32_t, std::vector<uint8_t>>,
                    std::shared_ptr<const field_ctx>> cache;
    static std::map<std::pair<uint32_t, uint32_t>, std::vector<uint8_t>> defaults;

    std::lock_guard<std::mutex> lock(mu);
    std::vector<uint8_t> mod;
    if (modulus) {
        mod = *modulus;
    } else {
        auto it = defaults.find({q, m});
        if (it == defaults.end()) {
            auto ctx = std::make_shared<const field_ctx>(q, m);
            defaults[{q, m}] = ctx->modulus();
            cache[{q, m, ctx->modulus()}] = ctx;
            return ctx;
        }
        mod = it->second;
    }
    auto key = std::make_tuple(q, m, mod);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ctx = std::make_shared<const field_ctx>(q, m, mod);
    cache[key] = ctx;
    return ctx;
}

// ---- packed binary arithmetic (q = 2, m <= 192) ----

fqm field_ctx::mul_poly2(fqm a, fqm b) const {
    uint64_t prod[8] = {0};
    for (int wi = 0; wi < 3; ++wi) {
        uint64_t aw = a.w[wi];
        while (aw) {
            int bit = __builtin_ctzll(aw);
            aw &= aw - 1;
            xor_shifted(prod, b.w.data(), 3, wi * 64 + bit);
        }
    }
    for (;;) {
        int wi = 7;
        while (wi >= 0 && prod[wi] == 0) --wi;
        if (wi < 0) break;
        int pos = wi * 64 + 63 - __builtin_clzll(prod[wi]);
        if (pos < (int)m_) break;
        xor_shifted(prod, modbits_.data(), 4, pos - (int)m_);
    }
    return fqm{{prod[0], prod[1], prod[2]}};
}

fqm field_ctx::inv_poly2(fqm a) const {
    // a^(2^m - 2) via the square-and-accumulate chain.
    fqm t = a, r = one();
    for (uint32_t i = 1; i < m_; ++i) {
        t = mul_poly2(t, t);
        r = mul_poly2(r, t);
    }
    return r;
}

// ---- table bootstrap ----

uint64_t field_ctx::add_pos(uint64_t a, uint64_t b) const {
    uint64_t r = 0;
    for (uint32_t t = 0; t < m_; ++t)
        r += (a / qpow_[t] + b / qpow_[t]) % q_ % q_ * qpow_[t];
    return r;
}

void field_ctx::build_tables() {
    uint64_t ord = card_ - 1;
    auto mul_boot = [&](uint64_t a, uint64_t b) -> uint64_t {
        if (binary_) {
            fqm r = mul_poly2(fqm{{a, 0, 0}}, fqm{{b, 0, 0}});
            return r.w[0];
        }
        std::vector<uint32_t> ad(m_), bd(m_), pd(2 * m_, 0);
        for (uint32_t t = 0; t < m_; ++t) {
            ad[t] = (uint32_t)(a / qpow_[t] % q_);
            bd[t] = (uint32_t)(b / qpow_[t] % q_);
        }
        for (uint32_t i = 0; i < m_; ++i) {
            if (!ad[i]) continue;
            for (uint32_t j = 0; j < m_; ++j)
                pd[i + j] = (pd[i + j] + ad[i] * bd[j]) % q_;
        }
        for (int t = 2 * (int)m_ - 2; t >= (int)m_; --t) {
            uint32_t c = pd[t];
            if (!c) continue;
            for (uint32_t j = 0; j <= m_; ++j)
                pd[t - m_ + j] = (pd[t - m_ + j] + (q_ - 1) * c % q_ * modulus_[j]) % q_;
        }
        uint64_t r = 0;
        for (uint32_t t = 0; t < m_; ++t) r += (uint64_t)pd[t] * qpow_[t];
        return r;
    };
    auto pow_boot = [&](uint64_t a, uint64_t e) {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul_boot(r, a);
            a = mul_boot(a, a);
            e >>= 1;
        }
        return r;
    };

    auto ps = prime_divisors(ord);
    uint64_t g = 0;
    for (uint64_t cand = 2; cand < card_; ++cand) {
        bool ok = true;
        for (uint32_t p : ps)
            if (pow_boot(cand, ord / p) == 1) { ok = false; break; }
        if (ok) { g = cand; break; }
    }
    if (!g && ord > 1) fail(errc::internal, "no multiplicative generator found");
    if (ord == 1) g = 1;

    exp_.assign(ord, 1);
    log_.assign(card_, -1);
    uint64_t v = 1;
    for (uint64_t i = 0; i < ord; ++i) {
        exp_[i] = (uint32_t)v;
        log_[v] = (int32_t)i;
        v = mul_boot(v, g);
    }
    if (v != 1) fail(errc::internal, "generator order mismatch");

    frob_mul_.resize(m_);
    frob_mul_[0] = 1;
    for (uint32_t i = 1; i < m_; ++i) frob_mul_[i] = frob_mul_[i - 1] * q_ % ord;
}

uint64_t field_ctx::mul_tabled(uint64_t a, uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    uint64_t ord = card_ - 1;
    return exp_[((uint64_t)log_[a] + (uint64_t)log_[b]) % ord];
}

// ---- public element operations ----

fqm field_ctx::gen() const {
    if (m_ == 1) return from_prime(q_ - modulus_[0]);
    return binary_ ? fqm{{2, 0, 0}} : fqm{{q_, 0, 0}};
}

fqm field_ctx::from_prime(uint32_t c) const {
    c %= q_;
    return fqm{{c, 0, 0}};
}

fqm field_ctx::add(fqm a, fqm b) const {
    if (binary_) return fqm{{a.w[0] ^ b.w[0], a.w[1] ^ b.w[1], a.w[2] ^ b.w[2]}};
    return fqm{{add_pos(a.w[0], b.w[0]), 0, 0}};
}

fqm field_ctx::neg(fqm a) const {
    if (binary_) return a;
    uint64_t r = 0;
    for (uint32_t t = 0; t < m_; ++t) r += (q_ - a.w[0] / qpow_[t] % q_) % q_ * qpow_[t];
    return fqm{{r, 0, 0}};
}

fqm field_ctx::sub(fqm a, fqm b) const { return add(a, neg(b)); }

fqm field_ctx::mul(fqm a, fqm b) const {
    if (tabled_) return fqm{{mul_tabled(a.w[0], b.w[0]), 0, 0}};
    return mul_poly2(a, b);
}

fqm field_ctx::inv(fqm a) const {
    if (a.is_zero()) fail(errc::division_by_zero, "inverse of zero");
    if (tabled_) {
        uint64_t ord = card_ - 1;
        return fqm{{exp_[(ord - (uint64_t)log_[a.w[0]]) % ord], 0, 0}};
    }
    return inv_poly2(a);
}

fqm field_ctx::pow(fqm a, uint64_t e) const {
    if (tabled_) {
        if (a.is_zero()) return e == 0 ? one() : zero();
        uint64_t ord = card_ - 1;
        return fqm{{exp_[(uint64_t)log_[a.w[0]] % ord * (e % ord) % ord], 0, 0}};
    }
    fqm r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

fqm field_ctx::frobenius(fqm a, int64_t i) const {
    uint32_t k = (uint32_t)(((i % m_) + m_) % m_);
    if (k == 0 || a.is_zero() || in_prime_field(a)) return a;
    if (tabled_) {
        uint64_t ord = card_ - 1;
        return fqm{{exp_[(uint64_t)log_[a.w[0]] * frob_mul_[k] % ord], 0, 0}};
    }
    for (uint32_t s = 0; s < k; ++s) a = mul_poly2(a, a);
    return a;
}

fqm field_ctx::scalar_mul(fqm a, uint8_t c) const {
    c = (uint8_t)(c % q_);
    if (binary_) return c ? a : zero();
    fqm r = zero();
    while (c) { // double-and-add over the scalar
        if (c & 1) r = add(r, a);
        a = add(a, a);
        c >>= 1;
    }
    return r;
}

uint8_t field_ctx::digit(fqm a, uint32_t t) const {
    if (binary_) return (uint8_t)((a.w[t >> 6] >> (t & 63)) & 1);
    return (uint8_t)(a.w[0] / qpow_[t] % q_);
}

std::vector<uint8_t> field_ctx::digits(fqm a) const {
    std::vector<uint8_t> d(m_);
    for (uint32_t t = 0; t < m_; ++t) d[t] = digit(a, t);
    return d;
}

fqm field_ctx::from_digits(const std::vector<uint8_t>& d) const {
    if (d.size() != m_) fail(errc::degree_mismatch, "digit vector must have length m");
    fqm a{};
    for (uint32_t t = 0; t < m_; ++t) {
        uint8_t v = d[t];
        if (v >= q_) fail(errc::bad_input, "digit out of range");
        if (binary_) a.w[t >> 6] |= (uint64_t)v << (t & 63);
        else a.w[0] += (uint64_t)v * qpow_[t];
    }
    return a;
}

bool field_ctx::in_prime_field(fqm a) const {
    if (binary_) return (a.w[0] >> 1 | a.w[1] | a.w[2]) == 0;
    return a.w[0] < q_;
}

std::vector<fqm> field_ctx::subfield_basis(uint32_t l) const {
    if (l == 0 || m_ % l != 0) fail(errc::not_a_divisor, "subfield degree must divide m");
    std::vector<fqm> powers(m_);
    powers[0] = one();
    for (uint32_t j = 1; j < m_; ++j) powers[j] = mul(powers[j - 1], gen());
    if (l == m_) return powers;

    // kernel of a -> a^[l] - a over F_q, columns indexed by the power basis
    uint32_t n = m_;
    std::vector<uint8_t> col(n * n); // col[r * n + c]
    for (uint32_t c = 0; c < n; ++c) {
        fqm im = sub(frobenius(powers[c], l), powers[c]);
        for (uint32_t r = 0; r < n; ++r) col[r * n + c] = digit(im, r);
    }
    // plain Gauss-Jordan over F_q
    std::vector<uint32_t> pivot_col;
    uint32_t row = 0;
    for (uint32_t c = 0; c < n && row < n; ++c) {
        uint32_t pr = row;
        while (pr < n && col[pr * n + c] == 0) ++pr;
        if (pr == n) continue;
        for (uint32_t j = 0; j < n; ++j) std::swap(col[row * n + j], col[pr * n + j]);
        uint8_t il = inv_mod(col[row * n + c], q_);
        for (uint32_t j = 0; j < n; ++j) col[row * n + j] = (uint8_t)((uint32_t)col[row * n + j] * il % q_);
        for (uint32_t r2 = 0; r2 < n; ++r2) {
            if (r2 == row) continue;
            uint32_t f = col[r2 * n + c];
            if (!f) continue;
            for (uint32_t j = 0; j < n; ++j)
                col[r2 * n + j] = (uint8_t)((col[r2 * n + j] + (q_ - 1) * f % q_ * col[row * n + j]) % q_);
        }
        pivot_col.push_back(c);
        ++row;
    }
    std::vector<fqm> basis;
    uint32_t pi = 0;
    for (uint32_t c = 0; c < n; ++c) {
        if (pi < pivot_col.size() && pivot_col[pi] == c) { ++pi; continue; }
        std::vector<uint8_t> v(n, 0);
        v[c] = 1;
        for (uint32_t r = 0; r < pivot_col.size(); ++r)
            v[pivot_col[r]] = (uint8_t)((q_ - col[r * n + c]) % q_);
        basis.push_back(from_digits(v));
    }
    if (basis.size() != l) fail(errc::internal, "subfield dimension mismatch");
    return basis;
}

fqm field_ctx::random_element(rng& r, sample constraint, uint32_t subfield_l) const {
    if (constraint == sample::in_subfield) {
        auto basis = subfield_basis(subfield_l);
        fqm a = zero();
        for (const fqm& b : basis) a = add(a, scalar_mul(b, (uint8_t)r.uniform_below(q_)));
        return a;
    }
    for (;;) {
        fqm a{};
        if (tabled_) {
            a.w[0] = r.uniform_below(card_);
        } else {
            for (uint32_t t = 0; t < 3; ++t) a.w[t] = r.next();
            uint32_t top = m_ & 63, full = m_ >> 6;
            for (uint32_t t = full + 1; t < 3; ++t) a.w[t] = 0;
            if (full < 3) a.w[full] &= top ? ((1ull << top) - 1) : 0;
        }
        if (constraint == sample::not_in_prime_field && in_prime_field(a)) continue;
        return a;
    }
}

std::string field_ctx::to_string(fqm a) const {
    std::string s(m_, '0');
    for (uint32_t t = 0; t < m_; ++t) {
        uint8_t d = digit(a, t);
        s[t] = (char)(d < 10 ? '0' + d : 'a' + d - 10);
    }
    return s;
}

fqm field_ctx::parse(std::string_view s) const {
    if (s.size() != m_) fail(errc::bad_input, "element string must have m digits");
    std::vector<uint8_t> d(m_);
    for (uint32_t t = 0; t < m_; ++t) {
        char c = s[t];
        uint8_t v = c >= '0' && c <= '9' ? (uint8_t)(c - '0')
                  : c >= 'a' && c <= 'z' ? (uint8_t)(c - 'a' + 10)
                                         : 255;
        if (v >= q_) fail(errc::bad_input, "bad digit in element string");
        d[t] = v;
    }
    return from_digits(d);
}

} // namespace lg
