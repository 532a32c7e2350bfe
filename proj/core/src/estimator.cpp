#include "lg/estimator.hpp"

#include <cmath>

#include "lg/attack.hpp"

namespace lg {

bignat bignat::from_u64(uint64_t v) {
    bignat b;
    if (v) b.limbs.push_back(v);
    return b;
}

bignat bignat::power(uint32_t base, uint32_t e) {
    bignat b = from_u64(1);
    for (uint32_t i = 0; i < e; ++i) b.mul_u32(base);
    return b;
}

void bignat::add(const bignat& other) {
    limbs.resize(std::max(limbs.size(), other.limbs.size()), 0);
    unsigned __int128 carry = 0;
    for (size_t i = 0; i < limbs.size(); ++i) {
        unsigned __int128 s = (unsigned __int128)limbs[i] + carry;
        if (i < other.limbs.size()) s += other.limbs[i];
        limbs[i] = (uint64_t)s;
        carry = s >> 64;
    }
    if (carry) limbs.push_back((uint64_t)carry);
}

void bignat::mul_u32(uint32_t f) {
    if (f == 0) { limbs.clear(); return; }
    unsigned __int128 carry = 0;
    for (uint64_t& l : limbs) {
        unsigned __int128 p = (unsigned __int128)l * f + carry;
        l = (uint64_t)p;
        carry = p >> 64;
    }
    while (carry) {
        limbs.push_back((uint64_t)carry);
        carry >>= 64;
    }
}

void bignat::sub_u64(uint64_t v) {
    if (limbs.empty()) {
        if (v) fail(errc::internal, "bignat underflow");
        return;
    }
    if (limbs[0] >= v) {
        limbs[0] -= v;
    } else {
        limbs[0] = (uint64_t)(((unsigned __int128)1 << 64) + limbs[0] - v);
        size_t i = 1;
        while (true) {
            if (i >= limbs.size()) fail(errc::internal, "bignat underflow");
            if (limbs[i]-- != 0) break;
            ++i;
        }
    }
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
}

std::optional<uint64_t> bignat::as_u64() const {
    if (limbs.empty()) return 0;
    if (limbs.size() > 1) return std::nullopt;
    return limbs[0];
}

double bignat::log2() const {
    if (limbs.empty()) fail(errc::bad_input, "log2 of zero");
    // long double keeps a 64-bit mantissa, so the top two limbs enter exactly
    size_t i = limbs.size() - 1;
    long double top = (long double)limbs[i];
    if (i > 0) top += (long double)limbs[i - 1] / 18446744073709551616.0L;
    return (double)(64.0L * (long double)i + std::log2(top));
}

bignat gaussian_binomial(uint32_t n, uint32_t k, uint32_t q) {
    if (k > n) return bignat{};
    // [n,k]_q = [n-1,k-1]_q + q^k [n-1,k]_q
    std::vector<bignat> row(k + 1);
    row[0] = bignat::from_u64(1);
    for (uint32_t nn = 1; nn <= n; ++nn) {
        uint32_t top = std::min(k, nn);
        for (uint32_t kk = top; kk >= 1; --kk) {
            for (uint32_t s = 0; s < kk; ++s) row[kk].mul_u32(q);
            row[kk].add(row[kk - 1]);
        }
    }
    return row[k];
}

step1_estimate step1_success_log2(uint32_t q, uint32_t m, uint32_t r) {
    if (r < 3 || r >= m) fail(errc::bad_input, "need 3 <= r < m");
    bignat qm = bignat::power(q, m);
    bignat qm_minus1 = qm;
    qm_minus1.sub_u64(1);
    double log_s = qm_minus1.log2() - std::log2((double)(q - 1));
    double log_pa = gaussian_binomial(r, 3, q).log2() - gaussian_binomial(m, 3, q).log2();

    bignat qm_minusq = qm;
    qm_minusq.sub_u64(q);
    step1_estimate e;
    e.random_subspace_log2 = log_s + log_pa;
    e.beta_family_log2 = 2.0 - qm_minusq.log2();
    e.max_log2 = std::max(e.random_subspace_log2, e.beta_family_log2);
    e.beta_dominates = e.beta_family_log2 >= e.random_subspace_log2;
    return e;
}

attack_bits_result attack_bits(uint32_t q, uint32_t m, uint32_t n, uint32_t k) {
    if (!(m >= n && n > k && k >= 1)) fail(errc::bad_input, "need m >= n > k >= 1");
    bignat qm_minusq = bignat::power(q, m);
    qm_minusq.sub_u64(q);
    double real = 3.0 * std::log2((double)m * k * (n - k)) + qm_minusq.log2() - 2.0;
    return {real, std::lround(real)};
}

std::vector<uint32_t> proper_divisors(uint32_t m) {
    std::vector<uint32_t> ds;
    for (uint32_t l = 2; l < m; ++l)
        if (m % l == 0) ds.push_back(l);
    return ds;
}

std::optional<weak_key_prob> weak_key_prob_log2(uint32_t q, uint32_t m, uint32_t n, uint32_t k) {
    std::optional<uint32_t> l_star;
    for (uint32_t l : proper_divisors(m))
        if (k + l < n && l <= k - 1) l_star = l;
    if (!l_star) return std::nullopt;
    return weak_key_prob{*l_star, ((double)*l_star - (double)m) * std::log2((double)q)};
}

double weak_T_bits(uint32_t q, uint32_t m, uint32_t n, uint32_t k, uint32_t l) {
    if (l <= 1 || l >= m || m % l != 0) fail(errc::precondition_failed, "l must be a proper divisor of m");
    if (!(k + l < n && l <= k - 1)) fail(errc::precondition_failed, "need k + l < n and l <= k - 1");
    double base = 3.0 * std::log2((double)m * k * (n - k));
    size_t r = attack_r_budget(n, k);
    if (l <= r) return base;
    // expected guesses min(q^l, q^(2l - 3r)), floored at one iteration
    double extra = std::min((double)l, 2.0 * l - 3.0 * (double)r);
    return base + std::max(0.0, extra) * std::log2((double)q);
}

const std::vector<scheme_preset>& lg_presets() {
    static const std::vector<scheme_preset> presets = {
        {"LG-I", 2, 83, 79, 31, 128, 132},
        {"LG-II", 2, 85, 83, 29, 128, 134},
        {"LG-III", 2, 97, 89, 23, 128, 146},
        {"LG-IV", 2, 117, 115, 49, 256, 170},
        {"LG-V", 2, 129, 127, 36, 256, 183},
        {"LG-VI", 2, 133, 131, 34, 256, 187},
        {"LG-VII", 2, 85, 83, 35, 140, 134},
        {"LG-VIII", 2, 91, 89, 28, 140, 140},
    };
    return presets;
}

} // namespace lg
