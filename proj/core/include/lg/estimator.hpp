#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lg/error.hpp"

namespace lg {

/// Minimal unsigned bignum: enough for exact Gaussian binomials at
/// cryptographic sizes (additions and small multiplies, no division).
struct bignat {
    std::vector<uint64_t> limbs; // little-endian, trimmed

    static bignat from_u64(uint64_t v);
    static bignat power(uint32_t base, uint32_t e);

    void add(const bignat& other);
    void mul_u32(uint32_t f);
    void sub_u64(uint64_t v); // requires *this >= v
    bool is_zero() const { return limbs.empty(); }
    std::optional<uint64_t> as_u64() const;
    double log2() const; // requires nonzero
};

/// Exact q-binomial coefficient via the q-Pascal recurrence.
bignat gaussian_binomial(uint32_t n, uint32_t k, uint32_t q);

struct step1_estimate {
    double random_subspace_log2; // log2(S * P_alpha), exact binomials
    double beta_family_log2;     // log2(4 / (q^m - q))
    double max_log2;
    bool beta_dominates; // holds whenever r is within the attack budget
};

/// Success probability of the subspace-guessing step, both routes.
step1_estimate step1_success_log2(uint32_t q, uint32_t m, uint32_t r);

struct attack_bits_result {
    double real;
    long rounded;
};

/// log2 cost of the key-recovery attack:
/// 3 log2(m k (n-k)) + log2((q^m - q)/4).
attack_bits_result attack_bits(uint32_t q, uint32_t m, uint32_t n, uint32_t k);

struct weak_key_prob {
    uint32_t l_star;
    double log2_pw; // (l* - m) log2 q
};

/// Largest qualifying proper divisor of m (k + l < n, l <= k-1) and the
/// probability that gamma lands in that subfield; nullopt when m is prime
/// or no divisor qualifies.
std::optional<weak_key_prob> weak_key_prob_log2(uint32_t q, uint32_t m, uint32_t n, uint32_t k);

/// log2 cost of the weak-key attack for divisor l (two-case formula around
/// the guess budget r = k - ceil(k^2/n); expected iterations never below 1).
double weak_T_bits(uint32_t q, uint32_t m, uint32_t n, uint32_t k, uint32_t l);

std::vector<uint32_t> proper_divisors(uint32_t m);

struct scheme_preset {
    std::string label;
    uint32_t q, m, n, k;
    int claimed_security;
    int claimed_complexity; // attack cost column of the parameter survey
};

/// The eight published LG parameter sets.
const std::vector<scheme_preset>& lg_presets();

} // namespace lg
