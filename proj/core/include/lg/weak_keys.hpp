#pragma once

#include "lg/attack.hpp"

namespace lg {

enum class weak_verdict { weak, generic, inconclusive };

struct divisor_result {
    uint32_t l = 0;
    size_t dim = 0;              // observed dim(C_pub + C_pub^[l])
    size_t expected_weak = 0;    // k + l
    size_t expected_generic = 0; // min(2k, n)
    weak_verdict verdict = weak_verdict::inconclusive;
    double generic_failure_bound = 0; // 4 q^(-m/l)
    bool precondition_ok = false;     // l < min(k, n-k)
};

struct frobenius_scan_result {
    uint32_t m = 0;
    std::vector<divisor_result> divisors;
};

/// Entrywise q^l-power of a generator matrix.
mat_fqm frobenius_code(const field_ctx& F, const mat_fqm& g, int64_t l);

/// Rank of the stacked [G_pub; G_pub^[l]]: k+l flags gamma in F_{q^l},
/// min(2k, n) is the generic value; anything else (or l outside the
/// guarantee l < min(k, n-k)) is inconclusive.
divisor_result distinguish(const lg_public_key& pk, uint32_t l);

/// Runs distinguish for every proper divisor of m inside the guarantee.
frobenius_scan_result scan(const lg_public_key& pk);

/// Key recovery once distinguish flagged l: a single subfield-basis solve
/// when l fits the guess budget, otherwise the guessing attack with beta
/// restricted to F_{q^l}. Throws precondition_failed on unflagged keys.
attack_report weak_attack(const lg_public_key& pk, uint32_t l, const attack_config& cfg);

} // namespace lg
