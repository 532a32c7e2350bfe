#include "lg/weak_keys.hpp"

#include <cmath>
#include <thread>

namespace lg {

mat_fqm frobenius_code(const field_ctx& F, const mat_fqm& g, int64_t l) {
    return frobenius_mat(F, g, l);
}

divisor_result distinguish(const lg_public_key& pk, uint32_t l) {
    const field_ctx& F = *pk.F;
    uint32_t m = pk.params.m, n = pk.params.n, k = pk.params.k;
    if (l == 0 || m % l != 0) fail(errc::not_a_divisor, "l must divide m");

    divisor_result res;
    res.l = l;
    res.expected_weak = k + l;
    res.expected_generic = std::min<size_t>(2 * (size_t)k, n);
    res.precondition_ok = l < std::min(k, n - k);
    res.generic_failure_bound = 4.0 * std::pow((double)pk.params.q, -(double)m / l);
    res.dim = rank(F, stack_rows(pk.g_pub, frobenius_code(F, pk.g_pub, l)));

    if (!res.precondition_ok)
        res.verdict = weak_verdict::inconclusive;
    else if (res.dim == res.expected_weak && res.expected_weak < n)
        res.verdict = weak_verdict::weak;
    else if (res.dim == res.expected_generic)
        res.verdict = weak_verdict::generic;
    else
        res.verdict = weak_verdict::inconclusive;
    return res;
}

frobenius_scan_result scan(const lg_public_key& pk) {
    uint32_t m = pk.params.m;
    frobenius_scan_result out;
    out.m = m;
    std::vector<uint32_t> ls;
    for (uint32_t l = 2; l < m; ++l) {
        if (m % l != 0) continue;
        if (l >= std::min(pk.params.k, pk.params.n - pk.params.k)) continue;
        ls.push_back(l);
    }
    out.divisors.resize(ls.size());
    if (ls.size() <= 1) {
        for (size_t i = 0; i < ls.size(); ++i) out.divisors[i] = distinguish(pk, ls[i]);
        return out;
    }
    // distinguish is pure, one thread per divisor
    std::vector<std::thread> pool;
    for (size_t i = 0; i < ls.size(); ++i)
        pool.emplace_back([&, i] { out.divisors[i] = distinguish(pk, ls[i]); });
    for (auto& t : pool) t.join();
    return out;
}

attack_report weak_attack(const lg_public_key& pk, uint32_t l, const attack_config& cfg) {
    const field_ctx& F = *pk.F;
    divisor_result d = distinguish(pk, l);
    if (d.verdict != weak_verdict::weak)
        fail(errc::precondition_failed, "distinguisher did not flag l = " + std::to_string(l));

    size_t rb = attack_r_budget(pk.params.n, pk.params.k);
    attack_config sub = cfg;
    if (l <= rb) {
        // gamma lies in F_{q^l} and V with it: the subfield itself is a
        // valid guess, one solve suffices
        sub.mode = attack_mode::planted;
        sub.planted_basis = F.subfield_basis(l);
        sub.max_iters = 1;
        return run_attack(pk, sub);
    }
    if (l <= pk.params.k - 1) {
        sub.mode = attack_mode::subfield;
        sub.subfield_l = l;
        sub.r = rb;
        return run_attack(pk, sub);
    }
    fail(errc::precondition_failed, "l exceeds k - 1");
}

} // namespace lg
