#pragma once

#include "lg/lg_scheme.hpp"

namespace lg {

enum class attack_mode { full, planted, subfield };

struct attack_config {
    size_t r = 3;             // guessed subspace dimension (full / subfield modes)
    uint64_t max_iters = 100000;
    attack_mode mode = attack_mode::full;
    vec_fqm planted_basis;    // planted mode: use this F directly
    uint32_t subfield_l = 0;  // subfield mode: draw beta from F_{q^l}
    uint64_t seed = 0;
    unsigned jobs = 1;
};

/// (h0, M') is a working private key substitute: moore(h0, n-k) M' is a
/// parity check of the public code and M' has full column rank over F_{q^m}.
struct alternative_key {
    vec_fqm h0;      // length m, rank weight m
    mat_fqm m_prime; // m x n, entries in the guessed subspace
};

struct stage_times {
    double guess_ms = 0, build_ms = 0, solve_ms = 0, verify_ms = 0;
};

enum class attack_outcome { success, budget_exhausted };

struct attack_report {
    attack_outcome outcome = attack_outcome::budget_exhausted;
    uint64_t iterations = 0; // guesses evaluated
    std::optional<fqm> beta; // successful beta, when guessing
    size_t kernel_dim = 0;   // kernel dimension at success (or last planted solve)
    uint64_t solves = 0;     // linear-system solves performed
    double wall_ms = 0;
    stage_times stage_ms;
    std::optional<alternative_key> key;
};

struct recovered_message {
    vec_fqm message;
    vec_fqm error;
};

/// Largest admissible guess dimension k - ceil(k^2/n): beyond it the key
/// equation has more unknowns than equations.
size_t attack_r_budget(size_t n, size_t k);

/// Deterministic full-weight anchor (1, x, x^2, ..., x^(m-1)); any
/// rank-weight-m vector works, a fixed one keeps runs reproducible.
vec_fqm default_h0(const field_ctx& F);

/// Precomputes the beta-independent coefficients g_pub[a,i] * h0[j]^[b] of
/// the key equation so the guessing loop only multiplies in the basis of
/// each guessed subspace.
class key_equation_builder {
public:
    key_equation_builder(const field_ctx& F, const mat_fqm& g_pub, const vec_fqm& h0);

    /// The k(n-k) x n*m*r system over F_{q^m}: unknown (i,j,l) column order,
    /// coefficient g_pub[a,i] * f_l * h0[j]^[b] in equation (a,b).
    mat_fqm equations(std::span<const fqm> f_basis) const;
    /// Unfolded over F_q: mk(n-k) rows, m*n*r columns.
    mat_fq build(std::span<const fqm> f_basis) const;

    size_t n() const { return n_; }
    size_t m() const { return m_; }
    size_t eqs() const { return coeff_.rows; }

private:
    const field_ctx& F_;
    size_t n_, m_, k_;
    mat_fqm coeff_; // row (a,b), column (i,j)
};

mat_fq build_key_equation(const field_ctx& F, const mat_fqm& g_pub, const vec_fqm& h0,
                          std::span<const fqm> f_basis);

/// beta uniform in F_{q^m} \ F_q and the span of {1, beta, ..., beta^(r-1)}
/// (whose dimension may fall below r; such guesses are still evaluated).
std::pair<fqm, subspace> guess_subspace(const field_ctx& F, size_t r, rng& rand);

/// Reads one kernel vector back into M' (via the f_l expansion). Returns
/// nullopt on a trivial kernel; kernel_dim always reports the dimension.
std::optional<alternative_key> solve_and_extract(const field_ctx& F, const mat_fq& system,
                                                 std::span<const fqm> f_basis, const vec_fqm& h0,
                                                 size_t n, size_t* kernel_dim = nullptr);

/// Probe-decrypts a random message: true certifies the candidate as an
/// alternative private key (guards against accidental kernels).
bool verify_key(const alternative_key& cand, const lg_public_key& pk, rng& rand);

std::optional<recovered_message> recover_message(const alternative_key& cand,
                                                 const lg_public_key& pk, const vec_fqm& y);

attack_report run_attack(const lg_public_key& pk, const attack_config& cfg);

/// White-box construction from the real private key: M = T Q^T with T the
/// change of support mapping h0 onto the dual support of the hidden code.
alternative_key alternative_key_from_private(const lg_private_key& sk, const vec_fqm& h0);

} // namespace lg
