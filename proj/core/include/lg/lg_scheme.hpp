#pragma once

#include "lg/gabidulin.hpp"

namespace lg {

/// Validated LG parameter set with the derived decoding radius t = (n-k)/2
/// and error weight a = t/3.
struct lg_params {
    uint32_t q = 2, m = 0, n = 0, k = 0;
    uint32_t t = 0, a = 0;
};

/// Checks q prime, m >= n > k, k not dividing n-1, and a >= 1; throws
/// constraint_violation listing every failed constraint.
lg_params validate_params(uint32_t q, uint32_t m, uint32_t n, uint32_t k);

struct lg_public_key {
    field_ptr F;
    lg_params params;
    mat_fqm g_pub; // k x n, rank k
};

struct lg_private_key {
    field_ptr F;
    lg_params params;
    mat_fqm s;      // k x k invertible scrambler
    vec_fqm g;      // Gabidulin support, rank weight n
    vec_fqm lambda; // entries in {gamma, gamma^-1}
    mat_fqm p;      // n x n invertible, entries in {b*gamma, c*gamma^-1}
    fqm gamma;

    /// Q = P diag(lambda)^-1; its support lies in <1, gamma^-2, gamma^2>.
    mat_fqm q_matrix() const;
    lambda_gab_code code() const;
};

/// Generates a key pair. gamma is drawn uniformly from F_{q^m} \ F_q with
/// gamma^2 != 1; pass gamma_subfield_l to restrict gamma to the subfield
/// F_{q^l} (for weak-key experiments).
std::pair<lg_public_key, lg_private_key> keygen(const lg_params& params, rng& r,
                                                uint32_t gamma_subfield_l = 0);

/// y = msg G_pub + e with rank_weight(e) = a exactly.
vec_fqm encrypt(const lg_public_key& pk, const vec_fqm& msg, rng& r);

std::optional<vec_fqm> decrypt(const lg_private_key& sk, const vec_fqm& y);

/// Uniform error vector of exact rank weight a: a random a-dimensional
/// support basis times a random full-rank a x n coordinate matrix.
vec_fqm random_rank_error(const field_ctx& F, size_t n, size_t a, rng& r);

/// Uniform vector with rank weight equal to its length (F_q-independent
/// entries), by rejection.
vec_fqm random_full_weight_vector(const field_ctx& F, size_t n, rng& r);

mat_fqm random_invertible(const field_ctx& F, size_t n, rng& r);

vec_fqm random_message(const field_ctx& F, size_t k, rng& r);

} // namespace lg
