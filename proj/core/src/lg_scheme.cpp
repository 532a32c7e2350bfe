#include "lg/lg_scheme.hpp"

namespace lg {

lg_params validate_params(uint32_t q, uint32_t m, uint32_t n, uint32_t k) {
    std::string violations;
    auto flag = [&](const std::string& s) {
        if (!violations.empty()) violations += "; ";
        violations += s;
    };
    uint32_t t = k < n ? (n - k) / 2 : 0;
    uint32_t a = t / 3;
    if (!(m >= n && n > k && k >= 1)) flag("need m >= n > k >= 1");
    if (k >= 1 && n >= 1 && k <= n && (n - 1) % k == 0) flag("k divides n-1");
    if (a < 1) flag("a = floor((n-k)/2 / 3) must be >= 1");
    if (!violations.empty())
        fail(errc::constraint_violation, "invalid LG parameters: " + violations);
    return lg_params{q, m, n, k, t, a};
}

mat_fqm lg_private_key::q_matrix() const {
    const field_ctx& f = *F;
    mat_fqm q = p;
    for (size_t r = 0; r < q.rows; ++r)
        for (size_t c = 0; c < q.cols; ++c) q.at(r, c) = f.mul(q.at(r, c), f.inv(lambda[c]));
    return q;
}

lambda_gab_code lg_private_key::code() const { return lambda_gab_code(gab_code(F, g, params.k), lambda); }

vec_fqm random_full_weight_vector(const field_ctx& F, size_t n, rng& r) {
    if (n > F.m()) fail(errc::bad_input, "full-weight vector longer than m");
    for (;;) {
        vec_fqm v(n);
        for (fqm& x : v) x = F.random_element(r);
        if (rank_weight(F, v) == n) return v;
    }
}

mat_fqm random_invertible(const field_ctx& F, size_t n, rng& r) {
    for (;;) {
        mat_fqm a(n, n);
        for (fqm& x : a.e) x = F.random_element(r);
        if (rank(F, a) == n) return a;
    }
}

vec_fqm random_message(const field_ctx& F, size_t k, rng& r) {
    vec_fqm msg(k);
    for (fqm& x : msg) x = F.random_element(r);
    return msg;
}

vec_fqm random_rank_error(const field_ctx& F, size_t n, size_t a, rng& r) {
    if (a > n || a > F.m()) fail(errc::bad_input, "error rank exceeds n or m");
    if (a == 0) return vec_fqm(n, F.zero());
    vec_fqm basis;
    do {
        basis = vec_fqm(a);
        for (fqm& x : basis) x = F.random_element(r);
    } while (rank_weight(F, basis) != a);
    mat_fq coords(a, n, F.q());
    do {
        for (auto& d : coords.e) d = (uint8_t)r.uniform_below(F.q());
    } while (fq_rank(coords) != a);
    vec_fqm e(n, F.zero());
    for (size_t i = 0; i < n; ++i)
        for (size_t u = 0; u < a; ++u)
            e[i] = F.add(e[i], F.scalar_mul(basis[u], coords.at(u, i)));
    return e;
}

std::pair<lg_public_key, lg_private_key> keygen(const lg_params& params, rng& r,
                                                uint32_t gamma_subfield_l) {
    auto F = field_ctx::get(params.q, params.m);
    const field_ctx& f = *F;
    uint32_t n = params.n, k = params.k;

    fqm gamma;
    for (;;) {
        gamma = gamma_subfield_l == 0
                    ? f.random_element(r, sample::not_in_prime_field)
                    : f.random_element(r, sample::in_subfield, gamma_subfield_l);
        if (f.in_prime_field(gamma)) continue;
        if (f.mul(gamma, gamma) == f.one()) continue;
        break;
    }
    fqm gamma_inv = f.inv(gamma);

    vec_fqm lambda(n);
    for (fqm& l : lambda) l = r.coin() ? gamma : gamma_inv;

    vec_fqm g = random_full_weight_vector(f, n, r);
    mat_fqm s = random_invertible(f, k, r);

    // P entries are b*gamma or c*gamma^-1 with b, c uniform in F_q (zero
    // allowed); resample the whole matrix until invertible.
    mat_fqm p(n, n);
    for (;;) {
        for (fqm& x : p.e) {
            fqm side = r.coin() ? gamma : gamma_inv;
            x = f.scalar_mul(side, (uint8_t)r.uniform_below(f.q()));
        }
        if (rank(f, p) == n) break;
    }

    mat_fqm g_lambda = lambda_gab_code(gab_code(F, g, k), lambda).generator();
    mat_fqm p_inv = *inverse(f, p);
    mat_fqm g_pub = mat_mul(f, mat_mul(f, s, g_lambda), p_inv);

    lg_public_key pk{F, params, std::move(g_pub)};
    lg_private_key sk{F, params, std::move(s), std::move(g), std::move(lambda), std::move(p), gamma};
    return {std::move(pk), std::move(sk)};
}

vec_fqm encrypt(const lg_public_key& pk, const vec_fqm& msg, rng& r) {
    const field_ctx& f = *pk.F;
    if (msg.size() != pk.params.k) fail(errc::bad_input, "message length must be k");
    vec_fqm y = vec_mat_mul(f, msg, pk.g_pub);
    vec_fqm e = random_rank_error(f, pk.params.n, pk.params.a, r);
    return vec_add(f, y, e);
}

std::optional<vec_fqm> decrypt(const lg_private_key& sk, const vec_fqm& y) {
    const field_ctx& f = *sk.F;
    if (y.size() != sk.params.n) fail(errc::bad_input, "ciphertext length must be n");
    // y P Delta^-1 is a corrupted word of Gab(g, k); the twisted error rank
    // stays <= 3a <= t because Q^-1 has rank weight at most 3.
    vec_fqm yp = vec_mat_mul(f, y, sk.p);
    for (size_t i = 0; i < yp.size(); ++i) yp[i] = f.mul(yp[i], f.inv(sk.lambda[i]));
    gab_code code(sk.F, sk.g, sk.params.k);
    auto dec = code.decode(yp);
    if (!dec) return std::nullopt;
    // decoded message is msg * S
    auto msg = solve(f, transpose(sk.s), dec->message);
    if (!msg) return std::nullopt;
    return *msg;
}

} // namespace lg
