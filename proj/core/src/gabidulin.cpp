#include "lg/gabidulin.hpp"

namespace lg {

namespace {

// Syndrome of y against moore(h, d).
vec_fqm syndromes(const field_ctx& F, const vec_fqm& h, const vec_fqm& y, size_t d) {
    vec_fqm s(d, F.zero());
    vec_fqm hf = h;
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < h.size(); ++i) s[j] = F.add(s[j], F.mul(hf[i], y[i]));
        if (j + 1 < d)
            for (fqm& v : hf) v = F.frobenius(v, 1);
    }
    return s;
}

// Root space of the linearized polynomial sum_p lam[p] x^[p] + x^[w]
// as elements of F_{q^m}; lam has length w.
std::vector<fqm> linearized_root_space(const field_ctx& F, const vec_fqm& lam) {
    uint32_t m = F.m();
    size_t w = lam.size();
    vec_fqm powers(m);
    powers[0] = F.one();
    for (uint32_t j = 1; j < m; ++j) powers[j] = F.mul(powers[j - 1], F.gen());

    mat_fq a(m, m, F.q());
    for (uint32_t c = 0; c < m; ++c) {
        fqm val = F.frobenius(powers[c], (int64_t)w);
        for (size_t p = 0; p < w; ++p)
            if (!lam[p].is_zero()) val = F.add(val, F.mul(lam[p], F.frobenius(powers[c], (int64_t)p)));
        for (uint32_t r = 0; r < m; ++r) a.at(r, c) = F.digit(val, r);
    }
    mat_fq k = fq_kernel(a);
    std::vector<fqm> roots;
    for (size_t r = 0; r < k.rows; ++r) {
        std::vector<uint8_t> d(m);
        for (uint32_t t = 0; t < m; ++t) d[t] = k.at(r, t);
        roots.push_back(F.from_digits(d));
    }
    return roots;
}

} // namespace

std::optional<vec_fqm> syndrome_decode(const field_ctx& F, const vec_fqm& h, const vec_fqm& s,
                                       size_t t_cap) {
    size_t L = h.size(), d = s.size();
    if (t_cap > d / 2) fail(errc::bad_input, "t_cap must be at most d/2");
    if (rank_weight(F, h) != L) fail(errc::not_a_basis, "syndrome support must have full rank weight");

    bool zero = true;
    for (const fqm& v : s) zero &= v.is_zero();
    if (zero) return vec_fqm(L, F.zero());

    // h_i^[j] for j < d, reused by the coordinate solve and verification
    std::vector<vec_fqm> hf(d, h);
    for (size_t j = 1; j < d; ++j)
        for (size_t i = 0; i < L; ++i) hf[j][i] = F.frobenius(hf[j - 1][i], 1);

    for (size_t w = 1; w <= t_cap; ++w) {
        // key equation: sum_{p<=w} lam_p s_{j-p}^[p] = 0 (lam_w = 1), j = w..d-1
        mat_fqm a(d - w, w);
        vec_fqm rhs(d - w);
        for (size_t j = w; j < d; ++j) {
            for (size_t p = 0; p < w; ++p) a.at(j - w, p) = F.frobenius(s[j - p], (int64_t)p);
            rhs[j - w] = F.neg(F.frobenius(s[j - w], (int64_t)w));
        }
        auto lam = solve(F, a, rhs);
        if (!lam) continue;

        std::vector<fqm> eps = linearized_root_space(F, *lam);
        if (eps.size() != w) continue;

        // coordinates: sum_u sum_i (eps_u h_i^[j]) E[u,i] = s_j over F_q
        mat_fqm forms(d, w * L);
        for (size_t j = 0; j < d; ++j)
            for (size_t u = 0; u < w; ++u)
                for (size_t i = 0; i < L; ++i)
                    forms.at(j, u * L + i) = F.mul(eps[u], hf[j][i]);
        auto [sys, srhs] = unfold_over_base(F, forms, s);
        auto coords = fq_solve(sys, srhs);
        if (!coords) continue;

        vec_fqm e(L, F.zero());
        for (size_t i = 0; i < L; ++i)
            for (size_t u = 0; u < w; ++u)
                e[i] = F.add(e[i], F.scalar_mul(eps[u], (*coords)[u * L + i]));

        if (rank_weight(F, e) != w) continue;
        bool match = true;
        for (size_t j = 0; j < d && match; ++j) {
            fqm sj = F.zero();
            for (size_t i = 0; i < L; ++i) sj = F.add(sj, F.mul(hf[j][i], e[i]));
            match = sj == s[j];
        }
        if (match) return e;
    }
    return std::nullopt;
}

gab_code::gab_code(field_ptr F, vec_fqm g, size_t k) : F_(std::move(F)), g_(std::move(g)), k_(k) {
    size_t n = g_.size();
    if (k_ < 1 || k_ > n) fail(errc::bad_input, "code dimension must satisfy 1 <= k <= n");
    if (n > F_->m()) fail(errc::bad_input, "code length exceeds extension degree");
    if (rank_weight(*F_, g_) != n) fail(errc::not_a_basis, "support must have rank weight n");

    if (k_ < n) {
        // dual support: sum_i g_i^[j] h_i = 0 for j = -(n-k-1) .. k-1
        size_t d = n - k_;
        mat_fqm sys(n - 1, n);
        for (size_t r = 0; r < n - 1; ++r) {
            int64_t j = (int64_t)r - (int64_t)(d - 1);
            for (size_t i = 0; i < n; ++i) sys.at(r, i) = F_->frobenius(g_[i], j);
        }
        mat_fqm ker = kernel(*F_, sys);
        if (ker.rows != 1) fail(errc::internal, "dual support space has unexpected dimension");
        h_.assign(ker.e.begin(), ker.e.end());
        if (rank_weight(*F_, h_) != n) fail(errc::internal, "dual support is not full weight");
    }
}

const vec_fqm& gab_code::dual_support() const {
    if (h_.empty()) fail(errc::precondition_failed, "dual support requires k < n");
    return h_;
}

mat_fqm gab_code::parity_check() const { return moore_matrix(*F_, dual_support(), n() - k_); }

vec_fqm gab_code::encode(const vec_fqm& message) const {
    if (message.size() != k_) fail(errc::bad_input, "message length must be k");
    return vec_mat_mul(*F_, message, generator());
}

std::optional<decoded> gab_code::decode(const vec_fqm& y) const {
    if (y.size() != n()) fail(errc::bad_input, "received word length must be n");
    vec_fqm c = y, e(n(), F_->zero());
    if (k_ < n()) {
        vec_fqm s = syndromes(*F_, h_, y, n() - k_);
        auto err = syndrome_decode(*F_, h_, s, t());
        if (!err) return std::nullopt;
        e = *err;
        c = vec_sub(*F_, y, e);
    }
    auto msg = solve(*F_, transpose(generator()), c);
    if (!msg) return std::nullopt;
    return decoded{*msg, c, e};
}

lambda_gab_code::lambda_gab_code(gab_code base, vec_fqm lambda)
    : base_(std::move(base)), lambda_(std::move(lambda)) {
    if (lambda_.size() != base_.n()) fail(errc::bad_input, "multiplier length must be n");
    for (const fqm& l : lambda_)
        if (l.is_zero()) fail(errc::bad_input, "multiplier entries must be nonzero");
}

mat_fqm lambda_gab_code::generator() const {
    const field_ctx& F = base_.field();
    mat_fqm g = base_.generator();
    for (size_t r = 0; r < g.rows; ++r)
        for (size_t c = 0; c < g.cols; ++c) g.at(r, c) = F.mul(g.at(r, c), lambda_[c]);
    return g;
}

std::optional<lambda_decoded> lambda_gab_code::decode(const vec_fqm& y) const {
    const field_ctx& F = base_.field();
    if (y.size() != base_.n()) fail(errc::bad_input, "received word length must be n");
    vec_fqm untwisted(y.size());
    for (size_t i = 0; i < y.size(); ++i) untwisted[i] = F.mul(y[i], F.inv(lambda_[i]));
    auto dec = base_.decode(untwisted);
    if (!dec) return std::nullopt;
    vec_fqm err = vec_sub(F, y, vec_mat_mul(F, dec->message, generator()));
    return lambda_decoded{dec->message, err};
}

lambda_gab_code lambda_gab_code::dual() const {
    const field_ctx& F = base_.field();
    if (base_.k() >= base_.n()) fail(errc::precondition_failed, "dual requires k < n");
    vec_fqm linv(lambda_.size());
    for (size_t i = 0; i < lambda_.size(); ++i) linv[i] = F.inv(lambda_[i]);
    return lambda_gab_code(gab_code(base_.field_ptr_(), base_.dual_support(), base_.n() - base_.k()),
                           std::move(linv));
}

} // namespace lg
