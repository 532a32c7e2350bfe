#pragma once

#include <optional>

#include "lg/matrix.hpp"

namespace lg {

struct decoded {
    vec_fqm message;
    vec_fqm codeword;
    vec_fqm error;
};

/// Finds the unique e of rank weight <= t_cap with moore(h, d) e^T = s^T,
/// where d = s.size() and h has rank weight h.size(). Works from the
/// syndromes alone: solves the linearized key equation for the error span
/// polynomial, takes its root space, then recovers coordinates over F_q.
/// Returns nullopt when no such e exists. Requires t_cap <= d/2.
std::optional<vec_fqm> syndrome_decode(const field_ctx& F, const vec_fqm& h, const vec_fqm& s,
                                       size_t t_cap);

/// Gabidulin code of length n, dimension k, full-rank-weight support g.
/// Corrects rank errors up to t = (n-k)/2. The dual support is computed at
/// construction, so instances are immutable and safe to share.
class gab_code {
public:
    gab_code(field_ptr F, vec_fqm g, size_t k);

    const field_ctx& field() const { return *F_; }
    field_ptr field_ptr_() const { return F_; }
    size_t n() const { return g_.size(); }
    size_t k() const { return k_; }
    size_t t() const { return (n() - k_) / 2; }
    const vec_fqm& g() const { return g_; }

    mat_fqm generator() const { return moore_matrix(*F_, g_, k_); }
    /// Support h of the dual code; moore(g,k) moore(h,n-k)^T = 0 and
    /// rank_weight(h) = n. Only defined for k < n.
    const vec_fqm& dual_support() const;
    mat_fqm parity_check() const;

    vec_fqm encode(const vec_fqm& message) const;
    std::optional<decoded> decode(const vec_fqm& y) const;

private:
    field_ptr F_;
    vec_fqm g_;
    size_t k_;
    vec_fqm h_; // dual support, empty when k == n
};

struct lambda_decoded {
    vec_fqm message;
    vec_fqm error;
};

/// Gabidulin generator right-multiplied by diag(lambda), all lambda_i != 0.
class lambda_gab_code {
public:
    lambda_gab_code(gab_code base, vec_fqm lambda);

    const gab_code& base() const { return base_; }
    const vec_fqm& lambda() const { return lambda_; }

    mat_fqm generator() const;
    /// Decodes y by untwisting with diag(lambda)^-1; succeeds whenever the
    /// twisted error rank stays within the base decoder radius.
    std::optional<lambda_decoded> decode(const vec_fqm& y) const;
    /// Dual code: multiplier is the entrywise inverse of lambda.
    lambda_gab_code dual() const;

private:
    gab_code base_;
    vec_fqm lambda_;
};

} // namespace lg
