#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lg/galois.hpp"

namespace lg {

/// Dense row-major matrix over F_{q^m}.
struct mat_fqm {
    size_t rows = 0, cols = 0;
    std::vector<fqm> e;

    mat_fqm() = default;
    mat_fqm(size_t r, size_t c) : rows(r), cols(c), e(r * c) {}

    fqm& at(size_t r, size_t c) { return e[r * cols + c]; }
    const fqm& at(size_t r, size_t c) const { return e[r * cols + c]; }
    bool operator==(const mat_fqm&) const = default;
};

/// Dense row-major matrix over F_q, digits in [0, q).
struct mat_fq {
    size_t rows = 0, cols = 0;
    uint32_t q = 2;
    std::vector<uint8_t> e;

    mat_fq() = default;
    mat_fq(size_t r, size_t c, uint32_t q_) : rows(r), cols(c), q(q_), e(r * c, 0) {}

    uint8_t& at(size_t r, size_t c) { return e[r * cols + c]; }
    uint8_t at(size_t r, size_t c) const { return e[r * cols + c]; }
    bool operator==(const mat_fq&) const = default;
};

/// F_q-subspace of F_{q^m}, kept as an RREF-canonical basis so equal spaces
/// compare equal.
struct subspace {
    std::vector<fqm> basis;
    size_t dim() const { return basis.size(); }
};

using vec_fqm = std::vector<fqm>;

// ---- F_{q^m} linear algebra ----

mat_fqm identity_fqm(const field_ctx& F, size_t n);
mat_fqm transpose(const mat_fqm& a);
mat_fqm mat_mul(const field_ctx& F, const mat_fqm& a, const mat_fqm& b);
mat_fqm stack_rows(const mat_fqm& top, const mat_fqm& bottom);
/// Entrywise Frobenius^l.
mat_fqm frobenius_mat(const field_ctx& F, const mat_fqm& a, int64_t l);
mat_fqm scalar_mat_mul(const field_ctx& F, fqm c, const mat_fqm& a);

/// Left product with an F_q matrix (t_{i,k} in the prime field).
mat_fqm mul_fq_left(const field_ctx& F, const mat_fq& t, const mat_fqm& b);
mat_fqm mul_fq_right(const field_ctx& F, const mat_fqm& a, const mat_fq& t);

vec_fqm vec_mat_mul(const field_ctx& F, const vec_fqm& x, const mat_fqm& a);
vec_fqm mat_vec_mul(const field_ctx& F, const mat_fqm& a, const vec_fqm& x);
vec_fqm vec_add(const field_ctx& F, const vec_fqm& x, const vec_fqm& y);
vec_fqm vec_sub(const field_ctx& F, const vec_fqm& x, const vec_fqm& y);
vec_fqm vec_scale(const field_ctx& F, fqm c, const vec_fqm& x);

struct rref_fqm_result {
    mat_fqm r;
    std::vector<size_t> pivots;
    size_t rank = 0;
};

/// Reduced row echelon form with deterministic lowest-index pivoting.
rref_fqm_result rref(const field_ctx& F, mat_fqm a);
size_t rank(const field_ctx& F, const mat_fqm& a);
/// Basis of the right kernel {x : a x^T = 0}, one vector per row, in
/// RREF-canonical form (ordered by free column).
mat_fqm kernel(const field_ctx& F, const mat_fqm& a);
/// One solution of a x^T = b^T, or nullopt when inconsistent.
std::optional<vec_fqm> solve(const field_ctx& F, const mat_fqm& a, const vec_fqm& b);
std::optional<mat_fqm> inverse(const field_ctx& F, const mat_fqm& a);

// ---- F_q linear algebra (packed word operations when q = 2) ----

struct rref_fq_result {
    mat_fq r;
    std::vector<size_t> pivots;
    size_t rank = 0;
};

rref_fq_result fq_rref(const mat_fq& a);
size_t fq_rank(const mat_fq& a);
mat_fq fq_kernel(const mat_fq& a);
std::optional<std::vector<uint8_t>> fq_solve(const mat_fq& a, const std::vector<uint8_t>& b);
/// Solves a x = r column-by-column for a shared left-hand side.
std::optional<mat_fq> fq_solve_multi(const mat_fq& a, const mat_fq& r);
mat_fq fq_mul(const mat_fq& a, const mat_fq& b);
mat_fq fq_transpose(const mat_fq& a);
mat_fq fq_identity(uint32_t q, size_t n);

// ---- rank-metric structure ----

/// Moore matrix: row i is the entrywise q^i-power of g.
mat_fqm moore_matrix(const field_ctx& F, const vec_fqm& g, size_t k);

/// Rows are the digit vectors of the elements (one row per element).
mat_fq digit_matrix(const field_ctx& F, std::span<const fqm> elems);

size_t rank_weight(const field_ctx& F, std::span<const fqm> elems);
size_t rank_weight(const field_ctx& F, const mat_fqm& a);
subspace support(const field_ctx& F, std::span<const fqm> elems);
subspace support(const field_ctx& F, const mat_fqm& a);

subspace span_subspace(const field_ctx& F, std::span<const fqm> elems);
bool subspace_contains(const field_ctx& F, const subspace& s, fqm x);
bool subspace_contains_all(const field_ctx& F, const subspace& outer, const subspace& inner);
bool subspace_equal(const field_ctx& F, const subspace& a, const subspace& b);
subspace subspace_scale(const field_ctx& F, fqm alpha, const subspace& s);
bool independent(const field_ctx& F, std::span<const fqm> elems);

/// Expands F_{q^m}-linear forms in F_q-valued unknowns into an F_q system:
/// equation e becomes rows e*m+t (one per polynomial-basis coordinate t),
/// column ordering is preserved.
mat_fq unfold_over_base(const field_ctx& F, const mat_fqm& forms);
std::pair<mat_fq, std::vector<uint8_t>> unfold_over_base(const field_ctx& F, const mat_fqm& forms,
                                                         const vec_fqm& rhs);

/// T over F_q with g_prime * T = v, column j holding the coordinates of v_j
/// in the basis g_prime (which must have rank weight m).
mat_fq support_change_matrix(const field_ctx& F, const vec_fqm& g_prime, const vec_fqm& v);

} // namespace lg
