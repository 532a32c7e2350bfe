#include "lg/matrix.hpp"

#include <algorithm>

namespace lg {

namespace {

void check_dims(bool ok, const char* what) {
    if (!ok) fail(errc::bad_input, what);
}

uint8_t fq_inv(uint32_t c, uint32_t q) {
    uint32_t r = 1, b = c, e = q - 2;
    while (e) {
        if (e & 1) r = r * b % q;
        b = b * b % q;
        e >>= 1;
    }
    return (uint8_t)r;
}

// ---- packed GF(2) elimination ----

struct packed2 {
    size_t rows, cols, wpr;
    std::vector<uint64_t> bits;

    packed2(size_t r, size_t c) : rows(r), cols(c), wpr((c + 63) / 64), bits(r * wpr, 0) {}
    uint64_t* row(size_t r) { return bits.data() + r * wpr; }
    const uint64_t* row(size_t r) const { return bits.data() + r * wpr; }
    bool get(size_t r, size_t c) const { return (row(r)[c >> 6] >> (c & 63)) & 1; }
    void set(size_t r, size_t c) { row(r)[c >> 6] |= 1ull << (c & 63); }
    void xor_rows(size_t dst, size_t src) {
        uint64_t* d = row(dst);
        const uint64_t* s = row(src);
        for (size_t i = 0; i < wpr; ++i) d[i] ^= s[i];
    }
    void swap_rows(size_t a, size_t b) {
        if (a == b) return;
        std::swap_ranges(row(a), row(a) + wpr, row(b));
    }
};

packed2 pack2(const mat_fq& a) {
    packed2 p(a.rows, a.cols);
    for (size_t r = 0; r < a.rows; ++r)
        for (size_t c = 0; c < a.cols; ++c)
            if (a.e[r * a.cols + c]) p.set(r, c);
    return p;
}

mat_fq unpack2(const packed2& p, uint32_t q) {
    mat_fq a(p.rows, p.cols, q);
    for (size_t r = 0; r < p.rows; ++r)
        for (size_t c = 0; c < p.cols; ++c)
            if (p.get(r, c)) a.at(r, c) = 1;
    return a;
}

// Full Gauss-Jordan; returns pivot columns.
std::vector<size_t> rref2(packed2& p) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < p.cols && r < p.rows; ++c) {
        size_t pr = r;
        while (pr < p.rows && !p.get(pr, c)) ++pr;
        if (pr == p.rows) continue;
        p.swap_rows(r, pr);
        for (size_t r2 = 0; r2 < p.rows; ++r2)
            if (r2 != r && p.get(r2, c)) p.xor_rows(r2, r);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t rank2(packed2& p) {
    size_t r = 0;
    for (size_t c = 0; c < p.cols && r < p.rows; ++c) {
        size_t pr = r;
        while (pr < p.rows && !p.get(pr, c)) ++pr;
        if (pr == p.rows) continue;
        p.swap_rows(r, pr);
        for (size_t r2 = pr + 1; r2 < p.rows; ++r2)
            if (p.get(r2, c)) p.xor_rows(r2, r);
        ++r;
    }
    return r;
}

// Generic odd-q Gauss-Jordan.
std::vector<size_t> rref_bytes(mat_fq& a) {
    std::vector<size_t> pivots;
    uint32_t q = a.q;
    size_t r = 0;
    for (size_t c = 0; c < a.cols && r < a.rows; ++c) {
        size_t pr = r;
        while (pr < a.rows && a.at(pr, c) == 0) ++pr;
        if (pr == a.rows) continue;
        if (pr != r)
            for (size_t j = 0; j < a.cols; ++j) std::swap(a.at(r, j), a.at(pr, j));
        uint32_t il = fq_inv(a.at(r, c), q);
        for (size_t j = 0; j < a.cols; ++j) a.at(r, j) = (uint8_t)(a.at(r, j) * il % q);
        for (size_t r2 = 0; r2 < a.rows; ++r2) {
            if (r2 == r) continue;
            uint32_t f = a.at(r2, c);
            if (!f) continue;
            for (size_t j = 0; j < a.cols; ++j)
                a.at(r2, j) = (uint8_t)((a.at(r2, j) + (q - f) * a.at(r, j)) % q);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

// ---- F_{q^m} ----

mat_fqm identity_fqm(const field_ctx& F, size_t n) {
    mat_fqm a(n, n);
    for (size_t i = 0; i < n; ++i) a.at(i, i) = F.one();
    return a;
}

mat_fqm transpose(const mat_fqm& a) {
    mat_fqm t(a.cols, a.rows);
    for (size_t r = 0; r < a.rows; ++r)
        for (size_t c = 0; c < a.cols; ++c) t.at(c, r) = a.at(r, c);
    return t;
}

mat_fqm mat_mul(const field_ctx& F, const mat_fqm& a, const mat_fqm& b) {
    check_dims(a.cols == b.rows, "matrix product dimension mismatch");
    mat_fqm p(a.rows, b.cols);
    for (size_t r = 0; r < a.rows; ++r)
        for (size_t k = 0; k < a.cols; ++k) {
            fqm v = a.at(r, k);
            if (v.is_zero()) continue;
            for (size_t c = 0; c < b.cols; ++c)
                p.at(r, c) = F.add(p.at(r, c), F.mul(v, b.at(k, c)));
        }
    return p;
}

mat_fqm stack_rows(const mat_fqm& top, const mat_fqm& bottom) {
    check_dims(top.cols == bottom.cols, "stack_rows column mismatch");
    mat_fqm s(top.rows + bottom.rows, top.cols);
    std::copy(top.e.begin(), top.e.end(), s.e.begin());
    std::copy(bottom.e.begin(), bottom.e.end(), s.e.begin() + (ptrdiff_t)top.e.size());
    return s;
}

mat_fqm frobenius_mat(const field_ctx& F, const mat_fqm& a, int64_t l) {
    mat_fqm b = a;
    for (fqm& v : b.e) v = F.frobenius(v, l);
    return b;
}

mat_fqm scalar_mat_mul(const field_ctx& F, fqm c, const mat_fqm& a) {
    mat_fqm b = a;
    for (fqm& v : b.e) v = F.mul(c, v);
    return b;
}

mat_fqm mul_fq_left(const field_ctx& F, const mat_fq& t, const mat_fqm& b) {
    check_dims(t.cols == b.rows, "mul_fq_left dimension mismatch");
    mat_fqm p(t.rows, b.cols);
    for (size_t r = 0; r < t.rows; ++r)
        for (size_t k = 0; k < t.cols; ++k) {
            uint8_t v = t.at(r, k);
            if (!v) continue;
            for (size_t c = 0; c < b.cols; ++c)
                p.at(r, c) = F.add(p.at(r, c), F.scalar_mul(b.at(k, c), v));
        }
    return p;
}

mat_fqm mul_fq_right(const field_ctx& F, const mat_fqm& a, const mat_fq& t) {
    check_dims(a.cols == t.rows, "mul_fq_right dimension mismatch");
    mat_fqm p(a.rows, t.cols);
    for (size_t r = 0; r < a.rows; ++r)
        for (size_t k = 0; k < a.cols; ++k) {
            fqm v = a.at(r, k);
            if (v.is_zero()) continue;
            for (size_t c = 0; c < t.cols; ++c) {
                uint8_t f = t.at(k, c);
                if (f) p.at(r, c) = F.add(p.at(r, c), F.scalar_mul(v, f));
            }
        }
    return p;
}

vec_fqm vec_mat_mul(const field_ctx& F, const vec_fqm& x, const mat_fqm& a) {
    check_dims(x.size() == a.rows, "vec_mat_mul dimension mismatch");
    vec_fqm y(a.cols, F.zero());
    for (size_t r = 0; r < a.rows; ++r) {
        if (x[r].is_zero()) continue;
        for (size_t c = 0; c < a.cols; ++c)
            y[c] = F.add(y[c], F.mul(x[r], a.at(r, c)));
    }
    return y;
}

vec_fqm mat_vec_mul(const field_ctx& F, const mat_fqm& a, const vec_fqm& x) {
    check_dims(x.size() == a.cols, "mat_vec_mul dimension mismatch");
    vec_fqm y(a.rows, F.zero());
    for (size_t r = 0; r < a.rows; ++r)
        for (size_t c = 0; c < a.cols; ++c)
            y[r] = F.add(y[r], F.mul(a.at(r, c), x[c]));
    return y;
}

vec_fqm vec_add(const field_ctx& F, const vec_fqm& x, const vec_fqm& y) {
    check_dims(x.size() == y.size(), "vector length mismatch");
    vec_fqm z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = F.add(x[i], y[i]);
    return z;
}

vec_fqm vec_sub(const field_ctx& F, const vec_fqm& x, const vec_fqm& y) {
    check_dims(x.size() == y.size(), "vector length mismatch");
    vec_fqm z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = F.sub(x[i], y[i]);
    return z;
}

vec_fqm vec_scale(const field_ctx& F, fqm c, const vec_fqm& x) {
    vec_fqm z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = F.mul(c, x[i]);
    return z;
}

rref_fqm_result rref(const field_ctx& F, mat_fqm a) {
    rref_fqm_result out;
    size_t r = 0;
    for (size_t c = 0; c < a.cols && r < a.rows; ++c) {
        size_t pr = r;
        while (pr < a.rows && a.at(pr, c).is_zero()) ++pr;
        if (pr == a.rows) continue;
        if (pr != r)
            for (size_t j = 0; j < a.cols; ++j) std::swap(a.at(r, j), a.at(pr, j));
        fqm il = F.inv(a.at(r, c));
        for (size_t j = 0; j < a.cols; ++j) a.at(r, j) = F.mul(il, a.at(r, j));
        for (size_t r2 = 0; r2 < a.rows; ++r2) {
            if (r2 == r) continue;
            fqm f = a.at(r2, c);
            if (f.is_zero()) continue;
            for (size_t j = 0; j < a.cols; ++j)
                a.at(r2, j) = F.sub(a.at(r2, j), F.mul(f, a.at(r, j)));
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = out.pivots.size();
    out.r = std::move(a);
    return out;
}

size_t rank(const field_ctx& F, const mat_fqm& a) { return rref(F, a).rank; }

mat_fqm kernel(const field_ctx& F, const mat_fqm& a) {
    auto rr = rref(F, a);
    std::vector<bool> is_pivot(a.cols, false);
    for (size_t c : rr.pivots) is_pivot[c] = true;
    mat_fqm k(a.cols - rr.rank, a.cols);
    size_t kr = 0;
    for (size_t c = 0; c < a.cols; ++c) {
        if (is_pivot[c]) continue;
        k.at(kr, c) = F.one();
        for (size_t p = 0; p < rr.pivots.size(); ++p)
            k.at(kr, rr.pivots[p]) = F.neg(rr.r.at(p, c));
        ++kr;
    }
    return k;
}

std::optional<vec_fqm> solve(const field_ctx& F, const mat_fqm& a, const vec_fqm& b) {
    check_dims(b.size() == a.rows, "solve rhs length mismatch");
    mat_fqm aug(a.rows, a.cols + 1);
    for (size_t r = 0; r < a.rows; ++r) {
        for (size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols) = b[r];
    }
    auto rr = rref(F, std::move(aug));
    if (!rr.pivots.empty() && rr.pivots.back() == a.cols) return std::nullopt;
    vec_fqm x(a.cols, F.zero());
    for (size_t p = 0; p < rr.pivots.size(); ++p) x[rr.pivots[p]] = rr.r.at(p, a.cols);
    return x;
}

std::optional<mat_fqm> inverse(const field_ctx& F, const mat_fqm& a) {
    check_dims(a.rows == a.cols, "inverse of non-square matrix");
    mat_fqm aug(a.rows, 2 * a.cols);
    for (size_t r = 0; r < a.rows; ++r) {
        for (size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols + r) = F.one();
    }
    auto rr = rref(F, std::move(aug));
    if (rr.rank < a.rows || rr.pivots.back() >= a.cols) return std::nullopt;
    mat_fqm inv(a.rows, a.cols);
    for (size_t r = 0; r < a.rows; ++r)
        for (size_t c = 0; c < a.cols; ++c) inv.at(r, c) = rr.r.at(r, a.cols + c);
    return inv;
}

// ---- F_q ----

rref_fq_result fq_rref(const mat_fq& a) {
    rref_fq_result out;
    if (a.q == 2) {
        packed2 p = pack2(a);
        out.pivots = rref2(p);
        out.r = unpack2(p, a.q);
    } else {
        out.r = a;
        out.pivots = rref_bytes(out.r);
    }
    out.rank = out.pivots.size();
    return out;
}

size_t fq_rank(const mat_fq& a) {
    if (a.q == 2) {
        packed2 p = pack2(a);
        return rank2(p);
    }
    mat_fq b = a;
    return rref_bytes(b).size();
}

mat_fq fq_kernel(const mat_fq& a) {
    auto rr = fq_rref(a);
    std::vector<bool> is_pivot(a.cols, false);
    for (size_t c : rr.pivots) is_pivot[c] = true;
    mat_fq k(a.cols - rr.rank, a.cols, a.q);
    size_t kr = 0;
    for (size_t c = 0; c < a.cols; ++c) {
        if (is_pivot[c]) continue;
        k.at(kr, c) = 1;
        for (size_t p = 0; p < rr.pivots.size(); ++p) {
            uint8_t v = rr.r.at(p, c);
            if (v) k.at(kr, rr.pivots[p]) = (uint8_t)((a.q - v) % a.q);
        }
        ++kr;
    }
    return k;
}

std::optional<std::vector<uint8_t>> fq_solve(const mat_fq& a, const std::vector<uint8_t>& b) {
    check_dims(b.size() == a.rows, "solve rhs length mismatch");
    mat_fq aug(a.rows, a.cols + 1, a.q);
    for (size_t r = 0; r < a.rows; ++r) {
        for (size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols) = b[r];
    }
    auto rr = fq_rref(aug);
    if (!rr.pivots.empty() && rr.pivots.back() == a.cols) return std::nullopt;
    std::vector<uint8_t> x(a.cols, 0);
    for (size_t p = 0; p < rr.pivots.size(); ++p) x[rr.pivots[p]] = rr.r.at(p, a.cols);
    return x;
}

std::optional<mat_fq> fq_solve_multi(const mat_fq& a, const mat_fq& rhs) {
    check_dims(rhs.rows == a.rows, "solve rhs row mismatch");
    mat_fq aug(a.rows, a.cols + rhs.cols, a.q);
    for (size_t r = 0; r < a.rows; ++r) {
        for (size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
        for (size_t c = 0; c < rhs.cols; ++c) aug.at(r, a.cols + c) = rhs.at(r, c);
    }
    auto rr = fq_rref(aug);
    if (!rr.pivots.empty() && rr.pivots.back() >= a.cols) return std::nullopt;
    mat_fq x(a.cols, rhs.cols, a.q);
    for (size_t p = 0; p < rr.pivots.size(); ++p)
        for (size_t c = 0; c < rhs.cols; ++c) x.at(rr.pivots[p], c) = rr.r.at(p, a.cols + c);
    return x;
}

mat_fq fq_mul(const mat_fq& a, const mat_fq& b) {
    check_dims(a.cols == b.rows, "matrix product dimension mismatch");
    mat_fq p(a.rows, b.cols, a.q);
    for (size_t r = 0; r < a.rows; ++r)
        for (size_t k = 0; k < a.cols; ++k) {
            uint32_t v = a.at(r, k);
            if (!v) continue;
            for (size_t c = 0; c < b.cols; ++c)
                p.at(r, c) = (uint8_t)((p.at(r, c) + v * b.at(k, c)) % a.q);
        }
    return p;
}

mat_fq fq_transpose(const mat_fq& a) {
    mat_fq t(a.cols, a.rows, a.q);
    for (size_t r = 0; r < a.rows; ++r)
        for (size_t c = 0; c < a.cols; ++c) t.at(c, r) = a.at(r, c);
    return t;
}

mat_fq fq_identity(uint32_t q, size_t n) {
    mat_fq a(n, n, q);
    for (size_t i = 0; i < n; ++i) a.at(i, i) = 1;
    return a;
}

// ---- rank-metric structure ----

mat_fqm moore_matrix(const field_ctx& F, const vec_fqm& g, size_t k) {
    if (k < 1) fail(errc::bad_input, "Moore matrix needs at least one row");
    mat_fqm a(k, g.size());
    for (size_t c = 0; c < g.size(); ++c) a.at(0, c) = g[c];
    for (size_t r = 1; r < k; ++r)
        for (size_t c = 0; c < g.size(); ++c) a.at(r, c) = F.frobenius(a.at(r - 1, c), 1);
    return a;
}

mat_fq digit_matrix(const field_ctx& F, std::span<const fqm> elems) {
    mat_fq d(elems.size(), F.m(), F.q());
    for (size_t r = 0; r < elems.size(); ++r)
        for (uint32_t t = 0; t < F.m(); ++t) d.at(r, t) = F.digit(elems[r], t);
    return d;
}

size_t rank_weight(const field_ctx& F, std::span<const fqm> elems) {
    return fq_rank(digit_matrix(F, elems));
}

size_t rank_weight(const field_ctx& F, const mat_fqm& a) {
    return rank_weight(F, std::span<const fqm>(a.e));
}

subspace span_subspace(const field_ctx& F, std::span<const fqm> elems) {
    auto rr = fq_rref(digit_matrix(F, elems));
    subspace s;
    for (size_t r = 0; r < rr.rank; ++r) {
        std::vector<uint8_t> d(F.m());
        for (uint32_t t = 0; t < F.m(); ++t) d[t] = rr.r.at(r, t);
        s.basis.push_back(F.from_digits(d));
    }
    return s;
}

subspace support(const field_ctx& F, std::span<const fqm> elems) { return span_subspace(F, elems); }

subspace support(const field_ctx& F, const mat_fqm& a) {
    return span_subspace(F, std::span<const fqm>(a.e));
}

bool subspace_contains(const field_ctx& F, const subspace& s, fqm x) {
    if (x.is_zero()) return true;
    vec_fqm all(s.basis);
    all.push_back(x);
    return fq_rank(digit_matrix(F, all)) == s.dim();
}

bool subspace_contains_all(const field_ctx& F, const subspace& outer, const subspace& inner) {
    for (const fqm& b : inner.basis)
        if (!subspace_contains(F, outer, b)) return false;
    return true;
}

bool subspace_equal(const field_ctx& F, const subspace& a, const subspace& b) {
    if (a.dim() != b.dim()) return false;
    return subspace_contains_all(F, a, b);
}

subspace subspace_scale(const field_ctx& F, fqm alpha, const subspace& s) {
    vec_fqm scaled(s.basis);
    for (fqm& v : scaled) v = F.mul(alpha, v);
    return span_subspace(F, scaled);
}

bool independent(const field_ctx& F, std::span<const fqm> elems) {
    return rank_weight(F, elems) == elems.size();
}

mat_fq unfold_over_base(const field_ctx& F, const mat_fqm& forms) {
    uint32_t m = F.m();
    mat_fq out(forms.rows * m, forms.cols, F.q());
    for (size_t e = 0; e < forms.rows; ++e)
        for (size_t u = 0; u < forms.cols; ++u) {
            fqm c = forms.at(e, u);
            if (c.is_zero()) continue;
            for (uint32_t t = 0; t < m; ++t) {
                uint8_t d = F.digit(c, t);
                if (d) out.at(e * m + t, u) = d;
            }
        }
    return out;
}

std::pair<mat_fq, std::vector<uint8_t>> unfold_over_base(const field_ctx& F, const mat_fqm& forms,
                                                         const vec_fqm& rhs) {
    check_dims(rhs.size() == forms.rows, "unfold rhs length mismatch");
    mat_fq out = unfold_over_base(F, forms);
    std::vector<uint8_t> r(forms.rows * F.m());
    for (size_t e = 0; e < forms.rows; ++e)
        for (uint32_t t = 0; t < F.m(); ++t) r[e * F.m() + t] = F.digit(rhs[e], t);
    return {std::move(out), std::move(r)};
}

mat_fq support_change_matrix(const field_ctx& F, const vec_fqm& g_prime, const vec_fqm& v) {
    if (g_prime.size() != F.m() || rank_weight(F, g_prime) != F.m())
        fail(errc::not_a_basis, "change-of-support basis must have rank weight m");
    // columns of B are the digit vectors of g'_i; solve B T = digits(v_j)
    mat_fq b = fq_transpose(digit_matrix(F, g_prime));
    mat_fq rhs = fq_transpose(digit_matrix(F, v));
    auto t = fq_solve_multi(b, rhs);
    if (!t) fail(errc::internal, "coordinate solve failed for a full basis");
    return *t;
}

} // namespace lg
