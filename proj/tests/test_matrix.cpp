#include "doctest.h"

#include <set>

#include "lg/matrix.hpp"

using namespace lg;

namespace {

mat_fq random_mat_fq(uint32_t q, size_t rows, size_t cols, rng& r) {
    mat_fq a(rows, cols, q);
    for (auto& d : a.e) d = (uint8_t)r.uniform_below(q);
    return a;
}

mat_fqm random_mat_fqm(const field_ctx& F, size_t rows, size_t cols, rng& r) {
    mat_fqm a(rows, cols);
    for (auto& x : a.e) x = F.random_element(r);
    return a;
}

// brute-force span of the rows of an F_2 matrix
std::set<std::vector<uint8_t>> row_span_f2(const mat_fq& a) {
    std::set<std::vector<uint8_t>> span;
    for (uint64_t mask = 0; mask < (1ull << a.rows); ++mask) {
        std::vector<uint8_t> v(a.cols, 0);
        for (size_t r = 0; r < a.rows; ++r)
            if (mask >> r & 1)
                for (size_t c = 0; c < a.cols; ++c) v[c] ^= a.at(r, c);
        span.insert(v);
    }
    return span;
}

// all F_2 solutions of a x^T = b^T by exhaustive assignment
std::set<std::vector<uint8_t>> brute_solutions_f2(const mat_fq& a, const std::vector<uint8_t>& b) {
    std::set<std::vector<uint8_t>> sols;
    for (uint64_t mask = 0; mask < (1ull << a.cols); ++mask) {
        std::vector<uint8_t> x(a.cols);
        for (size_t c = 0; c < a.cols; ++c) x[c] = (uint8_t)(mask >> c & 1);
        bool ok = true;
        for (size_t r = 0; r < a.rows && ok; ++r) {
            uint8_t acc = 0;
            for (size_t c = 0; c < a.cols; ++c) acc ^= (uint8_t)(a.at(r, c) & x[c]);
            ok = acc == b[r];
        }
        if (ok) sols.insert(x);
    }
    return sols;
}

std::set<std::vector<uint8_t>> kernel_span_f2(const mat_fq& k) {
    std::set<std::vector<uint8_t>> span;
    for (uint64_t mask = 0; mask < (1ull << k.rows); ++mask) {
        std::vector<uint8_t> v(k.cols, 0);
        for (size_t r = 0; r < k.rows; ++r)
            if (mask >> r & 1)
                for (size_t c = 0; c < k.cols; ++c) v[c] ^= k.at(r, c);
        span.insert(v);
    }
    return span;
}

} // namespace

TEST_SUITE("matrix") {

TEST_CASE("fq_rank agrees with exhaustive row-span enumeration") {
    rng r(21);
    for (int trial = 0; trial < 25; ++trial) {
        mat_fq a = random_mat_fq(2, 6, 4, r);
        size_t span_size = row_span_f2(a).size();
        CHECK((1ull << fq_rank(a)) == span_size);
    }
}

TEST_CASE("fq kernel and solve agree with brute force on small systems") {
    rng r(22);
    for (int trial = 0; trial < 20; ++trial) {
        size_t rows = 4 + trial % 5, cols = 5 + trial % 6; // cols <= 10
        mat_fq a = random_mat_fq(2, rows, cols, r);

        auto brute = brute_solutions_f2(a, std::vector<uint8_t>(rows, 0));
        mat_fq k = fq_kernel(a);
        CHECK(kernel_span_f2(k) == brute);

        std::vector<uint8_t> rhs(rows);
        for (auto& v : rhs) v = (uint8_t)r.uniform_below(2);
        auto sols = brute_solutions_f2(a, rhs);
        auto got = fq_solve(a, rhs);
        if (sols.empty()) {
            CHECK_FALSE(got.has_value());
        } else {
            REQUIRE(got.has_value());
            CHECK(sols.count(*got) == 1);
        }
    }
}

TEST_CASE("odd characteristic elimination") {
    rng r(23);
    mat_fq a = random_mat_fq(3, 5, 5, r);
    auto rr = fq_rref(a);
    CHECK(rr.rank <= 5);
    mat_fq k = fq_kernel(a);
    CHECK(k.rows == 5 - rr.rank);
    // every kernel row is an actual solution
    for (size_t kr = 0; kr < k.rows; ++kr) {
        for (size_t row = 0; row < a.rows; ++row) {
            uint32_t acc = 0;
            for (size_t c = 0; c < a.cols; ++c) acc = (acc + a.at(row, c) * k.at(kr, c)) % 3;
            CHECK(acc == 0);
        }
    }
}

TEST_CASE("rank of zero matrix and kernel of identity") {
    auto F = field_ctx::get(2, 8);
    mat_fqm z(4, 5);
    CHECK(rank(*F, z) == 0);
    CHECK(kernel(*F, identity_fqm(*F, 5)).rows == 0);
}

TEST_CASE("fqm solve and inverse") {
    auto F = field_ctx::get(2, 10);
    rng r(24);
    for (int trial = 0; trial < 10; ++trial) {
        mat_fqm a = random_mat_fqm(*F, 6, 6, r);
        auto ainv = inverse(*F, a);
        if (!ainv) continue;
        CHECK(mat_mul(*F, a, *ainv) == identity_fqm(*F, 6));
        vec_fqm x(6);
        for (auto& v : x) v = F->random_element(r);
        vec_fqm b = mat_vec_mul(*F, a, x);
        auto got = solve(*F, a, b);
        REQUIRE(got.has_value());
        CHECK(*got == x);
    }
}

TEST_CASE("kernel bases are deterministic and canonical") {
    rng r(25);
    mat_fq a = random_mat_fq(2, 6, 9, r);
    CHECK(fq_kernel(a) == fq_kernel(a));
    auto F = field_ctx::get(2, 9);
    mat_fqm b = random_mat_fqm(*F, 4, 7, r);
    CHECK(kernel(*F, b) == kernel(*F, b));
}

TEST_CASE("moore matrix structure") {
    auto F = field_ctx::get(2, 8);
    rng r(26);
    vec_fqm g(6);
    do {
        for (auto& x : g) x = F->random_element(r);
    } while (rank_weight(*F, g) != 6);

    mat_fqm m1 = moore_matrix(*F, g, 1);
    CHECK(m1.rows == 1);
    for (size_t j = 0; j < 6; ++j) CHECK(m1.at(0, j) == g[j]);

    mat_fqm m3 = moore_matrix(*F, g, 3);
    for (size_t j = 0; j < 6; ++j) {
        CHECK(m3.at(1, j) == F->frobenius(g[j], 1));
        CHECK(m3.at(2, j) == F->frobenius(g[j], 2));
    }
    CHECK(rank(*F, m3) == 3); // full-support generators give full-rank Moore matrices
}

TEST_CASE("moore matrix commutes with F_q column operations") {
    auto F = field_ctx::get(2, 10);
    rng r(27);
    for (int trial = 0; trial < 20; ++trial) {
        vec_fqm g(7);
        for (auto& x : g) x = F->random_element(r);
        mat_fq t = random_mat_fq(2, 7, 5, r);
        mat_fqm left = mul_fq_right(*F, moore_matrix(*F, g, 3), t);
        vec_fqm gt(5, F->zero());
        for (size_t i = 0; i < 7; ++i)
            for (size_t j = 0; j < 5; ++j)
                if (t.at(i, j)) gt[j] = F->add(gt[j], g[i]);
        CHECK(left == moore_matrix(*F, gt, 3));
    }
}

TEST_CASE("rank weight and support") {
    auto F = field_ctx::get(2, 9);
    rng r(28);

    vec_fqm zero(5, F->zero());
    CHECK(rank_weight(*F, zero) == 0);

    // (1, b, 1+b) spans exactly {0, 1, b, 1+b} when b is outside F_2
    fqm b = F->random_element(r, sample::not_in_prime_field);
    vec_fqm v{F->one(), b, F->add(F->one(), b)};
    CHECK(rank_weight(*F, v) == 2);
    subspace s = support(*F, v);
    CHECK(s.dim() == 2);
    std::set<std::vector<uint8_t>> span;
    for (int c0 = 0; c0 < 2; ++c0)
        for (int c1 = 0; c1 < 2; ++c1)
            span.insert(F->digits(F->add(F->scalar_mul(F->one(), (uint8_t)c0),
                                         F->scalar_mul(b, (uint8_t)c1))));
    for (const fqm& x : v) CHECK(span.count(F->digits(x)) == 1);

    // diagonal with entries from {gamma, gamma^-1}
    fqm gamma = F->random_element(r, sample::not_in_prime_field);
    mat_fqm d(6, 6);
    for (size_t i = 0; i < 6; ++i) d.at(i, i) = (i % 2) ? gamma : F->inv(gamma);
    CHECK(rank_weight(*F, d) <= 2);
}

TEST_CASE("rank weight is submultiplicative under matrix action") {
    auto F = field_ctx::get(2, 12);
    rng r(29);
    for (int trial = 0; trial < 20; ++trial) {
        vec_fqm x(8);
        for (auto& v : x) v = F->random_element(r);
        mat_fqm d = random_mat_fqm(*F, 8, 6, r);
        vec_fqm xd = vec_mat_mul(*F, x, d);
        CHECK(rank_weight(*F, xd) <= rank_weight(*F, x) * rank_weight(*F, d));
    }
}

TEST_CASE("subspace operations") {
    auto F = field_ctx::get(2, 10);
    rng r(30);
    fqm b = F->random_element(r, sample::not_in_prime_field);
    subspace s = span_subspace(*F, vec_fqm{F->one(), b, F->add(F->one(), b)});
    CHECK(s.dim() == 2);
    CHECK(subspace_contains(*F, s, F->add(F->one(), b)));
    CHECK(subspace_contains(*F, s, F->zero()));
    subspace s2 = span_subspace(*F, vec_fqm{b, F->one()});
    CHECK(subspace_equal(*F, s, s2));
    fqm alpha = F->random_element(r, sample::not_in_prime_field);
    subspace scaled = subspace_scale(*F, alpha, s);
    CHECK(scaled.dim() == 2);
    CHECK(subspace_contains(*F, scaled, F->mul(alpha, b)));
}

TEST_CASE("unfolding single equations") {
    auto F = field_ctx::get(2, 6);
    rng r(31);
    fqm c = F->random_element(r, sample::not_in_prime_field);

    mat_fqm one_eq(1, 1);
    one_eq.at(0, 0) = c;
    mat_fq sys = unfold_over_base(*F, one_eq);
    CHECK(sys.rows == 6);
    CHECK(sys.cols == 1);
    CHECK(fq_kernel(sys).rows == 0); // c != 0 forces x = 0

    one_eq.at(0, 0) = F->zero();
    mat_fq zero_sys = unfold_over_base(*F, one_eq);
    for (uint8_t d : zero_sys.e) CHECK(d == 0);
}

TEST_CASE("unfolded solutions match brute force over assignments") {
    auto F = field_ctx::get(2, 4);
    rng r(32);
    for (int trial = 0; trial < 10; ++trial) {
        mat_fqm forms = random_mat_fqm(*F, 3, 5, r);
        mat_fq sys = unfold_over_base(*F, forms);
        REQUIRE(sys.rows == 12);
        REQUIRE(sys.cols == 5);

        std::set<std::vector<uint8_t>> brute;
        for (uint64_t mask = 0; mask < 32; ++mask) {
            std::vector<uint8_t> x(5);
            for (size_t c = 0; c < 5; ++c) x[c] = (uint8_t)(mask >> c & 1);
            bool ok = true;
            for (size_t e = 0; e < 3 && ok; ++e) {
                fqm acc = F->zero();
                for (size_t c = 0; c < 5; ++c)
                    if (x[c]) acc = F->add(acc, forms.at(e, c));
                ok = acc.is_zero();
            }
            if (ok) brute.insert(x);
        }
        CHECK(kernel_span_f2(fq_kernel(sys)) == brute);
    }
}

TEST_CASE("support change matrix") {
    auto F = field_ctx::get(2, 6);
    rng r(33);
    vec_fqm gp(6);
    do {
        for (auto& x : gp) x = F->random_element(r);
    } while (rank_weight(*F, gp) != 6);

    SUBCASE("identity on the basis itself") {
        mat_fq t = support_change_matrix(*F, gp, gp);
        CHECK(t == fq_identity(2, 6));
    }
    SUBCASE("scaling stays full rank") {
        fqm alpha = F->random_element(r, sample::not_in_prime_field);
        vec_fqm v(6);
        for (size_t i = 0; i < 6; ++i) v[i] = F->mul(alpha, gp[i]);
        mat_fq t = support_change_matrix(*F, gp, v);
        for (size_t j = 0; j < 6; ++j) {
            fqm acc = F->zero();
            for (size_t i = 0; i < 6; ++i)
                if (t.at(i, j)) acc = F->add(acc, gp[i]);
            CHECK(acc == v[j]);
        }
        CHECK(fq_rank(t) == 6);
    }
    SUBCASE("random target at (m, n) = (6, 4)") {
        vec_fqm v(4);
        for (auto& x : v) x = F->random_element(r);
        mat_fq t = support_change_matrix(*F, gp, v);
        for (size_t j = 0; j < 4; ++j) {
            fqm acc = F->zero();
            for (size_t i = 0; i < 6; ++i)
                if (t.at(i, j)) acc = F->add(acc, gp[i]);
            CHECK(acc == v[j]);
        }
    }
    SUBCASE("rejects rank-deficient bases") {
        vec_fqm bad(6, F->one());
        CHECK_THROWS_AS(support_change_matrix(*F, bad, gp), error);
    }
}

} // TEST_SUITE
