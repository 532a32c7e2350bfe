#include "lg/attack.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>
#include <unordered_set>

namespace lg {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

subspace beta_power_subspace(const field_ctx& F, fqm beta, size_t r) {
    vec_fqm powers(r);
    powers[0] = F.one();
    for (size_t i = 1; i < r; ++i) powers[i] = F.mul(powers[i - 1], beta);
    return span_subspace(F, powers);
}

// Candidate population for duplicate tracking: q^l - q when small enough to
// risk repeats, 0 (meaning "do not track") otherwise.
uint64_t tracked_population(uint32_t q, uint32_t l) {
    double bits = l * std::log2((double)q);
    if (bits > 20.0) return 0;
    uint64_t card = 1;
    for (uint32_t i = 0; i < l; ++i) card *= q;
    return card - q;
}

alternative_key key_from_solution(const field_ctx& F, const std::vector<uint8_t>& x,
                                  std::span<const fqm> f_basis, const vec_fqm& h0, size_t n) {
    size_t m = h0.size(), r = f_basis.size();
    mat_fqm m_prime(m, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) {
            fqm v = F.zero();
            for (size_t l = 0; l < r; ++l) {
                uint8_t d = x[(i * m + j) * r + l];
                if (d) v = F.add(v, F.scalar_mul(f_basis[l], d));
            }
            m_prime.at(j, i) = v;
        }
    return alternative_key{h0, std::move(m_prime)};
}

// The first canonical kernel vector is the documented pick, but when the
// kernel stacks several alpha-scaled solution families (subfield guesses)
// that vector is a sparse mixture of deficient rank; random combinations of
// the basis then yield working keys, all from the same elimination.
std::optional<alternative_key> find_verified_key(const field_ctx& F, const mat_fq& kern,
                                                 std::span<const fqm> f_basis, const vec_fqm& h0,
                                                 const lg_public_key& pk, rng& vrng) {
    if (kern.rows == 0) return std::nullopt;
    size_t cols = kern.cols;
    std::vector<uint8_t> x(cols);
    for (size_t j = 0; j < cols; ++j) x[j] = kern.at(0, j);
    for (int attempt = 0; attempt < 17; ++attempt) {
        if (attempt > 0) {
            std::fill(x.begin(), x.end(), 0);
            for (size_t row = 0; row < kern.rows; ++row) {
                uint8_t c = (uint8_t)vrng.uniform_below(F.q());
                if (!c) continue;
                for (size_t j = 0; j < cols; ++j)
                    x[j] = (uint8_t)((x[j] + c * kern.at(row, j)) % F.q());
            }
        }
        alternative_key cand = key_from_solution(F, x, f_basis, h0, pk.params.n);
        if (verify_key(cand, pk, vrng)) return cand;
    }
    return std::nullopt;
}

} // namespace

size_t attack_r_budget(size_t n, size_t k) {
    size_t ceil_k2 = (k * k + n - 1) / n;
    return k > ceil_k2 ? k - ceil_k2 : 0;
}

vec_fqm default_h0(const field_ctx& F) {
    vec_fqm h(F.m());
    h[0] = F.one();
    for (size_t j = 1; j < F.m(); ++j) h[j] = F.mul(h[j - 1], F.gen());
    return h;
}

key_equation_builder::key_equation_builder(const field_ctx& F, const mat_fqm& g_pub,
                                           const vec_fqm& h0)
    : F_(F), n_(g_pub.cols), m_(h0.size()), k_(g_pub.rows) {
    if (m_ != F.m() || rank_weight(F, h0) != m_)
        fail(errc::not_a_basis, "h0 must have rank weight m");
    if (k_ >= n_) fail(errc::bad_input, "public matrix must have k < n");
    size_t d = n_ - k_;
    vec_fqm h0f = h0; // h0^[b], advanced per block
    coeff_ = mat_fqm(k_ * d, n_ * m_);
    for (size_t b = 0; b < d; ++b) {
        for (size_t a = 0; a < k_; ++a)
            for (size_t i = 0; i < n_; ++i) {
                fqm gp = g_pub.at(a, i);
                if (gp.is_zero()) continue;
                for (size_t j = 0; j < m_; ++j)
                    coeff_.at(a * d + b, i * m_ + j) = F.mul(gp, h0f[j]);
            }
        for (fqm& v : h0f) v = F.frobenius(v, 1);
    }
}

mat_fqm key_equation_builder::equations(std::span<const fqm> f_basis) const {
    size_t r = f_basis.size();
    if (n_ * r > k_ * (n_ - k_))
        fail(errc::dimension_budget, "guess dimension exceeds k - ceil(k^2/n)");
    mat_fqm out(coeff_.rows, n_ * m_ * r);
    for (size_t e = 0; e < coeff_.rows; ++e)
        for (size_t c = 0; c < n_ * m_; ++c) {
            fqm v = coeff_.at(e, c);
            if (v.is_zero()) continue;
            for (size_t l = 0; l < r; ++l) out.at(e, c * r + l) = F_.mul(v, f_basis[l]);
        }
    return out;
}

mat_fq key_equation_builder::build(std::span<const fqm> f_basis) const {
    return unfold_over_base(F_, equations(f_basis));
}

mat_fq build_key_equation(const field_ctx& F, const mat_fqm& g_pub, const vec_fqm& h0,
                          std::span<const fqm> f_basis) {
    return key_equation_builder(F, g_pub, h0).build(f_basis);
}

std::pair<fqm, subspace> guess_subspace(const field_ctx& F, size_t r, rng& rand) {
    fqm beta = F.random_element(rand, sample::not_in_prime_field);
    return {beta, beta_power_subspace(F, beta, r)};
}

std::optional<alternative_key> solve_and_extract(const field_ctx& F, const mat_fq& system,
                                                 std::span<const fqm> f_basis, const vec_fqm& h0,
                                                 size_t n, size_t* kernel_dim) {
    size_t m = h0.size(), r = f_basis.size();
    if (system.cols != n * m * r) fail(errc::bad_input, "system width mismatch");
    if (fq_rank(system) == system.cols) {
        if (kernel_dim) *kernel_dim = 0;
        return std::nullopt;
    }
    mat_fq kern = fq_kernel(system);
    if (kernel_dim) *kernel_dim = kern.rows;
    if (kern.rows == 0) return std::nullopt;

    // unknown (i,j,l) holds the f_l coordinate of entry (i,j) of M^T
    std::vector<uint8_t> x(kern.cols);
    for (size_t j = 0; j < kern.cols; ++j) x[j] = kern.at(0, j);
    return key_from_solution(F, x, f_basis, h0, n);
}

std::optional<recovered_message> recover_message(const alternative_key& cand,
                                                 const lg_public_key& pk, const vec_fqm& y) {
    const field_ctx& F = *pk.F;
    size_t n = pk.params.n, k = pk.params.k, d = n - k;
    if (y.size() != n) fail(errc::bad_input, "ciphertext length must be n");

    // s^T = H0 M' y^T; the syndromes of M' e^T against moore(h0, n-k)
    vec_fqm u = mat_vec_mul(F, cand.m_prime, y);
    vec_fqm s(d, F.zero());
    vec_fqm h0f = cand.h0;
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < u.size(); ++i) s[j] = F.add(s[j], F.mul(h0f[i], u[i]));
        if (j + 1 < d)
            for (fqm& v : h0f) v = F.frobenius(v, 1);
    }

    auto z = syndrome_decode(F, cand.h0, s, d / 2);
    if (!z) return std::nullopt;
    auto e = solve(F, cand.m_prime, *z);
    if (!e) return std::nullopt;
    auto msg = solve(F, transpose(pk.g_pub), vec_sub(F, y, *e));
    if (!msg) return std::nullopt;
    return recovered_message{std::move(*msg), std::move(*e)};
}

bool verify_key(const alternative_key& cand, const lg_public_key& pk, rng& rand) {
    const field_ctx& F = *pk.F;
    if (cand.m_prime.rows != F.m() || cand.m_prime.cols != pk.params.n) return false;
    if (rank(F, cand.m_prime) != pk.params.n) return false;
    vec_fqm probe = random_message(F, pk.params.k, rand);
    vec_fqm y = encrypt(pk, probe, rand);
    auto rec = recover_message(cand, pk, y);
    return rec && rec->message == probe;
}

alternative_key alternative_key_from_private(const lg_private_key& sk, const vec_fqm& h0) {
    const field_ctx& F = *sk.F;
    gab_code hidden(sk.F, sk.g, sk.params.k);
    mat_fq t = support_change_matrix(F, h0, hidden.dual_support());
    mat_fqm m_prime = mul_fq_left(F, t, transpose(sk.q_matrix()));
    return alternative_key{h0, std::move(m_prime)};
}

attack_report run_attack(const lg_public_key& pk, const attack_config& cfg) {
    const field_ctx& F = *pk.F;
    auto t0 = clock_type::now();
    attack_report rep;
    vec_fqm h0 = default_h0(F);
    key_equation_builder builder(F, pk.g_pub, h0);

    if (cfg.mode == attack_mode::planted) {
        if (cfg.planted_basis.empty()) fail(errc::bad_input, "planted mode requires a basis");
        if (!independent(F, cfg.planted_basis))
            fail(errc::not_a_basis, "planted basis is F_q-dependent");
        rng vrng(cfg.seed, 0xfeed);
        auto tb = clock_type::now();
        mat_fq sys = builder.build(cfg.planted_basis);
        rep.stage_ms.build_ms = ms_since(tb);
        auto ts = clock_type::now();
        mat_fq kern = fq_kernel(sys);
        rep.stage_ms.solve_ms = ms_since(ts);
        rep.solves = 1;
        rep.iterations = 1;
        rep.kernel_dim = kern.rows;
        auto tv = clock_type::now();
        auto key = find_verified_key(F, kern, cfg.planted_basis, h0, pk, vrng);
        rep.stage_ms.verify_ms = ms_since(tv);
        if (key) {
            rep.outcome = attack_outcome::success;
            rep.key = std::move(*key);
        }
        rep.wall_ms = ms_since(t0);
        return rep;
    }

    if (cfg.r < 3) fail(errc::constraint_violation, "guess dimension r must be at least 3");
    size_t rb = attack_r_budget(pk.params.n, pk.params.k);
    if (cfg.r > rb) fail(errc::dimension_budget, "guess dimension exceeds k - ceil(k^2/n)");

    vec_fqm sub_basis;
    uint64_t population;
    if (cfg.mode == attack_mode::subfield) {
        if (cfg.subfield_l == 0 || F.m() % cfg.subfield_l != 0)
            fail(errc::not_a_divisor, "subfield degree must divide m");
        sub_basis = F.subfield_basis(cfg.subfield_l);
        population = tracked_population(F.q(), cfg.subfield_l);
    } else {
        population = tracked_population(F.q(), F.m());
    }

    std::atomic<uint64_t> issued{0};
    std::atomic<bool> stop{false};
    std::mutex result_mu, tried_mu;
    std::unordered_set<fqm, fqm_hash> tried;

    auto draw_fresh = [&](rng& g, fqm* out) -> bool {
        for (;;) {
            if (population) {
                std::lock_guard<std::mutex> lk(tried_mu);
                if (tried.size() >= population) return false;
            }
            fqm b;
            if (cfg.mode == attack_mode::subfield) {
                do {
                    b = F.zero();
                    for (const fqm& e : sub_basis)
                        b = F.add(b, F.scalar_mul(e, (uint8_t)g.uniform_below(F.q())));
                } while (F.in_prime_field(b));
            } else {
                b = F.random_element(g, sample::not_in_prime_field);
            }
            if (population) {
                std::lock_guard<std::mutex> lk(tried_mu);
                if (!tried.insert(b).second) continue;
            }
            *out = b;
            return true;
        }
    };

    auto worker = [&](unsigned wid) {
        rng grng(cfg.seed, wid);
        rng vrng(cfg.seed, 0x10000 + wid);
        stage_times st{};
        uint64_t my_solves = 0;
        while (!stop.load(std::memory_order_relaxed)) {
            if (issued.fetch_add(1) >= cfg.max_iters) {
                issued.fetch_sub(1);
                break;
            }
            auto tg = clock_type::now();
            fqm beta;
            if (!draw_fresh(grng, &beta)) {
                issued.fetch_sub(1);
                break; // candidate population exhausted
            }
            subspace fsp = beta_power_subspace(F, beta, cfg.r);
            st.guess_ms += ms_since(tg);

            auto tb = clock_type::now();
            mat_fq sys = builder.build(fsp.basis);
            st.build_ms += ms_since(tb);

            auto ts = clock_type::now();
            ++my_solves;
            if (fq_rank(sys) == sys.cols) {
                st.solve_ms += ms_since(ts);
                continue;
            }
            mat_fq kern = fq_kernel(sys);
            st.solve_ms += ms_since(ts);

            auto tv = clock_type::now();
            auto key = find_verified_key(F, kern, fsp.basis, h0, pk, vrng);
            st.verify_ms += ms_since(tv);
            if (!key) continue;

            std::lock_guard<std::mutex> lk(result_mu);
            if (!stop.exchange(true)) {
                rep.outcome = attack_outcome::success;
                rep.beta = beta;
                rep.kernel_dim = kern.rows;
                rep.key = std::move(*key);
            }
            break;
        }
        std::lock_guard<std::mutex> lk(result_mu);
        rep.solves += my_solves;
        rep.stage_ms.guess_ms += st.guess_ms;
        rep.stage_ms.build_ms += st.build_ms;
        rep.stage_ms.solve_ms += st.solve_ms;
        rep.stage_ms.verify_ms += st.verify_ms;
    };

    unsigned jobs = cfg.jobs ? cfg.jobs : 1;
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }

    rep.iterations = std::min<uint64_t>(issued.load(), cfg.max_iters);
    rep.wall_ms = ms_since(t0);
    return rep;
}

} // namespace lg
