#include <benchmark/benchmark.h>

#include "lg/attack.hpp"

using namespace lg;

namespace {

void field_mul_tabled(benchmark::State& state) {
    auto F = field_ctx::get(2, 13);
    rng r(1);
    fqm a = F->random_element(r), b = F->random_element(r);
    for (auto _ : state) {
        a = F->mul(a, b);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(field_mul_tabled);

void field_mul_packed(benchmark::State& state) {
    auto F = field_ctx::get(2, (uint32_t)state.range(0));
    rng r(1);
    fqm a = F->random_element(r), b = F->random_element(r);
    for (auto _ : state) {
        a = F->mul(a, b);
        benchmark::DoNotOptimize(a);
    }
}
BENCHMARK(field_mul_packed)->Arg(24)->Arg(83)->Arg(133);

void field_inv(benchmark::State& state) {
    auto F = field_ctx::get(2, (uint32_t)state.range(0));
    rng r(2);
    fqm a = F->random_element(r, sample::not_in_prime_field);
    for (auto _ : state) {
        benchmark::DoNotOptimize(F->inv(a));
    }
}
BENCHMARK(field_inv)->Arg(13)->Arg(83);

void f2_kernel_468(benchmark::State& state) {
    rng r(3);
    mat_fq a(468, 468, 2);
    for (auto& d : a.e) d = (uint8_t)r.uniform_below(2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fq_kernel(a));
    }
}
BENCHMARK(f2_kernel_468);

void decode_2_24_20_8(benchmark::State& state) {
    auto F = field_ctx::get(2, 24);
    rng r(4);
    gab_code code(F, random_full_weight_vector(*F, 20, r), 8);
    vec_fqm msg = random_message(*F, 8, r);
    vec_fqm y = vec_add(*F, code.encode(msg), random_rank_error(*F, 20, 6, r));
    for (auto _ : state) {
        benchmark::DoNotOptimize(code.decode(y));
    }
}
BENCHMARK(decode_2_24_20_8);

void attack_guess_iteration(benchmark::State& state) {
    lg_params params = validate_params(2, 13, 12, 6);
    rng kr(5);
    auto [pk, sk] = keygen(params, kr);
    const field_ctx& F = *pk.F;
    vec_fqm h0 = default_h0(F);
    key_equation_builder builder(F, pk.g_pub, h0);
    rng gr(6);
    for (auto _ : state) {
        auto [beta, fsp] = guess_subspace(F, 3, gr);
        mat_fq sys = builder.build(fsp.basis);
        benchmark::DoNotOptimize(fq_rank(sys));
    }
}
BENCHMARK(attack_guess_iteration);

} // namespace

BENCHMARK_MAIN();
