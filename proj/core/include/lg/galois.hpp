#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lg/error.hpp"
#include "lg/rng.hpp"

namespace lg {

/// Element of F_{q^m} in the polynomial basis of its field_ctx.
/// For q = 2 the words hold coefficient bits (bit i = coefficient of x^i,
/// m <= 192). For odd prime q the element is the base-q positional value
/// sum d_i q^i stored in w[0] (fields restricted to q^m <= 2^22).
/// Plain data; all arithmetic lives in field_ctx.
struct fqm {
    std::array<uint64_t, 3> w{0, 0, 0};

    bool operator==(const fqm&) const = default;
    bool is_zero() const { return (w[0] | w[1] | w[2]) == 0; }
};

struct fqm_hash {
    size_t operator()(const fqm& a) const {
        return splitmix64(a.w[0] ^ splitmix64(a.w[1] ^ splitmix64(a.w[2])));
    }
};

enum class sample { any, not_in_prime_field, in_subfield };

/// The extension F_{q^m}/F_q: q prime (< 2^8), degree m >= 1, and a verified
/// irreducible modulus. Immutable after construction, shareable across
/// threads. Small fields (q^m <= 2^22) get log/antilog tables; larger binary
/// fields run on packed polynomial arithmetic.
class field_ctx {
public:
    /// Builds a context; the modulus, if given, is digits c_0..c_m
    /// (constant term first) and must be irreducible of degree m. Without a
    /// modulus the deterministic default is chosen: the irreducible monic
    /// degree-m polynomial whose coefficient vector, read as a base-q
    /// integer (constant term least significant), is smallest.
    field_ctx(uint32_t q, uint32_t m, std::optional<std::vector<uint8_t>> modulus = std::nullopt);

    /// Process-wide cache keyed on (q, m, modulus); table construction and
    /// the default-modulus search run once.
    static std::shared_ptr<const field_ctx> get(uint32_t q, uint32_t m,
                                                std::optional<std::vector<uint8_t>> modulus = std::nullopt);

    uint32_t q() const { return q_; }
    uint32_t m() const { return m_; }
    const std::vector<uint8_t>& modulus() const { return modulus_; }

    fqm zero() const { return fqm{}; }
    fqm one() const { return from_prime(1); }
    /// The class of x, a root of the modulus.
    fqm gen() const;
    fqm from_prime(uint32_t c) const;

    fqm add(fqm a, fqm b) const;
    fqm sub(fqm a, fqm b) const;
    fqm neg(fqm a) const;
    fqm mul(fqm a, fqm b) const;
    fqm inv(fqm a) const;
    fqm pow(fqm a, uint64_t e) const;
    /// a^(q^i); i may be negative (Frobenius has order m).
    fqm frobenius(fqm a, int64_t i) const;
    /// c in F_q times a.
    fqm scalar_mul(fqm a, uint8_t c) const;

    uint8_t digit(fqm a, uint32_t t) const;
    std::vector<uint8_t> digits(fqm a) const;
    fqm from_digits(const std::vector<uint8_t>& d) const;
    bool in_prime_field(fqm a) const;

    /// Basis of the subfield F_{q^l} inside F_{q^m} (l | m), computed as the
    /// kernel of a |-> a^[l] - a.
    std::vector<fqm> subfield_basis(uint32_t l) const;

    fqm random_element(rng& r, sample constraint = sample::any, uint32_t subfield_l = 0) const;

    /// Digit string, constant term first ("1011" style for q = 2).
    std::string to_string(fqm a) const;
    fqm parse(std::string_view s) const;

private:
    uint32_t q_, m_;
    std::vector<uint8_t> modulus_;

    bool binary_ = false;       // q == 2 packed-bit path
    bool tabled_ = false;       // q^m <= table cap
    uint64_t card_ = 0;         // q^m when it fits (tabled path), else 0
    std::array<uint64_t, 4> modbits_{}; // q = 2: modulus coefficient bits

    std::vector<int32_t> log_;      // value -> discrete log, log_[0] = -1
    std::vector<uint32_t> exp_;     // discrete log -> value
    std::vector<uint64_t> frob_mul_; // q^i mod (q^m - 1) for i < m
    std::vector<uint64_t> qpow_;    // q^t for digit access on the positional path

    fqm mul_poly2(fqm a, fqm b) const;
    fqm square_poly2(fqm a) const;
    fqm inv_poly2(fqm a) const;
    uint64_t mul_tabled(uint64_t a, uint64_t b) const;
    uint64_t add_pos(uint64_t a, uint64_t b) const;
    void build_tables();
};

using field_ptr = std::shared_ptr<const field_ctx>;

} // namespace lg
