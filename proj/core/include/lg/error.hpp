#pragma once

#include <stdexcept>
#include <string>

namespace lg {

enum class errc {
    not_prime,
    reducible_modulus,
    degree_mismatch,
    division_by_zero,
    not_a_divisor,
    not_a_basis,
    constraint_violation,
    dimension_budget,
    precondition_failed,
    field_mismatch,
    bad_input,
    unsupported,
    internal,
};

/// Hard errors only. Routine negative outcomes (decode failure, empty
/// kernel, exhausted budget) are values, not exceptions.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

} // namespace lg
