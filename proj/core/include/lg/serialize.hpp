#pragma once

#include <filesystem>
#include <optional>

#include "json.hpp"
#include "lg/attack.hpp"
#include "lg/estimator.hpp"
#include "lg/weak_keys.hpp"

namespace lg {

using json = nlohmann::ordered_json;

// Field elements travel as digit strings, constant term first ("1011" for
// q = 2); matrices as {rows, cols, entries} row-major.

json field_to_json(const field_ctx& F);
field_ptr field_from_json(const json& j);
/// Throws field_mismatch unless j describes exactly (q, m, modulus) of F.
void expect_same_field(const field_ctx& F, const json& j);

json params_to_json(const lg_params& p);
lg_params params_from_json(const json& j);

json vec_to_json(const field_ctx& F, const vec_fqm& v);
vec_fqm vec_from_json(const field_ctx& F, const json& j);
json mat_to_json(const field_ctx& F, const mat_fqm& a);
mat_fqm mat_from_json(const field_ctx& F, const json& j);
json mat_fq_to_json(const mat_fq& a);
mat_fq mat_fq_from_json(const json& j, uint32_t q);

json public_key_to_json(const lg_public_key& pk);
lg_public_key public_key_from_json(const json& j);
json private_key_to_json(const lg_private_key& sk);
lg_private_key private_key_from_json(const json& j);

json ciphertext_to_json(const field_ctx& F, const vec_fqm& y);
vec_fqm ciphertext_from_json(const json& j, const field_ctx& F);
json message_to_json(const field_ctx& F, const vec_fqm& msg);
vec_fqm message_from_json(const json& j, const field_ctx& F);

json subspace_basis_to_json(const field_ctx& F, const vec_fqm& basis);
vec_fqm subspace_basis_from_json(const json& j, const field_ctx& F);

json alt_key_to_json(const field_ctx& F, const lg_params& p, const alternative_key& k);
alternative_key alt_key_from_json(const json& j, const field_ctx& F);

json report_to_json(const field_ctx& F, const lg_params& p, const attack_report& r);
json scan_to_json(const lg_public_key& pk, const frobenius_scan_result& s);

/// Closed-form security figures for one parameter set.
json estimate_to_json(uint32_t q, uint32_t m, uint32_t n, uint32_t k,
                      const scheme_preset* preset = nullptr);
json table1_json();
json table2_json();

/// Provenance block embedded in every artifact; carries no timing so that
/// seeded runs write byte-identical key material.
struct run_manifest {
    std::string command;
    json params = json::object();
    std::optional<uint64_t> seed;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
};
json manifest_to_json(const run_manifest& m);

json read_json_file(const std::filesystem::path& p);
void write_json_file(const std::filesystem::path& p, const json& j);

} // namespace lg
