#include "lg/serialize.hpp"

#include <fstream>

namespace lg {

namespace {

std::string digits_to_string(const std::vector<uint8_t>& d) {
    std::string s(d.size(), '0');
    for (size_t i = 0; i < d.size(); ++i)
        s[i] = (char)(d[i] < 10 ? '0' + d[i] : 'a' + d[i] - 10);
    return s;
}

std::vector<uint8_t> string_to_digits(const std::string& s, uint32_t q) {
    std::vector<uint8_t> d(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        uint8_t v = c >= '0' && c <= '9' ? (uint8_t)(c - '0')
                  : c >= 'a' && c <= 'z' ? (uint8_t)(c - 'a' + 10)
                                         : 255;
        if (v >= q) fail(errc::bad_input, "bad digit in serialized value");
        d[i] = v;
    }
    return d;
}

const json& need(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(errc::bad_input, std::string("missing JSON key: ") + key);
    return *it;
}

} // namespace

json field_to_json(const field_ctx& F) {
    return json{{"q", F.q()}, {"m", F.m()}, {"modulus", digits_to_string(F.modulus())}};
}

field_ptr field_from_json(const json& j) {
    uint32_t q = need(j, "q").get<uint32_t>();
    uint32_t m = need(j, "m").get<uint32_t>();
    auto mod = string_to_digits(need(j, "modulus").get<std::string>(), q);
    return field_ctx::get(q, m, mod);
}

void expect_same_field(const field_ctx& F, const json& j) {
    if (need(j, "q").get<uint32_t>() != F.q() || need(j, "m").get<uint32_t>() != F.m() ||
        string_to_digits(need(j, "modulus").get<std::string>(), F.q()) != F.modulus())
        fail(errc::field_mismatch, "field context mismatch between artifacts");
}

json params_to_json(const lg_params& p) {
    return json{{"q", p.q}, {"m", p.m}, {"n", p.n}, {"k", p.k}, {"t", p.t}, {"a", p.a}};
}

lg_params params_from_json(const json& j) {
    return validate_params(need(j, "q").get<uint32_t>(), need(j, "m").get<uint32_t>(),
                           need(j, "n").get<uint32_t>(), need(j, "k").get<uint32_t>());
}

json vec_to_json(const field_ctx& F, const vec_fqm& v) {
    json a = json::array();
    for (const fqm& x : v) a.push_back(F.to_string(x));
    return a;
}

vec_fqm vec_from_json(const field_ctx& F, const json& j) {
    vec_fqm v;
    for (const auto& s : j) v.push_back(F.parse(s.get<std::string>()));
    return v;
}

json mat_to_json(const field_ctx& F, const mat_fqm& a) {
    json entries = json::array();
    for (const fqm& x : a.e) entries.push_back(F.to_string(x));
    return json{{"rows", a.rows}, {"cols", a.cols}, {"entries", entries}};
}

mat_fqm mat_from_json(const field_ctx& F, const json& j) {
    mat_fqm a(need(j, "rows").get<size_t>(), need(j, "cols").get<size_t>());
    const json& entries = need(j, "entries");
    if (entries.size() != a.rows * a.cols) fail(errc::bad_input, "matrix entry count mismatch");
    for (size_t i = 0; i < a.e.size(); ++i) a.e[i] = F.parse(entries[i].get<std::string>());
    return a;
}

json mat_fq_to_json(const mat_fq& a) {
    json entries = json::array();
    for (uint8_t d : a.e) entries.push_back((int)d);
    return json{{"rows", a.rows}, {"cols", a.cols}, {"entries", entries}};
}

mat_fq mat_fq_from_json(const json& j, uint32_t q) {
    mat_fq a(need(j, "rows").get<size_t>(), need(j, "cols").get<size_t>(), q);
    const json& entries = need(j, "entries");
    if (entries.size() != a.rows * a.cols) fail(errc::bad_input, "matrix entry count mismatch");
    for (size_t i = 0; i < a.e.size(); ++i) {
        uint32_t v = entries[i].get<uint32_t>();
        if (v >= q) fail(errc::bad_input, "base-field digit out of range");
        a.e[i] = (uint8_t)v;
    }
    return a;
}

json public_key_to_json(const lg_public_key& pk) {
    return json{{"params", params_to_json(pk.params)},
                {"field", field_to_json(*pk.F)},
                {"public", json{{"G_pub", mat_to_json(*pk.F, pk.g_pub)}, {"a", pk.params.a}}}};
}

lg_public_key public_key_from_json(const json& j) {
    lg_params p = params_from_json(need(j, "params"));
    field_ptr F = field_from_json(need(j, "field"));
    const json& pub = need(j, "public");
    lg_public_key pk{F, p, mat_from_json(*F, need(pub, "G_pub"))};
    if (pk.g_pub.rows != p.k || pk.g_pub.cols != p.n)
        fail(errc::bad_input, "public matrix shape does not match parameters");
    if (need(pub, "a").get<uint32_t>() != p.a)
        fail(errc::bad_input, "public error weight does not match parameters");
    return pk;
}

json private_key_to_json(const lg_private_key& sk) {
    const field_ctx& F = *sk.F;
    return json{{"params", params_to_json(sk.params)},
                {"field", field_to_json(F)},
                {"private", json{{"S", mat_to_json(F, sk.s)},
                                 {"g", vec_to_json(F, sk.g)},
                                 {"lambda", vec_to_json(F, sk.lambda)},
                                 {"P", mat_to_json(F, sk.p)},
                                 {"gamma", F.to_string(sk.gamma)}}}};
}

lg_private_key private_key_from_json(const json& j) {
    lg_params p = params_from_json(need(j, "params"));
    field_ptr F = field_from_json(need(j, "field"));
    const json& priv = need(j, "private");
    lg_private_key sk{F, p,
                      mat_from_json(*F, need(priv, "S")),
                      vec_from_json(*F, need(priv, "g")),
                      vec_from_json(*F, need(priv, "lambda")),
                      mat_from_json(*F, need(priv, "P")),
                      F->parse(need(priv, "gamma").get<std::string>())};
    return sk;
}

json ciphertext_to_json(const field_ctx& F, const vec_fqm& y) {
    return json{{"field", field_to_json(F)}, {"y", vec_to_json(F, y)}};
}

vec_fqm ciphertext_from_json(const json& j, const field_ctx& F) {
    expect_same_field(F, need(j, "field"));
    return vec_from_json(F, need(j, "y"));
}

json message_to_json(const field_ctx& F, const vec_fqm& msg) {
    return json{{"field", field_to_json(F)}, {"message", vec_to_json(F, msg)}};
}

vec_fqm message_from_json(const json& j, const field_ctx& F) {
    expect_same_field(F, need(j, "field"));
    return vec_from_json(F, need(j, "message"));
}

json subspace_basis_to_json(const field_ctx& F, const vec_fqm& basis) {
    return json{{"field", field_to_json(F)}, {"basis", vec_to_json(F, basis)}};
}

vec_fqm subspace_basis_from_json(const json& j, const field_ctx& F) {
    expect_same_field(F, need(j, "field"));
    return vec_from_json(F, need(j, "basis"));
}

json alt_key_to_json(const field_ctx& F, const lg_params& p, const alternative_key& k) {
    return json{{"field", field_to_json(F)},
                {"params", params_to_json(p)},
                {"alt_key", json{{"h0", vec_to_json(F, k.h0)},
                                 {"M_prime", mat_to_json(F, k.m_prime)},
                                 {"t", (p.n - p.k) / 2}}}};
}

alternative_key alt_key_from_json(const json& j, const field_ctx& F) {
    expect_same_field(F, need(j, "field"));
    const json& k = need(j, "alt_key");
    return alternative_key{vec_from_json(F, need(k, "h0")),
                           mat_from_json(F, need(k, "M_prime"))};
}

json report_to_json(const field_ctx& F, const lg_params& p, const attack_report& r) {
    json j{{"outcome", r.outcome == attack_outcome::success ? "success" : "budget_exhausted"},
           {"iterations", r.iterations},
           {"kernel_dim", r.kernel_dim},
           {"solves", r.solves},
           {"wall_ms", r.wall_ms},
           {"stage_ms", json{{"guess", r.stage_ms.guess_ms},
                             {"build", r.stage_ms.build_ms},
                             {"solve", r.stage_ms.solve_ms},
                             {"verify", r.stage_ms.verify_ms}}}};
    if (r.beta) j["beta"] = F.to_string(*r.beta);
    if (r.key) j["key"] = alt_key_to_json(F, p, *r.key);
    return j;
}

json scan_to_json(const lg_public_key& pk, const frobenius_scan_result& s) {
    json divisors = json::array();
    for (const divisor_result& d : s.divisors) {
        const char* v = d.verdict == weak_verdict::weak      ? "weak"
                      : d.verdict == weak_verdict::generic   ? "generic"
                                                             : "inconclusive";
        divisors.push_back(json{{"l", d.l},
                                {"dim", d.dim},
                                {"expected_weak", d.expected_weak},
                                {"expected_generic", d.expected_generic},
                                {"verdict", v},
                                {"generic_failure_bound", d.generic_failure_bound},
                                {"precondition_ok", d.precondition_ok}});
    }
    return json{{"m", s.m}, {"params", params_to_json(pk.params)}, {"divisors", divisors}};
}

json estimate_to_json(uint32_t q, uint32_t m, uint32_t n, uint32_t k, const scheme_preset* preset) {
    lg_params p = validate_params(q, m, n, k);
    auto bits = attack_bits(q, m, n, k);
    json j = json::object();
    if (preset) j["scheme_label"] = preset->label;
    j["params"] = params_to_json(p);
    j["r"] = attack_r_budget(n, k);
    j["attack_bits_real"] = bits.real;
    j["attack_bits_rounded"] = bits.rounded;
    if (preset) {
        j["table1_claimed"] = preset->claimed_complexity;
        j["claimed_security"] = preset->claimed_security;
        j["delta_vs_claimed"] = bits.rounded - preset->claimed_complexity;
    }
    json weak = json::object();
    json divisors = json::array();
    for (uint32_t l : proper_divisors(m)) {
        if (!(k + l < n && l <= k - 1)) continue;
        divisors.push_back(json{{"l", l},
                                {"T_bits", weak_T_bits(q, m, n, k, l)},
                                {"polynomial", l <= attack_r_budget(n, k)}});
    }
    weak["divisors"] = divisors;
    if (auto pw = weak_key_prob_log2(q, m, n, k)) {
        weak["l_star"] = pw->l_star;
        weak["pw_log2"] = pw->log2_pw;
        weak["pw_exponent"] = (long)std::lround(pw->log2_pw);
    }
    j["weak"] = weak;
    return j;
}

json table1_json() {
    json rows = json::array();
    for (const scheme_preset& s : lg_presets()) {
        auto bits = attack_bits(s.q, s.m, s.n, s.k);
        rows.push_back(json{{"label", s.label},
                            {"q", s.q},
                            {"m", s.m},
                            {"n", s.n},
                            {"k", s.k},
                            {"claimed_security", s.claimed_security},
                            {"claimed_complexity", s.claimed_complexity},
                            {"attack_bits_real", bits.real},
                            {"attack_bits_rounded", bits.rounded},
                            {"delta", bits.rounded - s.claimed_complexity}});
    }
    return json{{"table", "attack-complexity"}, {"rows", rows}};
}

json table2_json() {
    json rows = json::array();
    for (const scheme_preset& s : lg_presets()) {
        auto pw = weak_key_prob_log2(s.q, s.m, s.n, s.k);
        if (!pw) continue; // prime m rows have no weak-key entry
        json divisors = json::array();
        for (uint32_t l : proper_divisors(s.m)) divisors.push_back(l);
        rows.push_back(json{{"label", s.label},
                            {"q", s.q},
                            {"m", s.m},
                            {"n", s.n},
                            {"k", s.k},
                            {"r", attack_r_budget(s.n, s.k)},
                            {"proper_divisors", divisors},
                            {"l_star", pw->l_star},
                            {"pw_log2", pw->log2_pw},
                            {"pw_exponent", (long)std::lround(pw->log2_pw)}});
    }
    return json{{"table", "weak-keys"}, {"rows", rows}};
}

json manifest_to_json(const run_manifest& m) {
    json j{{"command", m.command}, {"params", m.params}, {"version", "0.1.0"}};
    if (m.seed) j["seed"] = *m.seed;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    return j;
}

json read_json_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) fail(errc::bad_input, "cannot open " + p.string());
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(errc::bad_input, "cannot parse " + p.string() + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::filesystem::path& p, const json& j) {
    std::ofstream out(p);
    if (!out) fail(errc::bad_input, "cannot open " + p.string() + " for writing");
    out << j.dump(2) << "\n";
}

} // namespace lg
