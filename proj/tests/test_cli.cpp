#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lg/serialize.hpp"

using namespace lg;

namespace {

std::string lg_bin() {
    const char* p = std::getenv("LG_BIN");
    REQUIRE_MESSAGE(p != nullptr, "LG_BIN must point at the lg binary");
    return p;
}

struct temp_dir {
    std::filesystem::path path;
    temp_dir(const char* tag) {
        path = std::filesystem::temp_directory_path() / (std::string("lg_cli_") + tag);
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~temp_dir() { std::filesystem::remove_all(path); }
    std::string operator/(const std::string& f) const { return (path / f).string(); }
};

int run(const std::string& args) {
    std::string cmd = lg_bin() + " " + args + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

int run_capture(const std::string& args, const std::string& stdout_file) {
    std::string cmd = lg_bin() + " " + args + " > " + stdout_file + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("keygen is byte-reproducible and validates parameters") {
    temp_dir dir("keygen");
    std::string base = "keygen -q 2 -m 13 -n 12 -k 6 --seed 7";
    CHECK(run(base + " --out-pub " + dir / "pub1.json" + " --out-priv " + dir / "priv1.json") == 0);
    CHECK(run(base + " --out-pub " + dir / "pub2.json" + " --out-priv " + dir / "priv2.json") == 0);

    // byte identity modulo the output paths recorded in the manifest
    json p1 = read_json_file(dir / "pub1.json");
    json p2 = read_json_file(dir / "pub2.json");
    p1["manifest"].erase("outputs");
    p2["manifest"].erase("outputs");
    CHECK(p1.dump() == p2.dump());
    CHECK(p1["public"]["a"] == 1);

    std::string same1 = dir / "pub_same.json", same2 = dir / "priv_same.json";
    CHECK(run(base + " --out-pub " + same1 + " --out-priv " + same2) == 0);
    std::string b1 = slurp(same1), b2 = slurp(same2);
    CHECK(run(base + " --out-pub " + same1 + " --out-priv " + same2) == 0);
    CHECK(slurp(same1) == b1); // identical command, identical bytes
    CHECK(slurp(same2) == b2);

    CHECK(run("keygen -q 2 -m 10 -n 10 -k 9 --out-pub " + dir / "x.json" + " --out-priv " +
              dir / "y.json") == 2);

    SUBCASE("LG_SEED provides the default seed") {
        std::string env_cmd = "LG_SEED=7 " + lg_bin() + " keygen -q 2 -m 13 -n 12 -k 6 --out-pub " +
                              dir / "envpub.json" + " --out-priv " + dir / "envpriv.json" +
                              " 2>/dev/null";
        REQUIRE(WEXITSTATUS(std::system(env_cmd.c_str())) == 0);
        json envpub = read_json_file(dir / "envpub.json");
        json flagpub = read_json_file(dir / "pub1.json");
        CHECK(envpub["public"] == flagpub["public"]);
    }
}

TEST_CASE("encrypt/decrypt round trip through files") {
    temp_dir dir("roundtrip");
    REQUIRE(run("keygen -q 2 -m 13 -n 12 -k 6 --seed 9 --out-pub " + dir / "pub.json" +
                " --out-priv " + dir / "priv.json") == 0);

    lg_public_key pk = public_key_from_json(read_json_file(dir / "pub.json"));
    rng r(99);
    vec_fqm msg = random_message(*pk.F, pk.params.k, r);
    write_json_file(dir / "msg.json", message_to_json(*pk.F, msg));

    REQUIRE(run("encrypt --pub " + dir / "pub.json" + " --msg " + dir / "msg.json" + " --out " +
                dir / "ct.json" + " --seed 3") == 0);
    REQUIRE(run("decrypt --priv " + dir / "priv.json" + " --ct " + dir / "ct.json" + " --out " +
                dir / "back.json") == 0);
    lg_private_key sk = private_key_from_json(read_json_file(dir / "priv.json"));
    CHECK(message_from_json(read_json_file(dir / "back.json"), *sk.F) == msg);

    SUBCASE("mismatched field context is refused") {
        auto other = field_ctx::get(2, 14);
        rng r2(5);
        vec_fqm y(12);
        for (auto& v : y) v = other->random_element(r2);
        write_json_file(dir / "alien.json", ciphertext_to_json(*other, y));
        CHECK(run("decrypt --priv " + dir / "priv.json" + " --ct " + dir / "alien.json" +
                  " --out " + dir / "z.json") == 2);
    }

    SUBCASE("undecodable ciphertexts exit 3") {
        rng r3(6);
        vec_fqm junk(12);
        for (auto& v : junk) v = pk.F->random_element(r3);
        write_json_file(dir / "junk.json", ciphertext_to_json(*pk.F, junk));
        CHECK(run("decrypt --priv " + dir / "priv.json" + " --ct " + dir / "junk.json" +
                  " --out " + dir / "z.json") == 3);
    }
}

TEST_CASE("100-message batch round trip at (2,13,12,6)") {
    temp_dir dir("batch");
    REQUIRE(run("keygen -q 2 -m 13 -n 12 -k 6 --seed 11 --out-pub " + dir / "pub.json" +
                " --out-priv " + dir / "priv.json") == 0);
    lg_public_key pk = public_key_from_json(read_json_file(dir / "pub.json"));
    rng r(17);
    for (int i = 0; i < 100; ++i) {
        vec_fqm msg = random_message(*pk.F, pk.params.k, r);
        write_json_file(dir / "m.json", message_to_json(*pk.F, msg));
        REQUIRE(run("encrypt --pub " + dir / "pub.json" + " --msg " + dir / "m.json" + " --out " +
                    dir / "c.json" + " --seed " + std::to_string(100 + i)) == 0);
        REQUIRE(run("decrypt --priv " + dir / "priv.json" + " --ct " + dir / "c.json" + " --out " +
                    dir / "b.json") == 0);
        CHECK(message_from_json(read_json_file(dir / "b.json"), *pk.F) == msg);
    }
}

TEST_CASE("planted attack through the CLI recovers keys and probes") {
    temp_dir dir("attack");
    REQUIRE(run("keygen -q 2 -m 13 -n 12 -k 6 --seed 21 --out-pub " + dir / "pub.json" +
                " --out-priv " + dir / "priv.json") == 0);
    lg_private_key sk = private_key_from_json(read_json_file(dir / "priv.json"));
    const field_ctx& F = *sk.F;
    fqm g2 = F.mul(sk.gamma, sk.gamma);
    write_json_file(dir / "basis.json",
                    subspace_basis_to_json(F, {F.one(), g2, F.mul(g2, g2)}));

    lg_public_key pk = public_key_from_json(read_json_file(dir / "pub.json"));
    rng r(23);
    vec_fqm msg = random_message(F, pk.params.k, r);
    write_json_file(dir / "msg.json", message_to_json(F, msg));
    REQUIRE(run("encrypt --pub " + dir / "pub.json" + " --msg " + dir / "msg.json" + " --out " +
                dir / "probe.json" + " --seed 4") == 0);

    REQUIRE(run("attack --pub " + dir / "pub.json" + " --mode planted --planted-basis " +
                dir / "basis.json" + " --probe " + dir / "probe.json" + " --out " +
                dir / "report.json" + " --out-key " + dir / "key.json" + " --seed 1") == 0);

    json rep = read_json_file(dir / "report.json");
    CHECK(rep["outcome"] == "success");
    CHECK(rep["kernel_dim"] == 13);
    CHECK(rep["solves"] == 1);
    CHECK(vec_from_json(F, rep["probe_message"]) == msg);

    alternative_key key = alt_key_from_json(read_json_file(dir / "key.json"), F);
    rng vr(29);
    CHECK(verify_key(key, pk, vr));
}

TEST_CASE("full-mode attack through the CLI") {
    temp_dir dir("full");
    // seeds chosen for a short deterministic search (63 guesses)
    REQUIRE(run("keygen -q 2 -m 13 -n 12 -k 6 --seed 502 --out-pub " + dir / "pub.json" +
                " --out-priv " + dir / "priv.json") == 0);
    REQUIRE(run("attack --pub " + dir / "pub.json" + " --mode full --r 3 --budget 50000 "
                "--seed 1002 --out " + dir / "report.json" + " --out-key " + dir / "key.json") == 0);
    json rep = read_json_file(dir / "report.json");
    CHECK(rep["outcome"] == "success");
    CHECK(rep["iterations"].get<uint64_t>() <= 50000);
    CHECK(rep.contains("beta"));

    lg_public_key pk = public_key_from_json(read_json_file(dir / "pub.json"));
    alternative_key key = alt_key_from_json(read_json_file(dir / "key.json"), *pk.F);
    rng vr(61);
    CHECK(verify_key(key, pk, vr));
}

TEST_CASE("attack budget exhaustion exits 4") {
    temp_dir dir("budget");
    REQUIRE(run("keygen -q 2 -m 13 -n 12 -k 6 --seed 31 --out-pub " + dir / "pub.json" +
                " --out-priv " + dir / "priv.json") == 0);
    CHECK(run("attack --pub " + dir / "pub.json" + " --mode full --r 3 --budget 2 --seed 424242 "
              "--out " + dir / "report.json") == 4);
    json rep = read_json_file(dir / "report.json");
    CHECK(rep["outcome"] == "budget_exhausted");
}

TEST_CASE("weakscan and weakattack on a planted weak key") {
    temp_dir dir("weak");
    REQUIRE(run("keygen -q 2 -m 20 -n 18 -k 9 --seed 41 --gamma-subfield 4 --out-pub " +
                dir / "pub.json" + " --out-priv " + dir / "priv.json") == 0);

    REQUIRE(run_capture("weakscan --pub " + dir / "pub.json", dir / "scan.json") == 0);
    json scan = read_json_file(dir / "scan.json");
    bool flagged4 = false;
    for (const auto& d : scan["divisors"])
        if (d["l"] == 4) flagged4 = d["verdict"] == "weak";
    CHECK(flagged4);

    REQUIRE(run("weakattack --pub " + dir / "pub.json" + " --l 4 --seed 43 --out " +
                dir / "report.json" + " --out-key " + dir / "key.json") == 0);
    json rep = read_json_file(dir / "report.json");
    CHECK(rep["outcome"] == "success");
    CHECK(rep["solves"] == 1);

    lg_public_key pk = public_key_from_json(read_json_file(dir / "pub.json"));
    alternative_key key = alt_key_from_json(read_json_file(dir / "key.json"), *pk.F);
    rng vr(47);
    CHECK(verify_key(key, pk, vr));

    SUBCASE("weakattack on a generic key exits 2") {
        REQUIRE(run("keygen -q 2 -m 20 -n 18 -k 9 --seed 53 --out-pub " + dir / "gen.json" +
                    " --out-priv " + dir / "genpriv.json") == 0);
        CHECK(run("weakattack --pub " + dir / "gen.json" + " --l 4 --out " + dir / "r2.json") == 2);
    }
}

TEST_CASE("estimate reproduces the published tables") {
    temp_dir dir("estimate");
    REQUIRE(run_capture("estimate --table1", dir / "t1.json") == 0);
    json t1 = read_json_file(dir / "t1.json");
    REQUIRE(t1["rows"].size() == 8);
    const long claimed[] = {132, 134, 146, 170, 183, 187, 134, 140};
    int exact = 0;
    for (size_t i = 0; i < 8; ++i) {
        long got = t1["rows"][i]["attack_bits_rounded"].get<long>();
        CHECK(std::abs(got - claimed[i]) <= 1);
        exact += got == claimed[i];
    }
    CHECK(exact >= 4);

    REQUIRE(run_capture("estimate --table2", dir / "t2.json") == 0);
    json t2 = read_json_file(dir / "t2.json");
    REQUIRE(t2["rows"].size() == 6);
    const long pw[] = {-68, -78, -126, -114, -68, -78};
    const long rcol[] = {18, 28, 25, 25, 20, 19};
    for (size_t i = 0; i < 6; ++i) {
        CHECK(t2["rows"][i]["pw_exponent"].get<long>() == pw[i]);
        CHECK(t2["rows"][i]["r"].get<long>() == rcol[i]);
    }

    REQUIRE(run_capture("estimate -q 2 -m 13 -n 12 -k 6", dir / "e.json") == 0);
    json e = read_json_file(dir / "e.json");
    CHECK(e["r"] == 3);
    CHECK(e["params"]["t"] == 3);
}

} // TEST_SUITE
