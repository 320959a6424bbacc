#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "furst/error.hpp"
#include "furst/json_io.hpp"

using namespace furst;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "furst");
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/furst_cli_test_" + name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("enum as csv") {
    const auto r = run({"sunits", "enum", "--a", "2", "--b", "3", "--M", "10", "--csv"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 8);
    CHECK(ls[0] == "u,v,value");
    CHECK(ls[1] == "0,0,1");
    CHECK(ls[7] == "0,2,9");
}

TEST_CASE("order") {
    const auto r = run({"harmonics", "order", "--a", "2", "--b", "3", "--l", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "8\n");
}

TEST_CASE("help and usage errors") {
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("Usage") != std::string::npos);
    CHECK(run({"sunits", "enum", "--M", "10", "--nope"}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
}

TEST_CASE("library errors become a json object and exit 2") {
    const auto r = run({"sunits", "enum", "--a", "2", "--b", "4", "--M", "10"});
    CHECK(r.code == cli::kExitError);
    const auto j = nlohmann::json::parse(r.err);
    CHECK(j.at("error") == "parameter");
    CHECK(j.contains("message"));
    CHECK(run({"alpha", "convergents", "--spec", "{\"oops\": 1}"}).code == cli::kExitError);
    CHECK(run({"alpha", "convergents", "--spec", "{not json"}).code == cli::kExitError);
    CHECK(run({"net", "build", "--A", "1", "--Q", "7", "--M", "100"}).code == cli::kExitError);
}

TEST_CASE("json reports carry the schema and decimal strings") {
    const auto r = run({"sunits", "enum", "--M", "100", "--json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("schema") == 1);
    CHECK(j.at("count") == "20");
    for (const auto& e : j.at("elements")) {
        CHECK(e.at("value").is_string());
        CHECK(e.at("u").is_string());
    }
}

TEST_CASE("convergents of a rational") {
    const auto r = run({"alpha", "convergents", "--spec", "{\"rational\": \"13/8\"}"});
    CHECK(r.code == 0);
    CHECK(lines(r.out) == std::vector<std::string>{"1/1", "2/1", "3/2", "5/3", "13/8"});
    const auto d = run({"alpha", "dirichlet", "--spec", "{\"cf\": [0, 1], \"period_from\": 1}", "--N", "100"});
    CHECK(d.out == "55/89\n");
}

TEST_CASE("net points only on request") {
    const std::vector<std::string> base = {"net", "build", "--A", "1", "--Q", "101", "--M", "10", "--json"};
    auto with = base;
    with.push_back("--emit-points");
    const auto plain = nlohmann::json::parse(run(base).out);
    const auto full = nlohmann::json::parse(run(with).out);
    CHECK_FALSE(plain.contains("net"));
    REQUIRE(full.contains("net"));
    CHECK(full.at("net").size() == std::stoul(full.at("net_size").get<std::string>()));
    CHECK(plain.at("delta") == "15/101");
}

TEST_CASE("dispersion from a points file") {
    const auto path = temp_file("points.txt", "0\n1/2\n# comment\n\n3/4\n");
    const auto r = run({"circle", "dispersion", "--points-file", path});
    CHECK(r.code == 0);
    CHECK(r.out == "1/4\n");
    std::remove(path.c_str());
}

TEST_CASE("digit set file feeds the search") {
    const auto ds = run({"net", "digits", "--A", "1", "--Q", "101", "--M1", "1010", "--n", "6"});
    REQUIRE(ds.code == 0);
    const auto path = temp_file("digits.json", ds.out);
    const auto r = run({"digits", "search", "--in", path, "--l", "2", "--eps", "0.1", "--json"});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("kind") == "digits.search");
    std::remove(path.c_str());
}

TEST_CASE("lemma 5 csv stream") {
    const auto r = run({"harmonics", "lemma5", "--l", "6", "--csv"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    CHECK(ls.front() == "m,re,im,abs");
    CHECK(ls.size() == 64);
}

TEST_CASE("run is byte-identical under a fixed seed") {
    const auto cfg = temp_file("cfg.json", R"({"a": 2, "b": 3, "Q": "1000003", "delta": "1"})");
    const auto out = std::string("/tmp/furst_cli_test_report.json");
    const auto a = run({"run", "--config", cfg, "--seed", "42"});
    const auto b = run({"run", "--config", cfg, "--seed", "42", "--out", out});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == a.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.at("schema") == 1);
    CHECK(j.at("seed") == "42");
    CHECK(j.at("targets").size() == 3);
    CHECK(run({"run", "--config", cfg, "--seed", "43"}).out != a.out);
    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST_CASE("solve and density") {
    const auto s = run({"solve", "--alpha", "{\"cf\": [0, 2], \"period_from\": 1}", "--beta",
                        "{\"rational\": \"1/3\"}", "--N", "1000000", "--mode", "pipeline", "--json"});
    REQUIRE(s.code == 0);
    const auto j = nlohmann::json::parse(s.out);
    CHECK(j.at("mode") == "pipeline");
    CHECK(j.at("error").at("lo").is_string());
    const auto d = run({"density", "--A", "1", "--Q", "101", "--exponent", "2", "--json"});
    REQUIRE(d.code == 0);
    CHECK(nlohmann::json::parse(d.out).at("count") == "67");
}

TEST_CASE("verify-all exit status follows the records") {
    CHECK(run({"verify-all", "fast", "--only", "1"}).code == 0);
    CHECK(run({"verify-all", "fast", "--only", "5", "--inject-sign-flip"}).code == cli::kExitFailed);
    const auto r = run({"verify-all", "fast", "--only", "3", "--json"});
    CHECK(nlohmann::json::parse(r.out).at("records").at(0).at("pass") == true);
}

TEST_CASE("thread flag") {
    CHECK(run({"--threads", "2", "harmonics", "order", "--l", "7"}).out == "32\n");
}

}

TEST_SUITE("json") {

TEST_CASE("config round trip") {
    pipeline::PipelineConfig c;
    c.params = {3, 5};
    c.A = BigInt("123456789012345678901234567890");
    c.Q = BigInt("987654321098765432109876543211");
    c.delta = 0.3;
    c.eps = 0.01;
    c.overrides.l = 4;
    c.overrides.H = 2.5;
    c.targets = {Rational(1, 3), Rational(7, 11)};
    const auto j = io::to_json(c);
    const auto back = io::config_from_json(nlohmann::json::parse(j.dump()));
    CHECK(back.params.a == 3);
    CHECK(back.A == c.A);
    CHECK(back.Q == c.Q);
    CHECK(back.delta == c.delta);
    CHECK(back.eps == c.eps);
    CHECK(back.overrides.l == 4u);
    CHECK(back.overrides.H == 2.5);
    CHECK_FALSE(back.overrides.n.has_value());
    CHECK(back.targets == c.targets);
    CHECK(io::to_json(back) == j);
}

TEST_CASE("doubles print in shortest round-trip form") {
    for (double x : {0.1, 1.0 / 3, 5.116201, 1e-300, 123456789.0}) {
        CHECK(io::get_double(io::Json(io::num(x))) == x);
    }
    CHECK(io::num(0.5) == "0.5");
}

TEST_CASE("digit set round trip") {
    const auto ds = netgen::DigitSet::make(3, 4, {0, 5, 80});
    const auto back = io::digit_set_from_json(nlohmann::json::parse(io::to_json(ds).dump()));
    CHECK(back.a == 3);
    CHECK(back.n == 4);
    CHECK(back.residues == ds.residues);
}

TEST_CASE("lenient readers") {
    CHECK(io::get_bigint(nlohmann::json(17)) == 17);
    CHECK(io::get_bigint(nlohmann::json("-99999999999999999999")) == BigInt("-99999999999999999999"));
    CHECK(io::get_rational(nlohmann::json("6/8")) == Rational(3, 4));
    CHECK_THROWS_AS(io::get_bigint(nlohmann::json(1.5)), Error);
    CHECK_THROWS_AS(io::get_double(nlohmann::json("1.5x")), Error);
}

}
