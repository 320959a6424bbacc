#include <doctest.h>

#include "furst/error.hpp"
#include "furst/regression.hpp"
#include "furst/verify.hpp"

using namespace furst;
using namespace furst::verify;

TEST_SUITE("verify") {

TEST_CASE("cheap criteria pass at the fast level") {
    Options o;
    for (int id : {1, 3, 4, 5, 8, 9, 10, 11, 12}) {
        const auto r = run_criterion(id, o);
        INFO(r.id << " " << r.name << ": " << r.detail);
        CHECK(r.pass);
        CHECK(r.id == id);
        CHECK_FALSE(r.name.empty());
    }
}

TEST_CASE("lattice count misses the ten percent target") {
    const auto r = run_criterion(2, Options{});
    CHECK_FALSE(r.pass);
    CHECK(r.data.at("count") == "142");
    CHECK(r.detail.find("differs from frozen") == std::string::npos);
}

TEST_CASE("sign flip breaks the scan but not the sentinel") {
    Options o;
    o.inject_sign_flip = true;
    const auto five = run_criterion(5, o);
    CHECK_FALSE(five.pass);
    CHECK(five.data.at("violations") != "0");
    CHECK(run_criterion(12, o).pass);
}

TEST_CASE("criteria are reproducible") {
    Options o;
    const auto x = run_criterion(9, o);
    const auto y = run_criterion(9, o);
    CHECK(x.data == y.data);
    o.seed += 1;
    const auto z = run_criterion(9, o);
    CHECK(z.data.at("cases") == x.data.at("cases"));
}

TEST_CASE("unknown criterion") {
    CHECK_THROWS_AS(run_criterion(0, Options{}), Error);
    CHECK_THROWS_AS(run_criterion(kCriterionCount + 1, Options{}), Error);
}

TEST_CASE("summary gathers frozen values") {
    Summary s;
    s.records.push_back(run_criterion(3, Options{}));
    s.records.push_back(run_criterion(11, Options{}));
    CHECK(s.pass());
    const auto c = s.constants();
    CHECK(c.contains("gap_constant"));
    CHECK(c.contains("baker_c0"));
    CHECK(std::stod(c.at("gap_constant").get<std::string>()) == regression::kGapConstant);
    const auto j = to_json(s);
    CHECK(j.at("pass") == true);
    CHECK(j.at("records").size() == 2);
    s.records.push_back(run_criterion(2, Options{}));
    CHECK_FALSE(s.pass());
}

}
