#include <string>

#include "doctest.h"
#include "pv/errors.hpp"
#include "pv/suites.hpp"

using namespace pv;

namespace {

SuiteConfig named(const std::string& s) {
    SuiteConfig c;
    c.suite = s;
    return c;
}

const CheckResult* find(const VerdictReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string config_message(SuiteConfig c) {
    try {
        resolve_config(c);
    } catch (const PvError& e) {
        CHECK(e.code() == Err::ConfigError);
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("exit codes and empty reports") {
    VerdictReport empty;
    empty.suite = "none";
    CHECK(empty.count(CheckStatus::Pass) + empty.count(CheckStatus::Fail) + empty.count(CheckStatus::Finding) == 0);
    CHECK(exit_code({empty}) == 0);
    VerdictReport r = empty;
    r.checks.push_back({"x", CheckStatus::Finding, "a", "b", "", ""});
    CHECK(exit_code({r}) == 0);
    r.checks.push_back({"y", CheckStatus::Fail, "a", "b", "", ""});
    CHECK(exit_code({empty, r}) == 1);
}

TEST_CASE("JSON round trip") {
    VerdictReport r;
    r.suite = "charsum";
    r.params = {{"prime", "3"}, {"seed", "1"}};
    r.checks = {{"a", CheckStatus::Pass, "1", "1", "w", "anchor"},
                {"b \"quoted\"", CheckStatus::Fail, "x", "y", "", ""},
                {"c", CheckStatus::Finding, "1 + Y^6", "", "lhs = (1 + Y^6) rhs", "s3"}};
    r.wall_ms = 12;
    CHECK(report_from_json(report_json(r)) == r);
    auto live = run_suite(named("charsum"));
    CHECK(report_from_json(report_json(live)) == live);
    CHECK_THROWS_AS(report_from_json("{not json"), PvError);
}

TEST_CASE("config validation") {
    SuiteConfig c = named("unramified-inert");
    c.prime = 5;
    c.disc = 1;
    CHECK(config_message(c).find("q = 5, d = 1 is split, not inert") != std::string::npos);
    CHECK(config_message(named("no-such-suite")).find("unknown suite") != std::string::npos);
    c = named("charsum");
    c.prime = 9;
    CHECK(config_message(c).find("not prime") != std::string::npos);
    c = named("arch-upsilon");
    c.weight = 7;
    CHECK(config_message(c).find("weight") != std::string::npos);
    c = named("unramified-ramified");
    c.disc = 1;
    CHECK_FALSE(config_message(c).empty());
    // defaults
    auto d = resolve_config(named("unramified-ramified"));
    CHECK(*d.prime == 5);
    CHECK(*d.disc == 5);
    d = resolve_config(named("unramified-split"));
    CHECK(*d.prime == 5);
    CHECK(*d.disc == 1);
    CHECK(*d.weight == 6);
    CHECK(*d.trunc == 18);
    CHECK(*d.samples == 200);
    CHECK(*d.seed == 1);
    CHECK_THROWS_AS(run_suite(c), PvError);
}

TEST_CASE("suite examples") {
    auto cs = run_suite(named("charsum"));
    auto* m = find(cs, "nontrivial-sum-minus-identity");
    REQUIRE(m);
    CHECK(m->status == CheckStatus::Pass);
    CHECK(exit_code({cs}) == 0);

    auto co = run_suite(named("coset-reps"));
    REQUIRE(find(co, "orbit-count-U_p"));
    CHECK(find(co, "orbit-count-U_p")->lhs == "3");
    CHECK(find(co, "orbit-count-I'_p")->lhs == "8");
    CHECK(co.count(CheckStatus::Fail) == 0);

    auto st = run_suite(named("steinberg-s3"));
    CHECK(st.count(CheckStatus::Finding) == 1);
    CHECK(st.count(CheckStatus::Fail) == 0);
    REQUIRE(find(st, "proof-identity"));
    CHECK(find(st, "proof-identity")->status == CheckStatus::Pass);
    CHECK(find(st, "statement-factor")->witness.find("Y^6") != std::string::npos);
    CHECK(exit_code({st}) == 0);
}

TEST_CASE("determinism given the seed") {
    for (const char* s : {"embedding", "constants", "arch-upsilon"}) {
        CAPTURE(s);
        SuiteConfig c = named(s);
        c.samples = 25;
        c.seed = 7;
        const auto a = report_json(run_suite(c), false), b = report_json(run_suite(c), false);
        CHECK(a == b);
        CHECK(a.find("wall_ms") == std::string::npos);
    }
}
