#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pv {

// unset fields take the per-suite defaults
struct SuiteConfig {
    std::string suite;
    std::optional<long> prime, prime2, disc;
    std::optional<int> weight, trunc, samples;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
};

enum class CheckStatus { Pass, Fail, Finding };
const char* check_status_name(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string lhs, rhs, witness, anchor;
    bool operator==(const CheckResult&) const = default;
};

struct VerdictReport {
    std::string suite;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<CheckResult> checks;
    long wall_ms = 0;
    int count(CheckStatus s) const;
    bool operator==(const VerdictReport&) const = default;
};

const std::vector<std::string>& suite_names();

// fills the defaults and checks primes, weight and splitting; ConfigError on a bad combination
SuiteConfig resolve_config(const SuiteConfig& cfg);
// deterministic given the config; module errors inside a suite become failed checks
VerdictReport run_suite(const SuiteConfig& cfg);
// every suite with defaults, concurrently; reports in suite_names() order
std::vector<VerdictReport> run_all(unsigned jobs = 0);

std::string report_json(const VerdictReport& r, bool with_time = true);
std::string reports_json(const std::vector<VerdictReport>& rs, bool with_time = true);
VerdictReport report_from_json(const std::string& text);
std::string report_text(const VerdictReport& r);
// 0 iff no check failed
int exit_code(const std::vector<VerdictReport>& rs);

}  // namespace pv
