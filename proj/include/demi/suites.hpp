#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "demi/demidist.hpp"
#include "demi/sampling.hpp"

namespace demi {

struct SuiteConfig {
    std::uint64_t seed = 20240917;
    int samples_per_check = 100;
    QuadratureConfig quadrature;
    std::map<std::string, double> tolerance_overrides;
    std::vector<std::string> suites;  ///< empty selects every registered suite
    std::string output_path = "verify-out";

    /// Missing keys keep their defaults; unknown keys are rejected.
    static SuiteConfig from_json(const Json& j);
    Json to_json() const;
    /// Throws std::invalid_argument on bad values or unknown suite ids.
    void validate() const;
};

struct SampleOutcome {
    double residual = 0.0;
    std::string description;
};

struct CheckResult {
    std::string check_id;
    std::string anchor;
    int n_samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string worst_sample;
    std::vector<double> residuals;
    Json to_json() const;
};

struct CheckContext {
    const QuadratureConfig& cfg;
    int n;  ///< samples to draw
};

struct CheckSpec {
    std::string id;
    std::string anchor;   ///< the identity or bound the check exercises
    double tolerance;
    int cap;              ///< upper bound on samples; 0 means none
    std::function<std::vector<SampleOutcome>(const CheckContext&, Sampler&)> run;
};

struct Suite {
    std::string id;
    std::vector<std::string> aliases;
    std::string summary;
    std::vector<CheckSpec> checks;
};

const std::vector<Suite>& registry();
/// Resolves an id or alias; nullopt when unknown.
std::optional<std::string> canonical_suite_id(const std::string& id);
/// Traceability text: every check id with its anchor and tolerance.
std::string describe_suite(const std::string& id);

/// Runs one check with its derived seed.
CheckResult run_check(const CheckSpec& spec, const SuiteConfig& cfg);
/// Runs the requested suites; checks execute in parallel and are reported in
/// registry order.
std::vector<CheckResult> run_suites(const SuiteConfig& cfg);

/// Array of CheckResult objects, keys in fixed order.
Json report_json(const std::vector<CheckResult>& results);
/// check_id,sample_index,residual
std::string residuals_csv(const std::vector<CheckResult>& results);

}  // namespace demi
