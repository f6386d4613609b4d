#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "lforge/factorization.hpp"

namespace lforge {

using Json = nlohmann::ordered_json;

enum class Suite { identity, lemma1, lte, gcd, bhv, carmichael, zsigmondy, rank, thm2 };

std::string_view to_string(Suite s);
Suite parse_suite(std::string_view name);

/// Defaults reproduce the acceptance ranges; zero means "suite default".
struct SuiteParams {
    int64_t r_max = 8;
    int64_t q_max = 8;
    uint64_t n_min = 0;
    uint64_t n_max = 0;
    int64_t a_max = 0;
    uint64_t p_min = 0;
    uint64_t p_max = 0;
    unsigned samples = 200;  // gcd suite, per pair
    uint64_t seed = 0;
    FactorBudget budget;
    unsigned threads = 1;
};

struct SuiteReport {
    std::string suite;
    uint64_t cases = 0;
    uint64_t passed = 0;
    std::vector<Json> violations;   // full reproduction data
    uint64_t skipped_budget = 0;
    uint64_t wall_ms = 0;
    std::vector<Json> observations;  // report-only findings, never violations
    Json params = Json::object();

    bool consistent() const { return cases == passed + violations.size() + skipped_budget; }
    Json to_json(bool with_timing) const;
};

SuiteReport verify_suite(Suite suite, const SuiteParams& params);

}  // namespace lforge
