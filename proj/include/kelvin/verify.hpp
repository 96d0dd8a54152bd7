#pragma once

#include <kelvin/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace kelvin {

struct CaseResult {
    std::string id;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string relation;  // "<=", "<" or ">=": how measured is compared with threshold
};

// Measured quantities that are reported but not asserted.
struct Diagnostic {
    std::string id;
    double value = 0.0;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<CaseResult> cases;
    std::vector<Diagnostic> diagnostics;
    double wall_time = 0.0;

    bool passed() const;
    const CaseResult* find(const std::string& id) const;
};

struct VerifyConfig {
    std::uint64_t seed = 20240601;
    ExecPolicy policy = ExecPolicy::Parallel;
};

const std::vector<std::string>& suite_names();

// One suite by name, or every suite for "all". Unknown names raise an Input error.
std::vector<SuiteReport> run_verify(const std::string& name, const VerifyConfig& cfg = {});

}  // namespace kelvin
