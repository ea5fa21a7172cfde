#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace reslab {

struct Check {
    std::string name;
    double value = 0;
    double threshold = 0;
    bool lower_bound = false;  // value must reach the threshold instead of staying below it
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    double lambda = 3;
    std::uint64_t seed = 1;
    std::vector<Check> checks;

    bool pass() const;
};

inline const std::vector<std::string> kSuiteNames = {"operators", "cocycles", "flow", "green"};

bool is_suite_name(const std::string& name);

// DomainError for an unknown suite
SuiteReport run_suite(const std::string& suite, double lambda, std::uint64_t seed = 1);

Check make_check(std::string name, double value, double threshold, bool lower_bound = false);

}  // namespace reslab
