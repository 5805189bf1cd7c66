#pragma once
#include <string>
#include <vector>

namespace c2l {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool warning = false;   // soft criterion outside its expected range; does not count as a failure
    double seconds = 0;
    double time_limit = 0;  // 0 when the criterion has none
    std::string detail;     // json object with the measured values
};

constexpr int kCriteria = 11;

// quick mode shrinks the sample sizes; thresholds stay the same
CriterionResult run_criterion(int id, const std::string& fixture_dir, bool quick = false);
std::string criterion_json(const CriterionResult& r);
std::string read_text(const std::string& path);

}
