#pragma once

#include <string>
#include <vector>

#include "morava/serialize.hpp"

namespace morava {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    u64 seed = 1;
    bool stretch = true;       // include the (3,2,1,4) run in criterion 6
    bool parallel = true;
    std::vector<int> only;     // empty: all nine
};

// Results sorted by criterion id.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});
std::string format_line(const CriterionResult& r);
Json to_json(const CriterionResult& r);

}  // namespace morava
