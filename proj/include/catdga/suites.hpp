#pragma once

#include <string>
#include <vector>

#include "catdga/report.hpp"

namespace catdga {

struct SuiteInfo {
    int number;         // acceptance criterion
    std::string name;   // suite name for the command line
    std::string title;
};

const std::vector<SuiteInfo>& suites();
// Throws std::invalid_argument for an unknown name.
Report run_suite(const std::string& name);
Report run_criterion(int number);

}  // namespace catdga
