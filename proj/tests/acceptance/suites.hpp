#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace erosim::acceptance {

struct Criterion {
    std::string id;    // "1".."11", or "x" for extra properties
    std::string title;
    bool pass = false;
    bool blocking = true;
    std::string detail;
};

std::string format(const Criterion& c);

const std::vector<std::string>& suite_names();

// Runs one suite; each criterion is handed to `emit` as soon as it is known.
// Throws std::invalid_argument for an unknown suite.
void run_suite(const std::string& name, const std::function<void(const Criterion&)>& emit);

} // namespace erosim::acceptance
