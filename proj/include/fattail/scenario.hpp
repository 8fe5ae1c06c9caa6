#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fattail {

struct ScenarioPeriod {
    double equity_return;
    double implied_vol; // decimal, e.g. 0.2
};

struct ScenarioPath {
    std::vector<ScenarioPeriod> periods;
};

// One period per line: "spot_return, implied_vol". '#' starts a comment;
// blank lines are skipped. Malformed lines and non-positive vols throw
// invalid_parameter naming the line number.
ScenarioPath parse_scenario(std::istream& in);
ScenarioPath parse_scenario_file(const std::string& path);

// The crash-then-rally demonstration path: -50% then a >100% recovery, with
// vol spiking at the crash and decaying back.
ScenarioPath default_demo_path();

} // namespace fattail
