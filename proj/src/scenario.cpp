#include "fattail/scenario.hpp"

#include <cctype>
#include <fstream>
#include <string>

#include "fattail/errors.hpp"

namespace fattail {
namespace {

bool parse_double(const std::string& text, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(text, &pos);
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        return pos == text.size();
    } catch (const std::exception&) {
        return false;
    }
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

ScenarioPath parse_scenario(std::istream& in) {
    ScenarioPath path;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t comma = line.find(',');
        if (comma == std::string::npos ||
            line.find(',', comma + 1) != std::string::npos)
            throw invalid_parameter(
                "scenario line " + std::to_string(line_no) +
                ": expected exactly two fields 'return, implied_vol'");
        double ret, vol;
        if (!parse_double(trim(line.substr(0, comma)), ret) ||
            !parse_double(trim(line.substr(comma + 1)), vol))
            throw invalid_parameter("scenario line " + std::to_string(line_no) +
                                    ": fields must be numeric");
        if (!(vol > 0.0))
            throw invalid_parameter("scenario line " + std::to_string(line_no) +
                                    ": implied vol must be strictly positive");
        if (!(ret > -1.0))
            throw invalid_parameter("scenario line " + std::to_string(line_no) +
                                    ": return must exceed -100%");
        path.periods.push_back({ret, vol});
    }
    if (path.periods.empty())
        throw invalid_parameter("scenario contains no periods");
    return path;
}

ScenarioPath parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw invalid_parameter("cannot open scenario file: " + path);
    return parse_scenario(in);
}

ScenarioPath default_demo_path() {
    ScenarioPath path;
    path.periods = {
        {-0.50, 0.20}, // crash, priced off pre-crash vol
        {+0.20, 0.60}, // vol spike after the drop
        {+0.25, 0.35},
        {+0.20, 0.30},
        {+0.15, 0.25},
        {+0.10, 0.20},
    };
    return path;
}

} // namespace fattail
