#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sjl/derive.hpp"
#include "sjl/io.hpp"

namespace sjl {

struct Config {
    std::uint64_t seed = 1;
    std::string format = "table";  // table | json
    bool timing = false;          // wall time breaks byte-identical reports, so it is opt-in
    std::map<std::string, double> suite_tol;
    std::optional<double> tol;    // --tol: replaces every upper-bound tolerance
    DeriveOptions fd;
    int enumeration_bound = 5;
    int grid = 8;
};

// Reads a JSON config; unknown keys are rejected so typos do not silently fall back to defaults.
Config load_config(const json& j);
Config load_config_file(const std::string& path);
json config_json(const Config& c);

enum class Compare { LE, GE };

struct CaseRecord {
    std::string label;
    std::string digest;  // FNV-1a of the label and the case inputs
    double residual = 0.0;
    double tolerance = 0.0;
    Compare compare = Compare::LE;
    int samples = 1;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    int cases = 0;
    int passed = 0;
    double max_residual = 0.0;  // over upper-bound cases
    std::vector<CaseRecord> records;
    std::vector<std::pair<std::string, json>> diagnostics;
    std::uint64_t seed = 1;
    std::optional<double> wall_ms;

    bool ok() const { return passed == cases; }
};

const std::vector<std::string>& suite_names();
// Throws InputError for an unknown suite name.
SuiteReport run_suite(const std::string& name, const Config& cfg);

json report_json(const SuiteReport& r);
std::string report_table(const SuiteReport& r);

}  // namespace sjl
