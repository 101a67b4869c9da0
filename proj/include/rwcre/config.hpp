#pragma once

// Declarative experiment configuration: a flat key = value file with inline
// tables for the rule and schedule blocks. Parse errors carry line context.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rwcre/cooling.hpp"
#include "rwcre/rule.hpp"

namespace rwcre {

struct ConfigError : std::runtime_error {
    ConfigError(int line, const std::string& what)
        : std::runtime_error("config line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

struct RuleSpec {
    std::string kind;  // "two-point" | "finite-support" | "symmetric-beta"
    double p = 0.0;    // two-point: support {p, 1-p}
    std::vector<std::pair<double, double>> atoms;
    double shape = 0.0;

    ResamplingRule build() const;
};

struct ScheduleSpec {
    std::string kind;  // "polynomial" | "exponential" | "unit" | "explicit"
    double B = 1.0, beta = 2.0, C = 1.0, scale = 1.0;
    std::string file;  // explicit: one tau(k) per line

    CoolingSchedule build() const;
};

struct ExperimentConfig {
    RuleSpec rule;
    ScheduleSpec schedule;
    std::vector<int64_t> horizons;
    int64_t replicas = 1000;
    std::vector<double> grid = {0.25, 0.5, 0.75, 1.0};
    double a = 0.5;
    uint64_t seed = 1;
    std::string out_dir = "out";
    bool dump_paths = false;
    int oracle_cap = 12;
    std::vector<std::string> suites;  // "marginal" | "fdd" | "flatness" | "blockvar"

    std::string text;  // canonical source text, embedded into the manifest
};

// Parses the config format; throws ConfigError with line context on the
// first problem found.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace rwcre
