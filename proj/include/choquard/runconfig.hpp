#pragma once
#include <cstdint>
#include <string>

#include <json.hpp>

#include "choquard/bubble.hpp"
#include "choquard/grid.hpp"
#include "choquard/params.hpp"
#include "choquard/potentials.hpp"
#include "choquard/solver.hpp"

namespace choquard {

enum class OutputFormat { csv, json };

OutputFormat output_format_from_string(const std::string& s);
std::string output_format_to_string(OutputFormat f);

struct IoConfig {
    std::string output_dir = "out";
    OutputFormat format = OutputFormat::csv;
};

// One reproducible run description: problem, discretization, bubble, solver,
// potential, and output settings, round-tripping losslessly through JSON.
struct RunConfig {
    ProblemParams problem;
    int points_per_axis = 32;
    double box_length = 12.0;
    double eps = 0.1;
    double delta = 1.0;
    CutoffProfile cutoff_profile = CutoffProfile::smoothstep;
    SolveConfig solve;
    PotentialSpec potentials;
    IoConfig io;
    std::uint64_t seed = 1234;

    Grid make_grid_for_problem() const;
    BubbleParams make_bubble() const;
};

// Strict parser: unknown keys anywhere raise ValidationError naming the key.
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json run_config_to_json(const RunConfig& cfg);
RunConfig load_run_config(const std::string& path);

} // namespace choquard
