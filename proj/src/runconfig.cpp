#include "choquard/runconfig.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "choquard/errors.hpp"

namespace choquard {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
        throw ValidationError("config block '" + where + "' must be a JSON object");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed) {
            if (it.key() == key) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ValidationError("unknown key '" + it.key() + "' in config block '" +
                                  where + "'");
        }
    }
}

template <typename T>
void read_field(const json& j, const char* key, T& out, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception& e) {
        throw ValidationError("config field '" + where + "." + key +
                              "' has the wrong type: " + e.what());
    }
}

void read_string_field(const json& j, const char* key, std::string& out,
                       const std::string& where) {
    read_field<std::string>(j, key, out, where);
}

} // namespace

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ValidationError("unknown output format '" + s + "' (expected csv or json)");
}

std::string output_format_to_string(OutputFormat f) {
    return f == OutputFormat::csv ? "csv" : "json";
}

Grid RunConfig::make_grid_for_problem() const {
    return make_grid(problem.dim, points_per_axis, box_length);
}

BubbleParams RunConfig::make_bubble() const {
    return make_bubble_params(problem, eps, delta, cutoff_profile);
}

RunConfig run_config_from_json(const nlohmann::json& j) {
    RunConfig cfg;
    check_keys(j, "<root>",
               {"problem", "grid", "bubble", "solve", "potentials", "io", "seed"});

    if (j.contains("problem")) {
        const json& b = j.at("problem");
        check_keys(b, "problem", {"N", "alpha", "p", "lambda", "family"});
        read_field<int>(b, "N", cfg.problem.dim, "problem");
        read_field<double>(b, "alpha", cfg.problem.alpha, "problem");
        read_field<double>(b, "p", cfg.problem.p, "problem");
        read_field<double>(b, "lambda", cfg.problem.lambda, "problem");
        std::string fam = family_to_string(cfg.problem.family);
        read_string_field(b, "family", fam, "problem");
        cfg.problem.family = family_from_string(fam);
    }
    if (j.contains("grid")) {
        const json& b = j.at("grid");
        check_keys(b, "grid", {"points_per_axis", "box_length"});
        read_field<int>(b, "points_per_axis", cfg.points_per_axis, "grid");
        read_field<double>(b, "box_length", cfg.box_length, "grid");
    }
    if (j.contains("bubble")) {
        const json& b = j.at("bubble");
        check_keys(b, "bubble", {"eps", "delta", "cutoff_profile"});
        read_field<double>(b, "eps", cfg.eps, "bubble");
        read_field<double>(b, "delta", cfg.delta, "bubble");
        std::string prof = cutoff_profile_to_string(cfg.cutoff_profile);
        read_string_field(b, "cutoff_profile", prof, "bubble");
        cfg.cutoff_profile = cutoff_profile_from_string(prof);
    }
    if (j.contains("solve")) {
        const json& b = j.at("solve");
        check_keys(b, "solve",
                   {"max_iters", "step_rule", "step_init", "grad_tol", "reproject_every"});
        read_field<int>(b, "max_iters", cfg.solve.max_iters, "solve");
        std::string rule = step_rule_to_string(cfg.solve.step_rule);
        read_string_field(b, "step_rule", rule, "solve");
        cfg.solve.step_rule = step_rule_from_string(rule);
        read_field<double>(b, "step_init", cfg.solve.step_init, "solve");
        read_field<double>(b, "grad_tol", cfg.solve.grad_tol, "solve");
        read_field<int>(b, "reproject_every", cfg.solve.reproject_every, "solve");
    }
    if (j.contains("potentials")) {
        const json& b = j.at("potentials");
        check_keys(b, "potentials",
                   {"magnetic", "a0", "v0", "v1", "w0", "sigma", "gauge_chi0"});
        read_string_field(b, "magnetic", cfg.potentials.magnetic, "potentials");
        read_field<double>(b, "a0", cfg.potentials.a0, "potentials");
        read_field<double>(b, "v0", cfg.potentials.v0, "potentials");
        read_field<double>(b, "v1", cfg.potentials.v1, "potentials");
        read_field<double>(b, "w0", cfg.potentials.w0, "potentials");
        read_field<double>(b, "sigma", cfg.potentials.sigma, "potentials");
        read_field<double>(b, "gauge_chi0", cfg.potentials.gauge_chi0, "potentials");
    }
    if (j.contains("io")) {
        const json& b = j.at("io");
        check_keys(b, "io", {"output_dir", "format"});
        read_string_field(b, "output_dir", cfg.io.output_dir, "io");
        std::string fmt = output_format_to_string(cfg.io.format);
        read_string_field(b, "format", fmt, "io");
        cfg.io.format = output_format_from_string(fmt);
    }
    if (j.contains("seed")) {
        read_field<std::uint64_t>(j, "seed", cfg.seed, "<root>");
    }
    cfg.solve.seed = cfg.seed;
    return cfg;
}

nlohmann::json run_config_to_json(const RunConfig& cfg) {
    json j;
    j["problem"] = {{"N", cfg.problem.dim},
                    {"alpha", cfg.problem.alpha},
                    {"p", cfg.problem.p},
                    {"lambda", cfg.problem.lambda},
                    {"family", family_to_string(cfg.problem.family)}};
    j["grid"] = {{"points_per_axis", cfg.points_per_axis},
                 {"box_length", cfg.box_length}};
    j["bubble"] = {{"eps", cfg.eps},
                   {"delta", cfg.delta},
                   {"cutoff_profile", cutoff_profile_to_string(cfg.cutoff_profile)}};
    j["solve"] = {{"max_iters", cfg.solve.max_iters},
                  {"step_rule", step_rule_to_string(cfg.solve.step_rule)},
                  {"step_init", cfg.solve.step_init},
                  {"grad_tol", cfg.solve.grad_tol},
                  {"reproject_every", cfg.solve.reproject_every}};
    j["potentials"] = {{"magnetic", cfg.potentials.magnetic},
                       {"a0", cfg.potentials.a0},
                       {"v0", cfg.potentials.v0},
                       {"v1", cfg.potentials.v1},
                       {"w0", cfg.potentials.w0},
                       {"sigma", cfg.potentials.sigma},
                       {"gauge_chi0", cfg.potentials.gauge_chi0}};
    j["io"] = {{"output_dir", cfg.io.output_dir},
               {"format", output_format_to_string(cfg.io.format)}};
    j["seed"] = cfg.seed;
    return j;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config file '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return run_config_from_json(j);
}

} // namespace choquard
