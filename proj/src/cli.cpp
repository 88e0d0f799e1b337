#include "choquard/cli.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "choquard/bubble.hpp"
#include "choquard/constants.hpp"
#include "choquard/energy.hpp"
#include "choquard/errors.hpp"
#include "choquard/riesz.hpp"
#include "choquard/runconfig.hpp"
#include "choquard/snapshot.hpp"
#include "choquard/solver.hpp"
#include "choquard/version.hpp"

namespace choquard {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_cell(const json& v) {
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void add_row(std::initializer_list<json> cells) { rows.emplace_back(cells); }

    std::string to_csv() const {
        std::ostringstream out;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << (c ? "," : "") << columns[c];
        }
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                out << (c ? "," : "") << format_cell(row[c]);
            }
            out << "\n";
        }
        return out.str();
    }

    std::string to_json_text() const {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj;
            for (std::size_t c = 0; c < columns.size() && c < row.size(); ++c) {
                obj[columns[c]] = row[c];
            }
            arr.push_back(obj);
        }
        return arr.dump(2) + "\n";
    }
};

int worker_cap() {
    const char* s = std::getenv("CHOQUARD_LAB_THREADS");
    if (!s) return 1;
    int v = std::atoi(s);
    return v < 1 ? 1 : v;
}

// Runs fn(i) for i in [0, count) across at most CHOQUARD_LAB_THREADS workers;
// every task writes only to its own preallocated slot, so outputs stay in
// row order.
template <typename F>
void for_rows(std::size_t count, F fn) {
    int cap = worker_cap();
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(cap), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct Extras {
    std::string scalar = "periodic";
    std::string in_path;
    std::string warm_path;
    std::string eps_seq;
    std::string lambda_seq;
    double t_min = 1e-2;
    double t_max = 1e2;
    int t_points = 201;
    double c2 = 1.0;
    double c3 = 1.0;
    double diamag_tol = -1.0;

    json to_json(const std::string& command) const {
        json j;
        if (command == "energy" || command == "nehari" || command == "solve") {
            j["scalar"] = scalar;
        }
        if (command == "convolve" || command == "energy" || command == "nehari" ||
            command == "diamagnetic") {
            j["in"] = in_path;
        }
        if (command == "solve") j["warm"] = warm_path;
        if (command == "bubble-scan" || command == "asymptotics") j["eps_seq"] = eps_seq;
        if (command == "asymptotics") {
            j["C2"] = c2;
            j["C3"] = c3;
        }
        if (command == "case2") j["lambda_seq"] = lambda_seq;
        if (command == "case1") {
            j["t_min"] = t_min;
            j["t_max"] = t_max;
            j["t_points"] = t_points;
        }
        if (command == "diamagnetic") j["tol"] = diamag_tol;
        return j;
    }
};

ScalarChoice parse_scalar(const std::string& s) {
    if (s == "periodic") return ScalarChoice::periodic;
    if (s == "effective") return ScalarChoice::effective;
    throw ValidationError("unknown scalar choice '" + s +
                          "' (expected periodic or effective)");
}

// Sequence specs: "dyadic:K" (start, start/2, ...), "doubling:K"
// (start, 2*start, ...), or an explicit comma-separated list.
std::vector<double> parse_sequence(const std::string& spec, double start) {
    auto parse_count = [&](std::size_t prefix_len) {
        int count = 0;
        try {
            count = std::stoi(spec.substr(prefix_len));
        } catch (const std::exception&) {
            throw ValidationError("bad sequence spec '" + spec + "'");
        }
        if (count < 1) throw ValidationError("sequence count must be >= 1");
        return count;
    };
    if (spec.rfind("dyadic:", 0) == 0) {
        return dyadic_sequence(start, parse_count(7));
    }
    if (spec.rfind("doubling:", 0) == 0) {
        int count = parse_count(9);
        std::vector<double> seq;
        double v = start;
        for (int k = 0; k < count; ++k) {
            seq.push_back(v);
            v *= 2.0;
        }
        return seq;
    }
    std::vector<double> seq;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            seq.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ValidationError("bad sequence entry '" + item + "' in '" + spec + "'");
        }
    }
    if (seq.empty()) throw ValidationError("empty sequence spec '" + spec + "'");
    return seq;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write output file '" + path.string() + "'");
    }
    out << text;
}

void emit_manifest(const RunConfig& cfg, const std::string& command, const Extras& ex) {
    std::filesystem::create_directories(cfg.io.output_dir);
    json manifest;
    manifest["version"] = kVersion;
    manifest["command"] = command;
    manifest["config"] = run_config_to_json(cfg);
    manifest["extras"] = ex.to_json(command);
    write_text_file(std::filesystem::path(cfg.io.output_dir) / "manifest.json",
                    manifest.dump(2) + "\n");
}

void emit_table(const RunConfig& cfg, const std::string& command, const Table& table) {
    std::filesystem::path dir(cfg.io.output_dir);
    std::string text =
        cfg.io.format == OutputFormat::csv ? table.to_csv() : table.to_json_text();
    std::string ext = cfg.io.format == OutputFormat::csv ? ".csv" : ".json";
    write_text_file(dir / (command + ext), text);
    std::cout << text;
}

// Loads the snapshot and folds its grid back into the resolved config so the
// manifest reflects what actually ran.
ComplexField load_input_field(RunConfig& cfg, const std::string& path) {
    ComplexField u = read_cfd(path);
    if (u.grid.dim != cfg.problem.dim) {
        std::ostringstream err;
        err << "snapshot '" << path << "' has dimension " << u.grid.dim
            << " but the problem has N=" << cfg.problem.dim;
        throw ValidationError(err.str());
    }
    cfg.points_per_axis = u.grid.n;
    cfg.box_length = u.grid.L;
    return u;
}

int cmd_constants(const RunConfig& cfg, const Extras& ex) {
    cfg.problem.validate();
    ConstantsReport rep = constants_report(cfg.problem);
    emit_manifest(cfg, "constants", ex);
    Table t;
    t.columns = {"N",           "alpha",        "family",      "hls_constant",
                 "best_sobolev", "shl_constant", "ps_threshold"};
    t.add_row({cfg.problem.dim, cfg.problem.alpha, family_to_string(cfg.problem.family),
               rep.hls_constant, rep.sobolev, rep.shl, rep.threshold});
    emit_table(cfg, "constants", t);
    return 0;
}

int cmd_convolve(RunConfig& cfg, const Extras& ex) {
    cfg.problem.validate();
    ComplexField input;
    if (!ex.in_path.empty()) {
        input = load_input_field(cfg, ex.in_path);
    } else {
        Grid grid = cfg.make_grid_for_problem();
        input = ComplexField(grid);
        for (std::size_t f = 0; f < input.v.size(); ++f) {
            auto idx = grid.unflat(f);
            double r2 = 0.0;
            for (int ax = 0; ax < grid.dim; ++ax) {
                double x = grid.coord(idx[static_cast<std::size_t>(ax)]);
                r2 += x * x;
            }
            input.v[f] = std::exp(-0.5 * r2);
        }
    }
    RealField dens(input.grid);
    for (std::size_t f = 0; f < dens.v.size(); ++f) dens.v[f] = input.v[f].real();
    RieszPlan plan = riesz_plan(input.grid, cfg.problem.alpha);
    RealField conv = riesz_convolve(plan, dens);

    ComplexField out(input.grid);
    double in_l2 = 0.0, out_l2 = 0.0, cmin = conv.v[0], cmax = conv.v[0];
    for (std::size_t f = 0; f < conv.v.size(); ++f) {
        out.v[f] = conv.v[f];
        in_l2 += dens.v[f] * dens.v[f];
        out_l2 += conv.v[f] * conv.v[f];
        cmin = std::min(cmin, conv.v[f]);
        cmax = std::max(cmax, conv.v[f]);
    }
    double hN = input.grid.cell_volume();
    emit_manifest(cfg, "convolve", ex);
    write_cfd((std::filesystem::path(cfg.io.output_dir) / "conv.cfd").string(), out);

    Table t;
    t.columns = {"N",        "alpha",     "points_per_axis", "box_length",
                 "input_l2", "output_l2", "output_min",      "output_max"};
    t.add_row({cfg.problem.dim, cfg.problem.alpha, input.grid.n, input.grid.L,
               std::sqrt(in_l2 * hN), std::sqrt(out_l2 * hN), cmin, cmax});
    emit_table(cfg, "convolve", t);
    return 0;
}

ComplexField default_field(RunConfig& cfg, const Extras& ex) {
    if (!ex.in_path.empty()) return load_input_field(cfg, ex.in_path);
    Grid grid = cfg.make_grid_for_problem();
    return make_u_eps(grid, cfg.make_bubble());
}

int cmd_energy(RunConfig& cfg, const Extras& ex) {
    ComplexField u = default_field(cfg, ex);
    PotentialSet pots = sample_potentials(u.grid, cfg.potentials);
    EnergyModel model(cfg.problem, pots);
    EnergyBreakdown br = model.energy(u, parse_scalar(ex.scalar));
    emit_manifest(cfg, "energy", ex);
    Table t;
    t.columns = {"scalar",       "kinetic_magnetic", "potential",
                 "choquard_critical", "choquard_sub", "power_sub",
                 "power_critical",    "norm_sq",      "total"};
    t.add_row({ex.scalar, br.kinetic_magnetic, br.potential, br.choquard_critical,
               br.choquard_sub, br.power_sub, br.power_critical, br.norm_sq(),
               br.total});
    emit_table(cfg, "energy", t);
    return 0;
}

int cmd_nehari(RunConfig& cfg, const Extras& ex) {
    ComplexField u = default_field(cfg, ex);
    PotentialSet pots = sample_potentials(u.grid, cfg.potentials);
    EnergyModel model(cfg.problem, pots);
    ScalarChoice scalar = parse_scalar(ex.scalar);
    double res_raw = model.nehari_residual(u, scalar);
    EnergyModel::Projection proj = model.nehari_project(u, scalar);
    double res_proj = model.nehari_residual(proj.projected, scalar);
    EnergyBreakdown br = model.energy(proj.projected, scalar);
    emit_manifest(cfg, "nehari", ex);
    Table t;
    t.columns = {"scalar", "t_u", "residual_raw", "residual_projected",
                 "norm_sq_projected", "level_at_tu"};
    t.add_row({ex.scalar, proj.t_u, res_raw, res_proj, br.norm_sq(), br.total});
    emit_table(cfg, "nehari", t);
    return 0;
}

int cmd_bubble_scan(RunConfig& cfg, const Extras& ex) {
    cfg.problem.validate();
    Grid grid = cfg.make_grid_for_problem();
    std::string spec = ex.eps_seq.empty() ? "dyadic:4" : ex.eps_seq;
    std::vector<double> eps_seq = parse_sequence(spec, cfg.eps);

    struct Row {
        double eps, grid_mass, radial_mass, rel_diff, annulus, grad_sq;
    };
    std::vector<Row> rows(eps_seq.size());
    for_rows(eps_seq.size(), [&](std::size_t i) {
        BubbleParams bp =
            make_bubble_params(cfg.problem, eps_seq[i], cfg.delta, cfg.cutoff_profile);
        MassReport mass = l2_mass_integral(grid, bp);
        rows[i] = {eps_seq[i],
                   mass.grid_value,
                   mass.radial_value,
                   mass.rel_diff,
                   bubble_annulus_mass(cfg.problem.dim, bp),
                   bubble_gradient_norm_sq(cfg.problem.dim, bp)};
    });

    emit_manifest(cfg, "bubble-scan", ex);
    Table t;
    t.columns = {"eps",      "grid_mass", "radial_mass",
                 "rel_diff", "annulus_mass", "grad_norm_sq"};
    for (const Row& r : rows) {
        t.add_row({r.eps, r.grid_mass, r.radial_mass, r.rel_diff, r.annulus, r.grad_sq});
    }
    emit_table(cfg, "bubble-scan", t);
    return 0;
}

int cmd_case1(RunConfig& cfg, const Extras& ex) {
    Grid grid = cfg.make_grid_for_problem();
    PotentialSet pots = sample_potentials(grid, cfg.potentials);
    std::vector<double> t_grid = log_spaced(ex.t_min, ex.t_max, ex.t_points);
    Case1Report rep = case1_check(cfg.problem, pots, cfg.make_bubble(), t_grid);
    emit_manifest(cfg, "case1", ex);
    Table t;
    t.columns = {"eps",    "delta",    "sup_tJ", "threshold",
                 "margin", "argmax_t", "resolution_warning"};
    t.add_row({cfg.eps, cfg.delta, rep.sup_tJ, rep.threshold, rep.margin, rep.argmax_t,
               rep.resolution_warning});
    emit_table(cfg, "case1", t);
    return 0;
}

int cmd_case2(RunConfig& cfg, const Extras& ex) {
    Grid grid = cfg.make_grid_for_problem();
    PotentialSet pots = sample_potentials(grid, cfg.potentials);
    std::string spec = ex.lambda_seq.empty() ? "doubling:9" : ex.lambda_seq;
    std::vector<double> lambdas = parse_sequence(spec, cfg.problem.lambda);
    std::vector<Case2Row> rows = case2_scan(cfg.problem, pots, cfg.make_bubble(), lambdas);
    emit_manifest(cfg, "case2", ex);
    Table t;
    t.columns = {"lambda",     "t_lambda",        "sup_tJ",
                 "decreasing", "below_threshold", "quadratic_bound"};
    for (const Case2Row& r : rows) {
        t.add_row({r.lambda, r.t_lambda, r.sup_tJ, r.decreasing, r.below_threshold,
                   r.quadratic_bound});
    }
    emit_table(cfg, "case2", t);
    return 0;
}

int cmd_asymptotics(RunConfig& cfg, const Extras& ex) {
    std::string spec = ex.eps_seq.empty() ? "dyadic:8" : ex.eps_seq;
    std::vector<double> eps_seq = parse_sequence(spec, cfg.eps);
    std::vector<DivergenceRow> rows =
        divergence_scan(cfg.problem, cfg.make_bubble(), eps_seq, ex.c2, ex.c3);
    emit_manifest(cfg, "asymptotics", ex);
    Table t;
    t.columns = {"eps", "I_eps", "decreasing"};
    for (const DivergenceRow& r : rows) {
        t.add_row({r.eps, r.value, r.decreasing});
    }
    emit_table(cfg, "asymptotics", t);
    return 0;
}

int cmd_solve(RunConfig& cfg, const Extras& ex) {
    Grid grid = cfg.make_grid_for_problem();
    PotentialSet pots = sample_potentials(grid, cfg.potentials);
    ScalarChoice scalar = parse_scalar(ex.scalar);
    ComplexField warm;
    const ComplexField* warm_ptr = nullptr;
    if (!ex.warm_path.empty()) {
        warm = load_input_field(cfg, ex.warm_path);
        if (!(warm.grid == grid)) {
            throw ValidationError("warm-start snapshot grid does not match the run grid");
        }
        warm_ptr = &warm;
    }
    Solution sol = solve_ground_state(cfg.problem, pots, scalar, cfg.solve, warm_ptr);

    emit_manifest(cfg, "solve", ex);
    std::filesystem::path dir(cfg.io.output_dir);
    write_cfd((dir / "solution.cfd").string(), sol.field);
    json sidecar;
    sidecar["params"] = run_config_to_json(cfg)["problem"];
    sidecar["levels"] = sol.level_history;
    sidecar["residual"] = sol.residual;
    sidecar["iterations"] = sol.iterations;
    sidecar["seed"] = cfg.solve.seed;
    write_text_file(dir / "solution.json", sidecar.dump(2) + "\n");

    VanishingReport vanish = vanishing_diagnostic(sol.field, 0.25 * grid.L);
    Table t;
    t.columns = {"scalar",    "level",     "residual", "iterations",
                 "converged", "max_ball_mass"};
    t.add_row({ex.scalar, sol.level, sol.residual, sol.iterations, sol.converged,
               vanish.max_ball_mass});
    emit_table(cfg, "solve", t);
    if (!sol.converged) {
        std::cerr << "solve: not converged after " << sol.iterations
                  << " accepted steps (residual " << sol.residual << ")\n";
        return 4;
    }
    return 0;
}

int cmd_compare_levels(RunConfig& cfg, const Extras& ex) {
    Grid grid = cfg.make_grid_for_problem();
    PotentialSet pots = sample_potentials(grid, cfg.potentials);
    LevelComparison rep = compare_levels(cfg.problem, pots, cfg.solve);
    emit_manifest(cfg, "compare-levels", ex);
    Table t;
    t.columns = {"c_level",      "d_level",      "gap",
                 "threshold",    "c_iterations", "d_iterations",
                 "perturbation_active"};
    t.add_row({rep.c_level, rep.d_level, rep.gap, rep.threshold, rep.c_iterations,
               rep.d_iterations, rep.perturbation_active});
    emit_table(cfg, "compare-levels", t);
    return 0;
}

int cmd_diamagnetic(RunConfig& cfg, const Extras& ex) {
    cfg.problem.validate();
    ComplexField u;
    if (!ex.in_path.empty()) {
        u = load_input_field(cfg, ex.in_path);
    } else {
        u = smooth_seeded_field(cfg.make_grid_for_problem(), cfg.seed, 2);
    }
    PotentialSet pots = sample_potentials(u.grid, cfg.potentials);
    DiamagneticReport rep = diamagnetic_check(u, pots, ex.diamag_tol);
    double tol_used = ex.diamag_tol < 0.0 ? 10.0 * u.grid.h : ex.diamag_tol;
    emit_manifest(cfg, "diamagnetic", ex);
    Table t;
    t.columns = {"fraction_satisfied", "max_violation", "tolerance"};
    t.add_row({rep.fraction_satisfied, rep.max_violation, tol_used});
    emit_table(cfg, "diamagnetic", t);
    return 0;
}

struct FlagSet {
    std::string config_path;
    std::optional<int> N;
    std::optional<double> alpha;
    std::optional<double> p;
    std::optional<double> lambda;
    std::optional<std::string> family;
    std::optional<int> grid_points;
    std::optional<double> box;
    std::optional<double> eps;
    std::optional<double> delta;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
    Extras extras;
};

void add_common_flags(CLI::App* sub, FlagSet& fs) {
    sub->add_option("--config", fs.config_path, "JSON run configuration file");
    sub->add_option("--N", fs.N, "space dimension (>= 3)");
    sub->add_option("--alpha", fs.alpha, "Riesz exponent in (0, N)");
    sub->add_option("--p", fs.p, "subcritical exponent");
    sub->add_option("--lambda", fs.lambda, "coupling (> 0)");
    sub->add_option("--family", fs.family, "nonlinearity family: A, B, or C");
    sub->add_option("--grid", fs.grid_points, "grid points per axis");
    sub->add_option("--box", fs.box, "periodic box edge length");
    sub->add_option("--eps", fs.eps, "bubble concentration scale");
    sub->add_option("--delta", fs.delta, "bubble cutoff inner radius");
    sub->add_option("--seed", fs.seed, "deterministic seed");
    sub->add_option("--out", fs.out, "output directory");
    sub->add_option("--format", fs.format, "table format: csv or json");
}

RunConfig resolve_config(const FlagSet& fs) {
    RunConfig cfg;
    if (!fs.config_path.empty()) cfg = load_run_config(fs.config_path);
    if (fs.N) cfg.problem.dim = *fs.N;
    if (fs.alpha) cfg.problem.alpha = *fs.alpha;
    if (fs.p) cfg.problem.p = *fs.p;
    if (fs.lambda) cfg.problem.lambda = *fs.lambda;
    if (fs.family) cfg.problem.family = family_from_string(*fs.family);
    if (fs.grid_points) cfg.points_per_axis = *fs.grid_points;
    if (fs.box) cfg.box_length = *fs.box;
    if (fs.eps) cfg.eps = *fs.eps;
    if (fs.delta) cfg.delta = *fs.delta;
    if (fs.seed) cfg.seed = *fs.seed;
    if (fs.out) cfg.io.output_dir = *fs.out;
    if (fs.format) cfg.io.format = output_format_from_string(*fs.format);
    cfg.solve.seed = cfg.seed;
    return cfg;
}

} // namespace

int run(int argc, char** argv) {
    CLI::App app{"numerical variational laboratory for magnetic Choquard ground states"};
    app.require_subcommand(1);
    FlagSet fs;

    CLI::App* c_constants = app.add_subcommand("constants", "sharp constants and threshold");
    CLI::App* c_convolve = app.add_subcommand("convolve", "Riesz potential of a density");
    CLI::App* c_energy = app.add_subcommand("energy", "energy breakdown of a field");
    CLI::App* c_nehari = app.add_subcommand("nehari", "Nehari projection of a field");
    CLI::App* c_bubble = app.add_subcommand("bubble-scan", "bubble mass/energy diagnostics");
    CLI::App* c_case1 = app.add_subcommand("case1", "bubble fiber sup vs threshold");
    CLI::App* c_case2 = app.add_subcommand("case2", "large-coupling fiber scan");
    CLI::App* c_asym = app.add_subcommand("asymptotics", "divergence scan of I_eps");
    CLI::App* c_solve = app.add_subcommand("solve", "ground-state search");
    CLI::App* c_cmp = app.add_subcommand("compare-levels", "periodic vs perturbed levels");
    CLI::App* c_diamag = app.add_subcommand("diamagnetic", "discrete diamagnetic check");

    for (CLI::App* sub : {c_constants, c_convolve, c_energy, c_nehari, c_bubble, c_case1,
                          c_case2, c_asym, c_solve, c_cmp, c_diamag}) {
        add_common_flags(sub, fs);
    }
    for (CLI::App* sub : {c_energy, c_nehari, c_solve}) {
        sub->add_option("--scalar", fs.extras.scalar, "potential: periodic or effective");
    }
    for (CLI::App* sub : {c_convolve, c_energy, c_nehari, c_diamag}) {
        sub->add_option("--in", fs.extras.in_path, "input field snapshot (.cfd)");
    }
    c_solve->add_option("--warm", fs.extras.warm_path, "warm-start snapshot (.cfd)");
    for (CLI::App* sub : {c_bubble, c_asym}) {
        sub->add_option("--eps-seq", fs.extras.eps_seq,
                        "eps sequence: dyadic:K or comma list");
    }
    c_asym->add_option("--C2", fs.extras.c2, "mass-term constant (> 0)");
    c_asym->add_option("--C3", fs.extras.c3, "interaction-term constant (> 0)");
    c_case2->add_option("--lambda-seq", fs.extras.lambda_seq,
                        "lambda sequence: doubling:K or comma list");
    c_case1->add_option("--t-min", fs.extras.t_min, "fiber scan lower bound");
    c_case1->add_option("--t-max", fs.extras.t_max, "fiber scan upper bound");
    c_case1->add_option("--t-points", fs.extras.t_points, "fiber scan points");
    c_diamag->add_option("--tol", fs.extras.diamag_tol,
                         "pointwise tolerance (< 0 uses 10*spacing)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg = resolve_config(fs);
        int rc = 0;
        if (c_constants->parsed()) {
            rc = cmd_constants(cfg, fs.extras);
        } else if (c_convolve->parsed()) {
            rc = cmd_convolve(cfg, fs.extras);
        } else if (c_energy->parsed()) {
            rc = cmd_energy(cfg, fs.extras);
        } else if (c_nehari->parsed()) {
            rc = cmd_nehari(cfg, fs.extras);
        } else if (c_bubble->parsed()) {
            rc = cmd_bubble_scan(cfg, fs.extras);
        } else if (c_case1->parsed()) {
            rc = cmd_case1(cfg, fs.extras);
        } else if (c_case2->parsed()) {
            rc = cmd_case2(cfg, fs.extras);
        } else if (c_asym->parsed()) {
            rc = cmd_asymptotics(cfg, fs.extras);
        } else if (c_solve->parsed()) {
            rc = cmd_solve(cfg, fs.extras);
        } else if (c_cmp->parsed()) {
            rc = cmd_compare_levels(cfg, fs.extras);
        } else if (c_diamag->parsed()) {
            rc = cmd_diamagnetic(cfg, fs.extras);
        } else {
            std::cerr << "no subcommand selected\n";
            return 2;
        }
        return rc;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 4;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace choquard
