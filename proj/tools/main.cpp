//==============================================================================
// specfrac CLI — config-driven batch runs and parameter sweeps.
//
//   specfrac run   <config.json> [--out DIR] [--seed K]
//   specfrac sweep <config.json> --axis q=2,3,4 [--out DIR] [--seed K]
//
// Exit codes: 0 converged (all rows converged for sweep), 1 ran but did not
// converge, 2 config error, 3 solver refusal (regime/hypothesis/AR).
//
// Output directory resolution: --out, then $SPECFRAC_OUT, then the config's
// output_dir, then the current directory.  Artifacts (report.json, trace.csv,
// u.field, v.field, sweep.csv) are written via temp file + atomic rename.
//==============================================================================

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specfrac/specfrac.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace specfrac;

namespace {

struct RunConfig {
    Domain domain = Domain::unit_square();
    int modes = 64;
    bool is_power = true;
    double s = 0.5;
    double p = 1.0;
    double q = 3.0;           // power problems
    Nonlinearity nl;          // general problems
    std::string solver;       // minimize_direct | picard | mountain_pass | solve_general
    SolveOptions options;
    std::string output_dir = ".";
    bool seeded_start = false;  // random start when a seed was given
};

RunConfig parse_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path.string());
    json j = json::parse(in);

    RunConfig cfg;
    const auto& dj = j.at("domain");
    const int dim = dj.at("dim").get<int>();
    const auto lens = dj.at("lengths").get<std::vector<double>>();
    if (static_cast<int>(lens.size()) != dim)
        throw std::invalid_argument("config: lengths count must match dim");
    std::array<double, 3> L{1.0, 1.0, 1.0};
    for (int i = 0; i < dim; ++i) L[static_cast<std::size_t>(i)] = lens[static_cast<std::size_t>(i)];
    cfg.domain = Domain(dim, L);
    cfg.modes = j.value("modes", 64);

    const auto& pj = j.at("problem");
    const std::string kind = pj.at("kind").get<std::string>();
    cfg.s = pj.at("s").get<double>();
    cfg.p = pj.at("p").get<double>();
    if (kind == "power") {
        cfg.is_power = true;
        cfg.q = pj.at("q").get<double>();
    } else if (kind == "general") {
        cfg.is_power = false;
        const auto& nj = pj.at("nonlinearity");
        const std::string name = nj.at("name").get<std::string>();
        const double theta = nj.value("theta", 2.0);
        const double r0 = nj.value("r0", 0.0);
        if (name == "polynomial")
            cfg.nl = make_polynomial(nj.at("coefficients").get<std::vector<double>>(), theta, r0);
        else
            cfg.nl = make_nonlinearity(name, theta, r0, nj.value("exponent", 0.0));
    } else {
        throw std::invalid_argument("config: problem.kind must be 'power' or 'general'");
    }

    cfg.solver = j.at("solver").get<std::string>();
    if (j.contains("options")) {
        const auto& oj = j["options"];
        cfg.options.max_iters = oj.value("max_iters", cfg.options.max_iters);
        cfg.options.grad_tol = oj.value("grad_tol", cfg.options.grad_tol);
        cfg.options.armijo_c = oj.value("armijo_c", cfg.options.armijo_c);
        cfg.options.backtrack = oj.value("backtrack", cfg.options.backtrack);
        cfg.options.initial_step = oj.value("initial_step", cfg.options.initial_step);
        if (oj.contains("seed")) {
            cfg.options.seed = oj["seed"].get<std::uint64_t>();
            cfg.seeded_start = true;
        }
    }
    cfg.options.validate();
    cfg.output_dir = j.value("output_dir", std::string("."));
    return cfg;
}

fs::path resolve_outdir(const RunConfig& cfg, const std::string& out_flag) {
    if (!out_flag.empty()) return out_flag;
    if (const char* env = std::getenv("SPECFRAC_OUT"); env && *env) return env;
    return cfg.output_dir;
}

SolverReport dispatch(const RunConfig& cfg, const BasisPtr& basis) {
    if (cfg.solver == "solve_general") {
        if (cfg.is_power)
            throw std::invalid_argument("config: solve_general needs problem.kind = general");
        return solve_general(basis, cfg.nl, cfg.p, cfg.s, cfg.options);
    }
    if (!cfg.is_power)
        throw std::invalid_argument("config: solver '" + cfg.solver +
                                    "' needs problem.kind = power");
    const PowerParams params(cfg.domain.dim, cfg.s, cfg.p, cfg.q);
    const SpectralField init =
        cfg.seeded_start ? random_positive_start(basis, cfg.s, cfg.options.seed)
                         : SpectralField::mode(basis, {1, 1, 1});
    if (cfg.solver == "minimize_direct") return minimize_direct(params, init, cfg.options);
    if (cfg.solver == "picard" || cfg.solver == "picard_sublinear")
        return picard_sublinear(params, init, cfg.options);
    if (cfg.solver == "mountain_pass") return mountain_pass(basis, params, cfg.options);
    throw std::invalid_argument("config: unknown solver '" + cfg.solver + "'");
}

int cmd_run(const fs::path& config_path, const std::string& out_flag,
            std::optional<std::uint64_t> seed_flag) {
    RunConfig cfg = parse_config(config_path);
    if (seed_flag) {
        cfg.options.seed = *seed_flag;
        cfg.seeded_start = true;
    }
    const fs::path outdir = resolve_outdir(cfg, out_flag);
    fs::create_directories(outdir);

    const BasisPtr basis = build_basis(cfg.domain, cfg.modes);
    const SolverReport rep = dispatch(cfg, basis);

    json j = report_to_json(rep);
    j["theta2s_norm_u"] = theta_norm(rep.u, 2.0 * cfg.s);
    j["sup_norm_u"] = to_nodal(rep.u).max_abs();
    j["min_u"] = to_nodal(rep.u).min_value();
    j["seed"] = cfg.options.seed;
    j["options"] = {{"max_iters", cfg.options.max_iters},
                    {"grad_tol", cfg.options.grad_tol},
                    {"armijo_c", cfg.options.armijo_c},
                    {"backtrack", cfg.options.backtrack},
                    {"initial_step", cfg.options.initial_step}};

    write_field(outdir / "u.field", rep.u);
    write_field(outdir / "v.field", rep.v);
    write_trace_csv(outdir / "trace.csv", rep.trace);
    write_json(outdir / "report.json", j);

    std::cout << (rep.converged ? "converged" : "not converged") << " after "
              << rep.iterations << " iterations, energy " << rep.energy << "\n";
    return rep.converged ? 0 : 1;
}

std::vector<double> parse_axis_values(const std::string& spec, std::string& key) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("--axis expects key=v1,v2,...");
    key = spec.substr(0, eq);
    std::vector<double> values;
    std::string rest = spec.substr(eq + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        const std::string tok = rest.substr(pos, comma - pos);
        if (!tok.empty()) values.push_back(std::stod(tok));
        pos = comma + 1;
    }
    return values;
}

int cmd_sweep(const fs::path& config_path, const std::string& axis_spec,
              const std::string& out_flag, std::optional<std::uint64_t> seed_flag) {
    RunConfig cfg = parse_config(config_path);
    if (seed_flag) {
        cfg.options.seed = *seed_flag;
        cfg.seeded_start = true;
    }
    const fs::path outdir = resolve_outdir(cfg, out_flag);
    fs::create_directories(outdir);

    std::string key;
    const std::vector<double> values = parse_axis_values(axis_spec, key);
    const BasisPtr basis = build_basis(cfg.domain, cfg.modes);

    if (key == "q") {
        if (!cfg.is_power)
            throw std::invalid_argument("config: q sweep needs problem.kind = power");
        const PowerParams base(cfg.domain.dim, cfg.s, cfg.p, cfg.q);
        const auto table = critical_sweep(basis, base, values, cfg.options);
        write_sweep_csv(outdir / "sweep.csv", table);
        bool all = true;
        for (const auto& r : table) all = all && r.converged;
        std::cout << table.size() << " rows written to " << (outdir / "sweep.csv").string()
                  << "\n";
        return all ? 0 : 1;
    }
    if (key == "seed") {
        if (!cfg.is_power)
            throw std::invalid_argument("config: seed sweep needs problem.kind = power");
        const PowerParams params(cfg.domain.dim, cfg.s, cfg.p, cfg.q);
        SolveOptions opts = cfg.options;
        opts.seed = values.empty() ? opts.seed : static_cast<std::uint64_t>(values.front());
        const auto rep = uniqueness_harness(params, basis, std::max<int>(1, static_cast<int>(values.size())),
                                            opts);
        json j = {{"pass", rep.pass},
                  {"conclusive", rep.conclusive},
                  {"weak_evidence", rep.weak_evidence},
                  {"tolerance", rep.tolerance},
                  {"max_spread", rep.max_spread},
                  {"spread_minimize", rep.spread_minimize},
                  {"spread_picard", rep.spread_picard},
                  {"cross_solver_gap", rep.cross_solver_gap}};
        write_json(outdir / "uniqueness.json", j);
        std::cout << "uniqueness harness: max spread " << rep.max_spread << "\n";
        return rep.conclusive ? 0 : 1;
    }
    throw std::invalid_argument("--axis key must be 'q' or 'seed'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral solver for coupled fractional elliptic systems on boxes"};
    app.require_subcommand(1);

    std::string config_file, out_flag, axis_spec;
    std::optional<std::uint64_t> seed_flag;
    std::uint64_t seed_value = 0;
    bool seed_given = false;

    auto* run = app.add_subcommand("run", "run one configured solve");
    run->add_option("config", config_file, "config JSON file")->required();
    run->add_option("--out", out_flag, "output directory");
    run->add_option("--seed", seed_value, "seed for the random start");

    auto* sweep = app.add_subcommand("sweep", "sweep an axis of the configuration");
    sweep->add_option("config", config_file, "config JSON file")->required();
    sweep->add_option("--axis", axis_spec, "axis spec, e.g. q=2,3,4")->required();
    sweep->add_option("--out", out_flag, "output directory");
    sweep->add_option("--seed", seed_value, "base seed");

    try {
        app.parse(argc, argv);
        seed_given = run->count("--seed") > 0 || sweep->count("--seed") > 0;
        if (seed_given) seed_flag = seed_value;
        if (app.got_subcommand(run)) return cmd_run(config_file, out_flag, seed_flag);
        return cmd_sweep(config_file, axis_spec, out_flag, seed_flag);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const RefusalError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        for (const auto& v : e.violations()) std::cerr << "  - " << v << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
