// Command line front end for the THz link capacity simulator.
//
// Subcommands:
//   capacity    point estimate for one scenario
//   sweep       grid sweep with optional series overlay, file outputs
//   replay      re-run a sweep from its manifest, bit-for-bit
//   absorption  query an absorption table
//   validate    cross-check Monte Carlo against quadrature
//
// Exit codes: 0 success, 1 validation/parse failure, 2 numerical failure,
// 3 I/O failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thzsim/capacity.hpp"
#include "thzsim/errors.hpp"
#include "thzsim/output.hpp"
#include "thzsim/scenario_io.hpp"
#include "thzsim/sweep.hpp"
#include "thzsim/version.hpp"

namespace {

using namespace thzsim;

std::vector<double> parse_value_list(const std::string& list, const char* what) {
    std::vector<double> values;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ValidationError(std::string(what) + ": '" + item + "' is not a number");
        }
    }
    if (values.empty()) throw ValidationError(std::string(what) + ": empty list");
    return values;
}

std::vector<double> parse_grid(const std::string& grid) {
    const auto c1 = grid.find(':');
    const auto c2 = grid.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ValidationError("--grid expects start:stop:count, got '" + grid + "'");
    try {
        const double start = std::stod(grid.substr(0, c1));
        const double stop = std::stod(grid.substr(c1 + 1, c2 - c1 - 1));
        const long count = std::stol(grid.substr(c2 + 1));
        if (count < 2) throw ValidationError("--grid count must be >= 2");
        return linear_grid(start, stop, static_cast<std::size_t>(count));
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw ValidationError("--grid expects start:stop:count, got '" + grid + "'");
    }
}

struct CapacityArgs {
    std::string scenario_path;
    std::size_t samples = 1000000;
    std::uint64_t seed = 0;
    std::string evaluator = "mc";
    int workers = 0;
    double rel_tol = 1e-6;
};

int run_capacity(const CapacityArgs& args) {
    const Scenario sc = parse_scenario_file(args.scenario_path);
    const Evaluator evaluator = evaluator_from_string(args.evaluator);
    std::cout << std::setprecision(12);
    if (evaluator == Evaluator::mc || evaluator == Evaluator::both) {
        const CapacityEstimate est =
            estimate_capacity_mc(sc, args.samples, args.seed, args.workers);
        std::cout << "mc_capacity_bps_hz = " << est.mean_bps_hz << "\n"
                  << "mc_std_error = " << est.std_error << "\n"
                  << "mc_n_samples = " << est.n_samples << "\n"
                  << "mc_seed = " << est.seed << "\n";
    }
    if (evaluator == Evaluator::quadrature || evaluator == Evaluator::both) {
        std::cout << "quadrature_capacity_bps_hz = " << capacity_quadrature(sc, args.rel_tol)
                  << "\n";
    }
    std::cout << "capacity_ceiling_bps_hz = " << capacity_ceiling_bps_hz(sc.impairments)
              << "\n";
    return 0;
}

struct SweepArgs {
    std::string scenario_path;
    std::string variable;
    std::string grid;
    std::string values;
    std::string series;
    std::size_t samples = 1000000;
    std::uint64_t seed = 0;
    std::string evaluator = "mc";
    std::string out_dir = "out";
    std::string formats = "csv,json";
    int workers = 0;
    double rel_tol = 1e-6;
};

int run_sweep_cmd(const SweepArgs& args) {
    const Scenario sc = parse_scenario_file(args.scenario_path);
    SweepSpec spec;
    spec.variable = sweep_variable_from_string(args.variable);
    if (args.grid.empty() == args.values.empty())
        throw ValidationError("give exactly one of --grid or --values");
    spec.values = args.grid.empty() ? parse_value_list(args.values, "--values")
                                    : parse_grid(args.grid);
    if (!args.series.empty()) {
        const auto eq = args.series.find('=');
        if (eq == std::string::npos)
            throw ValidationError("--series expects name=v1,v2,..., got '" + args.series + "'");
        spec.series_variable = sweep_variable_from_string(args.series.substr(0, eq));
        spec.series_values = parse_value_list(args.series.substr(eq + 1), "--series");
    }
    const OutputFormats formats = output_formats_from_string(args.formats);
    const SweepResult result =
        run_sweep(sc, spec, args.samples, args.seed, evaluator_from_string(args.evaluator),
                  args.rel_tol, args.workers);
    write_outputs(result, args.out_dir, formats);
    std::cout << result.rows.size() << " rows written to " << args.out_dir << "\n";
    if (result.any_failed) {
        std::size_t failed = 0;
        for (const SweepRow& row : result.rows) failed += row.failed ? 1 : 0;
        std::cerr << "warning: " << failed << " of " << result.rows.size()
                  << " rows failed; see the evaluator column\n";
        return 2;
    }
    return 0;
}

struct ReplayArgs {
    std::string manifest_path;
    std::string out_dir = "out";
    std::string formats = "csv,json";
    int workers = 0;
};

int run_replay(const ReplayArgs& args) {
    std::ifstream in(args.manifest_path);
    if (!in) throw IoError("cannot open manifest '" + args.manifest_path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const RunManifest m = manifest_from_json(buffer.str());
    const Scenario sc = parse_scenario_text(m.scenario_text);
    const OutputFormats formats = output_formats_from_string(args.formats);
    const SweepResult result = run_sweep(sc, m.spec, m.n_samples, m.seed, m.evaluator,
                                         m.quad_rel_tol, args.workers);
    write_outputs(result, args.out_dir, formats);
    std::cout << result.rows.size() << " rows written to " << args.out_dir << "\n";
    return result.any_failed ? 2 : 0;
}

struct AbsorptionArgs {
    std::string table_path;
    std::string freqs_ghz;
    double distance_m = 1.0;
};

int run_absorption(const AbsorptionArgs& args) {
    const AbsorptionProvider table = load_absorption_table_file(args.table_path);
    const std::vector<double> freqs = parse_value_list(args.freqs_ghz, "--freq-ghz");
    if (args.distance_m <= 0.0) throw ValidationError("--distance-m must be > 0");
    std::cout << std::setprecision(12) << "frequency_ghz,kappa_per_m,transmittance\n";
    bool any_failed = false;
    for (double f_ghz : freqs) {
        std::cout << f_ghz << ",";
        try {
            const double kappa = table.coefficient(f_ghz * 1e9);
            std::cout << kappa << "," << std::exp(-kappa * args.distance_m) << "\n";
        } catch (const std::exception& e) {
            std::cout << "ERROR," << e.what() << "\n";
            any_failed = true;
        }
    }
    return any_failed ? 1 : 0;
}

struct ValidateArgs {
    std::string scenario_path;
    std::size_t samples = 1000000;
    std::uint64_t seed = 0;
    double rel_tol = 1e-6;
    double max_sigma = 4.0;
    int workers = 0;
};

int run_validate(const ValidateArgs& args) {
    const Scenario sc = parse_scenario_file(args.scenario_path);
    const CapacityEstimate est = estimate_capacity_mc(sc, args.samples, args.seed, args.workers);
    const double quad = capacity_quadrature(sc, args.rel_tol);
    const double diff = std::abs(est.mean_bps_hz - quad);
    // the quadrature error budget matters once the MC error gets tiny
    const double scale = std::max(est.std_error, args.rel_tol * std::abs(quad));
    const double sigma = diff / scale;
    std::cout << std::setprecision(12) << "mc_capacity_bps_hz = " << est.mean_bps_hz << "\n"
              << "mc_std_error = " << est.std_error << "\n"
              << "quadrature_capacity_bps_hz = " << quad << "\n"
              << "abs_difference = " << diff << "\n"
              << "difference_sigma = " << sigma << "\n";
    if (sigma > args.max_sigma) {
        std::cerr << "error: evaluators disagree by " << sigma << " sigma (limit "
                  << args.max_sigma << ")\n";
        return 2;
    }
    std::cout << "evaluators agree within " << args.max_sigma << " sigma\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"THz fiber-extender link capacity simulator"};
    app.set_version_flag("--version", std::string(thzsim::kToolVersion));
    app.require_subcommand(1);

    CapacityArgs cap_args;
    CLI::App* cap = app.add_subcommand("capacity", "Ergodic capacity of one scenario");
    cap->add_option("scenario", cap_args.scenario_path, "Scenario file")->required();
    cap->add_option("--samples", cap_args.samples, "Monte Carlo sample count");
    cap->add_option("--seed", cap_args.seed, "Master RNG seed");
    cap->add_option("--evaluator", cap_args.evaluator, "mc, quadrature or both");
    cap->add_option("--workers", cap_args.workers, "Worker threads (0 = auto)");
    cap->add_option("--rel-tol", cap_args.rel_tol, "Quadrature relative tolerance");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Capacity over a parameter grid");
    sweep->add_option("scenario", sweep_args.scenario_path, "Scenario file")->required();
    sweep->add_option("--var", sweep_args.variable,
                      "Sweep variable: sigma_s, k_tr, mu, distance, frequency, p_over_n0_db")
        ->required();
    sweep->add_option("--grid", sweep_args.grid, "start:stop:count");
    sweep->add_option("--values", sweep_args.values, "Comma separated values");
    sweep->add_option("--series", sweep_args.series, "Overlay series: name=v1,v2,...");
    sweep->add_option("--samples", sweep_args.samples, "Monte Carlo sample count");
    sweep->add_option("--seed", sweep_args.seed, "Master RNG seed");
    sweep->add_option("--evaluator", sweep_args.evaluator, "mc, quadrature or both");
    sweep->add_option("--out", sweep_args.out_dir, "Output directory");
    sweep->add_option("--formats", sweep_args.formats, "Comma subset of csv,json,svg");
    sweep->add_option("--workers", sweep_args.workers, "Worker threads (0 = auto)");
    sweep->add_option("--rel-tol", sweep_args.rel_tol, "Quadrature relative tolerance");

    ReplayArgs replay_args;
    CLI::App* replay = app.add_subcommand("replay", "Re-run a sweep from its manifest");
    replay->add_option("manifest", replay_args.manifest_path, "manifest.json from a sweep")
        ->required();
    replay->add_option("--out", replay_args.out_dir, "Output directory");
    replay->add_option("--formats", replay_args.formats, "Comma subset of csv,json,svg");
    replay->add_option("--workers", replay_args.workers, "Worker threads (0 = auto)");

    AbsorptionArgs abs_args;
    CLI::App* abs = app.add_subcommand("absorption", "Query an absorption table");
    abs->add_option("table", abs_args.table_path, "Absorption table CSV")->required();
    abs->add_option("--freq-ghz", abs_args.freqs_ghz, "Comma separated frequencies [GHz]")
        ->required();
    abs->add_option("--distance-m", abs_args.distance_m, "Path length for transmittance [m]")
        ->required();

    ValidateArgs val_args;
    CLI::App* val = app.add_subcommand("validate", "Cross-check MC against quadrature");
    val->add_option("scenario", val_args.scenario_path, "Scenario file")->required();
    val->add_option("--samples", val_args.samples, "Monte Carlo sample count");
    val->add_option("--seed", val_args.seed, "Master RNG seed");
    val->add_option("--rel-tol", val_args.rel_tol, "Quadrature relative tolerance");
    val->add_option("--max-sigma", val_args.max_sigma, "Allowed discrepancy in std errors");
    val->add_option("--workers", val_args.workers, "Worker threads (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // help/version exit clean, bad usage exits 1
    }

    try {
        if (cap->parsed()) return run_capacity(cap_args);
        if (sweep->parsed()) return run_sweep_cmd(sweep_args);
        if (replay->parsed()) return run_replay(replay_args);
        if (abs->parsed()) return run_absorption(abs_args);
        if (val->parsed()) return run_validate(val_args);
    } catch (const thzsim::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const thzsim::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const thzsim::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const thzsim::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
