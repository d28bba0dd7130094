// iongate: trapped-ion transverse-phonon gate simulator CLI.
//
// Commands: spectrum, gate, scan, optimize. All frequencies are in omega_z
// units, gate times are given in tau_0 = 2 pi / omega_z units on the command
// line and converted internally.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iongate/crystal.hpp"
#include "iongate/dynamics.hpp"
#include "iongate/fidelity.hpp"
#include "iongate/modes.hpp"
#include "iongate/optimizer.hpp"
#include "iongate/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitInstability = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitSolverFailure = 5;

std::string fmt(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

struct Options {
    int ions = 10;
    double beta = 10.0;
    double nbar = 3.0;
    double eta_ref = 0.1;
    double tau_tau0 = 5.0;         // tau in tau_0 units
    int segments = 1;
    std::string pair = "1,2";
    double mu = 0.0;
    std::string mu_grid;           // "lo:hi:step"
    std::string axis = "x";
    std::vector<double> omega;     // gate command amplitude list
    std::string out;
    std::string format = "csv";

    double tau_internal() const { return tau_tau0 * 2.0 * M_PI; }

    std::pair<int, int> parse_pair() const {
        int j = 0, n = 0;
        char comma = 0;
        std::istringstream in(pair);
        if (!(in >> j >> comma >> n) || comma != ',')
            throw iongate::ValidationError("--pair expects the form j,n");
        return {j, n};
    }

    iongate::Axis parse_axis() const {
        if (axis == "x") return iongate::Axis::transverse;
        if (axis == "z") return iongate::Axis::longitudinal;
        throw iongate::ValidationError("--axis must be x or z");
    }

    iongate::MuGrid parse_mu_grid() const {
        iongate::MuGrid grid;
        char c1 = 0, c2 = 0;
        std::istringstream in(mu_grid);
        if (!(in >> grid.lo >> c1 >> grid.hi >> c2 >> grid.step) || c1 != ':' || c2 != ':')
            throw iongate::ValidationError("--mu-grid expects the form lo:hi:step");
        grid.validate();
        return grid;
    }

    iongate::TrapConfig trap_config() const {
        iongate::TrapConfig cfg{ions, beta, eta_ref, nbar};
        cfg.validate();
        return cfg;
    }
};

// Every output file records the full parameter set for reproducibility.
using ParamList = std::vector<std::pair<std::string, std::string>>;

ParamList common_params(const Options& opt, const std::string& command) {
    ParamList p;
    p.emplace_back("version", IONGATE_VERSION);
    p.emplace_back("command", command);
    p.emplace_back("ions", std::to_string(opt.ions));
    p.emplace_back("beta", fmt(opt.beta));
    p.emplace_back("nbar", fmt(opt.nbar));
    p.emplace_back("eta_ref", fmt(opt.eta_ref));
    return p;
}

class Output {
public:
    Output(const Options& opt, const std::string& command)
        : format_(opt.format), path_(opt.out), params_(common_params(opt, command)) {}

    void add_param(const std::string& key, const std::string& value) {
        params_.emplace_back(key, value);
    }
    void add_param(const std::string& key, double value) { add_param(key, fmt(value)); }

    void set_columns(const std::vector<std::string>& columns) { columns_ = columns; }

    void add_row(const std::vector<std::string>& row) { rows_.push_back(row); }

    void write() const {
        std::ostringstream body;
        if (format_ == "csv") {
            for (const auto& [k, v] : params_) body << "# " << k << "=" << v << "\n";
            for (size_t i = 0; i < columns_.size(); ++i)
                body << (i ? "," : "") << columns_[i];
            body << "\n";
            for (const auto& row : rows_) {
                for (size_t i = 0; i < row.size(); ++i) body << (i ? "," : "") << row[i];
                body << "\n";
            }
        } else if (format_ == "json") {
            json doc;
            for (const auto& [k, v] : params_) doc["params"][k] = v;
            doc["columns"] = columns_;
            doc["rows"] = rows_;
            body << doc.dump(2) << "\n";
        } else {
            throw iongate::ValidationError("--format must be csv or json");
        }
        if (path_.empty()) {
            std::cout << body.str();
        } else {
            std::ofstream out(path_, std::ios::binary);
            if (!out) throw iongate::ValidationError("cannot open output file: " + path_);
            out << body.str();
        }
    }

private:
    std::string format_;
    std::string path_;
    ParamList params_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

iongate::OptimizationProblem make_problem(const Options& opt) {
    auto cfg = opt.trap_config();
    const auto chain = iongate::solve_equilibrium(cfg.n_ions);
    iongate::OptimizationProblem problem;
    problem.config = cfg;
    problem.modes = iongate::compute_modes(chain, cfg.beta_x, opt.parse_axis(), cfg.eta_ref);
    std::tie(problem.ion_j, problem.ion_n) = opt.parse_pair();
    problem.tau = opt.tau_internal();
    problem.segments = opt.segments;
    problem.mu_grid = opt.mu_grid.empty() ? iongate::default_mu_grid(problem.modes)
                                          : opt.parse_mu_grid();
    problem.validate();
    return problem;
}

void cmd_spectrum(const Options& opt) {
    auto cfg = opt.trap_config();
    const auto stability = iongate::linearity_check(cfg);
    if (!stability.linear)
        throw iongate::InstabilityError(0, stability.margin);
    const auto chain = iongate::solve_equilibrium(cfg.n_ions);

    Output out(opt, "spectrum");
    std::vector<std::string> columns = {"axis", "mode_index", "frequency", "eigenvalue"};
    for (int i = 1; i <= cfg.n_ions; ++i) columns.push_back("b" + std::to_string(i));
    out.set_columns(columns);

    for (auto axis : {iongate::Axis::transverse, iongate::Axis::longitudinal}) {
        const auto table = iongate::compute_modes(chain, cfg.beta_x, axis, cfg.eta_ref);
        const bool transverse = axis == iongate::Axis::transverse;
        for (int k = 0; k < table.size(); ++k) {
            // Mode No. 1 is the CM mode: highest-frequency TP, lowest-frequency LP.
            const int index = transverse ? k + 1 : table.size() - k;
            std::vector<std::string> row = {transverse ? "x" : "z", std::to_string(index),
                                            fmt(table.frequencies[k]), fmt(table.eigenvalues[k])};
            for (int i = 0; i < table.size(); ++i) row.push_back(fmt(table.eigenvectors(i, k)));
            out.add_row(row);
        }
    }
    out.write();
}

void cmd_gate(const Options& opt) {
    auto cfg = opt.trap_config();
    if (opt.omega.empty())
        throw iongate::ValidationError("gate requires --omega amplitude list");
    if (!(opt.mu > 0.0)) throw iongate::ValidationError("gate requires --mu > 0");
    const auto chain = iongate::solve_equilibrium(cfg.n_ions);
    const auto modes = iongate::compute_modes(chain, cfg.beta_x, opt.parse_axis(), cfg.eta_ref);

    iongate::PulseSequence seq;
    seq.mu = opt.mu;
    seq.tau = opt.tau_internal();
    seq.amplitudes = opt.omega;
    std::tie(seq.ion_j, seq.ion_n) = opt.parse_pair();
    seq.axis = opt.parse_axis();
    seq.validate(cfg.n_ions);

    const auto result = iongate::gate_result(seq, modes, cfg.nbar_cm);

    Output out(opt, "gate");
    out.add_param("tau_tau0", opt.tau_tau0);
    out.add_param("mu", opt.mu);
    out.add_param("pair", opt.pair);
    out.add_param("axis", opt.axis);
    for (size_t p = 0; p < opt.omega.size(); ++p)
        out.add_param("omega_" + std::to_string(p + 1), opt.omega[p]);
    out.add_param("phi", result.phi);
    out.add_param("phase_error", result.phase_error);
    out.add_param("infidelity", result.infidelity);
    out.set_columns({"mode_index", "frequency", "abs_alpha_j", "abs_alpha_n"});
    for (int k = 0; k < modes.size(); ++k)
        out.add_row({std::to_string(k + 1), fmt(modes.frequencies[k]),
                     fmt(std::abs(result.alpha(0, k))), fmt(std::abs(result.alpha(1, k)))});
    out.write();
}

void cmd_scan(const Options& opt) {
    const auto problem = make_problem(opt);
    Output out(opt, "scan");
    out.add_param("tau_tau0", opt.tau_tau0);
    out.add_param("segments", std::to_string(opt.segments));
    out.add_param("pair", opt.pair);
    out.add_param("axis", opt.axis);
    std::vector<std::string> columns = {"mu", "infidelity"};
    for (int p = 1; p <= opt.segments; ++p) columns.push_back("omega_" + std::to_string(p));
    out.set_columns(columns);

    const auto& grid = problem.mu_grid;
    for (int i = 0; i < grid.points(); ++i) {
        const double mu = grid.lo + i * grid.step;
        const auto solution = iongate::optimize_amplitudes_at_mu(problem, mu);
        std::vector<std::string> row = {fmt(mu), fmt(solution.infidelity)};
        for (int p = 0; p < opt.segments; ++p)
            row.push_back(solution.feasible ? fmt(solution.amplitudes[p]) : "nan");
        out.add_row(row);
    }
    out.write();
}

void cmd_optimize(const Options& opt) {
    const auto problem = make_problem(opt);
    const auto report = iongate::optimize_gate(problem);

    Output out(opt, "optimize");
    out.add_param("tau_tau0", opt.tau_tau0);
    out.add_param("segments", std::to_string(opt.segments));
    out.add_param("pair", opt.pair);
    out.add_param("axis", opt.axis);
    out.add_param("best_mu", report.best_mu);
    out.add_param("best_infidelity", report.best_infidelity);
    out.add_param("phase_achieved", report.phase_achieved);
    out.add_param("max_amplitude", report.max_amplitude);
    for (int p = 0; p < report.best_amplitudes.size(); ++p)
        out.add_param("best_omega_" + std::to_string(p + 1), report.best_amplitudes[p]);
    out.set_columns({"mu", "infidelity"});
    for (const auto& [mu, infidelity] : report.scan_curve)
        out.add_row({fmt(mu), fmt(infidelity)});
    out.write();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trapped-ion transverse-phonon gate simulator"};
    app.set_version_flag("--version", IONGATE_VERSION);
    app.set_config("--config");
    app.require_subcommand(1);

    Options opt;
    app.add_option("--ions", opt.ions, "Number of ions N");
    app.add_option("--beta", opt.beta, "Trap frequency ratio omega_x/omega_z");
    app.add_option("--nbar", opt.nbar, "Mean phonon number of the transverse CM mode");
    app.add_option("--eta-ref", opt.eta_ref, "Reference Lamb-Dicke parameter");
    app.add_option("--tau", opt.tau_tau0, "Gate time in tau_0 = 2 pi / omega_z units");
    app.add_option("--segments", opt.segments, "Number of equal-time pulse segments m");
    app.add_option("--pair", opt.pair, "Target ion pair j,n (1-based)");
    app.add_option("--mu", opt.mu, "Laser detuning in omega_z units");
    app.add_option("--mu-grid", opt.mu_grid, "Detuning scan grid lo:hi:step in omega_z units");
    app.add_option("--axis", opt.axis, "Gate axis: x (transverse) or z (longitudinal)");
    app.add_option("--out", opt.out, "Output path (default stdout)");
    app.add_option("--format", opt.format, "Output format: csv or json");

    auto* spectrum = app.add_subcommand("spectrum", "Export phonon mode spectrum for both axes");
    auto* gate = app.add_subcommand("gate", "Evaluate a gate at explicit mu and amplitudes");
    gate->add_option("--omega", opt.omega, "Per-segment Rabi amplitudes in omega_z units");
    auto* scan = app.add_subcommand("scan", "Optimal infidelity versus detuning over a grid");
    auto* optimize = app.add_subcommand("optimize", "Full detuning + amplitude optimization");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (spectrum->parsed()) cmd_spectrum(opt);
        else if (gate->parsed()) cmd_gate(opt);
        else if (scan->parsed()) cmd_scan(opt);
        else if (optimize->parsed()) cmd_optimize(opt);
    } catch (const iongate::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const iongate::InstabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInstability;
    } catch (const iongate::InfeasibleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const iongate::SolverFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFailure;
    }
    return 0;
}
