#include "iongate/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace iongate {

int MuGrid::points() const {
    return static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

void MuGrid::validate() const {
    if (!(step > 0.0) || !(hi >= lo)) throw ValidationError("empty or malformed mu grid");
}

MuGrid default_mu_grid(const ModeTable& modes) {
    MuGrid grid;
    grid.lo = std::max(modes.frequencies.minCoeff() - 0.5, 0.05);
    grid.hi = modes.frequencies.maxCoeff() + 1.0;
    grid.step = 1e-3;
    return grid;
}

void OptimizationProblem::validate() const {
    config.validate();
    mu_grid.validate();
    if (!(tau > 0.0)) throw ValidationError("tau must be > 0");
    if (segments < 1) throw ValidationError("segments must be >= 1");
    if (ion_j < 1 || ion_n <= ion_j || ion_n > modes.size())
        throw ValidationError("ion pair must satisfy 1 <= j < n <= N");
    if (modes.lamb_dicke.size() != modes.size())
        throw ValidationError("ModeTable.lamb_dicke not filled");
}

namespace {

// Infidelity quadratic form: F(Omega) = Omega^T M Omega with
// M = sum_k beta_bar_k/4 [Re(c_j c_j^H) + Re(c_n c_n^H)], c_{i,p} = g_i^k A_p(k).
Eigen::MatrixXd infidelity_matrix(const OptimizationProblem& problem, double mu) {
    const ModeTable& modes = problem.modes;
    const int m = problem.segments;
    const int n_modes = modes.size();
    const Eigen::MatrixXcd unit = segment_mode_integrals(mu, problem.tau, m, modes.frequencies);
    const Eigen::VectorXd weights = mode_weights(modes, problem.config.nbar_cm);

    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m, m);
    const int ions[2] = {problem.ion_j, problem.ion_n};
    for (int k = 0; k < n_modes; ++k) {
        double g2 = 0.0;
        for (int ion : ions) {
            const double g = modes.lamb_dicke[k] * modes.eigenvectors(ion - 1, k);
            g2 += g * g;
        }
        const double w = 0.25 * weights[k] * g2;
        for (int p = 0; p < m; ++p)
            for (int q = 0; q <= p; ++q) {
                const double re = std::real(unit(k, p) * std::conj(unit(k, q)));
                mat(p, q) += w * re;
                if (q != p) mat(q, p) += w * re;
            }
    }
    return mat;
}

int env_thread_count() {
    if (const char* env = std::getenv("IONGATE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

AmplitudeSolution optimize_amplitudes_at_mu(const OptimizationProblem& problem, double mu) {
    const int m = problem.segments;
    const Eigen::MatrixXd g_mat =
        phase_coupling_matrix(mu, problem.tau, m, problem.modes, problem.ion_j, problem.ion_n);
    const Eigen::MatrixXd m_mat = infidelity_matrix(problem, mu);

    AmplitudeSolution solution;
    const double trace = m_mat.trace();
    if (!(trace > 0.0)) return solution;

    // Tiny ridge keeps the pencil definite; reported values use the exact M.
    Eigen::MatrixXd m_reg = m_mat;
    const double ridge = 1e-13 * trace / m;
    for (int p = 0; p < m; ++p) m_reg(p, p) += ridge;

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(g_mat, m_reg);
    if (solver.info() != Eigen::Success) return solution;

    for (int idx = 0; idx < m; ++idx) {
        const double theta = solver.eigenvalues()[idx];
        if (std::abs(theta) < 1e-12) continue;  // phase unreachable along this direction
        Eigen::VectorXd v = solver.eigenvectors().col(idx);
        const double phase0 = v.dot(g_mat * v);
        if (std::abs(phase0) < 1e-300) continue;
        v *= std::sqrt(M_PI_4 / std::abs(phase0));
        const double infidelity = v.dot(m_mat * v);
        if (infidelity < solution.infidelity) {
            // Deterministic sign: largest-magnitude amplitude positive.
            int imax = 0;
            for (int p = 1; p < m; ++p)
                if (std::abs(v[p]) > std::abs(v[imax])) imax = p;
            if (v[imax] < 0.0) v *= -1.0;
            solution.feasible = true;
            solution.amplitudes = v;
            solution.infidelity = infidelity;
            solution.phase = v.dot(g_mat * v);
        }
    }
    return solution;
}

OptimizationReport optimize_gate(const OptimizationProblem& problem) {
    problem.validate();
    const MuGrid& grid = problem.mu_grid;
    const int n_points = grid.points();

    std::vector<AmplitudeSolution> solutions(n_points);
    const int n_threads = std::min(env_thread_count(), n_points);
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) {
        workers.emplace_back([&, t]() {
            for (int i = t; i < n_points; i += n_threads)
                solutions[i] = optimize_amplitudes_at_mu(problem, grid.lo + i * grid.step);
        });
    }
    for (auto& w : workers) w.join();

    OptimizationReport report;
    int best_idx = -1;
    report.scan_curve.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double mu = grid.lo + i * grid.step;
        report.scan_curve.emplace_back(mu, solutions[i].infidelity);
        if (solutions[i].feasible && solutions[i].infidelity < report.best_infidelity) {
            report.best_infidelity = solutions[i].infidelity;
            best_idx = i;
        }
    }
    if (best_idx < 0) throw InfeasibleError("no feasible detuning in the scan grid");

    // Golden-section refinement around the best grid point.
    double lo = grid.lo + std::max(0, best_idx - 1) * grid.step;
    double hi = grid.lo + std::min(n_points - 1, best_idx + 1) * grid.step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    auto objective = [&](double mu) { return optimize_amplitudes_at_mu(problem, mu).infidelity; };
    double x1 = hi - gr * (hi - lo);
    double x2 = lo + gr * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = objective(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = objective(x2);
        }
    }
    const double mu_refined = 0.5 * (lo + hi);
    const AmplitudeSolution refined = optimize_amplitudes_at_mu(problem, mu_refined);
    const AmplitudeSolution& best =
        (refined.feasible && refined.infidelity < solutions[best_idx].infidelity)
            ? refined : solutions[best_idx];
    report.best_mu = (&best == &refined) ? mu_refined : grid.lo + best_idx * grid.step;
    report.best_amplitudes = best.amplitudes;
    report.best_infidelity = best.infidelity;
    report.phase_achieved = best.phase;
    report.max_amplitude = best.amplitudes.cwiseAbs().maxCoeff();
    return report;
}

}  // namespace iongate
