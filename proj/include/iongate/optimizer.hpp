#pragma once

#include <Eigen/Dense>
#include <limits>
#include <utility>
#include <vector>

#include "iongate/dynamics.hpp"
#include "iongate/fidelity.hpp"

namespace iongate {

struct MuGrid {
    double lo = 0.0;
    double hi = 0.0;
    double step = 1e-3;

    int points() const;
    void validate() const;
};

// Default scan window: from below the bottom of the mode band to one omega_z
// above the CM frequency.
MuGrid default_mu_grid(const ModeTable& modes);

struct OptimizationProblem {
    TrapConfig config;
    ModeTable modes;      // gate-axis modes with lamb_dicke filled
    int ion_j = 1;
    int ion_n = 2;
    double tau = 0.0;     // 1/omega_z units
    int segments = 1;
    MuGrid mu_grid;

    void validate() const;
};

struct AmplitudeSolution {
    bool feasible = false;
    Eigen::VectorXd amplitudes;
    double infidelity = std::numeric_limits<double>::infinity();
    double phase = 0.0;   // Omega^T G Omega, |phase| = pi/4 when feasible
};

// Exact minimization of the quadratic infidelity Omega^T M Omega subject to
// |Omega^T G Omega| = pi/4, via the generalized symmetric eigenproblem
// G v = theta M v. Infeasible detunings return an infinite-infidelity marker.
AmplitudeSolution optimize_amplitudes_at_mu(const OptimizationProblem& problem, double mu);

struct OptimizationReport {
    double best_mu = 0.0;
    Eigen::VectorXd best_amplitudes;
    double best_infidelity = std::numeric_limits<double>::infinity();
    double phase_achieved = 0.0;
    double max_amplitude = 0.0;
    std::vector<std::pair<double, double>> scan_curve;  // (mu, optimal infidelity)
};

// Grid scan over mu followed by golden-section refinement around the best
// grid point (mu resolution 1e-6). Scan points are independent and run in
// parallel; set IONGATE_THREADS to pin the degree.
OptimizationReport optimize_gate(const OptimizationProblem& problem);

}  // namespace iongate
