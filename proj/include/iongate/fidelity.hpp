#pragma once

#include <Eigen/Dense>

#include "iongate/modes.hpp"

namespace iongate {

// Exact thermal gate fidelity outside the Lamb-Dicke limit:
//   F = 1/2 + 1/2 sum_n P_n cos[pi/2 eta^2 (2n+1)],  P_n = nbar^n/(1+nbar)^{n+1}.
// Truncation tail below 1e-12.
double fidelity_exact_sum(double eta_p, double nbar);

struct SeriesInfidelity {
    double value;             // pi^2 eta^4 (nbar^2 + nbar + 1/8)
    bool in_validity_range;   // false once eta^4 (nbar^2 + nbar) is not small
};

SeriesInfidelity infidelity_lamb_dicke_series(double eta_p, double nbar);

// Thermal weights beta_bar_k = coth[(omega_k / 2) ln(1 + 1/nbar_cm)] with
// omega_k in omega_z units, i.e. the common temperature is fixed so a mode at
// omega = omega_z has occupation nbar_cm (beta_bar = 1 + 2 nbar_cm there).
// nbar_cm = 0 gives all-ones (zero temperature).
Eigen::VectorXd mode_weights(const ModeTable& modes, double nbar_cm);

// F_in = sum_k beta_bar_k (|alpha_j^k|^2 + |alpha_n^k|^2) / 4,
// alpha is 2 x N (rows = the two target ions).
double displacement_infidelity(const Eigen::MatrixXcd& alpha, const Eigen::VectorXd& weights);

struct ScalingRatios {
    double infidelity_ratio;  // beta^{-(2 + gamma + gamma')}
    double intensity_ratio;   // sqrt(beta/2) counter-propagating, else sqrt(beta)
};

ScalingRatios scaling_ratios(double beta, double gamma, double gamma_prime,
                             bool counter_propagating);

}  // namespace iongate
