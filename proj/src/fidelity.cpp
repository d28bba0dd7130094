#include "iongate/fidelity.hpp"

#include <algorithm>
#include <cmath>

#include "iongate/errors.hpp"

namespace iongate {

double fidelity_exact_sum(double eta_p, double nbar) {
    if (!(eta_p >= 0.0)) throw ValidationError("eta_p must be >= 0");
    if (!(nbar >= 0.0)) throw ValidationError("nbar must be >= 0");
    const double eta2 = eta_p * eta_p;
    if (nbar == 0.0) return 0.5 + 0.5 * std::cos(M_PI_2 * eta2);

    const double q = nbar / (1.0 + nbar);
    int n_max = static_cast<int>(std::max(50.0, 40.0 * nbar));
    // Geometric tail: sum_{n > n_max} P_n = q^{n_max+1}; push it below 1e-12.
    while (std::pow(q, n_max + 1) > 1e-12) n_max *= 2;

    double sum = 0.0;
    double p_n = 1.0 / (1.0 + nbar);
    for (int n = 0; n <= n_max; ++n, p_n *= q)
        sum += p_n * std::cos(M_PI_2 * eta2 * (2.0 * n + 1.0));
    return 0.5 + 0.5 * sum;
}

SeriesInfidelity infidelity_lamb_dicke_series(double eta_p, double nbar) {
    if (!(eta_p >= 0.0)) throw ValidationError("eta_p must be >= 0");
    if (!(nbar >= 0.0)) throw ValidationError("nbar must be >= 0");
    const double eta4 = std::pow(eta_p, 4);
    const double value = M_PI * M_PI * eta4 * (nbar * nbar + nbar + 0.125);
    const bool valid = eta4 * (nbar * nbar + nbar + 1.0) < 1e-2;
    return SeriesInfidelity{value, valid};
}

Eigen::VectorXd mode_weights(const ModeTable& modes, double nbar_cm) {
    if (!(nbar_cm >= 0.0)) throw ValidationError("nbar_cm must be >= 0");
    const int n = modes.size();
    if (nbar_cm == 0.0) return Eigen::VectorXd::Ones(n);
    // Temperature referenced to the axial CM frequency (omega_z = 1): a mode
    // at omega = 1 has occupation nbar_cm exactly, and a transverse mode at
    // omega ~ beta is nearly frozen out. This is the only reading that
    // reproduces the published infidelity table.
    const double log_term = std::log1p(1.0 / nbar_cm);
    Eigen::VectorXd weights(n);
    for (int k = 0; k < n; ++k) {
        const double x = 0.5 * modes.frequencies[k] * log_term;
        weights[k] = 1.0 / std::tanh(x);
    }
    return weights;
}

double displacement_infidelity(const Eigen::MatrixXcd& alpha, const Eigen::VectorXd& weights) {
    if (alpha.cols() != weights.size())
        throw ValidationError("alpha / mode-weight dimension mismatch");
    double sum = 0.0;
    for (int k = 0; k < weights.size(); ++k)
        for (int i = 0; i < alpha.rows(); ++i)
            sum += weights[k] * std::norm(alpha(i, k));
    return sum / 4.0;
}

ScalingRatios scaling_ratios(double beta, double gamma, double gamma_prime,
                             bool counter_propagating) {
    if (!(beta > 0.0)) throw ValidationError("beta must be > 0");
    const double infidelity_ratio = std::pow(beta, -(2.0 + gamma + gamma_prime));
    const double intensity_ratio = counter_propagating ? std::sqrt(beta / 2.0) : std::sqrt(beta);
    return ScalingRatios{infidelity_ratio, intensity_ratio};
}

}  // namespace iongate
