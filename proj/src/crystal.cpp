#include "iongate/crystal.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace iongate {

void TrapConfig::validate() const {
    if (n_ions < 1) throw ValidationError("n_ions must be >= 1");
    if (!(beta_x > 0.0)) throw ValidationError("beta_x must be > 0");
    if (!(eta_ref > 0.0)) throw ValidationError("eta_ref must be > 0");
    if (!(nbar_cm >= 0.0)) throw ValidationError("nbar_cm must be >= 0");
}

std::vector<double> force_residual(const std::vector<double>& u) {
    const int n = static_cast<int>(u.size());
    std::vector<double> f(n);
    for (int j = 0; j < n; ++j) {
        double fj = u[j];
        for (int p = 0; p < j; ++p) {
            const double d = u[j] - u[p];
            fj -= 1.0 / (d * d);
        }
        for (int p = j + 1; p < n; ++p) {
            const double d = u[j] - u[p];
            fj += 1.0 / (d * d);
        }
        f[j] = fj;
    }
    return f;
}

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Jacobian of the force system; coincides with the axial mode matrix A^z.
Eigen::MatrixXd force_jacobian(const std::vector<double>& u) {
    const int n = static_cast<int>(u.size());
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        double diag = 1.0;
        for (int p = 0; p < n; ++p) {
            if (p == j) continue;
            const double d = std::abs(u[j] - u[p]);
            const double w = 2.0 / (d * d * d);
            diag += w;
            jac(j, p) = -w;
        }
        jac(j, j) = diag;
    }
    return jac;
}

}  // namespace

IonChain solve_equilibrium(int n_ions) {
    if (n_ions < 1) throw ValidationError("n_ions must be >= 1");
    if (n_ions == 1) return IonChain{{0.0}, 0.0};

    const int n = n_ions;
    // Uniform spacing with the empirical minimum-spacing scaling of linear crystals.
    const double spacing = 2.018 / std::pow(static_cast<double>(n), 0.559);
    std::vector<double> u(n);
    for (int j = 0; j < n; ++j) u[j] = (j - 0.5 * (n - 1)) * spacing;

    std::vector<double> f = force_residual(u);
    double fnorm = max_abs(f);
    constexpr double kTol = 1e-12;
    constexpr int kMaxIter = 100;

    for (int iter = 0; iter < kMaxIter && fnorm > kTol; ++iter) {
        const Eigen::MatrixXd jac = force_jacobian(u);
        Eigen::VectorXd rhs(n);
        for (int j = 0; j < n; ++j) rhs[j] = -f[j];
        const Eigen::VectorXd step = jac.ldlt().solve(rhs);

        // Backtracking keeps the ordering intact if the full step overshoots.
        double scale = 1.0;
        std::vector<double> u_new(n);
        for (int bt = 0; bt < 40; ++bt, scale *= 0.5) {
            bool ordered = true;
            for (int j = 0; j < n; ++j) u_new[j] = u[j] + scale * step[j];
            for (int j = 0; j + 1 < n; ++j)
                if (!(u_new[j] < u_new[j + 1])) { ordered = false; break; }
            if (!ordered) continue;
            const std::vector<double> f_new = force_residual(u_new);
            const double fn = max_abs(f_new);
            if (fn < fnorm || fn <= kTol) {
                u = u_new;
                f = f_new;
                fnorm = fn;
                break;
            }
        }
    }

    if (fnorm > 1e-10) throw SolverFailure("equilibrium solver did not converge", fnorm);
    return IonChain{std::move(u), fnorm};
}

double length_scale(double mass_kg, double omega_z) {
    if (!(mass_kg > 0.0)) throw ValidationError("mass must be > 0");
    if (!(omega_z > 0.0)) throw ValidationError("omega_z must be > 0");
    constexpr double kElementaryCharge = 1.602176634e-19;   // C
    constexpr double kCoulombConstant = 8.9875517873681764e9;  // 1/(4 pi eps0)
    const double e2 = kCoulombConstant * kElementaryCharge * kElementaryCharge;
    return std::cbrt(e2 / (mass_kg * omega_z * omega_z));
}

LinearityCheck linearity_check(const TrapConfig& cfg) {
    cfg.validate();
    const double threshold = 0.73 * std::pow(static_cast<double>(cfg.n_ions), 0.86);
    const double margin = cfg.beta_x - threshold;
    const bool linear = cfg.n_ions == 1 || cfg.beta_x > threshold;
    return LinearityCheck{linear, threshold, margin};
}

}  // namespace iongate
