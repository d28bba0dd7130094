#pragma once

#include <vector>

#include "iongate/errors.hpp"

namespace iongate {

// All quantities are in trap units: frequencies in omega_z, times in 1/omega_z,
// lengths in the Coulomb length scale ell (see length_scale()).
struct TrapConfig {
    int n_ions = 10;
    double beta_x = 10.0;    // omega_x / omega_z
    double eta_ref = 0.1;    // |dk| sqrt(hbar / 2 M omega_z)
    double nbar_cm = 3.0;    // mean phonon number of the transverse CM mode

    void validate() const;  // throws ValidationError
};

// Classical equilibrium of the linear chain, positions u_n = z_n^0 / ell.
struct IonChain {
    std::vector<double> positions;   // strictly increasing, sum = 0
    double residual_norm = 0.0;      // max |force| at the returned positions

    int size() const { return static_cast<int>(positions.size()); }
};

// Dimensionless force on each ion: u_j - sum_{n<j} 1/(u_j-u_n)^2 + sum_{n>j} 1/(u_j-u_n)^2.
std::vector<double> force_residual(const std::vector<double>& positions);

// Newton iteration on the force-balance system; residual_norm <= 1e-10 on return.
IonChain solve_equilibrium(int n_ions);

// ell = cbrt(e^2 / (4 pi eps0 M omega_z^2)), in meters. Reporting only.
double length_scale(double mass_kg, double omega_z);

struct LinearityCheck {
    bool linear;
    double threshold;  // 0.73 N^0.86
    double margin;     // beta_x - threshold
};

LinearityCheck linearity_check(const TrapConfig& cfg);

}  // namespace iongate
