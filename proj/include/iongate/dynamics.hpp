#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "iongate/modes.hpp"

namespace iongate {

// Segmented state-dependent force chi(t) = Omega_p sin(mu t) on
// (p-1) tau/m <= t < p tau/m. Both target ions see the same amplitudes.
// Ion indices are 1-based, 1 <= ion_j < ion_n <= N.
struct PulseSequence {
    double mu = 0.0;                  // detuning, omega_z units
    double tau = 0.0;                 // gate time, 1/omega_z units
    std::vector<double> amplitudes;   // Omega_p, omega_z units; size m >= 1
    int ion_j = 1;
    int ion_n = 2;
    Axis axis = Axis::transverse;

    int segments() const { return static_cast<int>(amplitudes.size()); }
    void validate(int n_ions) const;
};

struct GateResult {
    Eigen::MatrixXcd alpha;   // 2 x N, row 0 = ion_j, row 1 = ion_n
    double phi = 0.0;         // conditional phase phi_jn
    double infidelity = 0.0;  // residual-displacement infidelity
    double phase_error = 0.0; // |phi| - pi/4
};

// int over segment p of sin(mu t) e^{i omega_k t} dt for every (mode, segment);
// result is N x m. These are the unit-amplitude building blocks of alpha.
Eigen::MatrixXcd segment_mode_integrals(double mu, double tau, int m,
                                        const Eigen::VectorXd& frequencies);

// Closed form of alpha = int_0^tau Omega sin(mu t) g e^{i omega_k t} dt for a
// constant drive. Continuous across mu = omega_k.
std::complex<double> alpha_constant(double omega_k, double g, double omega_rabi,
                                    double mu, double tau);

// Same integral with the piecewise-constant amplitude list; linear in the
// amplitude vector.
std::complex<double> alpha_segmented(const PulseSequence& seq, double omega_k, double g);

// Symmetric m x m matrix G with phi_jn = Omega^T G Omega, summed over all
// modes of the table. Requires table.lamb_dicke to be filled.
Eigen::MatrixXd phase_coupling_matrix(double mu, double tau, int m,
                                      const ModeTable& modes, int ion_j, int ion_n);

// Conditional phase for a constant drive with (possibly different) Rabi
// frequencies on the two ions.
double phi_constant(const ModeTable& modes, int ion_j, int ion_n,
                    double omega_rabi_j, double omega_rabi_n, double mu, double tau);

double phi_segmented(const PulseSequence& seq, const ModeTable& modes);

// Single-mode sideband estimate phi = -(b_j b_n / 4 pi) eta^2 Omega^2 tau^2 / (1 + l/l').
double phi_single_mode(double b_j, double b_n, double eta, double omega_rabi,
                       double tau, double l, double l_prime);

// Full evaluation: displacements for both target ions over every mode, the
// conditional phase, and the thermal residual-displacement infidelity.
GateResult gate_result(const PulseSequence& seq, const ModeTable& modes, double nbar_cm);

}  // namespace iongate
