#pragma once

#include <Eigen/Dense>

#include "iongate/crystal.hpp"

namespace iongate {

enum class Axis { longitudinal, transverse };

// Normal modes of one axis, sorted by descending frequency.
// Eigenvalues are those of A^xi directly, so frequencies are in omega_z units
// (transverse CM: eigenvalue beta_x^2, frequency beta_x; axial CM: 1, 1).
struct ModeTable {
    Axis axis = Axis::transverse;
    Eigen::VectorXd eigenvalues;
    Eigen::VectorXd frequencies;
    Eigen::MatrixXd eigenvectors;  // column k = mode k; largest-|.| component positive
    Eigen::VectorXd lamb_dicke;    // eta_ref * eigenvalue^{-1/4}; empty until filled

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

// A^xi from the harmonic expansion around equilibrium:
//   diagonal beta^2 + sum_{p != j} a_xi / |u_j - u_p|^3,
//   off-diagonal -a_xi / |u_j - u_n|^3,
// with a_x = -1 and a_z = 2. Pass beta = 1 for the longitudinal axis.
Eigen::MatrixXd build_matrix(const IonChain& chain, double beta, Axis axis);

// Diagonalize a symmetric mode matrix. Throws InstabilityError on a
// non-positive eigenvalue. lamb_dicke is left empty.
ModeTable normal_modes(const Eigen::MatrixXd& matrix, Axis axis);

// eta_k = eta_ref * omega_k^{-1/2} = eta_ref * eigenvalue^{-1/4}.
Eigen::VectorXd lamb_dicke_params(const ModeTable& table, double eta_ref);

// Convenience: build, diagonalize, and fill the Lamb-Dicke column.
ModeTable compute_modes(const IonChain& chain, double beta, Axis axis, double eta_ref);

}  // namespace iongate
