#include "iongate/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace iongate {

Eigen::MatrixXd build_matrix(const IonChain& chain, double beta, Axis axis) {
    if (!(beta > 0.0)) throw ValidationError("beta must be > 0");
    const int n = chain.size();
    const double a_xi = (axis == Axis::transverse) ? -1.0 : 2.0;
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        double diag = beta * beta;
        for (int p = 0; p < n; ++p) {
            if (p == j) continue;
            const double d = std::abs(chain.positions[j] - chain.positions[p]);
            if (d < 1e-12) throw ValidationError("degenerate chain: coincident ion positions");
            const double w = a_xi / (d * d * d);
            diag += w;
            mat(j, p) = -w;
        }
        mat(j, j) = diag;
    }
    return mat;
}

namespace {

// Lexicographic eigenvector comparison, used only to break exact frequency ties.
bool vec_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] < b[i] - 1e-12) return true;
        if (a[i] > b[i] + 1e-12) return false;
    }
    return false;
}

}  // namespace

ModeTable normal_modes(const Eigen::MatrixXd& matrix, Axis axis) {
    const int n = static_cast<int>(matrix.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
    if (solver.info() != Eigen::Success)
        throw SolverFailure("symmetric eigen-decomposition failed", 0.0);

    Eigen::VectorXd vals = solver.eigenvalues();
    Eigen::MatrixXd vecs = solver.eigenvectors();

    for (int k = 0; k < n; ++k)
        if (!(vals[k] > 0.0)) throw InstabilityError(k, vals[k]);

    // Sign convention: largest-magnitude component of each eigenvector positive.
    for (int k = 0; k < n; ++k) {
        int imax = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(vecs(i, k)) > std::abs(vecs(imax, k))) imax = i;
        if (vecs(imax, k) < 0.0) vecs.col(k) *= -1.0;
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (std::abs(vals[a] - vals[b]) > 1e-12) return vals[a] > vals[b];
        return vec_less(vecs.col(a), vecs.col(b));
    });

    ModeTable table;
    table.axis = axis;
    table.eigenvalues.resize(n);
    table.frequencies.resize(n);
    table.eigenvectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        table.eigenvalues[k] = vals[order[k]];
        table.frequencies[k] = std::sqrt(vals[order[k]]);
        table.eigenvectors.col(k) = vecs.col(order[k]);
    }
    return table;
}

Eigen::VectorXd lamb_dicke_params(const ModeTable& table, double eta_ref) {
    if (!(eta_ref > 0.0)) throw ValidationError("eta_ref must be > 0");
    return eta_ref * table.eigenvalues.array().pow(-0.25);
}

ModeTable compute_modes(const IonChain& chain, double beta, Axis axis, double eta_ref) {
    const double beta_xi = (axis == Axis::longitudinal) ? 1.0 : beta;
    ModeTable table = normal_modes(build_matrix(chain, beta_xi, axis), axis);
    table.lamb_dicke = lamb_dicke_params(table, eta_ref);
    return table;
}

}  // namespace iongate
