#include "iongate/dynamics.hpp"

#include <cmath>

#include "iongate/fidelity.hpp"

namespace iongate {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

Complex cis(double x) { return {std::cos(x), std::sin(x)}; }

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// int_0^h e^{i c u} du, stable for any c including c = 0.
Complex phase_integral(double c, double h) {
    const double z = 0.5 * c * h;
    return h * cis(z) * sinc(z);
}

// int_a^b e^{i c t} dt.
Complex phase_integral_ab(double c, double a, double b) {
    return cis(c * a) * phase_integral(c, b - a);
}

// int_0^h u^n e^{i c u} du for small n.
Complex moment(int n, double c, double h) {
    if (std::abs(c * h) < 0.5) {
        // series sum_m (i c)^m h^{n+m+1} / (m! (n+m+1))
        Complex sum = 0.0;
        Complex term = std::pow(h, n + 1);
        for (int m = 0;; ++m) {
            const Complex contrib = term / static_cast<double>(n + m + 1);
            sum += contrib;
            if (std::abs(contrib) < 1e-18 * std::abs(sum) && m > 2) break;
            term *= kI * c * h / static_cast<double>(m + 1);
            if (m > 60) break;
        }
        return sum;
    }
    Complex mk = phase_integral(c, h);
    const Complex eich = cis(c * h);
    double hn = 1.0;
    for (int k = 1; k <= n; ++k) {
        hn *= h;
        mk = (hn * eich - static_cast<double>(k) * mk) / (kI * c);
    }
    return mk;
}

// k(c1, c2; h) = int_0^h e^{i c2 u} [int_0^u e^{i c1 s} ds] du.
Complex nested_phase_integral(double c1, double c2, double h) {
    if (std::abs(c1 * h) > 1e-3) {
        return (phase_integral(c1 + c2, h) - phase_integral(c2, h)) / (kI * c1);
    }
    // Taylor in c1: sum_n (i c1)^n / (n+1)! * int_0^h u^{n+1} e^{i c2 u} du
    Complex sum = 0.0;
    Complex coeff = 1.0;
    double factorial = 1.0;
    for (int n = 0; n <= 4; ++n) {
        factorial *= (n + 1);
        sum += coeff / factorial * moment(n + 1, c2, h);
        coeff *= kI * c1;
    }
    return sum;
}

// Ordered double integral over one segment [a, b]:
//   int_a^b dt2 int_a^{t2} dt1 sin(mu t2) sin(mu t1) sin(omega (t2 - t1)).
double triangle_integral(double mu, double omega, double a, double b) {
    const double h = b - a;
    Complex acc = 0.0;
    for (int s2 : {+1, -1}) {
        for (int s1 : {+1, -1}) {
            const double c1 = -omega + s1 * mu;
            const double c2 = omega + s2 * mu;
            acc += static_cast<double>(s1 * s2) * cis((c1 + c2) * a) *
                   nested_phase_integral(c1, c2, h);
        }
    }
    return std::imag(-0.25 * acc);
}

}  // namespace

void PulseSequence::validate(int n_ions) const {
    if (!(mu > 0.0)) throw ValidationError("mu must be > 0");
    if (!(tau > 0.0)) throw ValidationError("tau must be > 0");
    if (amplitudes.empty()) throw ValidationError("at least one pulse segment required");
    if (ion_j < 1 || ion_n <= ion_j || ion_n > n_ions)
        throw ValidationError("ion pair must satisfy 1 <= j < n <= N");
}

Eigen::MatrixXcd segment_mode_integrals(double mu, double tau, int m,
                                        const Eigen::VectorXd& frequencies) {
    const int n_modes = static_cast<int>(frequencies.size());
    Eigen::MatrixXcd result(n_modes, m);
    const double h = tau / m;
    for (int k = 0; k < n_modes; ++k) {
        const double omega = frequencies[k];
        for (int p = 0; p < m; ++p) {
            const double a = p * h;
            const double b = a + h;
            // sin(mu t) e^{i omega t} = (e^{i(omega+mu)t} - e^{i(omega-mu)t}) / 2i
            result(k, p) = (phase_integral_ab(omega + mu, a, b) -
                            phase_integral_ab(omega - mu, a, b)) / (2.0 * kI);
        }
    }
    return result;
}

std::complex<double> alpha_constant(double omega_k, double g, double omega_rabi,
                                    double mu, double tau) {
    return omega_rabi * g *
           (phase_integral_ab(omega_k + mu, 0.0, tau) -
            phase_integral_ab(omega_k - mu, 0.0, tau)) / (2.0 * kI);
}

std::complex<double> alpha_segmented(const PulseSequence& seq, double omega_k, double g) {
    const int m = seq.segments();
    Eigen::VectorXd freq(1);
    freq[0] = omega_k;
    const Eigen::MatrixXcd unit = segment_mode_integrals(seq.mu, seq.tau, m, freq);
    Complex sum = 0.0;
    for (int p = 0; p < m; ++p) sum += seq.amplitudes[p] * unit(0, p);
    return g * sum;
}

Eigen::MatrixXd phase_coupling_matrix(double mu, double tau, int m,
                                      const ModeTable& modes, int ion_j, int ion_n) {
    if (modes.lamb_dicke.size() != modes.size())
        throw ValidationError("ModeTable.lamb_dicke not filled");
    const int n_modes = modes.size();
    const double h = tau / m;
    const Eigen::MatrixXcd unit = segment_mode_integrals(mu, tau, m, modes.frequencies);

    Eigen::MatrixXd g_mat = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < n_modes; ++k) {
        const double gg = modes.lamb_dicke[k] * modes.lamb_dicke[k] *
                          modes.eigenvectors(ion_j - 1, k) * modes.eigenvectors(ion_n - 1, k);
        const double omega = modes.frequencies[k];
        for (int p = 0; p < m; ++p) {
            g_mat(p, p) += 2.0 * gg * triangle_integral(mu, omega, p * h, (p + 1) * h);
            for (int q = 0; q < p; ++q) {
                const double cross = gg * std::imag(unit(k, p) * std::conj(unit(k, q)));
                g_mat(p, q) += cross;
                g_mat(q, p) += cross;
            }
        }
    }
    return g_mat;
}

double phi_constant(const ModeTable& modes, int ion_j, int ion_n,
                    double omega_rabi_j, double omega_rabi_n, double mu, double tau) {
    if (modes.lamb_dicke.size() != modes.size())
        throw ValidationError("ModeTable.lamb_dicke not filled");
    double phi = 0.0;
    for (int k = 0; k < modes.size(); ++k) {
        const double gg = modes.lamb_dicke[k] * modes.lamb_dicke[k] *
                          modes.eigenvectors(ion_j - 1, k) * modes.eigenvectors(ion_n - 1, k);
        phi += 2.0 * gg * triangle_integral(mu, modes.frequencies[k], 0.0, tau);
    }
    return omega_rabi_j * omega_rabi_n * phi;
}

double phi_segmented(const PulseSequence& seq, const ModeTable& modes) {
    const Eigen::MatrixXd g_mat =
        phase_coupling_matrix(seq.mu, seq.tau, seq.segments(), modes, seq.ion_j, seq.ion_n);
    Eigen::VectorXd amps = Eigen::Map<const Eigen::VectorXd>(
        seq.amplitudes.data(), static_cast<Eigen::Index>(seq.amplitudes.size()));
    return amps.dot(g_mat * amps);
}

double phi_single_mode(double b_j, double b_n, double eta, double omega_rabi,
                       double tau, double l, double l_prime) {
    return -(b_j * b_n / (4.0 * M_PI)) * eta * eta * omega_rabi * omega_rabi * tau * tau /
           (1.0 + l / l_prime);
}

GateResult gate_result(const PulseSequence& seq, const ModeTable& modes, double nbar_cm) {
    seq.validate(modes.size());
    if (modes.lamb_dicke.size() != modes.size())
        throw ValidationError("ModeTable.lamb_dicke not filled");
    const int n_modes = modes.size();
    const int m = seq.segments();
    const Eigen::MatrixXcd unit = segment_mode_integrals(seq.mu, seq.tau, m, modes.frequencies);

    GateResult result;
    result.alpha.resize(2, n_modes);
    const int ions[2] = {seq.ion_j, seq.ion_n};
    for (int k = 0; k < n_modes; ++k) {
        Complex drive = 0.0;
        for (int p = 0; p < m; ++p) drive += seq.amplitudes[p] * unit(k, p);
        for (int i = 0; i < 2; ++i) {
            const double g = modes.lamb_dicke[k] * modes.eigenvectors(ions[i] - 1, k);
            result.alpha(i, k) = g * drive;
        }
    }
    result.phi = phi_segmented(seq, modes);
    result.infidelity = displacement_infidelity(result.alpha, mode_weights(modes, nbar_cm));
    result.phase_error = std::abs(result.phi) - M_PI_4;
    return result;
}

}  // namespace iongate
