#ifndef IGW_WAVE_HPP
#define IGW_WAVE_HPP

#include <complex>
#include <Eigen/Dense>

namespace igw {

// Background plane wave on the integer lattice, with wavevector k = (m_hat, n_hat),
// buoyancy frequency buoyancy_N and amplitude epsilon.
// Invariants: m_hat >= 1, n_hat >= 1, buoyancy_N > 0, epsilon >= 0.
struct PrimaryWave {
    int m_hat = 1;
    int n_hat = 1;
    double buoyancy_N = 1.0;
    double epsilon = 0.0;

    Eigen::Vector2d wavevector() const {
        return {static_cast<double>(m_hat), static_cast<double>(n_hat)};
    }
    // Perpendicular vector (n_hat, -m_hat); convention v_perp = (v2, -v1).
    Eigen::Vector2d wavevector_perp() const {
        return {static_cast<double>(n_hat), -static_cast<double>(m_hat)};
    }
    double wavevector_norm() const { return wavevector().norm(); }
};

// Throws std::invalid_argument if any PrimaryWave invariant is violated.
void validate(const PrimaryWave& pw);

// Floquet parameter mu = (mu1, mu2).
struct FloquetPoint {
    double mu1 = 0.0;
    double mu2 = 0.0;

    Eigen::Vector2d vec() const { return {mu1, mu2}; }
};

// One state of the fiber: harmonic index n on the lattice k*Z and branch sign
// sigma in {+1, -1}.
struct Mode {
    int n = 0;
    int sigma = +1;
};

// Phase speed c = N * m_hat * |k|^-3 * k. Parallel to k, |c| = N m_hat / |k|^2.
Eigen::Vector2d phase_speed(const PrimaryWave& pw);

// Dispersion relation Omega(v) = N v1 / |v|, with Omega(0) = 0 exactly.
// Odd in v, invariant under positive scaling of v, |Omega| <= N.
double omega(const Eigen::Vector2d& v, double N);

// Frequency of mode (n, sigma) at Floquet parameter mu:
//   w = c . (n k + mu) + sigma * Omega(n k + mu).
// The corresponding operator eigenvalue is i * w.
double w_freq(const PrimaryWave& pw, const FloquetPoint& mu, Mode mode);

// Coefficient pair of the basis eigenvector on harmonic exp(i n k.x):
//   (1/sqrt(2)) * (N, -sigma |n k + mu|).
// Entries are real; squared norm is (N^2 + |n k + mu|^2) / 2.
Eigen::Vector2cd eigvec_coeff(const PrimaryWave& pw, const FloquetPoint& mu, Mode mode);

// Symplectic pairing of two basis vectors. Zero unless the modes coincide;
// the diagonal value is -sigma * i * |n k + mu|^2 * Omega(n k + mu), purely
// imaginary.
std::complex<double> symplectic_pair(const PrimaryWave& pw, const FloquetPoint& mu,
                                     Mode mode_a, Mode mode_b);

// Normalization coefficient d = 1 / (|j + mu|^2 * Omega(j + mu)) for a
// wavevector j (typically a lattice point n k). Throws std::domain_error when
// (j + mu)_1 = 0, where the frequency vanishes.
double d_coeff(const PrimaryWave& pw, const FloquetPoint& mu, const Eigen::Vector2d& j);

} // namespace igw

#endif
