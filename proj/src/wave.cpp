#include "igw/wave.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace igw {

namespace {

void check_sigma(int sigma) {
    if (sigma != 1 && sigma != -1)
        throw std::invalid_argument("mode sigma must be +1 or -1, got " + std::to_string(sigma));
}

} // namespace

void validate(const PrimaryWave& pw) {
    if (pw.m_hat < 1 || pw.n_hat < 1)
        throw std::invalid_argument("wavevector components must be positive integers");
    if (!(pw.buoyancy_N > 0.0))
        throw std::invalid_argument("buoyancy frequency must be positive");
    if (!(pw.epsilon >= 0.0))
        throw std::invalid_argument("amplitude must be non-negative");
}

Eigen::Vector2d phase_speed(const PrimaryWave& pw) {
    const double kn = pw.wavevector_norm();
    return pw.buoyancy_N * pw.m_hat / (kn * kn * kn) * pw.wavevector();
}

double omega(const Eigen::Vector2d& v, double N) {
    const double r = v.norm();
    if (r == 0.0)
        return 0.0;
    return N * v.x() / r;
}

double w_freq(const PrimaryWave& pw, const FloquetPoint& mu, Mode mode) {
    check_sigma(mode.sigma);
    const Eigen::Vector2d q = mode.n * pw.wavevector() + mu.vec();
    return phase_speed(pw).dot(q) + mode.sigma * omega(q, pw.buoyancy_N);
}

Eigen::Vector2cd eigvec_coeff(const PrimaryWave& pw, const FloquetPoint& mu, Mode mode) {
    check_sigma(mode.sigma);
    const Eigen::Vector2d q = mode.n * pw.wavevector() + mu.vec();
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Vector2cd f;
    f << s * pw.buoyancy_N, -s * mode.sigma * q.norm();
    return f;
}

std::complex<double> symplectic_pair(const PrimaryWave& pw, const FloquetPoint& mu,
                                     Mode mode_a, Mode mode_b) {
    check_sigma(mode_a.sigma);
    check_sigma(mode_b.sigma);
    if (mode_a.n != mode_b.n || mode_a.sigma != mode_b.sigma)
        return {0.0, 0.0};
    const Eigen::Vector2d q = mode_a.n * pw.wavevector() + mu.vec();
    return {0.0, -mode_a.sigma * q.squaredNorm() * omega(q, pw.buoyancy_N)};
}

double d_coeff(const PrimaryWave& pw, const FloquetPoint& mu, const Eigen::Vector2d& j) {
    const Eigen::Vector2d q = j + mu.vec();
    if (q.x() == 0.0)
        throw std::domain_error("singular frequency: first component of j + mu vanishes");
    // 1 / (|q|^2 Omega(q)) = 1 / (N q1 |q|)
    return 1.0 / (pw.buoyancy_N * q.x() * q.norm());
}

} // namespace igw
