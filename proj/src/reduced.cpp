#include "igw/reduced.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "igw/entanglement.hpp"

namespace igw {

namespace {

constexpr std::complex<double> I{0.0, 1.0};

} // namespace

Eigen::Matrix2cd ReducedMatrix::matrix() const {
    Eigen::Matrix2cd A;
    A << I * w_ref, I * epsilon * b1,
         I * epsilon * b0, I * w_ref;
    return A;
}

double w_underline(const PrimaryWave& pw, const FloquetPoint& mu, double tol) {
    validate(pw);
    const double wa = w_freq(pw, mu, Mode{0, +1});
    const double wb = w_freq(pw, mu, Mode{1, -1});
    if (std::abs(wa - wb) > tol)
        throw std::domain_error("Floquet point violates the resonance relation: |dw| = " +
                                std::to_string(std::abs(wa - wb)));
    return 0.5 * (wa + wb);
}

Iota cluster_norms(const PrimaryWave& pw, const FloquetPoint& mu) {
    const double N = pw.buoyancy_N;
    const double mun2 = mu.vec().squaredNorm();
    const double kmun2 = (pw.wavevector() + mu.vec()).squaredNorm();
    return {0.5 * (N * N + mun2), 0.5 * (N * N + kmun2)};
}

Combos beta_gamma_combos(const PrimaryWave& pw, const FloquetPoint& mu, double tol) {
    w_underline(pw, mu, tol);
    const double N = pw.buoyancy_N;
    const double kn = pw.wavevector_norm();
    const double mun = mu.vec().norm();
    const double kmun = (pw.wavevector() + mu.vec()).norm();
    const double kpm = pw.wavevector_perp().dot(mu.vec());
    const double shared = kpm * (kmun + kn - mun) / (8.0 * N * kn * mun * kmun);
    return {shared * (kmun - kn) * (N * N + mun * mun),
            -shared * (kn + mun) * (kmun * kmun + N * N)};
}

Combos beta_gamma_combos_residues(const PrimaryWave& pw, const FloquetPoint& mu,
                                  double gap, double tol) {
    const double w_ref = w_underline(pw, mu, tol);
    PrimaryWave unit = pw;
    unit.epsilon = 1.0;

    const double e_mm = ent_coeff_bruteforce(unit, mu, EntKind::E, 1, -1, 0, 1, -1, -1).real();
    const double e_pp = ent_coeff_bruteforce(unit, mu, EntKind::E, 1, +1, 1, 0, +1, +1).real();
    const std::complex<double> l1_down_pm =
        ent_coeff_bruteforce(unit, mu, EntKind::L, 1, -1, 0, 1, +1, -1);
    const std::complex<double> l1_up_mp =
        ent_coeff_bruteforce(unit, mu, EntKind::L, 1, +1, 1, 0, -1, +1);
    const std::complex<double> l0_00_pm =
        ent_coeff_bruteforce(unit, mu, EntKind::L, 0, 0, 0, 0, +1, -1);
    const std::complex<double> l0_00_mp =
        ent_coeff_bruteforce(unit, mu, EntKind::L, 0, 0, 0, 0, -1, +1);
    const std::complex<double> l0_kk_pm =
        ent_coeff_bruteforce(unit, mu, EntKind::L, 0, 0, 1, 1, +1, -1);
    const std::complex<double> l0_kk_mp =
        ent_coeff_bruteforce(unit, mu, EntKind::L, 0, 0, 1, 1, -1, +1);

    const double d0 = d_coeff(pw, mu, Eigen::Vector2d::Zero());
    const double dk = d_coeff(pw, mu, pw.wavevector());
    const double r0 = residue_coeff(pw, mu, Mode{0, -1}, Mode{0, +1}, w_ref, gap);
    const double rk = residue_coeff(pw, mu, Mode{1, +1}, Mode{1, -1}, w_ref, gap);

    const double N = pw.buoyancy_N;
    const double f0 = 0.5 * (N * N - mu.vec().squaredNorm());
    const double fk = 0.5 * (N * N - (pw.wavevector() + mu.vec()).squaredNorm());

    const double gamma1 = d0 * e_mm * r0 * f0 - dk * e_pp * rk * fk;
    const double beta1 =
        (l1_down_pm + d0 * (e_mm * r0) * l0_00_pm - dk * (e_pp * rk) * l0_kk_pm).imag();
    const double beta0 =
        (l1_up_mp - dk * (e_pp * rk) * l0_kk_mp + d0 * (e_mm * r0) * l0_00_mp).imag();

    return {beta1 - gamma1 * w_ref, beta0 - gamma1 * w_ref};
}

BCoeffs b_coeffs(const PrimaryWave& pw, const FloquetPoint& mu, double tol) {
    w_underline(pw, mu, tol);
    const double N = pw.buoyancy_N;
    const double kn = pw.wavevector_norm();
    const double mun = mu.vec().norm();
    const double kmun = (pw.wavevector() + mu.vec()).norm();
    const double kpm = pw.wavevector_perp().dot(mu.vec());
    const double shared = kpm * (kmun + kn - mun) / (4.0 * N * kn * mun * kmun);
    return {shared * (kmun - kn), -shared * (kn + mun)};
}

ReducedMatrix reduced_matrix(const PrimaryWave& pw, const FloquetPoint& mu, double tol) {
    const double w_ref = w_underline(pw, mu, tol);
    const BCoeffs b = b_coeffs(pw, mu, tol);
    return {w_ref, b.b1, b.b0, pw.epsilon};
}

double e_mu(const PrimaryWave& pw, const FloquetPoint& mu, double tol) {
    const BCoeffs b = b_coeffs(pw, mu, tol);
    return -b.b1 * b.b0;
}

InstabilityPrediction lambda_pm(const PrimaryWave& pw, const FloquetPoint& mu, double tol) {
    const double w_ref = w_underline(pw, mu, tol);
    const double e = e_mu(pw, mu, tol);
    InstabilityPrediction p;
    p.e_value = e;
    if (e > 0.0) {
        const double g = pw.epsilon * std::sqrt(e);
        p.lambda_plus = {g, w_ref};
        p.lambda_minus = {-g, w_ref};
        p.stable = false;
    } else {
        const double s = pw.epsilon * std::sqrt(-e);
        p.lambda_plus = {0.0, w_ref + s};
        p.lambda_minus = {0.0, w_ref - s};
        p.stable = true;
    }
    return p;
}

PhysicsI physics_I(const PrimaryWave& pw, const FloquetPoint& mu) {
    validate(pw);
    const double N = pw.buoyancy_N;
    const Eigen::Vector2d q = pw.wavevector() + mu.vec();
    if (mu.vec().norm() == 0.0 || q.norm() == 0.0)
        throw std::domain_error("coupling integrals undefined at a lattice point");
    const double om_mu = omega(mu.vec(), N);
    const double om_q = omega(q, N);
    if (om_mu == 0.0 || om_q == 0.0)
        throw std::domain_error("coupling integrals undefined at zero frequency");
    const double kn = pw.wavevector_norm();
    const double mun = mu.vec().norm();
    const double kmun = q.norm();
    const double kpm = pw.wavevector_perp().dot(mu.vec());
    const double ip = kpm * (om_q * (kn * kn - mun * mun) + (pw.m_hat + mu.mu1) * N * (kn - mun)) /
                      (2.0 * om_q * kmun * kmun);
    const double im = -kpm * (om_mu * (kn * kn - kmun * kmun) + mu.mu1 * N * (kn - kmun)) /
                      (2.0 * om_mu * mun * mun);
    return {ip, im};
}

double e_from_physics(const PrimaryWave& pw, const FloquetPoint& mu, double tol) {
    w_underline(pw, mu, tol);
    const double kn = pw.wavevector_norm();
    const double mun = mu.vec().norm();
    const double kmun = (pw.wavevector() + mu.vec()).norm();
    if (std::abs(mun - kn) < 1e-6)
        throw std::domain_error("reassembled e(mu) is singular on |mu| = |k|");
    const PhysicsI phys = physics_I(pw, mu);
    const double N = pw.buoyancy_N;
    const double ratio = (kmun + kn - mun) / (kmun + kn + mun);
    return phys.I_plus * phys.I_minus / (4.0 * N * N * kn * kn) * ratio * ratio *
           (kn + mun) / (kn - mun);
}

double e_small_coeff(const PrimaryWave& pw) {
    validate(pw);
    const double N = pw.buoyancy_N;
    const double m = pw.m_hat;
    const double n = pw.n_hat;
    return m * m * n * n / (4.0 * N * N * pw.wavevector().squaredNorm());
}

double e_large_limit(const PrimaryWave& pw) {
    validate(pw);
    const double N = pw.buoyancy_N;
    const double m = pw.m_hat;
    const double n = pw.n_hat;
    const double S = std::sqrt(3.0 * m * m + 4.0 * n * n);
    const double k2 = pw.wavevector().squaredNorm();
    const double a = n - S;
    const double b = 3.0 * m * m + 2.0 * n * n + n * S;
    return m * m * a * a * b * b / (256.0 * N * N * k2 * k2 * k2);
}

} // namespace igw
