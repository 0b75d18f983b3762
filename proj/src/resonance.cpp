#include "igw/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace igw {

namespace {

// Straight-line predictor for the far part of either branch:
//   x ~ s (n/2 + y) - m/2 with s = +-m / sqrt(3 m^2 + 4 n^2).
double line_predictor(const PrimaryWave& pw, double y, Branch branch) {
    const double m = pw.m_hat, n = pw.n_hat;
    const double s = m / std::sqrt(3.0 * m * m + 4.0 * n * n);
    const double sgn = (branch == Branch::Plus) ? 1.0 : -1.0;
    return sgn * s * (0.5 * n + y) - 0.5 * m;
}

// Quadratic predictor near the origin: x ~ +- (m n / |k|^3) y^2.
double quad_predictor(const PrimaryWave& pw, double y, Branch branch) {
    const double m = pw.m_hat, n = pw.n_hat;
    const double kn = pw.wavevector_norm();
    const double sgn = (branch == Branch::Plus) ? 1.0 : -1.0;
    return sgn * m * n / (kn * kn * kn) * y * y;
}

bool kink_regime(const PrimaryWave& pw) {
    const double m = pw.m_hat, n = pw.n_hat;
    return n * n > 3.0 * m * m;
}

} // namespace

double residual_F(const PrimaryWave& pw, double x, double y) {
    const double m = pw.m_hat, n = pw.n_hat;
    const double r1 = std::hypot(m + x, n + y);
    const double r0 = std::hypot(x, y);
    if (r0 == 0.0 || r1 == 0.0)
        throw std::domain_error("resonance residual is singular at (0,0) and (-m,-n)");
    return (m + x) / r1 + x / r0 - m / pw.wavevector_norm();
}

double residual_F_dx(const PrimaryWave& pw, double x, double y) {
    const double m = pw.m_hat, n = pw.n_hat;
    const double r1 = std::hypot(m + x, n + y);
    const double r0 = std::hypot(x, y);
    if (r0 == 0.0 || r1 == 0.0)
        throw std::domain_error("resonance residual is singular at (0,0) and (-m,-n)");
    const double a = (n + y) / r1;
    const double b = y / r0;
    return a * a / r1 + b * b / r0;
}

ResonantPoint solve_branch(const PrimaryWave& pw, double y, Branch branch) {
    validate(pw);
    if (branch == Branch::Plus && !(y > 0.0))
        throw std::invalid_argument("PlusBranch requires y > 0");
    if (branch == Branch::Minus && !(y < 0.0))
        throw std::invalid_argument("MinusBranch requires y < 0");
    if (branch == Branch::Minus && kink_regime(pw) && y == -static_cast<double>(pw.n_hat))
        throw std::domain_error("no resonant point at the corner ordinate y = -n for n^2 > 3 m^2");

    const double p = (std::abs(y) < 1.0) ? quad_predictor(pw, y, branch)
                                         : line_predictor(pw, y, branch);

    // Expand a symmetric interval around the predictor until F changes sign.
    // F is strictly increasing in x with limits of opposite sign, so a
    // bracket always exists; failure to find one indicates a defect.
    double h = std::max(0.1, 0.25 * std::abs(p));
    double lo = p - h, hi = p + h;
    int guard = 0;
    while (residual_F(pw, lo, y) > 0.0) {
        lo -= h;
        h *= 2.0;
        if (++guard > 200)
            throw solver_error("bracketing failed below the predictor at y = " + std::to_string(y));
    }
    h = std::max(0.1, 0.25 * std::abs(p));
    guard = 0;
    while (residual_F(pw, hi, y) < 0.0) {
        hi += h;
        h *= 2.0;
        if (++guard > 200)
            throw solver_error("bracketing failed above the predictor at y = " + std::to_string(y));
    }

    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break; // interval at floating-point resolution
        if (residual_F(pw, mid, y) <= 0.0)
            lo = mid;
        else
            hi = mid;
    }

    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) {
        const double f = residual_F(pw, x, y);
        const double df = residual_F_dx(pw, x, y);
        if (df == 0.0)
            break;
        x -= f / df;
    }

    ResonantPoint out;
    out.mu = FloquetPoint{x, y};
    out.branch = branch;
    out.y_param = y;
    out.residual = std::abs(residual_F(pw, x, y));
    return out;
}

FloquetPoint param_mu_small(const PrimaryWave& pw, double tau, double tau0) {
    if (std::abs(tau) > tau0)
        throw std::invalid_argument("parameter tau exceeds the configured small range");
    if (tau == 0.0)
        return FloquetPoint{0.0, 0.0};
    const Branch branch = (tau > 0.0) ? Branch::Plus : Branch::Minus;
    return solve_branch(pw, tau, branch).mu;
}

FloquetPoint param_mu_large(const PrimaryWave& pw, double y, double y_min) {
    if (std::abs(y) < y_min)
        throw std::invalid_argument("parameter y below the configured far range");
    const Branch branch = (y > 0.0) ? Branch::Plus : Branch::Minus;
    return solve_branch(pw, y, branch).mu;
}

double kink_expansion(const PrimaryWave& pw, double dy) {
    const double m = pw.m_hat, n = pw.n_hat;
    if (!kink_regime(pw))
        throw std::domain_error("corner expansion requires n^2 > 3 m^2");
    const double a_star = std::sqrt(4.0 * m * m / (n * n - 3.0 * m * m));
    return -m + a_star * std::abs(dy);
}

GapReport gap_alpha(const PrimaryWave& pw, const FloquetPoint& mu,
                    double gap_threshold, double resonance_tol) {
    validate(pw);
    const double res = std::abs(residual_F(pw, mu.mu1, mu.mu2));
    if (res > resonance_tol)
        throw std::invalid_argument("gap scan requires a resonant mu, residual " + std::to_string(res));

    const double N = pw.buoyancy_N;
    const double omega_k = omega(pw.wavevector(), N);
    // Smallest cutoff with (ell_cutoff - 1) Omega(k) > 3 N; beyond it the
    // frequency distance is at least |ell - 1| Omega(k) - 2N >= N.
    const int ell0 = static_cast<int>(std::floor(3.0 * N / omega_k)) + 2;

    const double w_base = w_freq(pw, mu, Mode{0, +1});

    GapReport rep;
    rep.ell_cutoff = ell0;
    double best_p = std::numeric_limits<double>::infinity();
    double best_m = std::numeric_limits<double>::infinity();
    for (int ell = -ell0 + 1; ell < ell0; ++ell) {
        if (ell != 0) {
            const double v = std::abs(w_freq(pw, mu, Mode{ell, +1}) - w_base);
            if (v < best_p) {
                best_p = v;
                rep.worst_ell_plus = ell;
            }
        }
        if (ell != 1) {
            const double v = std::abs(w_freq(pw, mu, Mode{ell, -1}) - w_base);
            if (v < best_m) {
                best_m = v;
                rep.worst_ell_minus = ell;
            }
        }
    }
    rep.alpha_plus = std::min(best_p, N);
    rep.alpha_minus = std::min(best_m, N);
    rep.near_exceptional = std::min(rep.alpha_plus, rep.alpha_minus) < gap_threshold;
    return rep;
}

} // namespace igw
