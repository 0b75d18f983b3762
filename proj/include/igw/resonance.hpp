#ifndef IGW_RESONANCE_HPP
#define IGW_RESONANCE_HPP

#include <stdexcept>

#include "igw/wave.hpp"

namespace igw {

// Failure of a numeric routine (bracketing, eigensolver convergence).
// Distinct from precondition violations, which throw standard logic errors.
class solver_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Branch { Plus, Minus };

// A solved point of the resonance curve. The curve is the graph x = phi(y) of
// the zero set of residual_F; PlusBranch carries y > 0, MinusBranch y < 0.
struct ResonantPoint {
    FloquetPoint mu;
    Branch branch = Branch::Plus;
    double y_param = 0.0;
    double residual = 0.0; // |F| at the solution
};

// Distance of the nearest competing mode frequencies from the doubled
// frequency at a resonant mu, scanned over harmonics |ell| < ell_cutoff and
// capped by the analytic tail bound (buoyancy_N).
struct GapReport {
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    int ell_cutoff = 0;
    int worst_ell_plus = 0;
    int worst_ell_minus = 0;
    bool near_exceptional = false;
};

// Resonance residual
//   F(x, y) = (m+x)/|(m+x, n+y)| + x/|(x, y)| - m/|k|.
// F = 0 exactly on the resonance curve (away from the origin). Strictly
// increasing in x; limits -2 - m/|k| and 2 - m/|k| as x -> -inf / +inf.
// Throws std::domain_error at the singular points (0,0) and (-m,-n).
double residual_F(const PrimaryWave& pw, double x, double y);

// Analytic partial derivative of residual_F in x:
//   (n+y)^2 / |(m+x, n+y)|^3 + y^2 / |(x, y)|^3, strictly positive off the
// singular points.
double residual_F_dx(const PrimaryWave& pw, double x, double y);

// Solves F(x, y) = 0 for x at fixed y on the requested branch. Bracketed
// bisection to absolute width 1e-12 around an asymptotic predictor, then
// three Newton polish steps with the analytic derivative.
// Preconditions: y > 0 on PlusBranch, y < 0 on MinusBranch. On MinusBranch
// with n^2 > 3 m^2 the ordinate y = -n carries no root and is rejected.
ResonantPoint solve_branch(const PrimaryWave& pw, double y, Branch branch);

// Resonant point parametrized near the origin: mu(tau) = (phi(tau), tau),
// solved on the branch selected by the sign of tau. tau = 0 maps to (0, 0).
// Requires |tau| <= tau0.
FloquetPoint param_mu_small(const PrimaryWave& pw, double tau, double tau0 = 0.5);

// Resonant point on the far part of a branch, |y| >= y_min. The solved slope
// phi(y)/y approaches +-m/sqrt(3 m^2 + 4 n^2).
FloquetPoint param_mu_large(const PrimaryWave& pw, double y, double y_min = 10.0);

// Predicted abscissa near the corner of the minus branch at y = -n, valid
// when n^2 > 3 m^2: x = -m + a* |dy| with a* = sqrt(4 m^2 / (n^2 - 3 m^2))
// and dy = n + y. Throws std::domain_error when n^2 <= 3 m^2 (the branch is
// smooth there and has no corner).
double kink_expansion(const PrimaryWave& pw, double dy);

// Frequency-gap scan at a resonant mu. alpha_plus is the minimum of
// |w^+_{ell k}(mu) - w| over 0 < |ell| < ell_cutoff, alpha_minus the analogue
// over ell != 1, both capped by the tail bound buoyancy_N; w is the doubled
// frequency. ell_cutoff is the smallest integer with
// (ell_cutoff - 1) * Omega(k) > 3 N. near_exceptional is set when either
// alpha drops below gap_threshold. Requires |F(mu)| <= resonance_tol.
GapReport gap_alpha(const PrimaryWave& pw, const FloquetPoint& mu,
                    double gap_threshold = 1e-3, double resonance_tol = 1e-8);

} // namespace igw

#endif
