#ifndef IGW_REDUCED_HPP
#define IGW_REDUCED_HPP

#include <complex>

#include <Eigen/Dense>

#include "igw/wave.hpp"

namespace igw {

// Squared eigenvector norms at the two cluster harmonics.
struct Iota {
    double iota00 = 0.0;
    double iota11 = 0.0;
};

// Off-diagonal couplings of the reduced operator on the resonant pair,
// already divided by the eigenvector norms.  Entries are per unit epsilon.
struct BCoeffs {
    double b1 = 0.0;
    double b0 = 0.0;
};

// Numerators of the reduced couplings, before the norm division.
struct Combos {
    double combo1 = 0.0;
    double combo0 = 0.0;
};

// Reduced operator on the resonant pair.  matrix() assembles
//   [[i w_ref, i eps b1], [i eps b0, i w_ref]]
// whose eigenvalues are i w_ref +- eps sqrt(-b1 b0).
struct ReducedMatrix {
    double w_ref = 0.0;
    double b1 = 0.0;
    double b0 = 0.0;
    double epsilon = 0.0;

    Eigen::Matrix2cd matrix() const;
};

struct InstabilityPrediction {
    std::complex<double> lambda_plus{0.0, 0.0};
    std::complex<double> lambda_minus{0.0, 0.0};
    double e_value = 0.0;
    bool stable = true;
};

// Energy-flux style coupling integrals of the two daughter modes.
struct PhysicsI {
    double I_plus = 0.0;
    double I_minus = 0.0;
};

// Shared frequency of the resonant pair.  Both cluster modes must agree
// to within tol, otherwise throws std::domain_error; returns the average.
double w_underline(const PrimaryWave& pw, const FloquetPoint& mu, double tol = 1e-8);

Iota cluster_norms(const PrimaryWave& pw, const FloquetPoint& mu);

// Closed forms for the reduced coupling numerators, per unit epsilon.
Combos beta_gamma_combos(const PrimaryWave& pw, const FloquetPoint& mu, double tol = 1e-8);

// Same numerators assembled from operator blocks and resolvent weights,
// per unit epsilon.  gap bounds the resonant cluster: every non-cluster
// frequency must be at least gap away from w_ref.
Combos beta_gamma_combos_residues(const PrimaryWave& pw, const FloquetPoint& mu,
                                  double gap, double tol = 1e-8);

BCoeffs b_coeffs(const PrimaryWave& pw, const FloquetPoint& mu, double tol = 1e-8);

ReducedMatrix reduced_matrix(const PrimaryWave& pw, const FloquetPoint& mu, double tol = 1e-8);

// Growth-rate discriminant e(mu) = -b1 b0.  Positive on the unstable set.
double e_mu(const PrimaryWave& pw, const FloquetPoint& mu, double tol = 1e-8);

// Perturbed eigenvalue pair of the reduced operator.  For e > 0 the pair
// splits off the imaginary axis; otherwise it stays on it and stable is set.
InstabilityPrediction lambda_pm(const PrimaryWave& pw, const FloquetPoint& mu, double tol = 1e-8);

PhysicsI physics_I(const PrimaryWave& pw, const FloquetPoint& mu);

// e(mu) reassembled from the coupling integrals.  Requires |mu| away from
// |k|; throws std::domain_error within 1e-6 of that circle.
double e_from_physics(const PrimaryWave& pw, const FloquetPoint& mu, double tol = 1e-8);

// Leading coefficient of e along the resonant curve near the origin,
// e ~ coeff * tau with mu_2 = n_hat tau.
double e_small_coeff(const PrimaryWave& pw);

// Limit of e along the upper resonant branch as mu_2 -> infinity.
double e_large_limit(const PrimaryWave& pw);

} // namespace igw

#endif
