#ifndef IGW_SPECTRAL_HPP
#define IGW_SPECTRAL_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "igw/bloch.hpp"
#include "igw/resonance.hpp"

#include "json.hpp"

namespace igw {

// Spectrum of the truncated operator around one resonant Floquet point.
// eigenvalues are sorted by real part, then imaginary part.  max_re is
// taken over the full spectrum; pred_max_re is eps * sqrt(e) when e > 0.
struct SpectrumReport {
    PrimaryWave pw;
    FloquetPoint mu;
    int M = 0;
    GapReport gap;
    std::vector<std::complex<double>> eigenvalues;
    std::array<std::complex<double>, 2> unstable_pair{};
    double w_ref = 0.0;
    double max_re = 0.0;
    double pred_max_re = 0.0;
    double residual = 0.0;
    double conv_gap = 0.0;
};

// Least-squares slope of log |h(t)| over the trailing half of a direct
// integration, with the window and fit residual it came from.
struct GrowthFit {
    double rate = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
    double residual_rms = 0.0;
    std::uint64_t seed = 0;
    bool degenerate = false;
};

struct ConvergenceRow {
    int M = 0;
    double max_re = 0.0;
    double delta = 0.0;
};

// Full spectrum of the truncated operator, sorted by (Re, Im).
std::vector<std::complex<double>> eig_all(const TruncatedOperator& T);

// Assembles the operator at truncation M, isolates the two eigenvalues
// nearest i w_ref, and re-solves at 2M for the convergence gap.  Throws
// solver_error when the resonant cluster is not a clean pair inside the
// half-gap disc.  Requires pw.epsilon <= 0.05.
SpectrumReport spectrum_report(const PrimaryWave& pw, const FloquetPoint& mu, int M,
                               double gap_threshold = 1e-3, double tol = 1e-8);

// RK4 integration of dh/dt = A h from a seeded random start.  The step
// must satisfy dt * |A|_inf < 2.8.  The growth rate is fit on t in
// [t_end/2, t_end].
GrowthFit growth_sim(const PrimaryWave& pw, const FloquetPoint& mu, int M,
                     double t_end, double dt, std::uint64_t seed);

std::vector<ConvergenceRow> convergence_study(const PrimaryWave& pw, const FloquetPoint& mu,
                                              const std::vector<int>& Ms);

void write_spectrum_csv(const std::vector<std::complex<double>>& eigs, std::ostream& os);

// Worst pair distance of a greedy nearest-neighbour matching between two
// spectra of equal size.  Robust against reorderings that a plain sorted
// comparison would scramble near the imaginary axis.
double spectrum_match_distance(const std::vector<std::complex<double>>& a,
                               const std::vector<std::complex<double>>& b);

// Fixed key order: pw, mu, M, eps, max_re, pred_max_re, residual, conv_gap.
nlohmann::ordered_json report_json(const SpectrumReport& rep);

} // namespace igw

#endif
