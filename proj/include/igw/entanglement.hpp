#ifndef IGW_ENTANGLEMENT_HPP
#define IGW_ENTANGLEMENT_HPP

#include <complex>
#include <utility>
#include <vector>

#include "igw/wave.hpp"

namespace igw {

// Pairing kind for a coupling coefficient.
//   E: symplectic form applied at the destination harmonic before projecting.
//   L: plain projection onto the destination eigenvector.
enum class EntKind { E, L };

// Index tuple of one coupling coefficient
//   <(J) L_ell^[band] f_{j_src}^{sigma_src}, f_{j_dst}^{sigma_dst}>
// together with its value.  The coefficient vanishes unless
// j_dst - j_src == band and (ell, band) is (0, 0) or (1, +-1).
struct EntCoefficient {
    EntKind kind = EntKind::E;
    int ell = 0;
    int band = 0;
    int j_src = 0;
    int j_dst = 0;
    int sigma_src = +1;
    int sigma_dst = +1;
    std::complex<double> value{0.0, 0.0};
};

// The eight coefficients with closed forms.  Up/Down names the band
// (+k or -k shift), Zero/One the harmonic for the band-0 entries, and
// the trailing letters the destination/source branch signs.
enum class CoeffId {
    E1DownMinusMinus,
    E1UpPlusPlus,
    L0ZeroPlusMinus,
    L0ZeroMinusPlus,
    L0OnePlusMinus,
    L0OneMinusPlus,
    L1UpMinusPlus,
    L1DownPlusMinus,
};

// Index tuple for a catalogued coefficient; value is left zero.
EntCoefficient coeff_indices(CoeffId id);

// Coefficient evaluated by applying the operator blocks directly.
// Returns exact zero on any band or harmonic mismatch.
std::complex<double> ent_coeff_bruteforce(const PrimaryWave& pw, const FloquetPoint& mu,
                                          EntKind kind, int ell, int band,
                                          int j_dst, int j_src,
                                          int sigma_dst, int sigma_src);

// Closed-form value of a catalogued coefficient.  E entries are real,
// L entries purely imaginary; both carry the epsilon factor for ell = 1.
std::complex<double> closed_form(const PrimaryWave& pw, const FloquetPoint& mu, CoeffId id);

// First-order resolvent weight for the pair (dst, src) relative to the
// resonant frequency w_ref.  Zero when both or neither frequency lies
// within gap/2 of w_ref, otherwise 1/(w_outside - w_ref).  Throws
// std::domain_error when a frequency sits within boundary_tol of the
// gap/2 circle and the split is ambiguous.
double residue_coeff(const PrimaryWave& pw, const FloquetPoint& mu,
                     Mode dst, Mode src,
                     double w_ref, double gap, double boundary_tol = 1e-9);

// Expansion of L_ell^[band] f_src in the eigenbasis at harmonic
// j_src + band.  The coefficient of f^{s}_{j+band} is
// s * i * d_{j+band} * E(s, sigma_src); exact zeros are dropped.
std::vector<std::pair<Mode, std::complex<double>>>
jet_action(const PrimaryWave& pw, const FloquetPoint& mu, int ell, int band, Mode src);

} // namespace igw

#endif
