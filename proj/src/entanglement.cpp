#include "igw/entanglement.hpp"

#include <cmath>
#include <stdexcept>

#include "igw/bloch.hpp"

namespace igw {

namespace {

constexpr std::complex<double> I{0.0, 1.0};

bool indices_couple(int ell, int band, int j_dst, int j_src) {
    if (j_dst - j_src != band)
        return false;
    if (ell == 0)
        return band == 0;
    if (ell == 1)
        return band == 1 || band == -1;
    return false;
}

} // namespace

EntCoefficient coeff_indices(CoeffId id) {
    EntCoefficient c;
    switch (id) {
    case CoeffId::E1DownMinusMinus:
        c = {EntKind::E, 1, -1, 1, 0, -1, -1, {}};
        break;
    case CoeffId::E1UpPlusPlus:
        c = {EntKind::E, 1, +1, 0, 1, +1, +1, {}};
        break;
    case CoeffId::L0ZeroPlusMinus:
        c = {EntKind::L, 0, 0, 0, 0, -1, +1, {}};
        break;
    case CoeffId::L0ZeroMinusPlus:
        c = {EntKind::L, 0, 0, 0, 0, +1, -1, {}};
        break;
    case CoeffId::L0OnePlusMinus:
        c = {EntKind::L, 0, 0, 1, 1, -1, +1, {}};
        break;
    case CoeffId::L0OneMinusPlus:
        c = {EntKind::L, 0, 0, 1, 1, +1, -1, {}};
        break;
    case CoeffId::L1UpMinusPlus:
        c = {EntKind::L, 1, +1, 0, 1, +1, -1, {}};
        break;
    case CoeffId::L1DownPlusMinus:
        c = {EntKind::L, 1, -1, 1, 0, -1, +1, {}};
        break;
    }
    return c;
}

std::complex<double> ent_coeff_bruteforce(const PrimaryWave& pw, const FloquetPoint& mu,
                                          EntKind kind, int ell, int band,
                                          int j_dst, int j_src,
                                          int sigma_dst, int sigma_src) {
    if (sigma_dst * sigma_dst != 1 || sigma_src * sigma_src != 1)
        throw std::invalid_argument("branch sign must be +1 or -1");
    if (!indices_couple(ell, band, j_dst, j_src))
        return {0.0, 0.0};

    const Eigen::Vector2cd f_src = eigvec_coeff(pw, mu, Mode{j_src, sigma_src});
    const Eigen::Matrix2cd B = ell == 0 ? l0_block(pw, mu, j_src) : l1_block(pw, mu, j_src);
    Eigen::Vector2cd v = B * f_src;
    if (kind == EntKind::E) {
        const std::complex<double> jfac = I * (j_dst * pw.m_hat + mu.mu1);
        v = jfac * Eigen::Vector2cd(v(1), v(0));
    }
    const Eigen::Vector2cd f_dst = eigvec_coeff(pw, mu, Mode{j_dst, sigma_dst});
    return v(0) * f_dst(0) + v(1) * f_dst(1);
}

std::complex<double> closed_form(const PrimaryWave& pw, const FloquetPoint& mu, CoeffId id) {
    validate(pw);
    const double N = pw.buoyancy_N;
    const double eps = pw.epsilon;
    const double kn = pw.wavevector_norm();
    const double mun = mu.vec().norm();
    const double kmun = (pw.wavevector() + mu.vec()).norm();
    const double kpm = pw.wavevector_perp().dot(mu.vec());
    switch (id) {
    case CoeffId::E1DownMinusMinus:
        return 0.25 * eps * kpm * mu.mu1 * (kmun - kn) * (kmun + kn + mun) / (kn * kmun);
    case CoeffId::E1UpPlusPlus:
        return 0.25 * eps * kpm * (pw.m_hat + mu.mu1) * (mun + kn) * (kn - mun - kmun) / (kn * mun);
    case CoeffId::L0ZeroPlusMinus:
        return I * w_freq(pw, mu, Mode{0, -1}) * 0.5 * (N * N - mun * mun);
    case CoeffId::L0ZeroMinusPlus:
        return I * w_freq(pw, mu, Mode{0, +1}) * 0.5 * (N * N - mun * mun);
    case CoeffId::L0OnePlusMinus:
        return I * w_freq(pw, mu, Mode{1, -1}) * 0.5 * (N * N - kmun * kmun);
    case CoeffId::L0OneMinusPlus:
        return I * w_freq(pw, mu, Mode{1, +1}) * 0.5 * (N * N - kmun * kmun);
    case CoeffId::L1UpMinusPlus:
        return -0.25 * I * eps * kpm * (kn + mun) * ((kn - mun) * kmun + N * N) / (kn * mun * N);
    case CoeffId::L1DownPlusMinus:
        return 0.25 * I * eps * kpm * (kmun - kn) * ((kmun + kn) * mun - N * N) / (kn * kmun * N);
    }
    throw std::invalid_argument("unknown coefficient id");
}

double residue_coeff(const PrimaryWave& pw, const FloquetPoint& mu,
                     Mode dst, Mode src,
                     double w_ref, double gap, double boundary_tol) {
    if (!(gap > 0.0))
        throw std::invalid_argument("gap must be positive");
    const double w_dst = w_freq(pw, mu, dst);
    const double w_src = w_freq(pw, mu, src);
    const double half = 0.5 * gap;
    for (double w : {w_dst, w_src})
        if (std::abs(std::abs(w - w_ref) - half) < boundary_tol)
            throw std::domain_error("frequency sits on the resonant cluster boundary");
    const bool in_dst = std::abs(w_dst - w_ref) < half;
    const bool in_src = std::abs(w_src - w_ref) < half;
    if (in_dst == in_src)
        return 0.0;
    const double w_out = in_dst ? w_src : w_dst;
    return 1.0 / (w_out - w_ref);
}

std::vector<std::pair<Mode, std::complex<double>>>
jet_action(const PrimaryWave& pw, const FloquetPoint& mu, int ell, int band, Mode src) {
    if (!indices_couple(ell, band, src.n + band, src.n))
        throw std::invalid_argument("unsupported operator harmonic or band offset");
    const int j_dst = src.n + band;
    // Shares the collision guard with the normalization coefficient.
    const double d = d_coeff(pw, mu, j_dst * pw.wavevector());
    std::vector<std::pair<Mode, std::complex<double>>> out;
    if (ell == 0) {
        // The zeroth jet is a Fourier multiplier on the eigenbasis.
        out.emplace_back(src, std::complex<double>{0.0, w_freq(pw, mu, src)});
        return out;
    }
    for (int s : {+1, -1}) {
        const std::complex<double> E =
            ent_coeff_bruteforce(pw, mu, EntKind::E, ell, band, j_dst, src.n, s, src.sigma);
        const std::complex<double> c = double(s) * I * d * E;
        if (c == std::complex<double>{0.0, 0.0})
            continue;
        out.emplace_back(Mode{j_dst, s}, c);
    }
    return out;
}

} // namespace igw
