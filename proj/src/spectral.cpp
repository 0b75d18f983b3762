#include "igw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "igw/format.hpp"
#include "igw/reduced.hpp"

namespace igw {

namespace {

// Linear congruential generator, 64-bit state, high 32 bits used.
// The state advances before each extraction; outputs lie in [-1, 1].
struct Lcg {
    std::uint64_t s;

    explicit Lcg(std::uint64_t seed) : s(seed) {}

    double next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        const std::uint32_t u = static_cast<std::uint32_t>(s >> 32);
        return 2.0 * static_cast<double>(u) / 4294967295.0 - 1.0;
    }
};

bool lex_less(const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

double max_real_part(const std::vector<std::complex<double>>& eigs) {
    double mr = -std::numeric_limits<double>::infinity();
    for (const auto& z : eigs)
        mr = std::max(mr, z.real());
    return mr;
}

} // namespace

std::vector<std::complex<double>> eig_all(const TruncatedOperator& T) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(T.entries, false);
    if (es.info() != Eigen::Success)
        throw solver_error("eigenvalue iteration did not converge at M = " + std::to_string(T.M));
    std::vector<std::complex<double>> out(es.eigenvalues().data(),
                                          es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

SpectrumReport spectrum_report(const PrimaryWave& pw, const FloquetPoint& mu, int M,
                               double gap_threshold, double tol) {
    validate(pw);
    if (pw.epsilon > 0.05)
        throw std::invalid_argument("amplitude outside the perturbative range [0, 0.05]");

    SpectrumReport rep;
    rep.pw = pw;
    rep.mu = mu;
    rep.M = M;
    rep.w_ref = w_underline(pw, mu, tol);
    rep.gap = gap_alpha(pw, mu, gap_threshold, tol);
    rep.eigenvalues = eig_all(assemble(pw, mu, M));

    const std::complex<double> target{0.0, rep.w_ref};
    const double half = 0.5 * std::min(rep.gap.alpha_plus, rep.gap.alpha_minus);
    int inside = 0;
    for (const auto& z : rep.eigenvalues)
        if (std::abs(z - target) < half)
            ++inside;
    if (inside > 2)
        throw solver_error("resonant cluster is not isolated: " + std::to_string(inside) +
                           " eigenvalues within the half gap");

    std::vector<std::complex<double>> by_dist = rep.eigenvalues;
    std::partial_sort(by_dist.begin(), by_dist.begin() + 2, by_dist.end(),
                      [&](const std::complex<double>& a, const std::complex<double>& b) {
                          return std::abs(a - target) < std::abs(b - target);
                      });
    rep.unstable_pair = {by_dist[0], by_dist[1]};
    if (lex_less(rep.unstable_pair[1], rep.unstable_pair[0]))
        std::swap(rep.unstable_pair[0], rep.unstable_pair[1]);

    rep.max_re = max_real_part(rep.eigenvalues);
    const double e = e_mu(pw, mu, tol);
    rep.pred_max_re = e > 0.0 ? pw.epsilon * std::sqrt(e) : 0.0;
    rep.residual = std::abs(rep.max_re - rep.pred_max_re);
    rep.conv_gap = std::abs(rep.max_re - max_real_part(eig_all(assemble(pw, mu, 2 * M))));
    return rep;
}

GrowthFit growth_sim(const PrimaryWave& pw, const FloquetPoint& mu, int M,
                     double t_end, double dt, std::uint64_t seed) {
    if (!(dt > 0.0) || !(t_end > 0.0))
        throw std::invalid_argument("integration time and step must be positive");
    const long nsteps = std::lround(t_end / dt);
    if (nsteps < 4)
        throw std::invalid_argument("integration window holds fewer than 4 steps");

    const TruncatedOperator T = assemble(pw, mu, M);
    const Eigen::MatrixXcd& A = T.entries;
    const double norm_inf = A.cwiseAbs().rowwise().sum().maxCoeff();
    if (dt * norm_inf >= 2.8)
        throw std::invalid_argument("time step unstable for this truncation: dt |A| = " +
                                    std::to_string(dt * norm_inf));

    Lcg rng(seed);
    Eigen::VectorXcd h(T.dim());
    for (int i = 0; i < T.dim(); ++i) {
        const double re = rng.next();
        const double im = rng.next();
        h(i) = {re, im};
    }

    std::vector<double> logn(static_cast<std::size_t>(nsteps) + 1);
    logn[0] = std::log(h.norm());
    Eigen::VectorXcd k1(T.dim()), k2(T.dim()), k3(T.dim()), k4(T.dim()), tmp(T.dim());
    for (long i = 1; i <= nsteps; ++i) {
        k1.noalias() = A * h;
        tmp = h + (0.5 * dt) * k1;
        k2.noalias() = A * tmp;
        tmp = h + (0.5 * dt) * k2;
        k3.noalias() = A * tmp;
        tmp = h + dt * k3;
        k4.noalias() = A * tmp;
        h += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        logn[static_cast<std::size_t>(i)] = std::log(h.norm());
    }

    const long i0 = (nsteps + 1) / 2;
    const long n = nsteps - i0 + 1;
    double tbar = 0.0, ybar = 0.0;
    for (long i = i0; i <= nsteps; ++i) {
        tbar += static_cast<double>(i) * dt;
        ybar += logn[static_cast<std::size_t>(i)];
    }
    tbar /= static_cast<double>(n);
    ybar /= static_cast<double>(n);
    double stt = 0.0, sty = 0.0;
    bool finite = true;
    double spread = 0.0;
    for (long i = i0; i <= nsteps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double y = logn[static_cast<std::size_t>(i)];
        finite = finite && std::isfinite(y);
        spread = std::max(spread, std::abs(y - ybar));
        stt += (t - tbar) * (t - tbar);
        sty += (t - tbar) * (y - ybar);
    }
    GrowthFit fit;
    fit.rate = sty / stt;
    fit.t_start = static_cast<double>(i0) * dt;
    fit.t_end = static_cast<double>(nsteps) * dt;
    fit.seed = seed;
    double ss = 0.0;
    for (long i = i0; i <= nsteps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double r = logn[static_cast<std::size_t>(i)] - (ybar + fit.rate * (t - tbar));
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / static_cast<double>(n));
    fit.degenerate = !finite || spread < 1e-9;
    return fit;
}

std::vector<ConvergenceRow> convergence_study(const PrimaryWave& pw, const FloquetPoint& mu,
                                              const std::vector<int>& Ms) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(Ms.size());
    for (int M : Ms) {
        ConvergenceRow row;
        row.M = M;
        row.max_re = max_real_part(eig_all(assemble(pw, mu, M)));
        row.delta = rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                 : std::abs(row.max_re - rows.back().max_re);
        rows.push_back(row);
    }
    return rows;
}

void write_spectrum_csv(const std::vector<std::complex<double>>& eigs, std::ostream& os) {
    std::vector<std::complex<double>> sorted = eigs;
    std::sort(sorted.begin(), sorted.end(), lex_less);
    os << "re,im\n";
    for (const auto& z : sorted)
        os << fmt17(z.real()) << ',' << fmt17(z.imag()) << '\n';
}

double spectrum_match_distance(const std::vector<std::complex<double>>& a,
                               const std::vector<std::complex<double>>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("spectra must have equal size");
    std::vector<bool> used(b.size(), false);
    double worst = 0.0;
    for (const auto& z : a) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j])
                continue;
            const double d = std::abs(z - b[j]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        used[best_j] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

nlohmann::ordered_json report_json(const SpectrumReport& rep) {
    nlohmann::ordered_json j;
    j["pw"] = {{"m_hat", rep.pw.m_hat},
               {"n_hat", rep.pw.n_hat},
               {"N", rep.pw.buoyancy_N},
               {"eps", rep.pw.epsilon}};
    j["mu"] = {rep.mu.mu1, rep.mu.mu2};
    j["M"] = rep.M;
    j["eps"] = rep.pw.epsilon;
    j["max_re"] = rep.max_re;
    j["pred_max_re"] = rep.pred_max_re;
    j["residual"] = rep.residual;
    j["conv_gap"] = rep.conv_gap;
    return j;
}

} // namespace igw
