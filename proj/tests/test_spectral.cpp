#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdint>
#include <sstream>
#include <vector>

#include "igw/reduced.hpp"
#include "igw/resonance.hpp"
#include "igw/spectral.hpp"

using namespace igw;

namespace {

const PrimaryWave kWave{1, 1, 1.0, 1e-2};
const FloquetPoint kMuRes{0.19721632351026588, 1.0};

PrimaryWave with_eps(double eps) {
    PrimaryWave pw = kWave;
    pw.epsilon = eps;
    return pw;
}

} // namespace

TEST_CASE("spectrum at a single harmonic") {
    PrimaryWave quiet = with_eps(0.0);
    const auto eigs = eig_all(assemble(quiet, kMuRes, 0));
    REQUIRE(eigs.size() == 2);
    std::vector<std::complex<double>> expect = {
        {0.0, w_freq(quiet, kMuRes, Mode{0, +1})},
        {0.0, w_freq(quiet, kMuRes, Mode{0, -1})},
    };
    CHECK(spectrum_match_distance(eigs, expect) < 1e-13);
}

TEST_CASE("spectral symmetries of a purely imaginary matrix") {
    // Synthetic entries, same structure class as the assembled operator.
    std::uint64_t s = 99u;
    auto draw = [&s]() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return 2.0 * (static_cast<double>(s >> 32) / 4294967295.0) - 1.0;
    };
    TruncatedOperator T{kWave, kMuRes, 1, Eigen::MatrixXcd::Zero(6, 6)};
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            T.entries(r, c) = std::complex<double>(0.0, draw());
    const auto eigs = eig_all(T);
    std::vector<std::complex<double>> mirrored;
    for (auto z : eigs)
        mirrored.push_back(-std::conj(z));
    CHECK(spectrum_match_distance(eigs, mirrored) < 1e-10);
}

TEST_CASE("negating the Floquet point conjugates the spectrum") {
    const PrimaryWave pw = with_eps(0.02);
    const FloquetPoint neg{-kMuRes.mu1, -kMuRes.mu2};
    const auto a = eig_all(assemble(pw, kMuRes, 8));
    auto b = eig_all(assemble(pw, neg, 8));
    for (auto& z : b)
        z = std::conj(z);
    CHECK(spectrum_match_distance(a, b) < 1e-10);
}

TEST_CASE("report without forcing stays on the imaginary axis") {
    const SpectrumReport rep = spectrum_report(with_eps(0.0), kMuRes, 16);
    CHECK(rep.max_re <= 1e-12);
    CHECK(rep.pred_max_re == 0.0);
    const std::complex<double> target{0.0, rep.w_ref};
    CHECK(std::abs(rep.unstable_pair[0] - target) < 1e-10);
    CHECK(std::abs(rep.unstable_pair[1] - target) < 1e-10);
}

TEST_CASE("frozen headline growth rate") {
    const SpectrumReport rep = spectrum_report(kWave, kMuRes, 32);
    CHECK(std::abs(rep.max_re - 0.002430632600607501) <= 1e-11);
    CHECK(rep.conv_gap <= 1e-10);

    // Exactly one conjugate-unstable pair leaves the axis.
    int off_axis = 0;
    for (auto z : rep.eigenvalues) {
        if (std::abs(z.real()) > 1e-8) {
            ++off_axis;
            CHECK(std::abs(z.imag() - rep.w_ref) < 1e-4);
        }
    }
    CHECK(off_axis == 2);
    CHECK(rep.unstable_pair[0].real() < 0.0);
    CHECK(rep.unstable_pair[1].real() > 0.0);
    CHECK(rep.unstable_pair[0].real()
          == doctest::Approx(-rep.unstable_pair[1].real()).epsilon(1e-6));
}

TEST_CASE("headline residual shrinks with the amplitude") {
    const SpectrumReport r4 = spectrum_report(with_eps(0.04), kMuRes, 32);
    const SpectrumReport r2 = spectrum_report(with_eps(0.02), kMuRes, 32);
    CHECK(r2.residual <= 0.35 * r4.residual);
}

TEST_CASE("amplitude range guard") {
    CHECK_THROWS_AS(spectrum_report(with_eps(0.06), kMuRes, 8), std::invalid_argument);
}

TEST_CASE("direct integration reproduces the predicted rate") {
    const PrimaryWave pw = with_eps(0.04);
    const GrowthFit fit = growth_sim(pw, kMuRes, 12, 800.0, 0.005, 12345u);
    CHECK_FALSE(fit.degenerate);
    CHECK(fit.seed == 12345u);
    CHECK(fit.t_start == doctest::Approx(400.0).epsilon(1e-12));
    CHECK(fit.t_end == doctest::Approx(800.0).epsilon(1e-12));
    const double pred = pw.epsilon * std::sqrt(e_mu(pw, kMuRes));
    CHECK(fit.rate == doctest::Approx(pred).epsilon(5e-2));

    // Same seed, same trajectory, bitwise.
    const GrowthFit again = growth_sim(pw, kMuRes, 12, 800.0, 0.005, 12345u);
    CHECK(fit.rate == again.rate);
    CHECK(fit.residual_rms == again.residual_rms);
}

TEST_CASE("integration step guard") {
    CHECK_THROWS_AS(growth_sim(kWave, kMuRes, 32, 10.0, 1.0, 1u), std::invalid_argument);
    CHECK_THROWS_AS(growth_sim(kWave, kMuRes, 4, 0.0, 0.005, 1u), std::invalid_argument);
}

TEST_CASE("truncation study") {
    const auto rows = convergence_study(kWave, kMuRes, {4, 8});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].M == 4);
    CHECK(rows[1].M == 8);
    CHECK(std::isnan(rows[0].delta));
    CHECK(rows[1].delta >= 0.0);
    CHECK(std::isfinite(rows[0].max_re));
}

TEST_CASE("spectrum dump format") {
    const auto eigs = eig_all(assemble(kWave, kMuRes, 2));
    std::ostringstream os;
    write_spectrum_csv(eigs, os);
    std::istringstream in(os.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "re,im");
    std::size_t rows = 0;
    std::complex<double> prev{-1e300, -1e300};
    while (std::getline(in, line)) {
        ++rows;
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const double re = std::stod(line.substr(0, comma));
        const double im = std::stod(line.substr(comma + 1));
        CHECK((re > prev.real() || (re == prev.real() && im >= prev.imag())));
        prev = {re, im};
    }
    CHECK(rows == eigs.size());
}

TEST_CASE("greedy spectrum matching") {
    std::vector<std::complex<double>> a = {{0.0, 1.0}, {0.0, -1.0}, {0.5, 0.0}};
    std::vector<std::complex<double>> b = {{0.5, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    CHECK(spectrum_match_distance(a, b) == 0.0);
    b.pop_back();
    CHECK_THROWS_AS(spectrum_match_distance(a, b), std::invalid_argument);
}

TEST_CASE("report serialization key order") {
    const SpectrumReport rep = spectrum_report(kWave, kMuRes, 4);
    const nlohmann::ordered_json j = report_json(rep);
    std::vector<std::string> keys;
    for (const auto& item : j.items())
        keys.push_back(item.key());
    const std::vector<std::string> expect = {"pw",         "mu",       "M",
                                             "eps",        "max_re",   "pred_max_re",
                                             "residual",   "conv_gap"};
    CHECK(keys == expect);
    CHECK(j["pw"]["m_hat"] == 1);
    CHECK(j["mu"][1] == 1.0);
    CHECK(j["M"] == 4);
}
