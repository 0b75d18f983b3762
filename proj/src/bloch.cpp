#include "igw/bloch.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

#include "igw/format.hpp"

namespace igw {

namespace {

constexpr std::complex<double> I{0.0, 1.0};

void check_collision(const Eigen::Vector2d& q, int n) {
    if (q.norm() == 0.0)
        throw std::domain_error("lattice collision: n k + mu = 0 at harmonic n = " + std::to_string(n));
}

} // namespace

Eigen::Matrix2cd l0_block(const PrimaryWave& pw, const FloquetPoint& mu, int n) {
    const Eigen::Vector2d q = n * pw.wavevector() + mu.vec();
    check_collision(q, n);
    const double N = pw.buoyancy_N;
    const double a = n * pw.m_hat + mu.mu1;
    const double cq = phase_speed(pw).dot(q);
    Eigen::Matrix2cd B;
    B << I * cq, -I * N * N * a / q.squaredNorm(),
         -I * a, I * cq;
    return B;
}

Eigen::Matrix2cd l1_block(const PrimaryWave& pw, const FloquetPoint& mu, int q1) {
    const Eigen::Vector2d q = q1 * pw.wavevector() + mu.vec();
    check_collision(q, q1);
    const double N = pw.buoyancy_N;
    const double kn = pw.wavevector_norm();
    const double kpmu = pw.wavevector_perp().dot(mu.vec());
    const double q2 = q.squaredNorm();
    Eigen::Matrix2cd B;
    B << -I * kpmu / (N * kn), I * kpmu / q2,
         0.0, -I * kpmu / (N * kn) + I * kn * kpmu / (N * q2);
    return 0.5 * pw.epsilon * B;
}

TruncatedOperator assemble(const PrimaryWave& pw, const FloquetPoint& mu, int M) {
    validate(pw);
    if (M < 0)
        throw std::invalid_argument("truncation M must be non-negative");
    TruncatedOperator T;
    T.pw = pw;
    T.mu = mu;
    T.M = M;
    T.entries = Eigen::MatrixXcd::Zero(T.dim(), T.dim());
    for (int n = -M; n <= M; ++n) {
        const int c = T.block_start(n);
        T.entries.block<2, 2>(c, c) = l0_block(pw, mu, n);
        const Eigen::Matrix2cd C = l1_block(pw, mu, n);
        for (int dst : {n - 1, n + 1}) {
            if (dst < -M || dst > M)
                continue;
            T.entries.block<2, 2>(T.block_start(dst), c) = C;
        }
    }
    return T;
}

TruncatedOperator band_project(const TruncatedOperator& T, int band) {
    if (band < -2 * T.M || band > 2 * T.M)
        throw std::invalid_argument("band offset outside [-2M, 2M]");
    TruncatedOperator P = T;
    P.entries.setZero();
    for (int src = -T.M; src <= T.M; ++src) {
        const int dst = src + band;
        if (dst < -T.M || dst > T.M)
            continue;
        P.entries.block<2, 2>(P.block_start(dst), P.block_start(src)) =
            T.entries.block<2, 2>(T.block_start(dst), T.block_start(src));
    }
    return P;
}

Eigen::VectorXcd apply(const TruncatedOperator& T, const Eigen::VectorXcd& coeffs) {
    if (coeffs.size() != T.dim())
        throw std::invalid_argument("coefficient vector length must be 2(2M+1) = " + std::to_string(T.dim()));
    return T.entries * coeffs;
}

void write_matrix_csv(const TruncatedOperator& T, std::ostream& os) {
    os << "row,col,re,im\n";
    for (int r = 0; r < T.dim(); ++r)
        for (int c = 0; c < T.dim(); ++c) {
            const std::complex<double> v = T.entries(r, c);
            os << r << ',' << c << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << '\n';
        }
}

} // namespace igw
