#ifndef IGW_BLOCH_HPP
#define IGW_BLOCH_HPP

#include <complex>
#include <iosfwd>
#include <Eigen/Dense>

#include "igw/wave.hpp"

namespace igw {

// The fiber operator restricted to harmonics n in [-M, M], stored dense.
// Layout: 2x2 blocks in harmonic-major order, components (b, w) within a
// block; harmonic n occupies rows/columns 2(n + M) and 2(n + M) + 1.
// Invariants: every entry purely imaginary; blocks vanish off offsets
// {0, +1, -1}; the matrix is affine in pw.epsilon.
struct TruncatedOperator {
    PrimaryWave pw;
    FloquetPoint mu;
    int M = 0;
    Eigen::MatrixXcd entries;

    int dim() const { return 2 * (2 * M + 1); }
    int block_start(int n) const { return 2 * (n + M); }
};

// Diagonal (offset-zero) 2x2 block on harmonic n:
//   i * [ c.q        -N^2 (n m + mu1) / |q|^2 ]
//       [ -(n m + mu1)            c.q         ]
// with q = n k + mu. Its eigenvalues are i * w_freq for sigma = +-1.
// Throws std::domain_error when q = 0 (lattice collision).
Eigen::Matrix2cd l0_block(const PrimaryWave& pw, const FloquetPoint& mu, int n);

// Coupling 2x2 block from source harmonic q1 to either destination q1 +- 1:
//   (eps/2) * [ -i (kp.mu)/(N |k|)   i (kp.mu)/|q|^2                            ]
//             [ 0                    -i (kp.mu)/(N |k|) + i |k| (kp.mu)/(N |q|^2) ]
// with q = q1 k + mu and kp = (n, -m). The same matrix serves both
// destinations. Linear in eps; zero when mu is parallel to k.
Eigen::Matrix2cd l1_block(const PrimaryWave& pw, const FloquetPoint& mu, int q1);

// Assembles the truncated operator: diagonal blocks l0_block(n), first
// off-diagonal blocks l1_block with the source harmonic as argument, zero
// elsewhere. Boundary harmonics +-M simply drop their outgoing couplings.
TruncatedOperator assemble(const PrimaryWave& pw, const FloquetPoint& mu, int M);

// Keeps only the blocks at destination - source = band, zeroing the rest.
// Summing the projections over band in [-2M, 2M] restores the operator.
TruncatedOperator band_project(const TruncatedOperator& T, int band);

// Matrix-vector product. The coefficient vector must have length dim().
Eigen::VectorXcd apply(const TruncatedOperator& T, const Eigen::VectorXcd& coeffs);

// Writes all entries as CSV "row,col,re,im" (header included), zero-based,
// row-major, 17 significant digits, LF line endings.
void write_matrix_csv(const TruncatedOperator& T, std::ostream& os);

} // namespace igw

#endif
