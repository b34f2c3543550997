#ifndef SO3KIT_EQUIVARIANT_OPS_HPP
#define SO3KIT_EQUIVARIANT_OPS_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "so3kit/rotations.hpp"
#include "so3kit/spectral.hpp"

namespace so3kit {

/// Orthogonal change of basis block-diagonalizing rho_{l1} x rho_{l2} into
/// the direct sum of rho_l, l = |l1-l2| .. l1+l2. Rows are tensor pairs
/// (m1, m2) with m2 fastest; columns are partitioned by output degree,
/// ascending l, m ascending within each block.
struct CGTable {
  int l1 = 0, l2 = 0;
  Eigen::MatrixXd C;

  int block_offset(int l) const;  // first column of the degree-l block
  Eigen::MatrixXd block(int l) const { return C.middleCols(block_offset(l), 2 * l + 1); }
};

/// Clebsch-Gordan coefficients by lowering-operator recursion from each
/// highest-weight vector; sign fixed so the coefficient at the largest m1
/// of every block is positive.
CGTable cg_table(int l1, int l2);

/// Memoized view keyed by (l1, l2); safe for concurrent readers.
const CGTable& cg_table_cached(int l1, int l2);

/// Row vector of length 2l+1 transforming as f -> f rho_l(g^-1).
struct Fragment {
  int degree = 0;
  Eigen::RowVectorXcd values;
};

/// Spherical cross-correlation (f x k)(g) = int_{S^2} k(g^-1 x) f(x) dx as
/// an SO(3) spectrum: block_l = khat_l conj(fhat_l)^T / (2l+1). With the
/// normalized-Haar SO(3) transform convention this is the paper's
/// outer-product rule restated so that so3_ft_inverse of the result equals
/// the spatial correlation of real inputs exactly.
SO3Spectrum spherical_correlate(const SphSpectrum& f, const SphSpectrum& k);

/// Spherical convolution (f * k)(x) = int_{SO(3)} f(g nu) k(g^-1 x) dg
/// (unnormalized measure dalpha sin(beta) dbeta dgamma):
/// out_l^m = 2 pi sqrt(4pi/(2l+1)) fhat_l^m khat_l^0.
SphSpectrum spherical_convolve(const SphSpectrum& f, const SphSpectrum& k);

/// SO(3) convolution (f * k)(g) = int f(u) k(u^-1 g) du: block_l = khat_l fhat_l.
SO3Spectrum so3_convolve(const SO3Spectrum& f, const SO3Spectrum& k);

/// SO(3) cross-correlation (f x k)(g) = int f(u) k(g^-1 u) du for k that is
/// real-valued in the spatial domain (not checked): block_l = khat_l^* fhat_l.
SO3Spectrum so3_correlate(const SO3Spectrum& f, const SO3Spectrum& k);

/// (a x b) C_{la,lb,l_out}: a degree-l_out fragment.
/// Throws DegreeOutOfRange unless |la-lb| <= l_out <= la+lb.
Fragment cg_fragment_product(const Fragment& a, const Fragment& b, int l_out);

/// Angular solutions of the kernel constraint
/// k(r x) = rho_{lo}(r) k(x) rho_{li}(r)^{-1}: one (2lo+1) x (2li+1) block
/// per degree l in |li-lo| .. li+lo (2 min(li,lo)+1 of them), each the
/// unvectorized CG image of conj(Y_l).
struct SteerableBasis {
  int li = 0, lo = 0;
  std::vector<int> degrees;                 // |li-lo| .. li+lo
  std::vector<Eigen::MatrixXcd> coupling;   // per degree: (2lo+1)(2li+1) x (2l+1)

  /// Evaluate the degree-l angular block at a sphere point.
  Eigen::MatrixXcd evaluate(int l, const SpherePoint& x) const;
};

SteerableBasis steerable_basis(int li, int lo);

using KernelFunction = std::function<Eigen::MatrixXcd(const SpherePoint&)>;

/// Max over `trials` random (rotation, point) pairs of
/// ||k(r x) - rho_{lo}(r) k(x) rho_{li}(r)^{-1}||_inf.
double steerable_constraint_residual(const KernelFunction& k, int li, int lo, int trials,
                                     std::uint64_t seed = 0);

/// Scale each fragment by sigmoid(gate); equivariant since scalars commute
/// with the representations.
std::vector<Fragment> gated_nonlinearity(const std::vector<Fragment>& features,
                                         const std::vector<double>& gates);

/// Grid argmax of the inverse SO(3) transform of a correlation spectrum;
/// returns the Euler angles of the best grid node and the peak value.
struct CorrelationPeak {
  EulerZYZ rotation;
  double value = 0.0;
};
CorrelationPeak correlation_peak(const SO3Spectrum& corr, int bandwidth);

}  // namespace so3kit

#endif
