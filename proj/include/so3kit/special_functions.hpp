#ifndef SO3KIT_SPECIAL_FUNCTIONS_HPP
#define SO3KIT_SPECIAL_FUNCTIONS_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "so3kit/rotations.hpp"

namespace so3kit {

/// Degree-l irreducible representation matrix of SO(3) evaluated at a
/// rotation: entries D_{mn} = exp(-i(m alpha + n gamma)) P_{mn}(cos beta)
/// for m, n in {-l..l}. Unitary; D(g1 g2) = D(g1) D(g2).
struct WignerD {
  int degree = 0;
  Eigen::MatrixXcd entries;  // (2l+1) x (2l+1), row m, column n, offset l

  std::complex<double> at(int m, int n) const { return entries(m + degree, n + degree); }
};

/// Legendre polynomial P_l(x), |x| <= 1.
double legendre(int l, double x);

/// Associated Legendre P_l^m(x) for 0 <= m <= l, |x| <= 1, including the
/// Condon-Shortley factor, i.e. P_1^1(0) = -1.
///
/// Note on phases: the whole module follows one internally consistent
/// convention in which P_l^m(x) = sqrt((l+m)!/(l-m)!) wigner_d(l,..)(m,0),
/// spherical harmonics carry the Condon-Shortley sign, and the Wigner
/// matrices below are the standard ones. Tables from sources with other
/// global phases may differ by factors of (-1)^m.
double assoc_legendre(int l, int m, double x);

/// Wigner d-matrix: entry (m, n) is P_{mn}^l(cos beta); real orthogonal,
/// identity at beta = 0, satisfies P_{mn} = P_{-n,-m}.
/// A closed-form sum is used for l <= 16 and a three-term recurrence in l
/// above that (the closed form loses digits to factorial-ratio cancellation).
Eigen::MatrixXd wigner_d(int l, double beta);

WignerD wigner_D(int l, const EulerZYZ& g);

/// Spherical harmonic Y_l^m(theta, phi), |m| <= l. Negative m via
/// conj(Y_l^m) = (-1)^m Y_l^{-m}.
std::complex<double> sph_harm(int l, int m, const SpherePoint& x);

/// Column vector (Y_l^{-l}(x), ..., Y_l^{l}(x)).
Eigen::VectorXcd sph_harm_vector(int l, const SpherePoint& x);

/// Y_l(g.x) evaluated spectrally as conj(D_l(g)) Y_l(x); agrees with direct
/// evaluation of sph_harm at act_on_point(g, x).
Eigen::VectorXcd rotate_sph_harm_vector(int l, const EulerZYZ& g, const SpherePoint& x);

/// Wigner d-matrices for all degrees l < lmax at each colatitude of a
/// sphere grid. Immutable after construction; row index = grid ring j,
/// inner index = degree l.
class WignerTable {
 public:
  WignerTable(const SphereGrid& grid, int lmax);
  int lmax() const { return lmax_; }
  const Eigen::MatrixXd& d(int ring, int l) const { return tables_[ring][l]; }

 private:
  int lmax_;
  std::vector<std::vector<Eigen::MatrixXd>> tables_;
};

}  // namespace so3kit

#endif
