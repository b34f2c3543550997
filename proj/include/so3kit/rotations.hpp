#ifndef SO3KIT_ROTATIONS_HPP
#define SO3KIT_ROTATIONS_HPP

#include <Eigen/Dense>
#include <vector>

namespace so3kit {

/// ZYZ Euler angles for SO(3): R = Rz(alpha) Ry(beta) Rz(gamma).
/// alpha, gamma in [0, 2pi), beta in [0, pi]; the constructor canonicalizes
/// any real triple into range.
struct EulerZYZ {
  EulerZYZ() : alpha(0), beta(0), gamma(0) {}
  EulerZYZ(double a, double b, double g);
  double alpha, beta, gamma;
};

using RotationMatrix = Eigen::Matrix3d;

/// Colatitude theta in [0, pi], longitude phi in [0, 2pi).
struct SpherePoint {
  SpherePoint() : theta(0), phi(0) {}
  SpherePoint(double t, double p);
  Eigen::Vector3d unit_vector() const;
  double theta, phi;
};

/// Equiangular 2B x 2B grid with theta_j = pi(2j+1)/(4B), phi_k = pi k / B
/// and closed-form quadrature weights on the theta rings.  The weights sum
/// to 2; a full-grid weighted sum times phi_weight() approximates the
/// area-measure integral (total mass 4pi), exactly so for integrands
/// band-limited below 2B.
struct SphereGrid {
  int bandwidth = 0;
  std::vector<double> thetas;   // 2B colatitudes
  std::vector<double> phis;     // 2B longitudes
  std::vector<double> weights;  // 2B ring weights, sum 2

  int size() const { return 2 * bandwidth; }
  double phi_weight() const;  // pi / B, the per-sample phi measure
  SpherePoint node(int j, int k) const { return SpherePoint(thetas[j], phis[k]); }
};

RotationMatrix euler_to_matrix(const EulerZYZ& e);

/// Inverse of euler_to_matrix. Gimbal-locked inputs (beta = 0 or pi) return
/// gamma = 0 with all z-rotation folded into alpha.
/// Throws NonOrthogonalInput if R'R or det deviate beyond 1e-8.
EulerZYZ matrix_to_euler(const RotationMatrix& r);

EulerZYZ compose(const EulerZYZ& g1, const EulerZYZ& g2);
EulerZYZ inverse(const EulerZYZ& g);

SpherePoint act_on_point(const EulerZYZ& g, const SpherePoint& x);

SphereGrid make_sphere_grid(int bandwidth);

bool is_rotation_matrix(const RotationMatrix& r, double tol = 1e-8);

}  // namespace so3kit

#endif
