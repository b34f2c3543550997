#include "so3kit/rotations.hpp"

#include <cmath>

#include "so3kit/errors.hpp"

namespace so3kit {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double mod_2pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  // fmod can round back up to 2pi for tiny negative inputs
  if (r >= kTwoPi) r = 0.0;
  return r;
}
}  // namespace

EulerZYZ::EulerZYZ(double a, double b, double g) {
  // Reduce beta into [0, pi]; Ry(b) with b in (pi, 2pi) equals
  // Rz(pi) Ry(2pi - b) Rz(-pi), so alpha and gamma shift by pi.
  double br = mod_2pi(b);
  if (br > kPi) {
    br = kTwoPi - br;
    a += kPi;
    g += kPi;
  }
  alpha = mod_2pi(a);
  beta = br;
  gamma = mod_2pi(g);
}

SpherePoint::SpherePoint(double t, double p) {
  double tr = mod_2pi(t);
  if (tr > kPi) {  // same reduction as EulerZYZ beta
    tr = kTwoPi - tr;
    p += kPi;
  }
  theta = tr;
  phi = mod_2pi(p);
}

Eigen::Vector3d SpherePoint::unit_vector() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double SphereGrid::phi_weight() const { return kPi / bandwidth; }

namespace {
RotationMatrix rot_z(double a) {
  RotationMatrix r;
  r << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  return r;
}

RotationMatrix rot_y(double b) {
  RotationMatrix r;
  r << std::cos(b), 0, std::sin(b), 0, 1, 0, -std::sin(b), 0, std::cos(b);
  return r;
}
}  // namespace

RotationMatrix euler_to_matrix(const EulerZYZ& e) {
  return rot_z(e.alpha) * rot_y(e.beta) * rot_z(e.gamma);
}

bool is_rotation_matrix(const RotationMatrix& r, double tol) {
  double ortho = (r.transpose() * r - RotationMatrix::Identity()).cwiseAbs().maxCoeff();
  return ortho <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

EulerZYZ matrix_to_euler(const RotationMatrix& r) {
  if (!is_rotation_matrix(r)) {
    throw NonOrthogonalInput("matrix_to_euler: input is not a rotation matrix");
  }
  const double sb = std::sqrt(r(0, 2) * r(0, 2) + r(1, 2) * r(1, 2));
  if (sb > 1e-12) {
    EulerZYZ e;
    e.alpha = mod_2pi(std::atan2(r(1, 2), r(0, 2)));
    e.beta = std::atan2(sb, r(2, 2));
    e.gamma = mod_2pi(std::atan2(r(2, 1), -r(2, 0)));
    return e;
  }
  // gimbal: R is Rz(alpha) (beta=0) or Rz(alpha) Ry(pi) (beta=pi)
  EulerZYZ e;
  e.gamma = 0.0;
  if (r(2, 2) > 0) {
    e.beta = 0.0;
    e.alpha = mod_2pi(std::atan2(r(1, 0), r(0, 0)));
  } else {
    e.beta = kPi;
    e.alpha = mod_2pi(std::atan2(-r(1, 0), -r(0, 0)));
  }
  return e;
}

EulerZYZ compose(const EulerZYZ& g1, const EulerZYZ& g2) {
  return matrix_to_euler(euler_to_matrix(g1) * euler_to_matrix(g2));
}

EulerZYZ inverse(const EulerZYZ& g) {
  return matrix_to_euler(euler_to_matrix(g).transpose());
}

SpherePoint act_on_point(const EulerZYZ& g, const SpherePoint& x) {
  Eigen::Vector3d v = euler_to_matrix(g) * x.unit_vector();
  const double s = std::hypot(v.x(), v.y());
  // atan2 keeps full precision near the poles where acos(v_z) loses half
  // the significant digits
  double theta = std::atan2(s, v.z());
  double phi = std::atan2(v.y(), v.x());
  if (phi < 0) phi += kTwoPi;
  if (s < 1e-15) phi = 0.0;  // poles: canonical longitude
  return SpherePoint(theta, phi);
}

SphereGrid make_sphere_grid(int bandwidth) {
  if (bandwidth < 1) throw DomainError("make_sphere_grid: bandwidth must be >= 1");
  const int n = 2 * bandwidth;
  SphereGrid grid;
  grid.bandwidth = bandwidth;
  grid.thetas.resize(n);
  grid.phis.resize(n);
  grid.weights.resize(n);
  for (int j = 0; j < n; ++j) grid.thetas[j] = kPi * (2 * j + 1) / (4.0 * bandwidth);
  for (int k = 0; k < n; ++k) grid.phis[k] = kPi * k / bandwidth;
  // Driscoll-Healy ring weights: w_j = (2/B) sin(t_j) sum_k sin((2k+1) t_j)/(2k+1)
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int k = 0; k < bandwidth; ++k) {
      s += std::sin((2 * k + 1) * grid.thetas[j]) / (2 * k + 1);
    }
    grid.weights[j] = (2.0 / bandwidth) * std::sin(grid.thetas[j]) * s;
  }
  return grid;
}

}  // namespace so3kit
