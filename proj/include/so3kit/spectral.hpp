#ifndef SO3KIT_SPECTRAL_HPP
#define SO3KIT_SPECTRAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "so3kit/rotations.hpp"
#include "so3kit/special_functions.hpp"

namespace so3kit {

using Complex = std::complex<double>;

/// Complex samples on the 2B x 2B equiangular grid; row j = colatitude
/// ring, column k = longitude.
struct SphereSignal {
  int bandwidth = 0;
  Eigen::MatrixXcd samples;

  static SphereSignal zero(int bandwidth);
};

/// Ragged spherical-harmonics coefficient table f_l^m, 0 <= l < lmax,
/// |m| <= l. lmax^2 coefficients in total.
struct SphSpectrum {
  int lmax = 0;
  std::vector<Eigen::VectorXcd> coeffs;  // coeffs[l](m + l)

  static SphSpectrum zero(int lmax);
  Complex& at(int l, int m) { return coeffs[l](m + l); }
  Complex at(int l, int m) const { return coeffs[l](m + l); }
};

/// Complex samples on the 2B x 2B x 2B Euler grid: alpha_j = pi j / B,
/// beta_k as in SphereGrid, gamma_l = pi l / B. Flat row-major (j, k, l).
struct SO3Signal {
  int bandwidth = 0;
  std::vector<Complex> samples;

  static SO3Signal zero(int bandwidth);
  int size() const { return 2 * bandwidth; }
  Complex& at(int j, int k, int l) { return samples[(j * size() + k) * size() + l]; }
  Complex at(int j, int k, int l) const { return samples[(j * size() + k) * size() + l]; }
};

/// Fourier blocks f^(rho_l): one (2l+1) x (2l+1) complex matrix per degree,
/// in the normalized-Haar convention f^(rho) = int f(g) rho(g)^* dg.
struct SO3Spectrum {
  int lmax = 0;
  std::vector<Eigen::MatrixXcd> blocks;

  static SO3Spectrum zero(int lmax);
  Eigen::MatrixXcd& block(int l) { return blocks[l]; }
  const Eigen::MatrixXcd& block(int l) const { return blocks[l]; }
};

/// Forward spherical-harmonics transform over the Driscoll-Healy grid;
/// exact for signals band-limited below B. Output lmax = B.
SphSpectrum sht_forward(const SphereSignal& f);

/// Synthesis on the 2B x 2B grid. Throws BandwidthMismatch if lmax > B.
SphereSignal sht_inverse(const SphSpectrum& s, int bandwidth);

/// SO(3) Fourier transform with normalized Haar measure
/// (1/(8 pi^2)) dalpha sin(beta) dbeta dgamma; exact below bandwidth B.
SO3Spectrum so3_ft_forward(const SO3Signal& f);

/// Inversion f(g) = sum_l (2l+1) tr(f^(rho_l) rho_l(g)).
SO3Signal so3_ft_inverse(const SO3Spectrum& s, int bandwidth);

/// Pointwise synthesis of a sphere spectrum at an arbitrary point.
Complex synthesize(const SphSpectrum& s, const SpherePoint& x);

/// Pointwise synthesis of an SO(3) spectrum at an arbitrary rotation.
Complex synthesize(const SO3Spectrum& s, const EulerZYZ& g);

/// Coefficients of x -> f(g^-1 x): fhat_l -> rho_l(g) fhat_l.
SphSpectrum rotate(const SphSpectrum& s, const EulerZYZ& g);

/// Coefficients of v -> f(g^-1 v) on SO(3): block_l -> block_l rho_l(g^-1).
SO3Spectrum rotate(const SO3Spectrum& s, const EulerZYZ& g);

/// Weighted grid energy sum_jk w_j (pi/B) |f_jk|^2; equals the spectral
/// energy sum |fhat|^2 for band-limited signals (area-measure Parseval).
double grid_energy(const SphereSignal& f);

}  // namespace so3kit

#endif
