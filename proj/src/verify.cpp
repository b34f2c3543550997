#include "so3kit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "so3kit/equivariant_ops.hpp"
#include "so3kit/errors.hpp"
#include "so3kit/finite_groups.hpp"
#include "so3kit/io.hpp"
#include "so3kit/rng.hpp"
#include "so3kit/rotations.hpp"
#include "so3kit/special_functions.hpp"
#include "so3kit/spectral.hpp"

namespace so3kit {

namespace {
constexpr double kPi = 3.14159265358979323846;

Complex unit(SplitMix64& rng) { return Complex(rng.symmetric(), rng.symmetric()); }

SphSpectrum random_sph_spectrum(int lmax, SplitMix64& rng) {
  SphSpectrum s = SphSpectrum::zero(lmax);
  for (int l = 0; l < lmax; ++l)
    for (int m = -l; m <= l; ++m) s.at(l, m) = unit(rng);
  return s;
}

// conj(f_l^m) = (-1)^m f_l^{-m}  <=>  real spatial signal
SphSpectrum random_real_sph_spectrum(int lmax, SplitMix64& rng) {
  SphSpectrum s = SphSpectrum::zero(lmax);
  for (int l = 0; l < lmax; ++l) {
    s.at(l, 0) = Complex(rng.symmetric(), 0.0);
    for (int m = 1; m <= l; ++m) {
      const Complex c = unit(rng);
      s.at(l, m) = c;
      s.at(l, -m) = ((m & 1) ? -1.0 : 1.0) * std::conj(c);
    }
  }
  return s;
}

SO3Spectrum random_so3_spectrum(int lmax, SplitMix64& rng) {
  SO3Spectrum s = SO3Spectrum::zero(lmax);
  for (int l = 0; l < lmax; ++l)
    for (int a = -l; a <= l; ++a)
      for (int b = -l; b <= l; ++b) s.block(l)(a + l, b + l) = unit(rng);
  return s;
}

// fhat_{ab} = (-1)^{a-b} conj(fhat_{-a,-b})  <=>  real spatial signal
SO3Spectrum random_real_so3_spectrum(int lmax, SplitMix64& rng) {
  SO3Spectrum s = random_so3_spectrum(lmax, rng);
  for (int l = 0; l < lmax; ++l) {
    Eigen::MatrixXcd sym = s.block(l);
    for (int a = -l; a <= l; ++a) {
      for (int b = -l; b <= l; ++b) {
        const double sign = ((a - b) & 1) ? -1.0 : 1.0;
        sym(a + l, b + l) =
            0.5 * (s.block(l)(a + l, b + l) + sign * std::conj(s.block(l)(-a + l, -b + l)));
      }
    }
    s.block(l) = sym;
  }
  return s;
}

EulerZYZ random_rotation(SplitMix64& rng) {
  return EulerZYZ(2 * kPi * rng.uniform(), std::acos(2 * rng.uniform() - 1),
                  2 * kPi * rng.uniform());
}

EulerZYZ grid_rotation(int bandwidth, SplitMix64& rng) {
  const SphereGrid grid = make_sphere_grid(bandwidth);
  const int j = int(rng.below(2 * bandwidth));
  const int k = int(rng.below(2 * bandwidth));
  const int l = int(rng.below(2 * bandwidth));
  return EulerZYZ(kPi * j / bandwidth, grid.thetas[k], kPi * l / bandwidth);
}

CheckResult check_max(const std::string& name, double tolerance, double residual) {
  return {name, tolerance, residual, residual <= tolerance};
}

CheckResult check_min(const std::string& name, double threshold, double value) {
  return {name, threshold, value, value >= threshold};
}

double spectrum_distance(const SphSpectrum& a, const SphSpectrum& b) {
  double r = 0.0;
  for (int l = 0; l < a.lmax; ++l) r = std::max(r, (a.coeffs[l] - b.coeffs[l]).cwiseAbs().maxCoeff());
  return r;
}

double spectrum_distance(const SO3Spectrum& a, const SO3Spectrum& b) {
  double r = 0.0;
  for (int l = 0; l < a.lmax; ++l) r = std::max(r, (a.blocks[l] - b.blocks[l]).cwiseAbs().maxCoeff());
  return r;
}

double signal_distance(const SphereSignal& a, const SphereSignal& b) {
  return (a.samples - b.samples).cwiseAbs().maxCoeff();
}

double signal_distance(const SO3Signal& a, const SO3Signal& b) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) r = std::max(r, std::abs(a.samples[i] - b.samples[i]));
  return r;
}

// ---- brute-force spatial oracles (direct quadrature, oversampled grids) ----

// C(g) = int_{S^2} k(g^-1 x) f(x) dx
Complex oracle_spherical_correlation(const SphSpectrum& f, const SphSpectrum& k,
                                     const EulerZYZ& g) {
  const int bq = 2 * f.lmax;
  const SphereGrid grid = make_sphere_grid(bq);
  const EulerZYZ ginv = inverse(g);
  Complex acc(0, 0);
  for (int j = 0; j < grid.size(); ++j) {
    for (int p = 0; p < grid.size(); ++p) {
      const SpherePoint x = grid.node(j, p);
      acc += grid.weights[j] * grid.phi_weight() * synthesize(k, act_on_point(ginv, x)) *
             synthesize(f, x);
    }
  }
  return acc;
}

// (f * k)(x) = int_{SO(3)} f(g nu) k(g^-1 x) dg, measure dalpha sin(beta) dbeta dgamma
Complex oracle_spherical_convolution(const SphSpectrum& f, const SphSpectrum& k,
                                     const SpherePoint& x) {
  const int bq = 2 * f.lmax;
  const SphereGrid grid = make_sphere_grid(bq);
  const SpherePoint pole(0.0, 0.0);
  Complex acc(0, 0);
  const double cell = (kPi / bq) * (kPi / bq);
  for (int j = 0; j < grid.size(); ++j) {
    for (int kk = 0; kk < grid.size(); ++kk) {
      for (int ll = 0; ll < grid.size(); ++ll) {
        const EulerZYZ g(kPi * j / bq, grid.thetas[kk], kPi * ll / bq);
        acc += grid.weights[kk] * cell * synthesize(f, act_on_point(g, pole)) *
               synthesize(k, act_on_point(inverse(g), x));
      }
    }
  }
  return acc;
}

// (f * k)(g) = int f(u) k(u^-1 g) du with normalized Haar measure
Complex oracle_so3_convolution(const SO3Spectrum& f, const SO3Spectrum& k, const EulerZYZ& g) {
  const int bq = 2 * f.lmax;
  const SphereGrid grid = make_sphere_grid(bq);
  const RotationMatrix rg = euler_to_matrix(g);
  Complex acc(0, 0);
  const double cell = (kPi / bq) * (kPi / bq) / (8.0 * kPi * kPi);
  for (int j = 0; j < grid.size(); ++j) {
    for (int kk = 0; kk < grid.size(); ++kk) {
      for (int ll = 0; ll < grid.size(); ++ll) {
        const EulerZYZ u(kPi * j / bq, grid.thetas[kk], kPi * ll / bq);
        const EulerZYZ rel = matrix_to_euler(euler_to_matrix(u).transpose() * rg);
        acc += grid.weights[kk] * cell * synthesize(f, u) * synthesize(k, rel);
      }
    }
  }
  return acc;
}

// (f x k)(g) = int f(u) k(g^-1 u) du with normalized Haar measure
Complex oracle_so3_correlation(const SO3Spectrum& f, const SO3Spectrum& k, const EulerZYZ& g) {
  const int bq = 2 * f.lmax;
  const SphereGrid grid = make_sphere_grid(bq);
  const RotationMatrix rginv = euler_to_matrix(g).transpose();
  Complex acc(0, 0);
  const double cell = (kPi / bq) * (kPi / bq) / (8.0 * kPi * kPi);
  for (int j = 0; j < grid.size(); ++j) {
    for (int kk = 0; kk < grid.size(); ++kk) {
      for (int ll = 0; ll < grid.size(); ++ll) {
        const EulerZYZ u(kPi * j / bq, grid.thetas[kk], kPi * ll / bq);
        const EulerZYZ rel = matrix_to_euler(rginv * euler_to_matrix(u));
        acc += grid.weights[kk] * cell * synthesize(f, u) * synthesize(k, rel);
      }
    }
  }
  return acc;
}

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2 * kPi);
  return std::min(d, 2 * kPi - d);
}
}  // namespace

bool VerificationReport::overall() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<CheckResult> verify_orthogonality(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  SplitMix64 rng(options.seed * 0x9e3779b9ULL + 1);

  {  // quadrature exactness of the sphere grid, all l, l' < B at B = 8
    const int B = 8;
    const SphereGrid grid = make_sphere_grid(B);
    Eigen::MatrixXcd values(B * B, 4 * B * B);  // rows: (l,m); cols: nodes
    int row = 0;
    for (int l = 0; l < B; ++l) {
      for (int m = -l; m <= l; ++m, ++row) {
        int col = 0;
        for (int j = 0; j < grid.size(); ++j)
          for (int k = 0; k < grid.size(); ++k, ++col)
            values(row, col) = sph_harm(l, m, grid.node(j, k));
      }
    }
    Eigen::VectorXd w(4 * B * B);
    int col = 0;
    for (int j = 0; j < grid.size(); ++j)
      for (int k = 0; k < grid.size(); ++k, ++col) w(col) = grid.weights[j] * grid.phi_weight();
    const Eigen::MatrixXcd gram = values * w.asDiagonal() * values.adjoint();
    const double res =
        (gram - Eigen::MatrixXcd::Identity(B * B, B * B)).cwiseAbs().maxCoeff();
    out.push_back(check_max("quadrature_orthonormality_B8", 1e-9, res));
  }

  {  // SHT round trips
    const auto t0 = std::chrono::steady_clock::now();
    for (int B : {4, 8, 16, 32}) {
      SphSpectrum s = random_sph_spectrum(B, rng);
      const SphSpectrum rt = sht_forward(sht_inverse(s, B));
      out.push_back(check_max("sht_round_trip_B" + std::to_string(B), 1e-10,
                              spectrum_distance(s, rt)));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(check_max("sht_round_trip_runtime_seconds", 60.0, secs));
  }

  {  // SO(3) round trip at B = 8
    const int B = 8;
    SO3Spectrum s = random_so3_spectrum(B, rng);
    const SO3Spectrum rt = so3_ft_forward(so3_ft_inverse(s, B));
    out.push_back(check_max("so3_round_trip_B8", 1e-9, spectrum_distance(s, rt)));
  }

  {  // Peter-Weyl: <rho^l_mn, rho^l'_m'n'> = delta / (2l+1), l <= 6 at B = 8
    const int B = 8, L = 7;
    const SphereGrid grid = make_sphere_grid(B);
    const WignerTable table(grid, L);
    const int n = grid.size();
    int rows = 0;
    for (int l = 0; l < L; ++l) rows += (2 * l + 1) * (2 * l + 1);
    Eigen::MatrixXcd values(rows, n * n * n);
    Eigen::VectorXd w(n * n * n);
    std::vector<std::vector<Complex>> phase(2 * L - 1, std::vector<Complex>(n));
    for (int m = -(L - 1); m <= L - 1; ++m)
      for (int j = 0; j < n; ++j) phase[m + L - 1][j] = std::polar(1.0, -m * kPi * j / B);
    int row = 0;
    for (int l = 0; l < L; ++l) {
      for (int m = -l; m <= l; ++m) {
        for (int nn = -l; nn <= l; ++nn, ++row) {
          int col = 0;
          for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
              const double d = table.d(k, l)(m + l, nn + l);
              for (int g = 0; g < n; ++g, ++col) {
                values(row, col) = phase[m + L - 1][j] * d * phase[nn + L - 1][g];
              }
            }
          }
        }
      }
    }
    int col = 0;
    const double cell = (kPi / B) * (kPi / B) / (8.0 * kPi * kPi);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int g = 0; g < n; ++g, ++col) w(col) = grid.weights[k] * cell;
    const Eigen::MatrixXcd gram = values * w.asDiagonal() * values.adjoint();
    double res = 0.0;
    int ra = 0;
    for (int l = 0; l < L; ++l) {
      const int na = (2 * l + 1) * (2 * l + 1);
      Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(na, na);
      expect.diagonal().setConstant(1.0 / (2 * l + 1));
      res = std::max(res, (gram.block(ra, ra, na, na) - expect).cwiseAbs().maxCoeff());
      // cross-degree blocks must vanish
      ra += na;
    }
    Eigen::MatrixXcd offdiag = gram;
    ra = 0;
    for (int l = 0; l < L; ++l) {
      const int na = (2 * l + 1) * (2 * l + 1);
      offdiag.block(ra, ra, na, na).setZero();
      ra += na;
    }
    res = std::max(res, offdiag.cwiseAbs().maxCoeff());
    out.push_back(check_max("peter_weyl_L6_B8", 1e-8, res));
  }

  {  // Wigner unitarity + homomorphism, l <= 16, 200 random rotations
    double uni = 0.0, hom = 0.0;
    for (int t = 0; t < 200; ++t) {
      const EulerZYZ g1 = random_rotation(rng), g2 = random_rotation(rng);
      const EulerZYZ g12 = compose(g1, g2);
      const int l = int(rng.below(17));
      const Eigen::MatrixXcd d1 = wigner_D(l, g1).entries;
      const Eigen::MatrixXcd d2 = wigner_D(l, g2).entries;
      const Eigen::MatrixXcd d12 = wigner_D(l, g12).entries;
      uni = std::max(uni, (d1 * d1.adjoint() -
                           Eigen::MatrixXcd::Identity(2 * l + 1, 2 * l + 1)).cwiseAbs().maxCoeff());
      hom = std::max(hom, (d12 - d1 * d2).cwiseAbs().maxCoeff());
    }
    out.push_back(check_max("wigner_unitarity_l16", 1e-9, uni));
    out.push_back(check_max("wigner_homomorphism_l16", 1e-9, hom));
  }
  return out;
}

std::vector<CheckResult> verify_equivariance(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  SplitMix64 rng(options.seed * 0x9e3779b9ULL + 2);

  {  // spectral results against brute-force spatial quadrature at B = 4
    const int B = 4;
    const SphSpectrum f = random_real_sph_spectrum(B, rng);
    const SphSpectrum k = random_real_sph_spectrum(B, rng);

    double res = 0.0;
    const SphSpectrum conv = spherical_convolve(f, k);
    const SphereGrid grid = make_sphere_grid(B);
    for (int t = 0; t < 6; ++t) {
      const SpherePoint x = grid.node(int(rng.below(2 * B)), int(rng.below(2 * B)));
      res = std::max(res, std::abs(synthesize(conv, x) - oracle_spherical_convolution(f, k, x)));
    }
    out.push_back(check_max("oracle_spherical_convolution_B4", 1e-7, res));

    res = 0.0;
    const SO3Spectrum corr = spherical_correlate(f, k);
    for (int t = 0; t < 6; ++t) {
      const EulerZYZ g = grid_rotation(B, rng);
      res = std::max(res, std::abs(synthesize(corr, g) - oracle_spherical_correlation(f, k, g)));
    }
    out.push_back(check_max("oracle_spherical_correlation_B4", 1e-7, res));

    const SO3Spectrum fs = random_so3_spectrum(B, rng);
    const SO3Spectrum ks = random_so3_spectrum(B, rng);
    const SO3Spectrum kreal = random_real_so3_spectrum(B, rng);
    res = 0.0;
    const SO3Spectrum sconv = so3_convolve(fs, ks);
    for (int t = 0; t < 4; ++t) {
      const EulerZYZ g = grid_rotation(B, rng);
      res = std::max(res, std::abs(synthesize(sconv, g) - oracle_so3_convolution(fs, ks, g)));
    }
    out.push_back(check_max("oracle_so3_convolution_B4", 1e-7, res));

    res = 0.0;
    const SO3Spectrum scorr = so3_correlate(fs, kreal);
    for (int t = 0; t < 4; ++t) {
      const EulerZYZ g = grid_rotation(B, rng);
      res = std::max(res, std::abs(synthesize(scorr, g) - oracle_so3_correlation(fs, kreal, g)));
    }
    out.push_back(check_max("oracle_so3_correlation_B4", 1e-7, res));
  }

  {  // ||op(shift f) - shift op(f)||_inf on the grid, 20 grid rotations, B = 8
    const int B = 8;
    const SphSpectrum f = random_real_sph_spectrum(B, rng);
    const SphSpectrum k = random_real_sph_spectrum(B, rng);
    const SO3Spectrum fs = random_so3_spectrum(B, rng);
    const SO3Spectrum ks = random_so3_spectrum(B, rng);
    const SO3Spectrum kreal = random_real_so3_spectrum(B, rng);
    double econv = 0.0, ecorr = 0.0, esconv = 0.0, escorr = 0.0;
    for (int t = 0; t < 20; ++t) {
      const EulerZYZ u = grid_rotation(B, rng);
      econv = std::max(econv,
                       signal_distance(sht_inverse(spherical_convolve(rotate(f, u), k), B),
                                       sht_inverse(rotate(spherical_convolve(f, k), u), B)));
      ecorr = std::max(ecorr,
                       signal_distance(so3_ft_inverse(spherical_correlate(rotate(f, u), k), B),
                                       so3_ft_inverse(rotate(spherical_correlate(f, k), u), B)));
      esconv = std::max(esconv,
                        signal_distance(so3_ft_inverse(so3_convolve(rotate(fs, u), ks), B),
                                        so3_ft_inverse(rotate(so3_convolve(fs, ks), u), B)));
      escorr = std::max(escorr,
                        signal_distance(so3_ft_inverse(so3_correlate(rotate(fs, u), kreal), B),
                                        so3_ft_inverse(rotate(so3_correlate(fs, kreal), u), B)));
    }
    out.push_back(check_max("equivariance_spherical_convolution_B8", 1e-9, econv));
    out.push_back(check_max("equivariance_spherical_correlation_B8", 1e-9, ecorr));
    out.push_back(check_max("equivariance_so3_convolution_B8", 1e-9, esconv));
    out.push_back(check_max("equivariance_so3_correlation_B8", 1e-9, escorr));
  }

  {  // rotation recovery: pattern rotated by a grid rotation, argmax must return it
    const int B = 16;
    int failures = 0;
    for (int t = 0; t < 100; ++t) {
      const SphSpectrum pattern = random_real_sph_spectrum(B, rng);
      const EulerZYZ g0 = grid_rotation(B, rng);
      const SphSpectrum signal = rotate(pattern, g0);
      const CorrelationPeak peak = correlation_peak(spherical_correlate(signal, pattern), B);
      const bool ok = circular_distance(peak.rotation.alpha, g0.alpha) <= kPi / B + 1e-9 &&
                      std::abs(peak.rotation.beta - g0.beta) <= kPi / B + 1e-9 &&
                      circular_distance(peak.rotation.gamma, g0.gamma) <= kPi / B + 1e-9;
      if (!ok) ++failures;
    }
    out.push_back(check_max("rotation_recovery_B16_failures_of_100", 1.0, double(failures)));
  }
  return out;
}

std::vector<CheckResult> verify_cg(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  SplitMix64 rng(options.seed * 0x9e3779b9ULL + 3);
  double orth = 0.0, blockdiag = 0.0;
  for (int l1 = 0; l1 <= 4; ++l1) {
    for (int l2 = 0; l2 <= 4; ++l2) {
      const CGTable t = cg_table(l1, l2);
      const int n = int(t.C.rows());
      orth = std::max(orth, (t.C.transpose() * t.C -
                             Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
      for (int trial = 0; trial < 100; ++trial) {
        const EulerZYZ g = random_rotation(rng);
        const Eigen::MatrixXcd d1 = wigner_D(l1, g).entries;
        const Eigen::MatrixXcd d2 = wigner_D(l2, g).entries;
        for (int l = std::abs(l1 - l2); l <= l1 + l2; ++l) {
          // (rho1 x rho2) C_l = C_l rho_l, checked column-by-column via
          // vec(d1 X d2^T) to avoid forming the Kronecker product
          const Eigen::MatrixXd cl = t.block(l);
          const Eigen::MatrixXcd dl = wigner_D(l, g).entries;
          const Eigen::MatrixXcd rhs = cl.cast<Complex>() * dl;
          for (int c = 0; c < 2 * l + 1; ++c) {
            Eigen::MatrixXcd xc(2 * l1 + 1, 2 * l2 + 1);
            for (int i = 0; i < 2 * l1 + 1; ++i)
              xc.row(i) = cl.col(c).segment(i * (2 * l2 + 1), 2 * l2 + 1).transpose();
            const Eigen::MatrixXcd y = d1 * xc * d2.transpose();
            for (int i = 0; i < 2 * l1 + 1; ++i) {
              blockdiag = std::max(blockdiag, (y.row(i).transpose() -
                                               rhs.col(c).segment(i * (2 * l2 + 1), 2 * l2 + 1))
                                                  .cwiseAbs()
                                                  .maxCoeff());
            }
          }
        }
      }
    }
  }
  out.push_back(check_max("cg_orthogonality_lmax4", 1e-12, orth));
  out.push_back(check_max("cg_block_diagonalization_lmax4", 1e-10, blockdiag));
  return out;
}

std::vector<CheckResult> verify_steerable(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  SplitMix64 rng(options.seed * 0x9e3779b9ULL + 4);
  double worst = 0.0;
  for (int li = 0; li <= 3; ++li) {
    for (int lo = 0; lo <= 3; ++lo) {
      const SteerableBasis basis = steerable_basis(li, lo);
      for (int l : basis.degrees) {
        const KernelFunction k = [&basis, l](const SpherePoint& x) {
          return basis.evaluate(l, x);
        };
        worst = std::max(worst,
                         steerable_constraint_residual(k, li, lo, 100, options.seed + l));
      }
    }
  }
  out.push_back(check_max("steerable_constraint_lmax3", 1e-10, worst));

  Eigen::MatrixXcd m0(3, 5);  // li = 2, lo = 1 unstructured control
  for (int i = 0; i < m0.rows(); ++i)
    for (int j = 0; j < m0.cols(); ++j) m0(i, j) = unit(rng);
  const KernelFunction bad = [&m0](const SpherePoint&) { return m0; };
  out.push_back(check_min("steerable_negative_control_min", 0.1,
                          steerable_constraint_residual(bad, 2, 1, 100, options.seed)));
  return out;
}

namespace {
GroupFunction random_group_function(int size, SplitMix64& rng,
                                    GroupFunction::Domain dom = GroupFunction::Domain::Group) {
  GroupFunction f;
  f.domain = dom;
  f.values.resize(size, 1);
  for (int i = 0; i < size; ++i) f.values(i, 0) = unit(rng);
  return f;
}

GroupFunction shift_on_group(const FiniteGroup& g, const GroupFunction& f, int u) {
  GroupFunction out = f;
  for (int e = 0; e < g.order; ++e) out.values.row(e) = f.values.row(g.mul(g.inv(u), e));
  return out;
}

GroupFunction shift_on_cosets(const CosetSpace& x, const GroupFunction& f, int u) {
  GroupFunction out = f;
  for (int c = 0; c < x.count(); ++c) out.values.row(c) = f.values.row(x.act(x.group.inv(u), c));
  return out;
}

int find_order_two(const FiniteGroup& g) {
  for (int e = 0; e < g.order; ++e)
    if (e != g.identity && g.mul(e, e) == g.identity) return e;
  throw DomainError("no order-2 element");
}

// exhaustive equivariance of all four generalized-convolution cases
double finite_equivariance_residual(const FiniteGroup& g, SplitMix64& rng) {
  const int h2 = find_order_two(g);
  const CosetSpace x = coset_space(g, {g.identity, h2}, CosetSide::Left);
  const GroupFunction fg = random_group_function(g.order, rng);
  const GroupFunction kg = random_group_function(g.order, rng);
  const GroupFunction fx = random_group_function(x.count(), rng, GroupFunction::Domain::Cosets);
  const GroupFunction kx = random_group_function(x.count(), rng, GroupFunction::Domain::Cosets);
  double res = 0.0;
  for (int u = 0; u < g.order; ++u) {
    {  // Case IV
      const GroupFunction a = generalized_convolve(g, shift_on_group(g, fg, u), nullptr, kg, nullptr);
      const GroupFunction b = shift_on_group(g, generalized_convolve(g, fg, nullptr, kg, nullptr), u);
      res = std::max(res, (a.values - b.values).cwiseAbs().maxCoeff());
    }
    {  // Case I: f on G, k on G/H
      const GroupFunction a = generalized_convolve(g, shift_on_group(g, fg, u), nullptr, kx, &x);
      const GroupFunction b = shift_on_cosets(x, generalized_convolve(g, fg, nullptr, kx, &x), u);
      res = std::max(res, (a.values - b.values).cwiseAbs().maxCoeff());
    }
    {  // Case II: f on G/H, k on G
      const GroupFunction a = generalized_convolve(g, shift_on_cosets(x, fx, u), &x, kg, nullptr);
      const GroupFunction b = shift_on_group(g, generalized_convolve(g, fx, &x, kg, nullptr), u);
      res = std::max(res, (a.values - b.values).cwiseAbs().maxCoeff());
    }
    {  // Case III: both on coset spaces
      const GroupFunction a = generalized_convolve(g, shift_on_cosets(x, fx, u), &x, kx, &x);
      const GroupFunction b = shift_on_cosets(x, generalized_convolve(g, fx, &x, kx, &x), u);
      res = std::max(res, (a.values - b.values).cwiseAbs().maxCoeff());
    }
  }
  return res;
}
}  // namespace

std::vector<CheckResult> verify_finite(const VerifyOptions& options) {
  std::vector<CheckResult> out;
  SplitMix64 rng(options.seed * 0x9e3779b9ULL + 5);

  out.push_back(check_max("finite_equivariance_cyclic6", 1e-12,
                          finite_equivariance_residual(make_cyclic(6), rng)));
  out.push_back(check_max("finite_equivariance_dihedral4", 1e-12,
                          finite_equivariance_residual(make_dihedral(4), rng)));
  out.push_back(check_max("finite_equivariance_symmetric3", 1e-12,
                          finite_equivariance_residual(make_symmetric(3), rng)));
  out.push_back(check_max("finite_equivariance_symmetric4", 1e-12,
                          finite_equivariance_residual(make_symmetric(4), rng)));

  {  // Case I output is constant on cosets (checked on the full-group sum)
    const FiniteGroup g = make_dihedral(4);
    const CosetSpace x = coset_space(g, {g.identity, find_order_two(g)}, CosetSide::Left);
    const GroupFunction f = random_group_function(g.order, rng);
    const GroupFunction k = random_group_function(x.count(), rng, GroupFunction::Domain::Cosets);
    const GroupFunction full = finite_convolve(g, f, lift(x, k));
    double res = 0.0;
    for (int c = 0; c < x.count(); ++c) {
      for (int e : x.cosets[c]) {
        res = std::max(res, (full.values.row(e) - full.values.row(x.section[c])).cwiseAbs().maxCoeff());
      }
    }
    out.push_back(check_max("case_I_coset_constancy_dihedral4", 1e-12, res));
  }

  {  // Case III: full-domain sum equals the reduced double-coset formula
    const FiniteGroup g = make_symmetric(3);
    const CosetSpace x = coset_space(g, {g.identity, find_order_two(g)}, CosetSide::Left);
    const GroupFunction f = random_group_function(x.count(), rng, GroupFunction::Domain::Cosets);
    const GroupFunction k = random_group_function(x.count(), rng, GroupFunction::Domain::Cosets);
    const GroupFunction viaFull = generalized_convolve(g, f, &x, k, &x);
    // reduced path: (f*k)(gH2) = (1/|G|) sum over right cosets H1 v of
    // f(g v^-1 H1) ktilde(H1 v H2), ktilde(H1 g H2) = sum_{h in H1} k(h g H2)
    const CosetSpace right = coset_space(g, x.subgroup, CosetSide::Right);
    double res = 0.0;
    for (int c = 0; c < x.count(); ++c) {
      Complex acc(0, 0);
      const int rep = x.section[c];
      for (int rc = 0; rc < right.count(); ++rc) {
        const int v = right.section[rc];
        Complex ktilde(0, 0);
        for (int h : x.subgroup) ktilde += k.values(x.coset_of[g.mul(h, v)], 0);
        acc += f.values(x.coset_of[g.mul(rep, g.inv(v))], 0) * ktilde;
      }
      acc /= double(g.order);
      res = std::max(res, std::abs(acc - viaFull.values(c, 0)));
    }
    out.push_back(check_max("case_III_double_coset_reduction_symmetric3", 1e-12, res));
  }

  {  // equivariant-map dimension == admissible-kernel dimension, 7 configs
    struct Config {
      std::string name;
      FiniteGroup g;
      std::vector<int> hi, ho;
      FiniteRep rho_i, rho_o;
      bool scalar_pair;  // compare against double cosets too
    };
    std::vector<Config> configs;
    {
      FiniteGroup c4 = make_cyclic(4);
      configs.push_back({"cyclic4_trivial", c4, {c4.identity}, {c4.identity},
                         trivial_rep(c4, {c4.identity}), trivial_rep(c4, {c4.identity}), true});
    }
    {
      FiniteGroup s3 = make_symmetric(3);
      const std::vector<int> h{s3.identity, find_order_two(s3)};
      configs.push_back({"symmetric3_trivial", s3, h, h, trivial_rep(s3, h), trivial_rep(s3, h), true});
      configs.push_back({"symmetric3_sign_sign", s3, h, h, sign_rep(s3, h), sign_rep(s3, h), false});
    }
    {
      FiniteGroup d4 = make_dihedral(4);
      const std::vector<int> h{d4.identity, 4};  // {e, s}
      configs.push_back({"dihedral4_trivial", d4, h, h, trivial_rep(d4, h), trivial_rep(d4, h), true});
      configs.push_back({"dihedral4_sign_trivial", d4, h, h, sign_rep(d4, h), trivial_rep(d4, h), false});
      configs.push_back({"dihedral4_sign_sign", d4, h, h, sign_rep(d4, h), sign_rep(d4, h), false});
      // rotation subgroup C4 with its 2-dimensional planar rep
      const std::vector<int> c4{0, 1, 2, 3};
      std::vector<Eigen::MatrixXcd> mats;
      for (int a = 0; a < 4; ++a) {
        Eigen::MatrixXcd r(2, 2);
        const double t = kPi * a / 2.0;
        r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
        mats.push_back(r);
      }
      configs.push_back({"dihedral4_planar_sign", d4, c4, h, make_rep(d4, c4, mats),
                         sign_rep(d4, h), false});
    }
    int mismatches = 0;
    int nontrivial = 0;
    for (const auto& cfg : configs) {
      const CosetSpace xi = coset_space(cfg.g, cfg.hi, CosetSide::Left);
      const CosetSpace xo = coset_space(cfg.g, cfg.ho, CosetSide::Left);
      const LinearSpace maps = equivariant_map_space(xi, xo, cfg.rho_i, cfg.rho_o);
      const LinearSpace kernels =
          admissible_kernel_space(cfg.g, cfg.hi, cfg.ho, cfg.rho_i, cfg.rho_o);
      if (maps.dimension != kernels.dimension) ++mismatches;
      if (cfg.scalar_pair &&
          maps.dimension != double_coset_count(cfg.g, cfg.hi, cfg.ho)) {
        ++mismatches;
      }
      if (cfg.rho_i.degree > 1 || cfg.name.find("sign") != std::string::npos) ++nontrivial;
    }
    if (nontrivial == 0) ++mismatches;
    out.push_back(check_max("theorem_dimension_match_7_configs", 0.5, double(mismatches)));
  }

  {  // Mackey machinery on dihedral(4) with the C2 sign representation
    const FiniteGroup g = make_dihedral(4);
    const std::vector<int> h{g.identity, 4};
    const CosetSpace xi = coset_space(g, h, CosetSide::Left);
    const CosetSpace xo = xi;
    const FiniteRep rho = sign_rep(g, h);

    // lifted fields satisfy f(gh) = rho(h^-1) f(g)
    Eigen::MatrixXcd local(xi.count(), 1);
    for (int c = 0; c < xi.count(); ++c) local(c, 0) = unit(rng);
    const Eigen::MatrixXcd lifted = mackey_lift(xi, rho, local);
    double res = 0.0;
    for (int e = 0; e < g.order; ++e) {
      for (int hh : h) {
        const Eigen::MatrixXcd expect = rho.at(g.inv(hh)) * lifted.row(e).transpose();
        res = std::max(res, (lifted.row(g.mul(e, hh)).transpose() - expect).cwiseAbs().maxCoeff());
      }
    }
    out.push_back(check_max("mackey_function_property_dihedral4", 1e-12, res));

    const LinearSpace kernels = admissible_local_kernels(xi, xo.subgroup, rho, rho);
    std::vector<Eigen::MatrixXcd> kernel(xi.count());
    // combine the basis deterministically into one admissible kernel
    for (int c = 0; c < xi.count(); ++c) kernel[c] = Eigen::MatrixXcd::Zero(1, 1);
    for (int b = 0; b < kernels.dimension; ++b) {
      for (int c = 0; c < xi.count(); ++c) kernel[c] += double(b + 1) * kernels.basis[b].block(c, 0, 1, 1);
    }
    res = 0.0;
    const Eigen::MatrixXcd o1 = induce_and_correlate(xi, xo, rho, rho, kernel, local);
    const Eigen::MatrixXcd o2 = induce_and_correlate_mackey(xi, xo, rho, rho, kernel, local);
    res = (o1 - o2).cwiseAbs().maxCoeff();
    out.push_back(check_max("mackey_two_path_dihedral4_sign", 1e-12, res));

    // exhaustive equivariance of the field correlation under pi_U
    res = 0.0;
    for (int u = 0; u < g.order; ++u) {
      const Eigen::MatrixXcd pi_i = induced_rep_matrix(xi, rho, u);
      const Eigen::MatrixXcd pi_o = induced_rep_matrix(xo, rho, u);
      Eigen::VectorXcd flat(xi.count());
      for (int c = 0; c < xi.count(); ++c) flat(c) = local(c, 0);
      const Eigen::VectorXcd shifted = pi_i * flat;
      Eigen::MatrixXcd shifted_field(xi.count(), 1);
      for (int c = 0; c < xi.count(); ++c) shifted_field(c, 0) = shifted(c);
      const Eigen::MatrixXcd lhs = induce_and_correlate(xi, xo, rho, rho, kernel, shifted_field);
      const Eigen::VectorXcd rhs = pi_o * o1.col(0);
      res = std::max(res, (lhs.col(0) - rhs).cwiseAbs().maxCoeff());
    }
    out.push_back(check_max("mackey_equivariance_dihedral4_sign", 1e-12, res));

    // twist cocycle h(x, g1 g2) = h(g2 x, g1) h(x, g2), exhaustive
    int bad = 0;
    for (int x = 0; x < xi.count(); ++x) {
      for (int g1 = 0; g1 < g.order; ++g1) {
        for (int g2 = 0; g2 < g.order; ++g2) {
          const int lhs = twist(xi, x, g.mul(g1, g2));
          const int rhs = g.mul(twist(xi, xi.act(g2, x), g1), twist(xi, x, g2));
          if (lhs != rhs) ++bad;
        }
      }
    }
    out.push_back(check_max("twist_cocycle_dihedral4", 0.5, double(bad)));
  }
  return out;
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"orthogonality", "equivariance", "cg",
                                              "steerable", "finite", "all"};
  return names;
}

VerificationReport verify_suite(const std::string& suite, const VerifyOptions& options) {
  VerificationReport report;
  report.suite = suite;
  report.environment = {{"seed", std::to_string(options.seed)},
                        {"bandwidths", "4 8 16 32"},
                        {"groups", "cyclic6 dihedral4 symmetric3 symmetric4"}};
  if (suite == "orthogonality") {
    report.checks = verify_orthogonality(options);
  } else if (suite == "equivariance") {
    report.checks = verify_equivariance(options);
  } else if (suite == "cg") {
    report.checks = verify_cg(options);
  } else if (suite == "steerable") {
    report.checks = verify_steerable(options);
  } else if (suite == "finite") {
    report.checks = verify_finite(options);
  } else if (suite == "all") {
    for (const auto& name : verify_suite_names()) {
      if (name == "all") continue;
      const VerificationReport sub = verify_suite(name, options);
      report.checks.insert(report.checks.end(), sub.checks.begin(), sub.checks.end());
    }
  } else {
    throw DomainError("verify_suite: unknown suite '" + suite + "'");
  }
  return report;
}

void print_report(std::ostream& out, const VerificationReport& report) {
  out << "VERIFY 1 " << report.suite << '\n';
  for (const auto& [key, value] : report.environment) out << "env " << key << '=' << value << '\n';
  char buf[64];
  for (const auto& c : report.checks) {
    std::snprintf(buf, sizeof buf, "%.17g", c.tolerance);
    out << "check " << c.name << " tol=" << buf;
    std::snprintf(buf, sizeof buf, "%.17g", c.residual);
    out << " residual=" << buf << ' ' << (c.pass ? "pass" : "fail") << '\n';
  }
  out << "overall " << (report.overall() ? "pass" : "fail") << '\n';
}

}  // namespace so3kit
