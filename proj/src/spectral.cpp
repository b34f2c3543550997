#include "so3kit/spectral.hpp"

#include <cmath>

#include "so3kit/errors.hpp"

namespace so3kit {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_finite(const Eigen::MatrixXcd& m, const char* who) {
  if (!m.allFinite()) throw DomainError(std::string(who) + ": non-finite samples");
}

// exp(i s m phi_k) for phi_k = pi k / B, m in [-(L-1), L-1] stored at m + L - 1
Eigen::MatrixXcd phase_table(int bandwidth, int lmax, double sign) {
  const int n = 2 * bandwidth;
  Eigen::MatrixXcd e(2 * lmax - 1, n);
  for (int m = -(lmax - 1); m <= lmax - 1; ++m) {
    for (int k = 0; k < n; ++k) {
      e(m + lmax - 1, k) = std::polar(1.0, sign * m * kPi * k / bandwidth);
    }
  }
  return e;
}

double y_norm(int l) { return std::sqrt((2 * l + 1) / (4.0 * kPi)); }
}  // namespace

SphereSignal SphereSignal::zero(int bandwidth) {
  SphereSignal f;
  f.bandwidth = bandwidth;
  f.samples = Eigen::MatrixXcd::Zero(2 * bandwidth, 2 * bandwidth);
  return f;
}

SphSpectrum SphSpectrum::zero(int lmax) {
  SphSpectrum s;
  s.lmax = lmax;
  s.coeffs.reserve(lmax);
  for (int l = 0; l < lmax; ++l) s.coeffs.emplace_back(Eigen::VectorXcd::Zero(2 * l + 1));
  return s;
}

SO3Signal SO3Signal::zero(int bandwidth) {
  SO3Signal f;
  f.bandwidth = bandwidth;
  f.samples.assign(std::size_t(2 * bandwidth) * (2 * bandwidth) * (2 * bandwidth), Complex(0, 0));
  return f;
}

SO3Spectrum SO3Spectrum::zero(int lmax) {
  SO3Spectrum s;
  s.lmax = lmax;
  s.blocks.reserve(lmax);
  for (int l = 0; l < lmax; ++l) s.blocks.emplace_back(Eigen::MatrixXcd::Zero(2 * l + 1, 2 * l + 1));
  return s;
}

// Y_l^m(theta, phi) = sqrt((2l+1)/4pi) d^l_{m0}(theta) e^{i m phi} for every
// m, so both sphere transforms reduce to longitude phase sums plus weighted
// Wigner-column contractions over the rings.

SphSpectrum sht_forward(const SphereSignal& f) {
  require_finite(f.samples, "sht_forward");
  const int B = f.bandwidth, n = 2 * B;
  const SphereGrid grid = make_sphere_grid(B);
  const WignerTable table(grid, B);
  const Eigen::MatrixXcd ph = phase_table(B, B, -1.0);

  // longitude sums F(j, m) = sum_k f(j,k) e^{-im phi_k}
  Eigen::MatrixXcd F(n, 2 * B - 1);
  for (int j = 0; j < n; ++j) {
    for (int m = -(B - 1); m <= B - 1; ++m) {
      Complex acc(0, 0);
      for (int k = 0; k < n; ++k) acc += f.samples(j, k) * ph(m + B - 1, k);
      F(j, m + B - 1) = acc;
    }
  }

  SphSpectrum out = SphSpectrum::zero(B);
  const double dphi = grid.phi_weight();
  for (int l = 0; l < B; ++l) {
    for (int m = -l; m <= l; ++m) {
      Complex acc(0, 0);
      for (int j = 0; j < n; ++j) {
        acc += grid.weights[j] * table.d(j, l)(m + l, l) * F(j, m + B - 1);
      }
      out.at(l, m) = y_norm(l) * dphi * acc;
    }
  }
  return out;
}

SphereSignal sht_inverse(const SphSpectrum& s, int bandwidth) {
  if (s.lmax > bandwidth) throw BandwidthMismatch("sht_inverse: lmax exceeds bandwidth");
  const int B = bandwidth, n = 2 * B, L = s.lmax;
  const SphereGrid grid = make_sphere_grid(B);
  const WignerTable table(grid, L);
  const Eigen::MatrixXcd ph = phase_table(B, L, +1.0);

  // G(j, m) = sum_l fhat_l^m sqrt((2l+1)/4pi) d^l_{m0}(theta_j)
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n, std::max(1, 2 * L - 1));
  for (int l = 0; l < L; ++l) {
    for (int m = -l; m <= l; ++m) {
      const Complex c = s.at(l, m) * y_norm(l);
      for (int j = 0; j < n; ++j) G(j, m + L - 1) += c * table.d(j, l)(m + l, l);
    }
  }

  SphereSignal out = SphereSignal::zero(B);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Complex acc(0, 0);
      for (int m = -(L - 1); m <= L - 1; ++m) acc += G(j, m + L - 1) * ph(m + L - 1, k);
      out.samples(j, k) = acc;
    }
  }
  return out;
}

SO3Spectrum so3_ft_forward(const SO3Signal& f) {
  const int B = f.bandwidth, n = 2 * B, L = B;
  const SphereGrid grid = make_sphere_grid(B);
  const WignerTable table(grid, L);
  const Eigen::MatrixXcd ph = phase_table(B, L, +1.0);  // e^{+i m angle}

  // U(j, k; nidx) = sum_l f(j,k,l) e^{+i n gamma_l}
  std::vector<Eigen::MatrixXcd> U(n, Eigen::MatrixXcd(n, 2 * L - 1));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int nn = -(L - 1); nn <= L - 1; ++nn) {
        Complex acc(0, 0);
        for (int l = 0; l < n; ++l) acc += f.at(j, k, l) * ph(nn + L - 1, l);
        U[j](k, nn + L - 1) = acc;
      }
    }
  }
  // T_k(m, n) = sum_j U(j, k; n) e^{+i m alpha_j}
  std::vector<Eigen::MatrixXcd> T(n, Eigen::MatrixXcd(2 * L - 1, 2 * L - 1));
  for (int k = 0; k < n; ++k) {
    for (int m = -(L - 1); m <= L - 1; ++m) {
      for (int nn = -(L - 1); nn <= L - 1; ++nn) {
        Complex acc(0, 0);
        for (int j = 0; j < n; ++j) acc += U[j](k, nn + L - 1) * ph(m + L - 1, j);
        T[k](m + L - 1, nn + L - 1) = acc;
      }
    }
  }

  // fhat(rho_l)(a, b) = (1/8pi^2)(pi/B)^2 sum_k w_k T_k(b, a) d^l_{ba}(beta_k)
  SO3Spectrum out = SO3Spectrum::zero(L);
  const double scale = (kPi / B) * (kPi / B) / (8.0 * kPi * kPi);
  for (int l = 0; l < L; ++l) {
    for (int a = -l; a <= l; ++a) {
      for (int b = -l; b <= l; ++b) {
        Complex acc(0, 0);
        for (int k = 0; k < n; ++k) {
          acc += grid.weights[k] * table.d(k, l)(b + l, a + l) * T[k](b + L - 1, a + L - 1);
        }
        out.block(l)(a + l, b + l) = scale * acc;
      }
    }
  }
  return out;
}

SO3Signal so3_ft_inverse(const SO3Spectrum& s, int bandwidth) {
  if (s.lmax > bandwidth) throw BandwidthMismatch("so3_ft_inverse: lmax exceeds bandwidth");
  const int B = bandwidth, n = 2 * B, L = s.lmax;
  if (L == 0) return SO3Signal::zero(B);
  const SphereGrid grid = make_sphere_grid(B);
  const WignerTable table(grid, L);
  const Eigen::MatrixXcd ph = phase_table(B, L, -1.0);  // e^{-i m angle}

  // H_k(b, a) = sum_l (2l+1) fhat^l(a, b) d^l_{ba}(beta_k)
  std::vector<Eigen::MatrixXcd> H(n, Eigen::MatrixXcd::Zero(2 * L - 1, 2 * L - 1));
  for (int l = 0; l < L; ++l) {
    for (int a = -l; a <= l; ++a) {
      for (int b = -l; b <= l; ++b) {
        const Complex c = double(2 * l + 1) * s.block(l)(a + l, b + l);
        for (int k = 0; k < n; ++k) {
          H[k](b + L - 1, a + L - 1) += c * table.d(k, l)(b + l, a + l);
        }
      }
    }
  }
  // V_k(b, lidx) = sum_a H_k(b, a) e^{-i a gamma_l}
  SO3Signal out = SO3Signal::zero(B);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXcd V(2 * L - 1, n);
    for (int b = -(L - 1); b <= L - 1; ++b) {
      for (int lg = 0; lg < n; ++lg) {
        Complex acc(0, 0);
        for (int a = -(L - 1); a <= L - 1; ++a) acc += H[k](b + L - 1, a + L - 1) * ph(a + L - 1, lg);
        V(b + L - 1, lg) = acc;
      }
    }
    for (int j = 0; j < n; ++j) {
      for (int lg = 0; lg < n; ++lg) {
        Complex acc(0, 0);
        for (int b = -(L - 1); b <= L - 1; ++b) acc += V(b + L - 1, lg) * ph(b + L - 1, j);
        out.at(j, k, lg) = acc;
      }
    }
  }
  return out;
}

Complex synthesize(const SphSpectrum& s, const SpherePoint& x) {
  Complex acc(0, 0);
  for (int l = 0; l < s.lmax; ++l) {
    const Eigen::VectorXcd y = sph_harm_vector(l, x);
    for (int m = -l; m <= l; ++m) acc += s.at(l, m) * y(m + l);
  }
  return acc;
}

Complex synthesize(const SO3Spectrum& s, const EulerZYZ& g) {
  Complex acc(0, 0);
  for (int l = 0; l < s.lmax; ++l) {
    acc += double(2 * l + 1) * (s.block(l) * wigner_D(l, g).entries).trace();
  }
  return acc;
}

SphSpectrum rotate(const SphSpectrum& s, const EulerZYZ& g) {
  SphSpectrum out = s;
  for (int l = 0; l < s.lmax; ++l) out.coeffs[l] = wigner_D(l, g).entries * s.coeffs[l];
  return out;
}

SO3Spectrum rotate(const SO3Spectrum& s, const EulerZYZ& g) {
  SO3Spectrum out = s;
  for (int l = 0; l < s.lmax; ++l) {
    out.blocks[l] = s.blocks[l] * wigner_D(l, g).entries.adjoint();
  }
  return out;
}

double grid_energy(const SphereSignal& f) {
  const SphereGrid grid = make_sphere_grid(f.bandwidth);
  double acc = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    for (int k = 0; k < grid.size(); ++k) {
      acc += grid.weights[j] * grid.phi_weight() * std::norm(f.samples(j, k));
    }
  }
  return acc;
}

}  // namespace so3kit
