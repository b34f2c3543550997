#include "so3kit/equivariant_ops.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "so3kit/errors.hpp"
#include "so3kit/rng.hpp"
#include "so3kit/special_functions.hpp"

namespace so3kit {

namespace {
constexpr double kPi = 3.14159265358979323846;

void require_equal_lmax(int a, int b, const char* who) {
  if (a != b) throw BandwidthMismatch(std::string(who) + ": spectra have different Lmax");
}

double ladder_up(int l, int m) { return std::sqrt(double(l - m) * (l + m + 1)); }
double ladder_down(int l, int m) { return std::sqrt(double(l + m) * (l - m + 1)); }
}  // namespace

int CGTable::block_offset(int l) const {
  const int lmin = std::abs(l1 - l2);
  return (l - lmin) * (l + lmin);  // sum of 2k+1 for k = lmin .. l-1
}

CGTable cg_table(int l1, int l2) {
  if (l1 < 0 || l2 < 0) throw DomainError("cg_table: degrees must be >= 0");
  const int d1 = 2 * l1 + 1, d2 = 2 * l2 + 1, N = d1 * d2;
  const auto idx = [&](int m1, int m2) { return (m1 + l1) * d2 + (m2 + l2); };

  CGTable t;
  t.l1 = l1;
  t.l2 = l2;
  t.C.resize(N, N);

  int col = 0;
  for (int l = std::abs(l1 - l2); l <= l1 + l2; ++l) {
    // highest-weight vector |l, l>: supported on m1 + m2 = l, determined by
    // requiring J+ to annihilate it; highest-m1 coefficient positive
    const int m1max = std::min(l1, l + l2), m1min = std::max(-l1, l - l2);
    Eigen::VectorXd top = Eigen::VectorXd::Zero(N);
    std::vector<double> c(m1max - m1min + 1);
    c[m1max - m1min] = 1.0;
    for (int m1 = m1max; m1 > m1min; --m1) {
      c[m1 - 1 - m1min] = -c[m1 - m1min] * ladder_up(l2, l - m1) / ladder_up(l1, m1 - 1);
    }
    for (int m1 = m1min; m1 <= m1max; ++m1) top(idx(m1, l - m1)) = c[m1 - m1min];
    top.normalize();
    if (top(idx(m1max, l - m1max)) < 0) top = -top;

    // lower through the block: |l, m-1> = J- |l, m> / sqrt((l+m)(l-m+1))
    Eigen::VectorXd state = top;
    t.C.col(col + 2 * l) = state;  // m = l sits at the last column of the block
    for (int m = l; m > -l; --m) {
      Eigen::VectorXd next = Eigen::VectorXd::Zero(N);
      for (int m1 = -l1; m1 <= l1; ++m1) {
        for (int m2 = -l2; m2 <= l2; ++m2) {
          const double a = state(idx(m1, m2));
          if (a == 0.0) continue;
          if (m1 > -l1) next(idx(m1 - 1, m2)) += a * ladder_down(l1, m1);
          if (m2 > -l2) next(idx(m1, m2 - 1)) += a * ladder_down(l2, m2);
        }
      }
      next /= ladder_down(l, m);
      t.C.col(col + (m - 1) + l) = next;
      state = next;
    }
    col += 2 * l + 1;
  }
  return t;
}

const CGTable& cg_table_cached(int l1, int l2) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, CGTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(l1, l2);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, cg_table(l1, l2)).first;
  return it->second;
}

SO3Spectrum spherical_correlate(const SphSpectrum& f, const SphSpectrum& k) {
  require_equal_lmax(f.lmax, k.lmax, "spherical_correlate");
  SO3Spectrum out = SO3Spectrum::zero(f.lmax);
  for (int l = 0; l < f.lmax; ++l) {
    out.block(l) = k.coeffs[l] * f.coeffs[l].conjugate().transpose() / double(2 * l + 1);
  }
  return out;
}

SphSpectrum spherical_convolve(const SphSpectrum& f, const SphSpectrum& k) {
  require_equal_lmax(f.lmax, k.lmax, "spherical_convolve");
  SphSpectrum out = SphSpectrum::zero(f.lmax);
  for (int l = 0; l < f.lmax; ++l) {
    const Complex scale = 2.0 * kPi * std::sqrt(4.0 * kPi / (2 * l + 1)) * k.at(l, 0);
    out.coeffs[l] = scale * f.coeffs[l];
  }
  return out;
}

SO3Spectrum so3_convolve(const SO3Spectrum& f, const SO3Spectrum& k) {
  require_equal_lmax(f.lmax, k.lmax, "so3_convolve");
  SO3Spectrum out = SO3Spectrum::zero(f.lmax);
  for (int l = 0; l < f.lmax; ++l) out.block(l) = k.block(l) * f.block(l);
  return out;
}

SO3Spectrum so3_correlate(const SO3Spectrum& f, const SO3Spectrum& k) {
  require_equal_lmax(f.lmax, k.lmax, "so3_correlate");
  SO3Spectrum out = SO3Spectrum::zero(f.lmax);
  for (int l = 0; l < f.lmax; ++l) out.block(l) = k.block(l).adjoint() * f.block(l);
  return out;
}

Fragment cg_fragment_product(const Fragment& a, const Fragment& b, int l_out) {
  if (l_out < std::abs(a.degree - b.degree) || l_out > a.degree + b.degree) {
    throw DegreeOutOfRange("cg_fragment_product: l_out outside |la-lb| .. la+lb");
  }
  const CGTable& t = cg_table_cached(a.degree, b.degree);
  Eigen::RowVectorXcd kron(a.values.size() * b.values.size());
  for (int i = 0; i < a.values.size(); ++i) {
    for (int j = 0; j < b.values.size(); ++j) {
      kron(i * b.values.size() + j) = a.values(i) * b.values(j);
    }
  }
  Fragment out;
  out.degree = l_out;
  out.values = kron * t.block(l_out).cast<Complex>();
  return out;
}

SteerableBasis steerable_basis(int li, int lo) {
  if (li < 0 || lo < 0) throw DomainError("steerable_basis: degrees must be >= 0");
  const CGTable& t = cg_table_cached(li, lo);
  const int di = 2 * li + 1, dn = 2 * lo + 1;

  // conj(rho_li) = F rho_li F^{-1} with F_{m,-m} = (-1)^m; the vectorized
  // constraint couples conj(rho_li) x rho_lo, so prefix the CG columns with
  // (F x I).
  SteerableBasis basis;
  basis.li = li;
  basis.lo = lo;
  for (int l = std::abs(li - lo); l <= li + lo; ++l) {
    Eigen::MatrixXd blk = t.block(l);
    Eigen::MatrixXcd flipped(di * dn, 2 * l + 1);
    for (int mi = -li; mi <= li; ++mi) {
      const double sign = (mi & 1) ? -1.0 : 1.0;
      // row block of F maps index (mi) to (-mi) with sign (-1)^mi
      flipped.middleRows((mi + li) * dn, dn) =
          sign * blk.middleRows((-mi + li) * dn, dn).cast<Complex>();
    }
    basis.degrees.push_back(l);
    basis.coupling.push_back(flipped);
  }
  return basis;
}

Eigen::MatrixXcd SteerableBasis::evaluate(int l, const SpherePoint& x) const {
  const int di = 2 * li + 1, dn = 2 * lo + 1;
  const int pos = l - std::abs(li - lo);
  if (pos < 0 || pos >= int(coupling.size())) {
    throw DegreeOutOfRange("SteerableBasis::evaluate: degree outside the basis");
  }
  Eigen::VectorXcd v = coupling[pos] * sph_harm_vector(l, x).conjugate();
  // column-major unvec: index (mi * dn + mo) -> entry (mo, mi)
  Eigen::MatrixXcd kmat(dn, di);
  for (int i = 0; i < di; ++i) kmat.col(i) = v.segment(i * dn, dn);
  return kmat;
}

double steerable_constraint_residual(const KernelFunction& k, int li, int lo, int trials,
                                     std::uint64_t seed) {
  SplitMix64 rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const EulerZYZ g(rng.uniform() * 2 * kPi, rng.uniform() * kPi, rng.uniform() * 2 * kPi);
    const SpherePoint x(0.1 + 0.8 * kPi * rng.uniform(), rng.uniform() * 2 * kPi);
    const Eigen::MatrixXcd lhs = k(act_on_point(g, x));
    const Eigen::MatrixXcd rhs =
        wigner_D(lo, g).entries * k(x) * wigner_D(li, g).entries.adjoint();
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::vector<Fragment> gated_nonlinearity(const std::vector<Fragment>& features,
                                         const std::vector<double>& gates) {
  if (features.size() != gates.size()) {
    throw LengthMismatch("gated_nonlinearity: one gate per fragment required");
  }
  std::vector<Fragment> out = features;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].values *= 1.0 / (1.0 + std::exp(-gates[i]));
  }
  return out;
}

CorrelationPeak correlation_peak(const SO3Spectrum& corr, int bandwidth) {
  const SO3Signal values = so3_ft_inverse(corr, bandwidth);
  const int n = 2 * bandwidth;
  CorrelationPeak peak;
  peak.value = -std::numeric_limits<double>::infinity();
  const SphereGrid grid = make_sphere_grid(bandwidth);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const double v = values.at(j, k, l).real();
        if (v > peak.value) {
          peak.value = v;
          peak.rotation = EulerZYZ(kPi * j / bandwidth, grid.thetas[k], kPi * l / bandwidth);
        }
      }
    }
  }
  return peak;
}

}  // namespace so3kit
