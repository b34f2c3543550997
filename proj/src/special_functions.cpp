#include "so3kit/special_functions.hpp"

#include <cmath>
#include <functional>

#include "so3kit/errors.hpp"

namespace so3kit {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kClosedFormMaxDegree = 16;

// log n! for n up to the largest factorial appearing at desk degrees
const double* log_factorials() {
  static const std::vector<double> table = [] {
    std::vector<double> t(512);
    t[0] = 0.0;
    for (std::size_t n = 1; n < t.size(); ++n) t[n] = t[n - 1] + std::log(double(n));
    return t;
  }();
  return table.data();
}

double lf(int n) { return log_factorials()[n]; }

// P_{mn}^l(cos beta) by the closed-form sum over the Leibniz expansion of
// the Rodrigues-type derivative, written in cos/sin(beta/2). The sign
// (-1)^(k+m-n) carries the index correction that makes the matrices satisfy
// the spherical-harmonics link rho^{m0} = sqrt(4pi/(2l+1)) conj(Y_m)
// (see the conformance note in the README).
double wigner_entry_closed(int l, int m, int n, double beta) {
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  const int kmin = std::max(0, n - m);
  const int kmax = std::min(l - m, l + n);
  const double lognum =
      0.5 * (lf(l + m) + lf(l - m) + lf(l + n) + lf(l - n));
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    double logmag = lognum - lf(k) - lf(l - m - k) - lf(l + n - k) - lf(m - n + k);
    double term = std::exp(logmag);
    int ce = 2 * l + n - m - 2 * k, se = 2 * k + m - n;
    term *= std::pow(c, ce) * std::pow(s, se);
    sum += ((k + m - n) & 1) ? -term : term;
  }
  return sum;
}

// Single-term seed at l0 = max(|m|, |n|); no cancellation at any degree.
double wigner_entry_seed(int m, int n, double beta) {
  const int l = std::max(std::abs(m), std::abs(n));
  return wigner_entry_closed(l, m, n, beta);
}

// Upward three-term recurrence in l at fixed (m, n).
// J sqrt(((J+1)^2-m^2)((J+1)^2-n^2)) d^{J+1}
//   = (2J+1)(J(J+1)x - mn) d^J - (J+1) sqrt((J^2-m^2)(J^2-n^2)) d^{J-1}
void wigner_entry_recurrence(int m, int n, double beta, int lmax,
                             const std::function<void(int, double)>& emit) {
  const double x = std::cos(beta);
  const int l0 = std::max(std::abs(m), std::abs(n));
  if (l0 > lmax) return;
  double prev = 0.0;
  double cur = wigner_entry_seed(m, n, beta);
  emit(l0, cur);
  int start = l0;
  if (l0 == 0) {
    // J = 0 step is degenerate; d^1_{00} = x directly
    if (lmax == 0) return;
    prev = cur;
    cur = x;
    emit(1, cur);
    start = 1;
  }
  for (int J = start; J < lmax; ++J) {
    const double ap = std::sqrt(double(((J + 1) * (J + 1) - m * m)) *
                                double(((J + 1) * (J + 1) - n * n))) /
                      (J + 1);
    const double am = (J == 0) ? 0.0
                               : std::sqrt(double((J * J - m * m)) * double((J * J - n * n))) / J;
    const double next =
        ((2 * J + 1) * (x - double(m) * n / (double(J) * (J + 1))) * cur - am * prev) / ap;
    prev = cur;
    cur = next;
    emit(J + 1, cur);
  }
}

double wigner_entry(int l, int m, int n, double beta) {
  if (l <= kClosedFormMaxDegree) return wigner_entry_closed(l, m, n, beta);
  double out = 0.0;
  wigner_entry_recurrence(m, n, beta, l, [&](int ll, double v) {
    if (ll == l) out = v;
  });
  return out;
}

double sph_harm_norm(int l, int m) {
  return std::sqrt((2 * l + 1) / (4.0 * kPi) * std::exp(lf(l - m) - lf(l + m)));
}
}  // namespace

double legendre(int l, double x) {
  if (l < 0) throw DomainError("legendre: l must be >= 0");
  if (std::abs(x) > 1.0) throw DomainError("legendre: |x| must be <= 1");
  if (l == 0) return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= l; ++k) {
    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double assoc_legendre(int l, int m, double x) {
  if (m < 0 || m > l) throw DomainError("assoc_legendre: need 0 <= m <= l");
  if (std::abs(x) > 1.0) throw DomainError("assoc_legendre: |x| must be <= 1");
  if (l <= kClosedFormMaxDegree) {
    // (-1)^(l+m)/(2^l l!) (1-x^2)^(m/2) d^{l+m}/dx^{l+m} (1-x^2)^l,
    // derivative expanded through the binomial sum of (1-x^2)^l
    double sum = 0.0;
    for (int j = (l + m + 1) / 2; j <= l; ++j) {
      double logmag = lf(2 * j) - lf(j) - lf(l - j) - lf(2 * j - l - m) - l * std::log(2.0);
      double term = std::exp(logmag);
      if (2 * j - l - m > 0) term *= std::pow(x, 2 * j - l - m);
      sum += (j & 1) ? -term : term;
    }
    if ((l + m) & 1) sum = -sum;
    return sum * std::pow((1.0 - x) * (1.0 + x), m / 2.0);
  }
  // stable route at large degree via the Wigner column n = 0
  double beta = std::acos(std::clamp(x, -1.0, 1.0));
  return std::exp(0.5 * (lf(l + m) - lf(l - m))) * wigner_entry(l, m, 0, beta);
}

Eigen::MatrixXd wigner_d(int l, double beta) {
  if (l < 0) throw DomainError("wigner_d: l must be >= 0");
  const int d = 2 * l + 1;
  Eigen::MatrixXd out(d, d);
  if (l <= kClosedFormMaxDegree) {
    for (int m = -l; m <= l; ++m)
      for (int n = -l; n <= l; ++n) out(m + l, n + l) = wigner_entry_closed(l, m, n, beta);
    return out;
  }
  for (int m = -l; m <= l; ++m) {
    for (int n = -l; n <= l; ++n) {
      wigner_entry_recurrence(m, n, beta, l, [&](int ll, double v) {
        if (ll == l) out(m + l, n + l) = v;
      });
    }
  }
  return out;
}

WignerD wigner_D(int l, const EulerZYZ& g) {
  WignerD D;
  D.degree = l;
  Eigen::MatrixXd little = wigner_d(l, g.beta);
  D.entries.resize(2 * l + 1, 2 * l + 1);
  const std::complex<double> i(0.0, 1.0);
  for (int m = -l; m <= l; ++m) {
    for (int n = -l; n <= l; ++n) {
      D.entries(m + l, n + l) = std::exp(-i * (m * g.alpha + n * g.gamma)) * little(m + l, n + l);
    }
  }
  return D;
}

std::complex<double> sph_harm(int l, int m, const SpherePoint& x) {
  if (l < 0 || std::abs(m) > l) throw DomainError("sph_harm: need |m| <= l");
  const int ma = std::abs(m);
  std::complex<double> y = sph_harm_norm(l, ma) * assoc_legendre(l, ma, std::cos(x.theta)) *
                           std::exp(std::complex<double>(0.0, ma * x.phi));
  if (m >= 0) return y;
  double sign = (ma & 1) ? -1.0 : 1.0;
  return sign * std::conj(y);
}

Eigen::VectorXcd sph_harm_vector(int l, const SpherePoint& x) {
  Eigen::VectorXcd v(2 * l + 1);
  for (int m = -l; m <= l; ++m) v(m + l) = sph_harm(l, m, x);
  return v;
}

Eigen::VectorXcd rotate_sph_harm_vector(int l, const EulerZYZ& g, const SpherePoint& x) {
  return wigner_D(l, g).entries.conjugate() * sph_harm_vector(l, x);
}

WignerTable::WignerTable(const SphereGrid& grid, int lmax) : lmax_(lmax) {
  tables_.resize(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    tables_[j].reserve(lmax);
    const double beta = grid.thetas[j];
    if (lmax - 1 <= kClosedFormMaxDegree) {
      for (int l = 0; l < lmax; ++l) tables_[j].push_back(wigner_d(l, beta));
    } else {
      for (int l = 0; l < lmax; ++l)
        tables_[j].emplace_back(Eigen::MatrixXd::Zero(2 * l + 1, 2 * l + 1));
      for (int m = -(lmax - 1); m <= lmax - 1; ++m) {
        for (int n = -(lmax - 1); n <= lmax - 1; ++n) {
          wigner_entry_recurrence(m, n, beta, lmax - 1, [&](int l, double v) {
            if (std::abs(m) <= l && std::abs(n) <= l) tables_[j][l](m + l, n + l) = v;
          });
        }
      }
    }
  }
}

}  // namespace so3kit
