#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "so3kit/errors.hpp"
#include "so3kit/special_functions.hpp"
#include "oracles.hpp"

using namespace so3kit;

namespace {
constexpr double kPi = 3.14159265358979323846;

double lfact(int n) { return std::lgamma(n + 1.0); }
}  // namespace

TEST_CASE("legendre polynomials") {
  CHECK(legendre(0, -0.3) == 1.0);
  CHECK(legendre(0, 0.9) == 1.0);
  for (double x : {-1.0, -0.4, 0.0, 0.7, 1.0}) CHECK(legendre(1, x) == doctest::Approx(x));
  CHECK(legendre(2, 0.5) == doctest::Approx(-0.125).epsilon(1e-14));
  CHECK_THROWS_AS(legendre(2, 1.5), DomainError);
  CHECK_THROWS_AS(legendre(-1, 0.0), DomainError);
}

TEST_CASE("associated legendre") {
  CHECK(assoc_legendre(2, 0, 0.5) == doctest::Approx(-0.125).epsilon(1e-13));
  CHECK(assoc_legendre(1, 1, 0.0) == doctest::Approx(-1.0).epsilon(1e-14));
  // m = 0 reduces to the Legendre polynomial
  for (int l = 0; l <= 10; ++l) {
    CHECK(assoc_legendre(l, 0, 0.37) == doctest::Approx(legendre(l, 0.37)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(assoc_legendre(2, 3, 0.0), DomainError);
  CHECK_THROWS_AS(assoc_legendre(2, -1, 0.0), DomainError);
  CHECK_THROWS_AS(assoc_legendre(2, 1, 1.01), DomainError);
}

TEST_CASE("associated legendre agrees with the Wigner column") {
  // P_l^m(x) = sqrt((l+m)!/(l-m)!) P^l_{m0}(x), cross-evaluated for l <= 8
  for (int l = 0; l <= 8; ++l) {
    for (int m = 0; m <= l; ++m) {
      for (double beta : {0.3, 1.1, 2.4}) {
        const double lhs = assoc_legendre(l, m, std::cos(beta));
        const double rhs =
            std::exp(0.5 * (lfact(l + m) - lfact(l - m))) * wigner_d(l, beta)(m + l, l);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("wigner_d basics") {
  for (int l : {0, 1, 3, 7}) {
    const Eigen::MatrixXd d = wigner_d(l, 0.0);
    CHECK((d - Eigen::MatrixXd::Identity(2 * l + 1, 2 * l + 1)).cwiseAbs().maxCoeff() == 0.0);
  }
  // entry (0, 0) at degree 1 is cos(beta)
  CHECK(wigner_d(1, kPi / 3)(1, 1) == doctest::Approx(0.5).epsilon(1e-14));

  // orthogonality of the real matrix
  for (int l : {1, 4, 9}) {
    const Eigen::MatrixXd d = wigner_d(l, 1.234);
    CHECK((d * d.transpose() - Eigen::MatrixXd::Identity(2 * l + 1, 2 * l + 1))
              .cwiseAbs()
              .maxCoeff() <= 1e-13);
  }
}

TEST_CASE("wigner_d closed form matches the recurrence oracle, l <= 16") {
  double worst = 0.0;
  for (int l = 0; l <= 16; ++l) {
    for (double beta : {0.05, 0.7, kPi / 2, 2.3, 3.1}) {
      const Eigen::MatrixXd d = wigner_d(l, beta);
      for (int m = -l; m <= l; ++m) {
        for (int n = -l; n <= l; ++n) {
          const double ref = oracles::wigner_d_entry(l, m, n, beta);
          const double scale = std::max(1.0, std::abs(ref));
          worst = std::max(worst, std::abs(d(m + l, n + l) - ref) / scale);
        }
      }
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("production recurrence path matches the oracle above the closed-form cutoff") {
  for (int l : {17, 24, 32}) {
    double worst = 0.0;
    for (double beta : {0.4, 1.9, 2.9}) {
      const Eigen::MatrixXd d = wigner_d(l, beta);
      for (int m = -l; m <= l; ++m)
        for (int n = -l; n <= l; ++n)
          worst = std::max(worst,
                           std::abs(d(m + l, n + l) - oracles::wigner_d_entry(l, m, n, beta)));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("wigner_d index symmetry P_mn = P_-n,-m") {
  for (int l : {1, 2, 5, 8}) {
    const Eigen::MatrixXd d = wigner_d(l, 0.877);
    double worst = 0.0;
    for (int m = -l; m <= l; ++m)
      for (int n = -l; n <= l; ++n)
        worst = std::max(worst, std::abs(d(m + l, n + l) - d(-n + l, -m + l)));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("wigner_D structure and homomorphism") {
  const WignerD id = wigner_D(3, EulerZYZ(0, 0, 0));
  CHECK((id.entries - Eigen::MatrixXcd::Identity(7, 7)).cwiseAbs().maxCoeff() == 0.0);

  // z-rotations are diagonal with entries e^{-i alpha m}
  const double alpha = 1.3;
  for (int l : {1, 4}) {
    const WignerD d = wigner_D(l, EulerZYZ(alpha, 0, 0));
    for (int m = -l; m <= l; ++m) {
      for (int n = -l; n <= l; ++n) {
        const Complex expect =
            (m == n) ? std::exp(Complex(0, -alpha * m)) : Complex(0, 0);
        CHECK(std::abs(d.at(m, n) - expect) <= 1e-15);
      }
    }
  }

  std::mt19937_64 gen(11);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const EulerZYZ g1 = oracles::random_rotation(gen), g2 = oracles::random_rotation(gen);
    const int l = int(gen() % 9);
    const Eigen::MatrixXcd lhs = wigner_D(l, compose(g1, g2)).entries;
    const Eigen::MatrixXcd rhs = wigner_D(l, g1).entries * wigner_D(l, g2).entries;
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("wigner_D unitarity up to l = 32") {
  std::mt19937_64 gen(13);
  for (int l : {1, 8, 16, 24, 32}) {
    const EulerZYZ g = oracles::random_rotation(gen);
    const Eigen::MatrixXcd d = wigner_D(l, g).entries;
    CHECK((d * d.adjoint() - Eigen::MatrixXcd::Identity(2 * l + 1, 2 * l + 1))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
  }
}

TEST_CASE("sph_harm values") {
  CHECK(sph_harm(0, 0, SpherePoint(0.7, 1.9)).real() ==
        doctest::Approx(0.28209479177387814).epsilon(1e-14));  // 1/(2 sqrt(pi))
  CHECK(sph_harm(0, 0, SpherePoint(0.7, 1.9)).imag() == 0.0);
  CHECK(sph_harm(1, 0, SpherePoint(0, 0)).real() ==
        doctest::Approx(0.48860251190291992).epsilon(1e-14));  // sqrt(3/(4 pi))
  CHECK_THROWS_AS(sph_harm(1, 2, SpherePoint(0.5, 0.5)), DomainError);

  // conj(Y_l^m) = (-1)^m Y_l^{-m}
  const SpherePoint x(1.234, 0.456);
  for (int l : {1, 3, 6}) {
    for (int m = 1; m <= l; ++m) {
      const Complex lhs = std::conj(sph_harm(l, m, x));
      const Complex rhs = (m % 2 ? -1.0 : 1.0) * sph_harm(l, -m, x);
      CHECK(std::abs(lhs - rhs) <= 1e-14);
    }
  }
}

TEST_CASE("wigner to spherical harmonic link") {
  // rho_l^{m0}(g) = sqrt(4pi/(2l+1)) conj(Y_l^m(beta, alpha))
  std::mt19937_64 gen(17);
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    const EulerZYZ g = oracles::random_rotation(gen);
    const int l = int(gen() % 9);
    const WignerD d = wigner_D(l, g);
    for (int m = -l; m <= l; ++m) {
      const Complex rhs = std::sqrt(4 * kPi / (2 * l + 1)) *
                          std::conj(sph_harm(l, m, SpherePoint(g.beta, g.alpha)));
      worst = std::max(worst, std::abs(d.at(m, 0) - rhs));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("rotate_sph_harm_vector agrees with direct evaluation") {
  std::mt19937_64 gen(19);
  const SpherePoint x0(0.9, 2.5);
  for (int l : {0, 2, 5}) {
    const Eigen::VectorXcd same = rotate_sph_harm_vector(l, EulerZYZ(0, 0, 0), x0);
    CHECK((same - sph_harm_vector(l, x0)).cwiseAbs().maxCoeff() == 0.0);
  }

  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const EulerZYZ g = oracles::random_rotation(gen);
    const SpherePoint x = oracles::random_point(gen);
    const int l = int(gen() % 9);
    const Eigen::VectorXcd spectral = rotate_sph_harm_vector(l, g, x);
    const Eigen::VectorXcd direct = sph_harm_vector(l, act_on_point(g, x));
    worst = std::max(worst, (spectral - direct).cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-10);

  // z-rotation phases: Y_l^m(g x) = e^{i m alpha} Y_l^m(x)
  const double alpha = 0.77;
  for (int l : {1, 4}) {
    const SpherePoint x(1.1, 0.3);
    const Eigen::VectorXcd rotated = rotate_sph_harm_vector(l, EulerZYZ(alpha, 0, 0), x);
    const Eigen::VectorXcd base = sph_harm_vector(l, x);
    for (int m = -l; m <= l; ++m) {
      CHECK(std::abs(rotated(m + l) - std::exp(Complex(0, m * alpha)) * base(m + l)) <= 1e-13);
    }
  }
}

TEST_CASE("group-orthogonality of matrix elements by quadrature") {
  // (1/8pi^2) int rho^l_mn conj(rho^l'_m'n') = delta delta delta / (2l+1),
  // checked for l, l' <= 3 on the B = 4 Euler grid
  const int B = 4, L = 4;
  const SphereGrid grid = make_sphere_grid(B);
  const WignerTable table(grid, L);
  struct Entry { int l, m, n; };
  std::vector<Entry> entries;
  for (int l = 0; l < L; ++l)
    for (int m = -l; m <= l; ++m)
      for (int n = -l; n <= l; ++n) entries.push_back({l, m, n});
  const int nn = grid.size();
  double worst = 0.0;
  for (std::size_t a = 0; a < entries.size(); ++a) {
    for (std::size_t b = a; b < entries.size(); ++b) {
      Complex acc(0, 0);
      for (int j = 0; j < nn; ++j) {
        for (int k = 0; k < nn; ++k) {
          for (int g = 0; g < nn; ++g) {
            const double am = kPi * j / B, gm = kPi * g / B;
            const Complex va = std::polar(1.0, -(entries[a].m * am + entries[a].n * gm)) *
                               table.d(k, entries[a].l)(entries[a].m + entries[a].l,
                                                        entries[a].n + entries[a].l);
            const Complex vb = std::polar(1.0, -(entries[b].m * am + entries[b].n * gm)) *
                               table.d(k, entries[b].l)(entries[b].m + entries[b].l,
                                                        entries[b].n + entries[b].l);
            acc += grid.weights[k] * va * std::conj(vb);
          }
        }
      }
      acc *= (kPi / B) * (kPi / B) / (8.0 * kPi * kPi);
      const bool diag = a == b;
      const double target = diag ? 1.0 / (2 * entries[a].l + 1) : 0.0;
      worst = std::max(worst, std::abs(acc - target));
    }
  }
  CHECK(worst <= 1e-8);
}
