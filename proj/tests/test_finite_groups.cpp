#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "so3kit/errors.hpp"
#include "so3kit/finite_groups.hpp"

using namespace so3kit;
using Complex = std::complex<double>;

namespace {

int find_order_two(const FiniteGroup& g) {
  for (int e = 0; e < g.order; ++e)
    if (e != g.identity && g.mul(e, e) == g.identity) return e;
  REQUIRE(false);
  return -1;
}

GroupFunction random_fn(int size, std::mt19937_64& gen,
                        GroupFunction::Domain dom = GroupFunction::Domain::Group) {
  std::uniform_real_distribution<double> uni(-1, 1);
  GroupFunction f;
  f.domain = dom;
  f.values.resize(size, 1);
  for (int i = 0; i < size; ++i) f.values(i, 0) = Complex(uni(gen), uni(gen));
  return f;
}

GroupFunction shift_group(const FiniteGroup& g, const GroupFunction& f, int u) {
  GroupFunction out = f;
  for (int e = 0; e < g.order; ++e) out.values.row(e) = f.values.row(g.mul(g.inv(u), e));
  return out;
}

GroupFunction shift_cosets(const CosetSpace& x, const GroupFunction& f, int u) {
  GroupFunction out = f;
  for (int c = 0; c < x.count(); ++c) out.values.row(c) = f.values.row(x.act(x.group.inv(u), c));
  return out;
}
}  // namespace

TEST_CASE("group construction") {
  const FiniteGroup c4 = make_cyclic(4);
  CHECK(c4.order == 4);
  CHECK(c4.mul(2, 3) == 1);  // a^2 a^3 = a^5 = a

  const FiniteGroup d4 = make_dihedral(4);
  CHECK(d4.order == 8);
  bool abelian = true;
  for (int a = 0; a < 8 && abelian; ++a)
    for (int b = 0; b < 8; ++b)
      if (d4.mul(a, b) != d4.mul(b, a)) { abelian = false; break; }
  CHECK_FALSE(abelian);

  CHECK(make_symmetric(3).order == 6);
  CHECK(make_symmetric(4).order == 24);  // n! elements
  CHECK_THROWS_AS(make_symmetric(5), UnsupportedSize);
  CHECK_THROWS_AS(make_group("frieze", 4), DomainError);

  // identity/inverse laws come out of validation
  for (int a = 0; a < d4.order; ++a) {
    CHECK(d4.mul(a, d4.inv(a)) == d4.identity);
    CHECK(d4.mul(d4.inv(a), a) == d4.identity);
  }

  // a broken table is rejected
  std::vector<int> bad{0, 1, 1, 0};
  bad[1] = 0;  // not a Latin square anymore
  CHECK_THROWS_AS(make_group_from_table(bad), DomainError);
}

TEST_CASE("coset spaces") {
  const FiniteGroup s3 = make_symmetric(3);

  // trivial subgroup: every coset is a singleton
  const CosetSpace triv = coset_space(s3, {s3.identity}, CosetSide::Left);
  CHECK(triv.count() == s3.order);

  // an order-2 subgroup gives three left cosets
  const int t = find_order_two(s3);
  const CosetSpace x = coset_space(s3, {s3.identity, t}, CosetSide::Left);
  CHECK(x.count() == 3);
  for (const auto& coset : x.cosets) CHECK(coset.size() == 2);

  // partition: every element appears exactly once
  std::vector<int> seen(s3.order, 0);
  for (const auto& coset : x.cosets)
    for (int e : coset) seen[e]++;
  for (int c : seen) CHECK(c == 1);

  // section representative lies in its coset, identity coset maps to e
  for (int c = 0; c < x.count(); ++c) {
    CHECK(std::count(x.cosets[c].begin(), x.cosets[c].end(), x.section[c]) == 1);
  }
  CHECK(x.section[x.coset_of[s3.identity]] == s3.identity);

  CHECK_THROWS_AS(coset_space(s3, {s3.identity, t, (t + 1) % 6}, CosetSide::Left), NotASubgroup);

  // double cosets of the order-2 subgroup in S3: enumeration gives 2
  CHECK(double_coset_count(s3, {s3.identity, t}, {s3.identity, t}) == 2);
}

TEST_CASE("twist") {
  const FiniteGroup d4 = make_dihedral(4);
  const CosetSpace x = coset_space(d4, {d4.identity, 4}, CosetSide::Left);

  // identity twists trivially
  for (int c = 0; c < x.count(); ++c) CHECK(twist(x, c, d4.identity) == d4.identity);

  // the defining relation g s(x) = s(gx) h(x, g) with h in H, exhaustively
  for (int c = 0; c < x.count(); ++c) {
    for (int g = 0; g < d4.order; ++g) {
      const int h = twist(x, c, g);
      CHECK((h == d4.identity || h == 4));
      CHECK(d4.mul(g, x.section[c]) == d4.mul(x.section[x.act(g, c)], h));
    }
  }

  // cocycle relation h(x, g1 g2) = h(g2 x, g1) h(x, g2)
  for (int c = 0; c < x.count(); ++c)
    for (int g1 = 0; g1 < d4.order; ++g1)
      for (int g2 = 0; g2 < d4.order; ++g2)
        CHECK(twist(x, c, d4.mul(g1, g2)) ==
              d4.mul(twist(x, x.act(g2, c), g1), twist(x, c, g2)));
}

TEST_CASE("finite_convolve") {
  const FiniteGroup c6 = make_cyclic(6);
  std::mt19937_64 gen(41);
  const GroupFunction k = random_fn(c6.order, gen);

  // delta at the identity reproduces k / |G|
  GroupFunction delta = random_fn(c6.order, gen);
  delta.values.setZero();
  delta.values(c6.identity, 0) = 1.0;
  const GroupFunction out = finite_convolve(c6, delta, k);
  for (int e = 0; e < c6.order; ++e) {
    CHECK(std::abs(out.values(e, 0) - k.values(e, 0) / double(c6.order)) <= 1e-15);
  }

  GroupFunction zero = k;
  zero.values.setZero();
  const GroupFunction dead = finite_convolve(c6, k, zero);
  CHECK(dead.values.cwiseAbs().maxCoeff() == 0.0);

  // exhaustive equivariance on cyclic(6)
  const GroupFunction f = random_fn(c6.order, gen);
  for (int u = 0; u < c6.order; ++u) {
    const GroupFunction a = finite_convolve(c6, shift_group(c6, f, u), k);
    const GroupFunction b = shift_group(c6, finite_convolve(c6, f, k), u);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= 1e-12);
  }

  GroupFunction wrong = random_fn(5, gen);
  CHECK_THROWS_AS(finite_convolve(c6, f, wrong), DomainMismatch);
}

TEST_CASE("lift and project") {
  const FiniteGroup d4 = make_dihedral(4);
  const CosetSpace x = coset_space(d4, {d4.identity, 4}, CosetSide::Left);
  std::mt19937_64 gen(43);

  const GroupFunction local = random_fn(x.count(), gen, GroupFunction::Domain::Cosets);
  const GroupFunction up = lift(x, local);
  CHECK(up.size() == d4.order);

  // lift of a coset indicator marks |H| elements
  GroupFunction ind = local;
  ind.values.setZero();
  ind.values(1, 0) = 1.0;
  const GroupFunction upind = lift(x, ind);
  int marked = 0;
  for (int e = 0; e < d4.order; ++e)
    if (std::abs(upind.values(e, 0)) > 0) ++marked;
  CHECK(marked == 2);

  // project is a left inverse of lift
  const GroupFunction back = project(x, up);
  CHECK((back.values - local.values).cwiseAbs().maxCoeff() <= 1e-15);

  // projecting a function already constant on cosets recovers its values
  const GroupFunction again = project(x, lift(x, back));
  CHECK((again.values - local.values).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("generalized_convolve case reductions and equivariance") {
  std::mt19937_64 gen(47);
  for (const auto& make : {+[] { return make_cyclic(6); }, +[] { return make_dihedral(4); },
                           +[] { return make_symmetric(3); }, +[] { return make_symmetric(4); }}) {
    const FiniteGroup g = make();
    const int h2 = find_order_two(g);
    const CosetSpace x = coset_space(g, {g.identity, h2}, CosetSide::Left);
    const GroupFunction fg = random_fn(g.order, gen);
    const GroupFunction kg = random_fn(g.order, gen);
    const GroupFunction fx = random_fn(x.count(), gen, GroupFunction::Domain::Cosets);
    const GroupFunction kx = random_fn(x.count(), gen, GroupFunction::Domain::Cosets);

    // Case IV with trivial subgroups equals finite_convolve
    const GroupFunction iv = generalized_convolve(g, fg, nullptr, kg, nullptr);
    const GroupFunction plain = finite_convolve(g, fg, kg);
    CHECK((iv.values - plain.values).cwiseAbs().maxCoeff() == 0.0);

    // Case I: output constant on cosets (full-group computation)
    const GroupFunction full = finite_convolve(g, fg, lift(x, kx));
    for (int c = 0; c < x.count(); ++c)
      for (int e : x.cosets[c])
        CHECK((full.values.row(e) - full.values.row(x.section[c])).cwiseAbs().maxCoeff() <=
              1e-12);

    // exhaustive equivariance of all four cases
    for (int u = 0; u < g.order; ++u) {
      {
        const GroupFunction a = generalized_convolve(g, shift_group(g, fg, u), nullptr, kg, nullptr);
        const GroupFunction b = shift_group(g, iv, u);
        CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= 1e-12);
      }
      {
        const GroupFunction base = generalized_convolve(g, fg, nullptr, kx, &x);
        const GroupFunction a = generalized_convolve(g, shift_group(g, fg, u), nullptr, kx, &x);
        const GroupFunction b = shift_cosets(x, base, u);
        CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= 1e-12);
      }
      {
        const GroupFunction base = generalized_convolve(g, fx, &x, kg, nullptr);
        const GroupFunction a = generalized_convolve(g, shift_cosets(x, fx, u), &x, kg, nullptr);
        const GroupFunction b = shift_group(g, base, u);
        CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= 1e-12);
      }
      {
        const GroupFunction base = generalized_convolve(g, fx, &x, kx, &x);
        const GroupFunction a = generalized_convolve(g, shift_cosets(x, fx, u), &x, kx, &x);
        const GroupFunction b = shift_cosets(x, base, u);
        CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
  }
}

TEST_CASE("case III agrees with the reduced double-coset formula") {
  const FiniteGroup g = make_symmetric(3);
  const int t = find_order_two(g);
  const CosetSpace x = coset_space(g, {g.identity, t}, CosetSide::Left);
  const CosetSpace right = coset_space(g, {g.identity, t}, CosetSide::Right);
  std::mt19937_64 gen(53);
  const GroupFunction f = random_fn(x.count(), gen, GroupFunction::Domain::Cosets);
  const GroupFunction k = random_fn(x.count(), gen, GroupFunction::Domain::Cosets);
  const GroupFunction via_full = generalized_convolve(g, f, &x, k, &x);

  for (int c = 0; c < x.count(); ++c) {
    Complex acc(0, 0);
    for (int rc = 0; rc < right.count(); ++rc) {
      const int v = right.section[rc];
      Complex ktilde(0, 0);
      for (int h : x.subgroup) ktilde += k.values(x.coset_of[g.mul(h, v)], 0);
      acc += f.values(x.coset_of[g.mul(x.section[c], g.inv(v))], 0) * ktilde;
    }
    acc /= double(g.order);
    CHECK(std::abs(acc - via_full.values(c, 0)) <= 1e-12);
  }
}

TEST_CASE("representations") {
  const FiniteGroup d4 = make_dihedral(4);
  const std::vector<int> h{d4.identity, 4};
  const FiniteRep triv = trivial_rep(d4, h);
  CHECK(triv.degree == 1);
  const FiniteRep sgn = sign_rep(d4, h);
  CHECK(sgn.at(4)(0, 0).real() == -1.0);
  CHECK_THROWS_AS(sgn.at(1), DomainMismatch);

  // a non-homomorphic table is rejected
  std::vector<Eigen::MatrixXcd> bad{Eigen::MatrixXcd::Identity(1, 1),
                                    2.0 * Eigen::MatrixXcd::Identity(1, 1)};
  CHECK_THROWS_AS(make_rep(d4, h, bad), DomainError);
}

TEST_CASE("mackey lift and two-path correlation") {
  const FiniteGroup d4 = make_dihedral(4);
  const std::vector<int> h{d4.identity, 4};
  const CosetSpace xi = coset_space(d4, h, CosetSide::Left);
  const CosetSpace xo = xi;
  const FiniteRep rho = sign_rep(d4, h);
  std::mt19937_64 gen(59);
  std::uniform_real_distribution<double> uni(-1, 1);

  Eigen::MatrixXcd local(xi.count(), 1);
  for (int c = 0; c < xi.count(); ++c) local(c, 0) = Complex(uni(gen), uni(gen));

  // Mackey condition f(gh) = rho(h^-1) f(g), and projection inverts the lift
  const Eigen::MatrixXcd lifted = mackey_lift(xi, rho, local);
  for (int e = 0; e < d4.order; ++e) {
    for (int hh : h) {
      const Eigen::MatrixXcd expect = rho.at(d4.inv(hh)) * lifted.row(e).transpose();
      CHECK((lifted.row(d4.mul(e, hh)).transpose() - expect).cwiseAbs().maxCoeff() <= 1e-15);
    }
  }
  CHECK((mackey_project(xi, lifted) - local).cwiseAbs().maxCoeff() == 0.0);

  // admissible kernels solved from the constraint; dimension matches Eq.-kg space
  const LinearSpace locals = admissible_local_kernels(xi, h, rho, rho);
  const LinearSpace onG = admissible_kernel_space(d4, h, h, rho, rho);
  CHECK(locals.dimension == onG.dimension);
  REQUIRE(locals.dimension > 0);

  std::vector<Eigen::MatrixXcd> kernel(xi.count(), Eigen::MatrixXcd::Zero(1, 1));
  for (int b = 0; b < locals.dimension; ++b)
    for (int c = 0; c < xi.count(); ++c)
      kernel[c] += double(2 * b + 1) * locals.basis[b].block(c, 0, 1, 1);

  const Eigen::MatrixXcd o1 = induce_and_correlate(xi, xo, rho, rho, kernel, local);
  const Eigen::MatrixXcd o2 = induce_and_correlate_mackey(xi, xo, rho, rho, kernel, local);
  CHECK((o1 - o2).cwiseAbs().maxCoeff() <= 1e-12);

  // exhaustive equivariance under the induced representation
  for (int u = 0; u < d4.order; ++u) {
    const Eigen::MatrixXcd pi = induced_rep_matrix(xi, rho, u);
    const Eigen::MatrixXcd po = induced_rep_matrix(xo, rho, u);
    const Eigen::VectorXcd shifted = pi * local.col(0);
    Eigen::MatrixXcd shifted_field = shifted;
    const Eigen::MatrixXcd lhs = induce_and_correlate(xi, xo, rho, rho, kernel, shifted_field);
    const Eigen::VectorXcd rhs = po * o1.col(0);
    CHECK((lhs.col(0) - rhs).cwiseAbs().maxCoeff() <= 1e-12);
  }

  // a kernel violating the precondition is rejected with the offending pair
  std::vector<Eigen::MatrixXcd> broken = kernel;
  broken[1](0, 0) += 1.0;
  CHECK_THROWS_AS(induce_and_correlate(xi, xo, rho, rho, broken, local), KernelNotEquivariant);

  // trivial representations collapse to a scalar Case-III convolution up to
  // the documented |G|/|Hi| normalization and kernel reflection
  const FiniteRep triv = trivial_rep(d4, h);
  std::vector<Eigen::MatrixXcd> kflat(xi.count());
  for (int c = 0; c < xi.count(); ++c) kflat[c] = Eigen::MatrixXcd::Constant(1, 1, Complex(0, 0));
  // admissible scalar kernels: constant on Ho-orbits of G/Hi
  const LinearSpace flat = admissible_local_kernels(xi, h, triv, triv);
  for (int c = 0; c < xi.count(); ++c)
    for (int b = 0; b < flat.dimension; ++b)
      kflat[c] += double(b + 1) * flat.basis[b].block(c, 0, 1, 1);
  Eigen::MatrixXcd field(xi.count(), 1);
  for (int c = 0; c < xi.count(); ++c) field(c, 0) = Complex(uni(gen), uni(gen));
  const Eigen::MatrixXcd corr = induce_and_correlate(xi, xo, triv, triv, kflat, field);

  GroupFunction ff;
  ff.domain = GroupFunction::Domain::Cosets;
  ff.values = field;
  GroupFunction kk;
  kk.domain = GroupFunction::Domain::Cosets;
  kk.values.resize(xo.count(), 1);
  // k'(w Ho) = k_H(w^-1 Hi), well defined because k_H is Ho-invariant
  for (int c = 0; c < xo.count(); ++c)
    kk.values(c, 0) = kflat[xi.coset_of[d4.inv(xo.section[c])]](0, 0);
  const GroupFunction conv = generalized_convolve(d4, ff, &xi, kk, &xo);
  const double scale = double(d4.order) / double(xi.subgroup.size());
  CHECK((scale * conv.values - corr).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("equivariant map space dimensions") {
  {  // cyclic(4), trivial subgroups, scalar fields: dimension |G| = 4
    const FiniteGroup c4 = make_cyclic(4);
    const CosetSpace x = coset_space(c4, {c4.identity}, CosetSide::Left);
    const FiniteRep triv = trivial_rep(c4, {c4.identity});
    const LinearSpace maps = equivariant_map_space(x, x, triv, triv);
    CHECK(maps.dimension == 4);
    const LinearSpace kernels = admissible_kernel_space(c4, {c4.identity}, {c4.identity}, triv, triv);
    CHECK(kernels.dimension == 4);
  }

  {  // scalar fields: dimension equals the double-coset count
    for (const auto& make : {+[] { return make_symmetric(3); }, +[] { return make_dihedral(4); }}) {
      const FiniteGroup g = make();
      const int t = find_order_two(g);
      const std::vector<int> h{g.identity, t};
      const CosetSpace x = coset_space(g, h, CosetSide::Left);
      const FiniteRep triv = trivial_rep(g, h);
      const LinearSpace maps = equivariant_map_space(x, x, triv, triv);
      CHECK(maps.dimension == double_coset_count(g, h, h));
      CHECK(maps.dimension == admissible_kernel_space(g, h, h, triv, triv).dimension);
    }
  }

  {  // vector fields: map space == constrained kernel space (sign rep)
    const FiniteGroup d4 = make_dihedral(4);
    const std::vector<int> h{d4.identity, 4};
    const CosetSpace x = coset_space(d4, h, CosetSide::Left);
    const FiniteRep sgn = sign_rep(d4, h);
    const FiniteRep triv = trivial_rep(d4, h);
    CHECK(equivariant_map_space(x, x, sgn, triv).dimension ==
          admissible_kernel_space(d4, h, h, sgn, triv).dimension);
    CHECK(equivariant_map_space(x, x, sgn, sgn).dimension ==
          admissible_kernel_space(d4, h, h, sgn, sgn).dimension);
  }

  {  // size guard
    const FiniteGroup c4 = make_cyclic(4);
    const CosetSpace x = coset_space(c4, {c4.identity}, CosetSide::Left);
    const FiniteRep wide = trivial_rep(c4, {c4.identity}, 5);
    CHECK_THROWS_AS(equivariant_map_space(x, x, wide, wide), SizeLimitExceeded);
  }
}
