#include "so3kit/finite_groups.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

#include "so3kit/errors.hpp"

namespace so3kit {

namespace {
constexpr double kRepTol = 1e-12;
constexpr double kNullTol = 1e-9;

void validate_table(const FiniteGroup& g) {
  const int n = g.order;
  // Latin square
  for (int a = 0; a < n; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < n; ++b) {
      int r = g.mul(a, b), c = g.mul(b, a);
      if (r < 0 || r >= n || c < 0 || c >= n) throw DomainError("cayley: index out of range");
      if (row[r]++ || col[c]++) throw DomainError("cayley: not a Latin square");
    }
  }
  // associativity, exhaustive at these orders
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw DomainError("cayley: not associative");
}

int find_identity(const FiniteGroup& g) {
  for (int e = 0; e < g.order; ++e) {
    bool ok = true;
    for (int a = 0; a < g.order && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
    if (ok) return e;
  }
  throw DomainError("cayley: no identity element");
}

std::vector<Eigen::MatrixXcd> nullspace(const Eigen::MatrixXcd& a, int rows, int cols) {
  // basis of {v : a v = 0}, reshaped row-major into rows x cols matrices;
  // callers always pass systems with at least as many rows as columns
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  std::vector<Eigen::MatrixXcd> basis;
  for (int i = 0; i < int(sv.size()); ++i) {
    if (sv(i) < kNullTol) {
      Eigen::VectorXcd v = svd.matrixV().col(i);
      basis.push_back(Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                               Eigen::Dynamic, Eigen::RowMajor>>(
          v.data(), rows, cols));
    }
  }
  return basis;
}
}  // namespace

FiniteGroup make_group_from_table(std::vector<int> table, std::vector<std::string> labels) {
  FiniteGroup g;
  const std::size_t n2 = table.size();
  int n = int(std::lround(std::sqrt(double(n2))));
  if (std::size_t(n) * n != n2 || n == 0) throw DomainError("cayley: table is not square");
  if (n > 64) throw UnsupportedSize("cayley: order > 64 not supported");
  g.order = n;
  g.table = std::move(table);
  validate_table(g);
  g.identity = find_identity(g);
  g.inverse.resize(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.mul(a, b) == g.identity) {
        if (g.mul(b, a) != g.identity) throw DomainError("cayley: one-sided inverse");
        g.inverse[a] = b;
      }
    }
  }
  if (labels.empty()) {
    for (int a = 0; a < n; ++a) g.labels.push_back("g" + std::to_string(a));
  } else {
    if (int(labels.size()) != n) throw DomainError("cayley: label count mismatch");
    g.labels = std::move(labels);
  }
  return g;
}

FiniteGroup make_cyclic(int n) {
  if (n < 1 || n > 64) throw UnsupportedSize("cyclic: need 1 <= n <= 64");
  std::vector<int> t(n * n);
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    labels.push_back("r" + std::to_string(a));
    for (int b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  }
  return make_group_from_table(std::move(t), std::move(labels));
}

FiniteGroup make_dihedral(int n) {
  if (n < 1 || 2 * n > 64) throw UnsupportedSize("dihedral: need 1 <= n <= 32");
  const int N = 2 * n;
  // element a + n*b is r^a s^b with s r = r^-1 s
  std::vector<int> t(N * N);
  std::vector<std::string> labels(N);
  for (int a1 = 0; a1 < n; ++a1) {
    for (int b1 = 0; b1 < 2; ++b1) {
      labels[a1 + n * b1] = (b1 ? "r" + std::to_string(a1) + "s" : "r" + std::to_string(a1));
      for (int a2 = 0; a2 < n; ++a2) {
        for (int b2 = 0; b2 < 2; ++b2) {
          int a = ((b1 == 0 ? a1 + a2 : a1 - a2) % n + n) % n;
          int b = (b1 + b2) % 2;
          t[(a1 + n * b1) * N + (a2 + n * b2)] = a + n * b;
        }
      }
    }
  }
  return make_group_from_table(std::move(t), std::move(labels));
}

FiniteGroup make_symmetric(int n) {
  if (n < 1 || n > 4) throw UnsupportedSize("symmetric: need 1 <= n <= 4");
  std::vector<std::array<int, 4>> perms;
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  do {
    std::array<int, 4> q{0, 1, 2, 3};
    for (int i = 0; i < n; ++i) q[i] = idx[i];
    perms.push_back(q);
  } while (std::next_permutation(idx.begin(), idx.end()));
  const int N = int(perms.size());
  std::map<std::array<int, 4>, int> where;
  for (int i = 0; i < N; ++i) where[perms[i]] = i;
  std::vector<int> t(N * N);
  std::vector<std::string> labels(N);
  for (int i = 0; i < N; ++i) {
    std::string s = "(";
    for (int v = 0; v < n; ++v) s += std::to_string(perms[i][v]);
    labels[i] = s + ")";
    for (int j = 0; j < N; ++j) {
      std::array<int, 4> comp{0, 1, 2, 3};
      for (int v = 0; v < n; ++v) comp[v] = perms[i][perms[j][v]];
      t[i * N + j] = where.at(comp);
    }
  }
  return make_group_from_table(std::move(t), std::move(labels));
}

FiniteGroup make_group(const std::string& kind, int n) {
  if (kind == "cyclic") return make_cyclic(n);
  if (kind == "dihedral") return make_dihedral(n);
  if (kind == "symmetric") return make_symmetric(n);
  throw DomainError("make_group: unknown kind '" + kind + "'");
}

int CosetSpace::act(int g, int x) const {
  if (side == CosetSide::Left) return coset_of[group.mul(g, section[x])];
  return coset_of[group.mul(section[x], g)];
}

CosetSpace coset_space(const FiniteGroup& g, std::vector<int> subgroup_elements, CosetSide side) {
  std::sort(subgroup_elements.begin(), subgroup_elements.end());
  subgroup_elements.erase(std::unique(subgroup_elements.begin(), subgroup_elements.end()),
                          subgroup_elements.end());
  for (int a : subgroup_elements) {
    if (a < 0 || a >= g.order) throw NotASubgroup("coset_space: element out of range");
    for (int b : subgroup_elements) {
      if (!std::binary_search(subgroup_elements.begin(), subgroup_elements.end(), g.mul(a, b)))
        throw NotASubgroup("coset_space: set not closed under the group operation");
    }
  }
  if (!std::binary_search(subgroup_elements.begin(), subgroup_elements.end(), g.identity))
    throw NotASubgroup("coset_space: identity missing");

  CosetSpace x;
  x.group = g;
  x.subgroup = subgroup_elements;
  x.side = side;
  x.coset_of.assign(g.order, -1);
  for (int e = 0; e < g.order; ++e) {
    if (x.coset_of[e] >= 0) continue;
    std::vector<int> members;
    for (int h : subgroup_elements) {
      members.push_back(side == CosetSide::Left ? g.mul(e, h) : g.mul(h, e));
    }
    std::sort(members.begin(), members.end());
    const int ci = int(x.cosets.size());
    for (int m : members) x.coset_of[m] = ci;
    x.cosets.push_back(std::move(members));
  }
  for (const auto& members : x.cosets) {
    bool has_identity = std::binary_search(members.begin(), members.end(), g.identity);
    x.section.push_back(has_identity ? g.identity : members.front());
  }
  return x;
}

int twist(const CosetSpace& x, int coset, int g) {
  if (x.side != CosetSide::Left) throw DomainMismatch("twist: defined for left coset spaces");
  const FiniteGroup& gr = x.group;
  const int gs = gr.mul(g, x.section[coset]);
  return gr.mul(gr.inv(x.section[x.coset_of[gs]]), gs);
}

int double_coset_count(const FiniteGroup& g, const std::vector<int>& h1,
                       const std::vector<int>& h2) {
  std::vector<char> seen(g.order, 0);
  int count = 0;
  for (int e = 0; e < g.order; ++e) {
    if (seen[e]) continue;
    ++count;
    for (int a : h1)
      for (int b : h2) seen[g.mul(g.mul(a, e), b)] = 1;
  }
  return count;
}

const Eigen::MatrixXcd& FiniteRep::at(int element) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), element);
  if (it == elements.end() || *it != element)
    throw DomainMismatch("FiniteRep: element outside the represented set");
  return matrices[it - elements.begin()];
}

FiniteRep make_rep(const FiniteGroup& g, std::vector<int> elements,
                   std::vector<Eigen::MatrixXcd> matrices) {
  if (elements.size() != matrices.size() || elements.empty())
    throw DomainError("make_rep: element/matrix count mismatch");
  std::vector<std::size_t> order(elements.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return elements[a] < elements[b]; });
  FiniteRep rep;
  rep.degree = int(matrices.front().rows());
  for (auto i : order) {
    rep.elements.push_back(elements[i]);
    rep.matrices.push_back(std::move(matrices[i]));
  }
  for (const auto& m : rep.matrices) {
    if (m.rows() != rep.degree || m.cols() != rep.degree)
      throw DomainError("make_rep: matrices must be square of equal degree");
  }
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(rep.degree, rep.degree);
  if ((rep.at(g.identity) - eye).cwiseAbs().maxCoeff() > kRepTol)
    throw DomainError("make_rep: rho(e) != I");
  for (int a : rep.elements) {
    for (int b : rep.elements) {
      const int ab = g.mul(a, b);
      if ((rep.at(ab) - rep.at(a) * rep.at(b)).cwiseAbs().maxCoeff() > kRepTol)
        throw DomainError("make_rep: homomorphism violated");
    }
  }
  return rep;
}

FiniteRep trivial_rep(const FiniteGroup& g, std::vector<int> elements, int degree) {
  std::vector<Eigen::MatrixXcd> mats(elements.size(),
                                     Eigen::MatrixXcd::Identity(degree, degree));
  return make_rep(g, std::move(elements), std::move(mats));
}

FiniteRep sign_rep(const FiniteGroup& g, std::vector<int> elements) {
  if (elements.size() != 2) throw DomainError("sign_rep: subgroup must have order 2");
  std::vector<Eigen::MatrixXcd> mats;
  for (int e : elements) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    if (e != g.identity) m = -m;
    mats.push_back(m);
  }
  return make_rep(g, std::move(elements), std::move(mats));
}

GroupFunction finite_convolve(const FiniteGroup& g, const GroupFunction& f,
                              const GroupFunction& k) {
  if (f.domain != GroupFunction::Domain::Group || k.domain != GroupFunction::Domain::Group ||
      f.size() != g.order || k.size() != g.order || f.width() != k.width()) {
    throw DomainMismatch("finite_convolve: both functions must live on the group");
  }
  GroupFunction out;
  out.domain = GroupFunction::Domain::Group;
  out.values = Eigen::MatrixXcd::Zero(g.order, f.width());
  for (int e = 0; e < g.order; ++e) {
    for (int u = 0; u < g.order; ++u) {
      out.values.row(e) +=
          f.values.row(g.mul(e, g.inv(u))).cwiseProduct(k.values.row(u));
    }
  }
  out.values /= double(g.order);
  return out;
}

GroupFunction lift(const CosetSpace& x, const GroupFunction& f) {
  if (f.domain != GroupFunction::Domain::Cosets || f.size() != x.count())
    throw DomainMismatch("lift: function does not match the coset space");
  GroupFunction out;
  out.domain = GroupFunction::Domain::Group;
  out.values.resize(x.group.order, f.width());
  for (int e = 0; e < x.group.order; ++e) out.values.row(e) = f.values.row(x.coset_of[e]);
  return out;
}

GroupFunction project(const CosetSpace& x, const GroupFunction& f) {
  if (f.domain != GroupFunction::Domain::Group || f.size() != x.group.order)
    throw DomainMismatch("project: function does not live on the group");
  GroupFunction out;
  out.domain = GroupFunction::Domain::Cosets;
  out.values = Eigen::MatrixXcd::Zero(x.count(), f.width());
  for (int c = 0; c < x.count(); ++c) {
    for (int e : x.cosets[c]) out.values.row(c) += f.values.row(e);
    out.values.row(c) /= double(x.subgroup.size());
  }
  return out;
}

GroupFunction generalized_convolve(const FiniteGroup& g, const GroupFunction& f,
                                   const CosetSpace* f_space, const GroupFunction& k,
                                   const CosetSpace* k_space) {
  const GroupFunction fg = f_space ? lift(*f_space, f) : f;
  const GroupFunction kg = k_space ? lift(*k_space, k) : k;
  GroupFunction full = finite_convolve(g, fg, kg);
  if (!k_space) return full;  // Cases II and IV: output on G
  // Cases I and III: constant on cosets g H2; reduce to G/H2
  GroupFunction out;
  out.domain = GroupFunction::Domain::Cosets;
  out.values.resize(k_space->count(), full.width());
  for (int c = 0; c < k_space->count(); ++c) out.values.row(c) = full.values.row(k_space->section[c]);
  return out;
}

Eigen::MatrixXcd mackey_lift(const CosetSpace& x, const FiniteRep& rho,
                             const Eigen::MatrixXcd& local) {
  if (local.rows() != x.count() || local.cols() != rho.degree)
    throw DomainMismatch("mackey_lift: field shape mismatch");
  const FiniteGroup& g = x.group;
  Eigen::MatrixXcd out(g.order, rho.degree);
  for (int e = 0; e < g.order; ++e) {
    const int c = x.coset_of[e];
    const int h = g.mul(g.inv(x.section[c]), e);  // h(g) = s(gH)^-1 g
    out.row(e) = (rho.at(g.inv(h)) * local.row(c).transpose()).transpose();
  }
  return out;
}

Eigen::MatrixXcd mackey_project(const CosetSpace& x, const Eigen::MatrixXcd& mackey) {
  Eigen::MatrixXcd out(x.count(), mackey.cols());
  for (int c = 0; c < x.count(); ++c) out.row(c) = mackey.row(x.section[c]);
  return out;
}

Eigen::MatrixXcd induced_rep_matrix(const CosetSpace& x, const FiniteRep& rho, int u) {
  const FiniteGroup& g = x.group;
  const int d = rho.degree, n = x.count();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n * d, n * d);
  const int uin = g.inv(u);
  for (int c = 0; c < n; ++c) {
    const int src = x.act(uin, c);
    const int h = twist(x, c, uin);
    out.block(c * d, src * d, d, d) = rho.at(g.inv(h));
  }
  return out;
}

namespace {
void check_kernel_equivariance(const CosetSpace& xi, const std::vector<int>& ho,
                               const FiniteRep& rho_i, const FiniteRep& rho_o,
                               const std::vector<Eigen::MatrixXcd>& kernel) {
  const FiniteGroup& g = xi.group;
  for (int h : ho) {
    for (int x = 0; x < xi.count(); ++x) {
      const int hx = xi.act(h, x);
      const int tw = twist(xi, x, h);
      const Eigen::MatrixXcd expect = rho_o.at(h) * kernel[x] * rho_i.at(g.inv(tw));
      if ((kernel[hx] - expect).cwiseAbs().maxCoeff() > 1e-10) {
        throw KernelNotEquivariant("induce_and_correlate: kernel violates the "
                                   "left-equivariance condition",
                                   h, x);
      }
    }
  }
}
}  // namespace

Eigen::MatrixXcd induce_and_correlate(const CosetSpace& xi, const CosetSpace& xo,
                                      const FiniteRep& rho_i, const FiniteRep& rho_o,
                                      const std::vector<Eigen::MatrixXcd>& kernel,
                                      const Eigen::MatrixXcd& field) {
  const FiniteGroup& g = xi.group;
  if (int(kernel.size()) != xi.count() || field.rows() != xi.count() ||
      field.cols() != rho_i.degree) {
    throw DomainMismatch("induce_and_correlate: kernel/field shape mismatch");
  }
  check_kernel_equivariance(xi, xo.subgroup, rho_i, rho_o, kernel);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(xo.count(), rho_o.degree);
  for (int y = 0; y < xo.count(); ++y) {
    const int soin = g.inv(xo.section[y]);
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(rho_o.degree);
    for (int x = 0; x < xi.count(); ++x) {
      acc += kernel[xi.act(soin, x)] * rho_i.at(twist(xi, x, soin)) *
             field.row(x).transpose();
    }
    out.row(y) = acc.transpose();
  }
  return out;
}

Eigen::MatrixXcd induce_and_correlate_mackey(const CosetSpace& xi, const CosetSpace& xo,
                                             const FiniteRep& rho_i, const FiniteRep& rho_o,
                                             const std::vector<Eigen::MatrixXcd>& kernel,
                                             const Eigen::MatrixXcd& field) {
  const FiniteGroup& g = xi.group;
  check_kernel_equivariance(xi, xo.subgroup, rho_i, rho_o, kernel);
  const Eigen::MatrixXcd fG = mackey_lift(xi, rho_i, field);
  // k_G(g) = k_H(gHi) rho_i(h_i(g))
  std::vector<Eigen::MatrixXcd> kG(g.order);
  for (int e = 0; e < g.order; ++e) {
    const int c = xi.coset_of[e];
    const int h = g.mul(g.inv(xi.section[c]), e);
    kG[e] = kernel[c] * rho_i.at(h);
  }
  Eigen::MatrixXcd onG(g.order, rho_o.degree);
  for (int e = 0; e < g.order; ++e) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(rho_o.degree);
    for (int u = 0; u < g.order; ++u) {
      acc += kG[g.mul(g.inv(e), u)] * fG.row(u).transpose();
    }
    onG.row(e) = acc.transpose() / double(xi.subgroup.size());
  }
  return mackey_project(xo, onG);
}

LinearSpace equivariant_map_space(const CosetSpace& xi, const CosetSpace& xo,
                                  const FiniteRep& rho_i, const FiniteRep& rho_o) {
  const FiniteGroup& g = xi.group;
  if (g.order > 64) throw SizeLimitExceeded("equivariant_map_space: group order > 64");
  if (rho_i.degree > 4 || rho_o.degree > 4)
    throw SizeLimitExceeded("equivariant_map_space: rep degree > 4");
  const int ni = xi.count() * rho_i.degree;
  const int no = xo.count() * rho_o.degree;
  // Phi pi_i(u) - pi_o(u) Phi = 0; row-major vec: vec(A X B) = (A kron B^T) vec(X)
  Eigen::MatrixXcd sys(g.order * no * ni, no * ni);
  for (int u = 0; u < g.order; ++u) {
    const Eigen::MatrixXcd pi = induced_rep_matrix(xi, rho_i, u);
    const Eigen::MatrixXcd po = induced_rep_matrix(xo, rho_o, u);
    Eigen::MatrixXcd blockc = Eigen::MatrixXcd::Zero(no * ni, no * ni);
    // kron(I_no, pi^T) - kron(po, I_ni)
    for (int r = 0; r < no; ++r) {
      blockc.block(r * ni, r * ni, ni, ni) = pi.transpose();
      for (int c = 0; c < no; ++c) {
        blockc.block(r * ni, c * ni, ni, ni) -=
            po(r, c) * Eigen::MatrixXcd::Identity(ni, ni);
      }
    }
    sys.middleRows(std::size_t(u) * no * ni, no * ni) = blockc;
  }
  LinearSpace space;
  space.basis = nullspace(sys, no, ni);
  space.dimension = int(space.basis.size());
  return space;
}

LinearSpace admissible_kernel_space(const FiniteGroup& g, const std::vector<int>& hi,
                                    const std::vector<int>& ho, const FiniteRep& rho_i,
                                    const FiniteRep& rho_o) {
  const int di = rho_i.degree, dn = rho_o.degree;
  const int nunk = g.order * dn * di;
  const auto kidx = [&](int e, int a, int b) { return (e * dn + a) * di + b; };
  Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(g.order * int(ho.size()) * int(hi.size()) * dn * di, nunk);
  int row = 0;
  for (int e = 0; e < g.order; ++e) {
    for (int o : ho) {
      for (int i : hi) {
        const int moved = g.mul(g.mul(o, e), i);
        for (int a = 0; a < dn; ++a) {
          for (int b = 0; b < di; ++b) {
            sys(row, kidx(moved, a, b)) += 1.0;
            for (int a2 = 0; a2 < dn; ++a2) {
              for (int b2 = 0; b2 < di; ++b2) {
                sys(row, kidx(e, a2, b2)) -= rho_o.at(o)(a, a2) * rho_i.at(i)(b2, b);
              }
            }
            ++row;
          }
        }
      }
    }
  }
  LinearSpace space;
  space.basis = nullspace(sys, g.order * dn, di);
  space.dimension = int(space.basis.size());
  return space;
}

LinearSpace admissible_local_kernels(const CosetSpace& xi, const std::vector<int>& ho,
                                     const FiniteRep& rho_i, const FiniteRep& rho_o) {
  const FiniteGroup& g = xi.group;
  const int di = rho_i.degree, dn = rho_o.degree, n = xi.count();
  const int nunk = n * dn * di;
  const auto kidx = [&](int x, int a, int b) { return (x * dn + a) * di + b; };
  Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(n * int(ho.size()) * dn * di, nunk);
  int row = 0;
  for (int x = 0; x < n; ++x) {
    for (int h : ho) {
      const int hx = xi.act(h, x);
      const int tw = twist(xi, x, h);
      const Eigen::MatrixXcd ri = rho_i.at(g.inv(tw));
      for (int a = 0; a < dn; ++a) {
        for (int b = 0; b < di; ++b) {
          sys(row, kidx(hx, a, b)) += 1.0;
          for (int a2 = 0; a2 < dn; ++a2) {
            for (int b2 = 0; b2 < di; ++b2) {
              sys(row, kidx(x, a2, b2)) -= rho_o.at(h)(a, a2) * ri(b2, b);
            }
          }
          ++row;
        }
      }
    }
  }
  LinearSpace space;
  space.basis = nullspace(sys, n * dn, di);
  space.dimension = int(space.basis.size());
  return space;
}

}  // namespace so3kit
