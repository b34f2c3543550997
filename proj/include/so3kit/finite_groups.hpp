#ifndef SO3KIT_FINITE_GROUPS_HPP
#define SO3KIT_FINITE_GROUPS_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace so3kit {

/// Finite group as a Cayley table. Construction validates the Latin-square
/// property, associativity (exhaustively, order <= 64), and the
/// identity/inverse laws.
struct FiniteGroup {
  int order = 0;
  std::vector<int> table;  // row-major: table[a * order + b] = a . b
  int identity = 0;
  std::vector<int> inverse;
  std::vector<std::string> labels;

  int mul(int a, int b) const { return table[a * order + b]; }
  int inv(int a) const { return inverse[a]; }
};

FiniteGroup make_group_from_table(std::vector<int> table, std::vector<std::string> labels = {});
FiniteGroup make_cyclic(int n);
FiniteGroup make_dihedral(int n);          // order 2n
FiniteGroup make_symmetric(int n);         // n <= 4 (order n!)
FiniteGroup make_group(const std::string& kind, int n);  // "cyclic" | "dihedral" | "symmetric"

enum class CosetSide { Left, Right };

/// Coset partition with a fixed section: the representative of each coset
/// is its smallest element index, except the identity coset whose
/// representative is forced to the identity.
struct CosetSpace {
  FiniteGroup group;
  std::vector<int> subgroup;              // sorted element indices of H
  CosetSide side = CosetSide::Left;
  std::vector<std::vector<int>> cosets;   // sorted members per coset
  std::vector<int> coset_of;              // element -> coset index
  std::vector<int> section;               // coset -> representative element

  int count() const { return int(cosets.size()); }
  /// g . (xH) for left coset spaces; (Hx) . g for right ones.
  int act(int g, int x) const;
};

CosetSpace coset_space(const FiniteGroup& g, std::vector<int> subgroup_elements, CosetSide side);

/// Twist of a left coset space: the unique h in H with
/// g s(x) = s(g x) h; returns the element index of h.
int twist(const CosetSpace& x, int coset, int g);

/// Number of double cosets H1 \ G / H2 by orbit enumeration.
int double_coset_count(const FiniteGroup& g, const std::vector<int>& h1,
                       const std::vector<int>& h2);

/// Function on a group or coset space; rows indexed by the domain, one
/// column per vector component.
struct GroupFunction {
  enum class Domain { Group, Cosets } domain = Domain::Group;
  Eigen::MatrixXcd values;

  int size() const { return int(values.rows()); }
  int width() const { return int(values.cols()); }
};

/// Matrix representation table of a group or subgroup. Construction checks
/// rho(e) = I and the homomorphism property to 1e-12.
struct FiniteRep {
  std::vector<int> elements;               // sorted element indices
  int degree = 0;
  std::vector<Eigen::MatrixXcd> matrices;  // parallel to elements

  const Eigen::MatrixXcd& at(int element) const;
};

FiniteRep make_rep(const FiniteGroup& g, std::vector<int> elements,
                   std::vector<Eigen::MatrixXcd> matrices);
FiniteRep trivial_rep(const FiniteGroup& g, std::vector<int> elements, int degree = 1);
/// One-dimensional rep of an order-2 subgroup sending the non-identity
/// element to -1.
FiniteRep sign_rep(const FiniteGroup& g, std::vector<int> elements);

/// (f * k)(g) = (1/|G|) sum_u f(g u^-1) k(u), componentwise over columns.
GroupFunction finite_convolve(const FiniteGroup& g, const GroupFunction& f,
                              const GroupFunction& k);

/// (lift f)(g) = f(gH); (project f)(gH) = (1/|H|) sum_{u in gH} f(u).
GroupFunction lift(const CosetSpace& x, const GroupFunction& f);
GroupFunction project(const CosetSpace& x, const GroupFunction& f);

/// Generalized convolution (f * k)(g) = (1/|G|) sum_u lift(f)(g u^-1) lift(k)(u)
/// for f on G or G/H1 and k on G or G/H2 (pass nullptr for plain group
/// domains). The output lives on G/H2 when k has a coset domain (Cases I
/// and III), on G otherwise (Cases II and IV).
GroupFunction generalized_convolve(const FiniteGroup& g, const GroupFunction& f,
                                   const CosetSpace* f_space, const GroupFunction& k,
                                   const CosetSpace* k_space);

/// Mackey lift of a local field: f(g) = rho(h(g))^-1 f_j(gH) with
/// h(g) = s(gH)^-1 g. The result satisfies f(gh) = rho(h^-1) f(g).
Eigen::MatrixXcd mackey_lift(const CosetSpace& x, const FiniteRep& rho,
                             const Eigen::MatrixXcd& local);
/// Inverse isomorphism: f_j(x) = f(s(x)).
Eigen::MatrixXcd mackey_project(const CosetSpace& x, const Eigen::MatrixXcd& mackey);

/// Matrix of the induced representation acting on local fields,
/// (pi(u) f)(x) = rho(h(x, u^-1)^-1) f(u^-1 x), over the stacked basis
/// (coset-major, component-minor).
Eigen::MatrixXcd induced_rep_matrix(const CosetSpace& x, const FiniteRep& rho, int u);

/// Cross-correlation of a vector field on G/Hi against an equivariant
/// kernel (one do x di matrix per coset of G/Hi), output on G/Ho:
///   (k x f)(y) = sum_x k(s_o(y)^-1 x) rho_i(h_i(x, s_o(y)^-1)) f(x).
/// The kernel must satisfy k(h x) = rho_o(h) k(x) rho_i(h_i(x,h))^-1 for
/// every h in Ho; violations raise KernelNotEquivariant with the pair.
Eigen::MatrixXcd induce_and_correlate(const CosetSpace& xi, const CosetSpace& xo,
                                      const FiniteRep& rho_i, const FiniteRep& rho_o,
                                      const std::vector<Eigen::MatrixXcd>& kernel,
                                      const Eigen::MatrixXcd& field);

/// Same map computed through Mackey functions: lift the field and kernel to
/// G, cross-correlate there with the 1/|Hi| fiber normalization, project
/// back. Agrees exactly with induce_and_correlate.
Eigen::MatrixXcd induce_and_correlate_mackey(const CosetSpace& xi, const CosetSpace& xo,
                                             const FiniteRep& rho_i, const FiniteRep& rho_o,
                                             const std::vector<Eigen::MatrixXcd>& kernel,
                                             const Eigen::MatrixXcd& field);

struct LinearSpace {
  int dimension = 0;
  std::vector<Eigen::MatrixXcd> basis;  // orthonormal (Frobenius)
};

/// Space of linear maps Phi with Phi pi_i(u) = pi_o(u) Phi for all u in G,
/// solved densely by stacking every group element's constraint and taking
/// the SVD null space (singular values below 1e-9).
/// Throws SizeLimitExceeded for order > 64 or rep degree > 4.
LinearSpace equivariant_map_space(const CosetSpace& xi, const CosetSpace& xo,
                                  const FiniteRep& rho_i, const FiniteRep& rho_o);

/// Space of kernels k: G -> Hom(Vi, Vo) with
/// k(h_o g h_i) = rho_o(h_o) k(g) rho_i(h_i); basis elements are stacked as
/// (|G| do) x di matrices, block g in rows [g do, (g+1) do).
LinearSpace admissible_kernel_space(const FiniteGroup& g, const std::vector<int>& hi,
                                    const std::vector<int>& ho, const FiniteRep& rho_i,
                                    const FiniteRep& rho_o);

/// Basis of per-coset kernels on G/Hi satisfying the induce_and_correlate
/// precondition; each basis element is stacked as (count * do) x di.
LinearSpace admissible_local_kernels(const CosetSpace& xi, const std::vector<int>& ho,
                                     const FiniteRep& rho_i, const FiniteRep& rho_o);

}  // namespace so3kit

#endif
