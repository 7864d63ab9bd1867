#ifndef TAUT_ROOTSYS_HPP
#define TAUT_ROOTSYS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "taut/rational.hpp"

namespace taut::rootsys
{

/// Multiplicities by root class. For the catalog families "short" and
/// "long" name the two lengths of a reduced system (single-length families
/// accept either key), and "double" names the non-reduced roots 2e_i of BC_n.
/// Unset entries default to 1.
struct MultiplicitySpec
{
  std::optional<int> short_roots;
  std::optional<int> long_roots;
  std::optional<int> double_roots;
};

/// User description of a root system: either a catalog family, an explicit
/// root list, or a direct sum of factors.
struct RootSystemSpec
{
  std::string family;   // "A", "B", "C", "D", "G", "BC" (catalog form)
  int rank = 0;
  MultiplicitySpec multiplicities;

  std::vector<IntVector> roots;   // explicit form
  std::vector<int> mults;
  std::vector<int> simple;

  std::vector<RootSystemSpec> factors;   // product form

  static RootSystemSpec catalog(std::string family, int rank,
                                MultiplicitySpec mults = {});
  static RootSystemSpec product(std::vector<RootSystemSpec> factors);
};

struct Root
{
  IntVector vector;
  int multiplicity = 1;   // dim g_lambda
  bool is_reduced = true; // lambda/2 is not a root
  bool positive = false;
  int double_index = -1;  // index of 2*lambda, if a root
  int half_index = -1;    // index of lambda/2, if a root
  IntVector simple_coeffs;
};

class RootSystem
{
public:
  std::string const &name() const
  { return _name; }

  int rank() const
  { return static_cast<int>(_simple.size()); }

  int ambient_dim() const
  { return _ambient_dim; }

  std::span<Root const> roots() const
  { return _roots; }

  Root const &root(int i) const
  { return _roots[static_cast<std::size_t>(i)]; }

  int size() const
  { return static_cast<int>(_roots.size()); }

  /// Indices of the simple roots (the base), in order.
  std::vector<int> const &simple_roots() const
  { return _simple; }

  /// Reduced positive roots, in index order.
  std::vector<int> const &positive_reduced() const
  { return _positive_reduced; }

  std::optional<int> find(IntVector const &v) const;

  int negative_of(int i) const
  { return _negative[static_cast<std::size_t>(i)]; }

  /// dim of g_lambda + g_{2 lambda}.
  int bar_dimension(int i) const;

  /// lambda(x), with a* identified with a through the ambient inner product.
  Rational evaluate(int i, QVector const &x) const
  { return dot(root(i).vector, x); }

  QVector reflect(int i, QVector const &x) const;

  /// Root index of s_i(root j).
  int reflect_root(int i, int j) const;

  QMatrix reflection_matrix(int i) const;

  /// Root-index permutation induced by the reflection in root i.
  std::vector<int> const &reflection_permutation(int i) const
  { return _reflection_perm[static_cast<std::size_t>(i)]; }

  /// Ambient point x with alpha_i(x) = values[i] for the simple roots,
  /// lying in the span of the roots.
  QVector point_from_simple_values(QVector const &values) const;

  friend RootSystem build_root_system(RootSystemSpec const &spec);

private:
  std::string _name;
  int _ambient_dim = 0;
  std::vector<Root> _roots;
  std::vector<int> _simple;
  std::vector<int> _positive_reduced;
  std::vector<int> _negative;
  std::vector<std::vector<int>> _reflection_perm;
  std::vector<std::int64_t> _norm2;
  std::map<IntVector, int> _index;
};

/// Validates a spec and builds the root system. Throws taut::Error with
/// NonClosedUnderReflection, MultiplicityNotWeylInvariant, NotABase or
/// InvalidSpec.
RootSystem build_root_system(RootSystemSpec const &spec);

/// An element of the Weyl group, kept as an exact matrix on the ambient
/// space together with the permutation it induces on the root list and a
/// reduced word in the simple reflections (indices into simple_roots()).
struct WeylElement
{
  QMatrix matrix;
  std::vector<int> word;
  std::vector<int> root_perm;

  int length() const
  { return static_cast<int>(word.size()); }
};

struct PermHash
{
  std::size_t operator()(std::vector<int> const &perm) const noexcept;
};

/// Complete enumeration of W, in shortlex order of the canonical words.
/// Element 0 is the identity.
class WeylGroup
{
public:
  static constexpr int max_rank = 6;

  explicit WeylGroup(RootSystem const &rs);

  int size() const
  { return static_cast<int>(_elements.size()); }

  std::vector<WeylElement> const &elements() const
  { return _elements; }

  WeylElement const &operator[](int i) const
  { return _elements[static_cast<std::size_t>(i)]; }

  std::optional<int> find(std::vector<int> const &root_perm) const;
  int index_of(WeylElement const &w) const;

  int identity() const
  { return 0; }

  int multiply(int a, int b) const;
  int inverse(int a) const;

  /// Element index of the simple reflection s_i (i indexes simple_roots()).
  int simple(int i) const
  { return _simple[static_cast<std::size_t>(i)]; }

  /// Element index of the reflection in an arbitrary root.
  int reflection(int root) const;

  int longest() const
  { return size() - 1; }

  QVector apply(int a, QVector const &x) const
  { return _elements[static_cast<std::size_t>(a)].matrix * x; }

  RootSystem const &root_system() const
  { return *_rs; }

private:
  RootSystem const *_rs;
  std::vector<WeylElement> _elements;
  std::unordered_map<std::vector<int>, int, PermHash> _lookup;
  std::vector<int> _simple;
};

/// Enumerates W. Throws RankTooLarge when rank exceeds WeylGroup::max_rank.
std::vector<WeylElement> weyl_group(RootSystem const &rs);

/// Checks that w is a Weyl element of rs: its word reproduces both the
/// matrix and the root permutation. Throws ElementNotInGroup otherwise.
void check_element(RootSystem const &rs, WeylElement const &w);

/// Reduced positive roots made negative by w^{-1}, i.e. w Sigma^- cap
/// Sigma^+ restricted to reduced roots. Sorted root indices.
std::vector<int> inversion_set(RootSystem const &rs, WeylElement const &w);

/// Same, without membership validation.
std::vector<int> inversion_set_unchecked(RootSystem const &rs,
                                         std::vector<int> const &root_perm);

/// Catalog entries of rank <= max_rank used by batch checks, with a few
/// multiplicity assignments per family.
std::vector<RootSystemSpec> catalog_specs(int max_rank);

} // namespace taut::rootsys

#endif // TAUT_ROOTSYS_HPP
