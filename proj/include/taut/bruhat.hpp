#ifndef TAUT_BRUHAT_HPP
#define TAUT_BRUHAT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "taut/rootsys.hpp"

namespace taut::bruhat
{

/// Subset of simple-root positions (indices into simple_roots()).
struct ThetaSubset
{
  std::vector<int> indices;
};

/// Throws InvalidTheta for out-of-range or repeated indices. Returns the
/// indices sorted.
std::vector<int> validate_theta(rootsys::RootSystem const &rs, ThetaSubset const &theta);

/// Positive reduced roots in the span of the simple roots listed in theta.
std::vector<int> theta_positive_roots(rootsys::RootSystem const &rs, ThetaSubset const &theta);

/// Integer polynomial in t, coefficients indexed by degree.
struct Polynomial
{
  std::vector<std::int64_t> coefficients;

  int degree() const
  { return static_cast<int>(coefficients.size()) - 1; }

  std::int64_t at_one() const;
  bool is_palindromic() const;
  std::string to_string() const;

  static Polynomial monomial_sum(std::vector<int> const &degrees);

  Polynomial operator*(Polynomial const &other) const;
  bool operator==(Polynomial const &other) const = default;
};

using PoincarePolynomial = Polynomial;

struct BruhatCell
{
  int element = 0;                        // index in the Weyl group
  rootsys::WeylElement rep;
  std::vector<int> inverse_inversions;    // Sigma^+ of rep^{-1}, reduced roots
  int dimension = 0;
};

/// W_u as element indices into the group, in enumeration order.
std::vector<int> minimal_coset_indices(rootsys::WeylGroup const &group, ThetaSubset const &theta);

std::vector<rootsys::WeylElement> minimal_coset_reps(rootsys::RootSystem const &rs,
                                                     ThetaSubset const &theta);

/// Sum of dim of the barred root spaces over the reduced positive roots made
/// negative by w. Validates membership of w.
int cell_dimension(rootsys::RootSystem const &rs, rootsys::WeylElement const &w_u);

/// Same, from a root permutation without validation.
int cell_dimension_unchecked(rootsys::RootSystem const &rs, std::vector<int> const &root_perm);

/// Cells of G/P_theta sorted by (dimension, word).
std::vector<BruhatCell> bruhat_cells(rootsys::WeylGroup const &group, ThetaSubset const &theta);

PoincarePolynomial poincare_polynomial(rootsys::WeylGroup const &group, ThetaSubset const &theta);
PoincarePolynomial poincare_polynomial(rootsys::RootSystem const &rs, ThetaSubset const &theta);

} // namespace taut::bruhat

#endif // TAUT_BRUHAT_HPP
