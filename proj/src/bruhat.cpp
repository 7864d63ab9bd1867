#include "taut/bruhat.hpp"

#include <algorithm>
#include <set>

#include "taut/error.hpp"

namespace taut::bruhat
{

using rootsys::RootSystem;
using rootsys::WeylElement;
using rootsys::WeylGroup;

std::vector<int> validate_theta(RootSystem const &rs, ThetaSubset const &theta)
{
  std::vector<int> sorted = theta.indices;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= rs.rank())
      throw Error(ErrorKind::InvalidTheta,
                  "theta index " + std::to_string(sorted[i]) + " out of range for rank " +
                      std::to_string(rs.rank()));
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw Error(ErrorKind::InvalidTheta, "theta index repeated");
  }
  return sorted;
}

std::vector<int> theta_positive_roots(RootSystem const &rs, ThetaSubset const &theta)
{
  auto idx = validate_theta(rs, theta);
  std::vector<bool> allowed(static_cast<std::size_t>(rs.rank()), false);
  for (int i : idx)
    allowed[i] = true;
  std::vector<int> out;
  for (int r : rs.positive_reduced()) {
    auto const &c = rs.root(r).simple_coeffs;
    bool inside = true;
    for (int i = 0; i < rs.rank(); ++i)
      if (c[i] != 0 && !allowed[i])
        inside = false;
    if (inside)
      out.push_back(r);
  }
  return out;
}

std::int64_t Polynomial::at_one() const
{
  std::int64_t s = 0;
  for (auto c : coefficients)
    s += c;
  return s;
}

bool Polynomial::is_palindromic() const
{
  return std::equal(coefficients.begin(), coefficients.end(), coefficients.rbegin());
}

std::string Polynomial::to_string() const
{
  std::string out;
  for (std::size_t d = 0; d < coefficients.size(); ++d) {
    auto c = coefficients[d];
    if (c == 0)
      continue;
    if (!out.empty())
      out += " + ";
    if (d == 0 || c != 1)
      out += std::to_string(c);
    if (d >= 1)
      out += "t";
    if (d >= 2)
      out += "^" + std::to_string(d);
  }
  return out.empty() ? "0" : out;
}

Polynomial Polynomial::monomial_sum(std::vector<int> const &degrees)
{
  Polynomial p;
  for (int d : degrees) {
    if (static_cast<int>(p.coefficients.size()) <= d)
      p.coefficients.resize(static_cast<std::size_t>(d) + 1, 0);
    ++p.coefficients[d];
  }
  return p;
}

Polynomial Polynomial::operator*(Polynomial const &other) const
{
  if (coefficients.empty() || other.coefficients.empty())
    return {};
  Polynomial p;
  p.coefficients.assign(coefficients.size() + other.coefficients.size() - 1, 0);
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    for (std::size_t j = 0; j < other.coefficients.size(); ++j)
      p.coefficients[i + j] += coefficients[i] * other.coefficients[j];
  return p;
}

std::vector<int> minimal_coset_indices(WeylGroup const &group, ThetaSubset const &theta)
{
  auto const &rs = group.root_system();
  auto inner = theta_positive_roots(rs, theta);
  std::vector<int> out;
  for (int w = 0; w < group.size(); ++w) {
    auto inv = rootsys::inversion_set_unchecked(rs, group[w].root_perm);
    bool meets = std::any_of(inv.begin(), inv.end(), [&](int r) {
      return std::binary_search(inner.begin(), inner.end(), r);
    });
    if (!meets)
      out.push_back(w);
  }
  return out;
}

std::vector<WeylElement> minimal_coset_reps(RootSystem const &rs, ThetaSubset const &theta)
{
  WeylGroup group(rs);
  std::vector<WeylElement> out;
  for (int w : minimal_coset_indices(group, theta))
    out.push_back(group[w]);
  return out;
}

namespace
{

std::vector<int> inverse_inversions(RootSystem const &rs, std::vector<int> const &perm)
{
  // beta in Sigma^+_{w^{-1}}  <=>  w beta < 0.
  std::vector<int> out;
  for (int beta : rs.positive_reduced())
    if (!rs.root(perm[static_cast<std::size_t>(beta)]).positive)
      out.push_back(beta);
  return out;
}

int weighted(RootSystem const &rs, std::vector<int> const &roots)
{
  int d = 0;
  for (int r : roots)
    d += rs.bar_dimension(r);
  return d;
}

} // namespace

int cell_dimension_unchecked(RootSystem const &rs, std::vector<int> const &root_perm)
{
  return weighted(rs, inverse_inversions(rs, root_perm));
}

int cell_dimension(RootSystem const &rs, WeylElement const &w_u)
{
  rootsys::check_element(rs, w_u);
  return cell_dimension_unchecked(rs, w_u.root_perm);
}

std::vector<BruhatCell> bruhat_cells(WeylGroup const &group, ThetaSubset const &theta)
{
  auto const &rs = group.root_system();
  std::vector<BruhatCell> cells;
  for (int w : minimal_coset_indices(group, theta)) {
    BruhatCell c;
    c.element = w;
    c.rep = group[w];
    c.inverse_inversions = inverse_inversions(rs, c.rep.root_perm);
    c.dimension = weighted(rs, c.inverse_inversions);
    cells.push_back(std::move(c));
  }
  std::stable_sort(cells.begin(), cells.end(), [](auto const &a, auto const &b) {
    if (a.dimension != b.dimension)
      return a.dimension < b.dimension;
    return a.element < b.element;   // shortlex order of the words
  });
  return cells;
}

PoincarePolynomial poincare_polynomial(WeylGroup const &group, ThetaSubset const &theta)
{
  std::vector<int> dims;
  for (auto const &c : bruhat_cells(group, theta))
    dims.push_back(c.dimension);
  return Polynomial::monomial_sum(dims);
}

PoincarePolynomial poincare_polynomial(RootSystem const &rs, ThetaSubset const &theta)
{
  WeylGroup group(rs);
  return poincare_polynomial(group, theta);
}

} // namespace taut::bruhat
