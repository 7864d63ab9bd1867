// Brute-force reference computations for the tests. Works only from a list
// of integer root vectors with multiplicities: W is reached as the orbit of
// points under all root reflections.
#ifndef TAUT_TEST_ORACLE_HPP
#define TAUT_TEST_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

#include "taut/rational.hpp"

namespace oracle
{

using taut::QVector;
using taut::Rational;
using Vec = std::vector<std::int64_t>;

struct RootData
{
  std::vector<Vec> roots;
  std::vector<int> mults;
};

inline Rational pair(Vec const &a, QVector const &x)
{
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    s += Rational(a[i]) * x[i];
  return s;
}

inline QVector reflect(Vec const &a, QVector x)
{
  std::int64_t aa = 0;
  for (auto c : a)
    aa += c * c;
  Rational k = Rational(2) * pair(a, x) / Rational(aa);
  for (std::size_t i = 0; i < a.size(); ++i)
    x[i] -= k * Rational(a[i]);
  return x;
}

/// Orbit of x under the group generated by the reflections in `gens`.
inline std::vector<QVector> orbit(std::vector<Vec> const &gens, QVector const &x)
{
  std::set<QVector> seen{x};
  std::deque<QVector> todo{x};
  while (!todo.empty())
  {
    auto y = todo.front();
    todo.pop_front();
    for (auto const &a : gens)
    {
      auto z = reflect(a, y);
      if (seen.insert(z).second)
        todo.push_back(z);
    }
  }
  return {seen.begin(), seen.end()};
}

inline int find_root(RootData const &rd, Vec const &v)
{
  for (std::size_t i = 0; i < rd.roots.size(); ++i)
    if (rd.roots[i] == v)
      return static_cast<int>(i);
  return -1;
}

/// Sum of dim(g_l + g_2l) over reduced roots l with l(q) > 0 > l(x): the
/// walls met by the segment from q to x, weighted.
inline int crossing_weight(RootData const &rd, QVector const &q, QVector const &x)
{
  int total = 0;
  for (std::size_t i = 0; i < rd.roots.size(); ++i)
  {
    auto const &r = rd.roots[i];
    bool even = std::all_of(r.begin(), r.end(), [](auto c) { return c % 2 == 0; });
    Vec half(r);
    for (auto &c : half)
      c /= 2;
    bool reduced = !(even && find_root(rd, half) >= 0);
    if (!reduced)
      continue;
    if (!(pair(r, q) > Rational(0) && pair(r, x) < Rational(0)))
      continue;
    Vec twice(r);
    for (auto &c : twice)
      c *= 2;
    int d = find_root(rd, twice);
    total += rd.mults[i] + (d >= 0 ? rd.mults[static_cast<std::size_t>(d)] : 0);
  }
  return total;
}

inline std::vector<std::int64_t> from_degrees(std::vector<int> const &degs)
{
  int top = degs.empty() ? 0 : *std::max_element(degs.begin(), degs.end());
  std::vector<std::int64_t> p(static_cast<std::size_t>(top + 1), 0);
  for (int d : degs)
    ++p[static_cast<std::size_t>(d)];
  return p;
}

inline std::vector<std::int64_t> divide(std::vector<std::int64_t> num, std::vector<std::int64_t> const &den)
{
  if (den.empty() || den[0] != 1)
    throw std::logic_error("divide: denominator must have constant term 1");
  std::vector<std::int64_t> out(num.size() - den.size() + 1, 0);
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    out[i] = num[i];
    for (std::size_t k = 0; k < den.size(); ++k)
      num[i + k] -= out[i] * den[k];
  }
  for (auto c : num)
    if (c != 0)
      throw std::logic_error("divide: nonzero remainder");
  while (out.size() > 1 && out.back() == 0)
    out.pop_back();
  return out;
}

/// Morse indices of the height function towards q on the orbit W p.
inline std::vector<int> morse_indices(RootData const &rd, QVector const &q, QVector const &p)
{
  std::vector<int> out;
  for (auto const &x : orbit(rd.roots, p))
    out.push_back(crossing_weight(rd, q, x));
  std::sort(out.begin(), out.end());
  return out;
}

/// Poincare polynomial of W / W_p as P_W / P_{W_p}, lengths taken in the
/// positive system of the regular point q.
inline std::vector<std::int64_t> poincare(RootData const &rd, QVector const &q, QVector const &p)
{
  std::vector<int> all, stab;
  for (auto const &x : orbit(rd.roots, q))
    all.push_back(crossing_weight(rd, q, x));
  std::vector<Vec> fixing;
  for (auto const &r : rd.roots)
    if (pair(r, p) == Rational(0))
      fixing.push_back(r);
  for (auto const &x : orbit(fixing, q))
    stab.push_back(crossing_weight(rd, q, x));
  return divide(from_degrees(all), from_degrees(stab));
}

inline int group_order(RootData const &rd, QVector const &regular)
{
  return static_cast<int>(orbit(rd.roots, regular).size());
}

} // namespace oracle

#endif
