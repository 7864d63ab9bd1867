#include "taut/morse.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "taut/error.hpp"

namespace taut::morse
{

using rootsys::RootSystem;
using rootsys::WeylGroup;

ChamberPoint make_point(RootSystem const &rs, QVector coords)
{
  if (static_cast<int>(coords.size()) != rs.ambient_dim())
    throw Error(ErrorKind::InvalidSpec, "point has " + std::to_string(coords.size()) +
                                            " coordinates, expected " +
                                            std::to_string(rs.ambient_dim()));
  ChamberPoint p;
  p.coords = std::move(coords);
  for (int i = 0; i < rs.rank(); ++i)
    if (rs.evaluate(rs.simple_roots()[i], p.coords) == 0)
      p.theta.push_back(i);
  return p;
}

bool is_regular(RootSystem const &rs, QVector const &x)
{
  return std::none_of(rs.positive_reduced().begin(), rs.positive_reduced().end(),
                      [&](int r) { return rs.evaluate(r, x) == 0; });
}

bool is_dominant(RootSystem const &rs, QVector const &x)
{
  return std::all_of(rs.positive_reduced().begin(), rs.positive_reduced().end(),
                     [&](int r) { return rs.evaluate(r, x) >= 0; });
}

namespace
{

std::vector<Coset> enumerate_cosets(WeylGroup const &group, QVector const &p)
{
  std::map<QVector, std::size_t> seen;
  std::vector<Coset> out;
  int stab = 0;
  for (int w = 0; w < group.size(); ++w) {
    auto wp = group.apply(w, p);
    if (wp == p)
      ++stab;
    if (seen.count(wp))
      continue;
    seen.emplace(wp, out.size());
    out.push_back({w, std::move(wp), 0});
  }
  for (auto &c : out)
    c.stabilizer_order = stab;
  return out;
}

int coset_of(WeylGroup const &group, QVector const &p, int w)
{
  auto wp = group.apply(w, p);
  for (int v = 0; v < group.size(); ++v)
    if (group.apply(v, p) == wp)
      return v;
  return w;
}

} // namespace

std::vector<Coset> critical_cosets(WeylGroup const &group, ChamberPoint const &p)
{
  if (is_zero(p.coords))
    throw Error(ErrorKind::ZeroPoint, "the orbit of 0 is a point");
  return enumerate_cosets(group, p.coords);
}

int CycleWord::dimension() const
{
  int d = 0;
  for (auto const &w : walls)
    d += w.multiplicity;
  return d;
}

std::vector<Wall> segment_crossings(RootSystem const &rs, QVector const &from, QVector const &to)
{
  std::vector<Wall> walls;
  for (int r : rs.positive_reduced()) {
    Rational a = rs.evaluate(r, from);
    Rational b = rs.evaluate(r, to);
    if (a == 0 || b == 0 || (a > 0) == (b > 0))
      continue;
    walls.push_back({r, rs.bar_dimension(r), a / (a - b)});
  }
  std::sort(walls.begin(), walls.end(), [](Wall const &x, Wall const &y) {
    if (x.param != y.param)
      return x.param < y.param;
    return x.root < y.root;
  });
  for (std::size_t i = 1; i < walls.size(); ++i)
    if (walls[i].param == walls[i - 1].param)
      throw Error(ErrorKind::NonGenericSegment,
                  "segment meets roots " + std::to_string(walls[i - 1].root) + " and " +
                      std::to_string(walls[i].root) + " at the same point (parameter " +
                      to_string(walls[i].param) + ")");
  return walls;
}

namespace
{

CycleWord crossing_word(WeylGroup const &group, ChamberPoint const &q, int w,
                        ChamberPoint const &p, int rep)
{
  auto const &rs = group.root_system();
  if (!is_regular(rs, q.coords))
    throw Error(ErrorKind::QNotRegular, "q lies on a singular hyperplane");
  if (w < 0 || w >= group.size())
    throw Error(ErrorKind::ElementNotInGroup, "element index out of range");

  CycleWord cw;
  cw.target = group.apply(w, p.coords);
  cw.walls = segment_crossings(rs, q.coords, cw.target);
  cw.base_coset = rep;

  QVector back = cw.target;
  for (auto it = cw.walls.rbegin(); it != cw.walls.rend(); ++it)
    back = rs.reflect(it->root, back);
  for (int r : rs.positive_reduced()) {
    Rational a = rs.evaluate(r, q.coords);
    Rational b = rs.evaluate(r, back);
    if ((a > 0 && b < 0) || (a < 0 && b > 0))
      throw std::logic_error("crossing word does not return w p to the chamber of q");
  }
  return cw;
}

} // namespace

CycleWord crossing_sequence(WeylGroup const &group, ChamberPoint const &q, int w,
                            ChamberPoint const &p)
{
  if (w < 0 || w >= group.size())
    throw Error(ErrorKind::ElementNotInGroup, "element index out of range");
  return crossing_word(group, q, w, p, coset_of(group, p.coords, w));
}

std::vector<CycleWord> coset_words(WeylGroup const &group, ChamberPoint const &q,
                                   ChamberPoint const &p)
{
  std::vector<CycleWord> out;
  for (auto const &c : critical_cosets(group, p))
    out.push_back(crossing_word(group, q, c.representative, p, c.representative));
  return out;
}

int morse_index(WeylGroup const &group, ChamberPoint const &q, int w, ChamberPoint const &p)
{
  return crossing_sequence(group, q, w, p).dimension();
}

QVector perturb(RootSystem const &rs, QVector const &q, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> step(-8, 8);
  for (;;) {
    QVector x = q;
    for (auto &c : x)
      c += Rational(step(rng), 4096);
    if (is_regular(rs, x))
      return x;
  }
}

QVector random_positive_point(RootSystem const &rs, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value(1, 997);
  QVector values(static_cast<std::size_t>(rs.rank()));
  for (auto &v : values)
    v = Rational(value(rng), 101);
  return rs.point_from_simple_values(values);
}

bool CorrespondenceReport::ok() const
{
  bool each = std::all_of(cosets.begin(), cosets.end(), [](auto const &c) {
    return c.in_W_u && c.coset_ok && c.index == c.cell_dimension;
  });
  return each && bijection && multisets_equal && morse_polynomial == poincare;
}

CorrespondenceReport verify_bruhat_correspondence(WeylGroup const &group,
                                                  bruhat::ThetaSubset const &theta,
                                                  ChamberPoint const &q, ChamberPoint const &p)
{
  auto const &rs = group.root_system();
  auto theta_sorted = bruhat::validate_theta(rs, theta);
  if (!is_dominant(rs, p.coords))
    throw Error(ErrorKind::PointNotDominant, "p is not in the closed positive chamber");
  if (make_point(rs, p.coords).theta != theta_sorted)
    throw Error(ErrorKind::InvalidTheta, "theta is not the vanishing set of p");
  if (!is_regular(rs, q.coords))
    throw Error(ErrorKind::QNotRegular, "q lies on a singular hyperplane");
  if (!is_dominant(rs, q.coords))
    throw Error(ErrorKind::QNotInPositiveChamber, "q is not in the open positive chamber");

  auto w_u_set = bruhat::minimal_coset_indices(group, theta);
  auto cells = bruhat::bruhat_cells(group, theta);

  CorrespondenceReport report;
  std::vector<int> indices, hit;
  for (auto const &c : enumerate_cosets(group, p.coords)) {
    CycleWord cw = crossing_word(group, q, c.representative, p, c.representative);
    CosetCorrespondence cc;
    cc.coset = c.representative;
    int w_u = group.identity();
    for (auto const &wall : cw.walls) {
      cc.walls.push_back(wall.root);
      w_u = group.multiply(w_u, group.reflection(wall.root));
    }
    cc.w_u = w_u;
    cc.in_W_u = std::binary_search(w_u_set.begin(), w_u_set.end(), w_u);
    cc.coset_ok = group.apply(group.inverse(w_u), p.coords) == c.point;
    cc.index = cw.dimension();
    cc.cell_dimension = bruhat::cell_dimension_unchecked(rs, group[w_u].root_perm);
    indices.push_back(cc.index);
    hit.push_back(w_u);
    report.cosets.push_back(std::move(cc));
  }

  std::sort(hit.begin(), hit.end());
  report.bijection = std::adjacent_find(hit.begin(), hit.end()) == hit.end() && hit == w_u_set;

  std::vector<int> dims;
  for (auto const &cell : cells)
    dims.push_back(cell.dimension);
  std::vector<int> sorted_indices = indices;
  std::sort(sorted_indices.begin(), sorted_indices.end());
  std::sort(dims.begin(), dims.end());
  report.multisets_equal = sorted_indices == dims;
  report.morse_polynomial = bruhat::Polynomial::monomial_sum(indices);
  report.poincare = bruhat::Polynomial::monomial_sum(dims);
  return report;
}

} // namespace taut::morse
