#include "taut/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "taut/error.hpp"

namespace taut::rootsys
{

namespace
{

enum class RootClass { uniform, short_root, long_root, double_root };

struct RawSystem
{
  std::string name;
  int ambient = 0;
  std::vector<IntVector> vectors;
  std::vector<int> mults;
  std::vector<int> simple;
};

IntVector unit(int dim, int i, std::int64_t scale = 1)
{
  IntVector v(static_cast<std::size_t>(dim), 0);
  v[static_cast<std::size_t>(i)] = scale;
  return v;
}

IntVector combo(int dim, int i, std::int64_t a, int j, std::int64_t b)
{
  IntVector v(static_cast<std::size_t>(dim), 0);
  v[static_cast<std::size_t>(i)] += a;
  v[static_cast<std::size_t>(j)] += b;
  return v;
}

IntVector negate(IntVector v)
{
  for (auto &x : v)
    x = -x;
  return v;
}

int check_mult(std::optional<int> m, char const *what)
{
  int value = m.value_or(1);
  if (value <= 0)
    throw Error(ErrorKind::InvalidSpec,
                std::string("multiplicity '") + what + "' must be positive");
  return value;
}

RawSystem catalog_system(RootSystemSpec const &spec)
{
  std::string family = spec.family;
  std::transform(family.begin(), family.end(), family.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (family == "G2")
    family = "G";
  int n = spec.rank;
  auto const &ms = spec.multiplicities;

  if (n < 1)
    throw Error(ErrorKind::InvalidSpec, "catalog rank must be positive");

  std::vector<std::pair<IntVector, RootClass>> roots;
  std::vector<IntVector> simple_vectors;
  int dim = n;

  auto add_pm = [&](IntVector v, RootClass c) {
    roots.emplace_back(v, c);
    roots.emplace_back(negate(std::move(v)), c);
  };

  if (family == "A") {
    dim = n + 1;
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        add_pm(combo(dim, i, 1, j, -1), RootClass::uniform);
    for (int i = 0; i < n; ++i)
      simple_vectors.push_back(combo(dim, i, 1, i + 1, -1));
  } else if (family == "B" || family == "C" || family == "BC") {
    bool const b = family == "B", c = family == "C", bc = family == "BC";
    bool const single = n == 1 && !bc;
    auto pair_class = (b ? RootClass::long_root : c ? RootClass::short_root
                                                    : RootClass::long_root);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        add_pm(combo(dim, i, 1, j, -1), pair_class);
        add_pm(combo(dim, i, 1, j, 1), pair_class);
      }
    for (int i = 0; i < n; ++i) {
      if (b || bc)
        add_pm(unit(dim, i), single ? RootClass::uniform : RootClass::short_root);
      if (c)
        add_pm(unit(dim, i, 2), single ? RootClass::uniform : RootClass::long_root);
      if (bc)
        add_pm(unit(dim, i, 2), RootClass::double_root);
    }
    for (int i = 0; i + 1 < n; ++i)
      simple_vectors.push_back(combo(dim, i, 1, i + 1, -1));
    simple_vectors.push_back(unit(dim, n - 1, c ? 2 : 1));
  } else if (family == "D") {
    if (n < 2)
      throw Error(ErrorKind::InvalidSpec, "D_n needs n >= 2");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        add_pm(combo(dim, i, 1, j, -1), RootClass::uniform);
        add_pm(combo(dim, i, 1, j, 1), RootClass::uniform);
      }
    for (int i = 0; i + 1 < n; ++i)
      simple_vectors.push_back(combo(dim, i, 1, i + 1, -1));
    simple_vectors.push_back(combo(dim, n - 2, 1, n - 1, 1));
  } else if (family == "G") {
    if (n != 2)
      throw Error(ErrorKind::InvalidSpec, "G_2 has rank 2");
    dim = 3;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        add_pm(combo(3, i, 1, j, -1), RootClass::short_root);
    for (int i = 0; i < 3; ++i) {
      IntVector v{-1, -1, -1};
      v[static_cast<std::size_t>(i)] = 2;
      add_pm(v, RootClass::long_root);
    }
    simple_vectors.push_back({1, -1, 0});
    simple_vectors.push_back({-2, 1, 1});
  } else {
    throw Error(ErrorKind::InvalidSpec, "unknown root system family '" + spec.family + "'");
  }

  if (ms.double_roots && family != "BC")
    throw Error(ErrorKind::InvalidSpec,
                "'double' multiplicity only applies to BC_n");

  bool has_uniform = std::any_of(roots.begin(), roots.end(), [](auto const &r) {
    return r.second == RootClass::uniform;
  });
  int m_uniform = 1;
  if (has_uniform) {
    if (ms.short_roots && ms.long_roots && *ms.short_roots != *ms.long_roots)
      throw Error(ErrorKind::MultiplicityNotWeylInvariant,
                  family + std::to_string(n) +
                      " has a single Weyl orbit of roots; short and long "
                      "multiplicities must agree");
    m_uniform = check_mult(ms.short_roots ? ms.short_roots : ms.long_roots, "uniform");
  }
  int m_short = check_mult(ms.short_roots, "short");
  int m_long = check_mult(ms.long_roots, "long");
  int m_double = check_mult(ms.double_roots, "double");

  RawSystem raw;
  raw.name = (family == "G" ? std::string("G") : family) + std::to_string(n);
  raw.ambient = dim;
  for (auto const &[v, cls] : roots) {
    raw.vectors.push_back(v);
    switch (cls) {
    case RootClass::uniform: raw.mults.push_back(m_uniform); break;
    case RootClass::short_root: raw.mults.push_back(m_short); break;
    case RootClass::long_root: raw.mults.push_back(m_long); break;
    case RootClass::double_root: raw.mults.push_back(m_double); break;
    }
  }
  for (auto const &s : simple_vectors) {
    auto it = std::find(raw.vectors.begin(), raw.vectors.end(), s);
    raw.simple.push_back(static_cast<int>(it - raw.vectors.begin()));
  }
  return raw;
}

RawSystem explicit_system(RootSystemSpec const &spec)
{
  if (spec.roots.empty())
    throw Error(ErrorKind::InvalidSpec, "explicit root list is empty");
  if (!spec.mults.empty() && spec.mults.size() != spec.roots.size())
    throw Error(ErrorKind::InvalidSpec, "'mults' must match 'roots' in length");

  RawSystem raw;
  raw.name = "custom";
  raw.ambient = static_cast<int>(spec.roots.front().size());
  for (std::size_t i = 0; i < spec.roots.size(); ++i) {
    if (static_cast<int>(spec.roots[i].size()) != raw.ambient)
      throw Error(ErrorKind::InvalidSpec, "roots have inconsistent dimensions");
    int m = spec.mults.empty() ? 1 : spec.mults[i];
    if (m <= 0)
      throw Error(ErrorKind::InvalidSpec, "multiplicities must be positive");
    raw.vectors.push_back(spec.roots[i]);
    raw.mults.push_back(m);
  }
  for (int s : spec.simple) {
    if (s < 0 || s >= static_cast<int>(spec.roots.size()))
      throw Error(ErrorKind::NotABase, "simple root index out of range");
    raw.simple.push_back(s);
  }
  // Negatives are implied when absent.
  std::size_t given = raw.vectors.size();
  for (std::size_t i = 0; i < given; ++i) {
    auto neg = negate(raw.vectors[i]);
    auto it = std::find(raw.vectors.begin(), raw.vectors.end(), neg);
    if (it == raw.vectors.end()) {
      raw.vectors.push_back(neg);
      raw.mults.push_back(raw.mults[i]);
    } else if (raw.mults[static_cast<std::size_t>(it - raw.vectors.begin())] != raw.mults[i]) {
      throw Error(ErrorKind::MultiplicityNotWeylInvariant,
                  "a root and its negative carry different multiplicities");
    }
  }
  return raw;
}

RawSystem raw_system(RootSystemSpec const &spec)
{
  if (!spec.factors.empty()) {
    std::vector<RawSystem> parts;
    for (auto const &f : spec.factors)
      parts.push_back(raw_system(f));
    RawSystem raw;
    for (auto const &p : parts)
      raw.ambient += p.ambient;
    int offset = 0;
    for (auto const &p : parts) {
      if (!raw.name.empty())
        raw.name += "x";
      raw.name += p.name;
      int base = static_cast<int>(raw.vectors.size());
      for (std::size_t i = 0; i < p.vectors.size(); ++i) {
        IntVector v(static_cast<std::size_t>(raw.ambient), 0);
        std::copy(p.vectors[i].begin(), p.vectors[i].end(), v.begin() + offset);
        raw.vectors.push_back(std::move(v));
        raw.mults.push_back(p.mults[i]);
      }
      for (int s : p.simple)
        raw.simple.push_back(base + s);
      offset += p.ambient;
    }
    return raw;
  }
  if (!spec.family.empty())
    return catalog_system(spec);
  return explicit_system(spec);
}

} // namespace

RootSystemSpec RootSystemSpec::catalog(std::string family, int rank, MultiplicitySpec mults)
{
  RootSystemSpec s;
  s.family = std::move(family);
  s.rank = rank;
  s.multiplicities = mults;
  return s;
}

RootSystemSpec RootSystemSpec::product(std::vector<RootSystemSpec> factors)
{
  RootSystemSpec s;
  s.factors = std::move(factors);
  return s;
}

std::optional<int> RootSystem::find(IntVector const &v) const
{
  auto it = _index.find(v);
  if (it == _index.end())
    return std::nullopt;
  return it->second;
}

int RootSystem::bar_dimension(int i) const
{
  auto const &r = root(i);
  int d = r.multiplicity;
  if (r.double_index >= 0)
    d += root(r.double_index).multiplicity;
  return d;
}

QVector RootSystem::reflect(int i, QVector const &x) const
{
  auto const &a = root(i).vector;
  Rational c = Rational(2) * dot(a, x) / Rational(_norm2[static_cast<std::size_t>(i)]);
  QVector out(x);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] -= c * a[k];
  return out;
}

int RootSystem::reflect_root(int i, int j) const
{
  return _reflection_perm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

QMatrix RootSystem::reflection_matrix(int i) const
{
  auto const &a = root(i).vector;
  Rational n2 = _norm2[static_cast<std::size_t>(i)];
  QMatrix m = QMatrix::identity(_ambient_dim);
  for (int r = 0; r < _ambient_dim; ++r)
    for (int c = 0; c < _ambient_dim; ++c)
      m(r, c) -= Rational(2 * a[r] * a[c]) / n2;
  return m;
}

QVector RootSystem::point_from_simple_values(QVector const &values) const
{
  int n = rank();
  if (static_cast<int>(values.size()) != n)
    throw Error(ErrorKind::InvalidSpec, "expected one value per simple root");
  QMatrix gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram(i, j) = dot(root(_simple[i]).vector, root(_simple[j]).vector);
  QVector y;
  solve(gram, values, y);
  QVector x(static_cast<std::size_t>(_ambient_dim));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < _ambient_dim; ++k)
      x[k] += y[i] * root(_simple[i]).vector[k];
  return x;
}

RootSystem build_root_system(RootSystemSpec const &spec)
{
  RawSystem raw = raw_system(spec);

  RootSystem rs;
  rs._name = raw.name;
  rs._ambient_dim = raw.ambient;
  int const count = static_cast<int>(raw.vectors.size());

  for (int i = 0; i < count; ++i) {
    auto const &v = raw.vectors[i];
    if (std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; }))
      throw Error(ErrorKind::InvalidSpec, "zero vector in root list");
    if (!rs._index.emplace(v, i).second)
      throw Error(ErrorKind::InvalidSpec, "duplicate root in list");
    Root r;
    r.vector = v;
    r.multiplicity = raw.mults[i];
    rs._roots.push_back(std::move(r));
    rs._norm2.push_back(dot(v, v));
  }

  // Closure and invariance under every reflection.
  rs._reflection_perm.assign(static_cast<std::size_t>(count), std::vector<int>(static_cast<std::size_t>(count)));
  for (int i = 0; i < count; ++i) {
    auto const &a = rs._roots[i].vector;
    for (int j = 0; j < count; ++j) {
      auto const &b = rs._roots[j].vector;
      std::int64_t num = 2 * dot(a, b);
      if (num % rs._norm2[i] != 0)
        throw Error(ErrorKind::NonClosedUnderReflection,
                    "non-integral Cartan number between roots " + std::to_string(i) +
                        " and " + std::to_string(j));
      std::int64_t c = num / rs._norm2[i];
      IntVector image(b);
      for (std::size_t k = 0; k < image.size(); ++k)
        image[k] -= c * a[k];
      auto found = rs.find(image);
      if (!found)
        throw Error(ErrorKind::NonClosedUnderReflection,
                    "reflection of root " + std::to_string(j) + " in root " +
                        std::to_string(i) + " is not a root");
      if (rs._roots[*found].multiplicity != rs._roots[j].multiplicity)
        throw Error(ErrorKind::MultiplicityNotWeylInvariant,
                    "roots " + std::to_string(j) + " and " + std::to_string(*found) +
                        " are Weyl-conjugate but carry different multiplicities");
      rs._reflection_perm[i][j] = *found;
    }
  }

  rs._negative.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    auto neg = negate(rs._roots[i].vector);
    auto found = rs.find(neg);
    if (!found)
      throw Error(ErrorKind::NonClosedUnderReflection, "root without negative");
    rs._negative[i] = *found;

    IntVector twice(rs._roots[i].vector);
    for (auto &x : twice)
      x *= 2;
    if (auto d = rs.find(twice)) {
      rs._roots[i].double_index = *d;
      rs._roots[*d].half_index = i;
      rs._roots[*d].is_reduced = false;
    }
  }

  // The base.
  auto const &simple = raw.simple;
  int const n = static_cast<int>(simple.size());
  if (n == 0)
    throw Error(ErrorKind::NotABase, "no simple roots given");
  for (int s : simple)
    if (!rs._roots[s].is_reduced)
      throw Error(ErrorKind::NotABase, "simple roots must be reduced");
  QMatrix gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      gram(i, j) = dot(rs._roots[simple[i]].vector, rs._roots[simple[j]].vector);

  for (int r = 0; r < count; ++r) {
    auto const &v = rs._roots[r].vector;
    QVector rhs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      rhs[i] = dot(rs._roots[simple[i]].vector, v);
    QVector c;
    if (!solve(gram, rhs, c))
      throw Error(ErrorKind::NotABase, "simple roots are linearly dependent");
    IntVector coeffs;
    bool nonneg = true, nonpos = true;
    for (auto const &x : c) {
      if (x.denominator() != 1)
        throw Error(ErrorKind::NotABase,
                    "root " + std::to_string(r) + " is not an integral combination of the base");
      coeffs.push_back(x.numerator());
      nonneg = nonneg && x >= 0;
      nonpos = nonpos && x <= 0;
    }
    IntVector rebuilt(static_cast<std::size_t>(rs._ambient_dim), 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < rs._ambient_dim; ++k)
        rebuilt[k] += coeffs[i] * rs._roots[simple[i]].vector[k];
    if (rebuilt != v)
      throw Error(ErrorKind::NotABase,
                  "root " + std::to_string(r) + " is outside the span of the base");
    if (!nonneg && !nonpos)
      throw Error(ErrorKind::NotABase,
                  "root " + std::to_string(r) + " has mixed-sign coefficients");
    rs._roots[r].simple_coeffs = std::move(coeffs);
    rs._roots[r].positive = nonneg;
  }

  rs._simple = simple;
  for (int r = 0; r < count; ++r)
    if (rs._roots[r].positive && rs._roots[r].is_reduced)
      rs._positive_reduced.push_back(r);
  return rs;
}

std::size_t PermHash::operator()(std::vector<int> const &perm) const noexcept
{
  std::size_t h = 1469598103934665603ull;
  for (int x : perm) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

WeylGroup::WeylGroup(RootSystem const &rs)
: _rs(&rs)
{
  if (rs.rank() > max_rank)
    throw Error(ErrorKind::RankTooLarge,
                "rank " + std::to_string(rs.rank()) + " exceeds " + std::to_string(max_rank));

  int const count = rs.size();
  std::vector<int> id(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    id[i] = i;

  std::vector<QMatrix> gen_matrix;
  for (int s : rs.simple_roots())
    gen_matrix.push_back(rs.reflection_matrix(s));

  _elements.push_back({QMatrix::identity(rs.ambient_dim()), {}, id});
  _lookup.emplace(id, 0);

  // Breadth-first closure; discovering w*s_i in (parent, i) order yields
  // shortlex-minimal words.
  for (std::size_t head = 0; head < _elements.size(); ++head) {
    for (int i = 0; i < rs.rank(); ++i) {
      auto const &gperm = rs.reflection_permutation(rs.simple_roots()[i]);
      std::vector<int> perm(static_cast<std::size_t>(count));
      auto const &wperm = _elements[head].root_perm;
      for (int j = 0; j < count; ++j)
        perm[j] = wperm[gperm[j]];
      if (_lookup.count(perm))
        continue;
      WeylElement e;
      e.matrix = _elements[head].matrix * gen_matrix[i];
      e.word = _elements[head].word;
      e.word.push_back(i);
      e.root_perm = perm;
      _lookup.emplace(std::move(perm), static_cast<int>(_elements.size()));
      _elements.push_back(std::move(e));
    }
  }

  for (int i = 0; i < rs.rank(); ++i)
    _simple.push_back(_elements[static_cast<std::size_t>(i) + 1].word == std::vector<int>{i}
                          ? i + 1
                          : *find(rs.reflection_permutation(rs.simple_roots()[i])));
}

std::optional<int> WeylGroup::find(std::vector<int> const &root_perm) const
{
  auto it = _lookup.find(root_perm);
  if (it == _lookup.end())
    return std::nullopt;
  return it->second;
}

int WeylGroup::index_of(WeylElement const &w) const
{
  auto found = find(w.root_perm);
  if (!found)
    throw Error(ErrorKind::ElementNotInGroup, "element is not in the Weyl group");
  return *found;
}

int WeylGroup::multiply(int a, int b) const
{
  auto const &pa = _elements[static_cast<std::size_t>(a)].root_perm;
  auto const &pb = _elements[static_cast<std::size_t>(b)].root_perm;
  std::vector<int> perm(pa.size());
  for (std::size_t j = 0; j < pa.size(); ++j)
    perm[j] = pa[static_cast<std::size_t>(pb[j])];
  return _lookup.at(perm);
}

int WeylGroup::inverse(int a) const
{
  auto const &pa = _elements[static_cast<std::size_t>(a)].root_perm;
  std::vector<int> perm(pa.size());
  for (std::size_t j = 0; j < pa.size(); ++j)
    perm[static_cast<std::size_t>(pa[j])] = static_cast<int>(j);
  return _lookup.at(perm);
}

int WeylGroup::reflection(int root) const
{
  return _lookup.at(_rs->reflection_permutation(root));
}

std::vector<WeylElement> weyl_group(RootSystem const &rs)
{
  return WeylGroup(rs).elements();
}

void check_element(RootSystem const &rs, WeylElement const &w)
{
  int const count = rs.size();
  if (static_cast<int>(w.root_perm.size()) != count || w.matrix.rows() != rs.ambient_dim() ||
      w.matrix.cols() != rs.ambient_dim())
    throw Error(ErrorKind::ElementNotInGroup, "element has the wrong shape for this root system");
  QMatrix m = QMatrix::identity(rs.ambient_dim());
  for (int i : w.word) {
    if (i < 0 || i >= rs.rank())
      throw Error(ErrorKind::ElementNotInGroup, "word letter out of range");
    m = m * rs.reflection_matrix(rs.simple_roots()[i]);
  }
  if (!(m == w.matrix))
    throw Error(ErrorKind::ElementNotInGroup, "word does not reproduce the matrix");
  for (int j = 0; j < count; ++j) {
    auto image = m * to_rational(rs.root(j).vector);
    int target = w.root_perm[j];
    if (target < 0 || target >= count || image != to_rational(rs.root(target).vector))
      throw Error(ErrorKind::ElementNotInGroup, "root permutation does not match the matrix");
  }
}

std::vector<int> inversion_set_unchecked(RootSystem const &rs, std::vector<int> const &root_perm)
{
  std::vector<int> inv(root_perm.size());
  for (std::size_t j = 0; j < root_perm.size(); ++j)
    inv[static_cast<std::size_t>(root_perm[j])] = static_cast<int>(j);
  std::vector<int> out;
  for (int beta : rs.positive_reduced())
    if (!rs.root(inv[static_cast<std::size_t>(beta)]).positive)
      out.push_back(beta);
  return out;
}

std::vector<int> inversion_set(RootSystem const &rs, WeylElement const &w)
{
  check_element(rs, w);
  return inversion_set_unchecked(rs, w.root_perm);
}

std::vector<RootSystemSpec> catalog_specs(int max_rank)
{
  using M = MultiplicitySpec;
  std::vector<RootSystemSpec> out;
  auto add = [&](std::string fam, int n, M m) {
    if (n <= max_rank)
      out.push_back(RootSystemSpec::catalog(std::move(fam), n, m));
  };
  for (int n = 1; n <= max_rank; ++n) {
    add("A", n, {});
    add("A", n, {2, {}, {}});
    add("BC", n, {2, 2, 1});
    add("BC", n, {4, 4, 3});
  }
  add("A", 2, {4, {}, {}});
  add("BC", 1, {6, {}, 1});
  add("BC", 1, {8, {}, 7});
  for (int n = 2; n <= max_rank; ++n) {
    add("B", n, {});
    add("B", n, {3, 1, {}});
    add("C", n, {});
    add("C", n, {2, 1, {}});
    add("C", n, {4, 3, {}});
  }
  for (int n = 3; n <= max_rank; ++n) {
    add("D", n, {});
    add("D", n, {{}, 2, {}});
  }
  add("G", 2, {});
  add("G", 2, {2, 2, {}});
  if (max_rank >= 2)
    out.push_back(RootSystemSpec::product(
        {RootSystemSpec::catalog("A", 1), RootSystemSpec::catalog("A", 1, {3, {}, {}})}));
  if (max_rank >= 3) {
    out.push_back(RootSystemSpec::product({RootSystemSpec::catalog("A", 1),
                                           RootSystemSpec::catalog("A", 1, {6, {}, {}}),
                                           RootSystemSpec::catalog("A", 1, {7, {}, {}})}));
    out.push_back(RootSystemSpec::product(
        {RootSystemSpec::catalog("A", 1, {2, {}, {}}), RootSystemSpec::catalog("A", 2)}));
  }
  return out;
}

} // namespace taut::rootsys
