// Acceptance battery: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "oracle.hpp"
#include "taut/error.hpp"
#include "taut/bruhat.hpp"
#include "taut/morse.hpp"
#include "taut/numlie.hpp"
#include "taut/reduced.hpp"
#include "taut/suite.hpp"

using namespace taut;
using reduced::Vec3;
using reduced::Vec4;

namespace
{

constexpr double pi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome
{
  bool ok = true;
  std::string note;

  void fail(std::string const &why)
  {
    if (ok)
      note = why;
    ok = false;
  }
};

oracle::RootData data_of(rootsys::RootSystem const &rs)
{
  oracle::RootData rd;
  for (auto const &r : rs.roots())
  {
    rd.roots.push_back(r.vector);
    rd.mults.push_back(r.multiplicity);
  }
  return rd;
}

QVector qv(std::initializer_list<long> v)
{
  QVector out;
  for (long x : v)
    out.emplace_back(x);
  return out;
}

// 1 -----------------------------------------------------------------------

oracle::RootData a2_data(int m)
{
  oracle::RootData rd;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j)
      {
        oracle::Vec v(3, 0);
        v[i] = 1;
        v[j] = -1;
        rd.roots.push_back(v);
        rd.mults.push_back(m);
      }
  return rd;
}

Outcome criterion1()
{
  using rootsys::RootSystemSpec;
  struct Case
  {
    char const *name;
    RootSystemSpec spec;
    oracle::RootData data;
    QVector q;
    std::vector<std::int64_t> literal;
  };
  oracle::RootData bc1{{{1}, {-1}, {2}, {-2}}, {6, 6, 1, 1}};
  oracle::RootData a13{{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}, {1, 1, 6, 6, 7, 7}};
  std::vector<Case> cases = {
      {"A2 m=1", RootSystemSpec::catalog("A", 2), a2_data(1), qv({3, 1, -5}), {1, 2, 2, 1}},
      {"A2 m=2", RootSystemSpec::catalog("A", 2, {2, {}, {}}), a2_data(2), qv({3, 1, -5}), {1, 0, 2, 0, 2, 0, 1}},
      {"BC1 (6,1)", RootSystemSpec::catalog("BC", 1, {6, {}, 1}), bc1, qv({1}), {1, 0, 0, 0, 0, 0, 0, 1}},
      {"A1^3 (1,6,7)",
       RootSystemSpec::product({RootSystemSpec::catalog("A", 1), RootSystemSpec::catalog("A", 1, {6, {}, {}}),
                                RootSystemSpec::catalog("A", 1, {7, {}, {}})}),
       a13, qv({1, 2, 3}),
       // (1+t)(1+t^6)(1+t^7)
       {1, 1, 0, 0, 0, 0, 1, 2, 1, 0, 0, 0, 0, 1, 1}}};
  Outcome out;
  double worst = 0;
  for (auto &c : cases)
  {
    auto oracle_poly = oracle::poincare(c.data, c.q, c.q);
    auto t0 = Clock::now();
    auto rs = rootsys::build_root_system(c.spec);
    auto got = bruhat::poincare_polynomial(rs, {}).coefficients;
    double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    if (oracle_poly != c.literal)
      out.fail(std::string(c.name) + ": brute force differs from the stated target");
    if (got != oracle_poly)
      out.fail(std::string(c.name) + ": library differs from brute force");
    if (dt >= 1.0)
      out.fail(std::string(c.name) + ": slower than 1 s");
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "4 systems exact, slowest %.4f s", worst);
  if (out.ok)
    out.note = buf;
  return out;
}

// 2 -----------------------------------------------------------------------

Outcome criterion2()
{
  Outcome out;
  double lib_time = 0;
  int runs = 0, systems = 0;
  std::uint64_t stream = 0;
  for (auto const &spec : rootsys::catalog_specs(3))
  {
    auto t0 = Clock::now();
    auto rs = rootsys::build_root_system(spec);
    rootsys::WeylGroup group(rs);
    lib_time += seconds_since(t0);
    auto rd = data_of(rs);
    ++systems;
    int r = rs.rank();
    for (int mask = 0; mask < (1 << r); ++mask, ++stream)
    {
      std::mt19937_64 rng(1000 + stream);
      std::uniform_int_distribution<int> val(1, 9);
      bruhat::ThetaSubset theta;
      QVector values;
      for (int i = 0; i < r; ++i)
      {
        bool in = mask >> i & 1;
        if (in)
          theta.indices.push_back(i);
        values.emplace_back(in ? 0 : val(rng));
      }
      auto p = morse::make_point(rs, rs.point_from_simple_values(values));
      auto oracle_poly = oracle::poincare(rd, rs.point_from_simple_values(QVector(r, Rational(1))), p.coords);
      int good = 0;
      for (int attempt = 0; good < 5 && attempt < 100; ++attempt)
      {
        auto q = morse::make_point(rs, morse::random_positive_point(rs, rng()));
        morse::CorrespondenceReport rep;
        auto t1 = Clock::now();
        try
        {
          rep = morse::verify_bruhat_correspondence(group, theta, q, p);
        }
        catch (Error const &e)
        {
          lib_time += seconds_since(t1);
          if (e.kind() != ErrorKind::NonGenericSegment)
            out.fail(rs.name() + ": " + e.what());
          continue;
        }
        lib_time += seconds_since(t1);
        ++good;
        ++runs;
        std::vector<int> idx;
        for (auto const &c : rep.cosets)
          idx.push_back(c.index);
        std::sort(idx.begin(), idx.end());
        if (!rep.ok())
          out.fail(rs.name() + ": correspondence report not ok");
        if (idx != oracle::morse_indices(rd, q.coords, p.coords))
          out.fail(rs.name() + ": indices differ from brute force");
        if (rep.poincare.coefficients != oracle_poly)
          out.fail(rs.name() + ": Poincare differs from P_W / P_Wp");
      }
      if (good < 5)
        out.fail(rs.name() + ": could not find 5 generic q");
    }
  }
  if (lib_time >= 10.0)
    out.fail("slower than 10 s");
  if (out.ok)
  {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d systems, %d runs, %.3f s", systems, runs, lib_time);
    out.note = buf;
  }
  return out;
}

// 3 -----------------------------------------------------------------------

Outcome criterion3()
{
  Outcome out;
  int checked = 0;
  for (int c = 1; c <= 3; ++c)
    for (int n = 2; n <= 64; ++n)
    {
      auto g = reduced::build_reduced_geometry(c, n);
      int dim_v = c == 1 ? 32 : 8 * n;
      int sum = 0;
      for (auto const &circle : g.circles)
        sum += circle.multiplicity;
      ++checked;
      if (2 * sum + 1 != dim_v - 3)
        out.fail("case " + std::to_string(c) + " n " + std::to_string(n));
    }
  // the principal orbit dimension itself, from the matrices
  for (int c = 1; c <= 3; ++c)
    for (int n = 2; n <= (c == 1 ? 2 : 4); ++n)
    {
      auto rep = numlie::build_representation(c, n);
      std::mt19937_64 rng(static_cast<std::uint64_t>(10 * c + n));
      std::normal_distribution<double> g;
      Eigen::VectorXd p(rep.ambient_dim);
      for (auto &x : p)
        x = g(rng);
      p.normalize();
      auto geom = reduced::build_reduced_geometry(c, n);
      if (numlie::orbit_dimension(rep, p) != 2 * geom.circle_multiplicity_sum() + 1)
        out.fail("numerical orbit dimension, case " + std::to_string(c));
    }
  if (out.ok)
    out.note = std::to_string(checked) + " (case, n) pairs";
  return out;
}

// 4 -----------------------------------------------------------------------

Vec3 gaussian3(std::mt19937_64 &rng)
{
  std::normal_distribution<double> g;
  double x = g(rng), y = g(rng), z = g(rng);
  return {x, y, z};
}

// Order of the circles by the parameter of their near-half crossing,
// computed from scratch.
std::vector<int> near_order(reduced::ReducedGeometry const &geom, Vec3 const &p, Vec3 const &d, double t)
{
  Vec3 u = std::cos(t) * d + std::sin(t) * p.cross(d);
  std::vector<std::pair<double, int>> s;
  for (int c = 0; c < static_cast<int>(geom.circles.size()); ++c)
  {
    Vec3 const &nrm = geom.circles[static_cast<std::size_t>(c)].normal;
    double th = std::atan2(-nrm.dot(p), nrm.dot(u));
    if (th <= 0)
      th += pi;
    s.push_back({-th, c});
  }
  std::sort(s.begin(), s.end());
  std::vector<int> out;
  for (auto const &x : s)
    out.push_back(x.second);
  return out;
}

// Counts adjacent swaps and three-block reversals between t0 and t1.
bool sweep(reduced::ReducedGeometry const &geom, Vec3 const &p, Vec3 const &d, double t0, double t1,
           std::vector<int> const &o0, std::vector<int> const &o1, int depth, int &doubles, int &triples)
{
  if (o0 == o1)
    return true;
  std::size_t a = 0, b = o0.size() - 1;
  while (o0[a] == o1[a])
    ++a;
  while (o0[b] == o1[b])
    --b;
  std::size_t len = b - a + 1;
  bool reversed = std::equal(o0.begin() + static_cast<long>(a), o0.begin() + static_cast<long>(b) + 1,
                             o1.rbegin() + static_cast<long>(o1.size() - 1 - b));
  if (reversed && len == 2)
    return ++doubles, true;
  if (reversed && len == 3 && t1 - t0 < 1e-9)
    return ++triples, true;
  if (depth > 60)
    return false;
  double tm = (t0 + t1) / 2;
  auto om = near_order(geom, p, d, tm);
  return sweep(geom, p, d, t0, tm, o0, om, depth + 1, doubles, triples) &&
         sweep(geom, p, d, tm, t1, om, o1, depth + 1, doubles, triples);
}

Outcome criterion4()
{
  Outcome out;
  int swept = 0;
  for (int c = 1; c <= 3; ++c)
  {
    auto geom = reduced::build_reduced_geometry(c, 2);
    std::mt19937_64 rng(400 + static_cast<std::uint64_t>(c));
    int done = 0;
    while (done < 50)
    {
      Vec3 p = gaussian3(rng).normalized();
      Vec3 dir = gaussian3(rng);
      if (!reduced::circles_through(geom, p).empty())
        continue;
      std::vector<reduced::CollapseEvent> ev;
      try
      {
        ev = reduced::collapse_events(geom, p, dir);
      }
      catch (Error const &e)
      {
        if (e.kind() != ErrorKind::NonGenericPoint)
          out.fail(e.what());
        continue;
      }
      ++done;
      int d2 = 0, d3 = 0;
      for (auto const &e : ev)
        (e.order == 2 ? d2 : d3)++;
      if (d2 != 6 || d3 != (c == 3 ? 2 : 0))
        out.fail("case " + std::to_string(c) + ": counts " + std::to_string(d2) + "/" + std::to_string(d3));
      if (done <= 10)
      {
        Vec3 d = (dir - dir.dot(p) * p).normalized();
        int s2 = 0, s3 = 0;
        int const grid = 2048;
        bool clean = true;
        auto prev = near_order(geom, p, d, 0);
        for (int k = 1; k <= grid && clean; ++k)
        {
          double t0 = 2 * pi * (k - 1) / grid, t1 = 2 * pi * k / grid;
          auto cur = near_order(geom, p, d, t1);
          clean = sweep(geom, p, d, t0, t1, prev, cur, 0, s2, s3);
          prev = cur;
        }
        ++swept;
        if (!clean || s2 != d2 || s3 != d3)
          out.fail("case " + std::to_string(c) + ": sweep found " + std::to_string(s2) + "/" + std::to_string(s3));
      }
    }
  }
  if (out.ok)
    out.note = "150 samples, " + std::to_string(swept) + " recounted by sweeping t";
  return out;
}

// 5 -----------------------------------------------------------------------

// Index of the distance from q at parameter q_param along the geodesic:
// each circle is met at s0 in (0, pi/2) and s0 + pi/2, the special point
// sits at pi/2.
int index_oracle(reduced::ReducedGeometry const &geom, Vec3 const &p, Vec3 const &d, double q)
{
  int idx = q > pi / 2 ? 1 : 0;
  for (auto const &c : geom.circles)
  {
    double th = std::atan2(-c.normal.dot(p), c.normal.dot(d));
    if (th <= 0)
      th += pi;
    double s0 = th / 2;
    idx += c.multiplicity * ((s0 < q) + (s0 + pi / 2 < q));
  }
  return idx;
}

Outcome criterion5()
{
  Outcome out;
  for (int c = 1; c <= 3; ++c)
  {
    auto geom = reduced::build_reduced_geometry(c, 2);
    std::mt19937_64 rng(500 + static_cast<std::uint64_t>(c));
    std::uniform_real_distribution<double> qd(0.55 * pi, 0.98 * pi);
    int done = 0;
    while (done < 100)
    {
      Vec3 p = gaussian3(rng).normalized();
      Vec3 dir = gaussian3(rng);
      double q = qd(rng);
      if (!reduced::circles_through(geom, p).empty())
        continue;
      reduced::CycleDescriptor cd;
      try
      {
        cd = reduced::assemble_cycle(geom, p, dir, true, q);
      }
      catch (Error const &e)
      {
        auto k = e.kind();
        if (k != ErrorKind::NonGenericPoint && k != ErrorKind::QOnFocalPoint && k != ErrorKind::CollapseAtBasepoint)
          out.fail(e.what());
        continue;
      }
      ++done;
      std::string tag = "case " + std::to_string(c) + " sample " + std::to_string(done);
      if (!cd.tail)
      {
        out.fail(tag + ": no bundle");
        continue;
      }
      auto const &b = *cd.tail;
      if (!reduced::check_bundle(b).ok())
        out.fail(tag + ": bundle check");
      Eigen::Matrix3d prod = Eigen::Matrix3d::Identity();
      for (auto const &g : b.gluings)
        prod = prod * g.flag;
      if ((prod - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9)
        out.fail(tag + ": correcting flags do not multiply to the identity");
      // transport the fiber word once around the circle
      auto word = b.arcs.front().word;
      std::size_t l = b.arcs.size();
      for (std::size_t i = 1; i <= l; ++i)
      {
        auto const &g = b.gluings[i % l];
        auto first = word.begin() + g.first;
        std::reverse(first, first + g.order);
        if (word != b.arcs[i % l].word)
          out.fail(tag + ": word does not match arc " + std::to_string(i % l));
      }
      Vec3 d = (dir - dir.dot(p) * p).normalized();
      if (cd.total_dim != index_oracle(geom, p, d, q))
        out.fail(tag + ": total_dim " + std::to_string(cd.total_dim) + " vs index " +
                 std::to_string(index_oracle(geom, p, d, q)));
    }
  }
  if (out.ok)
    out.note = "300 cycles";
  return out;
}

// 6 -----------------------------------------------------------------------

Outcome criterion6(int threads)
{
  Outcome out;
  struct Run
  {
    int c, n, samples;
  };
  auto t0 = Clock::now();
  double worst_ds = 0, worst_w = 0;
  for (auto run : {Run{2, 2, 20}, Run{3, 2, 20}, Run{1, 2, 5}})
  {
    auto rep = numlie::build_representation(run.c, run.n);
    auto geom = reduced::build_reduced_geometry(run.c, run.n);
    auto r = numlie::verify_reduction(rep, geom, run.samples, 2024, threads);
    std::string tag = "case " + std::to_string(run.c);
    worst_ds = std::max(worst_ds, r.max_ds);
    worst_w = std::max(worst_w, r.lemma.weingarten_max);
    if (r.samples != run.samples)
      out.fail(tag + ": sample count");
    if (!(r.max_ds < 1e-6))
      out.fail(tag + ": focal parameters off by " + std::to_string(r.max_ds));
    if (r.mult_mismatches != 0)
      out.fail(tag + ": multiplicity mismatches");
    if (!(r.lemma.weingarten_max < 1e-8) || !(r.lemma.crit_gradient_max < 1e-8))
      out.fail(tag + ": lemma residual");
    if (r.lemma.sigma_dim_min != 3 || r.lemma.sigma_dim_max != 3)
      out.fail(tag + ": sigma_p dimension");
  }
  double dt = seconds_since(t0);
  if (dt >= 120)
    out.fail("slower than 2 min");
  if (out.ok)
  {
    char buf[128];
    std::snprintf(buf, sizeof buf, "max |ds| %.2e, lemma %.2e, %.2f s", worst_ds, worst_w, dt);
    out.note = buf;
  }
  return out;
}

// 7 -----------------------------------------------------------------------

int reflection_closure(reduced::ReducedGeometry const &geom)
{
  std::vector<Eigen::Matrix3d> gens, all{Eigen::Matrix3d::Identity()};
  for (auto const &c : geom.circles)
    gens.push_back(Eigen::Matrix3d::Identity() - 2 * c.normal * c.normal.transpose());
  for (std::size_t k = 0; k < all.size(); ++k)
    for (auto const &g : gens)
    {
      Eigen::Matrix3d m = g * all[k];
      bool seen = std::any_of(all.begin(), all.end(), [&](auto const &x) { return (x - m).norm() < 1e-9; });
      if (!seen)
        all.push_back(m);
    }
  return static_cast<int>(all.size());
}

Outcome criterion7()
{
  Outcome out;
  auto geom = reduced::build_reduced_geometry(2, 2);
  std::mt19937_64 rng(700);
  std::normal_distribution<double> g;
  Vec4 p3(0.3, 0.5, -0.2, 0.7);
  std::optional<bruhat::Polynomial> first;
  int got = 0;
  while (got < 10)
  {
    double a = g(rng), b = g(rng), c = g(rng), d = g(rng);
    reduced::TautnessReport t;
    try
    {
      t = reduced::orbit_critical_data(geom, Vec4(a, b, c, d), p3);
    }
    catch (Error const &e)
    {
      if (e.kind() != ErrorKind::QNotGeneric)
        out.fail(e.what());
      continue;
    }
    ++got;
    if (!first)
      first = t.polynomial;
    if (t.polynomial != *first)
      out.fail("polynomial changed with q");
  }
  for (int c = 1; c <= 3; ++c)
  {
    auto gc = reduced::build_reduced_geometry(c, 2);
    int order = reflection_closure(gc);
    int circles = reduced::orbit_critical_data(gc, Vec4(0.8, 0.1, -0.3, 0.5), p3).special_circles;
    if (circles != order || order != (c == 3 ? 12 : 8))
      out.fail("case " + std::to_string(c) + ": " + std::to_string(circles) + " special circles, |D| = " +
               std::to_string(order));
  }
  if (out.ok)
    out.note = "P(t) = " + first->to_string();
  return out;
}

// 8 -----------------------------------------------------------------------

Outcome criterion8(int threads)
{
  Outcome out;
  auto a = suite::run_suite(7, 1).report.dump();
  auto b = suite::run_suite(7, std::max(2, threads)).report.dump();
  auto c = suite::run_suite(7, 3).report.dump();
  if (a != b || a != c)
    out.fail("suite JSON depends on the thread count");
  if (out.ok)
    out.note = std::to_string(a.size()) + " bytes identical at widths 1, " + std::to_string(std::max(2, threads)) +
               ", 3";
  return out;
}

} // namespace

int main()
{
  int threads = static_cast<int>(std::max(2u, std::thread::hardware_concurrency()));
  std::vector<std::pair<char const *, std::function<Outcome()>>> criteria = {
      {"Bruhat/Poincare exactness", criterion1},
      {"Bruhat-Morse correspondence", criterion2},
      {"reduced sum rule", criterion3},
      {"collapse counts", criterion4},
      {"cycle condition and monodromy", criterion5},
      {"numerical reduction oracle", [&] { return criterion6(threads); }},
      {"tautness invariance", criterion7},
      {"determinism", [&] { return criterion8(threads); }},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k)
  {
    Outcome o;
    try
    {
      o = criteria[k].second();
    }
    catch (std::exception const &e)
    {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.ok;
    std::printf("%s %zu %s: %s\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first, o.note.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
