#include "taut/suite.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "taut/bruhat.hpp"
#include "taut/morse.hpp"
#include "taut/numlie.hpp"
#include "taut/reduced.hpp"
#include "taut/report.hpp"
#include "taut/rootsys.hpp"

namespace taut::suite
{

using nlohmann::json;

namespace
{

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

reduced::Vec3 gaussian3(std::mt19937_64 &rng)
{
  std::normal_distribution<double> n;
  double x = n(rng), y = n(rng), z = n(rng);
  return reduced::Vec3(x, y, z);
}

json criterion(int id, char const *name, bool ok, json details)
{
  return {{"id", id}, {"name", name}, {"ok", ok}, {"details", std::move(details)}};
}

json poincare_check()
{
  using rootsys::RootSystemSpec;
  struct Case
  {
    char const *label;
    RootSystemSpec spec;
    std::vector<std::int64_t> expected;
  };
  std::vector<Case> cases = {
      {"A2 m=1", RootSystemSpec::catalog("A", 2), {1, 2, 2, 1}},
      {"A2 m=2", RootSystemSpec::catalog("A", 2, {2, {}, {}}), {1, 0, 2, 0, 2, 0, 1}},
      {"BC1 (6,1)", RootSystemSpec::catalog("BC", 1, {6, {}, 1}), {1, 0, 0, 0, 0, 0, 0, 1}},
      {"A1xA1xA1 (1,6,7)",
       RootSystemSpec::product({RootSystemSpec::catalog("A", 1),
                                RootSystemSpec::catalog("A", 1, {6, {}, {}}),
                                RootSystemSpec::catalog("A", 1, {7, {}, {}})}),
       (bruhat::Polynomial{{1, 1}} * bruhat::Polynomial{{1, 0, 0, 0, 0, 0, 1}} *
        bruhat::Polynomial{{1, 0, 0, 0, 0, 0, 0, 1}})
           .coefficients},
  };
  json rows = json::array();
  bool ok = true;
  for (auto const &c : cases)
  {
    auto rs = rootsys::build_root_system(c.spec);
    auto p = bruhat::poincare_polynomial(rs, {});
    bool match = p.coefficients == c.expected;
    ok = ok && match;
    rows.push_back({{"system", c.label}, {"poincare", p.coefficients}, {"ok", match}});
  }
  return criterion(1, "bruhat_poincare", ok, rows);
}

json correspondence_check(std::uint64_t seed)
{
  int systems = 0, thetas = 0, runs = 0, failures = 0, retries = 0;
  std::uint64_t case_no = 0;
  for (auto const &spec : rootsys::catalog_specs(3))
  {
    auto rs = rootsys::build_root_system(spec);
    rootsys::WeylGroup group(rs);
    ++systems;
    int r = rs.rank();
    for (int mask = 0; mask < (1 << r); ++mask, ++case_no)
    {
      ++thetas;
      bruhat::ThetaSubset theta;
      for (int i = 0; i < r; ++i)
        if (mask >> i & 1)
          theta.indices.push_back(i);
      auto rng = stream(seed, 2, case_no);
      std::uniform_int_distribution<int> val(1, 9);
      QVector values(static_cast<std::size_t>(r));
      for (int i = 0; i < r; ++i)
        values[static_cast<std::size_t>(i)] = (mask >> i & 1) ? Rational(0) : Rational(val(rng));
      auto p = morse::make_point(rs, rs.point_from_simple_values(values));
      for (int k = 0; k < 5; ++k)
      {
        bool done = false;
        for (int attempt = 0; attempt < 50 && !done; ++attempt)
        {
          auto q = morse::make_point(rs, morse::random_positive_point(rs, rng()));
          try
          {
            auto rep = morse::verify_bruhat_correspondence(group, theta, q, p);
            ++runs;
            failures += !rep.ok();
            done = true;
          }
          catch (Error const &e)
          {
            if (e.kind() != ErrorKind::NonGenericSegment)
              throw;
            ++retries;
          }
        }
        if (!done)
          ++failures;
      }
    }
  }
  return criterion(2, "bruhat_morse_correspondence", failures == 0,
                   {{"systems", systems},
                    {"theta_subsets", thetas},
                    {"runs", runs},
                    {"nongeneric_retries", retries},
                    {"failures", failures}});
}

json sum_rule_check()
{
  int failures = 0, checked = 0;
  for (int c = 1; c <= 3; ++c)
    for (int n = 2; n <= 64; ++n)
    {
      auto g = reduced::build_reduced_geometry(c, n);
      ++checked;
      failures += !g.sum_rule_holds();
      if (c == 1)
        break;
    }
  return criterion(3, "reduced_sum_rule", failures == 0, {{"checked", checked}, {"failures", failures}});
}

// Random regular base point and tangent direction, redrawn until the
// collapse events are generic.
struct Draw
{
  reduced::Vec3 p, dir;
  std::vector<reduced::CollapseEvent> events;
};

Draw draw_generic(reduced::ReducedGeometry const &geom, std::mt19937_64 &rng)
{
  for (;;)
  {
    reduced::Vec3 p = gaussian3(rng).normalized();
    reduced::Vec3 d = gaussian3(rng);
    if (!reduced::circles_through(geom, p).empty())
      continue;
    try
    {
      auto ev = reduced::collapse_events(geom, p, d);
      return {p, d, std::move(ev)};
    }
    catch (Error const &e)
    {
      if (e.kind() != ErrorKind::NonGenericPoint && e.kind() != ErrorKind::DegenerateDirection)
        throw;
    }
  }
}

json collapse_check(std::uint64_t seed)
{
  json rows = json::array();
  bool ok = true;
  for (int c = 1; c <= 3; ++c)
  {
    auto geom = reduced::build_reduced_geometry(c, 2);
    auto rng = stream(seed, 4, static_cast<std::uint64_t>(c));
    int expect3 = c == 3 ? 2 : 0, bad = 0;
    for (int k = 0; k < 50; ++k)
    {
      auto d = draw_generic(geom, rng);
      int d2 = 0, d3 = 0;
      for (auto const &e : d.events)
        (e.order == 2 ? d2 : d3)++;
      bad += d2 != 6 || d3 != expect3;
    }
    ok = ok && bad == 0;
    rows.push_back({{"case", c}, {"samples", 50}, {"double", 6}, {"triple", expect3}, {"mismatches", bad}});
  }
  return criterion(4, "collapse_counts", ok, rows);
}

json cycle_check(std::uint64_t seed)
{
  json rows = json::array();
  bool ok = true;
  for (int c = 1; c <= 3; ++c)
  {
    auto geom = reduced::build_reduced_geometry(c, 2);
    auto rng = stream(seed, 5, static_cast<std::uint64_t>(c));
    std::uniform_real_distribution<double> qd(0.55 * std::numbers::pi, 0.98 * std::numbers::pi);
    int bundle_bad = 0, index_bad = 0, done = 0;
    while (done < 100)
    {
      auto d = draw_generic(geom, rng);
      double q = qd(rng);
      reduced::CycleDescriptor cd;
      try
      {
        cd = reduced::assemble_cycle(geom, d.p, d.dir, true, q);
      }
      catch (Error const &e)
      {
        if (e.kind() != ErrorKind::QOnFocalPoint && e.kind() != ErrorKind::CollapseAtBasepoint)
          throw;
        continue;
      }
      ++done;
      if (!cd.tail || !reduced::check_bundle(*cd.tail).ok())
        ++bundle_bad;
      // Morse index of L_q at p: focal points strictly between p and q
      auto s = reduced::focal_schedule(geom, d.p, d.dir, 0, true);
      int index = 0;
      for (auto const &it : s.items)
        if (it.param < q)
          index += it.multiplicity;
      index_bad += index != cd.total_dim;
    }
    ok = ok && bundle_bad == 0 && index_bad == 0;
    rows.push_back({{"case", c}, {"cycles", done}, {"bundle_failures", bundle_bad}, {"index_mismatches", index_bad}});
  }
  return criterion(5, "cycle_condition", ok, rows);
}

json reduction_check(std::uint64_t seed, int threads, double ds_tol, double lemma_tol)
{
  json rows = json::array();
  bool ok = true;
  struct Run
  {
    int c, n, samples;
  };
  for (auto run : {Run{2, 2, 20}, Run{3, 2, 20}, Run{1, 2, 5}})
  {
    auto rep = numlie::build_representation(run.c, run.n);
    auto geom = reduced::build_reduced_geometry(run.c, run.n);
    auto r = numlie::verify_reduction(rep, geom, run.samples, seed, threads);
    auto j = report::reduction_json(r, ds_tol, lemma_tol);
    j.erase("schema_version");
    ok = ok && j["ok"].get<bool>();
    rows.push_back(j);
  }
  return criterion(6, "numerical_reduction", ok, rows);
}

json tautness_check(std::uint64_t seed)
{
  auto geom = reduced::build_reduced_geometry(2, 2);
  auto rng = stream(seed, 7, 0);
  std::normal_distribution<double> n;
  reduced::Vec4 p3(0.3, 0.5, -0.2, 0.7);
  for (;;)
  {
    reduced::Vec4 y(n(rng), n(rng), n(rng), n(rng));
    if (reduced::circles_through(geom, reduced::hopf(y.normalized())).empty())
    {
      p3 = y.normalized();
      break;
    }
  }
  json polys = json::array();
  bool same = true;
  std::optional<bruhat::Polynomial> first;
  int circles = 0;
  for (int k = 0; k < 10;)
  {
    reduced::Vec4 q(n(rng), n(rng), n(rng), n(rng));
    reduced::TautnessReport t;
    try
    {
      t = reduced::orbit_critical_data(geom, q, p3);
    }
    catch (Error const &e)
    {
      if (e.kind() != ErrorKind::QNotGeneric)
        throw;
      continue;
    }
    ++k;
    circles = t.special_circles;
    if (!first)
      first = t.polynomial;
    same = same && t.polynomial == *first;
    polys.push_back(t.polynomial.coefficients);
  }
  json counts = json::array();
  bool counts_ok = circles == 8;
  for (int c = 1; c <= 3; ++c)
  {
    auto g = reduced::build_reduced_geometry(c, 2);
    auto t = reduced::orbit_critical_data(g, reduced::Vec4(0.8, 0.1, -0.3, 0.5),
                                          reduced::Vec4(0.3, 0.5, -0.2, 0.7));
    int expect = c == 3 ? 12 : 8;
    counts_ok = counts_ok && t.special_circles == expect;
    counts.push_back({{"case", c}, {"special_circles", t.special_circles}, {"expected", expect}});
  }
  return criterion(7, "tautness_invariance", same && counts_ok,
                   {{"polynomials", polys}, {"identical", same}, {"special_circles", counts}});
}

} // namespace

SuiteResult run_suite(std::uint64_t seed, int threads, double ds_tol, double lemma_tol)
{
  json crit = json::array();
  crit.push_back(poincare_check());
  crit.push_back(correspondence_check(seed));
  crit.push_back(sum_rule_check());
  crit.push_back(collapse_check(seed));
  crit.push_back(cycle_check(seed));
  crit.push_back(reduction_check(seed, threads, ds_tol, lemma_tol));
  crit.push_back(tautness_check(seed));
  bool ok = true;
  for (auto const &c : crit)
    ok = ok && c["ok"].get<bool>();
  SuiteResult r;
  r.report = {{"schema_version", report::schema_version}, {"seed", seed}, {"criteria", crit}, {"ok", ok}};
  r.ok = ok;
  return r;
}

} // namespace taut::suite
