#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "taut/error.hpp"
#include "taut/reduced.hpp"

using namespace taut;
using namespace taut::reduced;

namespace
{

constexpr double pi = std::numbers::pi;

template <class F>
ErrorKind kind_of(F &&f)
{
  try
  {
    f();
  }
  catch (Error const &e)
  {
    return e.kind();
  }
  FAIL("no taut::Error thrown");
  return ErrorKind::InvalidSpec;
}

std::vector<int> mults(ReducedGeometry const &g)
{
  std::vector<int> m;
  for (auto const &c : g.circles)
    m.push_back(c.multiplicity);
  return m;
}

int count_kind(FocalSchedule const &s, FocalKind k)
{
  int n = 0;
  for (auto const &i : s.items)
    n += i.kind == k;
  return n;
}

} // namespace

TEST_SUITE("reduced")
{
  TEST_CASE("geometry table")
  {
    auto g1 = build_reduced_geometry(1, 0);
    CHECK(mults(g1) == std::vector<int>{1, 6, 7});
    CHECK(g1.ambient_dim == 32);
    CHECK(2 * g1.circle_multiplicity_sum() + 1 == 29);
    auto g2 = build_reduced_geometry(2, 2);
    CHECK(mults(g2) == std::vector<int>{1, 2, 3});
    CHECK(g2.ambient_dim == 16);
    auto g3 = build_reduced_geometry(3, 2);
    CHECK(mults(g3) == std::vector<int>{3, 1, 1, 1});
    CHECK(2 * g3.circle_multiplicity_sum() + 1 == 13);
    CHECK(kind_of([] { build_reduced_geometry(4, 2); }) == ErrorKind::BadCase);
    CHECK(kind_of([] { build_reduced_geometry(2, 1); }) == ErrorKind::BadN);
  }

  TEST_CASE("sum rule for n up to 64")
  {
    for (int c = 2; c <= 3; ++c)
      for (int n = 2; n <= 64; ++n)
      {
        auto g = build_reduced_geometry(c, n);
        CHECK(2 * g.circle_multiplicity_sum() + 1 == 8 * n - 3);
        CHECK(g.sum_rule_holds());
      }
  }

  TEST_CASE("reflection group orders")
  {
    CHECK(build_reduced_geometry(1, 0).reflection_group().size() == 8);
    CHECK(build_reduced_geometry(2, 3).reflection_group().size() == 8);
    CHECK(build_reduced_geometry(3, 2).reflection_group().size() == 12);
  }

  TEST_CASE("regular schedules")
  {
    auto g1 = build_reduced_geometry(1, 0);
    auto s1 = focal_schedule(g1, default_point(), default_direction(), 0.3, true);
    CHECK(count_kind(s1, FocalKind::standard) == 6);
    CHECK(count_kind(s1, FocalKind::special) == 1);
    CHECK(s1.total_multiplicity() == 29);
    for (std::size_t k = 1; k < s1.items.size(); ++k)
      CHECK(s1.items[k - 1].param > s1.items[k].param);

    auto g3 = build_reduced_geometry(3, 2);
    auto s3 = focal_schedule(g3, default_point(), default_direction(), 1.1, true);
    CHECK(count_kind(s3, FocalKind::standard) == 8);
    CHECK(s3.total_multiplicity() == 13);
  }

  TEST_CASE("focal parameters lie on the circles")
  {
    auto g = build_reduced_geometry(3, 2);
    Vec3 p = default_point();
    Vec3 u = direction_at(p, default_direction(), 0.7);
    for (auto const &item : schedule_along(g, p, u, true).items)
    {
      if (item.kind != FocalKind::standard)
        continue;
      Vec3 y = std::cos(2 * item.param) * p + std::sin(2 * item.param) * u;
      for (int c : item.labels)
        CHECK(std::abs(g.circles[static_cast<std::size_t>(c)].normal.dot(y)) < 1e-12);
    }
  }

  TEST_CASE("singular schedule")
  {
    auto g = build_reduced_geometry(2, 2);
    Vec3 p = Vec3(0.6, 0.0, 0.8);   // on y = 0, multiplicity 2
    auto s = focal_schedule(g, p, Vec3(0.3, 0.5, 0.1), 0.2, false);
    CHECK(s.total_multiplicity() == 11);
    REQUIRE(count_kind(s, FocalKind::mixed) == 1);
    for (auto const &i : s.items)
    {
      if (i.kind == FocalKind::mixed)
      {
        CHECK(i.param == doctest::Approx(pi / 2));
        CHECK(i.multiplicity >= 2);
      }
      else
        CHECK(std::abs(i.param - pi / 2) > 1e-6);
    }
  }

  TEST_CASE("schedule errors")
  {
    auto g = build_reduced_geometry(2, 2);
    Vec3 on = Vec3(0.6, 0.0, 0.8);
    CHECK(kind_of([&] { focal_schedule(g, on, Vec3(0, 1, 0), 0, true); }) ==
          ErrorKind::PointOnCircleButRegularFlag);
    CHECK(kind_of([&] { focal_schedule(g, default_point(), default_direction(), 0, false); }) ==
          ErrorKind::PointOffCirclesButSingularFlag);
    CHECK(kind_of([&] { focal_schedule(g, default_point(), default_point(), 0, true); }) ==
          ErrorKind::DegenerateDirection);
  }

  TEST_CASE("collapse counts")
  {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> n;
    for (int c = 1; c <= 3; ++c)
    {
      auto g = build_reduced_geometry(c, 3);
      for (int k = 0; k < 20; ++k)
      {
        Vec3 p(n(rng), n(rng), n(rng)), d(n(rng), n(rng), n(rng));
        auto ev = collapse_events(g, p, d);
        int d2 = 0, d3 = 0;
        for (auto const &e : ev)
          (e.order == 2 ? d2 : d3)++;
        CHECK(d2 == 6);
        CHECK(d3 == (c == 3 ? 2 : 0));
        for (std::size_t i = 1; i < ev.size(); ++i)
          CHECK(ev[i - 1].t_star < ev[i].t_star);
        for (auto const &e : ev)
          CHECK(e.s_star < pi / 2);
      }
    }
  }

  TEST_CASE("cycles")
  {
    auto g2 = build_reduced_geometry(2, 2);
    Vec3 p = default_point(), d = default_direction();
    auto s = focal_schedule(g2, p, d, 0, true);
    double first = s.items.back().param;
    auto low = assemble_cycle(g2, p, d, true, first / 2);
    CHECK(low.prefix.empty());
    CHECK_FALSE(low.tail.has_value());
    CHECK(low.total_dim == 0);

    // q past every focal point: standard letters beyond pi/2, the special
    // point, and the near-half fiber
    auto top = assemble_cycle(g2, p, d, true, s.items.front().param + 1e-3);
    REQUIRE(top.tail.has_value());
    CHECK(top.tail->events.size() == 6);
    CHECK(top.tail->arcs.size() == 6);
    CHECK(top.tail->fiber_dimension() == 6);
    CHECK(top.prefix.size() == 3);
    CHECK(top.total_dim == 13);
    CHECK(check_bundle(*top.tail).ok());

    // special point furthest: prefix empty
    double next = pi;
    for (auto const &it : s.items)
      if (it.param > pi / 2 + 1e-9)
        next = std::min(next, it.param);
    auto mid = assemble_cycle(g2, p, d, true, (pi / 2 + next) / 2);
    CHECK(mid.prefix.empty());
    CHECK(mid.total_dim == 7);

    auto g3 = build_reduced_geometry(3, 2);
    auto c3 = assemble_cycle(g3, p, d, true, 3.0);
    REQUIRE(c3.tail.has_value());
    CHECK(c3.tail->events.size() == 8);
    Eigen::Matrix3d prod = Eigen::Matrix3d::Identity();
    int correcting = 0;
    for (auto const &gl : c3.tail->gluings)
    {
      prod = prod * gl.flag;
      correcting += gl.correcting;
    }
    CHECK(correcting == 2);
    CHECK((prod - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK(check_bundle(*c3.tail).ok());

    CHECK(kind_of([&] { assemble_cycle(g2, p, d, true, 4.0); }) == ErrorKind::BadQParam);
    CHECK(kind_of([&] { assemble_cycle(g2, p, d, true, first); }) == ErrorKind::QOnFocalPoint);
  }

  TEST_CASE("singular cycle carries the mixed letter")
  {
    auto g = build_reduced_geometry(2, 2);
    Vec3 p = Vec3(0.6, 0.0, 0.8);
    auto c = assemble_cycle(g, p, Vec3(0.3, 0.5, 0.1), false, 3.0);
    REQUIRE(c.tail.has_value());
    for (auto const &arc : c.tail->arcs)
    {
      REQUIRE_FALSE(arc.word.empty());
      CHECK(arc.word.front().mixed);
    }
    CHECK(check_bundle(*c.tail).ok());
  }

  TEST_CASE("hopf map")
  {
    Vec4 y = Vec4(0.3, -0.2, 0.5, 0.7).normalized();
    CHECK(hopf(y).norm() == doctest::Approx(1.0));
    Vec3 x = Vec3(0.2, -0.4, 0.3).normalized();
    CHECK((hopf(hopf_lift(x)) - x).norm() < 1e-12);
  }

  TEST_CASE("tautness")
  {
    Vec4 p3(0.3, 0.5, -0.2, 0.7), q3(0.8, 0.1, -0.3, 0.5);
    CHECK(orbit_critical_data(build_reduced_geometry(1, 0), q3, p3).special_circles == 8);
    CHECK(orbit_critical_data(build_reduced_geometry(2, 2), q3, p3).special_circles == 8);
    auto t3 = orbit_critical_data(build_reduced_geometry(3, 2), q3, p3);
    CHECK(t3.special_circles == 12);
    CHECK(t3.critical.size() == 24);
    // Morse equality: one critical point per Z2 Betti number, so P(1) = #crit
    CHECK(t3.polynomial.at_one() == 24);
    CHECK(kind_of([&] { orbit_critical_data(build_reduced_geometry(2, 2), p3, p3); }) ==
          ErrorKind::QNotGeneric);
  }
}
