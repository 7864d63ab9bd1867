#include "taut/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "taut/error.hpp"

namespace taut::reduced
{

namespace
{

constexpr double pi = std::numbers::pi;

struct Hit
{
  double s;
  int circle;
};

Vec3 unit_or_throw(Vec3 const &v, ErrorKind kind, char const *what)
{
  double len = v.norm();
  if (len < tolerance)
    throw Error(kind, std::string(what) + " is zero");
  return v / len;
}

// Orthonormalizes dir against p.
Vec3 tangent_or_throw(Vec3 const &p, Vec3 const &dir)
{
  Vec3 d = dir - dir.dot(p) * p;
  if (d.norm() < tolerance)
    throw Error(ErrorKind::DegenerateDirection, "direction is parallel to the base point");
  return d.normalized();
}

// Hits of the projected great circle cos(phi) p + sin(phi) u, phi = 2s, with
// the circles not through p. Each such circle is met once for s < pi/2 and
// once for s > pi/2.
std::vector<Hit> circle_hits(ReducedGeometry const &geom, Vec3 const &p, Vec3 const &u,
                             std::vector<int> const &through, bool strict = true)
{
  std::vector<Hit> hits;
  for (int c = 0; c < static_cast<int>(geom.circles.size()); ++c) {
    Vec3 const &nrm = geom.circles[c].normal;
    double a = nrm.dot(p), b = nrm.dot(u);
    bool on = std::find(through.begin(), through.end(), c) != through.end();
    if (on) {
      if (strict && std::abs(b) < tolerance)
        throw Error(ErrorKind::DegenerateDirection,
                    "projected geodesic runs inside singular circle " + geom.circles[c].name);
      continue;
    }
    double phi = std::atan2(-a, b);
    if (phi < 0)
      phi += pi;
    if (phi >= pi)
      phi -= pi;
    hits.push_back({phi / 2, c});
    hits.push_back({phi / 2 + pi / 2, c});
  }
  return hits;
}

std::vector<int> sorted_union(std::vector<int> a, std::vector<int> const &b)
{
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

double wrap(double t)
{
  t = std::fmod(t, 2 * pi);
  return t < 0 ? t + 2 * pi : t;
}

int circle_mult_sum(ReducedGeometry const &geom, std::vector<int> const &labels)
{
  int m = 0;
  for (int c : labels)
    m += geom.circles[c].multiplicity;
  return m;
}

} // namespace

int ReducedGeometry::circle_multiplicity_sum() const
{
  int m = 0;
  for (auto const &c : circles)
    m += c.multiplicity;
  return m;
}

bool ReducedGeometry::sum_rule_holds() const
{
  return 2 * circle_multiplicity_sum() + 1 == ambient_dim - 3;
}

std::vector<Eigen::Matrix3d> ReducedGeometry::reflection_group() const
{
  std::vector<Eigen::Matrix3d> gens;
  for (auto const &c : circles)
    gens.push_back(Eigen::Matrix3d::Identity() - 2 * c.normal * c.normal.transpose());
  std::vector<Eigen::Matrix3d> group{Eigen::Matrix3d::Identity()};
  for (std::size_t head = 0; head < group.size(); ++head)
    for (auto const &g : gens) {
      Eigen::Matrix3d m = group[head] * g;
      bool known = std::any_of(group.begin(), group.end(), [&](auto const &x) {
        return (x - m).cwiseAbs().maxCoeff() < 1e-9;
      });
      if (!known)
        group.push_back(m);
    }
  return group;
}

ReducedGeometry build_reduced_geometry(int case_id, int n)
{
  if (case_id < 1 || case_id > 3)
    throw Error(ErrorKind::BadCase, "case must be 1, 2 or 3");
  ReducedGeometry g;
  g.case_id = case_id;
  if (case_id == 1) {
    g.n = 0;
    g.ambient_dim = 32;
    g.circles = {{Vec3::UnitX(), 1, "x=0"}, {Vec3::UnitY(), 6, "y=0"}, {Vec3::UnitZ(), 7, "z=0"}};
    return g;
  }
  if (n < 2)
    throw Error(ErrorKind::BadN, "n must be at least 2");
  g.n = n;
  g.ambient_dim = 8 * n;
  if (case_id == 2) {
    g.circles = {{Vec3::UnitX(), 1, "x=0"},
                 {Vec3::UnitY(), 2, "y=0"},
                 {Vec3::UnitZ(), 4 * n - 5, "z=0"}};
  } else {
    g.circles = {{Vec3::UnitZ(), 4 * n - 5, "equator"}};
    for (int k = 0; k < 3; ++k) {
      double a = k * pi / 3;
      g.circles.push_back(
          {Vec3(-std::sin(a), std::cos(a), 0), 1, "meridian" + std::to_string(60 * k)});
    }
  }
  return g;
}

std::vector<int> circles_through(ReducedGeometry const &geom, Vec3 const &x)
{
  std::vector<int> out;
  for (int c = 0; c < static_cast<int>(geom.circles.size()); ++c)
    if (std::abs(geom.circles[c].normal.dot(x)) < tolerance)
      out.push_back(c);
  return out;
}

std::string to_string(FocalKind kind)
{
  switch (kind) {
  case FocalKind::standard: return "standard";
  case FocalKind::special: return "special";
  case FocalKind::mixed: return "mixed";
  }
  return "?";
}

int FocalSchedule::total_multiplicity() const
{
  int m = 0;
  for (auto const &i : items)
    m += i.multiplicity;
  return m;
}

Vec3 direction_at(Vec3 const &p, Vec3 const &dir, double t)
{
  Vec3 d = tangent_or_throw(p, dir);
  return std::cos(t) * d + std::sin(t) * p.cross(d);
}

FocalSchedule schedule_along(ReducedGeometry const &geom, Vec3 const &p_in, Vec3 const &u_in,
                             bool regular)
{
  Vec3 p = unit_or_throw(p_in, ErrorKind::ZeroPoint, "base point");
  Vec3 u = tangent_or_throw(p, u_in);
  auto through = circles_through(geom, p);
  if (regular && !through.empty())
    throw Error(ErrorKind::PointOnCircleButRegularFlag,
                "base point lies on circle " + geom.circles[through.front()].name);
  if (!regular && through.empty())
    throw Error(ErrorKind::PointOffCirclesButSingularFlag, "base point is on no singular circle");

  auto hits = circle_hits(geom, p, u, through);
  std::sort(hits.begin(), hits.end(), [](Hit const &a, Hit const &b) {
    if (a.s != b.s)
      return a.s > b.s;
    return a.circle < b.circle;
  });

  FocalSchedule sched;
  for (auto const &h : hits) {
    if (!sched.items.empty() && sched.items.back().param - h.s < tolerance) {
      auto &item = sched.items.back();
      item.labels = sorted_union(item.labels, {h.circle});
      item.multiplicity += geom.circles[h.circle].multiplicity;
      continue;
    }
    sched.items.push_back(
        {h.s, FocalKind::standard, geom.circles[h.circle].multiplicity, {h.circle}});
  }

  FocalItem middle;
  middle.param = pi / 2;
  if (regular) {
    middle.kind = FocalKind::special;
    middle.multiplicity = 1;
  } else {
    // Whatever the standard items leave of the orbit dimension.
    int orbit_dim = geom.principal_orbit_dimension() - circle_mult_sum(geom, through);
    int standard = 0;
    for (auto const &i : sched.items)
      standard += i.multiplicity;
    middle.kind = FocalKind::mixed;
    middle.multiplicity = orbit_dim - standard;
    middle.labels = through;
  }
  auto pos = std::find_if(sched.items.begin(), sched.items.end(),
                          [](FocalItem const &i) { return i.param < pi / 2; });
  sched.items.insert(pos, middle);
  return sched;
}

FocalSchedule focal_schedule(ReducedGeometry const &geom, Vec3 const &p, Vec3 const &dir,
                             double t, bool regular)
{
  Vec3 pu = unit_or_throw(p, ErrorKind::ZeroPoint, "base point");
  auto sched = schedule_along(geom, pu, direction_at(pu, dir, t), regular);
  sched.t = t;
  return sched;
}

std::vector<CollapseEvent> collapse_events(ReducedGeometry const &geom, Vec3 const &p_in,
                                           Vec3 const &dir_in)
{
  Vec3 p = unit_or_throw(p_in, ErrorKind::ZeroPoint, "base point");
  Vec3 d = tangent_or_throw(p, dir_in);
  Vec3 e = p.cross(d);
  auto through = circles_through(geom, p);
  int const count = static_cast<int>(geom.circles.size());

  std::vector<Vec3> points;
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) {
      Vec3 x = geom.circles[i].normal.cross(geom.circles[j].normal).normalized();
      for (Vec3 const &y : {x, Vec3(-x)}) {
        bool known = std::any_of(points.begin(), points.end(),
                                 [&](Vec3 const &z) { return (z - y).norm() < tolerance; });
        if (!known)
          points.push_back(y);
      }
    }

  std::vector<CollapseEvent> events;
  for (auto const &x : points) {
    std::vector<int> meeting;
    for (int c : circles_through(geom, x))
      if (std::find(through.begin(), through.end(), c) == through.end())
        meeting.push_back(c);
    if (meeting.size() < 2)
      continue;
    Vec3 xp = x - x.dot(p) * p;
    CollapseEvent ev;
    ev.t_star = wrap(std::atan2(xp.dot(e), xp.dot(d)));
    ev.order = static_cast<int>(meeting.size());
    ev.point = x;
    ev.s_star = std::atan2(xp.norm(), x.dot(p)) / 2;

    // Block position: letters of other circles further out than s_star.
    Vec3 u = std::cos(ev.t_star) * d + std::sin(ev.t_star) * e;
    int first = 0;
    for (auto const &h : circle_hits(geom, p, u, through, false))
      if (h.s < pi / 2 && h.s > ev.s_star &&
          std::find(meeting.begin(), meeting.end(), h.circle) == meeting.end())
        ++first;
    ev.first = first;

    // Order of the meeting letters just before the event.
    double const delta = 1e-6;
    Vec3 ub = std::cos(ev.t_star - delta) * d + std::sin(ev.t_star - delta) * e;
    std::vector<Hit> before;
    for (auto const &h : circle_hits(geom, p, ub, through, false))
      if (h.s < pi / 2 && std::find(meeting.begin(), meeting.end(), h.circle) != meeting.end())
        before.push_back(h);
    std::sort(before.begin(), before.end(), [](Hit const &a, Hit const &b) { return a.s > b.s; });
    for (auto const &h : before)
      ev.labels.push_back(h.circle);
    events.push_back(std::move(ev));
  }

  std::sort(events.begin(), events.end(),
            [](auto const &a, auto const &b) { return a.t_star < b.t_star; });
  for (std::size_t i = 0; i < events.size(); ++i) {
    double gap = i + 1 < events.size() ? events[i + 1].t_star - events[i].t_star
                                       : events.front().t_star + 2 * pi - events[i].t_star;
    if (events.size() > 1 && gap < tolerance)
      throw Error(ErrorKind::NonGenericPoint, "two collapses happen at the same parameter");
  }
  return events;
}

int S1Bundle::fiber_dimension() const
{
  int m = 0;
  if (!arcs.empty())
    for (auto const &l : arcs.front().word)
      m += l.multiplicity;
  return m;
}

std::vector<Letter> fiber_word(FocalSchedule const &schedule, bool regular)
{
  std::vector<Letter> word;
  for (auto const &item : schedule.items) {
    if (item.kind == FocalKind::mixed && !regular)
      word.insert(word.begin(), Letter{item.labels, item.multiplicity - 1, true});
    if (item.kind == FocalKind::standard && item.param < pi / 2)
      word.push_back({item.labels, item.multiplicity, false});
  }
  return word;
}

namespace
{

std::vector<int> label_permutation(ReducedGeometry const &geom, Eigen::Matrix3d const &m)
{
  std::vector<int> perm;
  for (auto const &c : geom.circles) {
    Vec3 img = m * c.normal;
    int found = -1;
    for (int k = 0; k < static_cast<int>(geom.circles.size()); ++k)
      if ((geom.circles[k].normal - img).norm() < 1e-9 ||
          (geom.circles[k].normal + img).norm() < 1e-9)
        found = k;
    perm.push_back(found);
  }
  return perm;
}

// The word is constant along an arc. For singular p the direction tangent
// to p's own circle can sit at the midpoint, so fall back to other points.
FocalSchedule arc_schedule(ReducedGeometry const &geom, Vec3 const &p, Vec3 const &dir,
                           double start, double end, bool regular)
{
  for (double f : {0.5, 0.381966, 0.618034, 0.25, 0.75}) {
    try {
      return focal_schedule(geom, p, dir, start + f * (end - start), regular);
    } catch (Error const &e) {
      if (e.kind() != ErrorKind::DegenerateDirection)
        throw;
    }
  }
  return focal_schedule(geom, p, dir, start + 0.1 * (end - start), regular);
}

S1Bundle build_bundle(ReducedGeometry const &geom, Vec3 const &p, Vec3 const &dir, bool regular)
{
  S1Bundle b;
  b.events = collapse_events(geom, p, dir);
  for (auto const &ev : b.events)
    if (ev.t_star < tolerance || 2 * pi - ev.t_star < tolerance)
      throw Error(ErrorKind::CollapseAtBasepoint, "a collapse happens at the base parameter");

  std::size_t const l = b.events.size();
  if (l == 0) {
    b.arcs.push_back({0, 2 * pi, fiber_word(arc_schedule(geom, p, dir, 0, 2 * pi, regular), regular)});
    return b;
  }
  for (std::size_t i = 0; i < l; ++i) {
    double start = b.events[i].t_star;
    double end = i + 1 < l ? b.events[i + 1].t_star : b.events.front().t_star + 2 * pi;
    b.arcs.push_back({start, end, fiber_word(arc_schedule(geom, p, dir, start, end, regular), regular)});
  }
  int shift = regular ? 0 : 1;   // the mixed letter leads singular words
  for (auto const &ev : b.events) {
    Gluing g;
    g.order = ev.order;
    g.first = ev.first + shift;
    g.correcting = ev.order == 3;
    if (g.correcting) {
      Vec3 const &mid = geom.circles[ev.labels[1]].normal;
      g.flag = Eigen::Matrix3d::Identity() - 2 * mid * mid.transpose();
    }
    g.label_perm = label_permutation(geom, g.flag);
    b.gluings.push_back(std::move(g));
  }
  return b;
}

std::vector<Letter> apply_gluing(Gluing const &g, std::vector<Letter> word)
{
  auto first = static_cast<std::size_t>(g.first);
  if (first + static_cast<std::size_t>(g.order) > word.size())
    return {};
  std::reverse(word.begin() + static_cast<std::ptrdiff_t>(first),
               word.begin() + static_cast<std::ptrdiff_t>(first) + g.order);
  return word;
}

} // namespace

CycleDescriptor assemble_cycle(ReducedGeometry const &geom, Vec3 const &p, Vec3 const &dir,
                               bool regular, double q_param)
{
  if (!(q_param > 0 && q_param < pi))
    throw Error(ErrorKind::BadQParam, "q parameter must lie in (0, pi)");
  auto base = focal_schedule(geom, p, dir, 0, regular);
  for (auto const &item : base.items)
    if (std::abs(item.param - q_param) < tolerance)
      throw Error(ErrorKind::QOnFocalPoint, "q sits on a focal point; perturb q");

  CycleDescriptor cd;
  cd.q_param = q_param;
  double const low = q_param < pi / 2 ? 0.0 : pi / 2;
  for (auto const &item : base.items)
    if (item.param < q_param && item.param > low + tolerance) {
      cd.prefix.push_back(item);
      cd.total_dim += item.multiplicity;
    }
  if (q_param > pi / 2) {
    cd.tail = build_bundle(geom, p, dir, regular);
    cd.total_dim += 1 + cd.tail->fiber_dimension();
  }
  return cd;
}

BundleCheck check_bundle(S1Bundle const &bundle)
{
  BundleCheck check{true, true, true};
  std::size_t const l = bundle.arcs.size();
  if (bundle.gluings.empty())
    return check;

  for (std::size_t i = 0; i < l; ++i) {
    auto const &g = bundle.gluings[i];
    auto const &before = bundle.arcs[(i + l - 1) % l].word;
    auto const &after = bundle.arcs[i].word;
    auto glued = apply_gluing(g, before);
    if (glued.empty() || glued != after) {
      check.words_glue = false;
      continue;
    }
    // The flag must carry the block onto its reversal, label by label.
    for (int k = 0; k < g.order; ++k) {
      auto const &src = before[static_cast<std::size_t>(g.first + k)].labels;
      auto const &dst = before[static_cast<std::size_t>(g.first + g.order - 1 - k)].labels;
      if (g.correcting) {
        std::vector<int> moved;
        for (int c : src)
          moved.push_back(g.label_perm[static_cast<std::size_t>(c)]);
        std::sort(moved.begin(), moved.end());
        if (moved != dst)
          check.words_glue = false;
      }
    }
  }

  auto word = bundle.arcs.front().word;
  for (std::size_t i = 1; i <= l; ++i)
    word = apply_gluing(bundle.gluings[i % l], word);
  check.monodromy = word == bundle.arcs.front().word;

  Eigen::Matrix3d product = Eigen::Matrix3d::Identity();
  std::vector<int> perm(bundle.gluings.front().label_perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k)
    perm[k] = static_cast<int>(k);
  for (auto const &g : bundle.gluings) {
    product = product * g.flag;
    std::vector<int> next(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k)
      next[k] = perm[static_cast<std::size_t>(g.label_perm[k])];
    perm = next;
  }
  bool identity_perm = true;
  for (std::size_t k = 0; k < perm.size(); ++k)
    identity_perm = identity_perm && perm[k] == static_cast<int>(k);
  check.cycle_condition =
      identity_perm && (product - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-9;
  return check;
}

Vec3 hopf(Vec4 const &y)
{
  std::complex<double> z1(y[0], y[1]), z2(y[2], y[3]);
  auto w = z1 * std::conj(z2);
  return {2 * w.real(), 2 * w.imag(), std::norm(z1) - std::norm(z2)};
}

Vec4 hopf_lift(Vec3 const &x_in)
{
  Vec3 x = x_in.normalized();
  if (x[2] <= -1 + 1e-12)
    return {0, 0, 1, 0};
  double a = std::sqrt((1 + x[2]) / 2);
  return {a, 0, x[0] / (2 * a), -x[1] / (2 * a)};
}

TautnessReport orbit_critical_data(ReducedGeometry const &geom, Vec4 const &q_in,
                                   Vec4 const &p_in)
{
  if (q_in.norm() < tolerance || p_in.norm() < tolerance)
    throw Error(ErrorKind::ZeroPoint, "points on S^3 must be nonzero");
  Vec4 q = q_in.normalized();
  Vec3 base = hopf(p_in.normalized());
  bool regular = circles_through(geom, base).empty();

  std::vector<Vec3> orbit;
  for (auto const &m : geom.reflection_group()) {
    Vec3 y = m * base;
    bool known = std::any_of(orbit.begin(), orbit.end(),
                             [&](Vec3 const &z) { return (z - y).norm() < 1e-7; });
    if (!known)
      orbit.push_back(y);
  }

  TautnessReport report;
  report.special_circles = static_cast<int>(orbit.size());
  std::vector<int> indices;
  for (int c = 0; c < static_cast<int>(orbit.size()); ++c) {
    Vec4 y0 = hopf_lift(orbit[c]);
    std::complex<double> z1(y0[0], y0[1]), z2(y0[2], y0[3]);
    std::complex<double> q1(q[0], q[1]), q2(q[2], q[3]);
    // <q, e^{ia} y0> = Re(e^{-ia} h).
    std::complex<double> h = q1 * std::conj(z1) + q2 * std::conj(z2);
    if (std::abs(h) < 1e-9)
      throw Error(ErrorKind::QNotGeneric, "q is equidistant from a whole special circle");
    for (double alpha : {std::arg(h), std::arg(h) + pi}) {
      auto rot = std::polar(1.0, alpha);
      auto w1 = rot * z1, w2 = rot * z2;
      Vec4 x(w1.real(), w1.imag(), w2.real(), w2.imag());
      double cosd = q.dot(x);
      if (std::abs(cosd) > 1 - 1e-12)
        throw Error(ErrorKind::QNotGeneric, "q lies on the orbit or its antipode");
      Vec4 nrm = (q - cosd * x).normalized();
      double d = std::acos(cosd);
      auto sched = schedule_along(geom, hopf(x), hopf((x + nrm) / std::sqrt(2.0)), regular);
      int index = 0;
      for (auto const &item : sched.items) {
        if (std::abs(item.param - d) < tolerance)
          throw Error(ErrorKind::QNotGeneric, "q is a focal point of the orbit");
        if (item.param < d)
          index += item.multiplicity;
      }
      report.critical.push_back({x, c, d, index});
      indices.push_back(index);
    }
  }
  report.polynomial = bruhat::Polynomial::monomial_sum(indices);
  return report;
}

Vec3 default_point()
{
  return Vec3(0.61, 0.23, 0.76).normalized();
}

Vec3 default_direction()
{
  Vec3 p = default_point();
  return p.cross(Vec3(0.17, 0.93, 0.33)).normalized();
}

} // namespace taut::reduced
