#ifndef TAUT_REDUCED_HPP
#define TAUT_REDUCED_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "taut/bruhat.hpp"

namespace taut::reduced
{

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;   // (Re z1, Im z1, Re z2, Im z2)

/// Absolute tolerance on unit-sphere coordinates and on arc parameters.
inline constexpr double tolerance = 1e-9;

struct SingularCircle
{
  Vec3 normal;
  int multiplicity = 1;
  std::string name;
};

/// The orbit space S^2 (radius 1/2) of one of the three exceptional
/// representations, with its singular great circles. Points are handled in
/// unit-sphere coordinates, so arc length s on S^3 becomes angle 2s here.
struct ReducedGeometry
{
  int case_id = 0;
  int n = 0;
  int ambient_dim = 0;
  std::vector<SingularCircle> circles;
  double sphere_radius = 0.5;

  int principal_orbit_dimension() const
  { return ambient_dim - 3; }

  int circle_multiplicity_sum() const;

  /// 2 * sum of circle multiplicities + 1 == ambient_dim - 3.
  bool sum_rule_holds() const;

  /// The group D generated by the reflections in the circle planes.
  std::vector<Eigen::Matrix3d> reflection_group() const;
};

/// Throws BadCase or BadN. n is ignored for case 1.
ReducedGeometry build_reduced_geometry(int case_id, int n);

/// Indices of circles containing the unit vector x.
std::vector<int> circles_through(ReducedGeometry const &geom, Vec3 const &x);

enum class FocalKind { standard, special, mixed };

std::string to_string(FocalKind kind);

struct FocalItem
{
  double param = 0;    // arc parameter s in (0, pi)
  FocalKind kind = FocalKind::standard;
  int multiplicity = 0;
  std::vector<int> labels;
};

struct FocalSchedule
{
  double t = 0;
  std::vector<FocalItem> items;   // decreasing param

  int total_multiplicity() const;
};

/// Unit tangent at p obtained by rotating dir by angle t.
Vec3 direction_at(Vec3 const &p, Vec3 const &dir, double t);

/// Focal data along the normal geodesic whose projection leaves p in
/// direction direction_at(p, dir, t). p and dir are normalized (dir is made
/// orthogonal to p). Throws PointOnCircleButRegularFlag,
/// PointOffCirclesButSingularFlag, DegenerateDirection.
FocalSchedule focal_schedule(ReducedGeometry const &geom, Vec3 const &p, Vec3 const &dir,
                             double t, bool regular);

/// Same, with the projected direction given directly.
FocalSchedule schedule_along(ReducedGeometry const &geom, Vec3 const &p, Vec3 const &u,
                             bool regular);

struct CollapseEvent
{
  double t_star = 0;         // in [0, 2 pi)
  int order = 0;             // number of letters meeting
  int first = 0;             // position of the block in the fiber word
  std::vector<int> labels;   // circles meeting, in word order just before t_star
  Vec3 point;                // the intersection point on S^2
  double s_star = 0;         // focal parameter of the collapsed point
};

/// Parameters t at which the near half (s < pi/2) of the projected geodesic
/// passes through a point where two or more circles not containing p meet.
/// Sorted by t_star. Throws DegenerateDirection, NonGenericPoint.
std::vector<CollapseEvent> collapse_events(ReducedGeometry const &geom, Vec3 const &p,
                                           Vec3 const &dir);

struct Letter
{
  std::vector<int> labels;
  int multiplicity = 0;
  bool mixed = false;

  bool operator==(Letter const &) const = default;
};

struct Arc
{
  double start = 0;
  double end = 0;   // may exceed 2 pi for the wrapping arc
  std::vector<Letter> word;
};

struct Gluing
{
  int order = 0;                 // 2: swap, 3: reversal
  int first = 0;                 // first affected position
  bool correcting = false;       // flag is w° (otherwise identity)
  Eigen::Matrix3d flag = Eigen::Matrix3d::Identity();
  std::vector<int> label_perm;   // action of the flag on circle labels
};

/// Fiber bundle over the special circle: arcs[i] runs from events[i] to
/// events[i+1]; gluings[i] sits at events[i] and maps the word of arcs[i-1]
/// onto the word of arcs[i].
struct S1Bundle
{
  std::vector<CollapseEvent> events;
  std::vector<Arc> arcs;
  std::vector<Gluing> gluings;

  int fiber_dimension() const;
};

struct CycleDescriptor
{
  double q_param = 0;
  std::vector<FocalItem> prefix;
  std::optional<S1Bundle> tail;
  int total_dim = 0;
};

/// Fiber word of the bundle at parameter t: standard letters with s < pi/2
/// in decreasing s, preceded by a mixed letter for singular p.
std::vector<Letter> fiber_word(FocalSchedule const &schedule, bool regular);

/// Throws BadQParam, QOnFocalPoint, CollapseAtBasepoint, plus schedule
/// errors.
CycleDescriptor assemble_cycle(ReducedGeometry const &geom, Vec3 const &p, Vec3 const &dir,
                               bool regular, double q_param);

struct BundleCheck
{
  bool words_glue = false;
  bool monodromy = false;
  bool cycle_condition = false;

  bool ok() const
  { return words_glue && monodromy && cycle_condition; }
};

BundleCheck check_bundle(S1Bundle const &bundle);

/// Hopf map S^3 -> S^2 (unit sphere coordinates).
Vec3 hopf(Vec4 const &y);

/// A point of the Hopf fiber over x.
Vec4 hopf_lift(Vec3 const &x);

struct CriticalPoint
{
  Vec4 point;
  int circle = 0;
  double distance = 0;
  int index = 0;
};

struct TautnessReport
{
  int special_circles = 0;
  std::vector<CriticalPoint> critical;
  bruhat::Polynomial polynomial;
};

/// Critical points of the distance from q3 on the union of special circles
/// through the orbit of p3, with Morse indices from the focal schedules.
/// Throws QNotGeneric.
TautnessReport orbit_critical_data(ReducedGeometry const &geom, Vec4 const &q3, Vec4 const &p3);

/// Fixed generic base point and direction used when none is supplied.
Vec3 default_point();
Vec3 default_direction();

} // namespace taut::reduced

#endif // TAUT_REDUCED_HPP
