#ifndef TAUT_NUMLIE_HPP
#define TAUT_NUMLIE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "taut/reduced.hpp"

namespace taut::numlie
{

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Real skew-symmetric generators of the Lie algebra acting on V.
struct MatrixRep
{
  int case_id = 0;
  int n = 0;
  int ambient_dim = 0;
  std::vector<MatrixXd> lie_basis;
};

/// Nine real symmetric 16x16 matrices with g_i g_j + g_j g_i = 2 delta_ij I.
std::vector<MatrixXd> clifford9();

/// Case 1: 37 generators on R^32. Cases 2 and 3: n in [2, 4], acting on
/// R^{8n}. Throws UnsupportedCase otherwise.
MatrixRep build_representation(int case_id, int n);

/// Columns X_i p.
MatrixXd tangent_frame(MatrixRep const &rep, VectorXd const &p);

/// Rank of the Gram matrix of the tangent frame, relative threshold 1e-8.
int orbit_dimension(MatrixRep const &rep, VectorXd const &p);

/// Orthonormal basis of the orthogonal complement of the orbit tangent space.
MatrixXd normal_space(MatrixRep const &rep, VectorXd const &p);

struct ShapeSpectrum
{
  std::vector<double> values;                    // ascending
  std::vector<std::pair<double, int>> clusters;  // (value, multiplicity)
  VectorXd basepoint;
  VectorXd normal;
  double asymmetry = 0;   // |A - A^T| in the orthonormal tangent frame
  MatrixXd operator_on_v; // A as a d x d map supported on the tangent space
};

/// Shape operator of the orbit through unit p in direction of the unit
/// normal xi. Throws NotNormal, RankDeficientTangentFrame.
ShapeSpectrum shape_operator(MatrixRep const &rep, VectorXd const &p, VectorXd const &xi);

/// Focal parameters s = arccot(kappa) from the shape spectrum, merged at
/// 1e-6, sorted by decreasing s.
reduced::FocalSchedule numerical_focal_schedule(MatrixRep const &rep, VectorXd const &p,
                                                VectorXd const &xi);

/// Coordinates identifying V^H with C^2 and its unit sphere with S^3, plus
/// the rotation aligning the numeric Hopf image with the reduced model.
struct HopfChart
{
  MatrixXd frame;                   // d x 4, orthonormal basis of V^H
  Eigen::Matrix4d complex_structure; // generator of T in frame coordinates, J^2 = -I
  Eigen::Matrix4d hopf_basis;       // columns e1, J e1, e3, J e3
  Eigen::Matrix3d rotation;
  MatrixXd generator;               // Lie algebra element restricting to J on V^H

  reduced::Vec4 coordinates(VectorXd const &y) const;
  reduced::Vec3 eta(VectorXd const &y) const;
  VectorXd apply_j(VectorXd const &y) const;   // generator * y
  VectorXd random_point(std::uint64_t a, std::uint64_t b) const;
};

/// Builds V^H and the chart from seeded random points. Throws ChartFailure.
HopfChart hopf_chart(MatrixRep const &rep, std::uint64_t seed);

/// Orthonormal basis of nu_p cap V^H.
MatrixXd sigma_space(MatrixRep const &rep, HopfChart const &chart, VectorXd const &p);

struct LemmaChecks
{
  double weingarten_max = 0;     // |A_n(Jp) - kappa Jp|
  int sigma_dim_min = 0;
  int sigma_dim_max = 0;
  double crit_gradient_max = 0;  // tangential gradient at critical points in V^H
  double off_gradient_min = 0;   // same at random orbit points off V^H

  bool ok() const;
};

struct ReductionReport
{
  int case_id = 0;
  int n = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_ds = 0;
  int mult_mismatches = 0;
  int resamples = 0;
  LemmaChecks lemma;

  bool ok() const;
};

/// Compares numerical focal schedules at random regular points of V^H with
/// the reduced model. Per-sample randomness comes from (seed, index), so the
/// report does not depend on the thread count. Throws SampleDegenerate.
ReductionReport verify_reduction(MatrixRep const &rep, reduced::ReducedGeometry const &geom,
                                 int samples, std::uint64_t seed, int threads = 1);

} // namespace taut::numlie

#endif // TAUT_NUMLIE_HPP
