#include "taut/numlie.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <exception>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include <unsupported/Eigen/MatrixFunctions>

#include "taut/error.hpp"
#include "taut/jacobi.hpp"

namespace taut::numlie
{

namespace
{

using Eigen::MatrixXcd;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

template <typename M>
M kron(M const &a, M const &b)
{
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatrixXd realify(MatrixXcd const &a)
{
  Eigen::Index n = a.rows();
  MatrixXd out(2 * n, 2 * n);
  out << a.real(), -a.imag(), a.imag(), a.real();
  return out;
}

// sp(n) inside u(2n): blocks [[A, B], [-conj B, conj A]] with A skew-Hermitian
// and B complex symmetric.
std::vector<MatrixXcd> sp_basis(int n)
{
  std::vector<MatrixXcd> out;
  auto block = [n](MatrixXcd const &a, MatrixXcd const &b) {
    MatrixXcd m = MatrixXcd::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = a;
    m.topRightCorner(n, n) = b;
    m.bottomLeftCorner(n, n) = -b.conjugate();
    m.bottomRightCorner(n, n) = a.conjugate();
    return m;
  };
  MatrixXcd zero = MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      MatrixXcd a = zero;
      if (i == j) {
        a(i, i) = cd(0, 1);
        out.push_back(block(a, zero));
        continue;
      }
      a(i, j) = 1;
      a(j, i) = -1;
      out.push_back(block(a, zero));
      a = zero;
      a(i, j) = a(j, i) = cd(0, 1);
      out.push_back(block(a, zero));
    }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (cd c : {cd(1, 0), cd(0, 1)}) {
        MatrixXcd b = zero;
        b(i, j) = b(j, i) = c;
        out.push_back(block(zero, b));
      }
  return out;
}

// i J_x, i J_y, i J_z for spin 3/2.
std::vector<MatrixXcd> spin_three_halves()
{
  int const d = 4;
  double const j = 1.5;
  MatrixXcd jz = MatrixXcd::Zero(d, d), jp = MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k)
    jz(k, k) = j - k;
  for (int k = 1; k < d; ++k) {
    double m = j - k;
    jp(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  MatrixXcd jx = (jp + jp.adjoint()) / 2.0;
  MatrixXcd jy = (jp - jp.adjoint()) / cd(0, 2);
  cd i(0, 1);
  return {i * jx, i * jy, i * jz};
}

// Omega with Omega conj(X) = X Omega for all generators, scaled so that
// Omega conj(Omega) = -I.
MatrixXcd quaternionic_structure(std::vector<MatrixXcd> const &gens)
{
  Eigen::Index const d = gens.front().rows();
  Eigen::Index const unknowns = 2 * d * d;
  Eigen::Index const rows = 2 * d * d * static_cast<Eigen::Index>(gens.size());
  MatrixXd sys(rows, unknowns);
  for (Eigen::Index u = 0; u < unknowns; ++u) {
    MatrixXcd e = MatrixXcd::Zero(d, d);
    e((u / 2) / d, (u / 2) % d) = (u % 2 == 0) ? cd(1, 0) : cd(0, 1);
    Eigen::Index r = 0;
    for (auto const &x : gens) {
      MatrixXcd res = e * x.conjugate() - x * e;
      for (Eigen::Index k = 0; k < d * d; ++k) {
        sys(r++, u) = res(k / d, k % d).real();
        sys(r++, u) = res(k / d, k % d).imag();
      }
    }
  }
  Eigen::BDCSVD<MatrixXd> svd(sys, Eigen::ComputeFullV);
  VectorXd v = svd.matrixV().col(unknowns - 1);
  MatrixXcd omega(d, d);
  for (Eigen::Index u = 0; u < unknowns; u += 2)
    omega((u / 2) / d, (u / 2) % d) = cd(v[u], v[u + 1]);
  MatrixXcd sq = omega * omega.conjugate();
  omega /= std::sqrt(std::abs(sq(0, 0)));
  sq = omega * omega.conjugate();
  if ((sq + MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9)
    throw std::logic_error("no quaternionic structure found");
  return omega;
}

// Orthonormal basis of the null space of m (singular values <= rel * max).
MatrixXd null_space(MatrixXd const &m, double rel)
{
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  auto const &s = svd.singularValues();
  double smax = s.size() > 0 ? s[0] : 0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < m.cols(); ++k)
    if (k >= s.size() || s[k] <= rel * smax)
      keep.push_back(k);
  MatrixXd out(m.cols(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    out.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(keep[k]);
  return out;
}

// Orthonormal basis of the column space (singular values > rel * max).
MatrixXd range_space(MatrixXd const &m, double rel)
{
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeThinU);
  auto const &s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > rel * s[0])
    ++r;
  return svd.matrixU().leftCols(r);
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream, std::uint64_t tag)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(tag)};
  return std::mt19937_64(seq);
}

VectorXd gaussian(std::mt19937_64 &rng, Eigen::Index n)
{
  std::normal_distribution<double> dist;
  VectorXd v(n);
  for (Eigen::Index k = 0; k < n; ++k)
    v[k] = dist(rng);
  return v;
}

reduced::Vec3 fit_plane_normal(std::vector<reduced::Vec3> const &pts)
{
  if (pts.size() < 2)
    throw Error(ErrorKind::ChartFailure, "too few focal points to locate a singular circle");
  MatrixXd m(static_cast<Eigen::Index>(pts.size()), 3);
  for (std::size_t k = 0; k < pts.size(); ++k)
    m.row(static_cast<Eigen::Index>(k)) = pts[k].transpose();
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  if (svd.singularValues()[2] > 1e-6 * std::sqrt(static_cast<double>(pts.size())))
    throw Error(ErrorKind::ChartFailure, "focal points do not lie on a great circle");
  return svd.matrixV().col(2);
}

reduced::FocalSchedule schedule_from_spectrum(ShapeSpectrum const &spec)
{
  std::vector<double> s;
  for (double kappa : spec.values)
    s.push_back(std::atan2(1.0, kappa));
  std::sort(s.begin(), s.end(), std::greater<>());
  reduced::FocalSchedule out;
  for (double x : s) {
    if (!out.items.empty() && std::abs(out.items.back().param - x) < 1e-6) {
      ++out.items.back().multiplicity;
      continue;
    }
    out.items.push_back({x, reduced::FocalKind::standard, 1, {}});
  }
  for (auto &item : out.items)
    if (std::abs(item.param - pi / 2) < 1e-6)
      item.kind = item.multiplicity == 1 ? reduced::FocalKind::special : reduced::FocalKind::mixed;
  return out;
}

} // namespace

std::vector<MatrixXd> clifford9()
{
  // Octonion left multiplications from the Fano-plane triples.
  std::array<std::array<int, 3>, 7> const triples{
      {{1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 7}, {5, 6, 1}, {6, 7, 2}, {7, 1, 3}}};
  // left[u](k, j): coefficient of e_k in e_u e_j.
  std::vector<MatrixXd> left(8, MatrixXd::Zero(8, 8));
  for (int j = 0; j < 8; ++j) {
    left[0](j, j) = 1;
    left[j](j, 0) = 1;
  }
  for (int u = 1; u < 8; ++u)
    left[u](0, u) = -1;
  for (auto const &t : triples)
    for (int r = 0; r < 3; ++r) {
      int a = t[r], b = t[(r + 1) % 3], c = t[(r + 2) % 3];
      left[a](c, b) = 1;
      left[b](c, a) = -1;
    }
  std::vector<MatrixXd> gamma;
  for (int u = 0; u < 8; ++u) {
    MatrixXd g = MatrixXd::Zero(16, 16);
    g.topRightCorner(8, 8) = left[u];
    g.bottomLeftCorner(8, 8) = left[u].transpose();
    gamma.push_back(g);
  }
  MatrixXd g9 = MatrixXd::Identity(16, 16);
  g9.bottomRightCorner(8, 8) *= -1;
  gamma.push_back(g9);
  return gamma;
}

MatrixRep build_representation(int case_id, int n)
{
  MatrixRep rep;
  rep.case_id = case_id;
  if (case_id == 1) {
    rep.ambient_dim = 32;
    MatrixXd eps(2, 2);
    eps << 0, 1, -1, 0;
    rep.lie_basis.push_back(kron<MatrixXd>(eps, MatrixXd::Identity(16, 16)));
    auto gamma = clifford9();
    for (int i = 0; i < 9; ++i)
      for (int j = i + 1; j < 9; ++j)
        rep.lie_basis.push_back(
            kron<MatrixXd>(MatrixXd::Identity(2, 2), 0.5 * gamma[i] * gamma[j]));
    return rep;
  }
  if (case_id != 2 && case_id != 3)
    throw Error(ErrorKind::UnsupportedCase, "case must be 1, 2 or 3");
  if (n < 2 || n > 4)
    throw Error(ErrorKind::UnsupportedCase, "matrix models cover n = 2..4 only");
  rep.n = n;
  rep.ambient_dim = 8 * n;
  auto sp = sp_basis(n);
  MatrixXcd id2n = MatrixXcd::Identity(2 * n, 2 * n);

  if (case_id == 2) {
    cd i(0, 1);
    MatrixXcd s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, -i, i, 0;
    s3 << 1, 0, 0, -1;
    std::vector<MatrixXcd> u2{i * MatrixXcd::Identity(2, 2), i * s1, i * s2, i * s3};
    for (auto const &x : u2)
      rep.lie_basis.push_back(realify(kron<MatrixXcd>(x, id2n)));
    for (auto const &y : sp)
      rep.lie_basis.push_back(realify(kron<MatrixXcd>(MatrixXcd::Identity(2, 2), y)));
    return rep;
  }

  // Case 3: the complex tensor product is quaternionic times quaternionic,
  // so it carries a real structure; V is its fixed space.
  auto su2 = spin_three_halves();
  MatrixXcd omega = kron<MatrixXcd>(quaternionic_structure(su2), quaternionic_structure(sp));
  Eigen::Index const d = 8 * n;
  VectorXd signs(2 * d);
  signs << VectorXd::Ones(d), -VectorXd::Ones(d);
  MatrixXd sigma = realify(omega) * signs.asDiagonal();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es((sigma + sigma.transpose()) / 2);
  std::vector<Eigen::Index> fixed;
  for (Eigen::Index k = 0; k < 2 * d; ++k)
    if (es.eigenvalues()[k] > 0.5)
      fixed.push_back(k);
  if (static_cast<Eigen::Index>(fixed.size()) != d)
    throw std::logic_error("real form has the wrong dimension");
  MatrixXd e(2 * d, d);
  for (std::size_t k = 0; k < fixed.size(); ++k)
    e.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(fixed[k]);
  std::vector<MatrixXcd> complex_gens;
  for (auto const &x : su2)
    complex_gens.push_back(kron<MatrixXcd>(x, id2n));
  for (auto const &y : sp)
    complex_gens.push_back(kron<MatrixXcd>(MatrixXcd::Identity(4, 4), y));
  for (auto const &x : complex_gens)
    rep.lie_basis.push_back(e.transpose() * realify(x) * e);
  return rep;
}

MatrixXd tangent_frame(MatrixRep const &rep, VectorXd const &p)
{
  MatrixXd t(rep.ambient_dim, static_cast<Eigen::Index>(rep.lie_basis.size()));
  for (std::size_t k = 0; k < rep.lie_basis.size(); ++k)
    t.col(static_cast<Eigen::Index>(k)) = rep.lie_basis[k] * p;
  return t;
}

int orbit_dimension(MatrixRep const &rep, VectorXd const &p)
{
  MatrixXd t = tangent_frame(rep, p);
  auto eig = numeric::jacobi_eigen(t.transpose() * t);
  double top = eig.values.maxCoeff();
  int r = 0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (eig.values[k] > 1e-8 * top)
      ++r;
  return r;
}

MatrixXd normal_space(MatrixRep const &rep, VectorXd const &p)
{
  return null_space(tangent_frame(rep, p).transpose(), 1e-8);
}

ShapeSpectrum shape_operator(MatrixRep const &rep, VectorXd const &p, VectorXd const &xi)
{
  if (std::abs(p.norm() - 1) > 1e-8)
    throw Error(ErrorKind::NotNormal, "base point must have unit length");
  if (std::abs(xi.norm() - 1) > 1e-8 || std::abs(xi.dot(p)) > 1e-8)
    throw Error(ErrorKind::NotNormal, "normal must be a unit vector orthogonal to p");
  MatrixXd t = tangent_frame(rep, p);
  if ((t.transpose() * xi).cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, t.norm()))
    throw Error(ErrorKind::NotNormal, "normal is not orthogonal to the orbit");

  // Gram eigenvalues are the squared singular values of the frame; taking
  // them from an SVD of the frame keeps small ones accurate near singular
  // orbits.
  Eigen::JacobiSVD<MatrixXd> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  auto const &sv = svd.singularValues();
  double top = sv[0] * sv[0];
  Eigen::Index r = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    double rel = sv[k] * sv[k] / top;
    if (rel > 1e-12 && rel <= 1e-8)
      throw Error(ErrorKind::RankDeficientTangentFrame,
                  "tangent Gram matrix has an eigenvalue near the rank threshold");
    if (rel > 1e-8)
      ++r;
  }
  MatrixXd w = svd.matrixV().leftCols(r) * sv.head(r).cwiseInverse().asDiagonal();

  // b(i, j) = <X_i X_j p, xi> = -<X_j p, X_i xi>.
  MatrixXd z = tangent_frame(rep, xi);
  MatrixXd b = -z.transpose() * t;
  MatrixXd a_raw = w.transpose() * b * w;

  ShapeSpectrum out;
  out.asymmetry = (a_raw - a_raw.transpose()).norm();
  MatrixXd a = (a_raw + a_raw.transpose()) / 2;
  auto eig = numeric::jacobi_eigen(a);
  out.values.assign(eig.values.data(), eig.values.data() + eig.values.size());
  for (double v : out.values) {
    if (!out.clusters.empty() &&
        std::abs(v - out.clusters.back().first) <= 1e-8 * std::max(1.0, std::abs(v))) {
      ++out.clusters.back().second;
      continue;
    }
    out.clusters.emplace_back(v, 1);
  }
  MatrixXd q = svd.matrixU().leftCols(r);   // orthonormal tangent frame
  out.operator_on_v = q * a * q.transpose();
  out.basepoint = p;
  out.normal = xi;
  return out;
}

reduced::FocalSchedule numerical_focal_schedule(MatrixRep const &rep, VectorXd const &p,
                                                VectorXd const &xi)
{
  return schedule_from_spectrum(shape_operator(rep, p, xi));
}

reduced::Vec4 HopfChart::coordinates(VectorXd const &y) const
{
  Eigen::Vector4d c = frame.transpose() * y;
  return hopf_basis.transpose() * c;
}

reduced::Vec3 HopfChart::eta(VectorXd const &y) const
{
  return rotation * reduced::hopf(coordinates(y));
}

VectorXd HopfChart::apply_j(VectorXd const &y) const
{
  return generator * y;
}

VectorXd HopfChart::random_point(std::uint64_t a, std::uint64_t b) const
{
  auto rng = seeded(a, b, 0x70);
  VectorXd c = gaussian(rng, 4);
  return frame * c.normalized();
}

MatrixXd sigma_space(MatrixRep const &rep, HopfChart const &chart, VectorXd const &p)
{
  MatrixXd m = tangent_frame(rep, p).transpose() * chart.frame;
  return chart.frame * null_space(m, 1e-8);
}

HopfChart hopf_chart(MatrixRep const &rep, std::uint64_t seed)
{
  auto rng = seeded(seed, 0, 0x43);
  Eigen::Index const d = rep.ambient_dim;

  VectorXd p0 = gaussian(rng, d).normalized();
  MatrixXd np = normal_space(rep, p0);
  VectorXd n0 = np * gaussian(rng, np.cols());
  n0 -= n0.dot(p0) * p0;
  n0.normalize();
  MatrixXd nn = normal_space(rep, n0);
  MatrixXd both(d, np.cols() + nn.cols());
  both << np, nn;
  MatrixXd vh = range_space(both, 1e-8);
  if (vh.cols() != 4)
    throw Error(ErrorKind::ChartFailure,
                "V^H came out with dimension " + std::to_string(vh.cols()));

  HopfChart chart;
  chart.frame = vh;

  // Normalizer of V^H inside the Lie algebra, restricted to V^H.
  MatrixXd proj = vh * vh.transpose();
  MatrixXd comp = MatrixXd::Identity(d, d) - proj;
  MatrixXd sys(d * d, static_cast<Eigen::Index>(rep.lie_basis.size()));
  for (std::size_t k = 0; k < rep.lie_basis.size(); ++k) {
    MatrixXd m = comp * rep.lie_basis[k] * proj;
    sys.col(static_cast<Eigen::Index>(k)) = Eigen::Map<VectorXd>(m.data(), d * d);
  }
  MatrixXd normalizer = null_space(sys, 1e-8);
  if (normalizer.cols() == 0)
    throw Error(ErrorKind::ChartFailure, "V^H has no normalizing generators");
  MatrixXd restricted(normalizer.cols(), 16);
  for (Eigen::Index k = 0; k < normalizer.cols(); ++k) {
    MatrixXd x = MatrixXd::Zero(d, d);
    for (std::size_t g = 0; g < rep.lie_basis.size(); ++g)
      x += normalizer(static_cast<Eigen::Index>(g), k) * rep.lie_basis[g];
    Eigen::Matrix4d r = vh.transpose() * x * vh;
    restricted.row(k) = Eigen::Map<Eigen::Matrix<double, 1, 16>>(r.data());
  }
  Eigen::JacobiSVD<MatrixXd> svd(restricted, Eigen::ComputeFullU | Eigen::ComputeFullV);
  auto const &sv = svd.singularValues();
  if (sv[0] < 1e-8 || (sv.size() > 1 && sv[1] > 1e-8 * sv[0]))
    throw Error(ErrorKind::ChartFailure, "normalizer does not act on V^H by a single circle");
  Eigen::Matrix4d j = Eigen::Map<Eigen::Matrix4d const>(svd.matrixV().col(0).data());
  double scale = std::sqrt(-(j * j).trace() / 4);
  j /= scale;
  // The same combination of normalizer elements, on all of V.
  VectorXd coeff = normalizer * (svd.matrixU().col(0) / (sv[0] * scale));
  chart.generator = MatrixXd::Zero(d, d);
  for (std::size_t g = 0; g < rep.lie_basis.size(); ++g)
    chart.generator += coeff[static_cast<Eigen::Index>(g)] * rep.lie_basis[g];
  if ((vh.transpose() * chart.generator * vh - j).cwiseAbs().maxCoeff() > 1e-8)
    throw Error(ErrorKind::ChartFailure, "circle generator does not restrict to J");
  if ((j * j + Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() > 1e-8)
    throw Error(ErrorKind::ChartFailure, "circle generator is not a complex structure");
  chart.complex_structure = j;

  Eigen::Vector4d e1 = Eigen::Vector4d::UnitX();
  Eigen::Vector4d e2 = j * e1;
  Eigen::Vector4d e3 = Eigen::Vector4d::Zero();
  for (int k = 1; k < 4; ++k) {
    Eigen::Vector4d c = Eigen::Vector4d::Unit(k);
    c -= c.dot(e1) * e1 + c.dot(e2) * e2;
    if (c.norm() > e3.norm())
      e3 = c;
  }
  e3.normalize();
  chart.hopf_basis << e1, e2, e3, j * e3;
  chart.rotation = Eigen::Matrix3d::Identity();

  // Align with the reduced model using the numeric focal points, which lie
  // on the singular circles.
  auto geom = reduced::build_reduced_geometry(rep.case_id, std::max(rep.n, 2));
  std::map<int, std::vector<reduced::Vec3>> by_mult;
  for (int k = 0; k < 6; ++k) {
    VectorXd p = vh * gaussian(rng, 4).normalized();
    MatrixXd sig = sigma_space(rep, chart, p);
    VectorXd nrm = sig * gaussian(rng, sig.cols());
    nrm -= nrm.dot(p) * p;
    nrm.normalize();
    for (auto const &item : numerical_focal_schedule(rep, p, nrm).items)
      if (std::abs(item.param - pi / 2) > 1e-6)
        by_mult[item.multiplicity].push_back(
            chart.eta(std::cos(item.param) * p + std::sin(item.param) * nrm));
  }

  Eigen::Matrix3d rot;
  if (geom.case_id != 3) {
    for (int c = 0; c < 3; ++c)
      rot.row(c) = fit_plane_normal(by_mult[geom.circles[c].multiplicity]).transpose();
  } else {
    reduced::Vec3 eq = fit_plane_normal(by_mult[geom.circles[0].multiplicity]);
    auto const &pts = by_mult[1];
    if (pts.empty())
      throw Error(ErrorKind::ChartFailure, "no focal points on the meridians");
    reduced::Vec3 m0 = eq.cross(pts.front()).normalized();
    reduced::Vec3 u2 = eq.cross(m0);
    // m0 -> (0,1,0), eq -> (0,0,1), eq x m0 -> (-1,0,0).
    rot = reduced::Vec3(0, 1, 0) * m0.transpose() + reduced::Vec3(0, 0, 1) * eq.transpose() +
          reduced::Vec3(-1, 0, 0) * u2.transpose();
    for (auto const &x : pts) {
      reduced::Vec3 m = rot * eq.cross(x).normalized();
      bool matched = false;
      for (std::size_t c = 1; c < geom.circles.size(); ++c)
        matched = matched || std::abs(std::abs(m.dot(geom.circles[c].normal)) - 1) < 1e-6;
      if (!matched)
        throw Error(ErrorKind::ChartFailure, "meridians are not at the model angles");
    }
  }
  if ((rot * rot.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-6)
    throw Error(ErrorKind::ChartFailure, "singular circles are not mutually orthogonal");
  chart.rotation = rot;
  return chart;
}

bool LemmaChecks::ok() const
{
  return weingarten_max < 1e-8 && sigma_dim_min == 3 && sigma_dim_max == 3 &&
         crit_gradient_max < 1e-8 && off_gradient_min > 1e-6;
}

bool ReductionReport::ok() const
{
  return max_ds < 1e-6 && mult_mismatches == 0 && lemma.ok();
}

namespace
{

struct SampleResult
{
  double ds = 0;
  int mismatches = 0;
  int resamples = 0;
  double weingarten = 0;
  int sigma_dim = 0;
  double crit_gradient = 0;
  double off_gradient = 0;
};

double tangential_gradient(MatrixRep const &rep, VectorXd const &x, VectorXd const &q)
{
  MatrixXd frame = range_space(tangent_frame(rep, x), 1e-8);
  return (frame.transpose() * q).norm();
}

SampleResult run_sample(MatrixRep const &rep, reduced::ReducedGeometry const &geom,
                        HopfChart const &chart, std::uint64_t seed, int index)
{
  auto rng = seeded(seed, static_cast<std::uint64_t>(index), 0x53);
  SampleResult r;
  for (int attempt = 0; attempt < 50; ++attempt) {
    VectorXd p = chart.frame * gaussian(rng, 4).normalized();
    reduced::Vec3 base = chart.eta(p);
    double gap = 1;
    for (auto const &c : geom.circles)
      gap = std::min(gap, std::abs(c.normal.dot(base)));
    MatrixXd sig = sigma_space(rep, chart, p);
    VectorXd nrm = sig * gaussian(rng, sig.cols());
    nrm -= nrm.dot(p) * p;
    if (gap < 1e-3 || nrm.norm() < 1e-6) {
      ++r.resamples;
      continue;
    }
    nrm.normalize();
    auto predicted = reduced::schedule_along(geom, base, chart.eta((p + nrm) / std::sqrt(2.0)), true);
    bool crowded = false;
    for (std::size_t k = 1; k < predicted.items.size(); ++k)
      crowded = crowded || predicted.items[k - 1].param - predicted.items[k].param < 1e-4;
    if (crowded) {
      ++r.resamples;
      continue;
    }

    auto spec = shape_operator(rep, p, nrm);
    auto numeric = schedule_from_spectrum(spec);
    std::size_t common = std::min(numeric.items.size(), predicted.items.size());
    r.mismatches = static_cast<int>(std::max(numeric.items.size(), predicted.items.size()) - common);
    for (std::size_t k = 0; k < common; ++k) {
      r.ds = std::max(r.ds, std::abs(numeric.items[k].param - predicted.items[k].param));
      if (numeric.items[k].multiplicity != predicted.items[k].multiplicity)
        ++r.mismatches;
    }

    // The special circle through p is a curve in S^3 with curvature vector
    // J^2 p; the orbit's shape operator must agree with it on J p.
    VectorXd jp = chart.apply_j(p);
    double kappa = chart.apply_j(jp).dot(nrm);
    r.weingarten = (spec.operator_on_v * jp - kappa * jp).norm();
    r.sigma_dim = static_cast<int>(sig.cols());

    VectorXd q = chart.frame * gaussian(rng, 4).normalized();
    double a = q.dot(p), b = q.dot(jp);
    double alpha = std::atan2(b, a);
    for (double t : {alpha, alpha + pi}) {
      VectorXd x = std::cos(t) * p + std::sin(t) * jp;
      r.crit_gradient = std::max(r.crit_gradient, tangential_gradient(rep, x, q));
    }
    VectorXd x = std::cos(alpha) * p + std::sin(alpha) * jp;
    MatrixXd proj = chart.frame * chart.frame.transpose();
    r.off_gradient = 0;
    for (int tries = 0; tries < 10; ++tries) {
      VectorXd c = 0.5 * gaussian(rng, static_cast<Eigen::Index>(rep.lie_basis.size()));
      MatrixXd gen = MatrixXd::Zero(rep.ambient_dim, rep.ambient_dim);
      for (std::size_t k = 0; k < rep.lie_basis.size(); ++k)
        gen += c[static_cast<Eigen::Index>(k)] * rep.lie_basis[k];
      MatrixXd g = gen.exp();
      VectorXd y = g * x;
      if ((y - proj * y).norm() < 1e-3)
        continue;
      r.off_gradient = tangential_gradient(rep, y, q);
      break;
    }
    return r;
  }
  throw Error(ErrorKind::SampleDegenerate,
              "sample " + std::to_string(index) + " stayed degenerate after 50 draws");
}

} // namespace

ReductionReport verify_reduction(MatrixRep const &rep, reduced::ReducedGeometry const &geom,
                                 int samples, std::uint64_t seed, int threads)
{
  if (rep.case_id != geom.case_id || (rep.case_id != 1 && rep.n != geom.n))
    throw Error(ErrorKind::InvalidSpec, "representation and reduced geometry disagree");
  HopfChart chart = hopf_chart(rep, seed);

  std::vector<SampleResult> results(static_cast<std::size_t>(std::max(samples, 0)));
  std::vector<std::exception_ptr> errors(results.size());
  int width = std::max(1, std::min(threads, samples));
  std::vector<std::thread> pool;
  for (int w = 0; w < width; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < samples; i += width) {
        try {
          results[static_cast<std::size_t>(i)] = run_sample(rep, geom, chart, seed, i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  for (auto &t : pool)
    t.join();
  for (auto const &e : errors)
    if (e)
      std::rethrow_exception(e);

  ReductionReport report;
  report.case_id = rep.case_id;
  report.n = rep.n;
  report.samples = samples;
  report.seed = seed;
  report.lemma.sigma_dim_min = 4;
  report.lemma.sigma_dim_max = 0;
  report.lemma.off_gradient_min = samples > 0 ? 1e300 : 0;
  for (auto const &r : results) {
    report.max_ds = std::max(report.max_ds, r.ds);
    report.mult_mismatches += r.mismatches;
    report.resamples += r.resamples;
    report.lemma.weingarten_max = std::max(report.lemma.weingarten_max, r.weingarten);
    report.lemma.sigma_dim_min = std::min(report.lemma.sigma_dim_min, r.sigma_dim);
    report.lemma.sigma_dim_max = std::max(report.lemma.sigma_dim_max, r.sigma_dim);
    report.lemma.crit_gradient_max = std::max(report.lemma.crit_gradient_max, r.crit_gradient);
    report.lemma.off_gradient_min = std::min(report.lemma.off_gradient_min, r.off_gradient);
  }
  return report;
}

} // namespace taut::numlie
