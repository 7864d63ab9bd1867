#include "taut/rational.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

#include "taut/error.hpp"

namespace taut
{

std::string_view to_string(ErrorKind kind)
{
  switch (kind) {
  case ErrorKind::InvalidSpec: return "InvalidSpec";
  case ErrorKind::NonClosedUnderReflection: return "NonClosedUnderReflection";
  case ErrorKind::MultiplicityNotWeylInvariant: return "MultiplicityNotWeylInvariant";
  case ErrorKind::NotABase: return "NotABase";
  case ErrorKind::RankTooLarge: return "RankTooLarge";
  case ErrorKind::ElementNotInGroup: return "ElementNotInGroup";
  case ErrorKind::InvalidTheta: return "InvalidTheta";
  case ErrorKind::ZeroPoint: return "ZeroPoint";
  case ErrorKind::NonGenericSegment: return "NonGenericSegment";
  case ErrorKind::QNotRegular: return "QNotRegular";
  case ErrorKind::QNotInPositiveChamber: return "QNotInPositiveChamber";
  case ErrorKind::PointNotDominant: return "PointNotDominant";
  case ErrorKind::BadCase: return "BadCase";
  case ErrorKind::BadN: return "BadN";
  case ErrorKind::PointOnCircleButRegularFlag: return "PointOnCircleButRegularFlag";
  case ErrorKind::PointOffCirclesButSingularFlag: return "PointOffCirclesButSingularFlag";
  case ErrorKind::DegenerateDirection: return "DegenerateDirection";
  case ErrorKind::NonGenericPoint: return "NonGenericPoint";
  case ErrorKind::CollapseAtBasepoint: return "CollapseAtBasepoint";
  case ErrorKind::BadQParam: return "BadQParam";
  case ErrorKind::QOnFocalPoint: return "QOnFocalPoint";
  case ErrorKind::QNotGeneric: return "QNotGeneric";
  case ErrorKind::UnsupportedCase: return "UnsupportedCase";
  case ErrorKind::NotNormal: return "NotNormal";
  case ErrorKind::RankDeficientTangentFrame: return "RankDeficientTangentFrame";
  case ErrorKind::SampleDegenerate: return "SampleDegenerate";
  case ErrorKind::ChartFailure: return "ChartFailure";
  }
  return "Unknown";
}

QVector to_rational(IntVector const &v)
{
  QVector out;
  out.reserve(v.size());
  for (auto x : v)
    out.emplace_back(x);
  return out;
}

Rational dot(QVector const &a, QVector const &b)
{
  assert(a.size() == b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

Rational dot(IntVector const &a, QVector const &b)
{
  assert(a.size() == b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      s += b[i] * a[i];
  return s;
}

std::int64_t dot(IntVector const &a, IntVector const &b)
{
  assert(a.size() == b.size());
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

QVector operator+(QVector const &a, QVector const &b)
{
  QVector out(a);
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] += b[i];
  return out;
}

QVector operator-(QVector const &a, QVector const &b)
{
  QVector out(a);
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] -= b[i];
  return out;
}

QVector operator*(Rational s, QVector const &a)
{
  QVector out(a);
  for (auto &x : out)
    x *= s;
  return out;
}

bool is_zero(QVector const &v)
{
  for (auto const &x : v)
    if (x != 0)
      return false;
  return true;
}

std::string to_string(Rational const &r)
{
  if (r.denominator() == 1)
    return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_string(QVector const &v)
{
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      out += ", ";
    out += to_string(v[i]);
  }
  return out + ")";
}

Rational parse_rational(std::string const &raw)
{
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c)))
      text += c;
  if (text.empty())
    throw Error(ErrorKind::InvalidSpec, "empty number");

  try {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      std::size_t used = 0;
      auto num = std::stoll(text.substr(0, slash), &used);
      if (used != slash)
        throw std::invalid_argument(text);
      auto den_text = text.substr(slash + 1);
      auto den = std::stoll(den_text, &used);
      if (used != den_text.size() || den == 0)
        throw std::invalid_argument(text);
      return Rational(num, den);
    }

    auto dotpos = text.find('.');
    if (dotpos == std::string::npos) {
      std::size_t used = 0;
      auto num = std::stoll(text, &used);
      if (used != text.size())
        throw std::invalid_argument(text);
      return Rational(num);
    }

    bool negative = text[0] == '-';
    std::string digits = text.substr(negative || text[0] == '+' ? 1 : 0);
    dotpos = digits.find('.');
    std::string whole = digits.substr(0, dotpos);
    std::string frac = digits.substr(dotpos + 1);
    if (frac.size() > 15 || (whole.empty() && frac.empty()))
      throw std::invalid_argument(text);
    for (char c : whole + frac)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument(text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i)
      den *= 10;
    std::int64_t num = (whole.empty() ? 0 : std::stoll(whole)) * den +
                       (frac.empty() ? 0 : std::stoll(frac));
    return Rational(negative ? -num : num, den);
  } catch (std::logic_error const &) {
    throw Error(ErrorKind::InvalidSpec, "cannot parse number '" + raw + "'");
  }
}

QMatrix QMatrix::identity(int n)
{
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

QMatrix QMatrix::operator*(QMatrix const &other) const
{
  assert(_cols == other._rows);
  QMatrix out(_rows, other._cols);
  for (int i = 0; i < _rows; ++i)
    for (int k = 0; k < _cols; ++k) {
      auto const &a = (*this)(i, k);
      if (a == 0)
        continue;
      for (int j = 0; j < other._cols; ++j)
        out(i, j) += a * other(k, j);
    }
  return out;
}

QVector QMatrix::operator*(QVector const &v) const
{
  assert(static_cast<int>(v.size()) == _cols);
  QVector out(static_cast<std::size_t>(_rows));
  for (int i = 0; i < _rows; ++i)
    for (int j = 0; j < _cols; ++j)
      out[i] += (*this)(i, j) * v[j];
  return out;
}

QMatrix QMatrix::transpose() const
{
  QMatrix out(_cols, _rows);
  for (int i = 0; i < _rows; ++i)
    for (int j = 0; j < _cols; ++j)
      out(j, i) = (*this)(i, j);
  return out;
}

bool solve(QMatrix a, QVector b, QVector &x)
{
  int n = a.rows();
  assert(a.cols() == n && static_cast<int>(b.size()) == n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0)
      return false;
    if (pivot != col) {
      for (int c = 0; c < n; ++c)
        std::swap(a(pivot, c), a(col, c));
      std::swap(b[pivot], b[col]);
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0)
        continue;
      Rational f = a(r, col) / a(col, col);
      for (int c = col; c < n; ++c)
        a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  x.assign(static_cast<std::size_t>(n), Rational(0));
  for (int i = 0; i < n; ++i)
    x[i] = b[i] / a(i, i);
  return true;
}

} // namespace taut
