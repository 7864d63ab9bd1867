#ifndef TAUT_RATIONAL_HPP
#define TAUT_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

// Under C++20 the reversed == candidates make boost's mixed rational/integer
// equality call itself. Exact non-template overloads win resolution.
namespace boost
{
inline bool operator==(rational<long> const &a, int b)
{ return a.denominator() == 1 && a.numerator() == b; }

inline bool operator==(rational<long> const &a, long b)
{ return a.denominator() == 1 && a.numerator() == b; }
} // namespace boost

namespace taut
{

using Rational = boost::rational<std::int64_t>;
using IntVector = std::vector<std::int64_t>;
using QVector = std::vector<Rational>;

QVector to_rational(IntVector const &v);

Rational dot(QVector const &a, QVector const &b);
Rational dot(IntVector const &a, QVector const &b);
std::int64_t dot(IntVector const &a, IntVector const &b);

QVector operator+(QVector const &a, QVector const &b);
QVector operator-(QVector const &a, QVector const &b);
QVector operator*(Rational s, QVector const &a);

bool is_zero(QVector const &v);

std::string to_string(Rational const &r);
std::string to_string(QVector const &v);

/// Parses "3/2" or "-4" or a finite decimal such as "0.25".
Rational parse_rational(std::string const &text);

/// Dense row-major rational matrix. Small sizes only (ambient dimension of a
/// root system).
class QMatrix
{
public:
  QMatrix() = default;
  QMatrix(int rows, int cols)
  : _rows(rows), _cols(cols), _data(static_cast<std::size_t>(rows * cols))
  {}

  static QMatrix identity(int n);

  int rows() const
  { return _rows; }

  int cols() const
  { return _cols; }

  Rational &operator()(int r, int c)
  { return _data[static_cast<std::size_t>(r * _cols + c)]; }

  Rational const &operator()(int r, int c) const
  { return _data[static_cast<std::size_t>(r * _cols + c)]; }

  QMatrix operator*(QMatrix const &other) const;
  QVector operator*(QVector const &v) const;

  QMatrix transpose() const;

  bool operator==(QMatrix const &other) const = default;

private:
  int _rows = 0;
  int _cols = 0;
  std::vector<Rational> _data;
};

/// Solves a square nonsingular system exactly. Returns false when singular.
bool solve(QMatrix a, QVector b, QVector &x);

} // namespace taut

#endif // TAUT_RATIONAL_HPP
