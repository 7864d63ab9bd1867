#ifndef TAUT_ERROR_HPP
#define TAUT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace taut
{

enum class ErrorKind
{
  InvalidSpec,
  NonClosedUnderReflection,
  MultiplicityNotWeylInvariant,
  NotABase,
  RankTooLarge,
  ElementNotInGroup,
  InvalidTheta,
  ZeroPoint,
  NonGenericSegment,
  QNotRegular,
  QNotInPositiveChamber,
  PointNotDominant,
  BadCase,
  BadN,
  PointOnCircleButRegularFlag,
  PointOffCirclesButSingularFlag,
  DegenerateDirection,
  NonGenericPoint,
  CollapseAtBasepoint,
  BadQParam,
  QOnFocalPoint,
  QNotGeneric,
  UnsupportedCase,
  NotNormal,
  RankDeficientTangentFrame,
  SampleDegenerate,
  ChartFailure,
};

std::string_view to_string(ErrorKind kind);

/// Computation error carrying a machine-readable kind. Thrown by every
/// module; the CLI maps it to exit status 1 and a structured error report.
class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, std::string const &message)
  : std::runtime_error(message), _kind(kind)
  {}

  ErrorKind kind() const noexcept
  { return _kind; }

private:
  ErrorKind _kind;
};

} // namespace taut

#endif // TAUT_ERROR_HPP
