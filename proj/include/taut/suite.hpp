#ifndef TAUT_SUITE_HPP
#define TAUT_SUITE_HPP

#include <cstdint>

#include <json.hpp>

namespace taut::suite
{

struct SuiteResult
{
  nlohmann::json report;   // no timings, so identical for identical seeds
  bool ok = false;
};

/// Runs the acceptance battery (criteria 1 to 7). threads only changes how
/// the numerical samples are scheduled.
SuiteResult run_suite(std::uint64_t seed, int threads, double ds_tol = 1e-6,
                      double lemma_tol = 1e-8);

} // namespace taut::suite

#endif // TAUT_SUITE_HPP
