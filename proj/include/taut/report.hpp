#ifndef TAUT_REPORT_HPP
#define TAUT_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "taut/bruhat.hpp"
#include "taut/error.hpp"
#include "taut/morse.hpp"
#include "taut/numlie.hpp"
#include "taut/reduced.hpp"
#include "taut/rootsys.hpp"

namespace taut::report
{

using nlohmann::json;

inline constexpr int schema_version = 1;

/// Catalog, explicit or product form. Throws InvalidSpec on malformed input.
rootsys::RootSystemSpec parse_spec(json const &j);
rootsys::RootSystemSpec load_spec(std::string const &path);

/// "1,0,-1/2" -> rationals. Empty text gives an empty vector.
QVector parse_rational_list(std::string const &text);
std::vector<double> parse_double_list(std::string const &text);
std::vector<int> parse_index_list(std::string const &text);

json error_json(ErrorKind kind, std::string const &message);

json roots_json(rootsys::RootSystem const &rs);
json weyl_json(rootsys::WeylGroup const &group);
json bruhat_json(rootsys::RootSystem const &rs, std::vector<int> const &theta,
                 std::vector<bruhat::BruhatCell> const &cells,
                 bruhat::Polynomial const &poincare);
json morse_json(rootsys::WeylGroup const &group, morse::ChamberPoint const &q,
                morse::ChamberPoint const &p, std::vector<morse::CycleWord> const &words,
                morse::CorrespondenceReport const *correspondence);

json schedule_json(reduced::FocalSchedule const &s);
json collapses_json(std::vector<reduced::CollapseEvent> const &events);
json cycle_json(reduced::CycleDescriptor const &c, reduced::BundleCheck const *check);
json tautness_json(reduced::TautnessReport const &t);
json reduction_json(numlie::ReductionReport const &r, double ds_tol, double lemma_tol);

json vector_json(QVector const &v);
json vector_json(IntVector const &v);

} // namespace taut::report

#endif // TAUT_REPORT_HPP
