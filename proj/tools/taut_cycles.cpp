// taut-cycles: command-line front end.
#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "taut/bruhat.hpp"
#include "taut/morse.hpp"
#include "taut/numlie.hpp"
#include "taut/reduced.hpp"
#include "taut/report.hpp"
#include "taut/suite.hpp"

using namespace taut;
using nlohmann::json;

namespace
{

struct RunConfig
{
  std::string subcommand;
  std::string spec;
  std::string theta;
  std::string p, q, basis = "auto";
  std::string dir, p3, q3;
  int case_id = 0, n = 2;
  double t = 0;
  double q_param = 2.5;
  bool singular = false;
  int samples = 20;
  std::uint64_t seed = 1;
  double ds_tol = 1e-6, lemma_tol = 1e-8;
  std::string emit;
  int threads = 0;
};

int thread_width(int requested)
{
  int w = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (char const *env = std::getenv("TAUT_CYCLES_THREADS"))
  {
    char *end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0)
      w = std::min<long>(w, cap);
  }
  return w;
}

void print_json(json const &j)
{
  std::cout << j.dump(2) << "\n";
}

QVector read_point(rootsys::RootSystem const &rs, std::string const &text, std::string const &basis,
                   char const *what)
{
  auto v = report::parse_rational_list(text);
  auto n = static_cast<int>(v.size());
  bool simple = basis == "simple" ||
                (basis == "auto" && n == rs.rank() && n != rs.ambient_dim());
  if (simple)
  {
    if (n != rs.rank())
      throw Error(ErrorKind::InvalidSpec, std::string(what) + " needs " + std::to_string(rs.rank()) +
                                              " simple-root values");
    return rs.point_from_simple_values(v);
  }
  if (n != rs.ambient_dim())
    throw Error(ErrorKind::InvalidSpec, std::string(what) + " needs " +
                                            std::to_string(rs.ambient_dim()) + " coordinates");
  return v;
}

template <int N>
Eigen::Matrix<double, N, 1> read_vec(std::string const &text, char const *what)
{
  auto v = report::parse_double_list(text);
  if (static_cast<int>(v.size()) != N)
    throw Error(ErrorKind::InvalidSpec, std::string(what) + " needs " + std::to_string(N) + " entries");
  Eigen::Matrix<double, N, 1> out;
  for (int i = 0; i < N; ++i)
    out[i] = v[static_cast<std::size_t>(i)];
  return out;
}

int run_roots(RunConfig const &c)
{
  auto rs = rootsys::build_root_system(report::load_spec(c.spec));
  if (c.emit == "roots")
  {
    std::cout << rs.name() << "  rank " << rs.rank() << "  ambient " << rs.ambient_dim() << "\n";
    for (int i = 0; i < rs.size(); ++i)
    {
      auto const &r = rs.root(i);
      std::cout << std::setw(4) << i << "  " << to_string(to_rational(r.vector)) << "  m=" << r.multiplicity
                << (r.positive ? "  +" : "  -") << (r.is_reduced ? "" : "  nonreduced")
                << (std::find(rs.simple_roots().begin(), rs.simple_roots().end(), i) != rs.simple_roots().end()
                        ? "  simple"
                        : "")
                << "\n";
    }
    return 0;
  }
  rootsys::WeylGroup group(rs);
  if (c.emit == "weyl")
  {
    std::cout << "|W| = " << group.size() << "\n";
    for (auto const &w : group.elements())
    {
      std::cout << "  [";
      for (std::size_t k = 0; k < w.word.size(); ++k)
        std::cout << (k ? " " : "") << w.word[k];
      std::cout << "]  length " << w.length() << "\n";
    }
    return 0;
  }
  auto j = report::roots_json(rs);
  j["weyl"] = report::weyl_json(group);
  j["weyl"].erase("schema_version");
  print_json(j);
  return 0;
}

int run_bruhat(RunConfig const &c)
{
  auto rs = rootsys::build_root_system(report::load_spec(c.spec));
  rootsys::WeylGroup group(rs);
  bruhat::ThetaSubset theta{report::parse_index_list(c.theta)};
  auto sorted = bruhat::validate_theta(rs, theta);
  auto cells = bruhat::bruhat_cells(group, theta);
  auto poly = bruhat::poincare_polynomial(group, theta);
  if (c.emit == "poincare")
  {
    std::cout << poly.to_string() << "\n";
    return 0;
  }
  if (c.emit == "cells")
  {
    for (auto const &cell : cells)
    {
      std::cout << "dim " << std::setw(3) << cell.dimension << "  [";
      for (std::size_t k = 0; k < cell.rep.word.size(); ++k)
        std::cout << (k ? " " : "") << cell.rep.word[k];
      std::cout << "]\n";
    }
    std::cout << "P(t) = " << poly.to_string() << "\n";
    return 0;
  }
  print_json(report::bruhat_json(rs, sorted, cells, poly));
  return 0;
}

int run_morse(RunConfig const &c)
{
  auto rs = rootsys::build_root_system(report::load_spec(c.spec));
  rootsys::WeylGroup group(rs);
  auto p = morse::make_point(rs, read_point(rs, c.p, c.basis, "--p"));
  auto q = morse::make_point(rs, read_point(rs, c.q, c.basis, "--q"));
  auto words = morse::coset_words(group, q, p);
  std::optional<morse::CorrespondenceReport> corr;
  bool positive_q = true;
  for (int s : rs.simple_roots())
    positive_q = positive_q && rs.evaluate(s, q.coords) > 0;
  if (positive_q && morse::is_dominant(rs, p.coords))
    corr = morse::verify_bruhat_correspondence(group, bruhat::ThetaSubset{p.theta}, q, p);
  if (c.emit == "indices")
  {
    for (auto const &w : words)
    {
      std::cout << "[";
      auto const &word = group[w.base_coset].word;
      for (std::size_t k = 0; k < word.size(); ++k)
        std::cout << (k ? " " : "") << word[k];
      std::cout << "]  " << w.dimension() << "\n";
    }
    return 0;
  }
  if (c.emit == "report")
  {
    std::vector<int> degrees;
    for (auto const &w : words)
    {
      degrees.push_back(w.dimension());
      std::cout << "coset [";
      auto const &word = group[w.base_coset].word;
      for (std::size_t k = 0; k < word.size(); ++k)
        std::cout << (k ? " " : "") << word[k];
      std::cout << "]  wp = " << to_string(w.target) << "  index " << w.dimension() << "\n";
      for (auto const &wall : w.walls)
        std::cout << "    wall " << to_string(to_rational(rs.root(wall.root).vector)) << " at "
                  << to_string(wall.param) << "  dim " << wall.multiplicity << "\n";
    }
    std::cout << "Morse polynomial " << bruhat::Polynomial::monomial_sum(degrees).to_string() << "\n";
    if (corr)
      std::cout << "Bruhat correspondence " << (corr->ok() ? "holds" : "FAILS") << ", P(t) = "
                << corr->poincare.to_string() << "\n";
    return corr && !corr->ok() ? 1 : 0;
  }
  print_json(report::morse_json(group, q, p, words, corr ? &*corr : nullptr));
  return 0;
}

int run_reduced(RunConfig const &c)
{
  auto geom = reduced::build_reduced_geometry(c.case_id, c.n);
  reduced::Vec3 p = c.p.empty() ? reduced::default_point() : read_vec<3>(c.p, "--p");
  reduced::Vec3 dir = c.dir.empty() ? reduced::default_direction() : read_vec<3>(c.dir, "--dir");
  bool regular = !c.singular;
  auto schedule = [&] { return reduced::focal_schedule(geom, p, dir, c.t, regular); };
  auto tautness = [&] {
    reduced::Vec4 q3 = c.q3.empty() ? reduced::Vec4(0.8, 0.1, -0.3, 0.5) : read_vec<4>(c.q3, "--q3");
    reduced::Vec4 p3 = c.p3.empty() ? reduced::Vec4(0.3, 0.5, -0.2, 0.7) : read_vec<4>(c.p3, "--p3");
    return reduced::orbit_critical_data(geom, q3, p3);
  };
  if (c.emit == "schedule")
  {
    auto s = schedule();
    std::cout << "t = " << s.t << "\n";
    for (auto const &it : s.items)
    {
      std::cout << "  s = " << std::setprecision(12) << it.param << "  " << reduced::to_string(it.kind)
                << "  m = " << it.multiplicity << "  circles";
      for (int l : it.labels)
        std::cout << " " << geom.circles[static_cast<std::size_t>(l)].name;
      std::cout << "\n";
    }
    std::cout << "total " << s.total_multiplicity() << "\n";
    return 0;
  }
  if (c.emit == "collapses")
  {
    auto ev = reduced::collapse_events(geom, p, dir);
    int d2 = 0, d3 = 0;
    for (auto const &e : ev)
    {
      (e.order == 2 ? d2 : d3)++;
      std::cout << (e.order == 2 ? "double" : "triple") << "  t* = " << std::setprecision(12) << e.t_star
                << "  s* = " << e.s_star << "  circles";
      for (int l : e.labels)
        std::cout << " " << geom.circles[static_cast<std::size_t>(l)].name;
      std::cout << "\n";
    }
    std::cout << d2 << " double, " << d3 << " triple\n";
    return 0;
  }
  if (c.emit == "cycle")
  {
    auto cd = reduced::assemble_cycle(geom, p, dir, regular, c.q_param);
    std::cout << "q = " << cd.q_param << "  prefix letters " << cd.prefix.size();
    if (cd.tail)
    {
      auto chk = reduced::check_bundle(*cd.tail);
      std::cout << "  bundle fiber " << cd.tail->fiber_dimension() << "  events " << cd.tail->events.size()
                << "  cycle condition " << (chk.ok() ? "holds" : "FAILS");
    }
    std::cout << "\ntotal dimension " << cd.total_dim << "\n";
    return 0;
  }
  if (c.emit == "tautness")
  {
    auto t = tautness();
    std::cout << "special circles " << t.special_circles << "  critical points " << t.critical.size() << "\n";
    std::cout << "Morse polynomial " << t.polynomial.to_string() << "\n";
    return 0;
  }
  json j = {{"schema_version", report::schema_version},
            {"case", geom.case_id},
            {"n", geom.n},
            {"ambient_dim", geom.ambient_dim},
            {"sum_rule", geom.sum_rule_holds()},
            {"p", {p.x(), p.y(), p.z()}},
            {"dir", {dir.x(), dir.y(), dir.z()}},
            {"regular", regular}};
  j["schedule"] = report::schedule_json(schedule());
  if (regular)
    j["collapses"] = report::collapses_json(reduced::collapse_events(geom, p, dir));
  auto cd = reduced::assemble_cycle(geom, p, dir, regular, c.q_param);
  std::optional<reduced::BundleCheck> chk;
  if (cd.tail)
    chk = reduced::check_bundle(*cd.tail);
  j["cycle"] = report::cycle_json(cd, chk ? &*chk : nullptr);
  j["tautness"] = report::tautness_json(tautness());
  print_json(j);
  return 0;
}

int run_verify(RunConfig const &c)
{
  auto rep = numlie::build_representation(c.case_id, c.n);
  auto geom = reduced::build_reduced_geometry(c.case_id, c.n);
  auto r = numlie::verify_reduction(rep, geom, c.samples, c.seed, thread_width(c.threads));
  auto j = report::reduction_json(r, c.ds_tol, c.lemma_tol);
  bool ok = j["ok"].get<bool>();
  if (c.emit == "table")
  {
    auto const &l = j["lemma_checks"];
    std::cout << "case " << r.case_id << " n " << r.n << "  samples " << r.samples << "  seed " << r.seed << "\n"
              << "  max |ds|            " << r.max_ds << "\n"
              << "  mult mismatches     " << r.mult_mismatches << "\n"
              << "  weingarten max      " << l["weingarten_max"].get<double>() << "\n"
              << "  sigma dims          " << l["sigma_dim_min"] << ".." << l["sigma_dim_max"] << "\n"
              << "  crit gradient max   " << l["crit_gradient_max"].get<double>() << "\n"
              << "  off gradient min    " << l["off_gradient_min"].get<double>() << "\n"
              << (ok ? "PASS" : "FAIL") << "\n";
  }
  else
    print_json(j);
  return ok ? 0 : 1;
}

int run_suite(RunConfig const &c)
{
  auto r = suite::run_suite(c.seed, thread_width(c.threads), c.ds_tol, c.lemma_tol);
  if (c.emit == "table")
  {
    for (auto const &cr : r.report["criteria"])
      std::cout << (cr["ok"].get<bool>() ? "PASS " : "FAIL ") << cr["id"] << " "
                << cr["name"].get<std::string>() << "\n";
    std::cout << (r.ok ? "suite passed" : "suite FAILED") << "\n";
  }
  else
    print_json(r.report);
  return r.ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Bruhat cells, Morse cycles and reduced focal data for taut orbits", "taut-cycles"};
  app.require_subcommand(1);
  RunConfig c;

  auto threads = [&](CLI::App *s) {
    s->add_option("--threads", c.threads, "parallelism width (TAUT_CYCLES_THREADS caps it)")
        ->check(CLI::PositiveNumber);
  };
  auto tolerances = [&](CLI::App *s) {
    s->add_option("--ds-tol", c.ds_tol, "focal parameter tolerance")->check(CLI::PositiveNumber);
    s->add_option("--lemma-tol", c.lemma_tol, "lemma residual tolerance")->check(CLI::PositiveNumber);
  };

  app.fallthrough();
  auto *roots = app.add_subcommand("roots", "root system and Weyl group");
  roots->add_option("--spec", c.spec, "root system JSON")->required();
  roots->add_option("--emit", c.emit)->check(CLI::IsMember({"roots", "weyl", "json"}));

  auto *bru = app.add_subcommand("bruhat", "Bruhat cells of G/P_theta");
  bru->add_option("--spec", c.spec, "root system JSON")->required();
  bru->add_option("--theta", c.theta, "simple-root positions, e.g. 0,2");
  bru->add_option("--emit", c.emit)->check(CLI::IsMember({"cells", "poincare", "json"}));

  auto *mor = app.add_subcommand("morse", "Morse indices of the height function on K p");
  mor->add_option("--spec", c.spec, "root system JSON")->required();
  mor->add_option("--p", c.p, "point p")->required();
  mor->add_option("--q", c.q, "regular point q")->required();
  mor->add_option("--basis", c.basis, "coordinates of p and q")
      ->check(CLI::IsMember({"ambient", "simple", "auto"}));
  mor->add_option("--emit", c.emit)->check(CLI::IsMember({"indices", "report", "json"}));

  auto *red = app.add_subcommand("reduced", "focal data on the orbit space S^2");
  red->add_option("--case", c.case_id, "1, 2 or 3")->required();
  red->add_option("--n", c.n, "quaternionic dimension (cases 2, 3)");
  red->add_option("--p", c.p, "base point in R^3");
  red->add_option("--dir", c.dir, "direction in R^3");
  red->add_option("--t", c.t, "rotation of the direction");
  red->add_flag("--singular", c.singular, "p lies on a singular circle");
  red->add_option("--q-param", c.q_param, "arc parameter of q for the cycle");
  red->add_option("--q3", c.q3, "point q in R^4 for tautness");
  red->add_option("--p3", c.p3, "orbit point in R^4 for tautness");
  red->add_option("--emit", c.emit)
      ->check(CLI::IsMember({"schedule", "collapses", "cycle", "tautness", "json"}));

  auto *ver = app.add_subcommand("verify", "numerical focal data against the reduced model");
  ver->add_option("--case", c.case_id, "1, 2 or 3")->required();
  ver->add_option("--n", c.n, "quaternionic dimension (cases 2, 3)");
  ver->add_option("--samples", c.samples, "random points per case")->check(CLI::PositiveNumber);
  ver->add_option("--seed", c.seed, "RNG seed");
  ver->add_option("--emit", c.emit)->check(CLI::IsMember({"table", "json"}));
  threads(ver);
  tolerances(ver);

  auto *sui = app.add_subcommand("suite", "acceptance battery");
  sui->add_option("--seed", c.seed, "RNG seed");
  sui->add_option("--emit", c.emit)->check(CLI::IsMember({"table", "json"}));
  threads(sui);
  tolerances(sui);

  // ini file, one [subcommand] section per subcommand; flags override it
  app.set_config("--config", "", "ini file with [subcommand] sections");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::CallForHelp const &e)
  {
    return app.exit(e);
  }
  catch (CLI::CallForAllHelp const &e)
  {
    return app.exit(e);
  }
  catch (CLI::ParseError const &e)
  {
    app.exit(e);
    return 2;
  }

  try
  {
    auto emit_default = [&](char const *d) {
      if (c.emit.empty())
        c.emit = d;
    };
    if (roots->parsed())
      return emit_default("json"), run_roots(c);
    if (bru->parsed())
      return emit_default("json"), run_bruhat(c);
    if (mor->parsed())
      return emit_default("indices"), run_morse(c);
    if (red->parsed())
      return emit_default("json"), run_reduced(c);
    if (ver->parsed())
      return emit_default("json"), run_verify(c);
    return emit_default("json"), run_suite(c);
  }
  catch (Error const &e)
  {
    print_json(report::error_json(e.kind(), e.what()));
    return 1;
  }
  catch (std::exception const &e)
  {
    std::cout << json{{"schema_version", report::schema_version},
                      {"error", {{"kind", "Internal"}, {"message", e.what()}}}}
                     .dump(2)
              << "\n";
    return 1;
  }
}
