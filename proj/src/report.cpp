#include "taut/report.hpp"

#include <fstream>
#include <sstream>

namespace taut::report
{

namespace
{

[[noreturn]] void bad(std::string const &msg)
{
  throw Error(ErrorKind::InvalidSpec, msg);
}

int get_int(json const &j, char const *what)
{
  if (!j.is_number_integer())
    bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::optional<int> opt_int(json const &obj, char const *key)
{
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null())
    return std::nullopt;
  return get_int(*it, key);
}

std::vector<std::string> split(std::string const &text)
{
  std::vector<std::string> out;
  std::string cur;
  for (char c : text)
  {
    if (c == ',')
    {
      out.push_back(cur);
      cur.clear();
    }
    else if (c != ' ' && c != '\t')
      cur += c;
  }
  out.push_back(cur);
  if (out.size() == 1 && out[0].empty())
    out.clear();
  for (auto const &s : out)
    if (s.empty())
      bad("empty entry in list \"" + text + "\"");
  return out;
}

json vec3(reduced::Vec3 const &v)
{
  return json::array({v.x(), v.y(), v.z()});
}

json letter_json(reduced::Letter const &l)
{
  return {{"labels", l.labels}, {"multiplicity", l.multiplicity}, {"mixed", l.mixed}};
}

json items_json(std::vector<reduced::FocalItem> const &items)
{
  json out = json::array();
  for (auto const &it : items)
    out.push_back({{"param", it.param},
                   {"kind", reduced::to_string(it.kind)},
                   {"multiplicity", it.multiplicity},
                   {"labels", it.labels}});
  return out;
}

json event_json(reduced::CollapseEvent const &e)
{
  return {{"t_star", e.t_star}, {"order", e.order},   {"first", e.first},
          {"labels", e.labels}, {"point", vec3(e.point)}, {"s_star", e.s_star}};
}

} // namespace

rootsys::RootSystemSpec parse_spec(json const &j)
{
  if (!j.is_object())
    bad("spec must be a JSON object");
  rootsys::RootSystemSpec spec;
  if (j.contains("factors"))
  {
    if (!j["factors"].is_array() || j["factors"].empty())
      bad("factors must be a non-empty array");
    std::vector<rootsys::RootSystemSpec> f;
    for (auto const &x : j["factors"])
      f.push_back(parse_spec(x));
    return rootsys::RootSystemSpec::product(std::move(f));
  }
  if (j.contains("family"))
  {
    if (!j["family"].is_string())
      bad("family must be a string");
    if (!j.contains("rank"))
      bad("catalog spec needs a rank");
    rootsys::MultiplicitySpec m;
    if (j.contains("multiplicities"))
    {
      auto const &mj = j["multiplicities"];
      if (!mj.is_object())
        bad("multiplicities must be an object");
      for (auto const &[k, v] : mj.items())
        if (k != "short" && k != "long" && k != "double")
          bad("unknown multiplicity key \"" + k + "\"");
      m.short_roots = opt_int(mj, "short");
      m.long_roots = opt_int(mj, "long");
      m.double_roots = opt_int(mj, "double");
    }
    return rootsys::RootSystemSpec::catalog(j["family"].get<std::string>(),
                                            get_int(j["rank"], "rank"), m);
  }
  if (j.contains("roots"))
  {
    if (!j["roots"].is_array())
      bad("roots must be an array");
    for (auto const &r : j["roots"])
    {
      if (!r.is_array())
        bad("each root must be an array of integers");
      IntVector v;
      for (auto const &c : r)
      {
        if (!c.is_number_integer())
          bad("root coordinates must be integers");
        v.push_back(c.get<std::int64_t>());
      }
      spec.roots.push_back(std::move(v));
    }
    if (j.contains("mults"))
      for (auto const &m : j["mults"])
        spec.mults.push_back(get_int(m, "mults entry"));
    else
      spec.mults.assign(spec.roots.size(), 1);
    if (!j.contains("simple"))
      bad("explicit spec needs \"simple\"");
    for (auto const &s : j["simple"])
      spec.simple.push_back(get_int(s, "simple entry"));
    if (spec.mults.size() != spec.roots.size())
      bad("mults and roots differ in length");
    return spec;
  }
  bad("spec needs \"family\", \"roots\" or \"factors\"");
}

rootsys::RootSystemSpec load_spec(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    bad("cannot open spec file " + path);
  json j;
  try
  {
    in >> j;
  }
  catch (json::parse_error const &e)
  {
    bad("spec file " + path + ": " + e.what());
  }
  return parse_spec(j);
}

QVector parse_rational_list(std::string const &text)
{
  QVector out;
  for (auto const &s : split(text))
    out.push_back(parse_rational(s));
  return out;
}

std::vector<double> parse_double_list(std::string const &text)
{
  std::vector<double> out;
  for (auto const &s : split(text))
  {
    std::size_t used = 0;
    double v = 0;
    try
    {
      v = std::stod(s, &used);
    }
    catch (std::exception const &)
    {
      used = 0;
    }
    if (used != s.size())
      bad("not a number: \"" + s + "\"");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_index_list(std::string const &text)
{
  std::vector<int> out;
  for (auto const &s : split(text))
  {
    std::size_t used = 0;
    int v = 0;
    try
    {
      v = std::stoi(s, &used);
    }
    catch (std::exception const &)
    {
      used = 0;
    }
    if (used != s.size())
      throw Error(ErrorKind::InvalidTheta, "not an index: \"" + s + "\"");
    out.push_back(v);
  }
  return out;
}

json error_json(ErrorKind kind, std::string const &message)
{
  return {{"schema_version", schema_version},
          {"error", {{"kind", std::string(to_string(kind))}, {"message", message}}}};
}

json vector_json(QVector const &v)
{
  json out = json::array();
  for (auto const &x : v)
    out.push_back(to_string(x));
  return out;
}

json vector_json(IntVector const &v)
{
  return json(v);
}

json roots_json(rootsys::RootSystem const &rs)
{
  json roots = json::array();
  for (int i = 0; i < rs.size(); ++i)
  {
    auto const &r = rs.root(i);
    roots.push_back({{"index", i},
                     {"vector", r.vector},
                     {"multiplicity", r.multiplicity},
                     {"reduced", r.is_reduced},
                     {"positive", r.positive},
                     {"simple_coeffs", r.simple_coeffs}});
  }
  return {{"schema_version", schema_version},
          {"name", rs.name()},
          {"rank", rs.rank()},
          {"ambient_dim", rs.ambient_dim()},
          {"simple", rs.simple_roots()},
          {"roots", roots}};
}

json weyl_json(rootsys::WeylGroup const &group)
{
  json els = json::array();
  for (auto const &w : group.elements())
    els.push_back({{"word", w.word}, {"length", w.length()}});
  return {{"schema_version", schema_version},
          {"name", group.root_system().name()},
          {"order", group.size()},
          {"elements", els}};
}

json bruhat_json(rootsys::RootSystem const &rs, std::vector<int> const &theta,
                 std::vector<bruhat::BruhatCell> const &cells, bruhat::Polynomial const &poincare)
{
  json cj = json::array();
  for (auto const &c : cells)
    cj.push_back({{"word", c.rep.word}, {"dim", c.dimension}});
  return {{"schema_version", schema_version},
          {"name", rs.name()},
          {"theta", theta},
          {"cells", cj},
          {"poincare", poincare.coefficients}};
}

json morse_json(rootsys::WeylGroup const &group, morse::ChamberPoint const &q,
                morse::ChamberPoint const &p, std::vector<morse::CycleWord> const &words,
                morse::CorrespondenceReport const *correspondence)
{
  auto const &rs = group.root_system();
  json cosets = json::array();
  std::vector<int> degrees;
  for (auto const &w : words)
  {
    json walls = json::array();
    for (auto const &wall : w.walls)
      walls.push_back({{"root", rs.root(wall.root).vector},
                       {"multiplicity", wall.multiplicity},
                       {"param", to_string(wall.param)}});
    cosets.push_back({{"representative", group[w.base_coset].word},
                      {"point", vector_json(w.target)},
                      {"walls", walls},
                      {"index", w.dimension()}});
    degrees.push_back(w.dimension());
  }
  json out = {{"schema_version", schema_version},
              {"name", rs.name()},
              {"q", vector_json(q.coords)},
              {"p", vector_json(p.coords)},
              {"theta", p.theta},
              {"cosets", cosets},
              {"morse_polynomial", bruhat::Polynomial::monomial_sum(degrees).coefficients}};
  if (correspondence)
  {
    json rows = json::array();
    for (auto const &c : correspondence->cosets)
      rows.push_back({{"coset", group[c.coset].word},
                      {"w_u", group[c.w_u].word},
                      {"in_W_u", c.in_W_u},
                      {"coset_ok", c.coset_ok},
                      {"index", c.index},
                      {"cell_dimension", c.cell_dimension}});
    out["correspondence"] = {{"cosets", rows},
                             {"bijection", correspondence->bijection},
                             {"multisets_equal", correspondence->multisets_equal},
                             {"poincare", correspondence->poincare.coefficients},
                             {"ok", correspondence->ok()}};
  }
  return out;
}

json schedule_json(reduced::FocalSchedule const &s)
{
  return {{"t", s.t}, {"items", items_json(s.items)}, {"total_multiplicity", s.total_multiplicity()}};
}

json collapses_json(std::vector<reduced::CollapseEvent> const &events)
{
  json out = json::array();
  int doubles = 0, triples = 0;
  for (auto const &e : events)
  {
    out.push_back(event_json(e));
    doubles += e.order == 2;
    triples += e.order == 3;
  }
  return {{"events", out}, {"double", doubles}, {"triple", triples}};
}

json cycle_json(reduced::CycleDescriptor const &c, reduced::BundleCheck const *check)
{
  json out = {{"q_param", c.q_param}, {"prefix", items_json(c.prefix)}, {"total_dim", c.total_dim}};
  if (!c.tail)
  {
    out["tail"] = nullptr;
    return out;
  }
  auto const &b = *c.tail;
  json events = json::array(), arcs = json::array(), gluings = json::array();
  for (auto const &e : b.events)
    events.push_back(event_json(e));
  for (auto const &a : b.arcs)
  {
    json word = json::array();
    for (auto const &l : a.word)
      word.push_back(letter_json(l));
    arcs.push_back({{"start", a.start}, {"end", a.end}, {"word", word}});
  }
  for (auto const &g : b.gluings)
    gluings.push_back({{"order", g.order},
                       {"first", g.first},
                       {"correcting", g.correcting},
                       {"label_perm", g.label_perm}});
  out["tail"] = {{"events", events},
                 {"arcs", arcs},
                 {"gluings", gluings},
                 {"fiber_dimension", b.fiber_dimension()}};
  if (check)
    out["bundle_check"] = {{"words_glue", check->words_glue},
                           {"monodromy", check->monodromy},
                           {"cycle_condition", check->cycle_condition}};
  return out;
}

json tautness_json(reduced::TautnessReport const &t)
{
  json crit = json::array();
  for (auto const &c : t.critical)
    crit.push_back({{"circle", c.circle},
                    {"point", json::array({c.point[0], c.point[1], c.point[2], c.point[3]})},
                    {"distance", c.distance},
                    {"index", c.index}});
  return {{"special_circles", t.special_circles},
          {"critical", crit},
          {"polynomial", t.polynomial.coefficients}};
}

json reduction_json(numlie::ReductionReport const &r, double ds_tol, double lemma_tol)
{
  auto const &l = r.lemma;
  bool lemma_ok = l.weingarten_max < lemma_tol && l.sigma_dim_min == 3 && l.sigma_dim_max == 3 &&
                  l.crit_gradient_max < lemma_tol && l.off_gradient_min > 1e-6;
  return {{"schema_version", schema_version},
          {"case", r.case_id},
          {"n", r.n},
          {"samples", r.samples},
          {"seed", r.seed},
          {"max_ds", r.max_ds},
          {"mult_mismatches", r.mult_mismatches},
          {"resamples", r.resamples},
          {"lemma_checks",
           {{"weingarten_max", l.weingarten_max},
            {"sigma_dim_min", l.sigma_dim_min},
            {"sigma_dim_max", l.sigma_dim_max},
            {"crit_gradient_max", l.crit_gradient_max},
            {"off_gradient_min", l.off_gradient_min},
            {"ok", lemma_ok}}},
          {"ok", r.max_ds < ds_tol && r.mult_mismatches == 0 && lemma_ok}};
}

} // namespace taut::report
