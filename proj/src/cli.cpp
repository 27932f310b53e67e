#include "vtgi/cli.hpp"

#include <algorithm>
#include <sstream>

#include <CLI11.hpp>

#include "vtgi/canon.hpp"
#include "vtgi/catalog.hpp"
#include "vtgi/error.hpp"
#include "vtgi/gitest.hpp"
#include "vtgi/io.hpp"

namespace vtgi::cli
{

namespace
{

using ordered_json = nlohmann::ordered_json;

struct Globals
{
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  Limits limits() const
  {
    Limits l;
    if (budget) {
      l.subsets = *budget;
      l.canon_nodes = *budget;
    }
    return l;
  }

  CanonOptions canon() const
  {
    CanonOptions o;
    o.node_budget = limits().canon_nodes;
    return o;
  }
};

int verdict_exit(Verdict v)
{
  switch (v) {
  case Verdict::GI:
    return kSuccess;
  case Verdict::NOT_GI:
    return kNegative;
  case Verdict::UNKNOWN:
    break;
  }
  return kUnknown;
}

ordered_json points_json(std::vector<Point> const &pts)
{
  ordered_json a = ordered_json::array();
  for (auto p : pts)
    a.push_back(p + 1);
  return a;
}

CommandResult make_result(std::string const &command, ordered_json body, int code,
                          std::string summary)
{
  ordered_json j;
  j["command"] = command;
  for (auto it = body.begin(); it != body.end(); ++it)
    j[it.key()] = it.value();
  return {code, std::move(j), std::move(summary)};
}

CommandResult group_info(std::string const &path)
{
  GroupSpec spec = parse_group_spec(read_file(path));
  PermGroup const &g = spec.group;
  ordered_json j;
  j["name"] = spec.name;
  j["degree"] = g.degree();
  j["order"] = g.order();
  j["transitive"] = g.is_transitive();
  j["primitive"] = g.is_transitive() && g.is_primitive();
  ordered_json orbits = ordered_json::array();
  for (auto const &o : g.orbits())
    orbits.push_back(points_json(o));
  j["orbits"] = orbits;
  j["base"] = points_json(g.base());
  j["generators"] = perms_json(g.generators());
  std::ostringstream os;
  os << (spec.name.empty() ? "group" : spec.name) << ": degree " << g.degree() << ", order "
     << g.order() << (g.is_transitive() ? ", transitive" : ", intransitive");
  return make_result("group info", j, kSuccess, os.str());
}

CommandResult cosetgraph_build(std::string const &path, std::string const &dot)
{
  CosetGraphSpec spec = parse_coset_spec(read_file(path));
  DiGraph g = build(spec);
  auto r = structure_report(spec);
  ordered_json j;
  j["vertices"] = g.order();
  j["arcs"] = g.arc_count();
  j["undirected"] = r.undirected;
  j["connected"] = r.connected;
  j["components"] = r.components;
  j["valency"] = r.valency;
  j["arc_transitive"] = r.g.has_value();
  j["edge_list"] = format_edge_list(g);
  if (!dot.empty())
    write_file(dot, to_dot(g));
  std::ostringstream os;
  os << "coset graph: " << g.order() << " vertices, valency " << r.valency << ", "
     << (r.undirected ? "undirected" : "directed") << ", " << r.components << " component(s)";
  return make_result("cosetgraph build", j, kSuccess, os.str());
}

CommandResult graph_aut(std::string const &path, Globals const &glob)
{
  DiGraph g = load_edge_list(path);
  auto lab = canonical_labeling(g, glob.canon());
  ordered_json j;
  j["vertices"] = g.order();
  j["arcs"] = g.arc_count();
  j["order"] = lab.automorphisms.order();
  j["generators"] = perms_json(lab.automorphisms.generators());
  j["transitive"] = lab.automorphisms.is_transitive();
  j["certificate"] = canonical_form(g, glob.canon()).hex();
  std::ostringstream os;
  os << "|Aut| = " << lab.automorphisms.order();
  return make_result("graph aut", j, kSuccess, os.str());
}

CommandResult graph_iso(std::string const &p1, std::string const &p2, Globals const &glob)
{
  DiGraph a = load_edge_list(p1), b = load_edge_list(p2);
  auto m = isomorphism(a, b, glob.canon());
  ordered_json j;
  j["isomorphic"] = m.has_value();
  if (m) {
    ordered_json images = ordered_json::array();
    for (auto x : m->images())
      images.push_back(x + 1);
    j["mapping"] = images;
  }
  return make_result("graph iso", j, m ? kSuccess : kNegative,
                     m ? "isomorphic" : "not isomorphic");
}

GIVerdict gi_auto(CosetGraphSpec const &spec, Limits const &limits)
{
  if (auto h = gi_sufficient_hall(spec, limits))
    return *h;
  GIVerdict v = gi_by_conjugacy(spec, limits);
  if (v.verdict != Verdict::UNKNOWN)
    return v;
  return gi_by_definition(spec, limits);
}

CommandResult gi_test(std::string const &path, std::string const &method, Globals const &glob)
{
  CosetGraphSpec spec = parse_coset_spec(read_file(path));
  Limits limits = glob.limits();
  GIVerdict v;
  if (method == "def") {
    v = gi_by_definition(spec, limits);
  } else if (method == "conj") {
    v = gi_by_conjugacy(spec, limits);
  } else if (method == "hall") {
    if (auto h = gi_sufficient_hall(spec, limits)) {
      v = *h;
    } else {
      v.method = "hall_sufficient";
      v.reason = "sufficient condition does not apply";
    }
  } else {
    v = gi_auto(spec, limits);
  }
  return make_result("gi test", v.to_json(limits), verdict_exit(v.verdict),
                     to_string(v.verdict) + " (" + v.method + ")");
}

std::string census_summary(CensusReport const &c)
{
  std::ostringstream os;
  os << c.to_json()["verdict"].get<std::string>() << ": " << c.graphs << " coset "
     << (c.directed ? "digraphs" : "graphs") << " over " << c.subgroups.size()
     << " subgroup class(es), " << c.non_gi << " not GI";
  return os.str();
}

CommandResult gi_census(std::string const &path, bool directed, Globals const &glob)
{
  GroupSpec g = parse_group_spec(read_file(path));
  Limits limits = glob.limits();
  CensusReport c = dgi_census(g.group, directed, limits);
  ordered_json j;
  j["group"] = group_spec_to_json(g.name, g.group);
  j["census"] = c.to_json();
  j["budget"] = limits.to_json();
  return make_result("gi census", j, verdict_exit(c.verdict), census_summary(c));
}

CommandResult forty_vertex_cmd(Globals const &glob)
{
  Limits limits = glob.limits();
  FortyVertexExample ex = forty_vertex_example();
  PermGroup aut = automorphisms(ex.graph, glob.canon());
  std::size_t valency = ex.graph.out_degree(0);
  bool regular = true;
  for (Point v = 0; v < ex.graph.order(); ++v)
    regular = regular && ex.graph.out_degree(v) == valency;

  GIVerdict v;
  v.method = "conjugacy";
  auto t = transporter(aut, ex.P, ex.Q);
  v.verdict = t ? Verdict::UNKNOWN : Verdict::NOT_GI;
  if (t)
    v.reason = "the two S6 subgroups are conjugate";
  v.witnesses["aut_order"] = aut.order();
  v.witnesses["P"] = perms_json(ex.P.generators());
  v.witnesses["Q"] = perms_json(ex.Q.generators());
  v.witnesses["sigma"] = format_cycles(ex.sigma);

  auto reg = has_regular_subgroup(aut, ex.graph.order(), limits);

  ordered_json j;
  j["vertices"] = ex.graph.order();
  j["valency"] = valency;
  j["regular"] = regular;
  j["connected"] = weak_components(ex.graph).size() == 1;
  j["undirected"] = ex.graph.is_undirected();
  j["arc_transitive"] = ex.arc_transitive;
  j["group_order"] = ex.G.order();
  j["involution"] = format_cycles(ex.g);
  j["valid_involutions"] = ex.valid_involutions;
  j["valid_double_cosets"] = ex.valid_double_cosets;
  j["s6_classes"] = ex.s6_classes;
  j["aut_order"] = aut.order();
  j["cayley"] = reg.has_value();
  j["certificate"] = v.to_json(limits);

  std::ostringstream os;
  os << "40-vertex graph: valency " << valency << ", |Aut| = " << aut.order() << ", "
     << to_string(v.verdict) << ", " << (reg ? "Cayley" : "non-Cayley");
  int code = v.verdict == Verdict::NOT_GI ? kNegative : kUnknown;
  return make_result("paper example-3-3", j, code, os.str());
}

CommandResult component_example_cmd(std::size_t m, std::size_t n, Globals const &glob)
{
  Limits limits = glob.limits();
  ComponentExample ex = component_example(m, n);
  auto cert = non_gi_component_certificate(ex.G, ex.H, ex.S, ex.phi, limits);
  GIVerdict v;
  if (cert) {
    v = *cert;
  } else {
    v.method = "component_certificate";
    v.reason = "an automorphism of G relates the two components";
  }
  ordered_json j;
  j["m"] = m;
  j["n"] = n;
  j["a"] = format_cycles(ex.a);
  j["b"] = format_cycles(ex.b);
  j["subgroup"] = perms_json(ex.H.generators());
  j["connection_set"] = perms_json(ex.S);
  j["vertices"] = ex.G.order() / ex.H.order();
  j["certificate"] = v.to_json(limits);
  std::ostringstream os;
  os << "A" << n << " coset graph on " << ex.G.order() / ex.H.order()
     << " vertices (not built): " << to_string(v.verdict);
  return make_result("paper example-3-2", j, verdict_exit(v.verdict), os.str());
}

CommandResult dihedral_census_cmd(std::uint32_t p, Globals const &glob)
{
  bool prime = p >= 3;
  for (std::uint32_t d = 2; d * d <= p && prime; ++d)
    prime = p % d != 0;
  if (!prime)
    throw InputError("--p must be an odd prime");
  Limits limits = glob.limits();
  NamedGroup d = dihedral(2 * p);
  CensusReport c = dgi_census(d.group, true, limits);
  ordered_json j;
  j["p"] = p;
  j["group"] = group_spec_to_json(d.name, d.group);
  j["census"] = c.to_json();
  j["budget"] = limits.to_json();
  return make_result("paper theorem-4-2", j, verdict_exit(c.verdict), d.name + ": " + census_summary(c));
}

CommandResult factorization_row_cmd(std::string const &row)
{
  FactorizationRow r = verify_factorization_row(row);
  ordered_json checks = ordered_json::array();
  for (auto const &c : r.checks) {
    ordered_json e;
    e["T"] = c.T;
    e["K"] = c.K;
    if (c.order_T)
      e["order_T"] = c.order_T;
    else
      e["order_T"] = nullptr; // A_n with n > 20 is not materialized
    e["order_K"] = c.order_K;
    e["index"] = c.index;
    e["symbolic"] = c.symbolic;
    e["confirmed"] = c.confirmed;
    e["a5_generators"] = perms_json(c.a5_images);
    if (!c.note.empty())
      e["note"] = c.note;
    checks.push_back(e);
  }
  ordered_json j;
  j["row"] = row;
  j["confirmed"] = r.confirmed();
  j["checks"] = checks;
  std::ostringstream os;
  os << "row " << row << ": " << r.checks.size() << " factorization(s) "
     << (r.confirmed() ? "confirmed" : "not confirmed");
  return make_result("paper table-1", j, r.confirmed() ? kSuccess : kNegative, os.str());
}

CommandResult catalog_list_cmd()
{
  ordered_json groups = ordered_json::array();
  for (auto const &e : catalog_list()) {
    ordered_json g;
    g["name"] = e.name;
    g["params"] = e.params;
    g["degree"] = e.degree;
    g["order"] = e.order;
    g["provenance"] = e.provenance;
    groups.push_back(g);
  }
  ordered_json j;
  j["groups"] = groups;
  return make_result("catalog list", j, kSuccess, std::to_string(groups.size()) + " constructors");
}

CommandResult error_result(int code, std::string const &kind, std::string const &msg)
{
  ordered_json j;
  j["error"] = kind;
  j["message"] = msg;
  return {code, j, kind + ": " + msg};
}

CommandResult dispatch(std::vector<std::string> args)
{
  CLI::App app{"Coset graphs and the GI property of vertex-transitive graphs", "vtgi"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals glob;
  std::uint64_t budget = 0;
  auto *budget_opt = app.add_option("--budget", budget, "search budget (subsets, canon nodes)");
  app.add_option("--seed", glob.seed, "seed for randomized subcommands");
  app.add_option("--jobs", glob.jobs, "worker threads (searches run single-threaded)")
      ->check(CLI::PositiveNumber);

  std::string a1, a2, dot, method = "auto", row;
  std::size_t m = 2, n = 10;
  std::uint32_t p = 3;
  bool directed = false;

  auto *group = app.add_subcommand("group", "permutation groups")->require_subcommand(1);
  auto *group_info_cmd = group->add_subcommand("info", "order, orbits and base of a group spec");
  group_info_cmd->add_option("spec", a1, "group spec JSON file")->required();

  auto *cosetgraph = app.add_subcommand("cosetgraph", "coset graphs")->require_subcommand(1);
  auto *build_cmd = cosetgraph->add_subcommand("build", "build a coset graph");
  build_cmd->add_option("spec", a1, "coset-graph spec JSON file")->required();
  build_cmd->add_option("--dot", dot, "write DOT output to this file");

  auto *graph = app.add_subcommand("graph", "graphs in edge-list format")->require_subcommand(1);
  auto *aut_cmd = graph->add_subcommand("aut", "automorphism group and canonical certificate");
  aut_cmd->add_option("graph", a1, "edge-list file")->required();
  auto *iso_cmd = graph->add_subcommand("iso", "isomorphism between two graphs");
  iso_cmd->add_option("g1", a1, "edge-list file")->required();
  iso_cmd->add_option("g2", a2, "edge-list file")->required();

  auto *gi = app.add_subcommand("gi", "GI tests")->require_subcommand(1);
  auto *test_cmd = gi->add_subcommand("test", "decide GI for one coset graph");
  test_cmd->add_option("spec", a1, "coset-graph spec JSON file")->required();
  test_cmd->add_option("--method", method, "def | conj | hall | auto")
      ->check(CLI::IsMember({"def", "conj", "hall", "auto"}));
  auto *census_cmd = gi->add_subcommand("census", "GI status of every coset graph of a group");
  census_cmd->add_option("spec", a1, "group spec JSON file")->required();
  census_cmd->add_flag("--directed", directed, "digraphs instead of undirected graphs");

  auto *paper = app.add_subcommand("paper", "worked examples")->require_subcommand(1);
  auto *forty_cmd = paper->add_subcommand("example-3-3", "non-Cayley non-GI graph on 40 vertices");
  auto *component_cmd = paper->add_subcommand("example-3-2", "component certificate in A_n");
  component_cmd->add_option("--m", m, "number of 2-cycles in b")->check(CLI::PositiveNumber);
  component_cmd->add_option("--n", n, "degree of A_n")->check(CLI::PositiveNumber);
  auto *dihedral_cmd = paper->add_subcommand("theorem-4-2", "directed census of D_2p");
  dihedral_cmd->add_option("--p", p, "odd prime")->required();
  auto *rows_cmd = paper->add_subcommand("table-1", "factorizations T = A5 K");
  rows_cmd->add_option("--row", row, "1..8, A10, A12, A15, A20, A30, A60")->required();

  auto *catalog = app.add_subcommand("catalog", "named groups")->require_subcommand(1);
  auto *list_cmd = catalog->add_subcommand("list", "available constructors");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (CLI::CallForHelp const &e) {
    return {kSuccess, nullptr, app.help()};
  } catch (CLI::CallForAllHelp const &e) {
    return {kSuccess, nullptr, app.help("", CLI::AppFormatMode::All)};
  } catch (CLI::ParseError const &e) {
    return error_result(kInputError, "usage", e.what());
  }
  if (*budget_opt)
    glob.budget = budget;

  if (*group_info_cmd)
    return group_info(a1);
  if (*build_cmd)
    return cosetgraph_build(a1, dot);
  if (*aut_cmd)
    return graph_aut(a1, glob);
  if (*iso_cmd)
    return graph_iso(a1, a2, glob);
  if (*test_cmd)
    return gi_test(a1, method, glob);
  if (*census_cmd)
    return gi_census(a1, directed, glob);
  if (*forty_cmd)
    return forty_vertex_cmd(glob);
  if (*component_cmd)
    return component_example_cmd(m, n, glob);
  if (*dihedral_cmd)
    return dihedral_census_cmd(p, glob);
  if (*rows_cmd)
    return factorization_row_cmd(row);
  if (*list_cmd)
    return catalog_list_cmd();
  return error_result(kInputError, "usage", "no command given");
}

} // namespace

CommandResult run(std::vector<std::string> const &args)
{
  try {
    return dispatch(args);
  } catch (BudgetExceeded const &e) {
    ordered_json j;
    j["verdict"] = "UNKNOWN";
    j["reason"] = e.what();
    return {kUnknown, j, std::string("UNKNOWN: ") + e.what()};
  } catch (InputError const &e) {
    return error_result(kInputError, "input", e.what());
  } catch (std::exception const &e) {
    return error_result(kInternalError, "internal", e.what());
  }
}

} // namespace vtgi::cli
