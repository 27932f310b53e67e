#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include "vtgi/cli.hpp"
#include "vtgi/digraph.hpp"
#include "vtgi/error.hpp"
#include "vtgi/io.hpp"

using namespace vtgi;
using nlohmann::json;

namespace
{

std::string const kSource = VTGI_SOURCE_DIR;

std::string fixture(std::string const &name) { return kSource + "/tests/data/" + name; }

json load_schema(std::string const &name)
{
  static std::map<std::string, json> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, json::parse(read_file(kSource + "/docs/schemas/" + name))).first;
  return it->second;
}

bool has_type(json const &v, std::string const &t)
{
  if (t == "object")
    return v.is_object();
  if (t == "array")
    return v.is_array();
  if (t == "string")
    return v.is_string();
  if (t == "integer")
    return v.is_number_integer();
  if (t == "boolean")
    return v.is_boolean();
  if (t == "null")
    return v.is_null();
  return false;
}

/// The subset of JSON Schema the shipped schemas use: $ref, type, const,
/// enum, minimum, properties, required, additionalProperties, items.
void validate(json const &v, json const &schema, std::string const &path,
              std::vector<std::string> &errors)
{
  if (schema.contains("$ref")) {
    validate(v, load_schema(schema["$ref"].get<std::string>()), path, errors);
    return;
  }
  if (schema.contains("type")) {
    auto const &t = schema["type"];
    bool ok = false;
    if (t.is_array()) {
      for (auto const &x : t)
        ok = ok || has_type(v, x.get<std::string>());
    } else {
      ok = has_type(v, t.get<std::string>());
    }
    if (!ok) {
      errors.push_back(path + ": wrong type");
      return;
    }
  }
  if (schema.contains("const") && v != schema["const"])
    errors.push_back(path + ": const mismatch");
  if (schema.contains("enum")) {
    bool found = false;
    for (auto const &e : schema["enum"])
      found = found || e == v;
    if (!found)
      errors.push_back(path + ": not in enum");
  }
  if (schema.contains("minimum") && v.is_number() && v.get<double>() < schema["minimum"].get<double>())
    errors.push_back(path + ": below minimum");
  if (v.is_object()) {
    for (auto const &r : schema.value("required", json::array()))
      if (!v.contains(r.get<std::string>()))
        errors.push_back(path + ": missing " + r.get<std::string>());
    auto props = schema.value("properties", json::object());
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (props.contains(it.key()))
        validate(it.value(), props[it.key()], path + "/" + it.key(), errors);
      else if (schema.value("additionalProperties", true) == false)
        errors.push_back(path + ": unexpected " + it.key());
    }
  }
  if (v.is_array() && schema.contains("items"))
    for (std::size_t i = 0; i < v.size(); ++i)
      validate(v[i], schema["items"], path + "/" + std::to_string(i), errors);
}

void check_schema(nlohmann::ordered_json const &payload, std::string const &schema)
{
  std::vector<std::string> errors;
  validate(json::parse(payload.dump()), load_schema(schema + ".schema.json"), "", errors);
  for (auto const &e : errors)
    FAIL_CHECK(schema << " " << e);
}

cli::CommandResult run(std::vector<std::string> args) { return cli::run(args); }

void check_golden(std::string const &name, std::vector<std::string> const &args)
{
  auto r = run(args);
  std::string text = r.payload.dump(2) + "\n";
  std::string path = kSource + "/tests/golden/" + name + ".json";
  if (std::getenv("VTGI_UPDATE_GOLDEN")) {
    write_file(path, text);
    return;
  }
  REQUIRE_MESSAGE(std::filesystem::exists(path), path);
  CHECK_MESSAGE(read_file(path) == text, "golden mismatch: " << name);
}

} // namespace

TEST_CASE("group info")
{
  auto r = run({"group", "info", fixture("d10.json")});
  CHECK(r.exit_code == cli::kSuccess);
  CHECK(r.payload["order"] == 10);
  CHECK(r.payload["name"] == "D10");
  CHECK(r.payload["primitive"] == true);
  CHECK(r.payload["orbits"].size() == 1);
  check_schema(r.payload, "group-info");
}

TEST_CASE("cosetgraph build writes DOT")
{
  auto dot = (std::filesystem::temp_directory_path() / "vtgi_test.dot").string();
  std::filesystem::remove(dot);
  auto r = run({"cosetgraph", "build", fixture("d10_reflection.json"), "--dot", dot});
  CHECK(r.exit_code == cli::kSuccess);
  CHECK(r.payload["vertices"] == 5);
  CHECK(r.payload["valency"] == 2);
  CHECK(r.payload["undirected"] == true);
  check_schema(r.payload, "cosetgraph-build");
  DiGraph g = parse_edge_list(r.payload["edge_list"].get<std::string>());
  CHECK(g.order() == 5);
  CHECK(read_file(dot).find("graph") != std::string::npos);
}

TEST_CASE("graph aut and iso")
{
  auto r = run({"graph", "aut", fixture("c5.edges")});
  CHECK(r.exit_code == cli::kSuccess);
  CHECK(r.payload["order"] == 10);
  check_schema(r.payload, "graph-aut");
  auto r2 = run({"graph", "aut", fixture("c5_relabeled.edges")});
  CHECK(r.payload["certificate"] == r2.payload["certificate"]);

  auto iso = run({"graph", "iso", fixture("c5.edges"), fixture("c5_relabeled.edges")});
  CHECK(iso.exit_code == cli::kSuccess);
  check_schema(iso.payload, "graph-iso");
  std::vector<Point> img;
  for (auto const &x : iso.payload["mapping"])
    img.push_back(x.get<Point>() - 1);
  CHECK(is_isomorphism(load_edge_list(fixture("c5.edges")), load_edge_list(fixture("c5_relabeled.edges")),
                       Permutation(img)));

  auto no = run({"graph", "iso", fixture("c5.edges"), fixture("bull.edges")});
  CHECK(no.exit_code == cli::kNegative);
  CHECK(no.payload["isomorphic"] == false);
  check_schema(no.payload, "graph-iso");
}

TEST_CASE("gi test methods and exit codes")
{
  for (std::string m : {"def", "conj", "auto"}) {
    auto r = run({"gi", "test", fixture("z8_cayley.json"), "--method", m});
    CHECK(r.exit_code == cli::kNegative);
    CHECK(r.payload["verdict"] == "NOT_GI");
    check_schema(r.payload, "gi-test");
    auto ok = run({"gi", "test", fixture("d10_reflection.json"), "--method", m});
    CHECK(ok.exit_code == cli::kSuccess);
    check_schema(ok.payload, "gi-test");
  }
  auto h = run({"gi", "test", fixture("f21_cayley.json"), "--method", "hall"});
  CHECK(h.exit_code == cli::kSuccess);
  CHECK(h.payload["method"] == "hall_sufficient");
  auto hu = run({"gi", "test", fixture("z8_cayley.json"), "--method", "hall"});
  CHECK(hu.exit_code == cli::kUnknown);
  check_schema(hu.payload, "gi-test");

  auto tight = run({"--budget", "4", "gi", "test", fixture("z8_cayley.json"), "--method", "def"});
  CHECK(tight.exit_code == cli::kUnknown);
  CHECK(tight.payload["budget"]["subsets"] == 4);
  // global flags are accepted after the subcommand too
  auto late = run({"gi", "test", fixture("z8_cayley.json"), "--method", "def", "--budget", "4"});
  CHECK(late.payload == tight.payload);
  CHECK(run({"--jobs", "4", "--seed", "9", "gi", "test", fixture("z8_cayley.json")}).payload ==
        run({"gi", "test", fixture("z8_cayley.json")}).payload);
}

TEST_CASE("gi census")
{
  auto r = run({"gi", "census", fixture("z8.json"), "--directed"});
  CHECK(r.exit_code == cli::kNegative);
  CHECK(r.payload["census"]["verdict"] == "NOT_DGI");
  CHECK(r.payload["census"]["graphs"] == 128);
  check_schema(r.payload, "gi-census");
  auto u = run({"gi", "census", fixture("d10.json")});
  CHECK(u.exit_code == cli::kSuccess);
  CHECK(u.payload["census"]["verdict"] == "GI");
  check_schema(u.payload, "gi-census");
}

TEST_CASE("worked example commands")
{
  auto t = run({"paper", "theorem-4-2", "--p", "5"});
  CHECK(t.exit_code == cli::kSuccess);
  CHECK(t.payload["census"]["verdict"] == "DGI");
  check_schema(t.payload, "dihedral-census");
  CHECK(run({"paper", "theorem-4-2", "--p", "9"}).exit_code == cli::kInputError);

  auto e = run({"paper", "example-3-2", "--m", "2", "--n", "10"});
  CHECK(e.exit_code == cli::kNegative);
  CHECK(e.payload["certificate"]["witnesses"]["invariant"] == "cycle_type_census");
  check_schema(e.payload, "component-certificate");
  CHECK(run({"paper", "example-3-2", "--m", "2", "--n", "9"}).exit_code == cli::kInputError);

  auto x = run({"paper", "example-3-3"});
  CHECK(x.exit_code == cli::kNegative);
  CHECK(x.payload["certificate"]["verdict"] == "NOT_GI");
  CHECK(x.payload["cayley"] == false);
  CHECK(x.payload["vertices"] == 40);
  check_schema(x.payload, "forty-vertex");

  for (std::string row : {"1", "8", "A10", "A60"}) {
    auto r = run({"paper", "table-1", "--row", row});
    CHECK(r.exit_code == cli::kSuccess);
    check_schema(r.payload, "factorization-row");
  }
  CHECK(run({"paper", "table-1", "--row", "0"}).exit_code == cli::kInputError);

  auto c = run({"catalog", "list"});
  CHECK(c.exit_code == cli::kSuccess);
  check_schema(c.payload, "catalog-list");
}

TEST_CASE("errors")
{
  auto u = run({"frobnicate"});
  CHECK(u.exit_code == cli::kInputError);
  check_schema(u.payload, "error");
  CHECK(run({}).exit_code == cli::kInputError);
  CHECK(run({"gi", "test", fixture("z8_cayley.json"), "--method", "magic"}).exit_code == cli::kInputError);
  CHECK(run({"group", "info", fixture("missing.json")}).exit_code == cli::kInputError);

  auto dir = std::filesystem::temp_directory_path();
  auto bad = (dir / "vtgi_bad.json").string();
  write_file(bad, "{\"degree\": 4,\n \"generators\": [\"(1,2)\",\n");
  auto r = run({"group", "info", bad});
  CHECK(r.exit_code == cli::kInputError);
  CHECK(r.payload["message"].get<std::string>().find("line 3") != std::string::npos);

  write_file(bad, R"j({"degree": 4, "generators": ["(1,2)", "(3,5)"]})j");
  r = run({"group", "info", bad});
  CHECK(r.payload["message"].get<std::string>().find("/generators/1") != std::string::npos);

  r = run({"gi", "test", fixture("bad_subgroup.json")});
  CHECK(r.exit_code == cli::kInputError);
  CHECK(r.payload["message"].get<std::string>().find("/subgroup_gens") != std::string::npos);

  r = run({"graph", "aut", fixture("bad.edges")});
  CHECK(r.exit_code == cli::kInputError);
  CHECK(r.payload["message"].get<std::string>().find("line 6") != std::string::npos);

  auto help = run({"--help"});
  CHECK(help.exit_code == cli::kSuccess);
  CHECK(help.payload.is_null());
  CHECK(help.summary.find("paper") != std::string::npos);
}

TEST_CASE("spec files round-trip")
{
  for (std::string f : {"d10.json", "z8.json"}) {
    auto text = read_file(fixture(f));
    std::vector<std::string> errors;
    validate(json::parse(text), load_schema("group-spec.schema.json"), "", errors);
    CHECK(errors.empty());
    auto g = parse_group_spec(text);
    auto again = parse_group_spec(group_spec_to_json(g.name, g.group).dump());
    CHECK(again.name == g.name);
    CHECK(again.group.same_group(g.group));
  }
  for (std::string f : {"d10_reflection.json", "z8_cayley.json", "f21_cayley.json"}) {
    auto text = read_file(fixture(f));
    std::vector<std::string> errors;
    validate(json::parse(text), load_schema("coset-graph-spec.schema.json"), "", errors);
    CHECK(errors.empty());
    auto s = parse_coset_spec(text);
    auto again = parse_coset_spec(coset_spec_to_json(s).dump());
    CHECK(build(again) == build(s));
  }
}

TEST_CASE("golden outputs are byte-stable")
{
  check_golden("forty-vertex", {"paper", "example-3-3"});
  check_golden("component-certificate", {"paper", "example-3-2", "--m", "2", "--n", "10"});
  check_golden("dihedral-census-p3", {"paper", "theorem-4-2", "--p", "3"});
  check_golden("dihedral-census-p5", {"paper", "theorem-4-2", "--p", "5"});
  check_golden("factorization-row1", {"paper", "table-1", "--row", "1"});
  check_golden("factorization-row4", {"paper", "table-1", "--row", "4"});
  check_golden("factorization-A10", {"paper", "table-1", "--row", "A10"});
  check_golden("catalog-list", {"catalog", "list"});
}
