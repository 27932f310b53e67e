#include "vtgi/io.hpp"

#include <fstream>
#include <sstream>

#include "vtgi/error.hpp"
#include "vtgi/gitest.hpp"

namespace vtgi
{

namespace
{

using json = nlohmann::json;

[[noreturn]] void fail(std::string const &path, std::string const &what)
{
  throw InputError((path.empty() ? std::string("/") : path) + ": " + what);
}

json parse_text(std::string_view text)
{
  try {
    return json::parse(text);
  } catch (json::parse_error const &e) {
    // e.what() carries line and column
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

json const &field(json const &j, std::string const &path, char const *key)
{
  if (!j.is_object())
    fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<Permutation> perm_list(json const &a, std::string const &path, std::size_t degree)
{
  if (!a.is_array())
    fail(path, "expected an array of cycle strings");
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string p = path + "/" + std::to_string(i);
    if (!a[i].is_string())
      fail(p, "expected a cycle string");
    try {
      out.push_back(parse_cycles(a[i].get<std::string>(), degree));
    } catch (InputError const &e) {
      fail(p, e.what());
    }
  }
  return out;
}

} // namespace

GroupSpec group_spec_from_json(json const &j, std::string const &path)
{
  auto const &d = field(j, path, "degree");
  if (!d.is_number_unsigned() || d.get<std::uint64_t>() == 0)
    fail(path + "/degree", "expected a positive integer");
  std::size_t degree = d.get<std::size_t>();
  if (degree > 1'000'000)
    fail(path + "/degree", "degree too large");
  GroupSpec out;
  out.group = PermGroup(degree, perm_list(field(j, path, "generators"), path + "/generators", degree));
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string())
      fail(path + "/name", "expected a string");
    out.name = it->get<std::string>();
  }
  return out;
}

GroupSpec parse_group_spec(std::string_view text)
{
  return group_spec_from_json(parse_text(text));
}

CosetGraphSpec parse_coset_spec(std::string_view text)
{
  json j = parse_text(text);
  GroupSpec g = group_spec_from_json(field(j, "", "group"), "/group");
  std::size_t n = g.group.degree();
  PermGroup h(n, perm_list(field(j, "", "subgroup_gens"), "/subgroup_gens", n));
  if (!h.is_subgroup_of(g.group))
    fail("/subgroup_gens", "not contained in the group");
  auto s = perm_list(field(j, "", "connection_set"), "/connection_set", n);
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::string p = "/connection_set/" + std::to_string(i);
    if (!g.group.contains(s[i]))
      fail(p, "not an element of the group");
    if (h.contains(s[i]))
      fail(p, "lies in the subgroup");
  }
  return CosetGraphSpec(std::move(g.group), std::move(h), std::move(s));
}

nlohmann::ordered_json group_spec_to_json(std::string const &name, PermGroup const &g)
{
  nlohmann::ordered_json j;
  j["degree"] = g.degree();
  j["generators"] = perms_json(g.generators());
  if (!name.empty())
    j["name"] = name;
  return j;
}

nlohmann::ordered_json coset_spec_to_json(CosetGraphSpec const &spec)
{
  nlohmann::ordered_json j;
  j["group"] = group_spec_to_json("", spec.G());
  j["subgroup_gens"] = perms_json(spec.H().generators());
  j["connection_set"] = perms_json(spec.connection_set);
  return j;
}

std::string read_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(std::string const &path, std::string const &text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw InputError("cannot write " + path);
}

DiGraph load_edge_list(std::string const &path)
{
  try {
    return parse_edge_list(read_file(path));
  } catch (InputError const &e) {
    throw InputError(path + ": " + e.what());
  }
}

} // namespace vtgi
