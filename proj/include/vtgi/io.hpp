#ifndef VTGI_IO_HPP
#define VTGI_IO_HPP

#include <string>
#include <string_view>

#include <json.hpp>

#include "vtgi/cosetgraph.hpp"
#include "vtgi/digraph.hpp"
#include "vtgi/group.hpp"

namespace vtgi
{

struct GroupSpec
{
  std::string name;
  PermGroup group;
};

/// {"degree": n, "generators": ["(1,2,3)", ...], "name": optional}.
/// Errors are InputError naming the JSON path, or line and column for
/// syntax errors.
GroupSpec parse_group_spec(std::string_view text);
GroupSpec group_spec_from_json(nlohmann::json const &j, std::string const &path = "");

/// {"group": <group spec>, "subgroup_gens": [...], "connection_set": [...]}.
CosetGraphSpec parse_coset_spec(std::string_view text);

nlohmann::ordered_json group_spec_to_json(std::string const &name, PermGroup const &g);
nlohmann::ordered_json coset_spec_to_json(CosetGraphSpec const &spec);

/// Whole file as text; InputError when it cannot be opened.
std::string read_file(std::string const &path);
void write_file(std::string const &path, std::string const &text);

DiGraph load_edge_list(std::string const &path);

} // namespace vtgi

#endif // VTGI_IO_HPP
