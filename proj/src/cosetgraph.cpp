#include "vtgi/cosetgraph.hpp"

#include <algorithm>
#include <sstream>

namespace vtgi
{

CosetTable::CosetTable(PermGroup g, PermGroup h, std::size_t cap)
  : _g(std::move(g)), _h(std::move(h))
{
  if (!_h.is_subgroup_of(_g))
    throw InputError("H is not a subgroup of G");
  std::uint64_t index = _g.order() / _h.order();
  if (index > cap)
    throw BudgetExceeded("index " + std::to_string(index) + " exceeds the coset cap " +
                         std::to_string(cap));
  _h_elements = _h.elements();

  auto const &gens = _g.generators();
  Permutation id(_g.degree());
  _keys.push_back(key(id));
  _lookup.emplace(_keys[0], 0);
  _parent.push_back(0);
  _parent_gen.push_back(0);
  std::vector<Permutation> walk{id}; // BFS element of each coset
  std::vector<std::vector<Point>> action(gens.size());
  for (std::size_t i = 0; i < _keys.size(); ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Permutation y = walk[i] * gens[k];
      Permutation ky = key(y);
      auto it = _lookup.find(ky);
      Point target;
      if (it == _lookup.end()) {
        target = static_cast<Point>(_keys.size());
        _lookup.emplace(ky, target);
        _keys.push_back(std::move(ky));
        walk.push_back(std::move(y));
        _parent.push_back(static_cast<Point>(i));
        _parent_gen.push_back(static_cast<std::uint32_t>(k));
      } else {
        target = it->second;
      }
      action[k].push_back(target);
    }
  }
  if (_keys.size() != index)
    throw InternalError("coset enumeration found " + std::to_string(_keys.size()) +
                        " cosets, expected " + std::to_string(index));
  for (auto &row : action)
    _hat_gens.emplace_back(std::move(row));

  // Double cosets: orbits of H acting on cosets from the right.
  std::vector<Permutation> h_hats;
  for (auto const &x : _h.generators())
    h_hats.push_back(hat(x));
  std::size_t const n = _keys.size();
  _double_of.assign(n, static_cast<std::size_t>(-1));
  for (Point c = 0; c < n; ++c) {
    if (_double_of[c] != static_cast<std::size_t>(-1))
      continue;
    std::size_t id = _double.size();
    DoubleCoset dc;
    dc.representative = _keys[c];
    dc.members.push_back(c);
    _double_of[c] = id;
    for (std::size_t q = 0; q < dc.members.size(); ++q)
      for (auto const &hh : h_hats) {
        Point d = hh[dc.members[q]];
        if (_double_of[d] == static_cast<std::size_t>(-1)) {
          _double_of[d] = id;
          dc.members.push_back(d);
        }
      }
    std::sort(dc.members.begin(), dc.members.end());
    _double.push_back(std::move(dc));
  }
  for (auto const &dc : _double)
    _inverse.push_back(_double_of[coset_of(dc.representative.inverse())]);
}

Permutation CosetTable::key(Permutation const &x) const
{
  Permutation best = _h_elements[0] * x;
  for (std::size_t i = 1; i < _h_elements.size(); ++i) {
    Permutation c = _h_elements[i] * x;
    if (c < best)
      best = std::move(c);
  }
  return best;
}

Point CosetTable::coset_of(Permutation const &x) const
{
  auto it = _lookup.find(key(x));
  if (it == _lookup.end())
    throw InputError("element is not in G");
  return it->second;
}

bool CosetTable::same_coset(Permutation const &x, Permutation const &y) const
{
  return _h.contains(y * x.inverse());
}

Permutation CosetTable::hat(Permutation const &x) const
{
  if (!_g.contains(x))
    throw InputError("element is not in G");
  // coset c = H w_c; H w_c x is found through the canonical key
  std::vector<Point> img(index());
  for (std::size_t c = 0; c < index(); ++c)
    img[c] = coset_of(_keys[c] * x);
  return Permutation(std::move(img));
}

PermGroup CosetTable::hat_group() const
{
  PermGroup hat(index(), _hat_gens);
  if (hat.order() != _g.order()) {
    PermGroup core = core_of(_g, _h);
    std::ostringstream os;
    os << "H is not core-free: core of order " << core.order() << " generated by";
    for (auto const &c : core.generators())
      os << ' ' << format_cycles(c);
    throw CoreNotTrivial(os.str(), std::move(core));
  }
  return hat;
}

std::vector<std::size_t> CosetTable::admissible() const
{
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < _double.size(); ++k)
    if (k != _double_of[0])
      out.push_back(k);
  return out;
}

void CosetTable::for_each_transversal(
  std::function<void(Point, Permutation const &)> const &f) const
{
  // hat of each BFS word, walking the BFS tree depth first
  std::size_t const n = index();
  std::vector<std::vector<Point>> children(n);
  for (Point i = 1; i < n; ++i)
    children[_parent[i]].push_back(i);
  std::vector<std::pair<Point, Permutation>> stack;
  stack.emplace_back(0, Permutation(n));
  while (!stack.empty()) {
    auto [i, perm] = std::move(stack.back());
    stack.pop_back();
    f(i, perm);
    for (Point c : children[i])
      stack.emplace_back(c, perm * _hat_gens[_parent_gen[c]]);
  }
}

DiGraph CosetTable::graph(std::vector<char> const &selected) const
{
  if (selected.size() != _double.size())
    throw InputError("selection size differs from the number of double cosets");
  if (selected[_double_of[0]])
    throw InputError("connection set meets H");
  std::vector<Point> hsh;
  for (Point c = 0; c < index(); ++c)
    if (selected[_double_of[c]])
      hsh.push_back(c);
  DiGraph out(index());
  // neighbours of coset i: H s w_i for the cosets Hs in HSH
  for_each_transversal([&](Point i, Permutation const &w) {
    for (Point c : hsh)
      out.add_edge(i, w[c]);
  });
  return out;
}

std::vector<DiGraph> const &CosetTable::orbital_graphs() const
{
  if (!_orbitals) {
    auto graphs = std::make_shared<std::vector<DiGraph>>(_double.size(), DiGraph(index()));
    for_each_transversal([&](Point i, Permutation const &w) {
      for (Point c = 1; c < index(); ++c)
        (*graphs)[_double_of[c]].add_edge(i, w[c]);
    });
    _orbitals = std::move(graphs);
  }
  return *_orbitals;
}

CosetTable coset_table(PermGroup const &g, PermGroup const &h, std::size_t cap)
{
  return CosetTable(g, h, cap);
}

std::vector<DoubleCoset> double_coset_decomposition(CosetTable const &t)
{
  return t.double_cosets();
}

CosetGraphSpec::CosetGraphSpec(PermGroup g, PermGroup h, std::vector<Permutation> s,
                               std::size_t cap)
  : CosetGraphSpec(std::make_shared<CosetTable const>(std::move(g), std::move(h), cap),
                   std::move(s))
{
}

CosetGraphSpec::CosetGraphSpec(std::shared_ptr<CosetTable const> t,
                               std::vector<Permutation> s)
  : table(std::move(t)), connection_set(std::move(s))
{
  selected.assign(table->double_cosets().size(), 0);
  for (std::size_t i = 0; i < connection_set.size(); ++i) {
    auto const &x = connection_set[i];
    if (!G().contains(x))
      throw InputError("connection set element " + std::to_string(i + 1) + " " +
                       format_cycles(x) + " is not in G");
    if (H().contains(x))
      throw InputError("connection set element " + std::to_string(i + 1) + " " +
                       format_cycles(x) + " lies in H");
    selected[table->double_coset_of_coset(table->coset_of(x))] = 1;
  }
}

CosetGraphSpec CosetGraphSpec::from_selection(std::shared_ptr<CosetTable const> t,
                                              std::vector<char> sel)
{
  CosetGraphSpec spec;
  spec.table = std::move(t);
  if (sel.size() != spec.table->double_cosets().size())
    throw InputError("selection size differs from the number of double cosets");
  if (sel[spec.table->double_coset_of_coset(0)])
    throw InputError("connection set meets H");
  for (std::size_t k = 0; k < sel.size(); ++k)
    if (sel[k])
      spec.connection_set.push_back(spec.table->double_cosets()[k].representative);
  spec.selected = std::move(sel);
  return spec;
}

std::vector<Point> CosetGraphSpec::hsh_cosets() const
{
  std::vector<Point> out;
  for (Point c = 0; c < table->index(); ++c)
    if (selected[table->double_coset_of_coset(c)])
      out.push_back(c);
  return out;
}

DiGraph build(CosetGraphSpec const &spec) { return spec.table->graph(spec.selected); }

PermGroup hat_group(CosetTable const &t) { return t.hat_group(); }

std::uint64_t intersection_order(PermGroup const &h, Permutation const &g)
{
  PermGroup hg = h.conjugate(g);
  std::uint64_t count = 0;
  h.for_each_element([&](Permutation const &x) {
    count += hg.contains(x);
    return true;
  });
  return count;
}

CosetGraphSpec coset_spec_from_action(DiGraph const &graph, PermGroup const &x, Point v)
{
  if (graph.order() != x.degree())
    throw InputError("group degree differs from the graph order");
  for (auto const &s : x.generators())
    if (!is_automorphism(graph, s))
      throw InputError("generator " + format_cycles(s) + " is not an automorphism");
  auto trans = orbit_transversal(x, v);
  std::vector<Permutation> s;
  for (Point w : graph.out_neighbors(v)) {
    if (!trans[w])
      throw InputError("group is not transitive on the vertices");
    s.push_back(*trans[w]);
  }
  if (!x.is_transitive())
    throw InputError("group is not transitive on the vertices");
  return CosetGraphSpec(x, x.stabilizer(v), std::move(s));
}

StructureReport structure_report(CosetGraphSpec const &spec)
{
  auto const &t = *spec.table;
  StructureReport r;
  r.undirected = true;
  for (std::size_t k = 0; k < spec.selected.size(); ++k)
    if (spec.selected[k] && !spec.selected[t.inverse_double_coset(k)])
      r.undirected = false;

  PermGroup hs = join(spec.H(), spec.connection_set);
  r.connected = hs.order() == spec.G().order();
  r.components = static_cast<std::size_t>(spec.G().order() / hs.order());

  std::size_t blocks = 0, last = 0;
  for (std::size_t k = 0; k < spec.selected.size(); ++k)
    if (spec.selected[k]) {
      ++blocks;
      last = k;
      r.valency += t.double_cosets()[k].size();
    }
  if (blocks == 1) {
    r.g = t.double_cosets()[last].representative;
    r.valency_formula = spec.H().order() / intersection_order(spec.H(), *r.g);
  }
  return r;
}

} // namespace vtgi
