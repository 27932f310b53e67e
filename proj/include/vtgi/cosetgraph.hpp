#ifndef VTGI_COSETGRAPH_HPP
#define VTGI_COSETGRAPH_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "vtgi/digraph.hpp"
#include "vtgi/error.hpp"
#include "vtgi/group.hpp"

namespace vtgi
{

inline constexpr std::size_t kCosetIndexCap = 10'000;

/// H contains a nontrivial normal subgroup of G; carries that core.
class CoreNotTrivial : public InputError
{
public:
  CoreNotTrivial(std::string const &what, PermGroup core)
    : InputError(what), _core(std::move(core))
  {
  }
  PermGroup const &core() const { return _core; }

private:
  PermGroup _core;
};

struct DoubleCoset
{
  Permutation representative;
  std::vector<Point> members; // coset numbers, sorted
  std::size_t size() const { return members.size(); }
};

/// Right cosets Hx of H in G. Coset 0 is H itself.
class CosetTable
{
public:
  CosetTable(PermGroup g, PermGroup h, std::size_t cap = kCosetIndexCap);

  PermGroup const &G() const { return _g; }
  PermGroup const &H() const { return _h; }
  std::size_t index() const { return _keys.size(); }

  /// Canonical representative: smallest image array in the coset.
  Permutation const &representative(std::size_t i) const { return _keys[i]; }
  Permutation key(Permutation const &x) const;
  Point coset_of(Permutation const &x) const;
  bool same_coset(Permutation const &x, Permutation const &y) const;

  /// Right multiplication by the generators of G on coset numbers.
  std::vector<Permutation> const &hat_generators() const { return _hat_gens; }
  /// Induced action of an arbitrary element.
  Permutation hat(Permutation const &x) const;
  /// Throws CoreNotTrivial when the action is not faithful.
  PermGroup hat_group() const;

  std::vector<DoubleCoset> const &double_cosets() const { return _double; }
  std::size_t double_coset_of_coset(Point c) const { return _double_of[c]; }
  /// Double coset ids other than H itself.
  std::vector<std::size_t> admissible() const;
  /// Id of (HgH)^-1 = Hg^-1H.
  std::size_t inverse_double_coset(std::size_t k) const { return _inverse[k]; }

  /// Arcs i -> j with rep_j rep_i^-1 in the union of the selected double
  /// cosets (mask indexed by double coset id).
  DiGraph graph(std::vector<char> const &selected) const;

  /// One graph per double coset; OR-ing a selection gives graph(selection).
  std::vector<DiGraph> const &orbital_graphs() const;

private:
  void for_each_transversal(std::function<void(Point, Permutation const &)> const &f) const;

  PermGroup _g;
  PermGroup _h;
  std::vector<Permutation> _h_elements;
  std::vector<Permutation> _keys;
  std::unordered_map<Permutation, Point, PermutationHash> _lookup;
  std::vector<Point> _parent;
  std::vector<std::uint32_t> _parent_gen;
  std::vector<Permutation> _hat_gens;
  std::vector<DoubleCoset> _double;
  std::vector<std::size_t> _double_of;
  std::vector<std::size_t> _inverse;
  mutable std::shared_ptr<std::vector<DiGraph>> _orbitals;
};

CosetTable coset_table(PermGroup const &g, PermGroup const &h,
                       std::size_t cap = kCosetIndexCap);
std::vector<DoubleCoset> double_coset_decomposition(CosetTable const &t);

/// (G, H, S) with S normalized to the double cosets it meets.
struct CosetGraphSpec
{
  std::shared_ptr<CosetTable const> table;
  std::vector<Permutation> connection_set; // raw S as given
  std::vector<char> selected;              // double coset ids in HSH

  CosetGraphSpec() = default;
  CosetGraphSpec(PermGroup g, PermGroup h, std::vector<Permutation> s,
                 std::size_t cap = kCosetIndexCap);
  CosetGraphSpec(std::shared_ptr<CosetTable const> t, std::vector<Permutation> s);
  /// Directly from a double coset selection.
  static CosetGraphSpec from_selection(std::shared_ptr<CosetTable const> t,
                                       std::vector<char> selected);

  PermGroup const &G() const { return table->G(); }
  PermGroup const &H() const { return table->H(); }
  /// Cosets inside HSH.
  std::vector<Point> hsh_cosets() const;
};

DiGraph build(CosetGraphSpec const &spec);
PermGroup hat_group(CosetTable const &t);

struct StructureReport
{
  bool undirected = false;
  bool connected = false;
  std::size_t components = 0;      // [G : <H,S>]
  std::optional<Permutation> g;    // HSH = HgH when present
  std::size_t valency = 0;         // out-degree of vertex H
  std::optional<std::size_t> valency_formula; // |H| / |H^g ∩ H|
};

StructureReport structure_report(CosetGraphSpec const &spec);

/// (X, X_v, S) for a vertex-transitive X <= Aut(graph) and vertex v, with
/// one element of S per out-neighbour of v; build() of it is isomorphic to
/// the graph through the coset X_v x -> v^x.
CosetGraphSpec coset_spec_from_action(DiGraph const &graph, PermGroup const &x,
                                      Point v = 0);

/// |H ∩ H^g| by enumeration of H.
std::uint64_t intersection_order(PermGroup const &h, Permutation const &g);

} // namespace vtgi

#endif // VTGI_COSETGRAPH_HPP
