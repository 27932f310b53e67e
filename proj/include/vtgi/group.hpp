#ifndef VTGI_GROUP_HPP
#define VTGI_GROUP_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "vtgi/perm.hpp"

namespace vtgi
{

inline constexpr std::uint64_t kElementLimit = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kAutomorphismLimit = 5000;
inline constexpr std::uint64_t kLatticeLimit = 400;

/// A permutation group with a base and strong generating set.
///
/// The chain is built by deterministic Schreier-Sims: new base points are
/// the smallest point moved by the element that needs them, so the same
/// generator list always yields the same base and element order.
class PermGroup
{
public:
  PermGroup() = default;

  /// Trivial group on `degree` points.
  explicit PermGroup(std::size_t degree);

  /// `base_prefix` fixes the first base points (used for stabilizers).
  PermGroup(std::size_t degree, std::vector<Permutation> generators,
            std::vector<Point> const &base_prefix = {});

  std::size_t degree() const { return _degree; }
  std::vector<Permutation> const &generators() const { return _generators; }

  std::vector<Point> base() const;
  std::vector<Permutation> strong_generators() const;
  std::size_t chain_length() const { return _levels.size(); }

  /// Strong generators of the stabilizer of the first `level` base points.
  std::vector<Permutation> const &level_generators(std::size_t level) const;
  std::vector<Point> const &level_orbit(std::size_t level) const;

  std::uint64_t order() const;
  bool is_trivial() const { return _levels.empty(); }

  bool contains(Permutation const &p) const;

  /// Residue of sifting `p` through the chain and the level where it stuck
  /// (chain_length() when it passed every level).
  std::pair<Permutation, std::size_t> sift(Permutation p,
                                           std::size_t from = 0) const;

  /// Adds a generator, extending the chain in place.
  void add_generator(Permutation const &p);

  /// Visits every element once in a fixed order; stop by returning false.
  /// Returns false iff the visitor stopped early.
  bool for_each_element(std::function<bool(Permutation const &)> const &visit) const;

  /// Throws BudgetExceeded when order() > limit.
  std::vector<Permutation> elements(std::uint64_t limit = kElementLimit) const;

  Permutation random_element(std::mt19937_64 &rng) const;

  std::vector<Point> orbit(Point p) const; // sorted
  std::vector<std::vector<Point>> orbits() const;
  bool is_transitive() const;

  PermGroup stabilizer(Point p) const;
  PermGroup pointwise_stabilizer(std::vector<Point> const &points) const;

  /// Smallest block containing a and b (sorted). Requires transitivity.
  std::vector<Point> minimal_block(Point a, Point b) const;
  bool is_primitive() const;

  bool is_subgroup_of(PermGroup const &g) const;
  bool same_group(PermGroup const &g) const;
  bool is_normal_in(PermGroup const &g) const;

  /// X^a = a^-1 X a
  PermGroup conjugate(Permutation const &a) const;

private:
  struct Level
  {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<std::int32_t> slot;
    std::vector<Point> orbit;
    std::vector<Permutation> transversal;
    std::vector<Permutation> inverse_transversal;
    std::vector<std::vector<char>> checked;
  };

  void push_level(Point base);
  void extend_orbit(std::size_t level);
  void add_strong(Permutation const &h, std::size_t from, std::size_t to);
  void schreier_loop(std::size_t start);
  void incorporate(Permutation const &g);

  std::size_t _degree = 0;
  std::vector<Permutation> _generators;
  std::vector<Level> _levels;
};

PermGroup schreier_sims(std::size_t degree, std::vector<Permutation> generators);

/// Group generated by the generators of both arguments.
PermGroup join(PermGroup const &a, PermGroup const &b);
PermGroup join(PermGroup const &a, std::vector<Permutation> const &extra);

/// Removes redundant generators and, for small groups, greedily looks for
/// a shorter generating list among high-order elements.
std::vector<Permutation> small_generating_set(PermGroup const &g);

/// Grows a subgroup from offered elements, adding only non-members.
class SubgroupBuilder
{
public:
  explicit SubgroupBuilder(std::size_t degree) : _group(degree) {}
  bool offer(Permutation const &p); // true if p enlarged the group
  PermGroup const &group() const { return _group; }

private:
  PermGroup _group;
};

/// Dense element table with reverse lookup.
class ElementIndex
{
public:
  explicit ElementIndex(PermGroup const &g, std::uint64_t limit = kElementLimit);

  std::size_t size() const { return _elements.size(); }
  Permutation const &operator[](std::size_t i) const { return _elements[i]; }
  std::vector<Permutation> const &elements() const { return _elements; }
  std::optional<std::uint32_t> find(Permutation const &p) const;
  std::uint32_t index_of(Permutation const &p) const; // throws if absent
  PermGroup const &group() const { return _group; }

private:
  PermGroup _group;
  std::vector<Permutation> _elements;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> _index;
};

/// Largest normal subgroup of g inside h: the kernel of g acting on [g:h].
PermGroup core_of(PermGroup const &g, PermGroup const &h);

/// Whether generators[i] -> images[i] extends to an injective homomorphism.
bool is_valid_iso(PermGroup const &src, std::span<Permutation const> images);

/// Whether the assignment extends to a homomorphism (not necessarily
/// injective); order of the graph-of-map group equals |src|.
bool extends_to_homomorphism(PermGroup const &src,
                             std::span<Permutation const> images);

struct GroupIsoMap
{
  std::vector<Permutation> source_generators;
  std::vector<Permutation> images;
  /// element index -> element index, relative to an ElementIndex of the
  /// source (empty unless materialized).
  std::vector<std::uint32_t> table;

  PermGroup image_group(std::size_t degree) const;
  /// Image of an arbitrary source element, via the graph-of-map group.
  Permutation apply(PermGroup const &source, Permutation const &x) const;
  /// Images of several elements, building the graph-of-map group once.
  std::vector<Permutation> apply(PermGroup const &source,
                                 std::vector<Permutation> const &xs) const;
};

struct MonomorphismOptions
{
  std::uint64_t max_found = std::numeric_limits<std::uint64_t>::max();
  /// Largest target order that may be enumerated.
  std::uint64_t budget = kElementLimit;
  /// Backtrack nodes before giving up.
  std::uint64_t node_budget = 50'000'000;
  /// Require images to preserve cycle types (same degree), as needed for
  /// permutation isomorphisms; otherwise only element orders.
  bool match_cycle_types = false;
  /// Return at least one map per target-conjugacy class of images
  /// instead of every map.
  bool up_to_conjugacy = false;
  /// Optional extra filter evaluated on each verified map.
  std::function<bool(GroupIsoMap const &)> accept;
};

/// Injective homomorphisms q -> a by backtracking over generator images.
/// Throws BudgetExceeded when a limit is hit.
std::vector<GroupIsoMap> find_monomorphisms(PermGroup const &q, PermGroup const &a,
                                            MonomorphismOptions const &opts = {});

/// Some a in `a` with x^a = y, or none.
std::optional<Permutation> transporter(PermGroup const &a, PermGroup const &x,
                                       PermGroup const &y,
                                       std::uint64_t budget = kElementLimit);

/// For every point w in the orbit of v, some element mapping v to w
/// (identity at v itself; empty entries outside the orbit).
std::vector<std::optional<Permutation>> orbit_transversal(PermGroup const &g, Point v);

/// sigma with sigma^-1 X sigma = Y, for transitive X and Y of equal degree,
/// or none. Searches isomorphisms psi: X -> Y under which psi(X_0) fixes a
/// point beta, then sigma maps 0^x to beta^psi(x).
std::optional<Permutation> permutation_isomorphism(PermGroup const &x, PermGroup const &y,
                                                   MonomorphismOptions opts = {});

PermGroup normalizer(PermGroup const &a, PermGroup const &x,
                     std::uint64_t budget = kElementLimit);
PermGroup centralizer(PermGroup const &a, Permutation const &p,
                      std::uint64_t budget = kElementLimit);

/// Multiset of cycle types over all elements.
std::vector<std::pair<CycleType, std::uint64_t>>
cycle_type_census(PermGroup const &g, std::uint64_t budget = kElementLimit);

struct AutomorphismList
{
  ElementIndex index;
  std::vector<GroupIsoMap> maps; // each carries a full table
};

/// All automorphisms of g; tables refer to `index`.
AutomorphismList automorphism_group_of(PermGroup const &g,
                                       std::uint64_t budget = kAutomorphismLimit);

struct SubgroupClass
{
  PermGroup group;
  std::uint64_t class_size = 1; // number of conjugates
  bool normal = false;
  bool core_free = false;
};

/// One representative per conjugacy class of subgroups, sorted by order.
std::vector<SubgroupClass> subgroup_lattice(PermGroup const &g,
                                            std::uint64_t budget = kLatticeLimit);

} // namespace vtgi

#endif // VTGI_GROUP_HPP
