#ifndef VTGI_CANON_HPP
#define VTGI_CANON_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vtgi/digraph.hpp"
#include "vtgi/group.hpp"

namespace vtgi
{

inline constexpr std::size_t kCanonVertexCap = 2048;

struct CanonOptions
{
  std::size_t vertex_cap = kCanonVertexCap;
  /// Search-tree nodes before BudgetExceeded.
  std::uint64_t node_budget = 50'000'000;
};

struct OrderedPartition
{
  std::vector<std::vector<Point>> cells;

  static OrderedPartition unit(std::size_t n);
  bool is_discrete() const;
  /// Throws InputError unless the cells partition 0..n-1.
  void validate(std::size_t n) const;
};

/// Equitable refinement by out/in neighbour counts toward each cell.
/// Fragments of a cell keep the cell's place and are ordered by count.
OrderedPartition refine(DiGraph const &g, OrderedPartition const &pi);

struct Certificate
{
  std::size_t n = 0;
  bool directed = false;
  std::vector<std::uint64_t> bits; // canonical adjacency, row-major

  /// 8 hex digits of n, 2 of the flag, then the packed adjacency bytes.
  std::string hex() const;

  friend bool operator==(Certificate const &, Certificate const &) = default;
  friend auto operator<=>(Certificate const &, Certificate const &) = default;
};

struct CertificateHash
{
  std::size_t operator()(Certificate const &c) const;
};

struct CanonicalLabeling
{
  /// vertex -> canonical position
  Permutation labeling;
  DiGraph canonical;
  PermGroup automorphisms;
  std::uint64_t nodes = 0;
};

/// Automorphism group and canonical labeling in one search.
CanonicalLabeling canonical_labeling(DiGraph const &g, CanonOptions const &opts = {});

PermGroup automorphisms(DiGraph const &g, CanonOptions const &opts = {});
Certificate canonical_form(DiGraph const &g, CanonOptions const &opts = {});

/// Vertex bijection p with arcs (u,v) -> (u^p, v^p) exactly, or none.
std::optional<Permutation> isomorphism(DiGraph const &a, DiGraph const &b,
                                       CanonOptions const &opts = {});

} // namespace vtgi

#endif // VTGI_CANON_HPP
