#ifndef VTGI_DIGRAPH_HPP
#define VTGI_DIGRAPH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vtgi/perm.hpp"

namespace vtgi
{

/// Loopless digraph on vertices 0..n-1 stored as a dense bit matrix.
/// Undirected graphs are symmetric digraphs.
class DiGraph
{
public:
  DiGraph() = default;
  explicit DiGraph(std::size_t n);

  std::size_t order() const { return _n; }
  std::size_t words_per_row() const { return _words; }

  bool has_edge(Point u, Point v) const
  {
    return (_bits[u * _words + v / 64] >> (v % 64)) & 1U;
  }
  void add_edge(Point u, Point v);    // throws on loops
  void add_undirected(Point u, Point v);
  void remove_edge(Point u, Point v);

  std::span<std::uint64_t const> row(Point u) const
  {
    return {_bits.data() + u * _words, _words};
  }

  std::size_t arc_count() const;
  std::size_t out_degree(Point u) const;
  std::size_t in_degree(Point v) const;
  std::vector<Point> out_neighbors(Point u) const;

  bool is_undirected() const;

  /// Graph with arc (u^p, v^p) for every arc (u, v).
  DiGraph relabel(Permutation const &p) const;

  friend bool operator==(DiGraph const &, DiGraph const &) = default;

private:
  std::size_t _n = 0;
  std::size_t _words = 0;
  std::vector<std::uint64_t> _bits;
};

DiGraph complement(DiGraph const &g);
std::vector<std::size_t> out_degree_sequence(DiGraph const &g);
std::vector<std::size_t> in_degree_sequence(DiGraph const &g);

/// Components of the underlying undirected graph, each sorted, ordered by
/// smallest vertex.
std::vector<std::vector<Point>> weak_components(DiGraph const &g);

bool is_automorphism(DiGraph const &g, Permutation const &p);

/// Whether p maps the arcs of a exactly onto the arcs of b.
bool is_isomorphism(DiGraph const &a, DiGraph const &b, Permutation const &p);

/// Edge-list text: "n m directed|undirected" then m lines "u v", 1-based.
DiGraph parse_edge_list(std::string_view text);
std::string format_edge_list(DiGraph const &g);
std::string to_dot(DiGraph const &g);

/// Small named graphs for tests and examples.
DiGraph complete_graph(std::size_t n);
DiGraph directed_cycle(std::size_t n);
DiGraph path_graph(std::size_t n);

} // namespace vtgi

#endif // VTGI_DIGRAPH_HPP
