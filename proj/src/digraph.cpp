#include "vtgi/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "vtgi/error.hpp"

namespace vtgi
{

DiGraph::DiGraph(std::size_t n) : _n(n), _words((n + 63) / 64), _bits(n * _words, 0) {}

void DiGraph::add_edge(Point u, Point v)
{
  if (u >= _n || v >= _n)
    throw InputError("vertex out of range");
  if (u == v)
    throw InputError("loops are not allowed");
  _bits[u * _words + v / 64] |= std::uint64_t{1} << (v % 64);
}

void DiGraph::add_undirected(Point u, Point v)
{
  add_edge(u, v);
  add_edge(v, u);
}

void DiGraph::remove_edge(Point u, Point v)
{
  if (u >= _n || v >= _n)
    throw InputError("vertex out of range");
  _bits[u * _words + v / 64] &= ~(std::uint64_t{1} << (v % 64));
}

std::size_t DiGraph::arc_count() const
{
  std::size_t c = 0;
  for (auto w : _bits)
    c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

std::size_t DiGraph::out_degree(Point u) const
{
  std::size_t c = 0;
  for (auto w : row(u))
    c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

std::size_t DiGraph::in_degree(Point v) const
{
  std::size_t c = 0;
  for (Point u = 0; u < _n; ++u)
    c += has_edge(u, v);
  return c;
}

std::vector<Point> DiGraph::out_neighbors(Point u) const
{
  std::vector<Point> out;
  for (Point v = 0; v < _n; ++v)
    if (has_edge(u, v))
      out.push_back(v);
  return out;
}

bool DiGraph::is_undirected() const
{
  for (Point u = 0; u < _n; ++u)
    for (Point v = u + 1; v < _n; ++v)
      if (has_edge(u, v) != has_edge(v, u))
        return false;
  return true;
}

DiGraph DiGraph::relabel(Permutation const &p) const
{
  if (p.degree() != _n)
    throw InputError("relabeling permutation has the wrong degree");
  DiGraph out(_n);
  for (Point u = 0; u < _n; ++u)
    for (Point v = 0; v < _n; ++v)
      if (has_edge(u, v))
        out.add_edge(p[u], p[v]);
  return out;
}

DiGraph complement(DiGraph const &g)
{
  DiGraph out(g.order());
  for (Point u = 0; u < g.order(); ++u)
    for (Point v = 0; v < g.order(); ++v)
      if (u != v && !g.has_edge(u, v))
        out.add_edge(u, v);
  return out;
}

std::vector<std::size_t> out_degree_sequence(DiGraph const &g)
{
  std::vector<std::size_t> d(g.order());
  for (Point u = 0; u < g.order(); ++u)
    d[u] = g.out_degree(u);
  return d;
}

std::vector<std::size_t> in_degree_sequence(DiGraph const &g)
{
  std::vector<std::size_t> d(g.order(), 0);
  for (Point u = 0; u < g.order(); ++u)
    for (Point v = 0; v < g.order(); ++v)
      d[v] += g.has_edge(u, v);
  return d;
}

std::vector<std::vector<Point>> weak_components(DiGraph const &g)
{
  std::size_t const n = g.order();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<Point>> out;
  for (Point s = 0; s < n; ++s) {
    if (comp[s] >= 0)
      continue;
    int id = static_cast<int>(out.size());
    std::vector<Point> members{s};
    comp[s] = id;
    for (std::size_t i = 0; i < members.size(); ++i) {
      Point u = members[i];
      for (Point v = 0; v < n; ++v)
        if (comp[v] < 0 && (g.has_edge(u, v) || g.has_edge(v, u))) {
          comp[v] = id;
          members.push_back(v);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool is_isomorphism(DiGraph const &a, DiGraph const &b, Permutation const &p)
{
  if (a.order() != b.order() || p.degree() != a.order())
    return false;
  if (a.arc_count() != b.arc_count())
    return false;
  for (Point u = 0; u < a.order(); ++u)
    for (Point v = 0; v < a.order(); ++v)
      if (a.has_edge(u, v) != b.has_edge(p[u], p[v]))
        return false;
  return true;
}

bool is_automorphism(DiGraph const &g, Permutation const &p)
{
  return is_isomorphism(g, g, p);
}

DiGraph parse_edge_list(std::string_view text)
{
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos)
        line.erase(hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        return true;
    }
    return false;
  };
  auto fail = [&](std::string const &what) {
    throw InputError("edge list line " + std::to_string(lineno) + ": " + what);
  };
  if (!next_line())
    fail("missing header 'n m directed|undirected'");
  std::istringstream head(line);
  long long n = -1, m = -1;
  std::string kind, extra;
  if (!(head >> n >> m >> kind) || (head >> extra))
    fail("header must be 'n m directed|undirected'");
  if (n < 0 || m < 0)
    fail("negative counts in header");
  bool directed;
  if (kind == "directed")
    directed = true;
  else if (kind == "undirected")
    directed = false;
  else
    fail("unknown graph kind '" + kind + "'");
  DiGraph g(static_cast<std::size_t>(n));
  for (long long e = 0; e < m; ++e) {
    if (!next_line())
      fail("expected " + std::to_string(m) + " edges, found " + std::to_string(e));
    std::istringstream es(line);
    long long u, v;
    if (!(es >> u >> v) || (es >> extra))
      fail("edge line must be 'u v'");
    if (u < 1 || v < 1 || u > n || v > n)
      fail("vertex out of range 1.." + std::to_string(n));
    if (u == v)
      fail("loop at vertex " + std::to_string(u));
    auto a = static_cast<Point>(u - 1), b = static_cast<Point>(v - 1);
    if (directed)
      g.add_edge(a, b);
    else
      g.add_undirected(a, b);
  }
  if (next_line())
    fail("trailing content after the declared edges");
  return g;
}

std::string format_edge_list(DiGraph const &g)
{
  bool undirected = g.is_undirected();
  std::ostringstream body;
  std::size_t m = 0;
  for (Point u = 0; u < g.order(); ++u)
    for (Point v = 0; v < g.order(); ++v)
      if (g.has_edge(u, v) && (!undirected || u < v)) {
        body << u + 1 << ' ' << v + 1 << '\n';
        ++m;
      }
  std::ostringstream os;
  os << g.order() << ' ' << m << ' ' << (undirected ? "undirected" : "directed") << '\n'
     << body.str();
  return os.str();
}

std::string to_dot(DiGraph const &g)
{
  bool undirected = g.is_undirected();
  std::ostringstream os;
  os << (undirected ? "graph" : "digraph") << " G {\n";
  for (Point u = 0; u < g.order(); ++u)
    os << "  " << u + 1 << ";\n";
  for (Point u = 0; u < g.order(); ++u)
    for (Point v = 0; v < g.order(); ++v)
      if (g.has_edge(u, v) && (!undirected || u < v))
        os << "  " << u + 1 << (undirected ? " -- " : " -> ") << v + 1 << ";\n";
  os << "}\n";
  return os.str();
}

DiGraph complete_graph(std::size_t n)
{
  DiGraph g(n);
  for (Point u = 0; u < n; ++u)
    for (Point v = 0; v < n; ++v)
      if (u != v)
        g.add_edge(u, v);
  return g;
}

DiGraph directed_cycle(std::size_t n)
{
  DiGraph g(n);
  for (Point u = 0; u < n; ++u)
    g.add_edge(u, static_cast<Point>((u + 1) % n));
  return g;
}

DiGraph path_graph(std::size_t n)
{
  DiGraph g(n);
  for (Point u = 0; u + 1 < n; ++u)
    g.add_undirected(u, u + 1);
  return g;
}

} // namespace vtgi
