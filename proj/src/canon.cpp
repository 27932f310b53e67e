#include "vtgi/canon.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "vtgi/error.hpp"

namespace vtgi
{

OrderedPartition OrderedPartition::unit(std::size_t n)
{
  OrderedPartition pi;
  if (n == 0)
    return pi;
  pi.cells.emplace_back(n);
  std::iota(pi.cells[0].begin(), pi.cells[0].end(), Point{0});
  return pi;
}

bool OrderedPartition::is_discrete() const
{
  for (auto const &c : cells)
    if (c.size() != 1)
      return false;
  return true;
}

void OrderedPartition::validate(std::size_t n) const
{
  std::vector<char> seen(n, 0);
  std::size_t total = 0;
  for (auto const &c : cells) {
    if (c.empty())
      throw InputError("partition has an empty cell");
    for (Point v : c) {
      if (v >= n || seen[v])
        throw InputError("partition cells are not a partition of the vertices");
      seen[v] = 1;
      ++total;
    }
  }
  if (total != n)
    throw InputError("partition does not cover every vertex");
}

namespace
{

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  x ^= x >> 31;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  return h ^ x;
}

// Partition as an ordered vertex array; len[s] is the length of the cell
// starting at position s (meaningless elsewhere).
struct Part
{
  std::vector<Point> lab;
  std::vector<std::uint32_t> len;

  std::size_t cell_count() const
  {
    std::size_t c = 0;
    for (std::size_t s = 0; s < lab.size(); s += len[s])
      ++c;
    return c;
  }
};

class Refiner
{
public:
  explicit Refiner(DiGraph const &g)
    : _g(g), _n(g.order()), _words(g.words_per_row()), _undirected(g.is_undirected()),
      _mask(_words, 0), _in_queue(_n, 0), _keys(_n)
  {
    if (!_undirected) {
      _cols = DiGraph(_n);
      for (Point u = 0; u < _n; ++u)
        for (Point v = 0; v < _n; ++v)
          if (g.has_edge(u, v))
            _cols.add_edge(v, u);
    }
  }

  std::size_t size() const { return _n; }

  /// Refines to the coarsest equitable partition below `p`, starting from
  /// the listed splitter cells. Returns a hash of the refinement trace.
  std::uint64_t refine(Part &p, std::vector<std::uint32_t> const &splitters)
  {
    std::uint64_t h = 0x51ed27;
    std::deque<std::uint32_t> queue;
    for (auto s : splitters) {
      if (!_in_queue[s]) {
        _in_queue[s] = 1;
        queue.push_back(s);
      }
    }
    std::size_t cells = p.cell_count();
    while (!queue.empty() && cells < _n) {
      std::uint32_t w = queue.front();
      queue.pop_front();
      _in_queue[w] = 0;
      for (std::uint32_t i = w; i < w + p.len[w]; ++i) {
        Point v = p.lab[i];
        _mask[v / 64] |= std::uint64_t{1} << (v % 64);
      }
      h = mix(h, w);
      for (std::uint32_t s = 0; s < _n;) {
        std::uint32_t const l = p.len[s];
        if (l == 1) {
          Point v = p.lab[s];
          h = mix(h, key_of(v));
          s += l;
          continue;
        }
        bool uniform = true;
        for (std::uint32_t i = s; i < s + l; ++i) {
          _keys[i] = key_of(p.lab[i]);
          uniform &= _keys[i] == _keys[s];
        }
        if (uniform) {
          h = mix(h, _keys[s]);
          s += l;
          continue;
        }
        // split: order fragments by key, vertices ascending inside
        _scratch.clear();
        for (std::uint32_t i = s; i < s + l; ++i)
          _scratch.emplace_back(_keys[i], p.lab[i]);
        std::sort(_scratch.begin(), _scratch.end());
        bool was_queued = _in_queue[s];
        std::uint32_t frag = s;
        for (std::uint32_t i = 0; i < l; ++i) {
          p.lab[s + i] = _scratch[i].second;
          if (i + 1 == l || _scratch[i + 1].first != _scratch[i].first) {
            std::uint32_t end = s + i + 1;
            p.len[frag] = end - frag;
            h = mix(mix(h, _scratch[i].first), end - frag);
            if (frag != s || !was_queued) {
              if (!_in_queue[frag]) {
                _in_queue[frag] = 1;
                queue.push_back(frag);
              }
            }
            if (end < s + l)
              ++cells;
            frag = end;
          }
        }
        s += l;
      }
      std::fill(_mask.begin(), _mask.end(), 0);
    }
    for (auto s : queue)
      _in_queue[s] = 0;
    return mix(h, cells);
  }

private:
  std::uint64_t key_of(Point v) const
  {
    std::uint64_t out = 0, in = 0;
    auto r = _g.row(v);
    for (std::size_t k = 0; k < _words; ++k)
      out += static_cast<std::uint64_t>(__builtin_popcountll(r[k] & _mask[k]));
    if (_undirected)
      return out;
    auto c = _cols.row(v);
    for (std::size_t k = 0; k < _words; ++k)
      in += static_cast<std::uint64_t>(__builtin_popcountll(c[k] & _mask[k]));
    return (out << 32) | in;
  }

  DiGraph const &_g;
  DiGraph _cols;
  std::size_t _n;
  std::size_t _words;
  bool _undirected;
  std::vector<std::uint64_t> _mask;
  std::vector<char> _in_queue;
  std::vector<std::uint64_t> _keys;
  std::vector<std::pair<std::uint64_t, Point>> _scratch;
};

Part part_from(OrderedPartition const &pi, std::size_t n)
{
  Part p;
  p.lab.reserve(n);
  p.len.assign(n, 0);
  for (auto const &c : pi.cells) {
    p.len[p.lab.size()] = static_cast<std::uint32_t>(c.size());
    auto sorted = c;
    std::sort(sorted.begin(), sorted.end());
    p.lab.insert(p.lab.end(), sorted.begin(), sorted.end());
  }
  return p;
}

std::vector<std::uint32_t> all_starts(Part const &p)
{
  std::vector<std::uint32_t> s;
  for (std::uint32_t i = 0; i < p.lab.size(); i += p.len[i])
    s.push_back(i);
  return s;
}

/// First smallest non-singleton cell, or n when discrete.
std::uint32_t target_cell(Part const &p)
{
  std::uint32_t best = static_cast<std::uint32_t>(p.lab.size());
  std::uint32_t best_len = std::numeric_limits<std::uint32_t>::max();
  for (std::uint32_t s = 0; s < p.lab.size(); s += p.len[s])
    if (p.len[s] > 1 && p.len[s] < best_len) {
      best = s;
      best_len = p.len[s];
    }
  return best;
}

/// Moves v to the front of the cell at `s` as a singleton.
void individualize(Part &p, std::uint32_t s, Point v)
{
  std::uint32_t l = p.len[s];
  auto first = p.lab.begin() + s;
  auto it = std::find(first, first + l, v);
  std::rotate(first, it, it + 1);
  p.len[s] = 1;
  p.len[s + 1] = l - 1;
}

class Search
{
public:
  Search(DiGraph const &g, CanonOptions const &opts)
    : _g(g), _n(g.order()), _opts(opts), _refiner(g)
  {
  }

  CanonicalLabeling run()
  {
    CanonicalLabeling out;
    if (_n == 0) {
      out.labeling = Permutation(0);
      out.canonical = DiGraph(0);
      out.automorphisms = PermGroup(0);
      return out;
    }
    Part root = part_from(OrderedPartition::unit(_n), _n);
    std::uint64_t t0 = _refiner.refine(root, all_starts(root));

    find_automorphisms(root, t0);
    _aut = PermGroup(_n, _gens);
    canonical_search(root, t0);

    std::vector<Point> pos(_n);
    for (std::size_t i = 0; i < _n; ++i)
      pos[_best_lab[i]] = static_cast<Point>(i);
    out.labeling = Permutation(pos);
    out.canonical = _g.relabel(out.labeling);
    out.automorphisms = std::move(_aut);
    out.nodes = _nodes;
    return out;
  }

private:
  void count_node()
  {
    if (++_nodes > _opts.node_budget)
      throw BudgetExceeded("canonical labeling exceeded its node budget");
  }

  // -- automorphism group -------------------------------------------------

  void find_automorphisms(Part const &root, std::uint64_t t0)
  {
    // first path
    _first_nodes.push_back(root);
    _first_trace.push_back(t0);
    for (;;) {
      Part const &cur = _first_nodes.back();
      std::uint32_t s = target_cell(cur);
      if (s == _n)
        break;
      count_node();
      Part child = cur;
      Point v = child.lab[s];
      individualize(child, s, v);
      std::uint64_t t = _refiner.refine(child, {s});
      _first_cell.push_back(s);
      _first_vertex.push_back(v);
      _first_nodes.push_back(std::move(child));
      _first_trace.push_back(t);
    }
    _first_leaf = _first_nodes.back().lab;

    std::vector<Point> parent(_n);
    std::iota(parent.begin(), parent.end(), Point{0});
    auto find = [&](Point x) {
      while (parent[x] != x)
        x = parent[x] = parent[parent[x]];
      return x;
    };
    auto unite_generator = [&](Permutation const &g) {
      for (Point x = 0; x < _n; ++x) {
        Point a = find(x), b = find(g[x]);
        if (a != b)
          parent[std::max(a, b)] = std::min(a, b);
      }
    };

    for (std::size_t level = _first_cell.size(); level-- > 0;) {
      Part const &node = _first_nodes[level];
      std::uint32_t s = _first_cell[level];
      Point v = _first_vertex[level];
      for (std::uint32_t i = s; i < s + node.len[s]; ++i) {
        Point w = node.lab[i];
        if (find(w) == find(v))
          continue;
        Part child = node;
        individualize(child, s, w);
        count_node();
        std::uint64_t t = _refiner.refine(child, {s});
        if (t != _first_trace[level + 1])
          continue;
        auto gamma = search_equivalent(child, level + 1);
        if (gamma) {
          unite_generator(*gamma);
          _gens.push_back(std::move(*gamma));
        }
      }
    }
  }

  /// A leaf under `node` equivalent to the first leaf, as an automorphism.
  std::optional<Permutation> search_equivalent(Part const &node, std::size_t depth)
  {
    std::uint32_t s = target_cell(node);
    if (s == _n) {
      std::vector<Point> img(_n);
      for (std::size_t i = 0; i < _n; ++i)
        img[_first_leaf[i]] = node.lab[i];
      Permutation gamma(img);
      if (is_automorphism(_g, gamma))
        return gamma;
      return std::nullopt;
    }
    if (depth >= _first_cell.size() || s != _first_cell[depth])
      return std::nullopt;
    for (std::uint32_t i = s; i < s + node.len[s]; ++i) {
      Part child = node;
      individualize(child, s, node.lab[i]);
      count_node();
      std::uint64_t t = _refiner.refine(child, {s});
      if (t != _first_trace[depth + 1])
        continue;
      if (auto g = search_equivalent(child, depth + 1))
        return g;
    }
    return std::nullopt;
  }

  // -- canonical form -----------------------------------------------------

  void canonical_search(Part const &root, std::uint64_t t0)
  {
    _path.assign(1, t0);
    descend(root, _aut);
  }

  /// -1, 0, +1: the current path trace against the best path, compared on
  /// the current path's length.
  int compare_prefix() const
  {
    if (_best_trace.empty())
      return -1;
    std::size_t m = std::min(_path.size(), _best_trace.size());
    for (std::size_t i = 0; i < m; ++i)
      if (_path[i] != _best_trace[i])
        return _path[i] < _best_trace[i] ? -1 : 1;
    // best path ended earlier with the same prefix: every leaf here is longer
    return _path.size() > _best_trace.size() ? 1 : 0;
  }

  void descend(Part const &node, PermGroup const &stab)
  {
    int c = compare_prefix();
    if (c > 0)
      return;
    std::uint32_t s = target_cell(node);
    if (s == _n) {
      leaf(node, c);
      return;
    }
    std::vector<char> covered(_n, 0);
    std::vector<Point> cell(node.lab.begin() + s, node.lab.begin() + s + node.len[s]);
    std::sort(cell.begin(), cell.end());
    for (Point w : cell) {
      if (covered[w])
        continue;
      if (!stab.is_trivial())
        for (Point x : stab.orbit(w))
          covered[x] = 1;
      Part child = node;
      individualize(child, s, w);
      count_node();
      _path.push_back(_refiner.refine(child, {s}));
      if (stab.is_trivial())
        descend(child, stab);
      else
        descend(child, stab.stabilizer(w));
      _path.pop_back();
    }
  }

  void leaf(Part const &node, int prefix_cmp)
  {
    // relabeled adjacency: position i -> position j iff lab[i] -> lab[j]
    std::size_t words = (_n * _n + 63) / 64;
    _adj.assign(words, 0);
    for (std::size_t i = 0; i < _n; ++i)
      for (std::size_t j = 0; j < _n; ++j)
        if (_g.has_edge(node.lab[i], node.lab[j])) {
          std::size_t b = i * _n + j;
          _adj[b / 64] |= std::uint64_t{1} << (63 - b % 64);
        }
    bool shorter = prefix_cmp == 0 && _path.size() < _best_trace.size();
    if (prefix_cmp < 0 || shorter || _best_adj.empty() || _adj < _best_adj) {
      _best_trace = _path;
      _best_adj = _adj;
      _best_lab = node.lab;
    }
  }

  DiGraph const &_g;
  std::size_t _n;
  CanonOptions _opts;
  Refiner _refiner;
  std::uint64_t _nodes = 0;

  std::vector<Part> _first_nodes;
  std::vector<std::uint64_t> _first_trace;
  std::vector<std::uint32_t> _first_cell;
  std::vector<Point> _first_vertex;
  std::vector<Point> _first_leaf;
  std::vector<Permutation> _gens;
  PermGroup _aut;

  std::vector<std::uint64_t> _path;
  std::vector<std::uint64_t> _best_trace;
  std::vector<std::uint64_t> _best_adj;
  std::vector<std::uint64_t> _adj;
  std::vector<Point> _best_lab;
};

void check_cap(DiGraph const &g, CanonOptions const &opts)
{
  if (g.order() > opts.vertex_cap)
    throw BudgetExceeded("graph on " + std::to_string(g.order()) +
                         " vertices exceeds the canonical labeling cap of " +
                         std::to_string(opts.vertex_cap));
}

} // namespace

OrderedPartition refine(DiGraph const &g, OrderedPartition const &pi)
{
  pi.validate(g.order());
  if (g.order() == 0)
    return pi;
  Refiner r(g);
  Part p = part_from(pi, g.order());
  r.refine(p, all_starts(p));
  OrderedPartition out;
  for (std::uint32_t s = 0; s < p.lab.size(); s += p.len[s])
    out.cells.emplace_back(p.lab.begin() + s, p.lab.begin() + s + p.len[s]);
  return out;
}

CanonicalLabeling canonical_labeling(DiGraph const &g, CanonOptions const &opts)
{
  check_cap(g, opts);
  return Search(g, opts).run();
}

PermGroup automorphisms(DiGraph const &g, CanonOptions const &opts)
{
  return canonical_labeling(g, opts).automorphisms;
}

Certificate canonical_form(DiGraph const &g, CanonOptions const &opts)
{
  auto cl = canonical_labeling(g, opts);
  Certificate c;
  c.n = g.order();
  c.directed = !g.is_undirected();
  std::size_t const n = c.n;
  c.bits.assign((n * n + 63) / 64, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (cl.canonical.has_edge(static_cast<Point>(i), static_cast<Point>(j))) {
        std::size_t b = i * n + j;
        c.bits[b / 64] |= std::uint64_t{1} << (63 - b % 64);
      }
  return c;
}

std::string Certificate::hex() const
{
  static char const digits[] = "0123456789abcdef";
  std::string out;
  auto put_byte = [&](unsigned byte) {
    out.push_back(digits[(byte >> 4) & 0xF]);
    out.push_back(digits[byte & 0xF]);
  };
  for (int shift = 24; shift >= 0; shift -= 8)
    put_byte(static_cast<unsigned>(n >> shift) & 0xFF);
  put_byte(directed ? 1 : 0);
  std::size_t nbytes = (n * n + 7) / 8;
  for (std::size_t b = 0; b < nbytes; ++b) {
    std::uint64_t w = bits[b / 8];
    put_byte(static_cast<unsigned>(w >> (56 - 8 * (b % 8))) & 0xFF);
  }
  return out;
}

std::size_t CertificateHash::operator()(Certificate const &c) const
{
  std::uint64_t h = mix(c.n, c.directed);
  for (auto w : c.bits)
    h = mix(h, w);
  return static_cast<std::size_t>(h);
}

std::optional<Permutation> isomorphism(DiGraph const &a, DiGraph const &b,
                                       CanonOptions const &opts)
{
  if (a.order() != b.order() || a.arc_count() != b.arc_count())
    return std::nullopt;
  auto da = out_degree_sequence(a), db = out_degree_sequence(b);
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db)
    return std::nullopt;
  auto ca = canonical_labeling(a, opts);
  auto cb = canonical_labeling(b, opts);
  if (!(ca.canonical == cb.canonical))
    return std::nullopt;
  Permutation p = ca.labeling * cb.labeling.inverse();
  if (!is_isomorphism(a, b, p))
    throw InternalError("canonical forms agree but the induced map is not an isomorphism");
  return p;
}

} // namespace vtgi
