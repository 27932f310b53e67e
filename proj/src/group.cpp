#include "vtgi/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>

#include "vtgi/error.hpp"

namespace vtgi
{

namespace
{

void check_degree(Permutation const &p, std::size_t degree)
{
  if (p.degree() != degree)
    throw InputError("generator of degree " + std::to_string(p.degree()) +
                     " in a group of degree " + std::to_string(degree));
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw InputError("group order exceeds 64 bits");
  return r;
}

} // namespace

// ---------------------------------------------------------------------------
// Schreier-Sims

PermGroup::PermGroup(std::size_t degree) : _degree(degree) {}

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators,
                     std::vector<Point> const &base_prefix)
  : _degree(degree), _generators(std::move(generators))
{
  for (auto const &g : _generators)
    check_degree(g, degree);

  std::vector<char> used(degree, 0);
  for (Point b : base_prefix) {
    if (b >= degree)
      throw InputError("base point out of range");
    if (!used[b]) {
      used[b] = 1;
      push_level(b);
    }
  }

  for (auto const &g : _generators)
    incorporate(g);

  // Prefix levels that turned out trivial stay: callers read stabilizers
  // off them. Trailing trivial levels are dropped.
  while (!_levels.empty() && _levels.back().orbit.size() == 1 &&
         _levels.size() > base_prefix.size())
    _levels.pop_back();
}

void PermGroup::push_level(Point base)
{
  Level lv;
  lv.base = base;
  lv.slot.assign(_degree, -1);
  lv.slot[base] = 0;
  lv.orbit.push_back(base);
  lv.transversal.emplace_back(_degree);
  lv.inverse_transversal.emplace_back(_degree);
  _levels.push_back(std::move(lv));
}

void PermGroup::extend_orbit(std::size_t level)
{
  Level &lv = _levels[level];
  for (std::size_t i = 0; i < lv.orbit.size(); ++i) {
    for (auto const &s : lv.gens) {
      Point y = s[lv.orbit[i]];
      if (lv.slot[y] >= 0)
        continue;
      lv.slot[y] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(y);
      Permutation t = lv.transversal[i] * s;
      lv.inverse_transversal.push_back(t.inverse());
      lv.transversal.push_back(std::move(t));
    }
  }
}

std::pair<Permutation, std::size_t> PermGroup::sift(Permutation p,
                                                     std::size_t from) const
{
  for (std::size_t l = from; l < _levels.size(); ++l) {
    Level const &lv = _levels[l];
    Point beta = p[lv.base];
    std::int32_t s = lv.slot[beta];
    if (s < 0)
      return {std::move(p), l};
    if (s != 0)
      p *= lv.inverse_transversal[static_cast<std::size_t>(s)];
  }
  return {std::move(p), _levels.size()};
}

void PermGroup::add_strong(Permutation const &h, std::size_t from, std::size_t to)
{
  if (to == _levels.size())
    push_level(h.smallest_moved_point());
  for (std::size_t l = from; l <= to; ++l) {
    _levels[l].gens.push_back(h);
    extend_orbit(l);
  }
}

void PermGroup::schreier_loop(std::size_t start)
{
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(start);
  while (i >= 0) {
    auto const li = static_cast<std::size_t>(i);
    bool restarted = false;
    for (std::size_t a = 0; a < _levels[li].orbit.size() && !restarted; ++a) {
      for (std::size_t s = 0; s < _levels[li].gens.size(); ++s) {
        Level &lv = _levels[li];
        if (lv.checked.size() <= a)
          lv.checked.resize(lv.orbit.size());
        auto &row = lv.checked[a];
        if (row.size() <= s)
          row.resize(lv.gens.size(), 0);
        if (row[s])
          continue;

        Point img = lv.gens[s][lv.orbit[a]];
        Permutation sg = lv.transversal[a] * lv.gens[s];
        sg *= lv.inverse_transversal[static_cast<std::size_t>(lv.slot[img])];
        if (sg.is_identity()) {
          row[s] = 1;
          continue;
        }
        auto [h, j] = sift(std::move(sg), li + 1);
        if (h.is_identity()) {
          _levels[li].checked[a][s] = 1;
          continue;
        }
        add_strong(h, li + 1, j);
        i = static_cast<std::ptrdiff_t>(j);
        restarted = true;
        break;
      }
    }
    if (!restarted)
      --i;
  }
}

void PermGroup::incorporate(Permutation const &g)
{
  auto [h, j] = sift(g, 0);
  if (h.is_identity())
    return;
  add_strong(h, 0, j);
  schreier_loop(j);
}

void PermGroup::add_generator(Permutation const &p)
{
  check_degree(p, _degree);
  _generators.push_back(p);
  incorporate(p);
}

std::vector<Point> PermGroup::base() const
{
  std::vector<Point> b;
  for (auto const &lv : _levels)
    b.push_back(lv.base);
  return b;
}

std::vector<Permutation> PermGroup::strong_generators() const
{
  std::vector<Permutation> out;
  std::unordered_set<Permutation, PermutationHash> seen;
  for (auto const &lv : _levels)
    for (auto const &g : lv.gens)
      if (seen.insert(g).second)
        out.push_back(g);
  return out;
}

std::vector<Permutation> const &PermGroup::level_generators(std::size_t level) const
{
  static std::vector<Permutation> const empty;
  return level < _levels.size() ? _levels[level].gens : empty;
}

std::vector<Point> const &PermGroup::level_orbit(std::size_t level) const
{
  return _levels.at(level).orbit;
}

std::uint64_t PermGroup::order() const
{
  std::uint64_t n = 1;
  for (auto const &lv : _levels)
    n = checked_mul(n, lv.orbit.size());
  return n;
}

bool PermGroup::contains(Permutation const &p) const
{
  if (p.degree() != _degree)
    return false;
  auto [h, j] = sift(p, 0);
  return j == _levels.size() && h.is_identity();
}

bool PermGroup::for_each_element(
  std::function<bool(Permutation const &)> const &visit) const
{
  std::size_t const k = _levels.size();
  if (k == 0)
    return visit(Permutation(_degree));

  // element = u_{k-1} * ... * u_0 with u_l from level l's transversal
  std::vector<Permutation> partial(k + 1);
  partial[k] = Permutation(_degree);
  std::vector<std::size_t> idx(k, 0);
  std::size_t l = k - 1;
  partial[l] = partial[l + 1] * _levels[l].transversal[0];
  for (;;) {
    if (l == 0) {
      if (!visit(partial[0]))
        return false;
      // advance
      std::size_t up = 0;
      for (;;) {
        if (++idx[up] < _levels[up].orbit.size())
          break;
        idx[up] = 0;
        if (++up == k)
          return true;
      }
      partial[up] = partial[up + 1] * _levels[up].transversal[idx[up]];
      for (std::size_t d = up; d-- > 0;)
        partial[d] = partial[d + 1] * _levels[d].transversal[0];
      l = 0;
      continue;
    }
    --l;
    partial[l] = partial[l + 1] * _levels[l].transversal[idx[l]];
  }
}

std::vector<Permutation> PermGroup::elements(std::uint64_t limit) const
{
  if (order() > limit)
    throw BudgetExceeded("group of order " + std::to_string(order()) +
                         " exceeds element limit " + std::to_string(limit));
  std::vector<Permutation> out;
  out.reserve(order());
  for_each_element([&](Permutation const &p) {
    out.push_back(p);
    return true;
  });
  return out;
}

Permutation PermGroup::random_element(std::mt19937_64 &rng) const
{
  Permutation g(_degree);
  for (std::size_t l = _levels.size(); l-- > 0;) {
    std::uniform_int_distribution<std::size_t> d(0, _levels[l].orbit.size() - 1);
    g *= _levels[l].transversal[d(rng)];
  }
  return g;
}

std::vector<Point> PermGroup::orbit(Point p) const
{
  if (p >= _degree)
    throw InputError("point out of range");
  std::vector<char> seen(_degree, 0);
  std::vector<Point> out{p};
  seen[p] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto const &g : _generators) {
      Point y = g[out[i]];
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Point>> PermGroup::orbits() const
{
  std::vector<char> seen(_degree, 0);
  std::vector<std::vector<Point>> out;
  for (Point p = 0; p < _degree; ++p) {
    if (seen[p])
      continue;
    auto o = orbit(p);
    for (Point x : o)
      seen[x] = 1;
    out.push_back(std::move(o));
  }
  return out;
}

bool PermGroup::is_transitive() const
{
  return _degree <= 1 || orbit(0).size() == _degree;
}

PermGroup PermGroup::stabilizer(Point p) const
{
  if (p >= _degree)
    throw InputError("point out of range");
  if (!_levels.empty() && _levels[0].base == p)
    return PermGroup(_degree, level_generators(1));
  PermGroup rebased(_degree, strong_generators(), {p});
  return PermGroup(_degree, rebased.level_generators(1));
}

PermGroup PermGroup::pointwise_stabilizer(std::vector<Point> const &points) const
{
  PermGroup rebased(_degree, strong_generators(), points);
  std::set<Point> distinct(points.begin(), points.end());
  return PermGroup(_degree, rebased.level_generators(distinct.size()));
}

std::vector<Point> PermGroup::minimal_block(Point a, Point b) const
{
  std::vector<Point> parent(_degree);
  std::iota(parent.begin(), parent.end(), Point{0});
  auto find = [&](Point x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::deque<std::pair<Point, Point>> queue;
  auto unite = [&](Point x, Point y) {
    Point rx = find(x), ry = find(y);
    if (rx == ry)
      return;
    if (ry < rx)
      std::swap(rx, ry);
    parent[ry] = rx;
    queue.emplace_back(rx, ry);
  };
  unite(a, b);
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (auto const &g : _generators)
      unite(g[x], g[y]);
  }
  std::vector<Point> block;
  Point ra = find(a);
  for (Point x = 0; x < _degree; ++x)
    if (find(x) == ra)
      block.push_back(x);
  return block;
}

bool PermGroup::is_primitive() const
{
  if (!is_transitive())
    throw InputError("primitivity test on an intransitive group");
  for (Point b = 1; b < _degree; ++b)
    if (minimal_block(0, b).size() != _degree)
      return false;
  return true;
}

bool PermGroup::is_subgroup_of(PermGroup const &g) const
{
  if (g.degree() != _degree)
    return false;
  for (auto const &x : _generators)
    if (!g.contains(x))
      return false;
  return true;
}

bool PermGroup::same_group(PermGroup const &g) const
{
  return order() == g.order() && is_subgroup_of(g);
}

bool PermGroup::is_normal_in(PermGroup const &g) const
{
  if (!is_subgroup_of(g))
    return false;
  for (auto const &a : g.generators())
    for (auto const &x : _generators)
      if (!contains(x.conjugate_by(a)))
        return false;
  return true;
}

PermGroup PermGroup::conjugate(Permutation const &a) const
{
  std::vector<Permutation> gens;
  for (auto const &x : _generators)
    gens.push_back(x.conjugate_by(a));
  return PermGroup(_degree, std::move(gens));
}

PermGroup schreier_sims(std::size_t degree, std::vector<Permutation> generators)
{
  return PermGroup(degree, std::move(generators));
}

PermGroup join(PermGroup const &a, std::vector<Permutation> const &extra)
{
  std::vector<Permutation> gens = a.generators();
  gens.insert(gens.end(), extra.begin(), extra.end());
  return PermGroup(a.degree(), std::move(gens));
}

PermGroup join(PermGroup const &a, PermGroup const &b)
{
  return join(a, b.generators());
}

std::vector<Permutation> small_generating_set(PermGroup const &g)
{
  std::vector<Permutation> greedy;
  {
    SubgroupBuilder b(g.degree());
    for (auto const &x : g.generators())
      if (b.offer(x))
        greedy.push_back(x);
  }
  if (greedy.size() <= 2 || g.order() > 100000)
    return greedy;

  // Try high-order elements first; keeps searches over generator images small.
  auto elems = g.elements();
  std::vector<std::size_t> idx(elems.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::uint64_t> ord(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i)
    ord[i] = elems[i].order();
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t x, std::size_t y) { return ord[x] > ord[y]; });
  SubgroupBuilder b(g.degree());
  std::vector<Permutation> alt;
  for (std::size_t i : idx) {
    if (b.group().order() == g.order())
      break;
    if (b.offer(elems[i]))
      alt.push_back(elems[i]);
  }
  return alt.size() < greedy.size() ? alt : greedy;
}

bool SubgroupBuilder::offer(Permutation const &p)
{
  if (_group.contains(p))
    return false;
  _group.add_generator(p);
  return true;
}

// ---------------------------------------------------------------------------
// Element tables

ElementIndex::ElementIndex(PermGroup const &g, std::uint64_t limit)
  : _group(g), _elements(g.elements(limit))
{
  _index.reserve(_elements.size() * 2);
  for (std::size_t i = 0; i < _elements.size(); ++i)
    _index.emplace(_elements[i], static_cast<std::uint32_t>(i));
}

std::optional<std::uint32_t> ElementIndex::find(Permutation const &p) const
{
  auto it = _index.find(p);
  if (it == _index.end())
    return std::nullopt;
  return it->second;
}

std::uint32_t ElementIndex::index_of(Permutation const &p) const
{
  auto it = _index.find(p);
  if (it == _index.end())
    throw InputError("permutation is not an element of the group");
  return it->second;
}

// ---------------------------------------------------------------------------
// Graph-of-map constructions

namespace
{

PermGroup graph_of_map(PermGroup const &src, std::span<Permutation const> images,
                       std::vector<Point> const &base_prefix = {})
{
  auto const &gens = src.generators();
  if (gens.size() != images.size())
    throw InputError("one image per source generator required");
  if (images.empty())
    return PermGroup(src.degree());
  std::size_t d2 = images[0].degree();
  for (auto const &x : images)
    if (x.degree() != d2)
      throw InputError("image permutations of differing degree");
  std::vector<Permutation> pairs;
  pairs.reserve(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    pairs.push_back(direct_sum(gens[i], images[i]));
  return PermGroup(src.degree() + d2, std::move(pairs), base_prefix);
}

} // namespace

bool extends_to_homomorphism(PermGroup const &src,
                             std::span<Permutation const> images)
{
  return graph_of_map(src, images).order() == src.order();
}

bool is_valid_iso(PermGroup const &src, std::span<Permutation const> images)
{
  if (src.generators().size() != images.size())
    throw InputError("one image per source generator required");
  if (images.empty())
    return src.order() == 1;
  if (!extends_to_homomorphism(src, images))
    return false;
  PermGroup img(images[0].degree(),
                std::vector<Permutation>(images.begin(), images.end()));
  return img.order() == src.order();
}

PermGroup GroupIsoMap::image_group(std::size_t degree) const
{
  return PermGroup(degree, images);
}

Permutation GroupIsoMap::apply(PermGroup const &source, Permutation const &x) const
{
  return apply(source, std::vector<Permutation>{x})[0];
}

std::vector<Permutation> GroupIsoMap::apply(PermGroup const &source,
                                            std::vector<Permutation> const &xs) const
{
  PermGroup src(source.degree(), source_generators);
  if (images.empty())
    throw InputError("map without generators");
  std::size_t d1 = src.degree(), d2 = images[0].degree();
  PermGroup k = graph_of_map(src, images, src.base());
  std::vector<Permutation> out;
  for (auto const &x : xs) {
    if (x.degree() != d1)
      throw InputError("element degree differs from the source group");
    auto [residue, level] = k.sift(embed(x, 0, d1 + d2), 0);
    if (level != k.chain_length() || !restrict_block(residue, 0, d1).is_identity())
      throw InputError("element outside the source group");
    out.push_back(restrict_block(residue, d1, d2).inverse());
  }
  return out;
}

PermGroup core_of(PermGroup const &g, PermGroup const &h)
{
  if (!h.is_subgroup_of(g))
    throw InputError("core_of: H is not a subgroup of G");
  // Right-multiplication action on cosets keyed by their smallest element.
  auto helems = h.elements();
  auto key = [&](Permutation const &x) {
    Permutation best = helems[0] * x;
    for (std::size_t i = 1; i < helems.size(); ++i) {
      Permutation c = helems[i] * x;
      if (c < best)
        best = std::move(c);
    }
    return best;
  };
  std::uint64_t index = g.order() / h.order();
  std::vector<Permutation> reps{key(Permutation(g.degree()))};
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> lookup;
  lookup.emplace(reps[0], 0);
  auto const &gens = g.generators();
  std::vector<std::vector<Point>> action(gens.size(), std::vector<Point>());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Permutation y = key(reps[i] * gens[k]);
      auto it = lookup.find(y);
      Point target;
      if (it == lookup.end()) {
        target = static_cast<Point>(reps.size());
        lookup.emplace(y, target);
        reps.push_back(std::move(y));
      } else {
        target = it->second;
      }
      auto &row = action[k];
      if (row.size() <= i)
        row.resize(i + 1);
      row[i] = target;
    }
  }
  if (reps.size() != index)
    throw InternalError("coset enumeration disagrees with the index");
  std::vector<Permutation> hats;
  for (auto &row : action) {
    row.resize(reps.size());
    hats.push_back(Permutation(row));
  }
  if (hats.empty())
    return PermGroup(g.degree());
  // Kernel: elements of the graph group fixing the coset block pointwise.
  std::size_t d1 = g.degree();
  std::vector<Point> prefix(reps.size());
  std::iota(prefix.begin(), prefix.end(), static_cast<Point>(d1));
  PermGroup k = graph_of_map(PermGroup(d1, gens), hats, prefix);
  std::vector<Permutation> kernel;
  for (auto const &x : k.level_generators(prefix.size()))
    kernel.push_back(restrict_block(x, 0, d1));
  return PermGroup(d1, std::move(kernel));
}

// ---------------------------------------------------------------------------
// Brute-force searches over elements

std::optional<Permutation> transporter(PermGroup const &a, PermGroup const &x,
                                       PermGroup const &y, std::uint64_t budget)
{
  if (x.degree() != y.degree() || x.degree() != a.degree())
    throw InputError("transporter: degree mismatch");
  if (x.order() != y.order())
    return std::nullopt;
  if (x.order() <= budget && cycle_type_census(x, budget) != cycle_type_census(y, budget))
    return std::nullopt;
  if (a.order() > budget)
    throw BudgetExceeded("transporter: |A| = " + std::to_string(a.order()) +
                         " exceeds budget " + std::to_string(budget));
  std::optional<Permutation> found;
  a.for_each_element([&](Permutation const &g) {
    for (auto const &gen : x.generators())
      if (!y.contains(gen.conjugate_by(g)))
        return true;
    found = g;
    return false;
  });
  return found;
}

std::vector<std::optional<Permutation>> orbit_transversal(PermGroup const &g, Point v)
{
  std::vector<std::optional<Permutation>> out(g.degree());
  out[v] = Permutation(g.degree());
  std::vector<Point> queue{v};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto const &s : g.generators()) {
      Point w = s[queue[i]];
      if (!out[w]) {
        out[w] = *out[queue[i]] * s;
        queue.push_back(w);
      }
    }
  return out;
}

std::optional<Permutation> permutation_isomorphism(PermGroup const &x, PermGroup const &y,
                                                   MonomorphismOptions opts)
{
  if (x.degree() != y.degree())
    throw InputError("permutation_isomorphism: degree mismatch");
  if (!x.is_transitive() || !y.is_transitive())
    throw InputError("permutation_isomorphism: groups must be transitive");
  if (x.order() != y.order())
    return std::nullopt;
  std::size_t const n = x.degree();
  std::vector<Permutation> x0 = x.stabilizer(0).generators();
  std::optional<Point> beta;
  opts.match_cycle_types = true;
  opts.up_to_conjugacy = false;
  opts.max_found = 1;
  opts.accept = [&](GroupIsoMap const &m) {
    PermGroup img(n, m.apply(x, x0));
    for (Point b = 0; b < n; ++b)
      if (img.orbit(b).size() == 1) {
        beta = b;
        return true;
      }
    return false;
  };
  auto maps = find_monomorphisms(x, y, opts);
  if (maps.empty())
    return std::nullopt;
  auto trans = orbit_transversal(x, 0);
  std::vector<Permutation> xs;
  for (auto const &t : trans)
    xs.push_back(*t);
  auto ys = maps[0].apply(x, xs);
  std::vector<Point> img(n);
  for (std::size_t v = 0; v < n; ++v)
    img[v] = ys[v][*beta];
  Permutation sigma(std::move(img));
  for (auto const &g : x.generators())
    if (!y.contains(g.conjugate_by(sigma)))
      throw InternalError("permutation_isomorphism: sigma does not conjugate X onto Y");
  return sigma;
}

PermGroup normalizer(PermGroup const &a, PermGroup const &x, std::uint64_t budget)
{
  if (a.order() > budget)
    throw BudgetExceeded("normalizer: |A| = " + std::to_string(a.order()) +
                         " exceeds budget " + std::to_string(budget));
  SubgroupBuilder b(a.degree());
  a.for_each_element([&](Permutation const &g) {
    if (b.group().contains(g))
      return true;
    for (auto const &gen : x.generators())
      if (!x.contains(gen.conjugate_by(g)))
        return true;
    b.offer(g);
    return true;
  });
  return b.group();
}

PermGroup centralizer(PermGroup const &a, Permutation const &p, std::uint64_t budget)
{
  if (a.order() > budget)
    throw BudgetExceeded("centralizer: |A| = " + std::to_string(a.order()) +
                         " exceeds budget " + std::to_string(budget));
  SubgroupBuilder b(a.degree());
  a.for_each_element([&](Permutation const &g) {
    if (!b.group().contains(g) && p * g == g * p)
      b.offer(g);
    return true;
  });
  return b.group();
}

std::vector<std::pair<CycleType, std::uint64_t>>
cycle_type_census(PermGroup const &g, std::uint64_t budget)
{
  if (g.order() > budget)
    throw BudgetExceeded("cycle type census over too large a group");
  std::map<CycleType, std::uint64_t> counts;
  g.for_each_element([&](Permutation const &p) {
    ++counts[cycle_type(p)];
    return true;
  });
  return {counts.begin(), counts.end()};
}

// ---------------------------------------------------------------------------
// Monomorphism search

namespace
{

using Invariant = std::vector<std::size_t>;

Invariant invariant_of(Permutation const &p, bool cycles)
{
  if (cycles)
    return cycle_type(p).lengths;
  return {static_cast<std::size_t>(p.order())};
}

struct InvariantHash
{
  std::size_t operator()(Invariant const &v) const
  {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Short words in two generators whose invariants must be preserved.
std::vector<Permutation> pair_words(Permutation const &x, Permutation const &y)
{
  Permutation xi = x.inverse(), yi = y.inverse();
  Permutation xy = x * y;
  return {xy, x * yi, x * xy, xy * y, xy * xi * yi, xy * x * yi, xy * xy * yi};
}

std::vector<Permutation> prefix_words(std::vector<Permutation> const &gens,
                                      std::size_t upto)
{
  // x0 x1 ... xi and x0^-1 x1 ... xi
  Permutation run = gens[0];
  Permutation run_inv = gens[0].inverse();
  for (std::size_t i = 1; i <= upto; ++i) {
    run *= gens[i];
    run_inv *= gens[i];
  }
  return {run, run_inv};
}

std::vector<std::size_t> conjugacy_representatives(
  std::vector<Permutation> const &cands, std::vector<Permutation> const &conj_gens)
{
  std::unordered_map<Permutation, std::size_t, PermutationHash> where;
  where.reserve(cands.size() * 2);
  for (std::size_t i = 0; i < cands.size(); ++i)
    where.emplace(cands[i], i);
  std::vector<char> seen(cands.size(), 0);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (seen[i])
      continue;
    reps.push_back(i);
    seen[i] = 1;
    std::vector<std::size_t> queue{i};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (auto const &g : conj_gens) {
        auto it = where.find(cands[queue[q]].conjugate_by(g));
        if (it == where.end())
          throw InternalError("candidate set not closed under conjugation");
        if (!seen[it->second]) {
          seen[it->second] = 1;
          queue.push_back(it->second);
        }
      }
    }
  }
  return reps;
}

} // namespace

std::vector<GroupIsoMap> find_monomorphisms(PermGroup const &q, PermGroup const &a,
                                            MonomorphismOptions const &opts)
{
  if (opts.match_cycle_types && q.degree() != a.degree())
    throw InputError("cycle-type matching needs equal degrees");

  std::vector<GroupIsoMap> found;
  if (q.order() == 1) {
    GroupIsoMap m;
    if (!opts.accept || opts.accept(m))
      found.push_back(std::move(m));
    return found;
  }
  if (a.order() % q.order() != 0)
    return found; // Lagrange
  if (a.order() > opts.budget)
    throw BudgetExceeded("monomorphism search: target order " +
                         std::to_string(a.order()) + " exceeds budget " +
                         std::to_string(opts.budget));

  std::vector<Permutation> gens = small_generating_set(q);
  PermGroup src(q.degree(), gens);
  std::size_t const k = gens.size();
  bool const cyc = opts.match_cycle_types;

  // Source invariants for generators and the pruning words.
  std::vector<Invariant> gen_inv(k);
  for (std::size_t i = 0; i < k; ++i)
    gen_inv[i] = invariant_of(gens[i], cyc);
  std::vector<std::vector<std::vector<Invariant>>> pair_inv(k);
  std::vector<std::vector<Invariant>> prefix_inv(k);
  for (std::size_t i = 0; i < k; ++i) {
    pair_inv[i].resize(i);
    for (std::size_t j = 0; j < i; ++j)
      for (auto const &w : pair_words(gens[j], gens[i]))
        pair_inv[i][j].push_back(invariant_of(w, cyc));
    if (i >= 2)
      for (auto const &w : prefix_words(gens, i))
        prefix_inv[i].push_back(invariant_of(w, cyc));
  }

  // Bucket target elements by invariant.
  std::unordered_map<Invariant, std::vector<Permutation>, InvariantHash> buckets;
  for (auto const &inv : gen_inv)
    buckets.emplace(inv, std::vector<Permutation>{});
  a.for_each_element([&](Permutation const &g) {
    auto it = buckets.find(invariant_of(g, cyc));
    if (it != buckets.end())
      it->second.push_back(g);
    return true;
  });
  std::vector<std::vector<Permutation> const *> cand(k);
  for (std::size_t i = 0; i < k; ++i)
    cand[i] = &buckets.at(gen_inv[i]);

  std::vector<std::size_t> first_choices, all0(cand[0]->size());
  std::iota(all0.begin(), all0.end(), 0);
  if (opts.up_to_conjugacy)
    first_choices = conjugacy_representatives(*cand[0], a.generators());
  else
    first_choices = all0;

  std::uint64_t nodes = 0;
  std::vector<Permutation> imgs(k);
  bool stop = false;

  auto consistent = [&](std::size_t i) {
    for (std::size_t j = 0; j < i; ++j) {
      auto words = pair_words(imgs[j], imgs[i]);
      for (std::size_t w = 0; w < words.size(); ++w)
        if (invariant_of(words[w], cyc) != pair_inv[i][j][w])
          return false;
    }
    if (i >= 2) {
      auto words = prefix_words(imgs, i);
      for (std::size_t w = 0; w < words.size(); ++w)
        if (invariant_of(words[w], cyc) != prefix_inv[i][w])
          return false;
    }
    return true;
  };

  auto emit = [&] {
    if (!is_valid_iso(src, imgs))
      return;
    GroupIsoMap m{gens, imgs, {}};
    if (opts.accept && !opts.accept(m))
      return;
    found.push_back(std::move(m));
    if (found.size() >= opts.max_found)
      stop = true;
  };

  std::function<void(std::size_t)> descend = [&](std::size_t i) {
    if (stop)
      return;
    if (i == k) {
      emit();
      return;
    }
    for (auto const &c : *cand[i]) {
      if (stop)
        return;
      if (++nodes > opts.node_budget)
        throw BudgetExceeded("monomorphism search exceeded its node budget");
      imgs[i] = c;
      if (consistent(i))
        descend(i + 1);
    }
  };

  for (std::size_t c0 : first_choices) {
    if (stop)
      break;
    imgs[0] = (*cand[0])[c0];
    if (k == 1) {
      emit();
      continue;
    }
    if (!opts.up_to_conjugacy) {
      descend(1);
      continue;
    }
    // Second image up to the centralizer of the first.
    PermGroup cent = centralizer(a, imgs[0], opts.budget);
    auto reps1 = conjugacy_representatives(*cand[1], cent.generators());
    for (std::size_t c1 : reps1) {
      if (stop)
        break;
      if (++nodes > opts.node_budget)
        throw BudgetExceeded("monomorphism search exceeded its node budget");
      imgs[1] = (*cand[1])[c1];
      if (consistent(1))
        descend(2);
    }
  }
  return found;
}

// ---------------------------------------------------------------------------
// Automorphisms of abstract groups

AutomorphismList automorphism_group_of(PermGroup const &g, std::uint64_t budget)
{
  if (g.order() > budget)
    throw BudgetExceeded("automorphism_group_of: |G| = " + std::to_string(g.order()) +
                         " exceeds budget " + std::to_string(budget));
  AutomorphismList out{ElementIndex(g, budget), {}};
  auto const &elems = out.index.elements();
  std::size_t const n = elems.size();

  MonomorphismOptions opts;
  opts.budget = std::max<std::uint64_t>(budget, g.order());
  auto maps = find_monomorphisms(g, g, opts);

  for (auto &m : maps) {
    auto const &sg = m.source_generators;
    std::vector<std::uint32_t> gi(sg.size()), ii(sg.size());
    for (std::size_t s = 0; s < sg.size(); ++s) {
      gi[s] = out.index.index_of(sg[s]);
      ii[s] = out.index.index_of(m.images[s]);
    }
    std::vector<std::uint32_t> table(n, std::numeric_limits<std::uint32_t>::max());
    std::uint32_t id = out.index.index_of(Permutation(g.degree()));
    table[id] = id;
    std::vector<std::uint32_t> queue{id};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::uint32_t e = queue[qi];
      for (std::size_t s = 0; s < sg.size(); ++s) {
        std::uint32_t f = out.index.index_of(elems[e] * elems[gi[s]]);
        if (table[f] != std::numeric_limits<std::uint32_t>::max())
          continue;
        table[f] = out.index.index_of(elems[table[e]] * elems[ii[s]]);
        queue.push_back(f);
      }
    }
    if (queue.size() != n)
      throw InternalError("automorphism table incomplete");
    m.table = std::move(table);
    out.maps.push_back(std::move(m));
  }

  // Closure: the tables generate a group of exactly this many elements.
  SubgroupBuilder closure(n);
  for (auto const &m : out.maps) {
    std::vector<Point> img(m.table.begin(), m.table.end());
    closure.offer(Permutation(std::move(img)));
  }
  if (closure.group().order() != out.maps.size())
    throw InternalError("automorphism list is not closed under composition");
  return out;
}

// ---------------------------------------------------------------------------
// Subgroup lattice up to conjugacy

namespace
{

using Bits = std::vector<std::uint64_t>;

struct BitsHash
{
  std::size_t operator()(Bits const &b) const
  {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : b) {
      h ^= w;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

} // namespace

std::vector<SubgroupClass> subgroup_lattice(PermGroup const &g, std::uint64_t budget)
{
  if (g.order() > budget)
    throw BudgetExceeded("subgroup_lattice: |G| = " + std::to_string(g.order()) +
                         " exceeds budget " + std::to_string(budget));
  ElementIndex index(g, budget);
  std::size_t const n = index.size();
  std::size_t const words = (n + 63) / 64;
  auto const &el = index.elements();

  std::vector<std::uint32_t> mul(n * n), inv(n);
  for (std::size_t x = 0; x < n; ++x) {
    inv[x] = index.index_of(el[x].inverse());
    for (std::size_t y = 0; y < n; ++y)
      mul[x * n + y] = index.index_of(el[x] * el[y]);
  }
  std::uint32_t const id = index.index_of(Permutation(g.degree()));

  auto set_bit = [](Bits &b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); };
  auto has_bit = [](Bits const &b, std::size_t i) {
    return (b[i / 64] >> (i % 64)) & 1U;
  };
  auto members = [&](Bits const &b) {
    std::vector<std::uint32_t> m;
    for (std::size_t i = 0; i < n; ++i)
      if (has_bit(b, i))
        m.push_back(static_cast<std::uint32_t>(i));
    return m;
  };
  auto conj = [&](Bits const &b, std::uint32_t x) {
    Bits c(words, 0);
    for (auto e : members(b))
      set_bit(c, mul[mul[inv[x] * n + e] * n + x]);
    return c;
  };
  // closure of a generating set
  auto closure = [&](std::vector<std::uint32_t> const &gens) {
    Bits b(words, 0);
    set_bit(b, id);
    std::vector<std::uint32_t> list{id};
    for (std::size_t i = 0; i < list.size(); ++i)
      for (auto s : gens) {
        auto p = mul[list[i] * n + s];
        if (!has_bit(b, p)) {
          set_bit(b, p);
          list.push_back(p);
        }
      }
    return b;
  };

  // Cyclic subgroups, one generator each.
  std::vector<std::uint32_t> cyclic_gens;
  {
    std::unordered_set<Bits, BitsHash> seen;
    for (std::uint32_t x = 0; x < n; ++x)
      if (seen.insert(closure({x})).second)
        cyclic_gens.push_back(x);
  }

  struct Found
  {
    Bits bits;
    std::vector<std::uint32_t> gens;
    std::uint64_t class_size;
  };
  std::vector<Found> reps;
  std::unordered_set<Bits, BitsHash> known;

  auto register_class = [&](Bits const &b, std::vector<std::uint32_t> gens) {
    std::unordered_set<Bits, BitsHash> conjugates;
    for (std::uint32_t x = 0; x < n; ++x) {
      Bits c = conj(b, x);
      if (conjugates.insert(c).second)
        known.insert(c);
    }
    reps.push_back({b, std::move(gens), conjugates.size()});
  };

  register_class(closure({}), {});
  for (std::size_t r = 0; r < reps.size(); ++r) {
    for (auto c : cyclic_gens) {
      if (has_bit(reps[r].bits, c))
        continue;
      auto gens = reps[r].gens;
      gens.push_back(c);
      Bits j = closure(gens);
      if (known.count(j))
        continue;
      register_class(j, std::move(gens));
    }
  }

  std::vector<SubgroupClass> out;
  for (auto const &f : reps) {
    std::vector<Permutation> gens;
    for (auto x : f.gens)
      gens.push_back(el[x]);
    SubgroupClass sc;
    sc.group = PermGroup(g.degree(), std::move(gens));
    sc.class_size = f.class_size;
    sc.normal = f.class_size == 1;
    Bits core = f.bits;
    for (std::uint32_t x = 0; x < n; ++x) {
      Bits c = conj(f.bits, x);
      for (std::size_t w = 0; w < words; ++w)
        core[w] &= c[w];
    }
    std::size_t core_size = 0;
    for (auto w : core)
      core_size += static_cast<std::size_t>(__builtin_popcountll(w));
    sc.core_free = core_size == 1;
    out.push_back(std::move(sc));
  }
  std::stable_sort(out.begin(), out.end(), [](auto const &x, auto const &y) {
    return x.group.order() < y.group.order();
  });
  return out;
}

} // namespace vtgi
