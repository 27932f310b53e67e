#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "oracle.hpp"
#include "random_specs.hpp"
#include "vtgi/catalog.hpp"
#include "vtgi/gitest.hpp"

using namespace vtgi;

namespace
{

PermGroup group_of(std::size_t n, std::vector<char const *> const &cycles)
{
  std::vector<Permutation> gens;
  for (auto c : cycles)
    gens.push_back(parse_cycles(c, n));
  return PermGroup(n, gens);
}

/// Brute-force Cayley-graph GI status for every connection set of a tiny
/// group: automorphisms as multiplication-preserving bijections, graph
/// isomorphism by trying all n! vertex maps.
struct CayleyOracle
{
  std::vector<Permutation> el;
  std::vector<std::vector<std::size_t>> mul;
  std::vector<std::vector<std::size_t>> aut; // element maps

  explicit CayleyOracle(PermGroup const &g) : el(g.elements())
  {
    std::size_t n = el.size();
    std::map<Permutation, std::size_t> id;
    for (std::size_t i = 0; i < n; ++i)
      id[el[i]] = i;
    mul.assign(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        mul[i][j] = id.at(el[i] * el[j]);
    for (auto const &p : oracle::all_perms(n)) {
      bool hom = true;
      for (std::size_t i = 0; i < n && hom; ++i)
        for (std::size_t j = 0; j < n && hom; ++j)
          hom = p[static_cast<Point>(mul[i][j])] == mul[p[static_cast<Point>(i)]][p[static_cast<Point>(j)]];
      if (hom) {
        auto img = p.images();
        aut.emplace_back(img.begin(), img.end());
      }
    }
  }

  std::size_t identity() const
  {
    for (std::size_t i = 0; i < el.size(); ++i)
      if (el[i].is_identity())
        return i;
    return 0;
  }

  // arcs x -> s x, matching yx^-1 in S
  std::vector<std::vector<char>> graph(std::uint32_t s) const
  {
    std::size_t n = el.size();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t k = 0; k < n; ++k)
        if (s >> k & 1u)
          adj[x][mul[k][x]] = 1;
    return adj;
  }

  static bool isomorphic(std::vector<std::vector<char>> const &a,
                         std::vector<std::vector<char>> const &b)
  {
    std::size_t n = a.size();
    for (auto const &p : oracle::all_perms(n)) {
      bool ok = true;
      for (std::size_t u = 0; u < n && ok; ++u)
        for (std::size_t v = 0; v < n && ok; ++v)
          ok = a[u][v] == b[p[static_cast<Point>(u)]][p[static_cast<Point>(v)]];
      if (ok)
        return true;
    }
    return false;
  }

  /// GI status of Cay(G, S) for every S not containing the identity.
  std::map<std::uint32_t, bool> all() const
  {
    std::size_t n = el.size(), e = identity();
    std::vector<std::uint32_t> sets;
    for (std::uint32_t s = 0; s < (1u << n); ++s)
      if (!(s >> e & 1u))
        sets.push_back(s);
    std::map<std::uint32_t, bool> out;
    for (auto s : sets) {
      auto gs = graph(s);
      std::set<std::uint32_t> reached;
      for (auto const &t : aut) {
        std::uint32_t ts = 0;
        for (std::size_t k = 0; k < n; ++k)
          if (s >> k & 1u)
            ts |= 1u << t[k];
        reached.insert(ts);
      }
      bool gi = true;
      for (auto t : sets)
        if (__builtin_popcount(t) == __builtin_popcount(s) && !reached.count(t) &&
            isomorphic(gs, graph(t))) {
          gi = false;
          break;
        }
      out[s] = gi;
    }
    return out;
  }
};

std::vector<Permutation> parse_list(ordered_json const &a, std::size_t n)
{
  std::vector<Permutation> out;
  for (auto const &s : a)
    out.push_back(parse_cycles(s.get<std::string>(), n));
  return out;
}

} // namespace

TEST_CASE("Cayley digraphs of tiny groups against brute force")
{
  std::vector<PermGroup> groups = {cyclic(4).group, cyclic(5).group, cyclic(6).group,
                                   sym(3).group, group_of(4, {"(1,2)", "(3,4)"})};
  for (auto const &g : groups) {
    CayleyOracle o(g);
    auto truth = o.all();
    auto table = std::make_shared<CosetTable const>(g, PermGroup(g.degree()));
    for (auto const &[s, gi] : truth) {
      std::vector<Permutation> conn;
      for (std::size_t k = 0; k < o.el.size(); ++k)
        if (s >> k & 1u)
          conn.push_back(o.el[k]);
      CosetGraphSpec spec(table, conn);
      auto def = gi_by_definition(spec);
      auto conj = gi_by_conjugacy(spec);
      Verdict want = gi ? Verdict::GI : Verdict::NOT_GI;
      CHECK(def.verdict == want);
      CHECK(conj.verdict == want);
    }
  }
}

TEST_CASE("every Cayley digraph of Z5 is GI")
{
  auto g = cyclic(5).group;
  auto table = std::make_shared<CosetTable const>(g, PermGroup(5));
  std::size_t d = table->admissible().size();
  REQUIRE(d == 4);
  for (std::uint32_t m = 0; m < 16; ++m) {
    std::vector<char> sel(table->double_cosets().size(), 0);
    for (std::size_t p = 0; p < d; ++p)
      if (m >> p & 1u)
        sel[table->admissible()[p]] = 1;
    auto spec = CosetGraphSpec::from_selection(table, sel);
    CHECK(gi_by_definition(spec).verdict == Verdict::GI);
  }
}

TEST_CASE("definition and conjugacy agree on random specs")
{
  std::mt19937_64 rng(99);
  oracle::RandomSpecs specs(60, 12);
  for (int i = 0; i < 40; ++i) {
    auto spec = specs.next(rng);
    auto a = gi_by_definition(spec);
    auto b = gi_by_conjugacy(spec);
    REQUIRE(a.verdict != Verdict::UNKNOWN);
    REQUIRE(b.verdict != Verdict::UNKNOWN);
    CHECK(a.verdict == b.verdict);
  }
}

TEST_CASE("cached tester matches one-shot calls")
{
  std::mt19937_64 rng(123);
  oracle::RandomSpecs specs(60, 12);
  for (int i = 0; i < 30; ++i) {
    auto spec = specs.next(rng);
    DefinitionTester tester(spec.table);
    auto a = tester.test(spec);
    auto b = gi_by_definition(spec);
    CHECK(a.verdict == b.verdict);
    CHECK(a.witnesses == b.witnesses);
    // other unions over the same table
    auto const &t = *spec.table;
    for (std::size_t k : t.admissible()) {
      std::vector<char> sel(t.double_cosets().size(), 0);
      sel[k] = 1;
      auto other = CosetGraphSpec::from_selection(spec.table, sel);
      auto want = gi_by_definition(other).verdict;
      CHECK(tester.test(other).verdict == want);
      CHECK(tester.classify(other) == want);
    }
  }
  auto s3 = sym(3).group;
  DefinitionTester t(std::make_shared<CosetTable const>(s3, PermGroup(3)));
  CHECK_THROWS_AS(t.test(CosetGraphSpec(cyclic(5).group, PermGroup(5), {})), InputError);
}

TEST_CASE("many double cosets with small valency")
{
  // Cayley digraph of Z11:Z5: 54 admissible double cosets
  auto f = frobenius(11, 5).group;
  auto x = f.generators()[0], y = f.generators()[1];
  CosetGraphSpec spec(f, PermGroup(11), {x, y});
  REQUIRE(spec.table->admissible().size() == 54);
  auto v = gi_by_definition(spec);
  CHECK(v.verdict == Verdict::GI);
  auto h = gi_sufficient_hall(spec);
  REQUIRE(h);
  CHECK(h->verdict == Verdict::GI);
  CHECK(gi_by_conjugacy(spec).verdict == Verdict::GI);
}

TEST_CASE("directed 5-cycle and a dihedral graph")
{
  auto z5 = cyclic(5).group;
  CosetGraphSpec c5(z5, PermGroup(5), {z5.generators()[0]});
  auto v = gi_by_conjugacy(c5);
  CHECK(v.verdict == Verdict::GI);
  CHECK(gi_by_definition(c5).verdict == Verdict::GI);

  auto d10 = dihedral(10).group;
  PermGroup h(5, {parse_cycles("(2,5)(3,4)", 5)});
  CosetGraphSpec spec(d10, h, {parse_cycles("(1,2,3,4,5)", 5)});
  CHECK(gi_by_definition(spec).verdict == Verdict::GI);
  CHECK(gi_by_conjugacy(spec).verdict == Verdict::GI);
}

TEST_CASE("witnesses re-verify")
{
  // Z8 is not DCI; find a NOT_GI connection set and re-check its witnesses
  auto z8 = cyclic(8).group;
  auto table = std::make_shared<CosetTable const>(z8, PermGroup(8));
  std::optional<CosetGraphSpec> bad;
  for (std::uint32_t m = 0; m < 128 && !bad; ++m) {
    std::vector<char> sel(table->double_cosets().size(), 0);
    for (std::size_t p = 0; p < 7; ++p)
      if (m >> p & 1u)
        sel[table->admissible()[p]] = 1;
    auto spec = CosetGraphSpec::from_selection(table, sel);
    if (gi_by_definition(spec).verdict == Verdict::NOT_GI)
      bad = spec;
  }
  REQUIRE(bad);
  auto v = gi_by_definition(*bad);
  DiGraph gamma = build(*bad);
  DiGraph sigma_graph = build(CosetGraphSpec(table, parse_list(v.witnesses["T"], 8)));
  Permutation sigma = parse_cycles(v.witnesses["sigma"].get<std::string>(), 8);
  CHECK(is_isomorphism(gamma, sigma_graph, sigma));

  auto c = gi_by_conjugacy(*bad);
  REQUIRE(c.verdict == Verdict::NOT_GI);
  PermGroup x1(8, parse_list(c.witnesses["X1"], 8));
  PermGroup x2(8, parse_list(c.witnesses["X2"], 8));
  PermGroup a = automorphisms(gamma);
  CHECK(x1.is_subgroup_of(a));
  CHECK(x2.is_subgroup_of(a));
  CHECK(permutation_isomorphism(x1, x2).has_value());
  CHECK_FALSE(transporter(a, x1, x2).has_value());

  auto j = v.to_json(Limits{});
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it)
    keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"verdict", "method", "witnesses", "budget"});
}

TEST_CASE("limits produce UNKNOWN")
{
  auto z12 = cyclic(12).group;
  CosetGraphSpec spec(z12, PermGroup(12), {z12.generators()[0]});
  // 11 unions of valency 1
  Limits tight;
  tight.subsets = 10;
  auto v = gi_by_definition(spec, tight);
  CHECK(v.verdict == Verdict::UNKNOWN);
  CHECK_FALSE(v.reason.empty());
  Limits aut;
  aut.automorphisms = 5;
  CHECK(gi_by_definition(spec, aut).verdict == Verdict::UNKNOWN);
}

TEST_CASE("valency and Hall conditions")
{
  // Cayley graphs of F21 with one or two connection elements: valency < 3
  auto f = frobenius(7, 3).group;
  auto fe = f.elements();
  std::size_t checked = 0;
  for (std::size_t i = 1; i < fe.size(); ++i)
    for (std::size_t j = i; j < fe.size(); j += 5) {
      if (fe[i].is_identity() || fe[j].is_identity())
        continue;
      std::vector<Permutation> s = {fe[i]};
      if (j != i)
        s.push_back(fe[j]);
      CosetGraphSpec spec(f, PermGroup(7), s);
      auto r = structure_report(spec);
      auto v = gi_sufficient_hall(spec);
      if (r.connected && r.valency < 3) {
        REQUIRE(v);
        CHECK(v->verdict == Verdict::GI);
        CHECK(gi_by_definition(spec).verdict == Verdict::GI);
        ++checked;
      }
    }
  CHECK(checked > 0);

  std::mt19937_64 rng(7);
  oracle::RandomSpecs specs(60, 12);
  std::size_t odd = 0;
  for (int i = 0; i < 200 && odd < 50; ++i) {
    auto spec = specs.next(rng);
    auto v = gi_sufficient_hall(spec);
    if (spec.G().order() % 2 == 0) {
      CHECK_FALSE(v);
      continue;
    }
    ++odd;
    if (v)
      CHECK(gi_by_definition(spec).verdict == Verdict::GI);
  }
  CHECK(odd > 10);
}

TEST_CASE("component certificate")
{
  auto ex = component_example(2, 10);
  auto v = non_gi_component_certificate(ex.G, ex.H, ex.S, ex.phi);
  REQUIRE(v);
  CHECK(v->verdict == Verdict::NOT_GI);
  CHECK(v->witnesses["invariant"] == "cycle_type_census");

  GroupIsoMap id{{ex.a}, {ex.a}, {}};
  CHECK_FALSE(non_gi_component_certificate(ex.G, ex.H, ex.S, id));

  auto d10 = dihedral(10).group;
  PermGroup h(5, {parse_cycles("(2,5)(3,4)", 5)});
  Permutation r = parse_cycles("(1,2,3,4,5)", 5), s = h.generators()[0];
  CosetGraphSpec spec(d10, h, {r});
  // conjugation by s fixes H
  GroupIsoMap phi{{r, s}, {r.conjugate_by(s), s}, {}};
  CHECK_FALSE(non_gi_component_certificate(spec, phi));
  GroupIsoMap not_mono{{r, s}, {Permutation(5), s}, {}};
  CHECK_THROWS_AS(non_gi_component_certificate(spec, not_mono), InputError);
  GroupIsoMap moves_h{{r, s}, {r, s.conjugate_by(r)}, {}};
  CHECK_THROWS_AS(non_gi_component_certificate(spec, moves_h), InputError);
}

TEST_CASE("Hamiltonian groups")
{
  CHECK(is_hamiltonian_group(quaternion8().group));
  CHECK(is_hamiltonian_group(cyclic(12).group));
  CHECK_FALSE(is_hamiltonian_group(sym(3).group));
  CHECK_FALSE(is_hamiltonian_group(dihedral(10).group));
  CHECK_FALSE(is_hamiltonian_group(alt(4).group));
}

TEST_CASE("census")
{
  CHECK(dgi_census(sym(3).group, true).verdict == Verdict::GI);
  CHECK(dgi_census(dihedral(10).group, true).verdict == Verdict::GI);
  CHECK(dgi_census(cyclic(6).group, true).verdict == Verdict::GI);
  auto q = dgi_census(quaternion8().group, true);
  CHECK(q.verdict == Verdict::GI);
  REQUIRE(q.subgroups.size() == 1);
  CHECK(q.subgroups[0].is_trivial());

  // Z8 against a multiplier oracle: Cay(Z8,S) is GI iff every isomorphic
  // Cay(Z8,T) has T = uS for a unit u
  auto z8 = cyclic(8).group;
  auto census = dgi_census(z8, true);
  CHECK(census.verdict == Verdict::NOT_GI);
  std::map<Certificate, std::set<std::uint32_t>> classes;
  for (std::uint32_t s = 0; s < 256; s += 2) {
    DiGraph g(8);
    for (Point x = 0; x < 8; ++x)
      for (Point k = 1; k < 8; ++k)
        if (s >> k & 1u)
          g.add_edge(x, (x + k) % 8);
    classes[canonical_form(g)].insert(s);
  }
  std::size_t non_gi = 0;
  for (auto const &[cert, sets] : classes)
    for (auto s : sets) {
      std::set<std::uint32_t> reached;
      for (std::uint32_t u : {1u, 3u, 5u, 7u}) {
        std::uint32_t t = 0;
        for (std::uint32_t k = 1; k < 8; ++k)
          if (s >> k & 1u)
            t |= 1u << (k * u % 8);
        reached.insert(t);
      }
      non_gi += reached != sets;
    }
  CHECK(census.non_gi == non_gi);
  CHECK(census.graphs == 128);

  auto und = dgi_census(dihedral(10).group, false);
  CHECK(und.verdict == Verdict::GI);
  CHECK(und.graphs < dgi_census(dihedral(10).group, true).graphs);
}

TEST_CASE("regular subgroups")
{
  auto s4 = sym(4).group;
  auto r = has_regular_subgroup(s4, 4);
  REQUIRE(r);
  CHECK(r->order() == 4);
  CHECK(r->is_transitive());
  CHECK(has_regular_subgroup(alt(4).group, 4));
  auto z5 = cyclic(5).group;
  CHECK(has_regular_subgroup(z5, 5)->same_group(z5));

  // Petersen graph: Aut = S5 on 2-subsets, no regular subgroup (brute force
  // over all two-generated subgroups of order 10)
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < 5; ++x)
    for (int y = x + 1; y < 5; ++y)
      pairs.emplace_back(x, y);
  auto on_pairs = [&](Permutation const &p) {
    std::vector<Point> img(10);
    for (std::size_t i = 0; i < 10; ++i) {
      int a = p[static_cast<Point>(pairs[i].first)], b = p[static_cast<Point>(pairs[i].second)];
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      img[i] = static_cast<Point>(std::find(pairs.begin(), pairs.end(), key) - pairs.begin());
    }
    return Permutation(img);
  };
  std::vector<Permutation> gens;
  auto s5 = sym(5).group;
  for (auto const &x : s5.generators())
    gens.push_back(on_pairs(x));
  PermGroup a(10, gens);
  REQUIRE(a.order() == 120);
  CHECK_FALSE(has_regular_subgroup(a, 10));
  auto el = a.elements();
  bool brute = false;
  for (auto const &x : el)
    for (auto const &y : el) {
      auto c = oracle::closure(10, {x, y});
      if (c.size() == 10 && PermGroup(10, {x, y}).is_transitive())
        brute = true;
    }
  CHECK_FALSE(brute);

  // vertex-transitive Cayley graphs have one
  std::mt19937_64 rng(13);
  oracle::RandomSpecs specs(60, 12);
  for (int i = 0; i < 20; ++i) {
    auto spec = specs.next(rng);
    if (!spec.H().is_trivial())
      continue;
    PermGroup aut = automorphisms(build(spec));
    CHECK(has_regular_subgroup(aut, aut.degree()));
  }
  CHECK_THROWS_AS(has_regular_subgroup(PermGroup(4, {parse_cycles("(1,2)", 4)}), 4), InputError);
}

TEST_CASE("permutation isomorphism matches brute-force conjugation")
{
  std::mt19937_64 rng(31);
  oracle::RandomSpecs specs(60, 8);
  std::size_t yes = 0, no = 0;
  for (int i = 0; i < 60; ++i) {
    auto s1 = specs.next(rng);
    auto s2 = specs.next(rng);
    PermGroup x = s1.table->hat_group();
    std::size_t n = x.degree();
    PermGroup y = rng() % 2 ? x.conjugate(oracle::random_perm(n, rng)) : s2.table->hat_group();
    if (y.degree() != n || y.order() != x.order())
      continue;
    bool brute = false;
    for (auto const &p : oracle::all_perms(n)) {
      bool ok = true;
      for (auto const &g : x.generators())
        ok = ok && y.contains(g.conjugate_by(p));
      if (ok) {
        brute = true;
        break;
      }
    }
    auto sigma = permutation_isomorphism(x, y);
    CHECK(sigma.has_value() == brute);
    (brute ? yes : no) += 1;
  }
  CHECK(yes > 5);
}

TEST_CASE("the 40-vertex graph as a coset graph of S6")
{
  auto ex = forty_vertex_example();
  auto spec = coset_spec_from_action(ex.graph, ex.P);
  CHECK(spec.G().order() == 720);
  auto c = gi_by_conjugacy(spec);
  CHECK(c.verdict == Verdict::NOT_GI);
  CHECK(gi_by_definition(spec).verdict == Verdict::NOT_GI);
  CHECK_FALSE(has_regular_subgroup(automorphisms(ex.graph), 40));
}
