// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "../oracle.hpp"
#include "../random_specs.hpp"
#include "vtgi/canon.hpp"
#include "vtgi/catalog.hpp"
#include "vtgi/cli.hpp"
#include "vtgi/gitest.hpp"

using namespace vtgi;

namespace
{

struct Outcome
{
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, std::string const &what)
  {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

cli::CommandResult run(std::vector<std::string> args) { return cli::run(args); }

std::vector<Permutation> parse_list(nlohmann::ordered_json const &a, std::size_t n)
{
  std::vector<Permutation> out;
  for (auto const &s : a)
    out.push_back(parse_cycles(s.get<std::string>(), n));
  return out;
}

/// Every subset of the admissible double cosets of total size < bound.
void unions_below(CosetTable const &t, std::size_t bound,
                  std::function<void(std::vector<char> const &)> const &visit)
{
  auto const &adm = t.admissible();
  std::vector<char> sel(t.double_cosets().size(), 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t size) {
    if (i == adm.size()) {
      visit(sel);
      return;
    }
    rec(i + 1, size);
    std::size_t s = t.double_cosets()[adm[i]].size();
    if (size + s < bound) {
      sel[adm[i]] = 1;
      rec(i + 1, size + s);
      sel[adm[i]] = 0;
    }
  };
  rec(0, 0);
}

std::vector<std::vector<char>> adjacency(DiGraph const &g)
{
  std::vector<std::vector<char>> adj(g.order(), std::vector<char>(g.order()));
  for (Point u = 0; u < g.order(); ++u)
    for (Point v = 0; v < g.order(); ++v)
      adj[u][v] = g.has_edge(u, v);
  return adj;
}

bool arc_transitive(PermGroup const &x, DiGraph const &g)
{
  if (!x.is_transitive())
    return false;
  auto nb = g.out_neighbors(0);
  if (nb.empty())
    return true;
  auto orb = x.stabilizer(0).orbit(nb.front());
  return nb == orb;
}

// ---------------------------------------------------------------------------

void criterion_1(Outcome &o)
{
  auto t0 = Clock::now();
  auto r = run({"paper", "example-3-3"});
  auto const &p = r.payload;
  o.expect(r.exit_code == cli::kNegative, "exit code 1");
  o.expect(p["vertices"] == 40, "40 vertices");
  o.expect(p["valency"] == 12 && p["regular"] == true, "12-regular");
  o.expect(p["connected"] == true, "connected");
  o.expect(p["undirected"] == true, "undirected");

  // independent re-checks on the constructed objects
  FortyVertexExample ex = forty_vertex_example();
  o.expect(arc_transitive(ex.spec.table->hat_group(), ex.graph), "arc-transitive");
  std::uint64_t aut_order = p["aut_order"].get<std::uint64_t>();
  std::uint64_t counted = oracle::count_automorphisms(adjacency(ex.graph));
  o.expect(aut_order == counted, "|Aut| agrees with a backtracking count");
  o.expect(aut_order == 103680, "|Aut| = 103680");

  PermGroup a = automorphisms(ex.graph);
  auto const &w = p["certificate"]["witnesses"];
  PermGroup P(40, parse_list(w["P"], 40)), Q(40, parse_list(w["Q"], 40));
  Permutation sigma = parse_cycles(w["sigma"].get<std::string>(), 40);
  bool iso = P.order() == 720 && Q.order() == 720 && P.is_transitive() && Q.is_transitive() &&
             P.conjugate(sigma).same_group(Q);
  o.expect(iso, "P, Q transitive S6 and permutation isomorphic");
  o.expect(P.is_subgroup_of(a) && Q.is_subgroup_of(a), "P, Q <= Aut");
  o.expect(!transporter(a, P, Q).has_value(), "P, Q not conjugate in Aut");
  o.expect(p["certificate"]["verdict"] == "NOT_GI", "verdict NOT_GI");
  o.expect(p["cayley"] == false, "no regular subgroup (non-Cayley)");
  double secs = seconds_since(t0);
  o.expect(secs < 600, "under 10 minutes");
  o.detail << "|Aut| = " << aut_order << " (backtracking count " << counted
           << "), verdict " << p["certificate"]["verdict"].get<std::string>()
           << ", cayley = " << p["cayley"] << ", " << secs << " s";
}

void criterion_2(Outcome &o)
{
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto t0 = Clock::now();
    auto r = run({"paper", "theorem-4-2", "--p", std::to_string(p)});
    auto const &c = r.payload["census"];
    double secs = seconds_since(t0);
    std::string tag = "p=" + std::to_string(p);
    o.expect(r.exit_code == cli::kSuccess && c["verdict"] == "DGI", tag + " DGI");
    o.expect(!c.contains("reason"), tag + " census complete");
    o.expect(secs < (p == 7 ? 300 : 30), tag + " runtime");
    o.detail << tag << ": " << c["verdict"].get<std::string>() << " over " << c["graphs"]
             << " digraphs, " << c["subgroups"].size() << " subgroup classes, " << secs << " s; ";
  }
}

void criterion_3(Outcome &o)
{
  std::size_t checked = 0, disagree = 0, unknown = 0;
  auto compare = [&](CosetGraphSpec const &spec) {
    auto a = gi_by_definition(spec);
    auto b = gi_by_conjugacy(spec);
    ++checked;
    if (a.verdict == Verdict::UNKNOWN || b.verdict == Verdict::UNKNOWN)
      ++unknown;
    else if (a.verdict != b.verdict)
      ++disagree;
  };

  // every core-free H of D6 (all conjugates) and every union of double cosets
  PermGroup d6 = dihedral(6).group;
  std::set<std::vector<Permutation>> seen;
  std::size_t exhaustive = 0;
  for (auto const &cls : subgroup_lattice(d6)) {
    if (!cls.core_free)
      continue;
    for (auto const &x : d6.elements()) {
      PermGroup h = cls.group.conjugate(x);
      auto el = h.elements();
      if (!seen.insert(el).second)
        continue;
      auto table = std::make_shared<CosetTable const>(d6, h);
      auto const &adm = table->admissible();
      for (std::uint32_t m = 0; m < (1u << adm.size()); ++m) {
        std::vector<char> sel(table->double_cosets().size(), 0);
        for (std::size_t i = 0; i < adm.size(); ++i)
          if (m >> i & 1u)
            sel[adm[i]] = 1;
        compare(CosetGraphSpec::from_selection(table, sel));
        ++exhaustive;
      }
    }
  }

  std::mt19937_64 rng(20240301);
  oracle::RandomSpecs specs(60, 12);
  for (int i = 0; i < 100; ++i)
    compare(specs.next(rng));
  o.expect(disagree == 0, "no disagreements");
  o.expect(unknown == 0, "no UNKNOWN verdicts");
  o.detail << exhaustive << " D6 coset digraphs + 100 random specs, " << disagree
           << " disagreements, " << unknown << " unknown";
}

void criterion_4(Outcome &o)
{
  std::mt19937_64 rng(20240302);
  oracle::RandomSpecs specs(120, 30);
  std::size_t single = 0, bad = 0;
  for (int i = 0; i < 200; ++i) {
    auto spec = specs.next(rng);
    std::size_t deg = spec.G().degree();
    auto h = oracle::closure(deg, spec.H().generators());
    std::set<Permutation> hsh, hsih;
    for (auto const &a : h)
      for (auto const &s : spec.connection_set)
        for (auto const &b : h) {
          hsh.insert(a * s * b);
          hsih.insert(a * s.inverse() * b);
        }
    DiGraph g = build(spec);
    bool ok = g.is_undirected() == (hsh == hsih);

    std::vector<Permutation> gens = spec.H().generators();
    gens.insert(gens.end(), spec.connection_set.begin(), spec.connection_set.end());
    auto joined = oracle::closure(deg, gens);
    ok = ok && weak_components(g).size() * joined.size() == spec.G().order();

    if (!spec.connection_set.empty()) {
      Permutation const &x = spec.connection_set.front();
      std::set<Permutation> hxh;
      for (auto const &a : h)
        for (auto const &b : h)
          hxh.insert(a * x * b);
      if (hxh == hsh) {
        ++single;
        std::size_t meet = 0;
        for (auto const &a : h)
          meet += h.count(x.inverse() * a * x);
        ok = ok && g.out_degree(0) * meet == h.size();
        ok = ok && arc_transitive(spec.table->hat_group(), g);
      }
    }
    bad += !ok;
  }
  o.expect(bad == 0, "all properties hold");
  o.expect(single > 0, "single double coset cases exercised");
  o.detail << "200 random specs (|G| <= 120), " << single << " with one double coset, " << bad
           << " violations";
}

void criterion_5(Outcome &o)
{
  auto t0 = Clock::now();
  auto r = run({"paper", "example-3-2", "--m", "2", "--n", "10"});
  double secs = seconds_since(t0);
  auto const &c = r.payload["certificate"];
  o.expect(r.exit_code == cli::kNegative, "exit code 1");
  o.expect(c["verdict"] == "NOT_GI", "NOT_GI");
  o.expect(c["method"] == "component_certificate", "component certificate");
  o.expect(c["witnesses"]["invariant"] == "cycle_type_census", "cycle-type witness");
  o.expect(c["witnesses"]["census_HS"] != c["witnesses"]["census_HS_phi"], "census differs");
  o.expect(secs < 1.0, "under 1 second");
  o.detail << "vertices " << r.payload["vertices"] << " (not built), " << secs << " s";
}

void criterion_6(Outcome &o)
{
  for (auto const &row : factorization_rows()) {
    auto t0 = Clock::now();
    auto r = run({"paper", "table-1", "--row", row});
    double secs = seconds_since(t0);
    o.expect(r.exit_code == cli::kSuccess && r.payload["confirmed"] == true, "row " + row);
    o.expect(secs < 300, "row " + row + " runtime");
    // the A5 image must be transitive on [T:K]: recheck |X| * |K| / |X ∩ K| = |T|
    for (auto const &c : r.payload["checks"]) {
      if (c["symbolic"] == true)
        continue;
      o.expect(c["index"].get<std::uint64_t>() * c["order_K"].get<std::uint64_t>() ==
                   c["order_T"].get<std::uint64_t>(),
               "row " + row + " index");
    }
    o.detail << row << " ";
  }
  o.detail << "confirmed";
}

void criterion_7(Outcome &o)
{
  for (auto [p, q] : {std::pair{7u, 3u}, std::pair{11u, 5u}}) {
    PermGroup f = frobenius(p, q).group;
    std::size_t graphs = 0, hall = 0, def = 0;
    for (auto const &cls : subgroup_lattice(f)) {
      if (!cls.core_free)
        continue;
      auto table = std::make_shared<CosetTable const>(f, cls.group);
      DefinitionTester tester(table);
      unions_below(*table, q, [&](std::vector<char> const &sel) {
        auto spec = CosetGraphSpec::from_selection(table, sel);
        DiGraph g = build(spec);
        if (weak_components(g).size() != 1)
          return;
        ++graphs;
        auto h = gi_sufficient_hall(spec);
        hall += h && h->verdict == Verdict::GI;
        def += tester.classify(spec) == Verdict::GI;
      });
    }
    std::string tag = "Z" + std::to_string(p) + ":Z" + std::to_string(q);
    o.expect(graphs > 0, tag + " has candidates");
    o.expect(hall == graphs, tag + " sufficient condition");
    o.expect(def == graphs, tag + " definition concurs");
    o.detail << tag << ": " << graphs << " connected coset digraphs of valency < " << q
             << ", sufficient GI " << hall << ", definition GI " << def << "; ";
  }
}

void criterion_8(Outcome &o)
{
  o.expect(is_hamiltonian_group(quaternion8().group), "Q8");
  for (std::size_t n = 1; n <= 24; ++n)
    o.expect(is_hamiltonian_group(cyclic(n).group), "Z" + std::to_string(n));
  o.expect(!is_hamiltonian_group(sym(3).group), "S3");
  o.expect(!is_hamiltonian_group(dihedral(10).group), "D10");
  o.expect(!is_hamiltonian_group(alt(4).group), "A4");
  auto c = dgi_census(quaternion8().group, true);
  o.expect(c.subgroups.size() == 1 && c.subgroups[0].is_trivial(), "Q8 census visits only H = 1");
  o.detail << "Q8 and Z1..Z24 Hamiltonian; S3, D10, A4 not; Q8 census over "
           << c.subgroups.size() << " subgroup(s), verdict " << to_string(c.verdict);
}

DiGraph random_digraph(std::size_t n, double density, bool undirected, std::mt19937_64 &rng)
{
  std::bernoulli_distribution coin(density);
  DiGraph g(n);
  for (Point u = 0; u < n; ++u)
    for (Point v = undirected ? u + 1 : 0; v < n; ++v) {
      if (u == v || !coin(rng))
        continue;
      if (undirected)
        g.add_undirected(u, v);
      else
        g.add_edge(u, v);
    }
  return g;
}

bool brute_isomorphic(DiGraph const &a, DiGraph const &b, std::vector<Permutation> const &perms)
{
  for (auto const &p : perms)
    if (is_isomorphism(a, b, p))
      return true;
  return false;
}

void criterion_9(Outcome &o)
{
  std::mt19937_64 rng(20240309);
  // relabeling invariance
  std::vector<DiGraph> graphs;
  graphs.push_back(forty_vertex_example().graph);
  for (std::size_t n : {8u, 16u, 25u, 33u, 40u})
    for (double d : {0.1, 0.3, 0.5}) {
      graphs.push_back(random_digraph(n, d, true, rng));
      graphs.push_back(random_digraph(n, d, false, rng));
    }
  oracle::RandomSpecs specs(120, 40);
  for (int i = 0; i < 10; ++i)
    graphs.push_back(build(specs.next(rng)));
  std::size_t relabels = 0, mismatches = 0;
  for (auto const &g : graphs) {
    Certificate c = canonical_form(g);
    for (int k = 0; k < 100; ++k) {
      ++relabels;
      mismatches += canonical_form(g.relabel(oracle::random_perm(g.order(), rng))) != c;
    }
  }
  o.expect(mismatches == 0, "relabeling invariance");

  // all digraphs on <= 4 vertices: certificate classes = brute-force classes
  std::size_t small_bad = 0, classes4 = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    auto perms = oracle::all_perms(n);
    std::vector<std::pair<Point, Point>> slots;
    for (Point u = 0; u < n; ++u)
      for (Point v = 0; v < n; ++v)
        if (u != v)
          slots.emplace_back(u, v);
    std::map<std::vector<bool>, Certificate> cert_of_class;
    std::set<Certificate> certs;
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
      DiGraph g(n);
      for (std::size_t i = 0; i < slots.size(); ++i)
        if (mask >> i & 1u)
          g.add_edge(slots[i].first, slots[i].second);
      std::vector<bool> best;
      for (auto const &p : perms) {
        auto h = g.relabel(p);
        std::vector<bool> adj;
        for (auto [u, v] : slots)
          adj.push_back(h.has_edge(u, v));
        if (best.empty() || adj < best)
          best = adj;
      }
      Certificate c = canonical_form(g);
      auto [it, fresh] = cert_of_class.emplace(best, c);
      small_bad += it->second != c;
      certs.insert(c);
    }
    small_bad += certs.size() != cert_of_class.size();
    if (n == 4)
      classes4 = certs.size();
  }
  o.expect(small_bad == 0, "<= 4 vertices match brute force");

  // 1000 random 5-vertex pairs, half of them relabelings
  auto perms5 = oracle::all_perms(5);
  std::size_t pair_bad = 0, positives = 0;
  for (int i = 0; i < 1000; ++i) {
    bool undirected = rng() % 2;
    double d = 0.2 + 0.6 * static_cast<double>(rng() % 100) / 100.0;
    DiGraph a = random_digraph(5, d, undirected, rng);
    DiGraph b = i % 2 ? a.relabel(oracle::random_perm(5, rng)) : random_digraph(5, d, undirected, rng);
    bool brute = brute_isomorphic(a, b, perms5);
    auto m = isomorphism(a, b);
    positives += brute;
    pair_bad += m.has_value() != brute || (m && !is_isomorphism(a, b, *m));
    pair_bad += (canonical_form(a) == canonical_form(b)) != brute;
  }
  o.expect(pair_bad == 0, "5-vertex pairs match brute force");
  o.detail << relabels << " relabelings of " << graphs.size() << " graphs (<= 40 vertices), "
           << classes4 << " classes on 4 vertices, 1000 5-vertex pairs (" << positives
           << " isomorphic), " << mismatches + small_bad + pair_bad << " mismatches";
}

} // namespace

int main()
{
  struct Criterion
  {
    char const *label;
    void (*fn)(Outcome &);
  };
  Criterion const criteria[] = {
      {"40-vertex non-Cayley graph that is not GI", criterion_1},
      {"D_2p is DGI for p = 3, 5, 7 by exhaustive census", criterion_2},
      {"definition and conjugacy tests agree", criterion_3},
      {"coset graph structure: undirectedness, components, valency, arc-transitivity", criterion_4},
      {"component certificate for a coset graph of A10", criterion_5},
      {"factorizations T = A5 K for every row", criterion_6},
      {"odd-order sufficient condition on Z7:Z3 and Z11:Z5", criterion_7},
      {"Hamiltonian groups", criterion_8},
      {"canonical labeling soundness", criterion_9},
  };
  int failures = 0, index = 0;
  for (auto const &c : criteria) {
    ++index;
    Outcome o;
    auto t0 = Clock::now();
    try {
      c.fn(o);
    } catch (std::exception const &e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << index << ". " << c.label << " ("
              << seconds_since(t0) << " s)\n      " << o.detail.str() << std::endl;
  }
  std::cout << (failures ? "FAILED: " : "ALL PASSED: ") << 9 - failures << "/9 criteria pass"
            << std::endl;
  return failures ? 1 : 0;
}
