#include "vtgi/catalog.hpp"

#include <algorithm>
#include <numeric>

#include "vtgi/matrix.hpp"

namespace vtgi
{

namespace
{

void expect_order(NamedGroup const &g, std::uint64_t order)
{
  if (g.group.order() != order)
    throw InternalError(g.name + ": constructed order " + std::to_string(g.group.order()) +
                        ", expected " + std::to_string(order));
}

Permutation cycle_perm(std::size_t degree, std::vector<Point> const &cycle)
{
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t i = 0; i < cycle.size(); ++i)
    img[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return Permutation(std::move(img));
}

std::vector<Permutation> parse_all(std::vector<char const *> const &texts, std::size_t degree)
{
  std::vector<Permutation> out;
  for (auto const *t : texts)
    out.push_back(parse_cycles(t, degree));
  return out;
}

std::uint64_t factorial(std::size_t n)
{
  std::uint64_t r = 1;
  for (std::size_t i = 2; i <= n; ++i)
    r *= i;
  return r;
}

/// Right regular representation on the element table of g.
PermGroup regular_representation(PermGroup const &g)
{
  ElementIndex idx(g);
  std::vector<Permutation> gens;
  for (auto const &s : g.generators()) {
    std::vector<Point> img(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      img[i] = idx.index_of(idx[i] * s);
    gens.emplace_back(std::move(img));
  }
  return PermGroup(idx.size(), std::move(gens));
}

std::uint32_t multiplicative_order(std::uint32_t a, std::uint32_t p)
{
  std::uint64_t x = a % p;
  for (std::uint32_t k = 1; k < p; ++k) {
    if (x == 1)
      return k;
    x = x * a % p;
  }
  return 0;
}

void check_size(long long v, char const *what)
{
  if (v < 1 || v > 100000)
    throw InputError(std::string(what) + " out of range: " + std::to_string(v));
}

} // namespace

NamedGroup cyclic(std::size_t n)
{
  if (n < 1)
    throw InputError("cyclic: n must be positive");
  std::vector<Point> c(n);
  std::iota(c.begin(), c.end(), Point{0});
  std::vector<Permutation> gens;
  if (n > 1)
    gens.push_back(cycle_perm(n, c));
  NamedGroup g{"Z" + std::to_string(n), PermGroup(n, gens), "regular: x -> x+1 mod n"};
  expect_order(g, n);
  return g;
}

NamedGroup dihedral(std::size_t order)
{
  if (order < 6 || order % 2)
    throw InputError("dihedral: order must be even and at least 6");
  std::size_t n = order / 2;
  std::vector<Point> rot(n), refl(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = static_cast<Point>((i + 1) % n);
    refl[i] = static_cast<Point>((n - i) % n);
  }
  NamedGroup g{"D" + std::to_string(order),
               PermGroup(n, {Permutation(rot), Permutation(refl)}),
               "symmetries of the n-gon: x -> x+1, x -> -x mod n"};
  expect_order(g, order);
  return g;
}

NamedGroup dihedral_regular(std::size_t order)
{
  NamedGroup d = dihedral(order);
  NamedGroup g{d.name + "_regular", regular_representation(d.group),
               "right regular representation of the n-gon symmetries"};
  expect_order(g, order);
  return g;
}

NamedGroup sym(std::size_t n)
{
  if (n < 1)
    throw InputError("sym: n must be positive");
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<Point> c(n);
    std::iota(c.begin(), c.end(), Point{0});
    gens.push_back(cycle_perm(n, c));
    if (n > 2)
      gens.push_back(cycle_perm(n, {0, 1}));
  }
  NamedGroup g{"S" + std::to_string(n), PermGroup(n, gens), "(1,...,n), (1,2)"};
  expect_order(g, factorial(n));
  return g;
}

NamedGroup alt(std::size_t n)
{
  if (n < 1)
    throw InputError("alt: n must be positive");
  std::vector<Permutation> gens;
  std::string recipe = "trivial";
  if (n >= 3) {
    gens.push_back(cycle_perm(n, {0, 1, 2}));
    recipe = "(1,2,3)";
    if (n > 3) {
      std::vector<Point> c;
      for (Point i = (n % 2 ? 0 : 1); i < n; ++i)
        c.push_back(i);
      gens.push_back(cycle_perm(n, c));
      recipe += n % 2 ? ", (1,...,n)" : ", (2,...,n)";
    }
  }
  NamedGroup g{"A" + std::to_string(n), PermGroup(n, gens), recipe};
  expect_order(g, n < 2 ? 1 : factorial(n) / 2);
  return g;
}

NamedGroup quaternion8()
{
  // i = (1,2,3,4)(5,6,7,8), j = (1,5,3,7)(2,8,4,6) on the elements of Q8
  NamedGroup g{"Q8", PermGroup(8, parse_all({"(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"}, 8)),
               "regular: i=(1,2,3,4)(5,6,7,8), j=(1,5,3,7)(2,8,4,6)"};
  expect_order(g, 8);
  auto const &i = g.group.generators()[0];
  auto const &j = g.group.generators()[1];
  if (i.pow(2) != j.pow(2) || i * j == j * i)
    throw InternalError("Q8: generators do not satisfy the quaternion relations");
  return g;
}

NamedGroup frobenius(std::uint32_t p, std::uint32_t q)
{
  if (!is_prime(p) || !is_prime(q))
    throw InputError("frobenius: p and q must be prime");
  if ((p - 1) % q)
    throw InputError("frobenius: q must divide p-1");
  std::uint32_t a = 2;
  while (multiplicative_order(a, p) != q)
    ++a;
  std::vector<Point> shift(p), scale(p);
  for (std::uint32_t x = 0; x < p; ++x) {
    shift[x] = (x + 1) % p;
    scale[x] = static_cast<Point>(std::uint64_t{a} * x % p);
  }
  NamedGroup g{"F" + std::to_string(p * q) + "=Z" + std::to_string(p) + ":Z" + std::to_string(q),
               PermGroup(p, {Permutation(shift), Permutation(scale)}),
               "affine maps x -> x+1, x -> " + std::to_string(a) + "x mod " + std::to_string(p)};
  expect_order(g, std::uint64_t{p} * q);
  return g;
}

NamedGroup psl2(std::uint32_t q)
{
  if (!is_prime(q))
    throw InputError("psl2: q must be prime");
  auto points = projective_points(2, q);
  NamedGroup g{"PSL2(" + std::to_string(q) + ")",
               PermGroup(points.size(), projective_action(sl2_generators(q), points)),
               "[[1,1],[0,1]], [[1,0],[1,1]] on the projective line"};
  std::uint64_t qq = q;
  expect_order(g, qq * (qq * qq - 1) / (q == 2 ? 1 : 2));
  return g;
}

NamedGroup psp4_3_ext()
{
  auto points = projective_points(4, 3);
  auto mats = sp4_generators(3);
  mats.push_back(gsp4_similitude(3, 2));
  NamedGroup g{"PSp4(3):2", PermGroup(points.size(), projective_action(mats, points)),
               "symplectic transvections and diag(1,1,2,2) on the 40 points of PG(3,3)"};
  expect_order(g, 51840);
  return g;
}

NamedGroup agl3_2()
{
  // point v = bits (x0,x1,x2), row vector action v -> vM + t
  auto affine = [](std::function<Point(Point)> f) {
    std::vector<Point> img(8);
    for (Point v = 0; v < 8; ++v)
      img[v] = f(v);
    return Permutation(std::move(img));
  };
  std::vector<Permutation> gens;
  gens.push_back(affine([](Point v) { return v ^ 1u; }));
  // elementary transvections x_j += x_i generate GL3(2)
  for (Point i = 0; i < 3; ++i)
    for (Point j = 0; j < 3; ++j)
      if (i != j)
        gens.push_back(affine([i, j](Point v) { return v ^ (((v >> i) & 1u) << j); }));
  NamedGroup g{"AGL3(2)", PermGroup(8, gens),
               "translation by e1 and the elementary transvections on GF(2)^3"};
  expect_order(g, 1344);
  return g;
}

NamedGroup m12()
{
  std::vector<std::vector<char const *>> candidates = {
    {"(1,4)(3,10)(5,11)(6,12)", "(1,8,9)(2,3,4)(5,12,11)(6,10,7)"},
    {"(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)", "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)"},
  };
  for (auto const &words : candidates) {
    PermGroup g(12, parse_all(words, 12));
    if (g.order() != 95040)
      continue;
    // sharply 5-transitive: stabilizers of 0..k-1 have the expected orbits
    bool sharp = true;
    std::vector<Point> fixed;
    for (Point k = 0; k < 5 && sharp; ++k) {
      PermGroup st = g.pointwise_stabilizer(fixed);
      sharp = st.orbit(k).size() == 12 - k;
      fixed.push_back(k);
    }
    sharp = sharp && g.pointwise_stabilizer(fixed).is_trivial();
    if (!sharp)
      continue;
    std::string recipe;
    for (auto const *w : words)
      recipe += (recipe.empty() ? "" : ", ") + std::string(w);
    return NamedGroup{"M12", std::move(g), recipe};
  }
  throw InternalError("M12: no generator set passed the order and 5-transitivity checks");
}

NamedGroup make(std::string const &name, std::vector<long long> const &params)
{
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw InputError(name + " takes " + std::to_string(k) + " parameter(s), got " +
                       std::to_string(params.size()));
  };
  auto u = [&](std::size_t i) {
    check_size(params[i], "parameter");
    return static_cast<std::size_t>(params[i]);
  };
  if (name == "cyclic")
    return need(1), cyclic(u(0));
  if (name == "dihedral")
    return need(1), dihedral(u(0));
  if (name == "dihedral_regular")
    return need(1), dihedral_regular(u(0));
  if (name == "sym")
    return need(1), sym(u(0));
  if (name == "alt")
    return need(1), alt(u(0));
  if (name == "quaternion8")
    return need(0), quaternion8();
  if (name == "frobenius")
    return need(2), frobenius(static_cast<std::uint32_t>(u(0)), static_cast<std::uint32_t>(u(1)));
  if (name == "psl2")
    return need(1), psl2(static_cast<std::uint32_t>(u(0)));
  if (name == "psp4_3_ext")
    return need(0), psp4_3_ext();
  if (name == "agl3_2")
    return need(0), agl3_2();
  if (name == "m12")
    return need(0), m12();
  throw InputError("unknown group constructor '" + name + "'");
}

std::vector<CatalogEntry> catalog_list()
{
  std::vector<std::pair<std::string, std::vector<long long>>> reps = {
    {"cyclic", {6}},  {"dihedral", {10}},   {"dihedral_regular", {10}},
    {"sym", {4}},     {"alt", {5}},         {"quaternion8", {}},
    {"frobenius", {7, 3}}, {"psl2", {11}},  {"psp4_3_ext", {}},
    {"agl3_2", {}},   {"m12", {}},
  };
  std::vector<CatalogEntry> out;
  for (auto const &[name, params] : reps) {
    NamedGroup g = make(name, params);
    std::string ps;
    for (auto p : params)
      ps += (ps.empty() ? "" : " ") + std::to_string(p);
    out.push_back({name, ps, g.group.degree(), g.group.order(), g.provenance});
  }
  return out;
}

// ---------------------------------------------------------------------------

FortyVertexExample forty_vertex_example()
{
  FortyVertexExample ex;
  ex.G = psp4_3_ext().group;
  ex.H = ex.G.stabilizer(0);
  std::uint64_t const order_g = ex.G.order();

  // H-orbit of 0^g has size |H : H ∩ H^g| since H^g is the stabilizer of 0^g.
  std::vector<Point> suborbit_of(ex.G.degree(), 0);
  std::vector<char> seen(ex.G.degree(), 0);
  std::vector<Point> valid_points;
  std::optional<Permutation> first;
  ex.G.for_each_element([&](Permutation const &g) {
    if (g.order() != 2 || ex.H.contains(g))
      return true;
    auto orb = ex.H.orbit(g[0]);
    if (orb.size() != 12)
      return true;
    if (join(ex.H, std::vector<Permutation>{g}).order() != order_g)
      return true;
    ++ex.valid_involutions;
    if (!first)
      first = g;
    if (!seen[orb.front()]) {
      for (Point p : orb)
        seen[p] = 1;
      valid_points.push_back(g[0]);
    }
    return true;
  });
  if (!first)
    throw InternalError("40-vertex example: no involution with suborbit 12 generating G");
  ex.g = *first;
  ex.valid_double_cosets = valid_points.size();
  ex.spec = CosetGraphSpec(ex.G, ex.H, {ex.g});
  ex.graph = build(ex.spec);

  // every valid choice of g gives the same graph up to isomorphism
  Certificate cert = canonical_form(ex.graph);
  for (Point w : valid_points) {
    auto trans = orbit_transversal(ex.G, 0);
    std::vector<Permutation> s{*trans[w]};
    if (canonical_form(build(CosetGraphSpec(ex.spec.table, s))) != cert)
      throw InternalError("40-vertex example: valid involutions give non-isomorphic graphs");
  }

  PermGroup ghat = ex.spec.table->hat_group();
  PermGroup g0 = ghat.stabilizer(0);
  auto nbrs = ex.graph.out_neighbors(0);
  ex.arc_transitive = ghat.is_transitive() && !nbrs.empty() &&
                      g0.orbit(nbrs.front()) == nbrs;

  // classes of S6 subgroups, classified up to conjugacy in G
  PermGroup s6 = sym(6).group;
  MonomorphismOptions mo;
  mo.up_to_conjugacy = true;
  std::vector<PermGroup> classes;
  for (auto const &m : find_monomorphisms(s6, ex.G, mo)) {
    PermGroup img = m.image_group(ex.G.degree());
    bool fresh = true;
    for (auto const &c : classes)
      if (transporter(ex.G, c, img)) {
        fresh = false;
        break;
      }
    if (fresh)
      classes.push_back(std::move(img));
  }
  ex.s6_classes = classes.size();
  std::vector<PermGroup> transitive;
  for (auto &c : classes)
    if (c.is_transitive())
      transitive.push_back(c);
  if (transitive.size() < 2)
    throw InternalError("40-vertex example: found " + std::to_string(transitive.size()) +
                        " transitive classes of S6 subgroups");
  // move P and Q onto the vertices of the graph (cosets of H)
  auto on_cosets = [&](PermGroup const &x) {
    std::vector<Permutation> gens;
    for (auto const &y : x.generators())
      gens.push_back(ex.spec.table->hat(y));
    return PermGroup(ex.graph.order(), gens);
  };
  ex.P = on_cosets(transitive[0]);
  ex.Q = on_cosets(transitive[1]);

  auto sigma = permutation_isomorphism(ex.P, ex.Q);
  if (!sigma)
    throw InternalError("40-vertex example: P and Q are not permutation isomorphic");
  ex.sigma = *sigma;
  return ex;
}

ComponentExample component_example(std::size_t m, std::size_t n)
{
  if (m < 2)
    throw InputError("component example needs m >= 2");
  if (n < 2 * m + 6)
    throw InputError("component example needs n >= 2m+6");
  ComponentExample ex;
  ex.m = m;
  ex.n = n;
  ex.G = alt(n).group;
  std::vector<Point> long_cycle;
  for (Point i = 6; i < 2 * m + 6; ++i)
    long_cycle.push_back(i);
  ex.a = cycle_perm(n, {4, 5}) * cycle_perm(n, long_cycle);
  ex.b = cycle_perm(n, {0, 1}) * cycle_perm(n, {2, 3}) * ex.a;
  ex.H = PermGroup(n, {ex.a.pow(2)});
  for (std::size_t k = 1; k < 2 * m; k += 2)
    ex.S.push_back(ex.a.pow(static_cast<long long>(k)));
  ex.phi.source_generators = {ex.a};
  ex.phi.images = {ex.b};
  PermGroup src(n, {ex.a});
  if (!is_valid_iso(src, ex.phi.images))
    throw InternalError("component example: a -> b is not a monomorphism");
  if (!PermGroup(n, {ex.b.pow(2)}).same_group(ex.H))
    throw InternalError("component example: H^phi differs from H");
  return ex;
}

DiagonalAction diagonal_action(PermGroup const &g, std::uint64_t cap)
{
  if (g.order() > cap)
    throw BudgetExceeded("diagonal action: |G| = " + std::to_string(g.order()) +
                         " exceeds cap " + std::to_string(cap));
  DiagonalAction out{ElementIndex(g, cap), {}, {}, Permutation()};
  auto const &idx = out.elements;
  std::size_t const n = idx.size();
  auto action = [&](auto f) {
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i)
      img[i] = idx.index_of(f(idx[i]));
    return Permutation(std::move(img));
  };
  std::vector<Permutation> ngens, dgens;
  for (auto const &s : g.generators()) {
    Permutation si = s.inverse();
    ngens.push_back(action([&](Permutation const &x) { return si * x; }));
    ngens.push_back(action([&](Permutation const &x) { return x * s; }));
    dgens.push_back(action([&](Permutation const &x) { return si * x * s; }));
  }
  out.N = PermGroup(n, ngens);
  out.D = PermGroup(n, dgens);
  out.t = action([](Permutation const &x) { return x.inverse(); });
  Point e = idx.index_of(Permutation(g.degree()));
  if (!out.N.is_transitive())
    throw InternalError("diagonal action is not transitive");
  if (!out.D.same_group(out.N.stabilizer(e)))
    throw InternalError("diagonal subgroup differs from the stabilizer of the identity");
  for (auto const &x : ngens)
    if (!out.N.contains(x.conjugate_by(out.t)))
      throw InternalError("inversion does not normalize G x G");
  return out;
}

// ---------------------------------------------------------------------------

bool FactorizationRow::confirmed() const
{
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](auto const &c) { return c.confirmed; });
}

std::vector<std::string> factorization_rows()
{
  return {"1", "2", "3", "4", "5", "6", "7", "8", "A10", "A12", "A15", "A20", "A30", "A60"};
}

namespace
{

PermGroup fano_stabilizer_in_a7()
{
  // lines {i, i+1, i+3} mod 7
  std::vector<std::uint32_t> lines;
  for (Point i = 0; i < 7; ++i)
    lines.push_back((1u << i) | (1u << ((i + 1) % 7)) | (1u << ((i + 3) % 7)));
  std::sort(lines.begin(), lines.end());
  SubgroupBuilder b(7);
  alt(7).group.for_each_element([&](Permutation const &x) {
    std::vector<std::uint32_t> moved;
    for (auto l : lines) {
      std::uint32_t img = 0;
      for (Point p = 0; p < 7; ++p)
        if (l >> p & 1u)
          img |= 1u << x[p];
      moved.push_back(img);
    }
    std::sort(moved.begin(), moved.end());
    if (moved == lines)
      b.offer(x);
    return true;
  });
  return b.group();
}

PermGroup named(std::size_t degree, std::vector<char const *> const &gens, std::uint64_t order,
                std::string const &name)
{
  PermGroup g(degree, parse_all(gens, degree));
  if (g.order() != order)
    throw InternalError(name + ": constructed order " + std::to_string(g.order()) +
                        ", expected " + std::to_string(order));
  return g;
}

Point fixed_point(Permutation const &u)
{
  for (Point p = 0; p < u.degree(); ++p)
    if (u[p] == p)
      return p;
  throw InternalError("element has no fixed point");
}

FactorizationCheck a_series(std::size_t n)
{
  // A5 acting on the cosets of a subgroup L of order 60/n
  PermGroup a5 = alt(5).group;
  std::optional<PermGroup> l;
  for (auto const &c : subgroup_lattice(a5))
    if (c.group.order() * n == 60) {
      l = c.group;
      break;
    }
  if (!l)
    throw InternalError("A5 has no subgroup of order " + std::to_string(60 / n));
  CosetTable table(a5, *l);
  PermGroup x = table.hat_group();
  FactorizationCheck c;
  c.T = "A" + std::to_string(n);
  c.K = "A" + std::to_string(n - 1);
  if (n <= 20) {
    c.order_T = factorial(n) / 2;
    c.order_K = factorial(n - 1) / 2;
  }
  c.index = n;
  c.symbolic = true;
  c.a5_images = x.generators();
  bool even = std::all_of(c.a5_images.begin(), c.a5_images.end(),
                          [](Permutation const &p) { return p.is_even(); });
  c.confirmed = even && x.order() == 60 && x.is_transitive();
  c.note = "A5 on the cosets of a subgroup of order " + std::to_string(60 / n) +
           (c.confirmed ? ": even, faithful and transitive on " : ": fails on ") +
           std::to_string(n) + " points";
  return c;
}

} // namespace

/// Searches A5 -> T with image X transitive on the cosets of K, i.e.
/// |X ∩ K| = |X||K|/|T|.
FactorizationCheck verify_factorization(std::string tname, PermGroup const &t,
                                        std::string kname, PermGroup const &k,
                                        std::uint64_t budget)
{
  if (!k.is_subgroup_of(t))
    throw InputError(kname + " is not a subgroup of " + tname);
  FactorizationCheck c;
  c.T = std::move(tname);
  c.K = std::move(kname);
  c.order_T = t.order();
  c.order_K = k.order();
  c.index = c.order_T / c.order_K;
  std::uint64_t const want = 60 * c.order_K;
  PermGroup a5 = alt(5).group;
  MonomorphismOptions mo;
  mo.up_to_conjugacy = true;
  mo.max_found = 1;
  mo.budget = budget;
  mo.accept = [&](GroupIsoMap const &m) {
    PermGroup x = m.image_group(t.degree());
    std::uint64_t meet = 0;
    x.for_each_element([&](Permutation const &y) {
      meet += k.contains(y);
      return true;
    });
    return meet * c.order_T == want;
  };
  auto found = find_monomorphisms(a5, t, mo);
  if (!found.empty()) {
    c.confirmed = true;
    c.a5_images = found[0].images;
    c.note = "A5 image transitive on the " + std::to_string(c.index) + " cosets of K";
  } else {
    c.note = "no A5 subgroup of T is transitive on the cosets of K";
  }
  return c;
}

FactorizationRow verify_factorization_row(std::string const &row, std::uint64_t budget)
{
  FactorizationRow r;
  r.row = row;
  auto add = [&](FactorizationCheck c) { r.checks.push_back(std::move(c)); };
  if (row == "1") {
    PermGroup t = alt(6).group;
    add(verify_factorization("A6", t, "A4", named(6, {"(1,2,3)", "(1,2)(3,4)"}, 12, "A4"), budget));
    add(verify_factorization("A6", t, "S4",
                            named(6, {"(1,2,3)", "(1,2)(5,6)", "(1,2,3,4)(5,6)"}, 24, "S4"),
                            budget));
    add(verify_factorization("A6", t, "3^2:4",
                            named(6, {"(1,2,3)", "(4,5,6)", "(1,4,2,5)(3,6)"}, 36, "3^2:4"),
                            budget));
    add(verify_factorization("A6", t, "A5", t.stabilizer(5), budget));
  } else if (row == "2") {
    PermGroup k = fano_stabilizer_in_a7();
    if (k.order() != 168)
      throw InternalError("PSL2(7) in A7: order " + std::to_string(k.order()));
    add(verify_factorization("A7", alt(7).group, "PSL2(7)", k, budget));
  } else if (row == "3") {
    PermGroup t = alt(8).group;
    add(verify_factorization("A8", t, "AGL3(2)", agl3_2().group, budget));
  } else if (row == "4" || row == "5" || row == "6" || row == "7") {
    std::uint32_t q = row == "4" ? 11 : row == "5" ? 19 : row == "6" ? 29 : 59;
    PermGroup t = psl2(q).group;
    std::string tname = "PSL2(" + std::to_string(q) + ")";
    std::string zq = "Z" + std::to_string(q);
    Permutation u = t.generators()[0]; // unipotent, order q
    PermGroup stab = t.stabilizer(fixed_point(u));
    std::string full = zq + ":Z" + std::to_string((q - 1) / 2);
    if (q == 11)
      add(verify_factorization(tname, t, zq, PermGroup(t.degree(), {u}), budget));
    if (q == 29) {
      // index-2 subgroup of the stabilizer
      std::optional<Permutation> w;
      stab.for_each_element([&](Permutation const &x) {
        if (x.order() == 7)
          w = x;
        return !w;
      });
      PermGroup k(t.degree(), {u, *w});
      if (k.order() != 203)
        throw InternalError("Z29:Z7: order " + std::to_string(k.order()));
      add(verify_factorization(tname, t, zq + ":Z7", k, budget));
    }
    add(verify_factorization(tname, t, full, stab, budget));
  } else if (row == "8") {
    PermGroup t = m12().group;
    add(verify_factorization("M12", t, "M11", t.stabilizer(0), budget));
  } else if (row.size() > 1 && row[0] == 'A') {
    std::size_t n = 0;
    try {
      n = std::stoul(row.substr(1));
    } catch (std::exception const &) {
      throw InputError("unknown table row '" + row + "'");
    }
    if (n != 10 && n != 12 && n != 15 && n != 20 && n != 30 && n != 60)
      throw InputError("A-series rows are A10, A12, A15, A20, A30, A60");
    add(a_series(n));
  } else {
    throw InputError("unknown table row '" + row + "'");
  }
  return r;
}

} // namespace vtgi
