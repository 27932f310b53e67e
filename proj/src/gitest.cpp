#include "vtgi/gitest.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace vtgi
{

std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::GI:
    return "GI";
  case Verdict::NOT_GI:
    return "NOT_GI";
  default:
    return "UNKNOWN";
  }
}

ordered_json Limits::to_json() const
{
  ordered_json j;
  j["subsets"] = subsets;
  j["automorphisms"] = automorphisms;
  j["elements"] = elements;
  j["canon_nodes"] = canon_nodes;
  return j;
}

ordered_json GIVerdict::to_json(Limits const &limits) const
{
  ordered_json j;
  j["verdict"] = to_string(verdict);
  j["method"] = method;
  ordered_json w = witnesses;
  if (!reason.empty())
    w["reason"] = reason;
  j["witnesses"] = w;
  j["budget"] = limits.to_json();
  return j;
}

ordered_json perms_json(std::vector<Permutation> const &ps)
{
  ordered_json a = ordered_json::array();
  for (auto const &p : ps)
    a.push_back(format_cycles(p));
  return a;
}

namespace
{

GIVerdict unknown(std::string method, std::string reason)
{
  GIVerdict v;
  v.method = std::move(method);
  v.reason = std::move(reason);
  return v;
}

std::uint64_t factorial_upto(std::size_t n, std::uint64_t cap)
{
  std::uint64_t r = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    if (r > cap / i)
      return cap + 1;
    r *= i;
  }
  return r;
}

CanonOptions canon_options(Limits const &limits)
{
  CanonOptions o;
  o.node_budget = limits.canon_nodes;
  return o;
}

/// An automorphism of G fixing H together with its action on admissible
/// double cosets.
struct Tau
{
  std::size_t map;                 // index into AutomorphismList::maps
  std::vector<std::size_t> perm;   // admissible position -> position
};

/// Subsets of the admissible double cosets of (G,H) as bitmasks, with
/// the action of Aut(G)_H on them.
class MaskSpace
{
public:
  MaskSpace(std::shared_ptr<CosetTable const> table, AutomorphismList const &aut)
    : _table(std::move(table)), _aut(aut)
  {
    auto const &dcs = _table->double_cosets();
    _pos.assign(dcs.size(), npos);
    for (std::size_t k : _table->admissible()) {
      _pos[k] = _adm.size();
      _adm.push_back(k);
      _sizes.push_back(dcs[k].size());
    }
    for (std::size_t k : _adm)
      _inverse.push_back(_pos[_table->inverse_double_coset(k)]);

    auto const &H = _table->H();
    auto const &idx = _aut.index;
    auto image = [&](GroupIsoMap const &m, Permutation const &x) {
      return idx[m.table[idx.index_of(x)]];
    };
    std::set<std::vector<std::size_t>> distinct;
    for (std::size_t i = 0; i < _aut.maps.size(); ++i) {
      auto const &m = _aut.maps[i];
      bool fixes_h = std::all_of(H.generators().begin(), H.generators().end(),
                                 [&](Permutation const &h) { return H.contains(image(m, h)); });
      if (!fixes_h)
        continue;
      Tau t{i, std::vector<std::size_t>(_adm.size())};
      for (std::size_t p = 0; p < _adm.size(); ++p) {
        auto const &rep = dcs[_adm[p]].representative;
        t.perm[p] = _pos[_table->double_coset_of_coset(_table->coset_of(image(m, rep)))];
      }
      distinct.insert(t.perm);
      _taus.push_back(std::move(t));
    }
    // orbits only need generators of the induced group
    if (!_adm.empty()) {
      SubgroupBuilder b(_adm.size());
      for (auto const &perm : distinct)
        b.offer(Permutation(std::vector<Point>(perm.begin(), perm.end())));
      for (auto const &g : b.group().generators())
        _gens.emplace_back(g.images().begin(), g.images().end());
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t dimension() const { return _adm.size(); }
  std::size_t stabilizer_size() const { return _taus.size(); }
  std::vector<Tau> const &taus() const { return _taus; }
  CosetTable const &table() const { return *_table; }
  std::shared_ptr<CosetTable const> const &table_ptr() const { return _table; }

  std::uint64_t act(std::vector<std::size_t> const &perm, std::uint64_t m) const
  {
    std::uint64_t out = 0;
    for (std::size_t p = 0; p < perm.size(); ++p)
      if (m >> p & 1u)
        out |= std::uint64_t{1} << perm[p];
    return out;
  }

  std::uint64_t mask_of(std::vector<char> const &selected) const
  {
    std::uint64_t m = 0;
    for (std::size_t p = 0; p < _adm.size(); ++p)
      if (selected[_adm[p]])
        m |= std::uint64_t{1} << p;
    return m;
  }

  std::vector<char> selection(std::uint64_t m) const
  {
    std::vector<char> sel(_pos.size(), 0);
    for (std::size_t p = 0; p < _adm.size(); ++p)
      if (m >> p & 1u)
        sel[_adm[p]] = 1;
    return sel;
  }

  std::vector<std::size_t> ids(std::uint64_t m) const
  {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < _adm.size(); ++p)
      if (m >> p & 1u)
        out.push_back(_adm[p]);
    return out;
  }

  std::size_t valency(std::uint64_t m) const
  {
    std::size_t v = 0;
    for (std::size_t p = 0; p < _adm.size(); ++p)
      if (m >> p & 1u)
        v += _sizes[p];
    return v;
  }

  bool self_paired(std::uint64_t m) const
  {
    for (std::size_t p = 0; p < _adm.size(); ++p)
      if ((m >> p & 1u) && !(m >> _inverse[p] & 1u))
        return false;
    return true;
  }

  /// Orbit of m; mark(y) records y and returns false when already seen.
  template <class Mark>
  std::vector<std::uint64_t> orbit_with(std::uint64_t m, Mark &&mark) const
  {
    std::vector<std::uint64_t> out{m};
    mark(m);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (auto const &g : _gens) {
        std::uint64_t y = act(g, out[i]);
        if (mark(y))
          out.push_back(y);
      }
    return out;
  }

  std::vector<std::uint64_t> orbit(std::uint64_t m, std::vector<char> &visited) const
  {
    return orbit_with(m, [&](std::uint64_t y) {
      if (visited[y])
        return false;
      visited[y] = 1;
      return true;
    });
  }

  std::vector<std::size_t> const &sizes() const { return _sizes; }

  ordered_json union_json(std::uint64_t m) const
  {
    if (_rep_text.empty())
      for (std::size_t k : _adm)
        _rep_text.push_back(format_cycles(_table->double_cosets()[k].representative));
    ordered_json a = ordered_json::array();
    for (std::size_t p = 0; p < _adm.size(); ++p)
      if (m >> p & 1u)
        a.push_back(_rep_text[p]);
    return a;
  }

  ordered_json const &tau_json(Tau const &t) const
  {
    auto [it, fresh] = _tau_text.try_emplace(t.map);
    if (fresh) {
      auto const &m = _aut.maps[t.map];
      it->second["generators"] = perms_json(m.source_generators);
      it->second["images"] = perms_json(m.images);
    }
    return it->second;
  }

private:
  std::shared_ptr<CosetTable const> _table;
  AutomorphismList const &_aut;
  std::vector<std::size_t> _adm, _pos, _sizes, _inverse;
  std::vector<Tau> _taus;
  std::vector<std::vector<std::size_t>> _gens;
  // witness text, formatted on first use
  mutable std::vector<std::string> _rep_text;
  mutable std::map<std::size_t, ordered_json> _tau_text;
};

std::optional<std::string> mask_budget(std::size_t d, Limits const &limits)
{
  if (d >= 63 || (std::uint64_t{1} << d) > limits.subsets)
    return std::to_string(d) + " admissible double cosets: 2^" + std::to_string(d) +
           " unions exceed the subset limit " + std::to_string(limits.subsets);
  return std::nullopt;
}

} // namespace

struct DefinitionTester::Impl
{
  struct Orbit
  {
    std::vector<std::uint64_t> members;
    std::optional<Certificate> cert;
  };

  /// Unions of one valency and self-pairing, grouped into Aut(G)_H orbits.
  struct Class
  {
    std::string failure;
    std::vector<Orbit> orbits;
    std::unordered_map<std::uint64_t, std::size_t> orbit_of;
    // orbit ids by certificate, once every certificate is known
    std::optional<std::unordered_map<Certificate, std::vector<std::size_t>, CertificateHash>> index;
  };

  std::shared_ptr<CosetTable const> table;
  Limits limits;
  std::string failure;
  std::optional<AutomorphismList> aut;
  std::optional<MaskSpace> ms;
  std::map<std::pair<std::size_t, bool>, Class> classes;

  Class &get_class(std::size_t val, bool undirected)
  {
    auto [it, fresh] = classes.try_emplace({val, undirected});
    Class &c = it->second;
    if (!fresh)
      return c;
    auto const &sizes = ms->sizes();
    std::size_t d = sizes.size();
    // subsets by total size, saturating at the limit
    std::vector<std::uint64_t> count(val + 1, 0);
    count[0] = 1;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t v = val; v >= sizes[p] && sizes[p] > 0; --v)
        count[v] = std::min(limits.subsets + 1, count[v] + count[v - sizes[p]]);
    if (count[val] > limits.subsets) {
      c.failure = "more than " + std::to_string(limits.subsets) + " unions of valency " +
                  std::to_string(val) + " (subset limit)";
      return c;
    }
    // suffix[p] = total size of positions below p
    std::vector<std::size_t> below(d + 1, 0);
    for (std::size_t p = 0; p < d; ++p)
      below[p + 1] = below[p] + sizes[p];
    // increasing mask order: decide bits from the top, 0 before 1
    auto visit = [&](auto &&self, std::size_t p, std::uint64_t m, std::size_t left) -> void {
      if (left > below[p])
        return;
      if (p == 0) {
        if (left == 0 && ms->self_paired(m) == undirected && !c.orbit_of.count(m)) {
          std::size_t id = c.orbits.size();
          auto members = ms->orbit_with(m, [&](std::uint64_t y) {
            return c.orbit_of.emplace(y, id).second;
          });
          c.orbits.push_back({std::move(members), std::nullopt});
        }
        return;
      }
      self(self, p - 1, m, left);
      if (sizes[p - 1] <= left)
        self(self, p - 1, m | std::uint64_t{1} << (p - 1), left - sizes[p - 1]);
    };
    visit(visit, d, 0, val);
    return c;
  }

  Certificate const &cert(Class &c, std::size_t i)
  {
    auto &o = c.orbits[i];
    if (!o.cert)
      o.cert = canonical_form(table->graph(ms->selection(o.members.front())), canon_options(limits));
    return *o.cert;
  }
};

DefinitionTester::DefinitionTester(std::shared_ptr<CosetTable const> table, Limits const &limits)
  : _impl(std::make_unique<Impl>())
{
  _impl->table = std::move(table);
  _impl->limits = limits;
  std::size_t d = _impl->table->admissible().size();
  if (d >= 64) {
    _impl->failure = std::to_string(d) + " admissible double cosets exceed 63";
    return;
  }
  try {
    _impl->aut.emplace(automorphism_group_of(_impl->table->G(), limits.automorphisms));
  } catch (BudgetExceeded const &e) {
    _impl->failure = e.what();
    return;
  }
  _impl->ms.emplace(_impl->table, *_impl->aut);
}

DefinitionTester::~DefinitionTester() = default;
DefinitionTester::DefinitionTester(DefinitionTester &&) noexcept = default;
DefinitionTester &DefinitionTester::operator=(DefinitionTester &&) noexcept = default;

DefinitionTester::Decision DefinitionTester::decide(CosetGraphSpec const &spec)
{
  Impl &im = *_impl;
  if (spec.table != im.table && !(spec.G().same_group(im.table->G()) &&
                                  spec.H().same_group(im.table->H()) &&
                                  spec.table->double_cosets().size() == im.table->double_cosets().size()))
    throw InputError("spec is over a different (G,H) than the tester");
  Decision d;
  if (!im.failure.empty()) {
    d.reason = im.failure;
    return d;
  }
  MaskSpace const &ms = *im.ms;
  d.mask = ms.mask_of(spec.selected);
  auto &cls = im.get_class(ms.valency(d.mask), ms.self_paired(d.mask));
  if (!cls.failure.empty()) {
    d.reason = cls.failure;
    return d;
  }
  std::size_t const own = cls.orbit_of.at(d.mask);
  d.orbit = &cls.orbits[own].members;
  try {
    Certificate const cert = im.cert(cls, own);
    std::optional<std::size_t> match;
    if (cls.index) {
      for (std::size_t i : cls.index->at(cert))
        if (i != own) {
          match = i;
          break;
        }
    } else {
      for (std::size_t i = 0; i < cls.orbits.size() && !match; ++i)
        if (i != own && im.cert(cls, i) == cert)
          match = i;
      if (!match) {
        cls.index.emplace();
        for (std::size_t i = 0; i < cls.orbits.size(); ++i)
          (*cls.index)[*cls.orbits[i].cert].push_back(i);
      }
    }
    if (match)
      d.other = cls.orbits[*match].members.front();
    d.verdict = match ? Verdict::NOT_GI : Verdict::GI;
  } catch (BudgetExceeded const &e) {
    d.reason = e.what();
  }
  return d;
}

Verdict DefinitionTester::classify(CosetGraphSpec const &spec)
{
  return decide(spec).verdict;
}

GIVerdict DefinitionTester::test(CosetGraphSpec const &spec)
{
  std::string const method = "definition";
  Decision d = decide(spec);
  if (d.verdict == Verdict::UNKNOWN)
    return unknown(method, d.reason);
  MaskSpace const &ms = *_impl->ms;
  std::uint64_t const s = d.mask;
  auto const &covered = *d.orbit;

  if (d.verdict == Verdict::NOT_GI) {
    try {
      DiGraph gamma = build(spec);
      DiGraph sigma_graph = ms.table().graph(ms.selection(*d.other));
      auto sigma = isomorphism(gamma, sigma_graph, canon_options(_impl->limits));
      if (!sigma || !is_isomorphism(gamma, sigma_graph, *sigma))
        throw InternalError("equal certificates without a verified isomorphism");
      GIVerdict v;
      v.verdict = Verdict::NOT_GI;
      v.method = method;
      v.witnesses["S"] = ms.union_json(s);
      v.witnesses["T"] = ms.union_json(*d.other);
      v.witnesses["sigma"] = format_cycles(*sigma);
      v.witnesses["aut_G_H_order"] = ms.stabilizer_size();
      v.witnesses["isomorphic_unions_reached"] = covered.size();
      return v;
    } catch (BudgetExceeded const &e) {
      return unknown(method, e.what());
    }
  }

  GIVerdict v;
  v.verdict = Verdict::GI;
  v.method = method;
  v.witnesses["S"] = ms.union_json(s);
  v.witnesses["aut_G_H_order"] = ms.stabilizer_size();
  v.witnesses["isomorphic_unions"] = covered.size();
  ordered_json table = ordered_json::array();
  for (std::uint64_t t : covered) {
    if (table.size() == 16)
      break;
    for (auto const &tau : ms.taus())
      if (ms.act(tau.perm, s) == t) {
        ordered_json row;
        row["T"] = ms.union_json(t);
        row["tau"] = ms.tau_json(tau);
        table.push_back(row);
        break;
      }
  }
  v.witnesses["tau_table"] = table;
  return v;
}

GIVerdict gi_by_definition(CosetGraphSpec const &spec, Limits const &limits)
{
  return DefinitionTester(spec.table, limits).test(spec);
}

GIVerdict gi_by_conjugacy(CosetGraphSpec const &spec, Limits const &limits)
{
  std::string const method = "conjugacy";
  DiGraph gamma = build(spec);
  PermGroup ghat = spec.table->hat_group();
  std::size_t const n = gamma.order();
  PermGroup a;
  try {
    a = automorphisms(gamma, canon_options(limits));
  } catch (BudgetExceeded const &e) {
    return unknown(method, e.what());
  }
  GIVerdict v;
  v.method = method;
  v.witnesses["aut_order"] = a.order();
  v.witnesses["induced_order"] = ghat.order();
  if (a.order() == ghat.order()) {
    v.verdict = Verdict::GI;
    v.reason = "Aut(graph) equals the induced group";
    return v;
  }
  if (a.order() == factorial_upto(n, std::numeric_limits<std::uint64_t>::max() - 1)) {
    // every permutation isomorphic copy is conjugate in Sym(n)
    v.verdict = Verdict::GI;
    v.reason = "Aut(graph) is the full symmetric group";
    return v;
  }
  if (a.order() > limits.elements)
    return unknown(method, "|Aut(graph)| = " + std::to_string(a.order()) +
                             " exceeds the element limit");

  std::vector<Permutation> g0 = ghat.stabilizer(0).generators();
  MonomorphismOptions mo;
  mo.match_cycle_types = true;
  mo.up_to_conjugacy = true;
  mo.budget = limits.elements;
  mo.accept = [&](GroupIsoMap const &m) {
    PermGroup x = m.image_group(n);
    if (!x.is_transitive())
      return false;
    PermGroup x0(n, m.apply(ghat, g0));
    for (Point b = 0; b < n; ++b)
      if (x0.orbit(b).size() == 1)
        return true;
    return false;
  };
  std::vector<PermGroup> classes;
  try {
    for (auto const &m : find_monomorphisms(ghat, a, mo)) {
      PermGroup x = m.image_group(n);
      bool fresh = std::none_of(classes.begin(), classes.end(), [&](PermGroup const &c) {
        return transporter(a, c, x, limits.elements).has_value();
      });
      if (fresh)
        classes.push_back(std::move(x));
      if (classes.size() == 2)
        break;
    }
  } catch (BudgetExceeded const &e) {
    return unknown(method, e.what());
  }
  if (classes.empty())
    throw InternalError("the induced group itself was not found among the images");
  if (classes.size() == 1) {
    v.verdict = Verdict::GI;
    v.witnesses["class"] = perms_json(classes[0].generators());
    return v;
  }
  if (transporter(a, classes[0], classes[1], limits.elements))
    throw InternalError("witness subgroups turned out conjugate");
  v.verdict = Verdict::NOT_GI;
  v.witnesses["X1"] = perms_json(classes[0].generators());
  v.witnesses["X2"] = perms_json(classes[1].generators());
  return v;
}

std::optional<GIVerdict> gi_sufficient_hall(CosetGraphSpec const &spec, Limits const &limits)
{
  std::uint64_t const order = spec.G().order();
  if (order % 2 == 0)
    return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t q = 3; q <= order; q += 2)
    if (order % q == 0) {
      p = q;
      break;
    }
  GIVerdict v;
  v.verdict = Verdict::GI;
  v.method = "hall_sufficient";
  if (p == 0) {
    // trivial group: the only coset graph is a single vertex
    v.reason = "trivial group";
    return v;
  }
  auto report = structure_report(spec);
  if (report.connected && report.valency < p) {
    v.reason = "connected and valency " + std::to_string(report.valency) +
               " is below the smallest prime divisor " + std::to_string(p);
    v.witnesses["valency"] = report.valency;
    v.witnesses["smallest_prime"] = p;
    return v;
  }
  PermGroup a;
  try {
    a = automorphisms(build(spec), canon_options(limits));
  } catch (BudgetExceeded const &) {
    return std::nullopt;
  }
  std::uint64_t a0 = a.order() / a.degree();
  if (std::gcd(order, a0) == 1) {
    v.reason = "gcd(|G|, |A_0|) = 1";
    v.witnesses["stabilizer_order"] = a0;
    return v;
  }
  return std::nullopt;
}

std::optional<GIVerdict> non_gi_component_certificate(PermGroup const &g, PermGroup const &h,
                                                      std::vector<Permutation> const &s,
                                                      GroupIsoMap const &phi,
                                                      Limits const &limits)
{
  std::size_t const n = g.degree();
  PermGroup l = join(h, s);
  PermGroup src(n, phi.source_generators);
  if (!src.same_group(l))
    throw InputError("embedding must be given on generators of <H,S>");
  if (!is_valid_iso(src, phi.images))
    throw InputError("assignment does not extend to a monomorphism");
  for (auto const &x : phi.images)
    if (!g.contains(x))
      throw InputError("embedding image " + format_cycles(x) + " is not in G");
  for (auto const &x : phi.apply(src, h.generators()))
    if (!h.contains(x))
      throw InputError("embedding does not map H onto itself");
  PermGroup lp(n, phi.images);
  if (lp.same_group(l))
    return std::nullopt; // identity works

  GIVerdict v;
  v.verdict = Verdict::NOT_GI;
  v.method = "component_certificate";
  v.witnesses["phi"]["generators"] = perms_json(phi.source_generators);
  v.witnesses["phi"]["images"] = perms_json(phi.images);

  std::uint64_t const n_fact = factorial_upto(n, limits.elements);
  bool alternating = n >= 7 && n <= 20 &&
                     g.order() == factorial_upto(n, std::numeric_limits<std::uint64_t>::max() - 1) / 2;
  if (alternating) {
    // Aut(A_n) acts by conjugation in S_n, which preserves cycle types
    auto cl = cycle_type_census(l, limits.elements);
    auto cp = cycle_type_census(lp, limits.elements);
    if (cl != cp) {
      auto census_json = [](auto const &c) {
        ordered_json a = ordered_json::array();
        for (auto const &[type, count] : c) {
          ordered_json e;
          e["cycle_type"] = type.to_string();
          e["count"] = count;
          a.push_back(e);
        }
        return a;
      };
      v.witnesses["invariant"] = "cycle_type_census";
      v.witnesses["census_HS"] = census_json(cl);
      v.witnesses["census_HS_phi"] = census_json(cp);
      return v;
    }
    if (n_fact > limits.elements)
      throw BudgetExceeded("cycle-type invariant inconclusive and S_" + std::to_string(n) +
                           " is beyond the element limit");
    std::vector<Point> c(n);
    std::iota(c.begin(), c.end(), Point{0});
    std::vector<Point> t(c);
    std::rotate(c.begin(), c.begin() + 1, c.end());
    std::swap(t[0], t[1]);
    PermGroup sn(n, {Permutation(c), Permutation(t)});
    bool found = !sn.for_each_element([&](Permutation const &x) {
      for (auto const &y : h.generators())
        if (!h.contains(y.conjugate_by(x)))
          return true;
      for (auto const &y : l.generators())
        if (!lp.contains(y.conjugate_by(x)))
          return true;
      return false;
    });
    if (found)
      return std::nullopt;
    v.witnesses["invariant"] = "exhaustive_conjugation";
    return v;
  }

  AutomorphismList aut = automorphism_group_of(g, limits.automorphisms);
  auto const &idx = aut.index;
  for (auto const &m : aut.maps) {
    auto image = [&](Permutation const &x) { return idx[m.table[idx.index_of(x)]]; };
    bool ok = std::all_of(h.generators().begin(), h.generators().end(),
                          [&](Permutation const &y) { return h.contains(image(y)); }) &&
              std::all_of(l.generators().begin(), l.generators().end(),
                          [&](Permutation const &y) { return lp.contains(image(y)); });
    if (ok)
      return std::nullopt;
  }
  v.witnesses["invariant"] = "exhaustive_automorphisms";
  v.witnesses["aut_order"] = aut.maps.size();
  return v;
}

std::optional<GIVerdict> non_gi_component_certificate(CosetGraphSpec const &spec,
                                                      GroupIsoMap const &phi,
                                                      Limits const &limits)
{
  return non_gi_component_certificate(spec.G(), spec.H(), spec.connection_set, phi, limits);
}

bool is_hamiltonian_group(PermGroup const &g, std::uint64_t budget)
{
  auto lattice = subgroup_lattice(g, budget);
  return std::all_of(lattice.begin(), lattice.end(), [](auto const &c) { return c.normal; });
}

CensusReport dgi_census(PermGroup const &g, bool directed, Limits const &limits)
{
  CensusReport r;
  r.directed = directed;
  auto lattice = subgroup_lattice(g);
  AutomorphismList aut = automorphism_group_of(g, limits.automorphisms);
  bool hamiltonian = std::all_of(lattice.begin(), lattice.end(),
                                 [](auto const &c) { return c.normal; });
  auto opts = canon_options(limits);
  bool incomplete = false;

  for (auto const &cls : lattice) {
    if (!cls.core_free)
      continue;
    if (hamiltonian && !cls.group.is_trivial())
      throw InternalError("nontrivial core-free subgroup in a Hamiltonian group");
    std::size_t hid = r.subgroups.size();
    r.subgroups.push_back(cls.group);
    auto table = std::make_shared<CosetTable const>(g, cls.group);
    MaskSpace ms(table, aut);
    std::size_t d = ms.dimension();
    if (auto why = mask_budget(d, limits)) {
      incomplete = true;
      r.reason = *why;
      continue;
    }
    std::uint64_t const total = std::uint64_t{1} << d;
    std::vector<char> visited(total, 0);
    std::map<Certificate, std::vector<std::size_t>> by_cert;
    try {
      for (std::uint64_t m = 0; m < total; ++m) {
        if (visited[m] || (!directed && !ms.self_paired(m)))
          continue;
        auto orb = ms.orbit(m, visited);
        CensusRow row;
        row.subgroup = hid;
        row.double_cosets = ms.ids(m);
        row.orbit_size = orb.size();
        r.graphs += orb.size();
        by_cert[canonical_form(table->graph(ms.selection(m)), opts)].push_back(r.rows.size());
        r.rows.push_back(std::move(row));
      }
    } catch (BudgetExceeded const &e) {
      incomplete = true;
      r.reason = e.what();
      continue;
    }
    for (auto const &[cert, rows] : by_cert)
      for (std::size_t i : rows) {
        r.rows[i].verdict = rows.size() == 1 ? Verdict::GI : Verdict::NOT_GI;
        if (rows.size() > 1)
          r.non_gi += r.rows[i].orbit_size;
      }
  }
  if (r.non_gi)
    r.verdict = Verdict::NOT_GI;
  else
    r.verdict = incomplete ? Verdict::UNKNOWN : Verdict::GI;
  return r;
}

ordered_json CensusReport::to_json() const
{
  ordered_json j;
  j["verdict"] = verdict == Verdict::GI ? (directed ? "DGI" : "GI")
                 : verdict == Verdict::NOT_GI ? (directed ? "NOT_DGI" : "NOT_GI")
                                              : "UNKNOWN";
  j["directed"] = directed;
  if (!reason.empty())
    j["reason"] = reason;
  j["graphs"] = graphs;
  j["non_gi"] = non_gi;
  ordered_json subs = ordered_json::array();
  for (auto const &h : subgroups) {
    ordered_json s;
    s["order"] = h.order();
    s["generators"] = perms_json(h.generators());
    subs.push_back(s);
  }
  j["subgroups"] = subs;
  ordered_json rs = ordered_json::array();
  for (auto const &row : rows) {
    ordered_json e;
    e["subgroup"] = row.subgroup;
    e["double_cosets"] = row.double_cosets;
    e["orbit_size"] = row.orbit_size;
    e["verdict"] = to_string(row.verdict);
    rs.push_back(e);
  }
  j["rows"] = rs;
  return j;
}

namespace
{

bool one_mod_divisor(std::uint64_t m, std::uint64_t p)
{
  for (std::uint64_t d = 2; d <= m; ++d)
    if (m % d == 0 && d % p == 1)
      return true;
  return false;
}

std::optional<PermGroup> regular_in_lattice(PermGroup const &x, std::size_t n)
{
  for (auto const &c : subgroup_lattice(x))
    if (c.group.order() == n && c.group.is_transitive())
      return c.group;
  return std::nullopt;
}

/// Smallest image array among the nontrivial powers of x.
Permutation cyclic_key(Permutation const &x, std::uint64_t p)
{
  Permutation best = x, y = x;
  for (std::uint64_t k = 2; k < p; ++k) {
    y *= x;
    if (y < best)
      best = y;
  }
  return best;
}

} // namespace

std::optional<PermGroup> has_regular_subgroup(PermGroup const &a, std::size_t n,
                                              Limits const &limits)
{
  if (a.degree() != n)
    throw InputError("degree of A differs from n");
  if (!a.is_transitive())
    throw InputError("A is not transitive");
  std::uint64_t const order = a.order();
  if (order % n)
    return std::nullopt;
  if (order == n)
    return a;
  if (order == factorial_upto(n, std::numeric_limits<std::uint64_t>::max() - 1)) {
    std::vector<Point> c(n);
    std::iota(c.begin(), c.end(), Point{0});
    std::rotate(c.begin(), c.begin() + 1, c.end());
    return PermGroup(n, {Permutation(c)});
  }

  // A prime p with p || n such that every group of order n has a normal
  // Sylow p-subgroup: no divisor d > 1 of n/p is 1 mod p.
  std::uint64_t p = 0;
  for (std::uint64_t q = n; q >= 2; --q) {
    bool prime = true;
    for (std::uint64_t f = 2; f * f <= q; ++f)
      if (q % f == 0)
        prime = false;
    if (prime && n % q == 0 && (n / q) % q != 0 && !one_mod_divisor(n / q, q)) {
      p = q;
      break;
    }
  }
  if (p == 0) {
    if (order > kLatticeLimit)
      throw BudgetExceeded("no normal Sylow reduction for n = " + std::to_string(n) +
                           " and |A| = " + std::to_string(order) +
                           " exceeds the lattice limit");
    return regular_in_lattice(a, n);
  }
  if (order > limits.elements)
    throw BudgetExceeded("|A| = " + std::to_string(order) + " exceeds the element limit");

  // R contains a fixed-point-free x of order p and lies in N_A(<x>);
  // one <x> per A-conjugacy class suffices.
  std::unordered_map<Permutation, char, PermutationHash> seen;
  std::optional<PermGroup> found;
  std::optional<std::string> budget_error;
  a.for_each_element([&](Permutation const &x) {
    if (x.order() != p)
      return true;
    std::size_t moved = 0;
    for (auto const &c : x.cycles())
      moved += c.size();
    if (moved != n)
      return true;
    Permutation key = cyclic_key(x, p);
    if (seen.count(key))
      return true;
    std::vector<Permutation> queue{key};
    seen.emplace(key, 1);
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (auto const &g : a.generators()) {
        Permutation k = cyclic_key(queue[i].conjugate_by(g), p);
        if (seen.emplace(k, 1).second)
          queue.push_back(std::move(k));
      }
    PermGroup px(n, {x});
    PermGroup nx = normalizer(a, px, limits.elements);
    if (nx.order() % n)
      return true;
    if (nx.order() > kLatticeLimit) {
      budget_error = "normalizer of order " + std::to_string(nx.order()) +
                     " exceeds the lattice limit";
      return false;
    }
    found = regular_in_lattice(nx, n);
    return !found;
  });
  if (budget_error)
    throw BudgetExceeded(*budget_error);
  return found;
}

} // namespace vtgi
