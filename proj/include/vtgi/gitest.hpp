#ifndef VTGI_GITEST_HPP
#define VTGI_GITEST_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vtgi/canon.hpp"
#include "vtgi/cosetgraph.hpp"
#include "vtgi/group.hpp"

namespace vtgi
{

using ordered_json = nlohmann::ordered_json;

enum class Verdict
{
  GI,
  NOT_GI,
  UNKNOWN
};

std::string to_string(Verdict v);

struct Limits
{
  std::uint64_t subsets = std::uint64_t{1} << 20; // double coset unions per (G,H)
  std::uint64_t automorphisms = kAutomorphismLimit; // |G| for Aut(G)
  std::uint64_t elements = kElementLimit;           // enumerable group orders
  std::uint64_t canon_nodes = 50'000'000;

  ordered_json to_json() const;
};

struct GIVerdict
{
  Verdict verdict = Verdict::UNKNOWN;
  std::string method;  // definition | conjugacy | hall_sufficient | component_certificate
  std::string reason;  // set for UNKNOWN and for short-circuits
  ordered_json witnesses = ordered_json::object();

  /// {"verdict", "method", "witnesses", "budget"} in that order.
  ordered_json to_json(Limits const &limits) const;
};

/// Enumerates unions T of admissible double cosets whose coset graph is
/// isomorphic to the given one and checks each is reached from HSH by some
/// automorphism of G fixing H. Only unions of the same valency and the
/// same self-pairing are candidates; their number is capped by
/// limits.subsets.
GIVerdict gi_by_definition(CosetGraphSpec const &spec, Limits const &limits = {});

/// gi_by_definition for many specs over one (G,H): Aut(G)_H, the
/// candidate unions of each valency and their certificates are computed
/// once and reused.
class DefinitionTester
{
public:
  explicit DefinitionTester(std::shared_ptr<CosetTable const> table, Limits const &limits = {});
  ~DefinitionTester();
  DefinitionTester(DefinitionTester &&) noexcept;
  DefinitionTester &operator=(DefinitionTester &&) noexcept;

  /// spec.table must be this tester's table.
  GIVerdict test(CosetGraphSpec const &spec);
  /// The verdict of test() without building witnesses.
  Verdict classify(CosetGraphSpec const &spec);

private:
  struct Impl;
  struct Decision
  {
    Verdict verdict = Verdict::UNKNOWN;
    std::string reason;
    std::uint64_t mask = 0;
    std::vector<std::uint64_t> const *orbit = nullptr;
    std::optional<std::uint64_t> other; // an isomorphic union outside the orbit
  };
  Decision decide(CosetGraphSpec const &spec);

  std::unique_ptr<Impl> _impl;
};

/// GI iff all subgroups of Aut(graph) permutation isomorphic to the induced
/// group are conjugate in Aut(graph).
GIVerdict gi_by_conjugacy(CosetGraphSpec const &spec, Limits const &limits = {});

/// GI for odd |G| when the graph is connected of valency below the smallest
/// prime divisor of |G|, or when gcd(|G|, |A_0|) = 1. Never NOT_GI.
std::optional<GIVerdict> gi_sufficient_hall(CosetGraphSpec const &spec,
                                            Limits const &limits = {});

/// NOT_GI when no automorphism tau of G has H^tau = H and
/// <H,S>^tau = <H,S^phi>. phi is a monomorphism of <H,S> into G with
/// H^phi = H, given on any generating set of <H,S>.
std::optional<GIVerdict> non_gi_component_certificate(PermGroup const &g, PermGroup const &h,
                                                      std::vector<Permutation> const &s,
                                                      GroupIsoMap const &phi,
                                                      Limits const &limits = {});
std::optional<GIVerdict> non_gi_component_certificate(CosetGraphSpec const &spec,
                                                      GroupIsoMap const &phi,
                                                      Limits const &limits = {});

struct CensusRow
{
  std::size_t subgroup = 0;              // index into CensusReport::subgroups
  std::vector<std::size_t> double_cosets; // selected double coset ids
  std::uint64_t orbit_size = 1;          // masks in the same Aut(G)_H orbit
  Verdict verdict = Verdict::UNKNOWN;
};

struct CensusReport
{
  bool directed = true;
  Verdict verdict = Verdict::UNKNOWN; // GI means DGI (directed) or GI (undirected)
  std::string reason;
  std::vector<PermGroup> subgroups;   // core-free class representatives visited
  std::vector<CensusRow> rows;
  std::size_t graphs = 0;             // masks covered
  std::size_t non_gi = 0;

  ordered_json to_json() const;
};

/// Every coset digraph (or undirected coset graph) of G, one H per
/// conjugacy class of core-free subgroups.
CensusReport dgi_census(PermGroup const &g, bool directed, Limits const &limits = {});

bool is_hamiltonian_group(PermGroup const &g, std::uint64_t budget = kLatticeLimit);

/// A subgroup of `a` of order n acting regularly, or none. `a` must be
/// transitive of degree n. Throws BudgetExceeded when no reduction applies
/// and the subgroup lattice of `a` is out of reach.
std::optional<PermGroup> has_regular_subgroup(PermGroup const &a, std::size_t n,
                                              Limits const &limits = {});

ordered_json perms_json(std::vector<Permutation> const &ps);

} // namespace vtgi

#endif // VTGI_GITEST_HPP
