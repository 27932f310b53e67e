#ifndef VTGI_CATALOG_HPP
#define VTGI_CATALOG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vtgi/canon.hpp"
#include "vtgi/cosetgraph.hpp"
#include "vtgi/group.hpp"

namespace vtgi
{

struct NamedGroup
{
  std::string name;
  PermGroup group;
  std::string provenance;
};

NamedGroup cyclic(std::size_t n);             // regular on n points
NamedGroup dihedral(std::size_t order);       // on order/2 points
NamedGroup dihedral_regular(std::size_t order); // regular on `order` points
NamedGroup sym(std::size_t n);
NamedGroup alt(std::size_t n);
NamedGroup quaternion8();                     // regular on 8 points
NamedGroup frobenius(std::uint32_t p, std::uint32_t q); // x -> ax + b on Z_p
NamedGroup psl2(std::uint32_t q);             // on q + 1 projective points
NamedGroup psp4_3_ext();                      // PSp4(3):2 on 40 points
NamedGroup agl3_2();                          // on the 8 vectors of GF(2)^3
NamedGroup m12();

/// Dispatch by name: cyclic n | dihedral 2n | dihedral_regular 2n | sym n |
/// alt n | quaternion8 | frobenius p q | psl2 q | psp4_3_ext | agl3_2 | m12.
NamedGroup make(std::string const &name, std::vector<long long> const &params = {});

struct CatalogEntry
{
  std::string name;
  std::string params;
  std::size_t degree;
  std::uint64_t order;
  std::string provenance;
};

/// One representative instance of every constructor.
std::vector<CatalogEntry> catalog_list();

// ---------------------------------------------------------------------------

/// The 40-vertex graph of PSp4(3):2 and its two classes of S6 subgroups.
struct FortyVertexExample
{
  PermGroup G;
  PermGroup H;                 // stabilizer of vertex 0
  Permutation g;               // first valid involution in element order
  std::size_t valid_involutions = 0;
  std::size_t valid_double_cosets = 0;
  CosetGraphSpec spec;
  DiGraph graph;
  bool arc_transitive = false;
  PermGroup P;                 // acting on the vertices of graph
  PermGroup Q;
  std::size_t s6_classes = 0;  // classes of S6 subgroups of G
  Permutation sigma;           // sigma^-1 P sigma = Q (permutation isomorphism)
};

FortyVertexExample forty_vertex_example();

struct ComponentExample
{
  std::size_t m = 0, n = 0;
  PermGroup G;
  Permutation a, b;
  PermGroup H;
  std::vector<Permutation> S;
  GroupIsoMap phi; // <a> -> G, a -> b
};

ComponentExample component_example(std::size_t m, std::size_t n);

/// G x G acting on G by x -> g1^-1 x g2, its diagonal and the flip x -> x^-1.
struct DiagonalAction
{
  ElementIndex elements;
  PermGroup N;
  PermGroup D;
  Permutation t;
};

DiagonalAction diagonal_action(PermGroup const &g, std::uint64_t cap = 5000);

struct FactorizationCheck
{
  std::string T;
  std::string K;
  std::uint64_t order_T = 0;
  std::uint64_t order_K = 0;
  std::uint64_t index = 0;
  bool confirmed = false;
  bool symbolic = false;       // T = A_n not materialized
  std::vector<Permutation> a5_images; // generators of the transitive A5
  std::string note;
};

struct FactorizationRow
{
  std::string row;
  std::vector<FactorizationCheck> checks;
  bool confirmed() const;
};

/// Searches a monomorphism A5 -> T whose image is transitive on the
/// cosets of K (equivalently T = A5 K).
FactorizationCheck verify_factorization(std::string tname, PermGroup const &t,
                                        std::string kname, PermGroup const &k,
                                        std::uint64_t budget = kElementLimit);

/// Row ids "1".."8" and "A10", "A12", "A15", "A20", "A30", "A60".
FactorizationRow verify_factorization_row(std::string const &row,
                           std::uint64_t budget = kElementLimit);
std::vector<std::string> factorization_rows();

} // namespace vtgi

#endif // VTGI_CATALOG_HPP
