#ifndef VTGI_MATRIX_HPP
#define VTGI_MATRIX_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vtgi/perm.hpp"

namespace vtgi
{

bool is_prime(std::uint64_t n);

/// Square matrix over the prime field GF(p), entries kept reduced.
class MatFp
{
public:
  MatFp() = default;
  MatFp(std::uint32_t p, std::size_t k); // zero matrix
  MatFp(std::uint32_t p, std::size_t k, std::vector<std::int64_t> const &row_major);

  static MatFp identity(std::uint32_t p, std::size_t k);
  static MatFp scalar(std::uint32_t p, std::size_t k, std::int64_t c);
  static MatFp diagonal(std::uint32_t p, std::vector<std::int64_t> const &d);

  std::uint32_t prime() const { return _p; }
  std::size_t dim() const { return _k; }
  std::uint32_t operator()(std::size_t r, std::size_t c) const { return _e[r * _k + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v);

  MatFp operator*(MatFp const &rhs) const;
  MatFp operator+(MatFp const &rhs) const;
  MatFp transpose() const;
  std::uint32_t determinant() const;
  bool is_invertible() const { return determinant() != 0; }
  MatFp inverse() const; // throws InputError when singular

  /// Row vector times matrix.
  std::vector<std::uint32_t> apply(std::vector<std::uint32_t> const &row) const;

  friend bool operator==(MatFp const &, MatFp const &) = default;

private:
  std::uint32_t _p = 2;
  std::size_t _k = 0;
  std::vector<std::uint32_t> _e;
};

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// Parses the literal format "p k e11 e12 ... ekk" (whitespace separated).
MatFp parse_matrix(std::string_view text);
std::string format_matrix(MatFp const &m);

/// Canonical representatives of the 1-dimensional subspaces of GF(p)^k:
/// first nonzero coordinate equal to 1, sorted lexicographically.
class ProjectivePointTable
{
public:
  ProjectivePointTable(std::size_t k, std::uint32_t p);

  std::size_t size() const { return _points.size(); }
  std::size_t dim() const { return _k; }
  std::uint32_t prime() const { return _p; }
  std::vector<std::uint32_t> const &operator[](std::size_t i) const { return _points[i]; }

  /// Index of the point spanned by a nonzero vector.
  Point index_of(std::vector<std::uint32_t> const &v) const;

private:
  std::uint64_t encode(std::vector<std::uint32_t> const &v) const;

  std::size_t _k;
  std::uint32_t _p;
  std::vector<std::vector<std::uint32_t>> _points;
  std::unordered_map<std::uint64_t, Point> _lookup;
};

ProjectivePointTable projective_points(std::size_t k, std::uint32_t p);

/// Induced permutations of the projective points under v -> vM.
std::vector<Permutation> projective_action(std::vector<MatFp> const &mats,
                                           ProjectivePointTable const &table);

/// [[1,1],[0,1]] and [[1,0],[1,1]] over GF(q).
std::vector<MatFp> sl2_generators(std::uint32_t q);

/// The alternating form used for Sp4: e1 paired with e3, e2 with e4.
MatFp symplectic_form(std::uint32_t p);

/// Symplectic transvections x -> x + c<x,v>v generating Sp4(p).
std::vector<MatFp> sp4_generators(std::uint32_t p);

/// diag(1,1,lambda,lambda), which scales the form by lambda. lambda must be
/// a nonzero non-square mod p so the element lies outside PSp4(p).
MatFp gsp4_similitude(std::uint32_t p, std::int64_t lambda);

} // namespace vtgi

#endif // VTGI_MATRIX_HPP
