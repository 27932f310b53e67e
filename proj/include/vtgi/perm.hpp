#ifndef VTGI_PERM_HPP
#define VTGI_PERM_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vtgi
{

using Point = std::uint32_t;

/// A permutation of the points 0..n-1, stored as its image array.
///
/// Products compose left to right: point^(p*q) == (point^p)^q. Text I/O is
/// 1-based cycle notation, internal points are 0-based.
class Permutation
{
public:
  Permutation() = default;

  /// Identity on `degree` points.
  explicit Permutation(std::size_t degree);

  /// Validates that `images` is a bijection on [0, images.size()).
  explicit Permutation(std::vector<Point> images);

  static Permutation from_images_unchecked(std::vector<Point> images);

  std::size_t degree() const { return _images.size(); }
  Point operator[](Point i) const { return _images[i]; }
  std::span<Point const> images() const { return _images; }

  bool is_identity() const;
  bool is_even() const;

  Permutation operator*(Permutation const &rhs) const;
  Permutation &operator*=(Permutation const &rhs);

  Permutation inverse() const;
  Permutation pow(long long k) const;

  /// q^-1 * this * q
  Permutation conjugate_by(Permutation const &q) const;

  std::uint64_t order() const;

  /// Disjoint cycles of length >= 2, smallest point first within and
  /// across cycles.
  std::vector<std::vector<Point>> cycles() const;

  Point smallest_moved_point() const; // degree() when identity

  std::size_t hash() const;

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend std::strong_ordering operator<=>(Permutation const &lhs,
                                          Permutation const &rhs)
  {
    return lhs._images <=> rhs._images;
  }

private:
  std::vector<Point> _images;
};

struct PermutationHash
{
  std::size_t operator()(Permutation const &p) const { return p.hash(); }
};

/// Multiset of nontrivial cycle lengths, sorted ascending with repeats.
struct CycleType
{
  std::vector<std::size_t> lengths;

  std::string to_string() const; // "{2,2,4}"

  friend bool operator==(CycleType const &, CycleType const &) = default;
  friend auto operator<=>(CycleType const &, CycleType const &) = default;
};

struct CycleTypeHash
{
  std::size_t operator()(CycleType const &c) const;
};

CycleType cycle_type(Permutation const &p);

/// Parses "(1,2)(3,4,5)" style text; "" and "()" are the identity.
Permutation parse_cycles(std::string_view text, std::size_t degree);

/// Inverse of parse_cycles; the identity formats as "()".
std::string format_cycles(Permutation const &p);

Permutation compose(Permutation const &p, Permutation const &q);
Permutation inverse(Permutation const &p);
Permutation power(Permutation const &p, long long k);
std::uint64_t order(Permutation const &p);

/// Acting on [0, offset + p.degree() + ...): p shifted by `offset` inside a
/// domain of size `degree`, fixing everything else.
Permutation embed(Permutation const &p, std::size_t offset, std::size_t degree);

/// Direct sum on the disjoint union of the two domains.
Permutation direct_sum(Permutation const &p, Permutation const &q);

/// Restriction to [offset, offset+len), which must be an invariant block.
Permutation restrict_block(Permutation const &p, std::size_t offset,
                           std::size_t len);

} // namespace vtgi

#endif // VTGI_PERM_HPP
