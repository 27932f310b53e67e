#include "vtgi/perm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "vtgi/error.hpp"

namespace vtgi
{

Permutation::Permutation(std::size_t degree) : _images(degree)
{
  std::iota(_images.begin(), _images.end(), Point{0});
}

Permutation::Permutation(std::vector<Point> images) : _images(std::move(images))
{
  std::vector<char> seen(_images.size(), 0);
  for (Point x : _images) {
    if (x >= _images.size() || seen[x])
      throw InputError("image array is not a bijection");
    seen[x] = 1;
  }
}

Permutation Permutation::from_images_unchecked(std::vector<Point> images)
{
  Permutation p;
  p._images = std::move(images);
  return p;
}

bool Permutation::is_identity() const
{
  for (std::size_t i = 0; i < _images.size(); ++i)
    if (_images[i] != i)
      return false;
  return true;
}

bool Permutation::is_even() const
{
  std::size_t transpositions = 0;
  for (auto const &c : cycles())
    transpositions += c.size() - 1;
  return transpositions % 2 == 0;
}

Permutation Permutation::operator*(Permutation const &rhs) const
{
  if (degree() != rhs.degree())
    throw InputError("degree mismatch in permutation product");
  std::vector<Point> out(_images.size());
  for (std::size_t i = 0; i < _images.size(); ++i)
    out[i] = rhs._images[_images[i]];
  return from_images_unchecked(std::move(out));
}

Permutation &Permutation::operator*=(Permutation const &rhs)
{
  if (degree() != rhs.degree())
    throw InputError("degree mismatch in permutation product");
  for (auto &x : _images)
    x = rhs._images[x];
  return *this;
}

Permutation Permutation::inverse() const
{
  std::vector<Point> out(_images.size());
  for (std::size_t i = 0; i < _images.size(); ++i)
    out[_images[i]] = static_cast<Point>(i);
  return from_images_unchecked(std::move(out));
}

Permutation Permutation::pow(long long k) const
{
  Permutation base = k < 0 ? inverse() : *this;
  unsigned long long e = k < 0 ? 0ULL - static_cast<unsigned long long>(k)
                               : static_cast<unsigned long long>(k);
  Permutation result(degree());
  while (e) {
    if (e & 1ULL)
      result *= base;
    e >>= 1;
    if (e)
      base = base * base;
  }
  return result;
}

Permutation Permutation::conjugate_by(Permutation const &q) const
{
  if (degree() != q.degree())
    throw InputError("degree mismatch in conjugation");
  // q^-1 p q maps q[i] -> q[p[i]]
  std::vector<Point> out(_images.size());
  for (std::size_t i = 0; i < _images.size(); ++i)
    out[q._images[i]] = q._images[_images[i]];
  return from_images_unchecked(std::move(out));
}

std::uint64_t Permutation::order() const
{
  std::uint64_t result = 1;
  for (auto const &c : cycles())
    result = std::lcm(result, static_cast<std::uint64_t>(c.size()));
  return result;
}

std::vector<std::vector<Point>> Permutation::cycles() const
{
  std::vector<std::vector<Point>> result;
  std::vector<char> seen(_images.size(), 0);
  for (Point i = 0; i < _images.size(); ++i) {
    if (seen[i] || _images[i] == i)
      continue;
    std::vector<Point> cycle;
    for (Point x = i; !seen[x]; x = _images[x]) {
      seen[x] = 1;
      cycle.push_back(x);
    }
    result.push_back(std::move(cycle));
  }
  return result;
}

Point Permutation::smallest_moved_point() const
{
  for (Point i = 0; i < _images.size(); ++i)
    if (_images[i] != i)
      return i;
  return static_cast<Point>(_images.size());
}

std::size_t Permutation::hash() const
{
  // FNV-1a over the image words
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : _images) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::string CycleType::to_string() const
{
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < lengths.size(); ++i)
    os << (i ? "," : "") << lengths[i];
  os << '}';
  return os.str();
}

std::size_t CycleTypeHash::operator()(CycleType const &c) const
{
  std::uint64_t h = 1469598103934665603ULL;
  for (auto x : c.lengths) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

CycleType cycle_type(Permutation const &p)
{
  CycleType ct;
  for (auto const &c : p.cycles())
    ct.lengths.push_back(c.size());
  std::sort(ct.lengths.begin(), ct.lengths.end());
  return ct;
}

namespace
{

[[noreturn]] void parse_fail(std::string_view text, std::size_t pos,
                             std::string const &what)
{
  std::ostringstream os;
  os << "cycle notation error at offset " << pos << ": " << what << " in \""
     << text << "\"";
  throw InputError(os.str());
}

} // namespace

Permutation parse_cycles(std::string_view text, std::size_t degree)
{
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<char> used(degree, 0);

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };

  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(')
      parse_fail(text, pos, "expected '('");
    ++pos;
    skip_ws();
    if (pos < text.size() && text[pos] == ')') {
      // "()" spells the identity
      ++pos;
      skip_ws();
      continue;
    }
    std::vector<Point> cycle;
    for (;;) {
      skip_ws();
      std::size_t start = pos;
      unsigned long long value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<unsigned>(text[pos] - '0');
        if (value > degree + 1ULL)
          value = degree + 1ULL;
        ++pos;
      }
      if (pos == start)
        parse_fail(text, pos, "expected a point");
      if (value < 1 || value > degree)
        parse_fail(text, start, "point out of range 1.." + std::to_string(degree));
      Point pt = static_cast<Point>(value - 1);
      if (used[pt])
        parse_fail(text, start, "repeated point " + std::to_string(value));
      used[pt] = 1;
      cycle.push_back(pt);
      skip_ws();
      if (pos >= text.size())
        parse_fail(text, pos, "unterminated cycle");
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      parse_fail(text, pos, "expected ',' or ')'");
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      images[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_ws();
  }
  return Permutation::from_images_unchecked(std::move(images));
}

std::string format_cycles(Permutation const &p)
{
  auto cs = p.cycles();
  if (cs.empty())
    return "()";
  std::string out;
  char buf[16];
  for (auto const &c : cs) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i)
        out += ',';
      auto r = std::to_chars(buf, buf + sizeof buf, c[i] + 1);
      out.append(buf, r.ptr);
    }
    out += ')';
  }
  return out;
}

Permutation compose(Permutation const &p, Permutation const &q) { return p * q; }
Permutation inverse(Permutation const &p) { return p.inverse(); }
Permutation power(Permutation const &p, long long k) { return p.pow(k); }
std::uint64_t order(Permutation const &p) { return p.order(); }

Permutation embed(Permutation const &p, std::size_t offset, std::size_t degree)
{
  if (offset + p.degree() > degree)
    throw InputError("embedding exceeds target degree");
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  for (std::size_t i = 0; i < p.degree(); ++i)
    images[offset + i] = static_cast<Point>(offset + p[static_cast<Point>(i)]);
  return Permutation::from_images_unchecked(std::move(images));
}

Permutation direct_sum(Permutation const &p, Permutation const &q)
{
  std::vector<Point> images(p.degree() + q.degree());
  for (std::size_t i = 0; i < p.degree(); ++i)
    images[i] = p[static_cast<Point>(i)];
  for (std::size_t i = 0; i < q.degree(); ++i)
    images[p.degree() + i] = static_cast<Point>(p.degree() + q[static_cast<Point>(i)]);
  return Permutation::from_images_unchecked(std::move(images));
}

Permutation restrict_block(Permutation const &p, std::size_t offset,
                           std::size_t len)
{
  std::vector<Point> images(len);
  for (std::size_t i = 0; i < len; ++i) {
    Point x = p[static_cast<Point>(offset + i)];
    if (x < offset || x >= offset + len)
      throw InputError("block is not invariant under the permutation");
    images[i] = static_cast<Point>(x - offset);
  }
  return Permutation::from_images_unchecked(std::move(images));
}

} // namespace vtgi
