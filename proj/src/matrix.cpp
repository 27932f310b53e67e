#include "vtgi/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "vtgi/error.hpp"

namespace vtgi
{

bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

namespace
{

std::uint32_t reduce(std::int64_t v, std::uint32_t p)
{
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

void check_prime(std::uint32_t p)
{
  if (!is_prime(p))
    throw InputError(std::to_string(p) + " is not prime");
}

} // namespace

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p)
{
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1)
    throw InputError("no inverse modulo " + std::to_string(p));
  return reduce(t, p);
}

MatFp::MatFp(std::uint32_t p, std::size_t k) : _p(p), _k(k), _e(k * k, 0)
{
  check_prime(p);
  if (k == 0)
    throw InputError("matrix dimension must be positive");
}

MatFp::MatFp(std::uint32_t p, std::size_t k, std::vector<std::int64_t> const &row_major)
  : MatFp(p, k)
{
  if (row_major.size() != k * k)
    throw InputError("expected " + std::to_string(k * k) + " matrix entries, got " +
                     std::to_string(row_major.size()));
  for (std::size_t i = 0; i < row_major.size(); ++i)
    _e[i] = reduce(row_major[i], p);
}

MatFp MatFp::identity(std::uint32_t p, std::size_t k) { return scalar(p, k, 1); }

MatFp MatFp::scalar(std::uint32_t p, std::size_t k, std::int64_t c)
{
  MatFp m(p, k);
  for (std::size_t i = 0; i < k; ++i)
    m.set(i, i, c);
  return m;
}

MatFp MatFp::diagonal(std::uint32_t p, std::vector<std::int64_t> const &d)
{
  MatFp m(p, d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    m.set(i, i, d[i]);
  return m;
}

void MatFp::set(std::size_t r, std::size_t c, std::int64_t v)
{
  _e[r * _k + c] = reduce(v, _p);
}

MatFp MatFp::operator*(MatFp const &rhs) const
{
  if (_p != rhs._p || _k != rhs._k)
    throw InputError("matrix shape or field mismatch");
  MatFp out(_p, _k);
  for (std::size_t i = 0; i < _k; ++i)
    for (std::size_t j = 0; j < _k; ++j) {
      std::uint64_t s = 0;
      for (std::size_t l = 0; l < _k; ++l)
        s += std::uint64_t{_e[i * _k + l]} * rhs._e[l * _k + j];
      out._e[i * _k + j] = static_cast<std::uint32_t>(s % _p);
    }
  return out;
}

MatFp MatFp::operator+(MatFp const &rhs) const
{
  if (_p != rhs._p || _k != rhs._k)
    throw InputError("matrix shape or field mismatch");
  MatFp out(_p, _k);
  for (std::size_t i = 0; i < _e.size(); ++i)
    out._e[i] = (_e[i] + rhs._e[i]) % _p;
  return out;
}

MatFp MatFp::transpose() const
{
  MatFp out(_p, _k);
  for (std::size_t i = 0; i < _k; ++i)
    for (std::size_t j = 0; j < _k; ++j)
      out._e[j * _k + i] = _e[i * _k + j];
  return out;
}

std::uint32_t MatFp::determinant() const
{
  std::vector<std::uint32_t> a = _e;
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < _k; ++c) {
    std::size_t piv = c;
    while (piv < _k && a[piv * _k + c] == 0)
      ++piv;
    if (piv == _k)
      return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < _k; ++j)
        std::swap(a[piv * _k + j], a[c * _k + j]);
      det = (_p - det % _p) % _p;
    }
    std::uint32_t pv = a[c * _k + c];
    det = det * pv % _p;
    std::uint32_t inv = inverse_mod(pv, _p);
    for (std::size_t r = c + 1; r < _k; ++r) {
      std::uint64_t f = std::uint64_t{a[r * _k + c]} * inv % _p;
      if (!f)
        continue;
      for (std::size_t j = c; j < _k; ++j)
        a[r * _k + j] = static_cast<std::uint32_t>(
          (a[r * _k + j] + (_p - f) * a[c * _k + j]) % _p);
    }
  }
  return static_cast<std::uint32_t>(det);
}

MatFp MatFp::inverse() const
{
  std::size_t const w = 2 * _k;
  std::vector<std::uint64_t> a(_k * w, 0);
  for (std::size_t i = 0; i < _k; ++i) {
    for (std::size_t j = 0; j < _k; ++j)
      a[i * w + j] = _e[i * _k + j];
    a[i * w + _k + i] = 1;
  }
  for (std::size_t c = 0; c < _k; ++c) {
    std::size_t piv = c;
    while (piv < _k && a[piv * w + c] == 0)
      ++piv;
    if (piv == _k)
      throw InputError("singular matrix");
    if (piv != c)
      for (std::size_t j = 0; j < w; ++j)
        std::swap(a[piv * w + j], a[c * w + j]);
    std::uint64_t inv = inverse_mod(static_cast<std::uint32_t>(a[c * w + c]), _p);
    for (std::size_t j = 0; j < w; ++j)
      a[c * w + j] = a[c * w + j] * inv % _p;
    for (std::size_t r = 0; r < _k; ++r) {
      if (r == c || a[r * w + c] == 0)
        continue;
      std::uint64_t f = a[r * w + c];
      for (std::size_t j = 0; j < w; ++j)
        a[r * w + j] = (a[r * w + j] + (_p - f) * a[c * w + j]) % _p;
    }
  }
  MatFp out(_p, _k);
  for (std::size_t i = 0; i < _k; ++i)
    for (std::size_t j = 0; j < _k; ++j)
      out._e[i * _k + j] = static_cast<std::uint32_t>(a[i * w + _k + j]);
  return out;
}

std::vector<std::uint32_t> MatFp::apply(std::vector<std::uint32_t> const &row) const
{
  if (row.size() != _k)
    throw InputError("vector length differs from matrix dimension");
  std::vector<std::uint32_t> out(_k);
  for (std::size_t j = 0; j < _k; ++j) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < _k; ++i)
      s += std::uint64_t{row[i]} * _e[i * _k + j];
    out[j] = static_cast<std::uint32_t>(s % _p);
  }
  return out;
}

MatFp parse_matrix(std::string_view text)
{
  std::istringstream in{std::string(text)};
  long long p = 0, k = 0;
  if (!(in >> p >> k))
    throw InputError("matrix literal must start with 'p k'");
  if (p < 2 || k < 1 || k > 64)
    throw InputError("matrix literal has invalid p or k");
  std::vector<std::int64_t> entries;
  long long v;
  while (in >> v)
    entries.push_back(v);
  if (!in.eof())
    throw InputError("non-integer token in matrix literal after " +
                     std::to_string(entries.size()) + " entries");
  return MatFp(static_cast<std::uint32_t>(p), static_cast<std::size_t>(k), entries);
}

std::string format_matrix(MatFp const &m)
{
  std::ostringstream os;
  os << m.prime() << ' ' << m.dim();
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      os << ' ' << m(i, j);
  return os.str();
}

ProjectivePointTable::ProjectivePointTable(std::size_t k, std::uint32_t p) : _k(k), _p(p)
{
  check_prime(p);
  if (k == 0)
    throw InputError("projective space needs dimension >= 1");
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::uint64_t count = 1;
    for (std::size_t i = lead + 1; i < k; ++i)
      count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      std::vector<std::uint32_t> v(k, 0);
      v[lead] = 1;
      std::uint64_t x = c;
      for (std::size_t i = k; i-- > lead + 1;) {
        v[i] = static_cast<std::uint32_t>(x % p);
        x /= p;
      }
      _points.push_back(std::move(v));
    }
  }
  std::sort(_points.begin(), _points.end());
  for (std::size_t i = 0; i < _points.size(); ++i)
    _lookup.emplace(encode(_points[i]), static_cast<Point>(i));
}

std::uint64_t ProjectivePointTable::encode(std::vector<std::uint32_t> const &v) const
{
  std::uint64_t code = 0;
  for (auto x : v)
    code = code * _p + x;
  return code;
}

Point ProjectivePointTable::index_of(std::vector<std::uint32_t> const &v) const
{
  if (v.size() != _k)
    throw InputError("vector length differs from projective dimension");
  std::size_t lead = 0;
  while (lead < _k && v[lead] == 0)
    ++lead;
  if (lead == _k)
    throw InputError("zero vector spans no projective point");
  std::uint64_t inv = inverse_mod(v[lead], _p);
  std::vector<std::uint32_t> n(_k);
  for (std::size_t i = 0; i < _k; ++i)
    n[i] = static_cast<std::uint32_t>(v[i] * inv % _p);
  return _lookup.at(encode(n));
}

ProjectivePointTable projective_points(std::size_t k, std::uint32_t p)
{
  return ProjectivePointTable(k, p);
}

std::vector<Permutation> projective_action(std::vector<MatFp> const &mats,
                                           ProjectivePointTable const &table)
{
  std::vector<Permutation> out;
  for (auto const &m : mats) {
    if (m.dim() != table.dim() || m.prime() != table.prime())
      throw InputError("matrix does not match the projective space");
    if (!m.is_invertible())
      throw InputError("singular matrix has no projective action");
    std::vector<Point> img(table.size());
    for (std::size_t i = 0; i < table.size(); ++i)
      img[i] = table.index_of(m.apply(table[i]));
    out.emplace_back(std::move(img));
  }
  return out;
}

std::vector<MatFp> sl2_generators(std::uint32_t q)
{
  return {MatFp(q, 2, {1, 1, 0, 1}), MatFp(q, 2, {1, 0, 1, 1})};
}

MatFp symplectic_form(std::uint32_t p)
{
  return MatFp(p, 4, {0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, -1, 0, 0});
}

std::vector<MatFp> sp4_generators(std::uint32_t p)
{
  MatFp const j = symplectic_form(p);
  // Transvections along the coordinate vectors only generate SL2 x SL2;
  // the mixed vectors tie the two hyperbolic planes together.
  std::vector<std::vector<std::int64_t>> const vectors{
    {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}, {1, 0, 0, 1}};
  std::vector<MatFp> out;
  for (auto const &vec : vectors) {
    // row action x -> x + c (x J v^T) v, i.e. T = I + c J v^T v
    MatFp outer(p, 4);
    for (std::size_t r = 0; r < 4; ++r) {
      std::int64_t jv = 0;
      for (std::size_t l = 0; l < 4; ++l)
        jv += static_cast<std::int64_t>(j(r, l)) * vec[l];
      for (std::size_t c = 0; c < 4; ++c)
        outer.set(r, c, jv * vec[c]);
    }
    for (std::int64_t c = 1; c < std::min<std::int64_t>(p, 3); ++c) {
      MatFp t = MatFp::identity(p, 4) + outer * MatFp::scalar(p, 4, c);
      if (!(t * j * t.transpose() == j) || !(t.transpose() * j * t == j))
        throw InternalError("transvection does not preserve the symplectic form");
      out.push_back(std::move(t));
    }
  }
  return out;
}

MatFp gsp4_similitude(std::uint32_t p, std::int64_t lambda)
{
  check_prime(p);
  std::uint32_t l = reduce(lambda, p);
  if (l == 0)
    throw InputError("similitude multiplier must be nonzero mod p");
  for (std::uint64_t x = 1; x < p; ++x)
    if (x * x % p == l)
      throw InputError("similitude multiplier " + std::to_string(lambda) +
                       " is a square mod " + std::to_string(p));
  MatFp d = MatFp::diagonal(p, {1, 1, l, l});
  MatFp j = symplectic_form(p);
  if (!(d * j * d.transpose() == j * MatFp::scalar(p, 4, l)))
    throw InternalError("similitude does not scale the form");
  return d;
}

} // namespace vtgi
