#ifndef VTGI_ERROR_HPP
#define VTGI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace vtgi
{

/// Base class of every error thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition (bad cycle text, degree
/// mismatch, a subgroup that is not a subgroup, ...).
class InputError : public Error
{
public:
  using Error::Error;
};

/// A search or enumeration hit its configured limit before finishing.
/// Distinct from an empty result: the answer is unknown.
class BudgetExceeded : public Error
{
public:
  using Error::Error;
};

/// An internal consistency assertion failed.
class InternalError : public Error
{
public:
  using Error::Error;
};

} // namespace vtgi

#endif // VTGI_ERROR_HPP
