#ifndef SPRAYLIE_RATIONAL_HPP
#define SPRAYLIE_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace spraylie {

/// Exact rational number, always stored in lowest terms with a positive denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input is well-formed but violates a mathematical precondition.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A postcondition that the algorithms guarantee failed to hold.
class InvariantError : public Error {
public:
  using Error::Error;
};

inline Rational make_rational(long num, long den = 1)
{
  if (den == 0) throw DomainError("rational with zero denominator");
  return Rational(Integer(num), Integer(den));
}

inline bool is_zero(const Rational& q) { return q.is_zero(); }

inline std::string to_string(const Rational& q) { return q.str(); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

} // namespace spraylie

#endif // SPRAYLIE_RATIONAL_HPP
