#pragma once

// Integer and real scalar types shared by every module, plus the handful of
// elementary number-theoretic helpers built on top of GMP.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

namespace qvol {

using Int = mpz_class;
using Rational = mpq_class;
using Real = boost::multiprecision::mpfr_float_50;

/// Precondition or domain violation reported to the caller.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two independent computations that must agree did not.
struct ConsistencyFault : std::logic_error {
    using std::logic_error::logic_error;
};

Int isqrt(Int const & n);
bool is_square(Int const & n);

Int floor_div(Int const & a, Int const & b);
Int floor_mod(Int const & a, Int const & b);

inline Int abs_int(Int const & a) { return a < 0 ? Int(-a) : a; }
inline int sign(Int const & a) { return sgn(a); }

Int gcd_int(Int const & a, Int const & b);
Int lcm_int(Int const & a, Int const & b);

/*
 * Extended gcd: returns g = gcd(a, b) >= 0 and sets u, v with u a + v b = g.
 */
Int ext_gcd(Int const & a, Int const & b, Int & u, Int & v);

bool is_prime(Int const & n);

/// Prime factorization of n > 0, primes ascending.
std::vector<std::pair<Int, unsigned>> factor(Int const & n);

/// n = square^2 * squarefree for n > 0.
struct SquareSplit {
    Int square;
    Int squarefree;
};
SquareSplit split_square(Int const & n);

bool is_squarefree(Int const & n);

/// Kronecker symbol (a / n).
int kronecker(Int const & a, Int const & n);

/// Field discriminant of Q(sqrt d) for squarefree d != 1.
Int field_discriminant(Int const & d);

/// True for D = 1 mod 4 squarefree, or D = 4m with m = 2,3 mod 4 squarefree.
bool is_fundamental_discriminant(Int const & D);

Real to_real(Int const & n);
Real to_real(Rational const & q);

std::string to_string(Int const & n);

/// Parses a decimal integer; throws DomainError with `what` in the message.
Int parse_int(std::string const & text, std::string const & what);

bool fits_int64(Int const & n);
std::int64_t to_int64(Int const & n);

} // namespace qvol
