#pragma once

// Exact arithmetic in real quadratic fields Q(sqrt d) and eventually periodic
// continued fractions of quadratic irrationals.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qvol/bigint.hpp"

namespace qvol::quadratic {

/*
 * The number (a + b sqrt d) / c in canonical form:
 *   d squarefree and > 1, c > 0, gcd(a, b, c) = 1.
 * Rational elements of Q(sqrt d) (b = 0) are representable so that field
 * arithmetic is closed; they are rejected wherever a genuine irrational is
 * required. Canonical forms are unique, so equality is structural.
 */
class QuadraticIrrational
{
  public:
    /// Canonicalizes; `d` need only be a positive non-square (square factors
    /// are moved into b).
    QuadraticIrrational(Int a, Int b, Int c, Int d);

    /// The rational number n in Q(sqrt d).
    static QuadraticIrrational rational(Int n, Int d);
    static QuadraticIrrational rational(Rational q, Int d);
    /// sqrt(d) itself.
    static QuadraticIrrational root(Int d);

    /// (a + b sqrt d) / c with this number's (already squarefree) d.
    QuadraticIrrational same_field(Int a, Int b, Int c) const;

    Int const & a() const { return a_; }
    Int const & b() const { return b_; }
    Int const & c() const { return c_; }
    Int const & d() const { return d_; }

    bool is_rational() const { return b_ == 0; }

    QuadraticIrrational conjugate() const;
    Rational norm() const;
    Rational trace() const;

    /// Sign of the real number; exact.
    int sign() const;
    /// floor of the real number; exact.
    Int floor() const;

    /// Primitive integer polynomial A x^2 + B x + C (A > 0) with this root.
    struct MinPoly {
        Int A, B, C;
        Int discriminant() const { return B * B - 4 * A * C; }
    };
    MinPoly min_poly() const;

    /// Integral element of the maximal order of Q(sqrt d).
    bool is_algebraic_integer() const;

    Real value() const;

    /// "(1+√5)/2" style when `unicode`, "(1+sqrt(5))/2" otherwise.
    std::string str(bool unicode = true) const;

    friend bool operator==(QuadraticIrrational const &, QuadraticIrrational const &) = default;

    friend QuadraticIrrational operator+(QuadraticIrrational const & x, QuadraticIrrational const & y);
    friend QuadraticIrrational operator-(QuadraticIrrational const & x, QuadraticIrrational const & y);
    friend QuadraticIrrational operator*(QuadraticIrrational const & x, QuadraticIrrational const & y);
    friend QuadraticIrrational operator/(QuadraticIrrational const & x, QuadraticIrrational const & y);
    QuadraticIrrational operator-() const;

    friend QuadraticIrrational operator+(QuadraticIrrational const & x, Int const & n);
    friend QuadraticIrrational operator*(QuadraticIrrational const & x, Int const & n);

  private:
    QuadraticIrrational() = default;
    void canonicalize();

    Int a_, b_, c_, d_;
};

std::ostream & operator<<(std::ostream & os, QuadraticIrrational const & x);

/// Strict order on the reals; both operands must share d.
bool operator<(QuadraticIrrational const & x, QuadraticIrrational const & y);

/// x -> (p x + q) / (r x + s).
QuadraticIrrational mobius(Int const & p, Int const & q, Int const & r, Int const & s,
                           QuadraticIrrational const & x);

/*
 * [a0; a1, ..., ak, (p0, ..., pl-1) repeating]. `preperiod` is the shortest
 * possible and `period` the minimal repeating block as it occurs after it.
 * Comparison of tails uses `canonical_cycle()`, the lexicographically least
 * rotation of the period.
 */
struct ContinuedFraction {
    std::vector<Int> preperiod;
    std::vector<Int> period;

    std::vector<Int> canonical_cycle() const;
    std::string str() const;

    friend bool operator==(ContinuedFraction const &, ContinuedFraction const &) = default;
};

/// Lexicographically least rotation.
std::vector<Int> least_rotation(std::span<Int const> block);

/// Shortest block whose repetition gives `block`.
std::vector<Int> primitive_block(std::span<Int const> block);

/// Value of the purely periodic continued fraction Per[p1, ..., pn].
QuadraticIrrational surgery_slope(std::span<Int const> coefficients);
QuadraticIrrational surgery_slope(std::vector<long> const & coefficients);

ContinuedFraction cf_expand(QuadraticIrrational const & x);

QuadraticIrrational cf_value(ContinuedFraction const & cf);

/// Modular (GL2(Z)) equivalence: the tails of the expansions eventually agree.
/// Decided on the cycles of reduced complete quotients.
bool modular_equivalent(QuadraticIrrational const & x, QuadraticIrrational const & y);

/// The minimal periods of x and y agree up to cyclic rotation (same d).
bool cycles_agree(QuadraticIrrational const & x, QuadraticIrrational const & y);

/// Reduced: x > 1 and its conjugate lies in (-1, 0).
bool is_reduced(QuadraticIrrational const & x);

/// Convergent matrix prod ((a_i, 1), (1, 0)) = ((p_k, p_{k-1}), (q_k, q_{k-1})).
struct Convergents {
    Int p, p_prev, q, q_prev;
};
Convergents convergents(std::span<Int const> digits);

} // namespace qvol::quadratic
