#pragma once

// Stationary dimension groups Z^n -> Z^n -> ... presented by one nonnegative
// integer matrix A with det A = +-1. Rank-2 groups are classified through the
// rotation number (slope of the Perron-Frobenius eigenvector) and the ideal
// class of the lattice Z + Z theta.

#include <initializer_list>
#include <span>
#include <optional>
#include <string>
#include <vector>

#include "qvol/bigint.hpp"
#include "qvol/numberfield.hpp"
#include "qvol/quadratic.hpp"

namespace qvol::dimgroup {

using numberfield::FormIdeal;
using numberfield::IdealClass;
using numberfield::QuadIdeal;
using numberfield::RealQuadraticField;
using quadratic::QuadraticIrrational;

/// Square integer matrix, row-major.
class IntMatrix
{
  public:
    explicit IntMatrix(std::size_t n);
    IntMatrix(std::size_t n, std::vector<Int> entries);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    Int & operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    Int const & operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    std::vector<Int> const & entries() const { return e_; }

    Int determinant() const;
    Int trace() const;
    std::string str() const;

    friend IntMatrix operator*(IntMatrix const & x, IntMatrix const & y);
    friend bool operator==(IntMatrix const &, IntMatrix const &) = default;

  private:
    std::size_t n_;
    std::vector<Int> e_;
};

IntMatrix power(IntMatrix const & A, unsigned k);

/// Characteristic polynomial det(x I - A), coefficients c_0 .. c_n (c_n = 1).
std::vector<Int> characteristic_polynomial(IntMatrix const & A);

/// Perron-Frobenius root of a rank > 2 matrix: a certified rational bracket
/// (lower, upper] containing exactly one root of the characteristic
/// polynomial and no root above it.
struct PerronBracket {
    Rational lower, upper;
    long double estimate = 0;
};

struct StationaryGroup {
    IntMatrix matrix;
    int det = 0;
    /// Smallest m with A^m strictly positive.
    unsigned primitivity_exponent = 0;
    /// Rank 2 only.
    std::optional<QuadraticIrrational> lambda;
    std::optional<QuadraticIrrational> theta;
    /// Rank > 2 only.
    std::optional<PerronBracket> perron;

    std::size_t rank() const { return matrix.size(); }
};

StationaryGroup validate_stationary(IntMatrix const & A);

QuadraticIrrational rotation_number(StationaryGroup const & G);

IntMatrix minkowski_factor(Int const & a);
IntMatrix minkowski_product(std::span<Int const> digits);

/// Digits [a0, ..., an] with g = prod ((a_i, 1), (1, 0)); throws DomainError
/// when g has no such factorization.
std::vector<Int> minkowski_decompose(IntMatrix const & g);

/// Wide class of the lattice Z + Z theta inside its own multiplier order.
struct LatticeClass {
    Int disc;
    FormIdeal ideal;
};
LatticeClass lattice_class(QuadraticIrrational const & theta);
bool same_lattice_class(LatticeClass const & x, LatticeClass const & y);

struct AssociatedIdeal {
    StationaryGroup group;
    QuadIdeal ideal;           // O_K-ideal generated by q (Z + Z theta)
    IdealClass ideal_class;    // its class in O_K
    Int scale;                 // q
    Int order_conductor;       // conductor of Z[lambda_A] in O_K
    LatticeClass lattice;
    Int lattice_conductor;     // conductor of the multiplier ring of Z + Z theta

    bool maximal() const { return order_conductor == 1; }
};

AssociatedIdeal associated_ideal(StationaryGroup const & G, RealQuadraticField const & K);
AssociatedIdeal associated_ideal(StationaryGroup const & G);

/*
 * Morita equivalence of rank-2 groups. Decided by equality of lattice
 * classes and cross-checked against modular equivalence of the rotation
 * numbers; disagreement throws ConsistencyFault.
 */
bool morita_equivalent(StationaryGroup const & G1, StationaryGroup const & G2);

/// One group per ideal class of K, built from the reduced-ideal cycle of
/// each class representative.
std::vector<StationaryGroup> groups_for_field(RealQuadraticField const & K);

IntMatrix parse_matrix(std::vector<std::string> const & entries);

} // namespace qvol::dimgroup
