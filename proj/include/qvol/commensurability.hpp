#pragma once

// Commensurability classes encoded by integral ideals of O_K: manifolds are
// ideals, coverings are divisibility, prime manifolds are prime ideals.
// Volumes are data attached to the ideals, never computed from geometry.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qvol/bigint.hpp"
#include "qvol/numberfield.hpp"

namespace qvol::commensurability {

using numberfield::IdealClass;
using numberfield::QuadIdeal;
using numberfield::RealQuadraticField;
using quadratic::QuadraticIrrational;

struct ManifoldIdeal {
    std::string label;
    QuadIdeal ideal;
    std::optional<Real> volume;
};

struct CommensurabilityClass {
    RealQuadraticField field;
    IdealClass base_class;
    std::vector<ManifoldIdeal> members;
};

struct GapBounds {
    Real lower; // k
    Real upper; // K

    GapBounds(Real k, Real K);
};

enum class DivisionOutcome { quotient, relatively_prime, not_divisible };

struct Division {
    DivisionOutcome outcome;
    /// Set when outcome == quotient.
    std::optional<ManifoldIdeal> quotient;
};

/// M1 / M2 in the monoid of integral ideals.
Division divide(ManifoldIdeal const & M1, ManifoldIdeal const & M2);

/// Number of times M2 divides M1 (minimum over the primes of M2 of the
/// valuation ratio); 0 when M1 does not cover M2.
unsigned covering_degree(ManifoldIdeal const & M1, ManifoldIdeal const & M2);

std::vector<std::pair<ManifoldIdeal, unsigned>> prime_decompose_manifold(ManifoldIdeal const & M);

struct PrimeManifold {
    ManifoldIdeal manifold;
    bool principal = false;
    std::optional<QuadraticIrrational> generator;
    std::string note;
};

/*
 * Smallest-norm principal prime ideal (ties by b) outside `exclude`, of norm
 * <= bound. If every such prime is non-principal, the smallest non-excluded
 * prime is returned with a note. Throws when no prime remains below bound.
 */
PrimeManifold next_prime_manifold(RealQuadraticField const & K, std::span<QuadIdeal const> exclude,
                                  std::uint64_t bound = 1000000);

struct GapCheck {
    bool ok = true;
    /// Index i of the first volume with Vol_i - Vol_{i-1} outside [k, K].
    std::optional<std::size_t> first_violation;
};

GapCheck gap_bounds_check(std::span<Real const> volumes, GapBounds const & bounds);

enum class Side { none, lower, upper };
std::string side_name(Side s);

/// lower < value < upper, strictly.
struct StrictBound {
    Real lower, value, upper;
    Side violated = Side::none;
    bool ok() const { return violated == Side::none; }
};

struct TelescopeReport {
    std::uint64_t t = 0;
    std::uint64_t n_t = 0;            // N(t, A)
    std::size_t chain_length = 0;
    bool degenerate = false;
    Real v0, v_last;
    Real telescoped_sum;              // sum of consecutive differences
    GapCheck gaps;                    // k <= step <= K
    StrictBound chain_bound;          // k(N-1) < Vol M_N - Vol M_0 < K(N-1)
    Real t_v0;                        // t Vol M_0
    Real endpoint_error;              // |Vol M_N - t Vol M_0| / (t Vol M_0)
    bool endpoint_ok = false;
    StrictBound class_bound;          // k(N-1) < (t-1) Vol M_0 < K(N-1)
    bool passed = false;
    std::vector<std::string> notes;
};

/// Relative tolerance on Vol M_N = t Vol M_0.
inline constexpr double kEndpointTolerance = 1e-9;

/*
 * Checks a chain M_0 < ... < M_N, N = N(t, base_class), against the gap
 * bounds. The chain must have N + 1 members carrying volumes.
 */
TelescopeReport telescoping_check(CommensurabilityClass const & cls, std::uint64_t t,
                                  GapBounds const & bounds);

/// The first `count` integral ideals of class A ordered by (norm, b, content).
std::vector<QuadIdeal> ideals_in_class(IdealClass const & A, std::size_t count);

/*
 * Chain of N(t, A) + 1 members with Vol M_j = v0 (1 + j (t - 1)/N), so that
 * Vol M_N = t v0. Members are the ideals of A in norm order.
 */
CommensurabilityClass synthetic_chain(IdealClass const & A, std::uint64_t t, Real const & v0);

} // namespace qvol::commensurability
