#pragma once

// Reduction theory for primitive ideals [a, (b + sqrt Δ)/2] of the quadratic
// order of discriminant Δ > 0 (non-square, Δ = 0 or 1 mod 4). Wide
// equivalence classes are the cycles of reduced ideals under rho.

#include <optional>
#include <utility>
#include <vector>

#include "qvol/bigint.hpp"
#include "qvol/quadratic.hpp"

namespace qvol::numberfield {

/// Primitive ideal a Z + (b + sqrt Δ)/2 Z with a > 0 and b^2 = Δ mod 4a.
struct FormIdeal {
    Int a;
    Int b;

    friend bool operator==(FormIdeal const &, FormIdeal const &) = default;
};

class Reducer
{
  public:
    explicit Reducer(Int disc);

    Int const & disc() const { return disc_; }
    Int const & root_floor() const { return root_floor_; }

    /// True iff |sqrt Δ - 2a| < b < sqrt Δ.
    bool is_reduced(FormIdeal const & I) const;

    /// Representative of b mod 2a: in (-a, a] when a > sqrt Δ, else in
    /// (sqrt Δ - 2a, sqrt Δ).
    Int normalized_b(Int const & b, Int const & a) const;

    /// One reduction step I -> J with I = mu * J; mu = (b + sqrt Δ) / (2|c|)
    /// is multiplied into `*mu` when given.
    FormIdeal rho(FormIdeal const & I, quadratic::QuadraticIrrational * mu = nullptr) const;

    FormIdeal reduce(FormIdeal I, quadratic::QuadraticIrrational * mu = nullptr) const;

    /// The rho-cycle starting at a reduced ideal.
    std::vector<FormIdeal> cycle(FormIdeal const & reduced) const;

    bool same_class(FormIdeal const & I, FormIdeal const & J) const;

    /// Generator g with I = (g) when I is principal in the order.
    std::optional<quadratic::QuadraticIrrational> principal_generator(FormIdeal const & I) const;

    /// sqrt Δ as an exact number.
    quadratic::QuadraticIrrational const & sqrt_disc() const { return sqrt_disc_; }

    /// Every reduced primitive ideal, ordered by (a, b).
    std::vector<FormIdeal> all_reduced() const;

    /// Reduced-ideal cycles, each rotated to start at its least (a, b); the
    /// cycle through (1) comes first, the rest ordered by their first entry.
    std::vector<std::vector<FormIdeal>> all_cycles() const;

  private:
    Int disc_;
    Int root_floor_;
    quadratic::QuadraticIrrational sqrt_disc_;
};

/// Standard key (a, b mod 2a) identifying the ideal independent of b's
/// representative.
std::pair<Int, Int> standard_key(FormIdeal const & I);

} // namespace qvol::numberfield
