#pragma once

// Real quadratic fields K = Q(sqrt d): invariants (discriminant, fundamental
// unit, regulator, class number) and arithmetic of integral ideals of O_K.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qvol/bigint.hpp"
#include "qvol/quadratic.hpp"
#include "qvol/reduction.hpp"

namespace qvol::numberfield {

using quadratic::QuadraticIrrational;

/*
 * Integral ideal content * [a, (b + sqrt D)/2] of the maximal order with
 * discriminant D. Normalized: content >= 1, a >= 1, 0 <= b < 2a,
 * b = D mod 2, b^2 = D mod 4a. norm = content^2 * a.
 */
class QuadIdeal
{
  public:
    QuadIdeal(Int disc, Int content, Int a, Int b);

    /// The unit ideal O_K.
    static QuadIdeal unit(Int disc);
    /// The principal ideal (n), n a nonzero rational integer.
    static QuadIdeal principal(Int disc, Int n);
    /// The principal ideal (alpha), alpha a nonzero algebraic integer of K.
    static QuadIdeal principal(Int disc, QuadraticIrrational const & alpha);

    Int const & disc() const { return disc_; }
    Int const & content() const { return content_; }
    Int const & a() const { return a_; }
    Int const & b() const { return b_; }

    Int norm() const { return content_ * content_ * a_; }
    bool is_primitive() const { return content_ == 1; }
    bool is_unit() const { return content_ == 1 && a_ == 1; }
    FormIdeal primitive_part() const { return {a_, b_}; }

    QuadIdeal conjugate() const;

    /// Two-element presentation, e.g. "(2, √10)" or "(3)".
    std::string str() const;

    friend bool operator==(QuadIdeal const &, QuadIdeal const &) = default;

  private:
    Int disc_, content_, a_, b_;
};

/// Deterministic order: by norm, then b, then content.
bool ideal_less(QuadIdeal const & x, QuadIdeal const & y);

namespace detail {
struct FieldData;
}

class RealQuadraticField
{
  public:
    /// Q(sqrt d), d squarefree > 1.
    explicit RealQuadraticField(Int d);

    Int const & d() const;
    /// Field discriminant: d if d = 1 mod 4, else 4d.
    Int const & disc() const;
    QuadraticIrrational const & epsilon() const;
    /// N(epsilon), +1 or -1.
    int epsilon_norm() const;
    /// log epsilon to 50 significant digits.
    Real const & regulator() const;
    std::size_t class_number() const;

    Reducer const & reducer() const;
    std::vector<std::vector<FormIdeal>> const & cycles() const;
    /// Index into cycles() of the class of a primitive ideal.
    std::size_t class_index(FormIdeal const & I) const;

    friend bool operator==(RealQuadraticField const & x, RealQuadraticField const & y)
    {
        return x.d() == y.d();
    }

  private:
    std::shared_ptr<detail::FieldData const> data_;
};

struct IdealClass {
    RealQuadraticField field;
    std::size_t index;
    QuadIdeal representative;
    std::vector<QuadIdeal> cycle;

    bool is_principal() const { return index == 0; }

    friend bool operator==(IdealClass const & x, IdealClass const & y)
    {
        return x.field == y.field && x.index == y.index;
    }
};

RealQuadraticField field_of(QuadraticIrrational const & x);

QuadraticIrrational fundamental_unit(Int const & d);

/// The element (sigma + sqrt D)/2 generating O_K over Z (sigma = D mod 2).
QuadraticIrrational order_generator(Int const & disc);

enum class SplitKind { split, inert, ramified };

struct PrimeSplitting {
    SplitKind kind;
    /// split: P and its conjugate (ordered by b); inert: (p); ramified: P.
    std::vector<QuadIdeal> primes;
};

PrimeSplitting prime_splitting(Int const & disc, Int const & p);
inline PrimeSplitting prime_splitting(RealQuadraticField const & K, Int const & p)
{
    return prime_splitting(K.disc(), p);
}

QuadIdeal ideal_mul(QuadIdeal const & I, QuadIdeal const & J);
QuadIdeal ideal_pow(QuadIdeal const & I, unsigned e);

/// O_K-ideal generated by algebraic integers of Q(sqrt d) (D the field
/// discriminant); throws if a generator is not integral or all vanish.
QuadIdeal ideal_generated(Int const & disc, std::span<QuadraticIrrational const> generators);

struct PrincipalResult {
    bool principal = false;
    std::optional<QuadraticIrrational> generator;
};
PrincipalResult is_principal(QuadIdeal const & I);

bool equivalent(QuadIdeal const & I, QuadIdeal const & J);

using Factorization = std::vector<std::pair<QuadIdeal, unsigned>>;

/// Prime ideal factorization ordered by (norm, b).
Factorization factor_ideal(QuadIdeal const & I);

QuadIdeal multiply_out(Int const & disc, Factorization const & f);

IdealClass class_of(RealQuadraticField const & K, QuadIdeal const & I);
std::vector<IdealClass> ideal_classes(RealQuadraticField const & K);

/*
 * Number of integral ideals of norm <= t in each class (indexed like
 * K.cycles()). Counting runs over `partitions` disjoint norm ranges (one
 * thread each); the result does not depend on the partitioning.
 */
std::vector<std::uint64_t> count_ideals_by_class(RealQuadraticField const & K, std::uint64_t t,
                                                 unsigned partitions = 1);

/// N(t, A).
std::uint64_t count_ideals_in_class(IdealClass const & A, std::uint64_t t,
                                    unsigned partitions = 1);

/// Limit of N(t, A)/t: 2 log(epsilon) / sqrt(D).
Real dirichlet_density(RealQuadraticField const & K);

/// Residue of zeta_K at s = 1: 2 h log(epsilon) / sqrt(D).
Real zeta_residue(RealQuadraticField const & K);

struct HumbertValue {
    Int disc;
    std::uint64_t terms = 0;
    Real l_value;   // L(2, chi_D), truncated
    Real zeta_k2;   // zeta(2) L(2, chi_D)
    Real volume;    // |D|^{3/2} / (4 pi^2) zeta_K(2)
    Real error_bound;
};

/// Humbert's volume for the imaginary quadratic field of (fundamental,
/// negative) discriminant `disc`, summing `terms` terms of L(2, chi_D).
HumbertValue humbert_volume(Int const & disc, std::uint64_t terms);

std::string split_kind_name(SplitKind k);

} // namespace qvol::numberfield
