#include "qvol/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace qvol::numberfield {

using quadratic::QuadraticIrrational;

namespace {

Int checked_disc(Int disc)
{
    if (disc <= 0 || is_square(disc))
        throw DomainError("discriminant must be a positive non-square, got " + to_string(disc));
    Int r = floor_mod(disc, 4);
    if (r != 0 && r != 1)
        throw DomainError("discriminant must be 0 or 1 mod 4, got " + to_string(disc));
    return disc;
}

// Largest discriminant for which the full reduced-ideal enumeration is run.
Int const kEnumerationLimit("1000000000000");

} // namespace

Reducer::Reducer(Int disc)
    : disc_(checked_disc(std::move(disc))), root_floor_(isqrt(disc_)),
      sqrt_disc_(QuadraticIrrational::root(disc_))
{
}

bool Reducer::is_reduced(FormIdeal const & I) const
{
    Int const & s = root_floor_;
    return I.b > 0 && I.b <= s && I.b + 2 * I.a > s && 2 * I.a - I.b <= s;
}

Int Reducer::normalized_b(Int const & b, Int const & a) const
{
    Int two_a = 2 * a;
    if (a > root_floor_) {
        Int r = floor_mod(b, two_a);
        if (r > a)
            r -= two_a;
        return r;
    }
    return root_floor_ - floor_mod(root_floor_ - b, two_a);
}

FormIdeal Reducer::rho(FormIdeal const & I, QuadraticIrrational * mu) const
{
    Int num = I.b * I.b - disc_;
    Int four_a = 4 * I.a;
    if (num % four_a != 0)
        throw ConsistencyFault("rho: b^2 != disc mod 4a for a=" + to_string(I.a) +
                               ", b=" + to_string(I.b));
    Int c = num / four_a;
    Int next_a = abs_int(c);
    if (mu)
        *mu = *mu * sqrt_disc_.same_field(I.b, sqrt_disc_.b(), 2 * next_a);
    Int next_b = normalized_b(-I.b, next_a);
    return {std::move(next_a), std::move(next_b)};
}

FormIdeal Reducer::reduce(FormIdeal I, QuadraticIrrational * mu) const
{
    if (I.a <= 0)
        throw DomainError("ideal norm must be positive");
    I.b = normalized_b(I.b, I.a);
    while (!is_reduced(I))
        I = rho(I, mu);
    return I;
}

std::vector<FormIdeal> Reducer::cycle(FormIdeal const & reduced) const
{
    FormIdeal start{reduced.a, normalized_b(reduced.b, reduced.a)};
    if (!is_reduced(start))
        throw DomainError("cycle: ideal is not reduced");
    std::vector<FormIdeal> out{start};
    for (FormIdeal J = rho(start); !(J == start); J = rho(J))
        out.push_back(J);
    return out;
}

bool Reducer::same_class(FormIdeal const & I, FormIdeal const & J) const
{
    FormIdeal rj = reduce(J);
    for (FormIdeal const & K : cycle(reduce(I)))
        if (K == rj)
            return true;
    return false;
}

std::optional<QuadraticIrrational> Reducer::principal_generator(FormIdeal const & I) const
{
    QuadraticIrrational mu = sqrt_disc_.same_field(1, 0, 1);
    FormIdeal const start = reduce(I, &mu);
    FormIdeal cur = start;
    do {
        if (cur.a == 1)
            return mu;
        cur = rho(cur, &mu);
    } while (!(cur == start));
    return std::nullopt;
}

std::vector<FormIdeal> Reducer::all_reduced() const
{
    if (disc_ > kEnumerationLimit)
        throw DomainError("discriminant " + to_string(disc_) +
                          " too large for reduced-ideal enumeration");
    std::int64_t const D = to_int64(disc_);
    std::int64_t const s = to_int64(root_floor_);
    std::vector<FormIdeal> out;
    for (std::int64_t b = (D & 1) ? 1 : 2; b <= s; b += 2) {
        std::int64_t const m = (D - b * b) / 4;
        std::int64_t const lo = (s - b) / 2 + 1;
        std::int64_t const hi = (s + b) / 2;
        for (std::int64_t a = std::max<std::int64_t>(lo, 1); a <= hi; ++a) {
            if (m % a)
                continue;
            std::int64_t const c = m / a;
            if (std::gcd(std::gcd(a, b), c) != 1)
                continue;
            out.push_back({Int(static_cast<long>(a)), Int(static_cast<long>(b))});
        }
    }
    std::sort(out.begin(), out.end(), [](FormIdeal const & x, FormIdeal const & y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return out;
}

std::vector<std::vector<FormIdeal>> Reducer::all_cycles() const
{
    std::vector<FormIdeal> reduced = all_reduced();
    std::set<std::pair<Int, Int>> visited;
    std::vector<std::vector<FormIdeal>> cycles;
    for (FormIdeal const & R : reduced) {
        if (visited.contains({R.a, R.b}))
            continue;
        auto cyc = cycle(R);
        for (FormIdeal const & K : cyc)
            visited.insert({K.a, K.b});
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

std::pair<Int, Int> standard_key(FormIdeal const & I)
{
    return {I.a, floor_mod(I.b, 2 * I.a)};
}

} // namespace qvol::numberfield
