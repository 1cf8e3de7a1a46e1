#pragma once

// Brute-force reference computations. None of them call into the library's
// continued-fraction or reduced-ideal code.

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

inline i64 isqrt(i64 n)
{
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

inline bool squarefree(i64 n)
{
    for (i64 p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0)
            return false;
    return n > 1;
}

inline i64 disc_of(i64 d) { return d % 4 == 1 ? d : 4 * d; }

/// Fundamental unit (x + y sqrt D)/2 from the smallest y >= 1 with
/// x^2 - D y^2 = +-4.
struct Unit {
    i64 x, y, D;
    int norm;
};

inline Unit pell(i64 d)
{
    i64 const D = disc_of(d);
    for (i64 y = 1;; ++y) {
        i64 const q = D * y * y;
        for (int s : {-4, 4}) {
            i64 x = isqrt(q + s);
            if (x * x == q + s)
                return {x, y, D, s > 0 ? 1 : -1};
        }
    }
}

/*
 * Narrow class number from cycles of reduced indefinite forms (a, b, c) with
 * signed a, converted to the wide class number with the unit's norm.
 */
inline std::size_t class_number(i64 d)
{
    i64 const D = disc_of(d);
    i64 const s = isqrt(D);
    auto reduced = [&](i64 a, i64 b) {
        i64 aa = a < 0 ? -a : a;
        if (b <= 0 || b * b >= D)
            return false;
        if ((2 * aa + b) * (2 * aa + b) <= D)
            return false;
        i64 u = 2 * aa - b;
        return u <= 0 || u * u < D;
    };
    using Form = std::tuple<i64, i64, i64>;
    std::set<Form> forms;
    for (i64 b = 1; b <= s; ++b) {
        if ((b - D) % 2 != 0)
            continue;
        i64 const m = (b * b - D) / 4;
        for (i64 aa = 1; aa <= s + b; ++aa) {
            if (m % aa != 0)
                continue;
            for (i64 a : {aa, -aa}) {
                if (!reduced(a, b))
                    continue;
                i64 c = m / a;
                if (std::gcd(std::gcd(aa, b), c < 0 ? -c : c) == 1)
                    forms.emplace(a, b, c);
            }
        }
    }
    auto rho = [&](Form const & f) {
        auto [a, b, c] = f;
        i64 const two_c = 2 * (c < 0 ? -c : c);
        // b' = -b mod 2|c| with sqrt D - 2|c| < b' < sqrt D
        i64 r = ((-b) % two_c + two_c) % two_c;
        i64 bp = s - ((s - r) % two_c + two_c) % two_c;
        return Form{c, bp, (bp * bp - D) / (4 * c)};
    };
    std::set<Form> seen;
    std::size_t cycles = 0;
    for (Form const & f : forms) {
        if (seen.contains(f))
            continue;
        ++cycles;
        Form g = f;
        do {
            seen.insert(g);
            g = rho(g);
        } while (g != f);
    }
    return pell(d).norm == -1 ? cycles : cycles / 2;
}

/// All integral ideals m [a, (b + sqrt D)/2] of norm <= t as (m, a, b).
struct IdealKey {
    i64 m, a, b;
    auto operator<=>(IdealKey const &) const = default;
};

inline std::vector<IdealKey> all_ideals(i64 D, i64 t)
{
    std::vector<IdealKey> out;
    for (i64 m = 1; m * m <= t; ++m)
        for (i64 a = 1; m * m * a <= t; ++a)
            for (i64 b = D & 1; b < 2 * a; b += 2)
                if ((b * b - D) % (4 * a) == 0)
                    out.push_back({m, a, b});
    return out;
}

/// True iff the norm form a x^2 + b x y + c y^2 of [a, (b + sqrt D)/2]
/// takes the value +-1 in the box |x|, |y| <= bound.
inline bool principal_by_search(i64 D, i64 a, i64 b, i64 bound)
{
    i64 const c = (b * b - D) / (4 * a);
    for (i64 x = -bound; x <= bound; ++x)
        for (i64 y = 0; y <= bound; ++y) {
            i64 v = a * x * x + b * x * y + c * y * y;
            if (v == 1 || v == -1)
                return true;
        }
    return false;
}

} // namespace oracle
