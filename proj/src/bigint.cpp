#include "qvol/bigint.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>

namespace qvol {

Int isqrt(Int const & n)
{
    if (n < 0)
        throw DomainError("isqrt of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(Int const & n)
{
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int floor_div(Int const & a, Int const & b)
{
    if (b == 0)
        throw DomainError("division by zero");
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int floor_mod(Int const & a, Int const & b)
{
    if (b == 0)
        throw DomainError("division by zero");
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int gcd_int(Int const & a, Int const & b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm_int(Int const & a, Int const & b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Int ext_gcd(Int const & a, Int const & b, Int & u, Int & v)
{
    Int g;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    return g;
}

bool is_prime(Int const & n)
{
    return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

/* Brent's variant of Pollard rho; n odd composite, not a prime power of a
 * small prime. Returns a nontrivial factor. */
Int rho_factor(Int const & n, std::mt19937_64 & rng)
{
    for (;;) {
        Int y = Int(static_cast<unsigned long>(rng() % 1000000007UL)) % n;
        Int c = Int(static_cast<unsigned long>(rng() % 1000000007UL)) % n;
        if (c == 0)
            c = 1;
        unsigned long const m = 128;
        Int g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, static_cast<unsigned long>(r.get_ui()) - k); ++i) {
                    y = (y * y + c) % n;
                    q = (q * abs_int(x - y)) % n;
                }
                g = gcd_int(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                g = gcd_int(abs_int(x - ys), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void factor_into(Int n, std::map<Int, unsigned> & out, std::mt19937_64 & rng)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    if (is_square(n)) {
        Int r = isqrt(n);
        factor_into(r, out, rng);
        factor_into(r, out, rng);
        return;
    }
    Int f = rho_factor(n, rng);
    factor_into(f, out, rng);
    factor_into(n / f, out, rng);
}

} // namespace

namespace {

// Strips primes up to 10^5 into `acc`; returns the cofactor.
Int trial_divide(Int n, std::map<Int, unsigned> & acc)
{
    for (unsigned long p : {2UL, 3UL, 5UL}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++acc[Int(p)];
        }
    }
    // wheel mod 30
    static constexpr unsigned long steps[] = {4, 2, 4, 2, 4, 6, 2, 6};
    unsigned long p = 7;
    for (unsigned i = 0; p <= 100000UL; p += steps[i++ % 8]) {
        if (Int(p) * p > n)
            break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= p;
            ++acc[Int(p)];
        }
    }
    return n;
}

} // namespace

std::vector<std::pair<Int, unsigned>> factor(Int const & n_in)
{
    if (n_in <= 0)
        throw DomainError("factor: argument must be positive");
    std::map<Int, unsigned> acc;
    Int n = trial_divide(n_in, acc);
    if (n > 1) {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
        factor_into(n, acc, rng);
    }
    return {acc.begin(), acc.end()};
}

SquareSplit split_square(Int const & n)
{
    if (n <= 0)
        throw DomainError("split_square: argument must be positive");
    std::map<Int, unsigned> acc;
    Int rest = trial_divide(n, acc);
    SquareSplit s{1, 1};
    // Discriminants of long periods are k^2 d with d small and k huge; the
    // large cofactor is then a perfect square and needs no factoring.
    if (rest > 1 && is_square(rest)) {
        s.square = isqrt(rest);
        rest = 1;
    }
    if (rest > 1) {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
        factor_into(rest, acc, rng);
    }
    for (auto const & [p, e] : acc) {
        Int pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e / 2);
        s.square *= pe;
        if (e % 2)
            s.squarefree *= p;
    }
    return s;
}

bool is_squarefree(Int const & n)
{
    if (n == 0)
        return false;
    for (auto const & f : factor(abs_int(n)))
        if (f.second > 1)
            return false;
    return true;
}

int kronecker(Int const & a, Int const & n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

Int field_discriminant(Int const & d)
{
    Int r = floor_mod(d, 4);
    return r == 1 ? d : Int(4 * d);
}

bool is_fundamental_discriminant(Int const & D)
{
    if (D == 0 || D == 1)
        return false;
    Int r = floor_mod(D, 4);
    if (r == 1)
        return is_squarefree(D);
    if (r != 0)
        return false;
    Int m = D / 4;
    Int rm = floor_mod(m, 4);
    return (rm == 2 || rm == 3) && is_squarefree(m);
}

Real to_real(Int const & n)
{
    Real r;
    mpfr_set_z(r.backend().data(), n.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real to_real(Rational const & q)
{
    return to_real(q.get_num()) / to_real(q.get_den());
}

std::string to_string(Int const & n)
{
    return n.get_str(10);
}

Int parse_int(std::string const & text, std::string const & what)
{
    std::string s = text;
    if (!s.empty() && s.front() == '+')
        s.erase(0, 1);
    bool ok = !s.empty();
    for (std::size_t i = 0; i < s.size() && ok; ++i) {
        char ch = s[i];
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || (i == 0 && ch == '-' && s.size() > 1)))
            ok = false;
    }
    if (!ok)
        throw DomainError("invalid integer for " + what + ": '" + text + "'");
    return Int(s, 10);
}

bool fits_int64(Int const & n)
{
    static Int const lo = Int("-9223372036854775808");
    static Int const hi = Int("9223372036854775807");
    return n >= lo && n <= hi;
}

std::int64_t to_int64(Int const & n)
{
    if (!fits_int64(n))
        throw DomainError("integer does not fit in 64 bits: " + to_string(n));
    Int mag = abs_int(n);
    std::uint64_t u = 0;
    std::size_t count = 0;
    mpz_export(&u, &count, -1, sizeof(u), 0, 0, mag.get_mpz_t());
    return static_cast<std::int64_t>(n < 0 ? ~u + 1 : u);
}

} // namespace qvol
