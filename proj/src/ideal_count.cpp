// Enumeration of integral ideals by norm, classified into ideal classes.
//
// Every integral ideal is m * [a, (b + sqrt D)/2] with [a, .] primitive, so
// N(t, A) = sum_{m^2 <= t} P(t / m^2, A) where P counts primitive ideals.
// Primitive ideals of norm a are the roots b of b^2 = D mod 4a in [0, 2a);
// they are found from the factorization of a (smallest-prime-factor sieve),
// square roots modulo each prime power, and CRT. Each ideal is then reduced
// and looked up in the table of reduced-ideal cycles. All arithmetic here is
// 64-bit with 128-bit products.

#include "qvol/numberfield.hpp"

#include <thread>
#include <unordered_map>

namespace qvol::numberfield {

namespace {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 mulmod(i64 a, i64 b, i64 m)
{
    return static_cast<i64>(static_cast<i128>(a) * b % m);
}

i64 powmod(i64 b, i64 e, i64 m)
{
    i64 r = 1 % m;
    b = mod(b, m);
    while (e > 0) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

i64 inverse(i64 a, i64 m)
{
    i64 g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1 != 0) {
        i64 q = g / a1;
        i64 t = g - q * a1;
        g = a1;
        a1 = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    return mod(x, m);
}

i64 isqrt64(i64 n)
{
    i64 r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

/* Square root of n mod odd prime p, or -1 when n is a non-residue. */
i64 sqrt_mod(i64 n, i64 p)
{
    n = mod(n, p);
    if (n == 0)
        return 0;
    if (powmod(n, (p - 1) / 2, p) != 1)
        return -1;
    if (p % 4 == 3)
        return powmod(n, (p + 1) / 4, p);
    i64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    i64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    i64 c = powmod(z, q, p), r = powmod(n, (q + 1) / 2, p), t = powmod(n, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        for (i64 tt = t; tt != 1; tt = mulmod(tt, tt, p))
            ++i;
        i64 b = c;
        for (int j = 0; j + i + 1 < m; ++j)
            b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return r;
}

struct Residues {
    i64 modulus = 1;
    std::vector<i64> roots{0};
};

Residues crt(Residues const & x, i64 m2, std::vector<i64> const & r2)
{
    Residues out;
    out.modulus = x.modulus * m2;
    out.roots.clear();
    i64 inv = inverse(x.modulus % m2, m2);
    for (i64 r1 : x.roots)
        for (i64 s : r2) {
            i64 k = mulmod(mod(s - r1, m2), inv, m2);
            out.roots.push_back(r1 + x.modulus * k);
        }
    return out;
}

class Counter
{
  public:
    Counter(RealQuadraticField const & K, u64 t) : t_(static_cast<i64>(t))
    {
        D_ = to_int64(K.disc());
        s_ = isqrt64(D_);
        h_ = K.class_number();
        for (std::size_t i = 0; i < K.cycles().size(); ++i)
            for (FormIdeal const & R : K.cycles()[i])
                table_.emplace(key(to_int64(R.a), to_int64(R.b)), static_cast<std::uint32_t>(i));

        spf_.assign(static_cast<std::size_t>(t_) + 1, 0);
        for (i64 i = 2; i <= t_; ++i) {
            if (spf_[i])
                continue;
            for (i64 j = i; j <= t_; j += i)
                if (!spf_[j])
                    spf_[j] = static_cast<std::uint32_t>(i);
        }
        root_mod_p_.assign(static_cast<std::size_t>(t_) + 1, -2);
        for (i64 p = 3; p <= t_; p += 2)
            if (spf_[p] == p)
                root_mod_p_[p] = sqrt_mod(D_, p);

        // roots of b^2 = D mod 2^e by lifting
        pow2_roots_.push_back({0});
        std::vector<i64> prev;
        for (i64 b = 0; b < 2; ++b)
            if (mod(b * b - D_, 2) == 0)
                prev.push_back(b);
        pow2_roots_.push_back(prev);
        for (int e = 2; (i64{1} << (e - 2)) <= t_; ++e) {
            i64 const m = i64{1} << e, half = m >> 1;
            std::vector<i64> next;
            for (i64 r : prev)
                for (i64 cand : {r, r + half})
                    if (mod(mulmod(cand, cand, m) - D_, m) == 0)
                        next.push_back(cand);
            pow2_roots_.push_back(next);
            prev = std::move(next);
        }
    }

    std::size_t classes() const { return h_; }

    /* Adds the primitive-ideal counts for norms in [lo, hi] into
     * counts[class][a]. */
    void run(i64 lo, i64 hi, std::vector<std::vector<std::uint32_t>> & counts) const
    {
        for (i64 a = lo; a <= hi; ++a) {
            Residues res;
            bool ok = true;
            i64 n = a;
            int e2 = 2;
            while ((n & 1) == 0) {
                n >>= 1;
                ++e2;
            }
            auto const & r2 = pow2_roots_[e2];
            if (r2.empty())
                continue;
            res.modulus = i64{1} << e2;
            res.roots = r2;
            while (n > 1 && ok) {
                i64 const p = spf_[n];
                int k = 0;
                i64 pk = 1;
                while (n % p == 0) {
                    n /= p;
                    ++k;
                    pk *= p;
                }
                std::vector<i64> rp;
                if (D_ % p == 0) {
                    if (k == 1)
                        rp.push_back(0);
                } else if (i64 r = root_mod_p_[p]; r >= 0) {
                    for (i64 x : {r, p - r}) {
                        i64 m = p;
                        for (int j = 1; j < k; ++j) {
                            m *= p;
                            // Hensel: x <- x - (x^2 - D) / (2x)
                            i64 f = mod(mulmod(x, x, m) - D_, m);
                            x = mod(x - mulmod(f, inverse(mod(2 * x, m), m), m), m);
                        }
                        rp.push_back(x);
                    }
                }
                if (rp.empty())
                    ok = false;
                else
                    res = crt(res, pk, rp);
            }
            if (!ok)
                continue;
            for (i64 b : res.roots)
                if (b < 2 * a)
                    ++counts[classify(a, b)][a];
        }
    }

  private:
    static u64 key(i64 a, i64 b) { return (static_cast<u64>(a) << 32) | static_cast<u64>(b); }

    i64 normalized_b(i64 b, i64 a) const
    {
        i64 const two_a = 2 * a;
        if (a > s_) {
            i64 r = mod(b, two_a);
            return r > a ? r - two_a : r;
        }
        return s_ - mod(s_ - b, two_a);
    }

    bool reduced(i64 a, i64 b) const
    {
        return b > 0 && b <= s_ && b + 2 * a > s_ && 2 * a - b <= s_;
    }

    std::uint32_t classify(i64 a, i64 b) const
    {
        b = normalized_b(b, a);
        while (!reduced(a, b)) {
            i64 c = (b * b - D_) / (4 * a);
            a = c < 0 ? -c : c;
            b = normalized_b(-b, a);
        }
        auto it = table_.find(key(a, b));
        if (it == table_.end())
            throw ConsistencyFault("reduced ideal missing from class table");
        return it->second;
    }

    i64 t_, D_ = 0, s_ = 0;
    std::size_t h_ = 0;
    std::unordered_map<u64, std::uint32_t> table_;
    std::vector<std::uint32_t> spf_;
    std::vector<i64> root_mod_p_;
    std::vector<std::vector<i64>> pow2_roots_;
};

} // namespace

std::vector<std::uint64_t> count_ideals_by_class(RealQuadraticField const & K, std::uint64_t t,
                                                 unsigned partitions)
{
    if (t < 1)
        throw DomainError("t must be >= 1");
    if (t > 2000000000ULL || K.disc() > 1000000000)
        throw DomainError("ideal counting supports t <= 2e9 and D <= 1e9");
    Counter counter(K, t);
    std::size_t const h = counter.classes();
    std::vector<std::vector<std::uint32_t>> counts(h, std::vector<std::uint32_t>(t + 1, 0));

    partitions = std::max(1u, std::min<unsigned>(partitions, static_cast<unsigned>(t)));
    if (partitions == 1) {
        counter.run(1, static_cast<i64>(t), counts);
    } else {
        // disjoint index ranges of `counts`, so workers never share a slot
        std::vector<std::thread> workers;
        u64 const chunk = (t + partitions - 1) / partitions;
        for (unsigned w = 0; w < partitions; ++w) {
            u64 lo = 1 + w * chunk, hi = std::min<u64>(t, (w + 1) * chunk);
            if (lo > hi)
                break;
            workers.emplace_back([&, lo, hi] {
                counter.run(static_cast<i64>(lo), static_cast<i64>(hi), counts);
            });
        }
        for (auto & th : workers)
            th.join();
    }

    std::vector<std::uint64_t> out(h, 0);
    for (std::size_t c = 0; c < h; ++c) {
        std::vector<std::uint64_t> prefix(t + 1, 0);
        for (u64 n = 1; n <= t; ++n)
            prefix[n] = prefix[n - 1] + counts[c][n];
        for (u64 m = 1; m * m <= t; ++m)
            out[c] += prefix[t / (m * m)];
    }
    return out;
}

std::uint64_t count_ideals_in_class(IdealClass const & A, std::uint64_t t, unsigned partitions)
{
    return count_ideals_by_class(A.field, t, partitions).at(A.index);
}

} // namespace qvol::numberfield
