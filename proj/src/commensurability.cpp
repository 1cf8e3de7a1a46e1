#include "qvol/commensurability.hpp"

#include <algorithm>
#include <limits>

namespace qvol::commensurability {

using numberfield::Factorization;

GapBounds::GapBounds(Real k, Real K) : lower(std::move(k)), upper(std::move(K))
{
    if (!(lower > 0) || !(upper >= lower))
        throw DomainError("gap bounds need 0 < k <= K, got k=" + lower.str() + ", K=" + upper.str());
}

std::string side_name(Side s)
{
    switch (s) {
    case Side::none: return "none";
    case Side::lower: return "lower";
    case Side::upper: return "upper";
    }
    return "?";
}

namespace {

void require_same_field(QuadIdeal const & x, QuadIdeal const & y)
{
    if (x.disc() != y.disc())
        throw DomainError("manifolds lie in different commensurability classes (discriminants " +
                          to_string(x.disc()) + " and " + to_string(y.disc()) + ")");
}

unsigned valuation(Factorization const & f, QuadIdeal const & P)
{
    for (auto const & [Q, e] : f)
        if (Q == P)
            return e;
    return 0;
}

StrictBound strict(Real lower, Real value, Real upper)
{
    StrictBound b{std::move(lower), std::move(value), std::move(upper), Side::none};
    if (!(b.lower < b.value))
        b.violated = Side::lower;
    else if (!(b.value < b.upper))
        b.violated = Side::upper;
    return b;
}

} // namespace

Division divide(ManifoldIdeal const & M1, ManifoldIdeal const & M2)
{
    require_same_field(M1.ideal, M2.ideal);
    Factorization f1 = numberfield::factor_ideal(M1.ideal);
    Factorization f2 = numberfield::factor_ideal(M2.ideal);

    bool shares = false, divides = true;
    for (auto const & [P, e] : f2) {
        unsigned v = valuation(f1, P);
        shares = shares || v > 0;
        divides = divides && v >= e;
    }
    if (divides) {
        Factorization q;
        for (auto const & [P, e] : f1) {
            unsigned rest = e - valuation(f2, P);
            if (rest)
                q.emplace_back(P, rest);
        }
        ManifoldIdeal out{M1.label + "/" + M2.label, numberfield::multiply_out(M1.ideal.disc(), q),
                          std::nullopt};
        return {DivisionOutcome::quotient, std::move(out)};
    }
    return {shares ? DivisionOutcome::not_divisible : DivisionOutcome::relatively_prime, std::nullopt};
}

unsigned covering_degree(ManifoldIdeal const & M1, ManifoldIdeal const & M2)
{
    require_same_field(M1.ideal, M2.ideal);
    if (M2.ideal.is_unit())
        throw DomainError("covering degree over the unit ideal is unbounded");
    Factorization f1 = numberfield::factor_ideal(M1.ideal);
    Factorization f2 = numberfield::factor_ideal(M2.ideal);
    unsigned p = std::numeric_limits<unsigned>::max();
    for (auto const & [P, e] : f2)
        p = std::min(p, valuation(f1, P) / e);
    return p;
}

std::vector<std::pair<ManifoldIdeal, unsigned>> prime_decompose_manifold(ManifoldIdeal const & M)
{
    std::vector<std::pair<ManifoldIdeal, unsigned>> out;
    for (auto const & [P, e] : numberfield::factor_ideal(M.ideal))
        out.emplace_back(ManifoldIdeal{"P" + to_string(P.norm()) + "_" + to_string(P.b()), P, std::nullopt}, e);
    return out;
}

PrimeManifold next_prime_manifold(RealQuadraticField const & K, std::span<QuadIdeal const> exclude,
                                  std::uint64_t bound)
{
    Int const & D = K.disc();
    auto excluded = [&](QuadIdeal const & P) {
        return std::find(exclude.begin(), exclude.end(), P) != exclude.end();
    };
    std::optional<QuadIdeal> fallback;
    // walk norms upward: primes p with (D/p) != -1 give norm p, inert p give p^2
    for (std::uint64_t n = 2; n <= bound; ++n) {
        std::vector<QuadIdeal> candidates;
        Int N(static_cast<unsigned long>(n));
        if (is_prime(N)) {
            if (kronecker(D, N) != -1)
                candidates = numberfield::prime_splitting(D, N).primes;
        } else {
            Int r = isqrt(N);
            if (r * r == N && is_prime(r) && kronecker(D, r) == -1)
                candidates.push_back(QuadIdeal::principal(D, r));
        }
        for (QuadIdeal const & P : candidates) {
            if (excluded(P))
                continue;
            auto pr = numberfield::is_principal(P);
            if (pr.principal)
                return {{"P" + std::to_string(n) + "_" + to_string(P.b()), P, std::nullopt}, true,
                        pr.generator, ""};
            if (!fallback)
                fallback = P;
        }
    }
    if (fallback) {
        QuadIdeal P = *fallback;
        return {{"P" + to_string(P.norm()) + "_" + to_string(P.b()), P, std::nullopt}, false,
                std::nullopt,
                "no principal prime of norm <= " + std::to_string(bound) +
                    " outside the exclusions; returning the smallest non-principal prime"};
    }
    throw DomainError("no prime ideal of norm <= " + std::to_string(bound) + " outside the exclusions");
}

GapCheck gap_bounds_check(std::span<Real const> volumes, GapBounds const & bounds)
{
    if (volumes.size() < 2)
        throw DomainError("gap check needs at least two volumes");
    for (std::size_t i = 1; i < volumes.size(); ++i)
        if (!(volumes[i] > volumes[i - 1]))
            throw DomainError("volumes must be strictly increasing (index " + std::to_string(i) + ")");
    // allowance for rounding in the last digits of the working precision
    Real const slack = Real("1e-40") * abs(volumes.back());
    GapCheck out;
    for (std::size_t i = 1; i < volumes.size(); ++i) {
        Real step = volumes[i] - volumes[i - 1];
        if (step < bounds.lower - slack || step > bounds.upper + slack) {
            out.ok = false;
            out.first_violation = i;
            break;
        }
    }
    return out;
}

TelescopeReport telescoping_check(CommensurabilityClass const & cls, std::uint64_t t,
                                  GapBounds const & bounds)
{
    if (t < 1)
        throw DomainError("t must be >= 1");
    if (!(cls.base_class.field == cls.field))
        throw DomainError("base class does not belong to the class field");
    for (ManifoldIdeal const & M : cls.members) {
        if (M.ideal.disc() != cls.field.disc())
            throw DomainError("member " + M.label + " lies outside Q(sqrt " + to_string(cls.field.d()) + ")");
        if (!M.volume)
            throw DomainError("member " + M.label + " carries no volume");
    }
    if (cls.members.empty())
        throw DomainError("chain is empty");

    TelescopeReport r;
    r.t = t;
    r.n_t = numberfield::count_ideals_in_class(cls.base_class, t);
    r.chain_length = cls.members.size();
    r.v0 = *cls.members.front().volume;
    r.v_last = *cls.members.back().volume;
    r.t_v0 = Real(static_cast<double>(t)) * r.v0;

    if (t == 1 || r.n_t <= 1) {
        r.degenerate = true;
        r.passed = true;
        r.notes.push_back("degenerate: N(t) = " + std::to_string(r.n_t) +
                          ", so N(t) - 1 <= 0 and the inequalities are vacuous");
        return r;
    }
    if (r.chain_length != r.n_t + 1)
        throw DomainError("chain has " + std::to_string(r.chain_length) + " members but N(t) = " +
                          std::to_string(r.n_t) + " requires " + std::to_string(r.n_t + 1));

    std::vector<Real> vols;
    for (ManifoldIdeal const & M : cls.members)
        vols.push_back(*M.volume);
    r.gaps = gap_bounds_check(vols, bounds);
    r.telescoped_sum = 0;
    for (std::size_t i = 1; i < vols.size(); ++i)
        r.telescoped_sum += vols[i] - vols[i - 1];

    Real const n1(static_cast<double>(r.n_t - 1));
    r.chain_bound = strict(bounds.lower * n1, r.v_last - r.v0, bounds.upper * n1);
    r.endpoint_error = abs(r.v_last - r.t_v0) / r.t_v0;
    r.endpoint_ok = r.endpoint_error <= kEndpointTolerance;
    r.class_bound = strict(bounds.lower * n1, Real(static_cast<double>(t - 1)) * r.v0, bounds.upper * n1);

    if (!r.gaps.ok)
        r.notes.push_back("step " + std::to_string(*r.gaps.first_violation) + " lies outside [k, K]");
    if (!r.chain_bound.ok())
        r.notes.push_back("chain bound violated on the " + side_name(r.chain_bound.violated) + " side");
    if (!r.endpoint_ok)
        r.notes.push_back("Vol M_N differs from t Vol M_0");
    if (!r.class_bound.ok())
        r.notes.push_back("class bound violated on the " + side_name(r.class_bound.violated) + " side");
    r.passed = r.gaps.ok && r.chain_bound.ok() && r.endpoint_ok && r.class_bound.ok();
    return r;
}

std::vector<QuadIdeal> ideals_in_class(IdealClass const & A, std::size_t count)
{
    RealQuadraticField const & K = A.field;
    Int const & D = K.disc();
    std::vector<QuadIdeal> out;
    for (Int n = 1; out.size() < count; ++n) {
        std::vector<QuadIdeal> level;
        for (Int m = 1; m * m <= n; ++m) {
            if (n % (m * m) != 0)
                continue;
            Int a = n / (m * m);
            for (Int b = floor_mod(D, 2); b < 2 * a; b += 2) {
                if ((b * b - D) % (4 * a) != 0)
                    continue;
                QuadIdeal I(D, m, a, b);
                if (K.class_index(I.primitive_part()) == A.index)
                    level.push_back(std::move(I));
            }
        }
        std::sort(level.begin(), level.end(), numberfield::ideal_less);
        for (QuadIdeal & I : level)
            if (out.size() < count)
                out.push_back(std::move(I));
    }
    return out;
}

CommensurabilityClass synthetic_chain(IdealClass const & A, std::uint64_t t, Real const & v0)
{
    if (!(v0 > 0))
        throw DomainError("Vol M_0 must be positive");
    std::uint64_t n = numberfield::count_ideals_in_class(A, t);
    if (n == 0)
        throw DomainError("class has no ideal of norm <= " + std::to_string(t));
    auto ideals = ideals_in_class(A, n + 1);
    Real const delta = Real(static_cast<double>(t - 1)) / Real(static_cast<double>(n));
    CommensurabilityClass cls{A.field, A, {}};
    for (std::uint64_t j = 0; j <= n; ++j)
        cls.members.push_back({"M" + std::to_string(j), ideals[j],
                               v0 * (1 + Real(static_cast<double>(j)) * delta)});
    return cls;
}

} // namespace qvol::commensurability
