#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "qvol/numberfield.hpp"

using namespace qvol;
using namespace qvol::numberfield;
using quadratic::QuadraticIrrational;

namespace {

double to_d(Real const & x) { return x.convert_to<double>(); }

std::vector<long> radicands(long lo, long hi)
{
    std::vector<long> out;
    for (long d = lo; d <= hi; ++d)
        if (oracle::squarefree(d))
            out.push_back(d);
    return out;
}

QuadIdeal random_ideal(Int const & disc, std::mt19937_64 & rng)
{
    std::uniform_int_distribution<long> pick(0, 40);
    auto all = oracle::all_ideals(disc.get_si(), 60);
    auto const & k = all[pick(rng) % all.size()];
    return QuadIdeal(disc, k.m, k.a, k.b);
}

} // namespace

TEST_CASE("field invariants on examples")
{
    RealQuadraticField K5(5);
    CHECK(K5.disc() == 5);
    CHECK(K5.epsilon() == QuadraticIrrational(1, 1, 2, 5));
    CHECK(K5.epsilon_norm() == -1);
    CHECK(K5.class_number() == 1);
    CHECK(to_d(K5.regulator()) == doctest::Approx(0.4812118250596).epsilon(1e-12));

    RealQuadraticField K10(10);
    CHECK(K10.disc() == 40);
    CHECK(K10.epsilon() == QuadraticIrrational(3, 1, 1, 10));
    CHECK(K10.class_number() == 2);

    RealQuadraticField K79(79);
    CHECK(K79.epsilon() == QuadraticIrrational(80, 9, 1, 79));
    CHECK(K79.epsilon_norm() == 1);
    CHECK(K79.class_number() == 3);

    CHECK(RealQuadraticField(2).epsilon() == QuadraticIrrational(1, 1, 1, 2));
    CHECK(RealQuadraticField(3).epsilon() == QuadraticIrrational(2, 1, 1, 3));

    CHECK_THROWS_AS(RealQuadraticField(4), DomainError);
    CHECK_THROWS_AS(RealQuadraticField(12), DomainError);
    CHECK_THROWS_AS(RealQuadraticField(1), DomainError);
    CHECK_THROWS_AS(RealQuadraticField(-3), DomainError);
}

TEST_CASE("fundamental unit against Pell search")
{
    for (long d : radicands(2, 100)) {
        CAPTURE(d);
        auto u = oracle::pell(d);
        RealQuadraticField K(d);
        QuadraticIrrational expect(u.x, u.y, 2, u.D);
        CHECK(K.epsilon() == expect);
        CHECK(K.epsilon_norm() == u.norm);
        CHECK(K.epsilon().norm() == u.norm);
        CHECK(K.epsilon().is_algebraic_integer());
        double logeps = std::log((u.x + u.y * std::sqrt(double(u.D))) / 2.0);
        CHECK(to_d(K.regulator()) == doctest::Approx(logeps).epsilon(1e-9));
    }
}

TEST_CASE("class number against reduced forms")
{
    for (long d : radicands(2, 150)) {
        CAPTURE(d);
        CHECK(RealQuadraticField(d).class_number() == oracle::class_number(d));
    }
}

TEST_CASE("prime splitting")
{
    auto s = prime_splitting(Int(40), Int(3));
    CHECK(s.kind == SplitKind::split);
    REQUIRE(s.primes.size() == 2);
    CHECK(s.primes[0].norm() == 3);
    CHECK(s.primes[0].conjugate() == s.primes[1]);
    CHECK(prime_splitting(Int(40), Int(2)).kind == SplitKind::ramified);
    CHECK(prime_splitting(Int(40), Int(7)).kind == SplitKind::inert);
    CHECK(prime_splitting(Int(40), Int(7)).primes[0].norm() == 49);
    CHECK(prime_splitting(Int(5), Int(5)).kind == SplitKind::ramified);
    CHECK(prime_splitting(Int(5), Int(11)).kind == SplitKind::split);
    CHECK_THROWS_AS(prime_splitting(Int(5), Int(6)), DomainError);
}

TEST_CASE("non-principal prime in Q(sqrt 10)")
{
    RealQuadraticField K(10);
    auto P = prime_splitting(K, Int(3)).primes[0];
    CHECK_FALSE(is_principal(P).principal);
    CHECK_FALSE(class_of(K, P).is_principal());
    CHECK(is_principal(ideal_mul(P, P.conjugate())).principal);
    QuadIdeal two(40, 1, 2, 0);
    CHECK(two.str() == "(2, √10)");
    CHECK_FALSE(is_principal(two).principal);
    CHECK(equivalent(two, P));
    auto g = is_principal(ideal_pow(two, 2));
    REQUIRE(g.principal);
    CHECK(QuadIdeal::principal(40, *g.generator) == QuadIdeal::principal(40, Int(2)));
}

TEST_CASE("principal generators generate")
{
    for (long d : {2L, 5L, 6L, 10L, 15L, 79L}) {
        Int disc = field_discriminant(d);
        for (auto const & k : oracle::all_ideals(disc.get_si(), 200)) {
            QuadIdeal I(disc, k.m, k.a, k.b);
            auto r = is_principal(I);
            if (r.principal)
                CHECK(QuadIdeal::principal(disc, *r.generator) == I);
        }
    }
}

TEST_CASE("principality against norm form search")
{
    for (long d : {2L, 3L, 5L, 10L, 15L, 26L}) {
        CAPTURE(d);
        long const D = oracle::disc_of(d);
        for (auto const & k : oracle::all_ideals(D, 150)) {
            if (k.m != 1)
                continue;
            bool expect = oracle::principal_by_search(D, k.a, k.b, 120);
            CHECK(is_principal(QuadIdeal(D, 1, k.a, k.b)).principal == expect);
        }
    }
}

TEST_CASE("ideal multiplication")
{
    std::mt19937_64 rng(11);
    for (long d : {5L, 10L, 15L, 79L, 82L}) {
        Int disc = field_discriminant(d);
        RealQuadraticField K(d);
        for (int i = 0; i < 200; ++i) {
            QuadIdeal I = random_ideal(disc, rng), J = random_ideal(disc, rng),
                      L = random_ideal(disc, rng);
            CHECK(ideal_mul(I, J).norm() == I.norm() * J.norm());
            CHECK(ideal_mul(I, J) == ideal_mul(J, I));
            CHECK(ideal_mul(ideal_mul(I, J), L) == ideal_mul(I, ideal_mul(J, L)));
            CHECK(ideal_mul(I, I.conjugate()) == QuadIdeal::principal(disc, I.norm()));
            CHECK(ideal_mul(I, QuadIdeal::unit(disc)) == I);
            // the class map is a homomorphism
            std::size_t const h = K.class_number();
            if (h > 1) {
                auto cij = class_of(K, ideal_mul(I, J));
                bool iprinc = class_of(K, I).is_principal();
                if (iprinc)
                    CHECK(cij == class_of(K, J));
            }
        }
    }
}

TEST_CASE("factorization multiplies back")
{
    for (long d : {5L, 10L, 13L, 79L}) {
        Int disc = field_discriminant(d);
        for (auto const & k : oracle::all_ideals(disc.get_si(), 400)) {
            QuadIdeal I(disc, k.m, k.a, k.b);
            auto f = factor_ideal(I);
            CHECK(multiply_out(disc, f) == I);
            for (auto const & [P, e] : f) {
                CHECK(e >= 1);
                CHECK((is_prime(P.norm()) || is_square(P.norm())));
            }
        }
    }
    CHECK(factor_ideal(QuadIdeal::unit(5)).empty());
}

TEST_CASE("ideal counts against enumeration")
{
    for (long d : {5L, 10L, 15L, 26L, 79L}) {
        CAPTURE(d);
        long const D = oracle::disc_of(d);
        RealQuadraticField K(d);
        std::uint64_t const t = 600;
        auto all = oracle::all_ideals(D, t);
        auto counts = count_ideals_by_class(K, t);
        REQUIRE(counts.size() == K.class_number());
        std::uint64_t total = 0;
        for (auto c : counts)
            total += c;
        CHECK(total == all.size());
        if (d != 79) {
            std::uint64_t principal = 0;
            for (auto const & k : all)
                principal += oracle::principal_by_search(D, k.a, k.b, 120);
            CHECK(counts[0] == principal);
        }
        for (unsigned parts : {2U, 3U, 7U})
            CHECK(count_ideals_by_class(K, t, parts) == counts);
    }
}

TEST_CASE("partition independence at larger t")
{
    RealQuadraticField K(10);
    auto base = count_ideals_by_class(K, 200000);
    CHECK(count_ideals_by_class(K, 200000, 4) == base);
    CHECK(count_ideals_by_class(K, 200000, 13) == base);
}

TEST_CASE("density and residue")
{
    RealQuadraticField K5(5), K10(10);
    CHECK(to_d(dirichlet_density(K5)) == doctest::Approx(0.4304089410).epsilon(1e-9));
    CHECK(to_d(dirichlet_density(K10)) == doctest::Approx(0.5750432614241854).epsilon(1e-9));
    CHECK(to_d(zeta_residue(K10)) == doctest::Approx(1.1500865228483708).epsilon(1e-9));
}

TEST_CASE("ideal counts converge to the density")
{
    RealQuadraticField K5(5);
    double const rho5 = to_d(dirichlet_density(K5));
    auto principal5 = ideal_classes(K5).at(0);
    for (std::uint64_t t : {1000ULL, 10000ULL, 100000ULL, 1000000ULL}) {
        double r = double(count_ideals_in_class(principal5, t)) / double(t);
        CHECK(std::abs(r / rho5 - 1) < 0.01);
    }

    RealQuadraticField K10(10);
    double const rho10 = to_d(dirichlet_density(K10));
    auto c = count_ideals_by_class(K10, 100000, 4);
    REQUIRE(c.size() == 2);
    double r0 = double(c[0]) / 1e5, r1 = double(c[1]) / 1e5;
    CHECK(std::abs(r0 / rho10 - 1) < 0.02);
    CHECK(std::abs(r1 / rho10 - 1) < 0.02);
    CHECK(std::abs(r0 - r1) / rho10 < 0.02);
}

TEST_CASE("Humbert volumes")
{
    auto h3 = humbert_volume(-3, 1000000);
    CHECK(to_d(h3.volume) == doctest::Approx(0.16915693440160894).epsilon(1e-10));
    CHECK(to_d(h3.error_bound) < 1e-9);
    auto h4 = humbert_volume(-4, 1000000);
    CHECK(to_d(h4.volume) == doctest::Approx(0.30532186472573967).epsilon(1e-10));

    // doubling the number of terms moves the value by less than the bound
    auto h3b = humbert_volume(-3, 2000000);
    CHECK(to_d(abs(h3b.volume - h3.volume)) <= to_d(h3.error_bound));
    CHECK(h3b.error_bound < h3.error_bound);

    CHECK_THROWS_AS(humbert_volume(-12, 1000), DomainError);
    CHECK_THROWS_AS(humbert_volume(5, 1000), DomainError);
}

TEST_CASE("ideal validation")
{
    CHECK_THROWS_AS(QuadIdeal(5, 1, 2, 0), DomainError);
    CHECK_THROWS_AS(QuadIdeal(5, 0, 1, 1), DomainError);
    CHECK(QuadIdeal(40, 1, 3, 4) == QuadIdeal(40, 1, 3, -2));
    CHECK(QuadIdeal::principal(5, Int(-3)) == QuadIdeal::principal(5, Int(3)));
    CHECK(QuadIdeal::principal(5, Int(3)).norm() == 9);
}
