// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "qvol/commensurability.hpp"
#include "qvol/dimgroup.hpp"
#include "qvol/numberfield.hpp"
#include "qvol/quadratic.hpp"
#include "qvol/volume.hpp"

using namespace qvol;
using numberfield::QuadIdeal;
using numberfield::RealQuadraticField;
using quadratic::QuadraticIrrational;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

std::vector<Int> block(std::mt19937_64 & rng, long max_digit, long max_len)
{
    std::uniform_int_distribution<long> len(1, max_len), digit(1, max_digit);
    std::vector<Int> p;
    for (long k = len(rng); k > 0; --k)
        p.emplace_back(digit(rng));
    return p;
}

QuadIdeal random_ideal(long D, std::mt19937_64 & rng, long t)
{
    auto all = oracle::all_ideals(D, t);
    auto const & k = all[rng() % all.size()];
    return QuadIdeal(D, k.m, k.a, k.b);
}

Outcome fundamental_units()
{
    int bad = 0, n = 0;
    for (long d = 2; d <= 100; ++d) {
        if (!oracle::squarefree(d))
            continue;
        ++n;
        auto u = oracle::pell(d);
        if (numberfield::fundamental_unit(d) != QuadraticIrrational(u.x, u.y, 2, u.D))
            ++bad;
    }
    return {bad == 0, std::to_string(n) + " fields, " + std::to_string(bad) + " mismatches"};
}

Outcome class_numbers()
{
    int bad = 0, n = 0;
    for (long d = 2; d <= 150; ++d) {
        if (!oracle::squarefree(d))
            continue;
        ++n;
        if (RealQuadraticField(d).class_number() != oracle::class_number(d))
            ++bad;
    }
    bool anchors = RealQuadraticField(5).class_number() == 1 && RealQuadraticField(10).class_number() == 2 &&
                   RealQuadraticField(79).class_number() == 3 && oracle::class_number(5) == 1 &&
                   oracle::class_number(10) == 2 && oracle::class_number(79) == 3;
    return {bad == 0 && anchors,
            std::to_string(n) + " fields, " + std::to_string(bad) + " mismatches, anchors " +
                (anchors ? "ok" : "wrong")};
}

Outcome density()
{
    RealQuadraticField K5(5), K10(10);
    double const r5 = numberfield::dirichlet_density(K5).convert_to<double>();
    auto c5 = numberfield::count_ideals_by_class(K5, 1000000, 4);
    double e5 = std::abs(double(c5[0]) / 1e6 / r5 - 1);

    double const r10 = numberfield::dirichlet_density(K10).convert_to<double>();
    auto c10 = numberfield::count_ideals_by_class(K10, 100000, 4);
    double e0 = std::abs(double(c10[0]) / 1e5 / r10 - 1);
    double e1 = std::abs(double(c10[1]) / 1e5 / r10 - 1);
    double ratio = double(std::max(c10[0], c10[1])) / double(std::min(c10[0], c10[1]));
    char buf[200];
    std::snprintf(buf, sizeof buf, "d=5 rel err %.4f; d=10 rel errs %.4f %.4f, count ratio %.4f", e5, e0, e1,
                  ratio);
    return {e5 < 0.01 && e0 < 0.02 && e1 < 0.02 && ratio < 1.5, buf};
}

Outcome cf_round_trip()
{
    std::mt19937_64 rng(404);
    std::vector<long> ds;
    for (long d = 2; d <= 200; ++d)
        if (oracle::squarefree(d))
            ds.push_back(d);
    std::uniform_int_distribution<long> ab(-100, 100), c(1, 100);
    int bad = 0;
    for (int i = 0; i < 500; ++i) {
        long b = 0;
        while (b == 0)
            b = ab(rng);
        QuadraticIrrational x(ab(rng), b, c(rng), ds[rng() % ds.size()]);
        if (quadratic::cf_value(quadratic::cf_expand(x)) != x)
            ++bad;
    }
    return {bad == 0, "500 cases, " + std::to_string(bad) + " failures"};
}

Outcome three_way()
{
    std::mt19937_64 rng(505);
    int disagree = 0, equal = 0;
    for (int i = 0; i < 200; ++i) {
        auto p = block(rng, 4, 4);
        std::vector<Int> q;
        if (i % 2) {
            q = p;
            std::rotate(q.begin(), q.begin() + long(rng() % q.size()), q.end());
        } else {
            q = block(rng, 4, 4);
        }
        auto G1 = dimgroup::validate_stationary(dimgroup::minkowski_product(p));
        auto G2 = dimgroup::validate_stationary(dimgroup::minkowski_product(q));
        bool a = dimgroup::same_lattice_class(dimgroup::associated_ideal(G1).lattice,
                                              dimgroup::associated_ideal(G2).lattice);
        bool b = quadratic::modular_equivalent(*G1.theta, *G2.theta);
        bool c = quadratic::cycles_agree(*G1.theta, *G2.theta);
        disagree += !(a == b && b == c);
        equal += b;
    }
    return {disagree == 0,
            "200 pairs (" + std::to_string(equal) + " equivalent), " + std::to_string(disagree) + " disagreements"};
}

Outcome class_groups()
{
    std::string detail;
    bool ok = true;
    for (long d : {10L, 15L, 26L, 79L}) {
        RealQuadraticField K(d);
        auto gs = dimgroup::groups_for_field(K);
        bool good = gs.size() == K.class_number();
        for (std::size_t i = 0; i < gs.size(); ++i) {
            good = good && numberfield::field_of(*gs[i].theta) == K;
            for (std::size_t j = 0; j < i; ++j)
                good = good && !dimgroup::morita_equivalent(gs[i], gs[j]);
        }
        ok = ok && good;
        detail += (detail.empty() ? "" : ", ") + std::string("d=") + std::to_string(d) + ": " +
                  std::to_string(gs.size()) + "/" + std::to_string(K.class_number());
    }
    return {ok, detail};
}

Outcome minkowski()
{
    std::mt19937_64 rng(707);
    int bad = 0;
    for (int i = 0; i < 1000; ++i) {
        auto g = dimgroup::minkowski_product(block(rng, 9, 8));
        if (dimgroup::minkowski_product(dimgroup::minkowski_decompose(g)) != g)
            ++bad;
    }
    return {bad == 0, "1000 cases, " + std::to_string(bad) + " failures"};
}

Outcome ideal_monoid()
{
    std::mt19937_64 rng(808);
    int bad_factor = 0, bad_divide = 0;
    long const Ds[] = {5, 40, 60, 104, 316};
    for (int i = 0; i < 200; ++i) {
        long D = Ds[i % 5];
        QuadIdeal I = random_ideal(D, rng, 2000);
        if (numberfield::multiply_out(D, numberfield::factor_ideal(I)) != I)
            ++bad_factor;
    }
    for (int i = 0; i < 200; ++i) {
        long D = Ds[i % 5];
        QuadIdeal I = random_ideal(D, rng, 100), J = random_ideal(D, rng, 100);
        QuadIdeal IJ = numberfield::ideal_mul(I, J);
        auto q = commensurability::divide({"M1", IJ, {}}, {"M2", J, {}});
        if (q.outcome != commensurability::DivisionOutcome::quotient ||
            numberfield::ideal_mul(q.quotient->ideal, J) != IJ)
            ++bad_divide;
    }
    return {bad_factor == 0 && bad_divide == 0,
            "factor " + std::to_string(bad_factor) + "/200 and divide " + std::to_string(bad_divide) +
                "/200 failures"};
}

Outcome telescoping()
{
    using namespace commensurability;
    RealQuadraticField K5(5);
    auto A = numberfield::ideal_classes(K5).at(0);
    std::uint64_t const N = numberfield::count_ideals_in_class(A, 11);
    GapBounds const bounds(Real(1), Real(3));
    auto good = telescoping_check(synthetic_chain(A, 11, Real(1)), 11, bounds);

    // steps of 4 overshoot K (N - 1) = 15
    auto ideals = ideals_in_class(A, N + 1);
    CommensurabilityClass bad{K5, A, {}};
    for (std::size_t j = 0; j <= N; ++j)
        bad.members.push_back({"M" + std::to_string(j), ideals[j], Real(1 + 4 * j)});
    auto rep = telescoping_check(bad, 11, bounds);
    bool ok = good.passed && !rep.passed && rep.chain_bound.violated == Side::upper;
    return {ok, "N(11)=" + std::to_string(N) + ", synthetic " + (good.passed ? "passes" : "fails") +
                    ", adversarial violated side " + side_name(rep.chain_bound.violated)};
}

Outcome volume_pipeline()
{
    auto p = volume::predict_volume(std::vector<Int>{1}, Real(1));
    Real const expect = log((1 + sqrt(Real(5))) / 2) / sqrt(Real(5));
    bool twelve = abs(p.value_D - expect) < Real("1e-12") * expect;

    std::vector<std::vector<Int>> family{{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 1, 2}, {4}, {1, 4}, {5}};
    std::vector<volume::VolumeObservation> exact, noisy;
    std::mt19937_64 rng(1010);
    std::normal_distribution<double> noise(0.0, 0.01);
    for (auto const & s : family) {
        Real v = Real("2.5") * volume::predict_volume(s, Real(1)).value_D;
        exact.push_back({s, v, "synthetic"});
        noisy.push_back({s, v * Real(1 + noise(rng)), "noisy"});
    }
    Real c_exact = volume::calibrate_C(exact).C;
    Real c_noisy = volume::calibrate_C(noisy).C;
    bool ok_exact = abs(c_exact - Real("2.5")) < Real("1e-9");
    bool ok_noisy = abs(c_noisy - Real("2.5")) / Real("2.5") < Real("0.02");
    return {twelve && ok_exact && ok_noisy, "value " + p.value_D.str(15) + ", C exact " + c_exact.str(12) +
                                                ", C noisy " + c_noisy.str(6)};
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        char const * name;
        double limit_s;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> const criteria{
        {1, "fundamental units d<=100 vs Pell search", 5, fundamental_units},
        {2, "class numbers d<=150 vs reduced forms", 10, class_numbers},
        {3, "ideal density N(t,A)/t", 120, density},
        {4, "continued fraction round trip", 5, cf_round_trip},
        {5, "ideal class / modular / cycle agreement", 30, three_way},
        {6, "one group per ideal class", 10, class_groups},
        {7, "Minkowski decomposition round trip", 5, minkowski},
        {8, "ideal factorization and division", 10, ideal_monoid},
        {9, "telescoping chain check", 5, telescoping},
        {10, "volume prediction and calibration", 5, volume_pipeline},
    };
    int failed = 0;
    for (auto const & c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = c.run();
        } catch (std::exception const & e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = o.ok && secs < c.limit_s;
        failed += !ok;
        std::printf("%s criterion %d: %s (%s; %.2fs, limit %.0fs)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, c.limit_s);
    }
    return failed ? 1 : 0;
}
