#include <doctest.h>

#include <cmath>
#include <random>

#include "qvol/dimgroup.hpp"
#include "qvol/volume.hpp"

using namespace qvol;
using namespace qvol::volume;
using numberfield::RealQuadraticField;

namespace {

double to_d(Real const & x) { return x.convert_to<double>(); }

std::vector<Int> ints(std::initializer_list<long> v)
{
    std::vector<Int> out;
    for (long x : v)
        out.emplace_back(x);
    return out;
}

std::vector<std::vector<Int>> family()
{
    return {ints({1}), ints({2}), ints({3}), ints({1, 2}), ints({1, 3}), ints({2, 3}),
            ints({1, 1, 2}), ints({4}), ints({1, 4}), ints({2, 5}), ints({6}), ints({1, 2, 3})};
}

} // namespace

TEST_CASE("predicted volume of the golden slope")
{
    auto p = predict_volume(ints({1}), Real(1));
    Real const expect = log((1 + sqrt(Real(5))) / 2) / sqrt(Real(5));
    CHECK(abs(p.value_D - expect) < Real("1e-40"));
    CHECK(p.value_D == p.value_d);
    CHECK(to_d(p.value_D) == doctest::Approx(0.2152044704820).epsilon(1e-12));
    CHECK(p.field.d() == 5);
    CHECK(p.theta == quadratic::QuadraticIrrational(1, 1, 2, 5));
    CHECK(abs(p.residue_form - 2 * p.value_D) < Real("1e-40"));
}

TEST_CASE("both conventions")
{
    // [2] gives 1 + sqrt 2: D = 8, d = 2
    auto p = predict_volume(ints({2}), Real(1));
    CHECK(p.field.d() == 2);
    CHECK(abs(p.value_d - p.value_D * 2) < Real("1e-40"));
    CHECK(abs(p.value_D - unit_volume(p.field)) < Real("1e-40"));
}

TEST_CASE("input validation")
{
    CHECK_THROWS_AS(predict_volume(ints({1}), Real(0)), DomainError);
    CHECK_THROWS_AS(predict_volume(ints({1}), Real(-1)), DomainError);
    CHECK_THROWS_AS(predict_volume(ints({}), Real(1)), DomainError);
    CHECK_THROWS_AS(predict_volume(ints({0}), Real(1)), DomainError);
    std::vector<VolumeObservation> none;
    CHECK_THROWS_AS(calibrate_C(none), DomainError);
}

TEST_CASE("linearity and determinism")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> c(0.1, 10);
    for (auto const & s : family()) {
        auto one = predict_volume(s, Real(1));
        for (int i = 0; i < 5; ++i) {
            Real C = c(rng);
            auto p = predict_volume(s, C);
            CHECK(abs(p.value_D - C * one.value_D) <= abs(p.value_D) * Real("1e-45"));
            auto q = predict_volume(s, C);
            CHECK(p.value_D == q.value_D);
            CHECK(p.value_d == q.value_d);
        }
    }
}

TEST_CASE("calibration")
{
    Real const C = 2.5;
    std::vector<VolumeObservation> obs;
    for (auto const & s : family())
        obs.push_back({s, C * predict_volume(s, Real(1)).value_D, "synthetic"});
    auto cal = calibrate_C(obs);
    CHECK(abs(cal.C - C) < Real("1e-9"));
    CHECK(abs(cal.C - C) < Real("1e-40"));
    for (Real const & r : cal.residuals)
        CHECK(abs(r) < Real("1e-40"));
    CHECK(cal.relative_spread < Real("1e-40"));

    // 1% multiplicative noise
    std::mt19937_64 rng(77);
    std::normal_distribution<double> noise(0.0, 0.01);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<VolumeObservation> noisy;
        for (auto const & s : family())
            noisy.push_back({s, C * predict_volume(s, Real(1)).value_D * Real(1 + noise(rng)), "noisy"});
        auto nc = calibrate_C(noisy);
        CHECK(abs(nc.C - C) / C < Real("0.02"));
        CHECK(nc.relative_spread > 0);
    }
}

TEST_CASE("volume bounds")
{
    RealQuadraticField K(5);
    auto pt = volume_bounds(K, commensurability::GapBounds(Real(2), Real(2)));
    CHECK(pt.is_point());
    CHECK(abs(pt.lower - 2 * unit_volume(K)) < Real("1e-40"));
    auto iv = volume_bounds(K, commensurability::GapBounds(Real(1), Real(3)));
    CHECK(iv.lower < iv.upper);
    CHECK(abs(iv.upper - 3 * unit_volume(K)) < Real("1e-40"));
}

TEST_CASE("fiber count equals the class number")
{
    for (long d = 2; d <= 150; ++d) {
        if (!is_squarefree(d))
            continue;
        CAPTURE(d);
        RealQuadraticField K(d);
        CHECK(fiber_count(K) == K.class_number());
    }
}

TEST_CASE("comparison report")
{
    RealQuadraticField K10(10);
    auto r = comparison_report(K10, std::nullopt);
    CHECK(r.h == 2);
    CHECK(r.D == 40);
    CHECK(to_d(r.unit_volume_D) == doctest::Approx(0.2875216307120927).epsilon(1e-12));
    CHECK(to_d(r.density) == doctest::Approx(0.5750432614241854).epsilon(1e-12));
    CHECK(to_d(r.residue) == doctest::Approx(1.1500865228483708).epsilon(1e-12));
    CHECK(to_d(r.residue_over_density) == doctest::Approx(2.0).epsilon(1e-30));
    CHECK(to_d(r.residue_over_unit_volume) == doctest::Approx(4.0).epsilon(1e-30));
    CHECK_FALSE(r.humbert);

    auto r5 = comparison_report(RealQuadraticField(5), Int(-3), 100000);
    REQUIRE(r5.humbert);
    CHECK(to_d(r5.humbert->volume) == doctest::Approx(0.16915693440160894).epsilon(1e-8));
    CHECK(to_d(r5.residue_over_density) == doctest::Approx(1.0));
}
