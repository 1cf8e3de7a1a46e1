#pragma once

// Volume predictions Vol = C log(epsilon)/sqrt(D) for the (p_i, 1)-fillings,
// the two-sided bounds k, K, least-squares calibration of C, fiber counts and
// the residue / Humbert comparison.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qvol/bigint.hpp"
#include "qvol/commensurability.hpp"
#include "qvol/numberfield.hpp"
#include "qvol/quadratic.hpp"

namespace qvol::volume {

using commensurability::GapBounds;
using numberfield::RealQuadraticField;
using quadratic::QuadraticIrrational;

/// log(epsilon) / sqrt(D).
Real unit_volume(RealQuadraticField const & K);

struct VolumePrediction {
    std::vector<Int> surgery;
    QuadraticIrrational theta;
    RealQuadraticField field;
    Real C;
    Real value_D;       // C log(eps)/sqrt(D), primary
    Real value_d;       // C log(eps)/sqrt(d)
    Real residue_form;  // C Res zeta_K(1)
};

VolumePrediction predict_volume(std::span<Int const> surgery, Real const & C);

struct VolumeInterval {
    Real lower, upper;
    bool is_point() const { return lower == upper; }
};

VolumeInterval volume_bounds(RealQuadraticField const & K, GapBounds const & bounds);

struct VolumeObservation {
    std::vector<Int> surgery;
    Real measured_volume;
    std::string source;
};

struct Calibration {
    Real C;
    std::vector<Real> x;          // log(eps)/sqrt(D) per observation
    std::vector<Real> residuals;  // measured - C x
    /// (max C_i - min C_i) / C with C_i = measured_i / x_i.
    Real relative_spread;
};

/// Least squares through the origin of measured = C x.
Calibration calibrate_C(std::span<VolumeObservation const> observations);

/// h_K, cross-checked against the groups built for each ideal class.
std::size_t fiber_count(RealQuadraticField const & K);

struct ComparisonReport {
    Int d, D;
    std::size_t h = 0;
    Real unit_volume_D;      // log eps / sqrt D
    Real unit_volume_d;      // log eps / sqrt d
    Real density;            // 2 log eps / sqrt D
    Real residue;            // 2 h log eps / sqrt D
    Real residue_over_density;
    Real residue_over_unit_volume;
    std::optional<numberfield::HumbertValue> humbert;
};

ComparisonReport comparison_report(RealQuadraticField const & K,
                                   std::optional<Int> const & imaginary_disc = std::nullopt,
                                   std::uint64_t humbert_terms = 1000000);

} // namespace qvol::volume
