#include "qvol/volume.hpp"

#include <algorithm>

#include "qvol/dimgroup.hpp"

namespace qvol::volume {

using boost::multiprecision::sqrt;

Real unit_volume(RealQuadraticField const & K)
{
    return K.regulator() / sqrt(to_real(K.disc()));
}

VolumePrediction predict_volume(std::span<Int const> surgery, Real const & C)
{
    if (!(C > 0))
        throw DomainError("C must be positive, got " + C.str());
    QuadraticIrrational theta = quadratic::surgery_slope(surgery);
    RealQuadraticField K = numberfield::field_of(theta);
    Real value_D = C * unit_volume(K);
    Real value_d = C * K.regulator() / sqrt(to_real(K.d()));
    Real residue = C * numberfield::zeta_residue(K);
    return {{surgery.begin(), surgery.end()}, std::move(theta), std::move(K), C,
            std::move(value_D), std::move(value_d), std::move(residue)};
}

VolumeInterval volume_bounds(RealQuadraticField const & K, GapBounds const & bounds)
{
    Real u = unit_volume(K);
    return {bounds.lower * u, bounds.upper * u};
}

Calibration calibrate_C(std::span<VolumeObservation const> observations)
{
    if (observations.empty())
        throw DomainError("calibration needs at least one observation");
    Calibration out;
    Real sxy = 0, sxx = 0;
    for (VolumeObservation const & o : observations) {
        if (!(o.measured_volume > 0))
            throw DomainError("measured volume must be positive (" + o.source + ")");
        QuadraticIrrational theta = quadratic::surgery_slope(o.surgery);
        Real x = unit_volume(numberfield::field_of(theta));
        sxy += x * o.measured_volume;
        sxx += x * x;
        out.x.push_back(std::move(x));
    }
    out.C = sxy / sxx;
    Real lo = 0, hi = 0;
    for (std::size_t i = 0; i < observations.size(); ++i) {
        out.residuals.push_back(observations[i].measured_volume - out.C * out.x[i]);
        Real ci = observations[i].measured_volume / out.x[i];
        if (i == 0 || ci < lo)
            lo = ci;
        if (i == 0 || ci > hi)
            hi = ci;
    }
    out.relative_spread = (hi - lo) / out.C;
    return out;
}

std::size_t fiber_count(RealQuadraticField const & K)
{
    std::size_t h = K.class_number();
    auto groups = dimgroup::groups_for_field(K);
    if (groups.size() != h)
        throw ConsistencyFault("class number " + std::to_string(h) + " but " +
                               std::to_string(groups.size()) + " groups were built");
    for (std::size_t i = 0; i < groups.size(); ++i) {
        if (dimgroup::rotation_number(groups[i]).d() != K.d())
            throw ConsistencyFault("group " + groups[i].matrix.str() + " has the wrong field");
        for (std::size_t j = i + 1; j < groups.size(); ++j)
            if (dimgroup::morita_equivalent(groups[i], groups[j]))
                throw ConsistencyFault("groups for distinct classes are Morita equivalent");
    }
    return h;
}

ComparisonReport comparison_report(RealQuadraticField const & K, std::optional<Int> const & imaginary_disc,
                                   std::uint64_t humbert_terms)
{
    ComparisonReport r;
    r.d = K.d();
    r.D = K.disc();
    r.h = K.class_number();
    r.unit_volume_D = unit_volume(K);
    r.unit_volume_d = K.regulator() / sqrt(to_real(K.d()));
    r.density = numberfield::dirichlet_density(K);
    r.residue = numberfield::zeta_residue(K);
    r.residue_over_density = r.residue / r.density;
    r.residue_over_unit_volume = r.residue / r.unit_volume_D;
    if (imaginary_disc)
        r.humbert = numberfield::humbert_volume(*imaginary_disc, humbert_terms);
    return r;
}

} // namespace qvol::volume
