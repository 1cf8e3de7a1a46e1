#include "qvol/numberfield.hpp"

#include <boost/math/constants/constants.hpp>

namespace qvol::numberfield {

Real dirichlet_density(RealQuadraticField const & K)
{
    return 2 * K.regulator() / boost::multiprecision::sqrt(to_real(K.disc()));
}

Real zeta_residue(RealQuadraticField const & K)
{
    return Real(static_cast<unsigned long>(K.class_number())) * dirichlet_density(K);
}

HumbertValue humbert_volume(Int const & disc, std::uint64_t terms)
{
    if (disc >= 0)
        throw DomainError("Humbert's formula needs a negative discriminant, got " + to_string(disc));
    if (!is_fundamental_discriminant(disc))
        throw DomainError(to_string(disc) + " is not a fundamental discriminant");
    if (terms < 1)
        throw DomainError("at least one term is required");

    std::uint64_t const q = abs_int(disc).get_ui();
    // chi_D is a primitive character mod |D|
    std::vector<int> chi(q);
    for (std::uint64_t r = 0; r < q; ++r)
        chi[r] = kronecker(disc, Int(static_cast<unsigned long>(r)));

    long double sum = 0, comp = 0;
    for (std::uint64_t n = terms; n >= 1; --n) {
        int c = chi[n % q];
        if (c == 0)
            continue;
        long double nn = static_cast<long double>(n);
        long double term = c / (nn * nn) - comp;
        long double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }

    using boost::math::constants::pi;
    Real const pi_r = pi<Real>();
    Real const zeta2 = pi_r * pi_r / 6;
    Real const absd = to_real(abs_int(disc));
    Real const factor = absd * boost::multiprecision::sqrt(absd) / (4 * pi_r * pi_r);

    HumbertValue out;
    out.disc = disc;
    out.terms = terms;
    out.l_value = Real(sum);
    out.zeta_k2 = zeta2 * out.l_value;
    out.volume = factor * out.zeta_k2;
    // Abel summation with |partial character sums| <= |D|/2, plus rounding
    Real tail = absd / (Real(static_cast<double>(terms) + 1) * Real(static_cast<double>(terms) + 1));
    Real rounding = Real(static_cast<double>(terms)) * Real(1e-18);
    out.error_bound = factor * zeta2 * (tail + rounding);
    return out;
}

} // namespace qvol::numberfield
