#include "qvol/numberfield.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qvol::numberfield {

namespace detail {

struct FieldData {
    Int d, disc;
    QuadraticIrrational epsilon;
    int epsilon_norm;
    Real regulator;
    Reducer reducer;
    std::vector<std::vector<FormIdeal>> cycles;
    std::map<std::pair<Int, Int>, std::size_t> class_of_reduced;
};

} // namespace detail

namespace {

Int sigma_of(Int const & disc) { return floor_mod(disc, 2); }

void require_same_disc(Int const & x, Int const & y)
{
    if (x != y)
        throw DomainError("ideals belong to different fields (discriminants " + to_string(x) +
                          " and " + to_string(y) + ")");
}

Int checked_radicand(Int d)
{
    if (d <= 1 || !is_squarefree(d))
        throw DomainError("d must be a squarefree integer > 1, got " + to_string(d));
    return d;
}

/* Elements of O_K in the basis (1, omega), omega = (sigma + sqrt D)/2,
 * omega^2 = sigma omega + (D - sigma)/4. */
struct Vec {
    Int x, y;
};

struct Basis {
    Int disc, sigma, quarter;

    explicit Basis(Int D) : disc(std::move(D)), sigma(sigma_of(disc)), quarter((disc - sigma) / 4) {}

    Vec mul(Vec const & v, Vec const & w) const
    {
        return {v.x * w.x + v.y * w.y * quarter, v.x * w.y + w.x * v.y + sigma * v.y * w.y};
    }

    Vec times_omega(Vec const & v) const { return {v.y * quarter, v.x + sigma * v.y}; }

    /// Coordinates of an element of Q(sqrt d); throws if not integral.
    Vec coords(QuadraticIrrational const & alpha) const
    {
        Int f = isqrt(disc / alpha.d());
        if (f * f * alpha.d() != disc)
            throw DomainError("element of Q(sqrt " + to_string(alpha.d()) +
                              ") does not lie in the field of discriminant " + to_string(disc));
        // alpha = (a + b sqrt d)/c, sqrt d = (2 omega - sigma)/f
        Int den = alpha.c() * f;
        Int xn = alpha.a() * f - alpha.b() * sigma;
        Int yn = 2 * alpha.b();
        if (xn % den != 0 || yn % den != 0)
            throw DomainError("element " + alpha.str() + " is not an algebraic integer");
        return {xn / den, yn / den};
    }

    QuadraticIrrational element(Vec const & v, QuadraticIrrational const & root) const
    {
        // x + y (sigma + f sqrt d)/2 with root = f sqrt d
        return root.same_field(2 * v.x + v.y * sigma, v.y * root.b(), 2);
    }
};

struct Hnf {
    Int A, B, C; // lattice basis (A, 0), (B, C)
};

Hnf hnf(std::span<Vec const> vs)
{
    Int A = 0;
    Vec pivot{0, 0};
    for (Vec const & v : vs) {
        if (v.y == 0) {
            A = gcd_int(A, v.x);
            continue;
        }
        if (pivot.y == 0) {
            pivot = v.y > 0 ? v : Vec{-v.x, -v.y};
            continue;
        }
        Int u, w;
        Int g = ext_gcd(pivot.y, v.y, u, w);
        Int leftover = (v.y / g) * pivot.x - (pivot.y / g) * v.x;
        pivot = {u * pivot.x + w * v.x, g};
        A = gcd_int(A, leftover);
    }
    if (A == 0 || pivot.y == 0)
        throw DomainError("generators do not span a full-rank lattice");
    return {A, floor_mod(pivot.x, A), pivot.y};
}

QuadIdeal from_hnf(Basis const & basis, Hnf const & h)
{
    if (h.A % h.C != 0 || h.B % h.C != 0)
        throw ConsistencyFault("lattice is not an O_K-ideal");
    Int a = h.A / h.C;
    Int b = floor_mod(2 * (h.B / h.C) + basis.sigma, 2 * a);
    return QuadIdeal(basis.disc, h.C, a, b);
}

std::vector<Vec> z_basis(Basis const & basis, QuadIdeal const & I)
{
    Int const & m = I.content();
    return {{m * I.a(), 0}, {m * ((I.b() - basis.sigma) / 2), m}};
}

QuadIdeal closure(Basis const & basis, std::vector<Vec> gens)
{
    std::size_t const n = gens.size();
    for (std::size_t i = 0; i < n; ++i)
        gens.push_back(basis.times_omega(gens[i]));
    return from_hnf(basis, hnf(gens));
}

/* Tonelli-Shanks: a square root of n modulo an odd prime p (n a QR). */
Int sqrt_mod_prime(Int n, Int const & p)
{
    n = floor_mod(n, p);
    if (n == 0)
        return 0;
    Int q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (kronecker(z, p) != -1)
        ++z;
    auto powm = [&](Int const & base, Int const & e) {
        Int r;
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    Int c = powm(z, q);
    Int r = powm(n, Int((q + 1) / 2));
    Int t = powm(n, q);
    unsigned long m = s;
    while (t != 1) {
        unsigned long i = 0;
        Int tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        Int b = c;
        for (unsigned long j = 0; j + i + 1 < m; ++j)
            b = b * b % p;
        r = r * b % p;
        c = b * b % p;
        t = t * c % p;
        m = i;
    }
    return r;
}

} // namespace

// ---------------------------------------------------------------- QuadIdeal

QuadIdeal::QuadIdeal(Int disc, Int content, Int a, Int b)
    : disc_(std::move(disc)), content_(std::move(content)), a_(std::move(a)), b_(std::move(b))
{
    if (content_ < 1 || a_ < 1)
        throw DomainError("ideal content and norm factor must be positive");
    b_ = floor_mod(b_, 2 * a_);
    if (floor_mod(b_ - disc_, 2) != 0 || floor_mod(b_ * b_ - disc_, 4 * a_) != 0)
        throw DomainError("(a, b) = (" + to_string(a_) + ", " + to_string(b_) +
                          ") is not an ideal of discriminant " + to_string(disc_));
}

QuadIdeal QuadIdeal::unit(Int disc)
{
    Int b = sigma_of(disc);
    return QuadIdeal(std::move(disc), 1, 1, std::move(b));
}

QuadIdeal QuadIdeal::principal(Int disc, Int n)
{
    if (n == 0)
        throw DomainError("zero ideal");
    Int b = sigma_of(disc);
    return QuadIdeal(std::move(disc), abs_int(n), 1, std::move(b));
}

QuadIdeal QuadIdeal::principal(Int disc, QuadraticIrrational const & alpha)
{
    if (alpha.sign() == 0)
        throw DomainError("zero ideal");
    Basis basis(std::move(disc));
    return closure(basis, {basis.coords(alpha)});
}

QuadIdeal QuadIdeal::conjugate() const
{
    return QuadIdeal(disc_, content_, a_, -b_);
}

std::string QuadIdeal::str() const
{
    std::ostringstream os;
    if (a_ == 1) {
        os << '(' << content_ << ')';
        return os.str();
    }
    QuadraticIrrational root = QuadraticIrrational::root(disc_);
    QuadraticIrrational beta = root.same_field(b_ * content_, root.b() * content_, 2);
    os << '(' << content_ * a_ << ", " << beta.str() << ')';
    return os.str();
}

bool ideal_less(QuadIdeal const & x, QuadIdeal const & y)
{
    Int nx = x.norm(), ny = y.norm();
    if (nx != ny)
        return nx < ny;
    if (x.b() != y.b())
        return x.b() < y.b();
    return x.content() < y.content();
}

// ------------------------------------------------------------ RealQuadraticField

QuadraticIrrational order_generator(Int const & disc)
{
    return QuadraticIrrational(sigma_of(disc), 1, 2, disc);
}

QuadraticIrrational fundamental_unit(Int const & d_in)
{
    Int d = checked_radicand(d_in);
    Int disc = field_discriminant(d);
    Int s = isqrt(disc);
    Int b0 = floor_mod(s - disc, 2) == 0 ? s : Int(s - 1);
    // (b0 + sqrt D)/2 is reduced and Z + Z x = O_K, so one period of its
    // expansion carries the fundamental unit q_{l-1} x + q_{l-2}.
    QuadraticIrrational x(b0, 1, 2, disc);
    auto cf = quadratic::cf_expand(x);
    if (!cf.preperiod.empty())
        throw ConsistencyFault("principal reduced irrational is not purely periodic");
    auto cv = quadratic::convergents(cf.period);
    QuadraticIrrational eps = x * cv.q + cv.q_prev;
    Rational n = eps.norm();
    if (!eps.is_algebraic_integer() || (n != 1 && n != -1) || eps.sign() <= 0)
        throw ConsistencyFault("period multiplier is not a unit: " + eps.str());
    return eps;
}

RealQuadraticField::RealQuadraticField(Int d_in)
{
    Int d = checked_radicand(std::move(d_in));
    Int disc = field_discriminant(d);
    QuadraticIrrational eps = fundamental_unit(d);
    int norm = eps.norm() == 1 ? 1 : -1;
    Real reg = boost::multiprecision::log(eps.value());
    Reducer reducer(disc);
    auto cycles = reducer.all_cycles();
    std::map<std::pair<Int, Int>, std::size_t> lookup;
    for (std::size_t i = 0; i < cycles.size(); ++i)
        for (FormIdeal const & I : cycles[i])
            lookup.emplace(standard_key(I), i);
    data_ = std::make_shared<detail::FieldData const>(detail::FieldData{
        std::move(d), std::move(disc), std::move(eps), norm, std::move(reg), std::move(reducer),
        std::move(cycles), std::move(lookup)});
}

Int const & RealQuadraticField::d() const { return data_->d; }
Int const & RealQuadraticField::disc() const { return data_->disc; }
QuadraticIrrational const & RealQuadraticField::epsilon() const { return data_->epsilon; }
int RealQuadraticField::epsilon_norm() const { return data_->epsilon_norm; }
Real const & RealQuadraticField::regulator() const { return data_->regulator; }
std::size_t RealQuadraticField::class_number() const { return data_->cycles.size(); }
Reducer const & RealQuadraticField::reducer() const { return data_->reducer; }

std::vector<std::vector<FormIdeal>> const & RealQuadraticField::cycles() const
{
    return data_->cycles;
}

std::size_t RealQuadraticField::class_index(FormIdeal const & I) const
{
    FormIdeal r = data_->reducer.reduce(I);
    auto it = data_->class_of_reduced.find(standard_key(r));
    if (it == data_->class_of_reduced.end())
        throw ConsistencyFault("reduced ideal missing from the class table");
    return it->second;
}

RealQuadraticField field_of(QuadraticIrrational const & x)
{
    if (x.is_rational())
        throw DomainError("not a quadratic irrational: " + x.str());
    return RealQuadraticField(x.d());
}

// ------------------------------------------------------------- ideal arithmetic

std::string split_kind_name(SplitKind k)
{
    switch (k) {
    case SplitKind::split: return "split";
    case SplitKind::inert: return "inert";
    case SplitKind::ramified: return "ramified";
    }
    return "?";
}

PrimeSplitting prime_splitting(Int const & disc, Int const & p)
{
    if (!is_prime(p))
        throw DomainError(to_string(p) + " is not prime");
    int k = kronecker(disc, p);
    if (k == -1)
        return {SplitKind::inert, {QuadIdeal::principal(disc, p)}};

    std::vector<Int> bs;
    if (p == 2) {
        for (int b = 0; b < 4; ++b)
            if (floor_mod(Int(b) - disc, 2) == 0 && floor_mod(Int(b * b) - disc, 8) == 0)
                bs.emplace_back(b);
    } else {
        Int r = sqrt_mod_prime(disc, p);
        for (Int cand : {r, Int(floor_mod(-r, p))}) {
            if (floor_mod(cand - disc, 2) != 0)
                cand += p;
            if (std::find(bs.begin(), bs.end(), cand) == bs.end())
                bs.push_back(cand);
        }
    }
    std::sort(bs.begin(), bs.end());
    PrimeSplitting out{k == 0 ? SplitKind::ramified : SplitKind::split, {}};
    for (Int const & b : bs)
        out.primes.emplace_back(disc, 1, p, b);
    if (out.primes.size() != (k == 0 ? 1u : 2u))
        throw ConsistencyFault("unexpected number of primes above " + to_string(p));
    return out;
}

QuadIdeal ideal_mul(QuadIdeal const & I, QuadIdeal const & J)
{
    require_same_disc(I.disc(), J.disc());
    Basis basis(I.disc());
    auto bi = z_basis(basis, I), bj = z_basis(basis, J);
    std::vector<Vec> prods;
    for (Vec const & u : bi)
        for (Vec const & v : bj)
            prods.push_back(basis.mul(u, v));
    return from_hnf(basis, hnf(prods));
}

QuadIdeal ideal_pow(QuadIdeal const & I, unsigned e)
{
    QuadIdeal result = QuadIdeal::unit(I.disc());
    QuadIdeal base = I;
    while (e) {
        if (e & 1u)
            result = ideal_mul(result, base);
        e >>= 1;
        if (e)
            base = ideal_mul(base, base);
    }
    return result;
}

QuadIdeal ideal_generated(Int const & disc, std::span<QuadraticIrrational const> generators)
{
    Basis basis(disc);
    std::vector<Vec> vs;
    for (QuadraticIrrational const & g : generators)
        vs.push_back(basis.coords(g));
    return closure(basis, std::move(vs));
}

PrincipalResult is_principal(QuadIdeal const & I)
{
    Reducer reducer(I.disc());
    auto gen = reducer.principal_generator(I.primitive_part());
    if (!gen)
        return {};
    return {true, *gen * I.content()};
}

bool equivalent(QuadIdeal const & I, QuadIdeal const & J)
{
    require_same_disc(I.disc(), J.disc());
    Reducer reducer(I.disc());
    return reducer.same_class(I.primitive_part(), J.primitive_part());
}

Factorization factor_ideal(QuadIdeal const & I)
{
    Int const & D = I.disc();
    std::vector<std::pair<QuadIdeal, unsigned>> acc;
    auto add = [&acc](QuadIdeal const & P, unsigned e) {
        for (auto & [Q, k] : acc)
            if (Q == P) {
                k += e;
                return;
            }
        acc.emplace_back(P, e);
    };
    if (I.content() > 1) {
        for (auto const & [p, e] : factor(I.content())) {
            PrimeSplitting sp = prime_splitting(D, p);
            switch (sp.kind) {
            case SplitKind::split:
                add(sp.primes[0], e);
                add(sp.primes[1], e);
                break;
            case SplitKind::inert:
                add(sp.primes[0], e);
                break;
            case SplitKind::ramified:
                add(sp.primes[0], 2 * e);
                break;
            }
        }
    }
    if (I.a() > 1) {
        for (auto const & [p, k] : factor(I.a())) {
            QuadIdeal P(D, 1, p, floor_mod(I.b(), 2 * p));
            if (k > 1 && kronecker(D, p) == 0)
                throw ConsistencyFault("primitive ideal divisible by the square of a ramified prime");
            add(P, k);
        }
    }
    std::sort(acc.begin(), acc.end(),
              [](auto const & x, auto const & y) { return ideal_less(x.first, y.first); });
    return acc;
}

QuadIdeal multiply_out(Int const & disc, Factorization const & f)
{
    QuadIdeal r = QuadIdeal::unit(disc);
    for (auto const & [P, e] : f)
        r = ideal_mul(r, ideal_pow(P, e));
    return r;
}

IdealClass class_of(RealQuadraticField const & K, QuadIdeal const & I)
{
    require_same_disc(K.disc(), I.disc());
    std::size_t idx = K.class_index(I.primitive_part());
    std::vector<QuadIdeal> cyc;
    for (FormIdeal const & R : K.cycles()[idx])
        cyc.emplace_back(K.disc(), 1, R.a, R.b);
    QuadIdeal rep = cyc.front();
    return {K, idx, std::move(rep), std::move(cyc)};
}

std::vector<IdealClass> ideal_classes(RealQuadraticField const & K)
{
    std::vector<IdealClass> out;
    for (auto const & cyc : K.cycles())
        out.push_back(class_of(K, QuadIdeal(K.disc(), 1, cyc.front().a, cyc.front().b)));
    return out;
}

} // namespace qvol::numberfield
