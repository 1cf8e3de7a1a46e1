#include "qvol/dimgroup.hpp"

#include <cmath>
#include <sstream>

namespace qvol::dimgroup {

// ------------------------------------------------------------------ IntMatrix

IntMatrix::IntMatrix(std::size_t n) : n_(n), e_(n * n, Int(0)) {}

IntMatrix::IntMatrix(std::size_t n, std::vector<Int> entries) : n_(n), e_(std::move(entries))
{
    if (e_.size() != n * n)
        throw DomainError("matrix of size " + std::to_string(n) + " needs " +
                          std::to_string(n * n) + " entries, got " + std::to_string(e_.size()));
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) : n_(rows.size())
{
    for (auto const & row : rows) {
        if (row.size() != n_)
            throw DomainError("matrix rows must all have length " + std::to_string(n_));
        for (long v : row)
            e_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix I(n);
    for (std::size_t i = 0; i < n; ++i)
        I(i, i) = 1;
    return I;
}

Int IntMatrix::determinant() const
{
    if (n_ == 0)
        return 1;
    // Bareiss fraction-free elimination
    std::vector<Int> m = e_;
    auto at = [&](std::size_t i, std::size_t j) -> Int & { return m[i * n_ + j]; };
    Int prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n_; ++k) {
        if (at(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n_ && at(r, k) == 0)
                ++r;
            if (r == n_)
                return 0;
            for (std::size_t j = 0; j < n_; ++j)
                std::swap(at(k, j), at(r, j));
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n_; ++i) {
            for (std::size_t j = k + 1; j < n_; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        }
        prev = at(k, k);
    }
    return sgn * at(n_ - 1, n_ - 1);
}

Int IntMatrix::trace() const
{
    Int t = 0;
    for (std::size_t i = 0; i < n_; ++i)
        t += (*this)(i, i);
    return t;
}

std::string IntMatrix::str() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < n_; ++i) {
        os << (i ? ",(" : "(");
        for (std::size_t j = 0; j < n_; ++j)
            os << (j ? "," : "") << (*this)(i, j);
        os << ')';
    }
    os << ')';
    return os.str();
}

IntMatrix operator*(IntMatrix const & x, IntMatrix const & y)
{
    if (x.n_ != y.n_)
        throw DomainError("matrix sizes differ");
    std::size_t const n = x.n_;
    IntMatrix z(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (x(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

IntMatrix power(IntMatrix const & A, unsigned k)
{
    IntMatrix r = IntMatrix::identity(A.size());
    IntMatrix b = A;
    while (k) {
        if (k & 1u)
            r = r * b;
        k >>= 1;
        if (k)
            b = b * b;
    }
    return r;
}

std::vector<Int> characteristic_polynomial(IntMatrix const & A)
{
    // Faddeev-LeVerrier; every division is exact over Z.
    std::size_t const n = A.size();
    std::vector<Int> c(n + 1, Int(0));
    c[n] = 1;
    IntMatrix M(n);
    for (std::size_t k = 1; k <= n; ++k) {
        IntMatrix AM = A * M;
        for (std::size_t i = 0; i < n; ++i)
            AM(i, i) += c[n - k + 1];
        M = AM;
        Int t = (A * M).trace();
        c[n - k] = -t / static_cast<long>(k);
    }
    return c;
}

// --------------------------------------------------------------- validation

namespace {

using Poly = std::vector<Rational>; // coefficients, constant term first

void trim(Poly & p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

Rational eval(Poly const & p, Rational const & x)
{
    Rational r = 0;
    for (std::size_t i = p.size(); i-- > 0;)
        r = r * x + p[i];
    return r;
}

Poly derivative(Poly const & p)
{
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i)
        d.push_back(p[i] * static_cast<long>(i));
    return d;
}

Poly remainder(Poly r, Poly const & g)
{
    trim(r);
    while (r.size() >= g.size()) {
        Rational q = r.back() / g.back();
        std::size_t shift = r.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i)
            r[i + shift] -= q * g[i];
        r.pop_back();
        trim(r);
    }
    return r;
}

std::vector<Poly> sturm_chain(Poly p)
{
    std::vector<Poly> chain{p, derivative(p)};
    trim(chain[1]);
    while (!chain.back().empty()) {
        Poly r = remainder(chain[chain.size() - 2], chain.back());
        for (Rational & v : r)
            v = -v;
        if (r.empty())
            break;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_changes(std::vector<int> const & signs)
{
    int changes = 0, last = 0;
    for (int s : signs) {
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++changes;
        last = s;
    }
    return changes;
}

int changes_at(std::vector<Poly> const & chain, Rational const & x)
{
    std::vector<int> s;
    for (Poly const & p : chain)
        s.push_back(sgn(eval(p, x)));
    return sign_changes(s);
}

int changes_at_infinity(std::vector<Poly> const & chain)
{
    std::vector<int> s;
    for (Poly const & p : chain)
        s.push_back(p.empty() ? 0 : sgn(p.back()));
    return sign_changes(s);
}

long double power_iteration(IntMatrix const & A)
{
    std::size_t const n = A.size();
    std::vector<long double> M(n * n), v(n, 1.0L), w(n);
    for (std::size_t i = 0; i < n * n; ++i)
        M[i] = A.entries()[i].get_d();
    long double lambda = 0;
    for (int it = 0; it < 100000; ++it) {
        long double norm = 0;
        for (std::size_t i = 0; i < n; ++i) {
            long double s = 0;
            for (std::size_t j = 0; j < n; ++j)
                s += M[i * n + j] * v[j];
            w[i] = s;
            norm = std::max(norm, std::fabs(s));
        }
        for (std::size_t i = 0; i < n; ++i)
            v[i] = w[i] / norm;
        if (it > 10 && std::fabs(norm - lambda) <= 1e-17L * norm)
            return norm;
        lambda = norm;
    }
    return lambda;
}

/* Brackets the Perron root and certifies it with a Sturm chain: exactly one
 * root in (lower, upper], none above upper. */
PerronBracket certify_perron(IntMatrix const & A)
{
    std::vector<Int> cp = characteristic_polynomial(A);
    Poly p(cp.begin(), cp.end());
    auto chain = sturm_chain(p);
    long double est = power_iteration(A);
    int const at_inf = changes_at_infinity(chain);
    for (double tol = 1e-12; tol < 1.0; tol *= 10) {
        double width = tol * std::max(1.0, static_cast<double>(est));
        Rational lower(static_cast<double>(est) - width), upper(static_cast<double>(est) + width);
        int vl = changes_at(chain, lower), vu = changes_at(chain, upper);
        if (vl - vu == 1 && vu == at_inf)
            return {lower, upper, est};
    }
    throw ConsistencyFault("could not certify the Perron root near " +
                           std::to_string(static_cast<double>(est)));
}

unsigned primitivity_exponent(IntMatrix const & A)
{
    std::size_t const n = A.size();
    std::vector<char> base(n * n), cur(n * n), next(n * n);
    for (std::size_t i = 0; i < n * n; ++i)
        base[i] = cur[i] = A.entries()[i] > 0;
    unsigned const bound = static_cast<unsigned>(n * n - 2 * n + 2);
    for (unsigned m = 1; m <= bound; ++m) {
        bool positive = true;
        for (char c : cur)
            positive = positive && c;
        if (positive)
            return m;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                char v = 0;
                for (std::size_t k = 0; k < n && !v; ++k)
                    v = cur[i * n + k] && base[k * n + j];
                next[i * n + j] = v;
            }
        std::swap(cur, next);
    }
    return 0;
}

} // namespace

StationaryGroup validate_stationary(IntMatrix const & A)
{
    std::size_t const n = A.size();
    if (n < 2)
        throw DomainError("a stationary dimension group needs rank >= 2");
    for (Int const & v : A.entries())
        if (v < 0)
            throw DomainError("matrix entries must be nonnegative, got " + to_string(v));
    Int det = A.determinant();
    if (det != 1 && det != -1)
        throw DomainError("det A must be +-1, got " + to_string(det));
    unsigned m = primitivity_exponent(A);
    if (m == 0)
        throw DomainError("matrix " + A.str() + " is not primitive: no power up to " +
                          std::to_string(n * n - 2 * n + 2) + " is strictly positive");

    StationaryGroup G{A, static_cast<int>(det.get_si()), m, {}, {}, {}};
    if (n == 2) {
        Int tr = A.trace();
        Int disc = tr * tr - 4 * det;
        if (disc <= 0 || is_square(disc))
            throw DomainError("Perron eigenvalue of " + A.str() + " is not a quadratic irrational");
        QuadraticIrrational lambda(tr, 1, 2, disc);
        // (a - lambda) v1 + b v2 = 0
        QuadraticIrrational theta = lambda.same_field(A(0, 1), 0, 1) / (lambda + Int(-A(0, 0)));
        G.lambda = lambda;
        G.theta = theta;
    } else {
        G.perron = certify_perron(A);
    }
    return G;
}

QuadraticIrrational rotation_number(StationaryGroup const & G)
{
    if (G.rank() != 2 || !G.theta)
        throw DomainError("rotation numbers are implemented for rank 2 only (rank " +
                          std::to_string(G.rank()) + " given)");
    return *G.theta;
}

// ---------------------------------------------------------------- Minkowski

IntMatrix minkowski_factor(Int const & a)
{
    return IntMatrix(2, {a, 1, 1, 0});
}

IntMatrix minkowski_product(std::span<Int const> digits)
{
    IntMatrix r = IntMatrix::identity(2);
    for (Int const & a : digits)
        r = r * minkowski_factor(a);
    return r;
}

std::vector<Int> minkowski_decompose(IntMatrix const & g)
{
    if (g.size() != 2)
        throw DomainError("Minkowski decomposition needs a 2x2 matrix");
    for (Int const & v : g.entries())
        if (v < 0)
            throw DomainError("matrix " + g.str() + " has a negative entry; no Minkowski decomposition");
    Int const & p = g(0, 0);
    Int const & q = g(1, 0);
    if (p < 1 || q < 1)
        throw DomainError("matrix " + g.str() + " has no Minkowski decomposition (first column must be positive)");

    // the first column is (p_n, q_n), so the digits are a CF expansion of p/q
    std::vector<Int> digits;
    Int x = p, y = q;
    while (y != 0) {
        Int a = floor_div(x, y);
        digits.push_back(a);
        Int r = x - a * y;
        x = y;
        y = r;
    }
    std::vector<Int> alt = digits;
    if (alt.back() > 1) {
        alt.back() -= 1;
        alt.emplace_back(1);
    } else if (alt.size() > 1) {
        alt.pop_back();
        alt.back() += 1;
    }
    for (auto const * cand : {&digits, &alt}) {
        bool valid = true;
        for (Int const & a : *cand)
            valid = valid && a >= 1;
        if (valid && minkowski_product(*cand) == g)
            return *cand;
    }
    throw DomainError("matrix " + g.str() + " is not a product of factors ((a,1),(1,0)) with a >= 1");
}

// ----------------------------------------------------------- lattice classes

LatticeClass lattice_class(QuadraticIrrational const & theta)
{
    if (theta.is_rational())
        throw DomainError("lattice class needs an irrational theta");
    auto mp = theta.min_poly();
    // A theta = (-B +- sqrt Delta)/2; the sign follows the sqrt coefficient
    Int b = theta.b() > 0 ? Int(-mp.B) : mp.B;
    Int disc = mp.discriminant();
    numberfield::Reducer reducer(disc);
    return {disc, {mp.A, reducer.normalized_b(b, mp.A)}};
}

bool same_lattice_class(LatticeClass const & x, LatticeClass const & y)
{
    if (x.disc != y.disc)
        return false;
    numberfield::Reducer reducer(x.disc);
    return reducer.same_class(x.ideal, y.ideal);
}

// ------------------------------------------------------- associated ideals

AssociatedIdeal associated_ideal(StationaryGroup const & G, RealQuadraticField const & K)
{
    QuadraticIrrational theta = rotation_number(G);
    if (theta.d() != K.d())
        throw DomainError("rotation number " + theta.str() + " does not lie in Q(sqrt " +
                          to_string(K.d()) + ")");
    Int const & D = K.disc();

    // theta = x + y omega with omega = (sigma + sqrt D)/2, D = f^2 d
    Int sigma = floor_mod(D, 2);
    Int f = isqrt(D / K.d());
    Rational y(2 * theta.b(), theta.c() * f);
    Rational x = Rational(theta.a(), theta.c()) - y * Rational(sigma, 2);
    x.canonicalize();
    y.canonicalize();
    Int q = lcm_int(x.get_den(), y.get_den());

    std::vector<QuadraticIrrational> gens{theta.same_field(q, 0, 1), theta * q};
    QuadIdeal ideal = numberfield::ideal_generated(D, gens);

    Int tr = G.matrix.trace();
    Int lam_disc = tr * tr - 4 * G.det;
    Int f2 = lam_disc / D;
    Int conductor = isqrt(f2);
    if (f2 * D != lam_disc || conductor * conductor != f2)
        throw ConsistencyFault("discriminant of lambda is not a square multiple of D");

    LatticeClass lattice = lattice_class(theta);
    Int lf2 = lattice.disc / D;
    Int lattice_conductor = isqrt(lf2);
    if (lf2 * D != lattice.disc || lattice_conductor * lattice_conductor != lf2)
        throw ConsistencyFault("lattice discriminant is not a square multiple of D");

    IdealClass cls = numberfield::class_of(K, ideal);
    return {G, std::move(ideal), std::move(cls), std::move(q), std::move(conductor),
            std::move(lattice), std::move(lattice_conductor)};
}

AssociatedIdeal associated_ideal(StationaryGroup const & G)
{
    return associated_ideal(G, numberfield::field_of(rotation_number(G)));
}

bool morita_equivalent(StationaryGroup const & G1, StationaryGroup const & G2)
{
    QuadraticIrrational t1 = rotation_number(G1), t2 = rotation_number(G2);
    bool by_class = t1.d() == t2.d() && same_lattice_class(lattice_class(t1), lattice_class(t2));
    bool by_cf = quadratic::modular_equivalent(t1, t2);
    if (by_class != by_cf)
        throw ConsistencyFault("ideal-class and modular-equivalence routes disagree for " +
                               G1.matrix.str() + " and " + G2.matrix.str());
    return by_class;
}

std::vector<StationaryGroup> groups_for_field(RealQuadraticField const & K)
{
    std::vector<StationaryGroup> out;
    for (auto const & cyc : K.cycles()) {
        FormIdeal const & R = cyc.front();
        QuadraticIrrational x(R.b, 1, 2 * R.a, K.disc());
        auto cf = quadratic::cf_expand(x);
        if (!cf.preperiod.empty())
            throw ConsistencyFault("reduced ideal gives a non purely periodic expansion");
        out.push_back(validate_stationary(minkowski_product(cf.period)));
    }
    return out;
}

IntMatrix parse_matrix(std::vector<std::string> const & entries)
{
    std::size_t const count = entries.size();
    std::size_t n = 0;
    while ((n + 1) * (n + 1) <= count)
        ++n;
    if (n * n != count || n < 2)
        throw DomainError("a square matrix of size >= 2 needs n^2 entries, got " +
                          std::to_string(count));
    std::vector<Int> v;
    for (std::size_t i = 0; i < count; ++i)
        v.push_back(parse_int(entries[i], "matrix entry " + std::to_string(i + 1)));
    return IntMatrix(n, std::move(v));
}

} // namespace qvol::dimgroup
