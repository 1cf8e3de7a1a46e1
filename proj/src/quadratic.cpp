#include "qvol/quadratic.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

namespace qvol::quadratic {

QuadraticIrrational::QuadraticIrrational(Int a, Int b, Int c, Int d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d))
{
    if (c_ == 0)
        throw DomainError("quadratic irrational with zero denominator");
    if (d_ <= 1)
        throw DomainError("radicand must be > 1, got " + to_string(d_));
    auto split = split_square(d_);
    if (split.squarefree == 1)
        throw DomainError("radicand " + to_string(d_) + " is a perfect square");
    b_ *= split.square;
    d_ = split.squarefree;
    canonicalize();
}

QuadraticIrrational QuadraticIrrational::rational(Int n, Int d)
{
    return QuadraticIrrational(std::move(n), 0, 1, std::move(d));
}

QuadraticIrrational QuadraticIrrational::rational(Rational q, Int d)
{
    q.canonicalize();
    return QuadraticIrrational(q.get_num(), 0, q.get_den(), std::move(d));
}

QuadraticIrrational QuadraticIrrational::root(Int d)
{
    return QuadraticIrrational(0, 1, 1, std::move(d));
}

QuadraticIrrational QuadraticIrrational::same_field(Int a, Int b, Int c) const
{
    if (c == 0)
        throw DomainError("quadratic irrational with zero denominator");
    QuadraticIrrational r;
    r.a_ = std::move(a);
    r.b_ = std::move(b);
    r.c_ = std::move(c);
    r.d_ = d_;
    r.canonicalize();
    return r;
}

void QuadraticIrrational::canonicalize()
{
    Int g = gcd_int(gcd_int(a_, b_), c_);
    if (g != 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
    if (c_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
    }
}

QuadraticIrrational QuadraticIrrational::conjugate() const
{
    QuadraticIrrational r = *this;
    r.b_ = -r.b_;
    return r;
}

Rational QuadraticIrrational::norm() const
{
    Rational q(a_ * a_ - b_ * b_ * d_, c_ * c_);
    q.canonicalize();
    return q;
}

Rational QuadraticIrrational::trace() const
{
    Rational q(2 * a_, c_);
    q.canonicalize();
    return q;
}

int QuadraticIrrational::sign() const
{
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0)
        return sa;
    if (sa == 0 || sa == sb)
        return sb;
    Int lhs = a_ * a_, rhs = b_ * b_ * d_;
    return lhs > rhs ? sa : sb;
}

Int QuadraticIrrational::floor() const
{
    if (b_ == 0)
        return floor_div(a_, c_);
    Int n = b_ * b_ * d_;
    Int s = isqrt(n);
    if (b_ > 0)
        return floor_div(a_ + s, c_);
    return floor_div(a_ - s - 1, c_);
}

QuadraticIrrational::MinPoly QuadraticIrrational::min_poly() const
{
    if (b_ == 0)
        throw DomainError("minimal polynomial requested for a rational number");
    Int A = c_ * c_, B = -2 * a_ * c_, C = a_ * a_ - b_ * b_ * d_;
    Int g = gcd_int(gcd_int(A, B), C);
    return {A / g, B / g, C / g};
}

bool QuadraticIrrational::is_algebraic_integer() const
{
    Rational t = trace(), n = norm();
    return t.get_den() == 1 && n.get_den() == 1;
}

Real QuadraticIrrational::value() const
{
    Real root = boost::multiprecision::sqrt(to_real(d_));
    if (b_ == 0 || a_ == 0 || sgn(a_) == sgn(b_))
        return (to_real(a_) + to_real(b_) * root) / to_real(c_);
    // opposite signs: go through the conjugate to avoid cancellation
    Real num = to_real(Int(a_ * a_ - b_ * b_ * d_));
    return num / (to_real(c_) * (to_real(a_) - to_real(b_) * root));
}

std::string QuadraticIrrational::str(bool unicode) const
{
    std::ostringstream os;
    if (b_ == 0) {
        os << a_;
        if (c_ != 1)
            os << '/' << c_;
        return os.str();
    }
    std::string rt = unicode ? "√" + to_string(d_) : "sqrt(" + to_string(d_) + ")";
    Int mag = abs_int(b_);
    std::string term = (mag == 1 ? std::string() : to_string(mag)) + rt;
    std::string num;
    if (a_ == 0)
        num = (b_ < 0 ? "-" : "") + term;
    else
        num = to_string(a_) + (b_ < 0 ? "-" : "+") + term;
    if (c_ == 1)
        return num;
    if (a_ == 0 && b_ > 0)
        return num + "/" + to_string(c_);
    return "(" + num + ")/" + to_string(c_);
}

namespace {

void require_same_field(QuadraticIrrational const & x, QuadraticIrrational const & y)
{
    if (x.d() != y.d())
        throw DomainError("operands lie in different fields Q(sqrt " + to_string(x.d()) +
                          ") and Q(sqrt " + to_string(y.d()) + ")");
}

} // namespace

QuadraticIrrational operator+(QuadraticIrrational const & x, QuadraticIrrational const & y)
{
    require_same_field(x, y);
    QuadraticIrrational r;
    r.a_ = x.a_ * y.c_ + y.a_ * x.c_;
    r.b_ = x.b_ * y.c_ + y.b_ * x.c_;
    r.c_ = x.c_ * y.c_;
    r.d_ = x.d_;
    r.canonicalize();
    return r;
}

QuadraticIrrational QuadraticIrrational::operator-() const
{
    QuadraticIrrational r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

QuadraticIrrational operator-(QuadraticIrrational const & x, QuadraticIrrational const & y)
{
    return x + (-y);
}

QuadraticIrrational operator*(QuadraticIrrational const & x, QuadraticIrrational const & y)
{
    require_same_field(x, y);
    QuadraticIrrational r;
    r.a_ = x.a_ * y.a_ + x.b_ * y.b_ * x.d_;
    r.b_ = x.a_ * y.b_ + x.b_ * y.a_;
    r.c_ = x.c_ * y.c_;
    r.d_ = x.d_;
    r.canonicalize();
    return r;
}

QuadraticIrrational operator/(QuadraticIrrational const & x, QuadraticIrrational const & y)
{
    require_same_field(x, y);
    Int den = y.a_ * y.a_ - y.b_ * y.b_ * y.d_;
    if (den == 0)
        throw DomainError("division by zero in Q(sqrt " + to_string(y.d_) + ")");
    QuadraticIrrational inv;
    inv.a_ = y.c_ * y.a_;
    inv.b_ = -y.c_ * y.b_;
    inv.c_ = den;
    inv.d_ = y.d_;
    inv.canonicalize();
    return x * inv;
}

QuadraticIrrational operator+(QuadraticIrrational const & x, Int const & n)
{
    QuadraticIrrational r = x;
    r.a_ += n * r.c_;
    r.canonicalize();
    return r;
}

QuadraticIrrational operator*(QuadraticIrrational const & x, Int const & n)
{
    QuadraticIrrational r = x;
    r.a_ *= n;
    r.b_ *= n;
    r.canonicalize();
    return r;
}

std::ostream & operator<<(std::ostream & os, QuadraticIrrational const & x)
{
    return os << x.str();
}

bool operator<(QuadraticIrrational const & x, QuadraticIrrational const & y)
{
    return (x - y).sign() < 0;
}

QuadraticIrrational mobius(Int const & p, Int const & q, Int const & r, Int const & s,
                           QuadraticIrrational const & x)
{
    return (x * p + q) / (x * r + s);
}

bool is_reduced(QuadraticIrrational const & x)
{
    if (x.is_rational())
        return false;
    QuadraticIrrational one = x.same_field(1, 0, 1);
    QuadraticIrrational conj = x.conjugate();
    return one < x && conj.sign() < 0 && -one < conj;
}

std::vector<Int> least_rotation(std::span<Int const> block)
{
    std::vector<Int> best(block.begin(), block.end());
    std::size_t const n = block.size();
    std::vector<Int> cand(n);
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            cand[i] = block[(i + k) % n];
        if (cand < best)
            best = cand;
    }
    return best;
}

std::vector<Int> primitive_block(std::span<Int const> block)
{
    std::size_t const n = block.size();
    for (std::size_t k = 1; k <= n; ++k) {
        if (n % k)
            continue;
        bool periodic = true;
        for (std::size_t i = k; i < n && periodic; ++i)
            periodic = block[i] == block[i - k];
        if (periodic)
            return {block.begin(), block.begin() + static_cast<std::ptrdiff_t>(k)};
    }
    return {block.begin(), block.end()};
}

std::vector<Int> ContinuedFraction::canonical_cycle() const
{
    return least_rotation(period);
}

std::string ContinuedFraction::str() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < preperiod.size(); ++i)
        os << (i ? "," : "") << preperiod[i];
    os << (preperiod.empty() ? "" : ";") << '(';
    for (std::size_t i = 0; i < period.size(); ++i)
        os << (i ? "," : "") << period[i];
    os << ")]";
    return os.str();
}

Convergents convergents(std::span<Int const> digits)
{
    Convergents cv{1, 0, 0, 1};
    for (Int const & a : digits) {
        Int p = a * cv.p + cv.p_prev;
        Int q = a * cv.q + cv.q_prev;
        cv.p_prev = std::move(cv.p);
        cv.q_prev = std::move(cv.q);
        cv.p = std::move(p);
        cv.q = std::move(q);
    }
    return cv;
}

namespace {

/*
 * Complete quotients are tracked as (P + f sqrt d) / Q with N = f^2 d and
 * Q | N - P^2, which keeps every step in integer arithmetic.
 */
struct CompleteQuotient {
    Int P, Q;
};

struct Expansion {
    std::vector<Int> digits;
    std::vector<CompleteQuotient> states;
    std::size_t cycle_start = 0;
    Int f, d;
};

Expansion expand_states(QuadraticIrrational const & x)
{
    if (x.is_rational())
        throw DomainError("not a quadratic irrational: " + x.str() + " is rational");
    Expansion ex;
    ex.d = x.d();
    Int P, Q;
    if (x.b() > 0) {
        P = x.a();
        ex.f = x.b();
        Q = x.c();
    } else {
        P = -x.a();
        ex.f = -x.b();
        Q = -x.c();
    }
    Int N = ex.f * ex.f * ex.d;
    if ((N - P * P) % Q != 0) {
        Int m = abs_int(Q);
        P *= m;
        ex.f *= m;
        Q *= m;
        N = ex.f * ex.f * ex.d;
    }
    Int const s = isqrt(N);
    std::map<std::pair<Int, Int>, std::size_t> seen;
    for (;;) {
        auto [it, fresh] = seen.emplace(std::pair{P, Q}, ex.states.size());
        if (!fresh) {
            ex.cycle_start = it->second;
            break;
        }
        Int digit = Q > 0 ? floor_div(P + s, Q) : Int(-floor_div(P + s, -Q) - 1);
        ex.states.push_back({P, Q});
        ex.digits.push_back(digit);
        Int Pn = digit * Q - P;
        Q = (N - Pn * Pn) / Q;
        P = std::move(Pn);
    }
    return ex;
}

QuadraticIrrational to_number(CompleteQuotient const & st, Expansion const & ex,
                              QuadraticIrrational const & base)
{
    return base.same_field(st.P, ex.f, st.Q);
}

} // namespace

ContinuedFraction cf_expand(QuadraticIrrational const & x)
{
    Expansion ex = expand_states(x);
    ContinuedFraction cf;
    auto split = ex.digits.begin() + static_cast<std::ptrdiff_t>(ex.cycle_start);
    cf.preperiod.assign(ex.digits.begin(), split);
    cf.period.assign(split, ex.digits.end());
    return cf;
}

QuadraticIrrational cf_value(ContinuedFraction const & cf)
{
    if (cf.period.empty())
        throw DomainError("continued fraction needs a nonempty period");
    for (Int const & a : cf.period)
        if (a < 1)
            throw DomainError("period digits must be >= 1, got " + to_string(a));
    for (std::size_t i = 1; i < cf.preperiod.size(); ++i)
        if (cf.preperiod[i] < 1)
            throw DomainError("preperiod digits after the first must be >= 1, got " +
                              to_string(cf.preperiod[i]));

    // fixed point of y = (p y + p') / (q y + q')
    Convergents per = convergents(cf.period);
    Int u = per.p - per.q_prev;
    Int disc = u * u + 4 * per.q * per.p_prev;
    QuadraticIrrational y(u, 1, 2 * per.q, disc);
    if (cf.preperiod.empty())
        return y;
    Convergents pre = convergents(cf.preperiod);
    return mobius(pre.p, pre.p_prev, pre.q, pre.q_prev, y);
}

QuadraticIrrational surgery_slope(std::span<Int const> coefficients)
{
    if (coefficients.empty())
        throw DomainError("invalid surgery coefficients: empty sequence");
    for (Int const & p : coefficients)
        if (p <= 0)
            throw DomainError("invalid surgery coefficients: p_i must be positive, got " +
                              to_string(p));
    ContinuedFraction cf;
    cf.period.assign(coefficients.begin(), coefficients.end());
    return cf_value(cf);
}

QuadraticIrrational surgery_slope(std::vector<long> const & coefficients)
{
    std::vector<Int> v;
    v.reserve(coefficients.size());
    for (long p : coefficients)
        v.emplace_back(p);
    return surgery_slope(std::span<Int const>(v));
}

bool modular_equivalent(QuadraticIrrational const & x, QuadraticIrrational const & y)
{
    if (x.d() != y.d())
        return false;
    Expansion ex = expand_states(x);
    QuadraticIrrational const base = x.same_field(0, 1, 1);
    using Key = std::tuple<Int, Int, Int>;
    std::set<Key> cycle;
    for (std::size_t i = ex.cycle_start; i < ex.states.size(); ++i) {
        QuadraticIrrational q = to_number(ex.states[i], ex, base);
        cycle.emplace(q.a(), q.b(), q.c());
    }
    Expansion ey = expand_states(y);
    QuadraticIrrational entry = to_number(ey.states[ey.cycle_start], ey, base);
    return cycle.contains(Key{entry.a(), entry.b(), entry.c()});
}

bool cycles_agree(QuadraticIrrational const & x, QuadraticIrrational const & y)
{
    return x.d() == y.d() && cf_expand(x).canonical_cycle() == cf_expand(y).canonical_cycle();
}

} // namespace qvol::quadratic
