#include "qvol/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qvol/commensurability.hpp"
#include "qvol/dimgroup.hpp"
#include "qvol/numberfield.hpp"
#include "qvol/quadratic.hpp"
#include "qvol/volume.hpp"

namespace qvol::cli {

namespace {

// 15 decimals, rounded outward so the printed bracket still contains the root.
std::string directed_decimal(Rational const & q, bool up)
{
    Int const scale("1000000000000000");
    Rational scaled = q * scale;
    Int n = floor_div(scaled.get_num(), scaled.get_den());
    if (up && Rational(n) != scaled)
        n += 1;
    std::string digits = to_string(abs_int(n));
    if (digits.size() < 16)
        digits.insert(0, 16 - digits.size(), '0');
    std::string out = (n < 0 ? "-" : "") + digits.substr(0, digits.size() - 15) + "." +
                      digits.substr(digits.size() - 15);
    return out;
}

using numberfield::QuadIdeal;
using numberfield::RealQuadraticField;
using quadratic::QuadraticIrrational;

struct Options {
    std::string format = "human";
    int digits = 6;

    std::vector<std::string> theta_args;

    std::vector<std::string> field_args;
    bool from_surgery = false;
    std::string humbert;
    std::uint64_t humbert_terms = 1000000;

    std::vector<std::string> volume_args;
    std::string C, calibrate, k, K;

    std::vector<std::string> classify_args;
    std::string classify_file;

    std::string density_d;
    long long density_t = 0;
    unsigned threads = 0;

    std::string factor_d, factor_ideal, divide_d, dividend, divisor;
    std::string next_d, exclude;
    std::uint64_t next_count = 1, next_bound = 1000000;
    std::string chain_file, tele_k, tele_K;
    long long tele_t = 0;
};

Int usage_int(std::string const & text, std::string const & what)
{
    try {
        return parse_int(text, what);
    } catch (DomainError const & e) {
        throw UsageError(e.what());
    }
}

std::vector<Int> usage_ints(std::vector<std::string> const & args, std::string const & what)
{
    std::vector<Int> out;
    for (std::string const & a : args)
        out.push_back(usage_int(a, what));
    return out;
}

Real usage_real(std::string const & text, std::string const & what)
{
    try {
        return parse_decimal(text, what);
    } catch (DomainError const & e) {
        throw UsageError(e.what());
    }
}

std::string join(std::vector<Int> const & v, char const * sep)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? sep : "") + to_string(v[i]);
    return s;
}

std::string poly_str(QuadraticIrrational::MinPoly const & p)
{
    std::ostringstream os;
    auto term = [&](Int const & c, char const * mono, bool first) {
        if (c == 0)
            return;
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << '-';
        Int a = abs_int(c);
        if (a != 1 || *mono == '\0')
            os << a;
        os << mono;
    };
    term(p.A, "x^2", true);
    term(p.B, "x", false);
    term(p.C, "", false);
    return os.str();
}

RealQuadraticField field_for(Int const & d_in, Report & r)
{
    if (d_in <= 1)
        throw DomainError("d must be an integer > 1, got " + to_string(d_in));
    if (is_square(d_in))
        throw DomainError("d = " + to_string(d_in) + " is a perfect square; Q(sqrt d) is not a quadratic field");
    Int d = split_square(d_in).squarefree;
    if (d != d_in)
        r.note("Q(sqrt " + to_string(d_in) + ") = Q(sqrt " + to_string(d) + ")");
    return RealQuadraticField(d);
}

std::ifstream open_file(std::string const & path)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open file '" + path + "'");
    return in;
}

void put_field(Report & r, RealQuadraticField const & K)
{
    r.put("d", K.d());
    r.put("D", K.disc());
    r.put("epsilon", K.epsilon());
    r.put("epsilon.norm", K.epsilon_norm());
    r.put("regulator", K.regulator());
    r.put("h", static_cast<std::uint64_t>(K.class_number()));
}

// ------------------------------------------------------------------ theta

int cmd_theta(Options const & o, Report & r)
{
    if (o.theta_args.empty())
        throw UsageError("theta needs at least one surgery coefficient p_1 ... p_n");
    auto p = usage_ints(o.theta_args, "surgery coefficient");
    QuadraticIrrational theta = quadratic::surgery_slope(p);
    auto mp = theta.min_poly();
    auto cf = quadratic::cf_expand(theta);
    r.put("surgery", join(p, "-"));
    r.put("theta", theta);
    r.put("theta.value", theta.value());
    r.put("min_poly", poly_str(mp));
    r.put("min_poly.discriminant", mp.discriminant());
    r.put("cf", cf.str());
    r.put("cf.period_length", static_cast<std::uint64_t>(cf.period.size()));
    r.put("field.d", theta.d());
    return 0;
}

// ------------------------------------------------------------------ field

int cmd_field(Options const & o, Report & r)
{
    if (o.field_args.empty())
        throw UsageError(o.from_surgery ? "--from-surgery needs coefficients p_1 ... p_n"
                                        : "field needs d (or --from-surgery p_1 ... p_n)");
    std::optional<RealQuadraticField> K;
    if (o.from_surgery) {
        auto p = usage_ints(o.field_args, "surgery coefficient");
        QuadraticIrrational theta = quadratic::surgery_slope(p);
        r.put("surgery", join(p, "-"));
        r.put("theta", theta);
        K = numberfield::field_of(theta);
    } else {
        if (o.field_args.size() != 1)
            throw UsageError("field takes exactly one d");
        K = field_for(usage_int(o.field_args[0], "d"), r);
    }
    put_field(r, *K);
    auto cmp = volume::comparison_report(
        *K, o.humbert.empty() ? std::nullopt : std::optional<Int>(usage_int(o.humbert, "--humbert")),
        o.humbert_terms);
    r.put("density", cmp.density);
    r.put("residue", cmp.residue);
    r.put("unit_volume.D", cmp.unit_volume_D);
    r.put("unit_volume.d", cmp.unit_volume_d);
    r.put("ratio.residue_density", cmp.residue_over_density);
    r.put("ratio.residue_unit_volume", cmp.residue_over_unit_volume);
    auto classes = numberfield::ideal_classes(*K);
    for (auto const & c : classes) {
        std::string key = "class." + std::to_string(c.index);
        r.put(key + ".representative", c.representative);
        r.put(key + ".cycle_length", static_cast<std::uint64_t>(c.cycle.size()));
        r.put(key + ".principal", c.is_principal());
    }
    if (cmp.humbert) {
        r.put("humbert.disc", cmp.humbert->disc);
        r.put("humbert.terms", cmp.humbert->terms);
        r.put("humbert.l_value", cmp.humbert->l_value);
        r.put("humbert.zeta_k2", cmp.humbert->zeta_k2);
        r.put("humbert.volume", cmp.humbert->volume);
        r.put("humbert.error_bound", format_real(cmp.humbert->error_bound, 3));
    }
    return 0;
}

// ----------------------------------------------------------------- volume

int cmd_volume(Options const & o, Report & r)
{
    if (!o.calibrate.empty()) {
        if (!o.volume_args.empty() || !o.C.empty())
            throw UsageError("--calibrate takes no coefficients and no --C");
        std::ifstream in = open_file(o.calibrate);
        auto obs = read_observations(in, o.calibrate);
        auto cal = volume::calibrate_C(obs);
        r.put("observations", static_cast<std::uint64_t>(obs.size()));
        r.put("C", cal.C);
        r.put("relative_spread", cal.relative_spread);
        for (std::size_t i = 0; i < obs.size(); ++i) {
            std::string key = "obs." + std::to_string(i);
            r.put(key + ".surgery", join(obs[i].surgery, "-"));
            r.put(key + ".source", obs[i].source);
            r.put(key + ".x", cal.x[i]);
            r.put(key + ".measured", obs[i].measured_volume);
            r.put(key + ".residual", format_real(cal.residuals[i], 3));
        }
        return 0;
    }
    if (o.C.empty())
        throw UsageError("C unspecified: pass --C <value> or --calibrate <file>");
    if (o.volume_args.empty())
        throw UsageError("volume needs surgery coefficients p_1 ... p_n");
    Real C = usage_real(o.C, "--C");
    auto p = usage_ints(o.volume_args, "surgery coefficient");
    auto pred = volume::predict_volume(p, C);
    r.put("surgery", join(p, "-"));
    r.put("theta", pred.theta);
    put_field(r, pred.field);
    r.put("C", pred.C);
    r.put("value", pred.value_D);
    r.put("value.d", pred.value_d);
    r.put("residue_form", pred.residue_form);
    r.put("ratio.residue_form_value", Real(pred.residue_form / pred.value_D));
    if (o.k.empty() != o.K.empty())
        throw UsageError("--k and --K must be given together");
    if (!o.k.empty()) {
        commensurability::GapBounds b(usage_real(o.k, "--k"), usage_real(o.K, "--K"));
        auto iv = volume::volume_bounds(pred.field, b);
        r.put("bounds.lower", iv.lower);
        r.put("bounds.upper", iv.upper);
        r.put("bounds.point", iv.is_point());
    }
    return 0;
}

// --------------------------------------------------------------- classify

int cmd_classify(Options const & o, Report & r)
{
    std::vector<std::string> tokens = o.classify_args;
    if (!o.classify_file.empty()) {
        if (!tokens.empty())
            throw UsageError("give matrix entries or --file, not both");
        std::ifstream in = open_file(o.classify_file);
        tokens = read_matrix_tokens(in);
    }
    if (tokens.empty())
        throw UsageError("classify needs n^2 matrix entries (row-major) or --file");
    for (std::string const & t : tokens)
        usage_int(t, "matrix entry");
    auto A = dimgroup::parse_matrix(tokens);
    auto G = dimgroup::validate_stationary(A);
    r.put("matrix", A.str());
    r.put("rank", static_cast<std::uint64_t>(G.rank()));
    r.put("det", G.det);
    r.put("primitivity_exponent", static_cast<std::uint64_t>(G.primitivity_exponent));
    if (G.rank() != 2) {
        r.put("perron.lower", directed_decimal(G.perron->lower, false));
        r.put("perron.upper", directed_decimal(G.perron->upper, true));
        r.put("perron.estimate", Real(static_cast<double>(G.perron->estimate)));
        r.note("rotation numbers and classification are implemented for rank 2 only");
        return 0;
    }
    auto ai = dimgroup::associated_ideal(G);
    RealQuadraticField const & K = ai.ideal_class.field;
    r.put("lambda", *G.lambda);
    r.put("theta", *G.theta);
    r.put("theta.cf", quadratic::cf_expand(*G.theta).str());
    r.put("d", K.d());
    r.put("D", K.disc());
    r.put("h", static_cast<std::uint64_t>(K.class_number()));
    r.put("ideal", ai.ideal);
    r.put("ideal.scale", ai.scale);
    r.put("ideal.class", static_cast<std::uint64_t>(ai.ideal_class.index));
    r.put("ideal.principal", ai.ideal_class.is_principal());
    r.put("order_conductor", ai.order_conductor);
    r.put("lattice.disc", ai.lattice.disc);
    r.put("lattice.conductor", ai.lattice_conductor);
    try {
        r.put("minkowski", join(dimgroup::minkowski_decompose(A), ","));
    } catch (DomainError const &) {
        r.put("minkowski", "none");
    }
    auto groups = dimgroup::groups_for_field(K);
    for (std::size_t i = 0; i < groups.size(); ++i)
        if (dimgroup::morita_equivalent(G, groups[i])) {
            r.put("morita_class", static_cast<std::uint64_t>(i));
            r.put("morita_class.matrix", groups[i].matrix.str());
        }
    if (ai.order_conductor > 1)
        r.note("warning: Z[lambda] has conductor " + to_string(ai.order_conductor) +
               " in O_K; the associated ideal was pushed to O_K");
    if (ai.lattice_conductor > 1)
        r.note("warning: the multiplier ring of Z + Z theta has conductor " +
               to_string(ai.lattice_conductor) + "; Morita classes use that order");
    return 0;
}

// ---------------------------------------------------------------- density

int cmd_density(Options const & o, Report & r)
{
    auto K = field_for(usage_int(o.density_d, "d"), r);
    if (o.density_t < 1)
        throw DomainError("--t must be >= 1, got " + std::to_string(o.density_t));
    auto const t_max = static_cast<std::uint64_t>(o.density_t);
    unsigned threads = o.threads ? o.threads : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    Real const limit = numberfield::dirichlet_density(K);
    put_field(r, K);
    r.put("limit", limit);
    r.put("t_max", t_max);
    std::vector<std::uint64_t> checkpoints;
    for (std::uint64_t t = 10; t <= t_max; t *= 10)
        checkpoints.push_back(t);
    if (checkpoints.empty() || checkpoints.back() != t_max)
        checkpoints.push_back(t_max);
    for (std::size_t row = 0; row < checkpoints.size(); ++row) {
        std::uint64_t t = checkpoints[row];
        auto counts = numberfield::count_ideals_by_class(K, t, threads);
        std::string key = "row." + std::to_string(row);
        r.put(key + ".t", t);
        for (std::size_t c = 0; c < counts.size(); ++c) {
            std::string ck = key + ".class." + std::to_string(c);
            Real ratio = Real(static_cast<double>(counts[c])) / Real(static_cast<double>(t));
            r.put(ck + ".count", counts[c]);
            r.put(ck + ".ratio", ratio);
            r.put(ck + ".rel_error", format_real(Real((ratio - limit) / limit), 3));
        }
    }
    return 0;
}

// ------------------------------------------------------- commensurability

struct FieldIdeals {
    RealQuadraticField K;
    std::vector<QuadIdeal> ideals;
};

FieldIdeals field_and_ideals(std::vector<std::string> const & args, Report & r)
{
    auto K = field_for(usage_int(args[0], "d"), r);
    std::vector<QuadIdeal> ideals;
    for (std::size_t i = 1; i < args.size(); ++i)
        ideals.push_back(parse_ideal(K.disc(), args[i]));
    return {std::move(K), std::move(ideals)};
}

int cmd_factor(Options const & o, Report & r)
{
    auto [K, ideals] = field_and_ideals({o.factor_d, o.factor_ideal}, r);
    commensurability::ManifoldIdeal M{"M", ideals[0], std::nullopt};
    r.put("d", K.d());
    r.put("ideal", M.ideal);
    r.put("norm", M.ideal.norm());
    auto parts = commensurability::prime_decompose_manifold(M);
    std::string product;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto const & [P, e] = parts[i];
        std::string key = "prime." + std::to_string(i);
        r.put(key, P.ideal);
        r.put(key + ".label", P.label);
        r.put(key + ".norm", P.ideal.norm());
        r.put(key + ".exponent", static_cast<std::uint64_t>(e));
        r.put(key + ".principal", numberfield::is_principal(P.ideal).principal);
        std::string f = r.format() == Format::human ? P.ideal.str() : P.label;
        product += (i ? (r.format() == Format::human ? "·" : "*") : "") + f + (e > 1 ? "^" + std::to_string(e) : "");
    }
    r.put("product", product.empty() ? std::string("(1)") : product);
    return 0;
}

int cmd_divide(Options const & o, Report & r)
{
    auto [K, ideals] = field_and_ideals({o.divide_d, o.dividend, o.divisor}, r);
    commensurability::ManifoldIdeal M1{"M1", ideals[0], std::nullopt}, M2{"M2", ideals[1], std::nullopt};
    r.put("d", K.d());
    r.put("dividend", M1.ideal);
    r.put("divisor", M2.ideal);
    auto div = commensurability::divide(M1, M2);
    switch (div.outcome) {
    case commensurability::DivisionOutcome::quotient:
        r.put("outcome", "quotient");
        r.put("quotient", div.quotient->ideal);
        r.put("quotient.norm", div.quotient->ideal.norm());
        break;
    case commensurability::DivisionOutcome::relatively_prime:
        r.put("outcome", "relatively_prime");
        break;
    case commensurability::DivisionOutcome::not_divisible:
        r.put("outcome", "not_divisible");
        break;
    }
    if (!M2.ideal.is_unit())
        r.put("covering_degree", static_cast<std::uint64_t>(commensurability::covering_degree(M1, M2)));
    return 0;
}

int cmd_next_prime(Options const & o, Report & r)
{
    auto K = field_for(usage_int(o.next_d, "d"), r);
    std::vector<QuadIdeal> excluded;
    std::vector<Int> rational;
    if (!o.exclude.empty()) {
        std::istringstream is(o.exclude);
        std::string tok;
        while (std::getline(is, tok, ','))
            rational.push_back(usage_int(tok, "--exclude prime"));
    }
    for (Int const & p : rational)
        for (QuadIdeal const & P : numberfield::prime_splitting(K, p).primes)
            excluded.push_back(P);
    r.put("d", K.d());
    r.put("exclude", rational.empty() ? std::string("none") : join(rational, ","));
    r.put("bound", o.next_bound);
    for (std::uint64_t i = 0; i < o.next_count; ++i) {
        auto pm = commensurability::next_prime_manifold(K, excluded, o.next_bound);
        std::string key = "prime." + std::to_string(i);
        r.put(key, pm.manifold.ideal);
        r.put(key + ".norm", pm.manifold.ideal.norm());
        r.put(key + ".principal", pm.principal);
        if (pm.generator)
            r.put(key + ".generator", *pm.generator);
        if (!pm.note.empty())
            r.note(pm.note);
        excluded.push_back(pm.manifold.ideal);
    }
    return 0;
}

int cmd_telescope(Options const & o, Report & r)
{
    std::ifstream in = open_file(o.chain_file);
    ChainFile chain = read_chain(in, o.chain_file);
    auto meta = [&](std::string const & key, std::string const & override_value) -> std::string {
        if (!override_value.empty())
            return override_value;
        auto it = chain.meta.find(key);
        if (it == chain.meta.end())
            throw DomainError(o.chain_file + ": missing metadata '# " + key + "=...'");
        return it->second;
    };
    RealQuadraticField K(chain.d);
    std::uint64_t t = o.tele_t > 0 ? static_cast<std::uint64_t>(o.tele_t)
                                   : parse_int(meta("t", ""), "t").get_ui();
    std::size_t cls = chain.meta.count("class") ? parse_int(chain.meta["class"], "class").get_ui() : 0;
    if (cls >= K.class_number())
        throw DomainError("class index " + std::to_string(cls) + " out of range (h = " +
                          std::to_string(K.class_number()) + ")");
    commensurability::GapBounds bounds(parse_decimal(meta("k", o.tele_k), "k"),
                                       parse_decimal(meta("K", o.tele_K), "K"));
    commensurability::CommensurabilityClass cc{K, numberfield::ideal_classes(K)[cls], chain.members};
    auto rep = commensurability::telescoping_check(cc, t, bounds);

    r.put("d", K.d());
    r.put("D", K.disc());
    r.put("class", static_cast<std::uint64_t>(cls));
    r.put("t", rep.t);
    r.put("N(t)", rep.n_t);
    r.put("chain_length", static_cast<std::uint64_t>(rep.chain_length));
    r.put("k", bounds.lower);
    r.put("K", bounds.upper);
    r.put("vol.first", rep.v0);
    r.put("vol.last", rep.v_last);
    r.put("degenerate", rep.degenerate);
    if (!rep.degenerate) {
        r.put("telescoped_sum", rep.telescoped_sum);
        r.put("gaps.ok", rep.gaps.ok);
        if (rep.gaps.first_violation)
            r.put("gaps.first_violation", static_cast<std::uint64_t>(*rep.gaps.first_violation));
        r.put("chain_bound.lower", rep.chain_bound.lower);
        r.put("chain_bound.value", rep.chain_bound.value);
        r.put("chain_bound.upper", rep.chain_bound.upper);
        r.put("chain_bound.violated", commensurability::side_name(rep.chain_bound.violated));
        r.put("endpoint.t_vol_first", rep.t_v0);
        r.put("endpoint.rel_error", format_real(rep.endpoint_error, 3));
        r.put("endpoint.ok", rep.endpoint_ok);
        r.put("class_bound.lower", rep.class_bound.lower);
        r.put("class_bound.value", rep.class_bound.value);
        r.put("class_bound.upper", rep.class_bound.upper);
        r.put("class_bound.violated", commensurability::side_name(rep.class_bound.violated));
    }
    for (std::string const & n : rep.notes)
        r.note(n);
    r.put("verdict", rep.passed ? "pass" : "fail");
    return rep.passed ? 0 : 1;
}

} // namespace

int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err)
{
    Options o;
    CLI::App app{"Real quadratic field invariants, stationary dimension groups and volume formulas", "qvol"};
    app.require_subcommand(1);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "machine"}));
    app.add_option("--digits", o.digits, "Significant digits of decimal output")->check(CLI::Range(1, 50));
    app.set_version_flag("--version", std::string("qvol ") + kVersion);

    auto * theta = app.add_subcommand("theta", "Surgery slope Per[p_1, ..., p_n]");
    theta->add_option("p", o.theta_args, "Surgery coefficients");

    auto * field = app.add_subcommand("field", "Invariants of Q(sqrt d)");
    field->add_flag("--from-surgery", o.from_surgery, "Take the field of the surgery slope");
    field->add_option("args", o.field_args, "d, or p_1 ... p_n with --from-surgery");
    field->add_option("--humbert", o.humbert, "Negative fundamental discriminant for the Humbert comparison");
    field->add_option("--terms", o.humbert_terms, "Character-sum terms for the Humbert value")
        ->check(CLI::PositiveNumber);

    auto * vol = app.add_subcommand("volume", "Volume prediction or calibration of C");
    vol->add_option("p", o.volume_args, "Surgery coefficients");
    vol->add_option("--C", o.C, "Constant C(M) > 0");
    vol->add_option("--calibrate", o.calibrate, "Observation CSV (surgery,volume,source)");
    vol->add_option("--k", o.k, "Lower gap bound k");
    vol->add_option("--K", o.K, "Upper gap bound K");

    auto * classify = app.add_subcommand("classify", "Classify the stationary group of a matrix");
    classify->add_option("entries", o.classify_args, "Matrix entries, row-major");
    classify->add_option("--file", o.classify_file, "File with matrix entries");

    auto * density = app.add_subcommand("density", "N(t, A)/t per ideal class against 2 log eps / sqrt D");
    density->add_option("d", o.density_d, "Radicand")->required();
    density->add_option("--t", o.density_t, "Largest t")->required();
    density->add_option("--threads", o.threads, "Worker threads (0 = automatic)");

    auto * comm = app.add_subcommand("commensurability", "Ideal-encoded commensurability classes");
    comm->alias("comm");
    comm->require_subcommand(1);
    auto * factor = comm->add_subcommand("factor", "Prime decomposition of an ideal");
    factor->add_option("d", o.factor_d, "Radicand")->required();
    factor->add_option("ideal", o.factor_ideal, "Ideal: n, a:b or m:a:b")->required();
    auto * divide = comm->add_subcommand("divide", "Quotient M1/M2 and covering degree");
    divide->add_option("d", o.divide_d, "Radicand")->required();
    divide->add_option("dividend", o.dividend, "Ideal M1")->required();
    divide->add_option("divisor", o.divisor, "Ideal M2")->required();
    auto * next = comm->add_subcommand("next-prime", "Next prime manifold outside the exclusions");
    next->add_option("d", o.next_d, "Radicand")->required();
    next->add_option("--exclude", o.exclude, "Comma-separated rational primes to exclude");
    next->add_option("--count", o.next_count, "Number of primes")->check(CLI::PositiveNumber);
    next->add_option("--bound", o.next_bound, "Norm search bound")->check(CLI::PositiveNumber);
    auto * tele = comm->add_subcommand("telescope", "Telescoping check on a chain file");
    tele->add_option("chain", o.chain_file, "Chain CSV")->required();
    tele->add_option("--t", o.tele_t, "Override t");
    tele->add_option("--k", o.tele_k, "Override k");
    tele->add_option("--K", o.tele_K, "Override K");

    for (CLI::App * sub : {theta, field, vol, classify, density, comm, factor, divide, next, tele})
        sub->fallthrough();

    // CLI11 reports a stray word as a missing subcommand; name it instead
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string const & a = args[i];
        if (a == "--format" || a == "--digits") {
            ++i;
            continue;
        }
        if (a.starts_with("-"))
            continue;
        if (!app.get_subcommand_no_throw(a)) {
            err << "usage error: unknown subcommand '" << a << "'\n"
                << "Run with --help for more information.\n";
            return 2;
        }
        break;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (CLI::ParseError const & e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        Report r(args, o.format == "machine" ? Format::machine : Format::human, o.digits);
        int status = 0;
        if (theta->parsed())
            status = cmd_theta(o, r);
        else if (field->parsed())
            status = cmd_field(o, r);
        else if (vol->parsed())
            status = cmd_volume(o, r);
        else if (classify->parsed())
            status = cmd_classify(o, r);
        else if (density->parsed())
            status = cmd_density(o, r);
        else if (factor->parsed())
            status = cmd_factor(o, r);
        else if (divide->parsed())
            status = cmd_divide(o, r);
        else if (next->parsed())
            status = cmd_next_prime(o, r);
        else if (tele->parsed())
            status = cmd_telescope(o, r);
        out << r.render();
        return status;
    } catch (UsageError const & e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (DomainError const & e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (ConsistencyFault const & e) {
        err << "internal consistency fault: " << e.what() << '\n';
        return 1;
    }
}

} // namespace qvol::cli
