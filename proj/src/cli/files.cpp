#include "qvol/cli.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace qvol::cli {

namespace {

std::string trim(std::string const & s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string describe(std::string const & name, std::vector<LineError> const & errors)
{
    std::ostringstream os;
    os << name << ": " << errors.size() << " malformed line" << (errors.size() == 1 ? "" : "s");
    for (LineError const & e : errors)
        os << "\n  " << name << ':' << e.line << ": " << e.message;
    return os.str();
}

bool is_blank_or_comment(std::string const & line)
{
    std::string t = trim(line);
    return t.empty() || t[0] == '#';
}

} // namespace

Real parse_decimal(std::string const & text, std::string const & what)
{
    std::string t = trim(text);
    std::size_t pos = 0;
    try {
        std::stod(t, &pos);
    } catch (std::exception const &) {
        pos = 0;
    }
    if (t.empty() || pos != t.size())
        throw DomainError(what + " is not a decimal number: '" + t + "'");
    return Real(t);
}

FileError::FileError(std::string const & name, std::vector<LineError> errs)
    : DomainError(describe(name, errs)), errors(std::move(errs))
{
}

std::vector<std::string> split_csv(std::string const & line)
{
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw DomainError("unterminated quote");
    out.push_back(trim(cur));
    return out;
}

std::vector<Int> parse_surgery(std::string const & text)
{
    std::string t = trim(text);
    if (t.empty())
        throw DomainError("empty surgery coefficient list");
    char const sep = t.find('-') != std::string::npos ? '-' : ' ';
    std::vector<Int> out;
    std::istringstream is(t);
    std::string tok;
    while (std::getline(is, tok, sep)) {
        tok = trim(tok);
        if (tok.empty()) {
            if (sep == ' ')
                continue;
            throw DomainError("empty entry in surgery coefficients '" + t + "'");
        }
        Int p = parse_int(tok, "surgery coefficient");
        if (p <= 0)
            throw DomainError("surgery coefficients must be positive, got " + tok);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<volume::VolumeObservation> read_observations(std::istream & in, std::string const & name)
{
    std::vector<volume::VolumeObservation> out;
    std::vector<LineError> errors;
    std::string line;
    std::size_t n = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++n;
        if (is_blank_or_comment(line))
            continue;
        try {
            auto fields = split_csv(line);
            if (!header) {
                if (fields.size() != 3 || fields[0] != "surgery" || fields[1] != "volume" ||
                    fields[2] != "source")
                    throw DomainError("expected header 'surgery,volume,source'");
                header = true;
                continue;
            }
            if (fields.size() != 3)
                throw DomainError("expected 3 fields, got " + std::to_string(fields.size()));
            volume::VolumeObservation obs{parse_surgery(fields[0]), parse_decimal(fields[1], "volume"),
                                          fields[2]};
            if (!(obs.measured_volume > 0))
                throw DomainError("volume must be positive");
            out.push_back(std::move(obs));
        } catch (DomainError const & e) {
            errors.push_back({n, e.what()});
            if (!header)
                break;
        }
    }
    if (!header && errors.empty())
        errors.push_back({n, "missing header 'surgery,volume,source'"});
    if (errors.empty() && out.empty())
        errors.push_back({n, "no observations"});
    if (!errors.empty())
        throw FileError(name, std::move(errors));
    return out;
}

ChainFile read_chain(std::istream & in, std::string const & name)
{
    std::vector<std::pair<std::size_t, std::string>> rows;
    std::vector<LineError> errors;
    ChainFile out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        std::string t = trim(line);
        if (t.empty())
            continue;
        if (t[0] == '#') {
            std::string body = trim(t.substr(1));
            auto eq = body.find('=');
            if (eq == std::string::npos)
                continue;
            out.meta[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
            continue;
        }
        rows.emplace_back(n, t);
    }

    Int disc = 0;
    try {
        auto it = out.meta.find("d");
        if (it == out.meta.end())
            throw DomainError("missing metadata line '# d=<radicand>'");
        out.d = parse_int(it->second, "d");
        if (out.d <= 1 || !is_squarefree(out.d))
            throw DomainError("d must be a squarefree integer > 1");
        disc = field_discriminant(out.d);
    } catch (DomainError const & e) {
        throw FileError(name, {{0, e.what()}});
    }

    bool header = false;
    for (auto const & [ln, text] : rows) {
        try {
            auto f = split_csv(text);
            if (!header) {
                bool ok = (f.size() == 4 || f.size() == 5) && f[0] == "label" && f[1] == "a" &&
                          f[2] == "b" && f[3] == "volume" && (f.size() == 4 || f[4] == "content");
                if (!ok)
                    throw DomainError("expected header 'label,a,b,volume[,content]'");
                header = true;
                continue;
            }
            if (f.size() != 4 && f.size() != 5)
                throw DomainError("expected 4 or 5 fields, got " + std::to_string(f.size()));
            Int a = parse_int(f[1], "a");
            Int b = parse_int(f[2], "b");
            Int m = f.size() == 5 ? parse_int(f[4], "content") : Int(1);
            numberfield::QuadIdeal I(disc, m, a, b);
            out.members.push_back({f[0], std::move(I), parse_decimal(f[3], "volume")});
        } catch (DomainError const & e) {
            errors.push_back({ln, e.what()});
            if (!header)
                break;
        }
    }
    if (!header && errors.empty())
        errors.push_back({n, "missing header 'label,a,b,volume[,content]'"});
    if (!errors.empty())
        throw FileError(name, std::move(errors));
    return out;
}

std::vector<std::string> read_matrix_tokens(std::istream & in)
{
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (is_blank_or_comment(line))
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream is(line);
        std::string tok;
        while (is >> tok)
            out.push_back(tok);
    }
    return out;
}

numberfield::QuadIdeal parse_ideal(Int const & disc, std::string const & text)
{
    std::vector<std::string> parts;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ':'))
        parts.push_back(trim(tok));
    if (parts.empty() || parts.size() > 3)
        throw UsageError("ideal must be written n, a:b or m:a:b, got '" + text + "'");
    std::vector<Int> v;
    for (std::string const & p : parts) {
        try {
            v.push_back(parse_int(p, "ideal component"));
        } catch (DomainError const & e) {
            throw UsageError(e.what());
        }
    }
    if (v.size() == 1) {
        if (v[0] == 0)
            throw DomainError("the zero ideal is not allowed");
        return numberfield::QuadIdeal::principal(disc, v[0]);
    }
    if (v.size() == 2)
        return numberfield::QuadIdeal(disc, 1, v[0], v[1]);
    return numberfield::QuadIdeal(disc, v[0], v[1], v[2]);
}

} // namespace qvol::cli
