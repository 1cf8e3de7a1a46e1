#include "qvol/cli.hpp"

#include <sstream>

namespace qvol::cli {

std::string format_real(Real const & x, int digits)
{
    return x.str(digits, std::ios_base::fmtflags(0));
}

Report::Report(std::vector<std::string> const & input, Format format, int digits)
    : format_(format), digits_(digits)
{
    std::string echo;
    for (std::string const & a : input)
        echo += (echo.empty() ? "" : " ") + a;
    put("version", std::string("qvol ") + kVersion);
    put("input", echo);
    put("convention", "d=radicand D=discriminant primary=D");
}

void Report::put(std::string const & key, std::string const & value)
{
    lines_.push_back({false, key, value});
}

void Report::put(std::string const & key, Int const & value) { put(key, to_string(value)); }

void Report::put(std::string const & key, Real const & value) { put(key, format_real(value, digits_)); }

void Report::put(std::string const & key, quadratic::QuadraticIrrational const & value)
{
    put(key, value.str(format_ == Format::human));
}

void Report::put(std::string const & key, numberfield::QuadIdeal const & value)
{
    if (format_ == Format::human) {
        put(key, value.str());
        return;
    }
    put(key, to_string(value.content()) + ":" + to_string(value.a()) + ":" + to_string(value.b()));
}

void Report::put(std::string const & key, bool value) { put(key, value ? "true" : "false"); }

void Report::put(std::string const & key, std::uint64_t value) { put(key, std::to_string(value)); }

void Report::heading(std::string const & title) { lines_.push_back({true, title, ""}); }

void Report::note(std::string const & text) { put("note." + std::to_string(notes_++), text); }

std::string Report::render() const
{
    std::ostringstream os;
    if (format_ == Format::machine) {
        for (Line const & l : lines_)
            if (!l.heading)
                os << l.key << '=' << l.value << '\n';
        return os.str();
    }
    std::size_t width = 0;
    for (Line const & l : lines_)
        if (!l.heading)
            width = std::max(width, l.key.size());
    for (Line const & l : lines_) {
        if (l.heading) {
            os << '\n' << l.key << '\n';
            continue;
        }
        os << l.key << ':' << std::string(width - l.key.size() + 1, ' ') << l.value << '\n';
    }
    return os.str();
}

} // namespace qvol::cli
