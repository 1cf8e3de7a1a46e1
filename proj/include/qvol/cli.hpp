#pragma once

// Command-line front end: report documents, input files and subcommands.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qvol/bigint.hpp"
#include "qvol/commensurability.hpp"
#include "qvol/numberfield.hpp"
#include "qvol/quadratic.hpp"
#include "qvol/volume.hpp"

namespace qvol::cli {

inline constexpr char const * kVersion = "1.0.0";

enum class Format { human, machine };

/// Bad command-line input (exit status 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_real(Real const & x, int digits);

/*
 * Ordered key/value document. Every report starts with the tool version, the
 * echoed input and the d/D convention. Human format prints "key: value",
 * machine format "key=value" with ASCII-only values.
 */
class Report
{
  public:
    Report(std::vector<std::string> const & input, Format format, int digits);

    void put(std::string const & key, std::string const & value);
    void put(std::string const & key, char const * value) { put(key, std::string(value)); }
    void put(std::string const & key, Int const & value);
    void put(std::string const & key, Real const & value);
    void put(std::string const & key, quadratic::QuadraticIrrational const & value);
    void put(std::string const & key, numberfield::QuadIdeal const & value);
    void put(std::string const & key, bool value);
    void put(std::string const & key, std::uint64_t value);
    void put(std::string const & key, int value) { put(key, Int(value)); }
    /// Human format only.
    void heading(std::string const & title);
    void note(std::string const & text);

    Format format() const { return format_; }
    int digits() const { return digits_; }

    std::string render() const;

  private:
    struct Line {
        bool heading;
        std::string key, value;
    };
    Format format_;
    int digits_;
    std::vector<Line> lines_;
    std::size_t notes_ = 0;
};

/// Diagnostic for one line of an input file.
struct LineError {
    std::size_t line;
    std::string message;
};

/// Input file rejected; carries every diagnostic (exit status 1).
struct FileError : DomainError {
    FileError(std::string const & name, std::vector<LineError> errors);
    std::vector<LineError> errors;
};

/// Decimal number; throws DomainError naming `what`.
Real parse_decimal(std::string const & text, std::string const & what);

/// Splits one CSV line, honouring double quotes.
std::vector<std::string> split_csv(std::string const & line);

/// Surgery coefficients written as "1-2-3" or "1 2 3".
std::vector<Int> parse_surgery(std::string const & text);

/// CSV with header surgery,volume,source.
std::vector<volume::VolumeObservation> read_observations(std::istream & in, std::string const & name);

/*
 * Chain CSV: "# key=value" metadata lines (d, t, class, k, K), a header
 * label,a,b,volume[,content] and one member per line.
 */
struct ChainFile {
    std::map<std::string, std::string> meta;
    Int d;
    std::vector<commensurability::ManifoldIdeal> members;
};
ChainFile read_chain(std::istream & in, std::string const & name);

/// Whitespace or comma separated matrix entries.
std::vector<std::string> read_matrix_tokens(std::istream & in);

/// "n" -> (n); "a:b" -> [a, (b + sqrt D)/2]; "m:a:b" -> m [a, (b + sqrt D)/2].
numberfield::QuadIdeal parse_ideal(Int const & disc, std::string const & text);

int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err);

} // namespace qvol::cli
