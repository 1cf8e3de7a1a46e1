#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qvol/cli.hpp"

using namespace qvol;
using namespace qvol::cli;
namespace fs = std::filesystem;

namespace {

struct Case {
    std::string name;
    std::vector<std::string> args;
};

std::string trim(std::string const & s)
{
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<Case> load_cases(fs::path const & file)
{
    std::vector<Case> out;
    std::ifstream in(file);
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty() || trim(line)[0] == '#')
            continue;
        auto bar = line.find('|');
        REQUIRE(bar != std::string::npos);
        Case c{trim(line.substr(0, bar)), {}};
        std::istringstream is(line.substr(bar + 1));
        std::string tok;
        while (is >> tok)
            c.args.push_back(tok);
        out.push_back(std::move(c));
    }
    return out;
}

std::string slurp(fs::path const & p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spit(fs::path const & p, std::string const & s)
{
    std::ofstream(p, std::ios::binary) << s;
}

struct Result {
    int code;
    std::string out, err;
};

Result invoke(std::vector<std::string> const & args)
{
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

// Input files are referenced relative to the source tree.
struct InSourceDir {
    fs::path saved = fs::current_path();
    InSourceDir() { fs::current_path(QVOL_SOURCE_DIR); }
    ~InSourceDir() { fs::current_path(saved); }
};

} // namespace

TEST_CASE("golden transcripts")
{
    InSourceDir here;
    fs::path const dir = fs::path("tests") / "golden";
    bool const update = std::getenv("QVOL_UPDATE_GOLDEN") != nullptr;
    auto cases = load_cases(dir / "cases.txt");
    REQUIRE(cases.size() > 20);
    for (Case const & c : cases) {
        CAPTURE(c.name);
        Result r = invoke(c.args);
        fs::path const base = dir / c.name;
        if (update) {
            spit(base.string() + ".out", r.out);
            spit(base.string() + ".err", r.err);
            spit(base.string() + ".code", std::to_string(r.code) + "\n");
            continue;
        }
        REQUIRE(fs::exists(base.string() + ".code"));
        CHECK(std::to_string(r.code) + "\n" == slurp(base.string() + ".code"));
        CHECK(r.out == slurp(base.string() + ".out"));
        CHECK(r.err == slurp(base.string() + ".err"));
    }
}

TEST_CASE("every subcommand has a passing and a failing transcript")
{
    InSourceDir here;
    auto cases = load_cases(fs::path("tests") / "golden" / "cases.txt");
    for (std::string sub : {"theta", "field", "volume", "classify", "density", "factor", "divide",
                            "next-prime", "telescope"}) {
        CAPTURE(sub);
        bool ok = false, bad = false;
        for (Case const & c : cases) {
            if (std::find(c.args.begin(), c.args.end(), sub) == c.args.end())
                continue;
            int code = invoke(c.args).code;
            ok |= code == 0;
            bad |= code != 0;
        }
        CHECK(ok);
        CHECK(bad);
    }
}

TEST_CASE("exit codes")
{
    CHECK(invoke({"theta", "1"}).code == 0);
    CHECK(invoke({"theta", "x"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"field", "1"}).code == 1);
    CHECK(invoke({"volume", "1"}).code == 2);
    CHECK(invoke({"--format", "xml", "theta", "1"}).code == 2);
    Result r = invoke({"classify", "1", "0", "0", "1"});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.starts_with("error: "));
}

TEST_CASE("reports")
{
    Report h({"theta", "1"}, Format::human, 6);
    h.put("alpha", Int(3));
    h.put("a.longer.key", true);
    h.note("hello");
    std::string s = h.render();
    CHECK(s.find("version:      qvol 1.0.0\n") != std::string::npos);
    CHECK(s.find("alpha:        3\n") != std::string::npos);
    CHECK(s.find("a.longer.key: true\n") != std::string::npos);
    CHECK(s.find("note.0:       hello\n") != std::string::npos);

    Report m({"theta", "1"}, Format::machine, 6);
    m.put("theta", quadratic::QuadraticIrrational(1, 1, 2, 5));
    m.put("ideal", numberfield::QuadIdeal(40, 1, 2, 0));
    m.put("x", Real("0.1234567891"));
    std::string t = m.render();
    CHECK(t.find("theta=(1+sqrt(5))/2\n") != std::string::npos);
    CHECK(t.find("ideal=1:2:0\n") != std::string::npos);
    CHECK(t.find("x=0.123457\n") != std::string::npos);
    for (unsigned char ch : t)
        CHECK(ch < 128);

    CHECK(format_real(Real("2.5"), 6) == "2.5");
    CHECK(format_real(Real("0.000012345678"), 3) == "1.23e-05");
}

TEST_CASE("input parsing")
{
    CHECK(split_csv("a, \"b,c\" ,d") == std::vector<std::string>{"a", "b,c", "d"});
    CHECK(split_csv("\"say \"\"hi\"\"\"") == std::vector<std::string>{"say \"hi\""});
    CHECK_THROWS_AS(split_csv("\"open"), DomainError);

    CHECK(parse_surgery("1-2-3") == std::vector<Int>{1, 2, 3});
    CHECK(parse_surgery(" 4 5 ") == std::vector<Int>{4, 5});
    CHECK_THROWS_AS(parse_surgery("1--2"), DomainError);
    CHECK_THROWS_AS(parse_surgery("1 0"), DomainError);
    CHECK_THROWS_AS(parse_surgery(""), DomainError);

    CHECK(parse_decimal("2.5e1", "x") == 25);
    CHECK_THROWS_AS(parse_decimal("2.5x", "x"), DomainError);

    CHECK(parse_ideal(40, "6") == numberfield::QuadIdeal::principal(40, Int(6)));
    CHECK(parse_ideal(40, "2:0") == numberfield::QuadIdeal(40, 1, 2, 0));
    CHECK(parse_ideal(40, "3:2:0") == numberfield::QuadIdeal(40, 3, 2, 0));
    CHECK_THROWS_AS(parse_ideal(40, "1:2:3:4"), UsageError);
    CHECK_THROWS_AS(parse_ideal(40, "a:b"), UsageError);
    CHECK_THROWS_AS(parse_ideal(40, "3:0"), DomainError);
}

TEST_CASE("observation files")
{
    std::istringstream good("# comment\nsurgery,volume,source\n1,0.5,a\n\"1-2\",0.7,\"b, c\"\n");
    auto obs = read_observations(good, "good.csv");
    REQUIRE(obs.size() == 2);
    CHECK(obs[1].surgery == std::vector<Int>{1, 2});
    CHECK(obs[1].source == "b, c");

    std::istringstream bad("surgery,volume,source\n1,zero,a\n0,1,b\n2,1\n3,-1,c\n");
    try {
        read_observations(bad, "bad.csv");
        FAIL("expected a FileError");
    } catch (FileError const & e) {
        REQUIRE(e.errors.size() == 4);
        CHECK(e.errors[0].line == 2);
        CHECK(e.errors[3].line == 5);
        CHECK(std::string(e.what()).starts_with("bad.csv: 4 malformed lines"));
    }

    std::istringstream empty("surgery,volume,source\n");
    CHECK_THROWS_AS(read_observations(empty, "e.csv"), FileError);
    std::istringstream headless("1,0.5,a\n");
    CHECK_THROWS_AS(read_observations(headless, "h.csv"), FileError);
}

TEST_CASE("chain files")
{
    std::istringstream good("# d=10\n# t=5\nlabel,a,b,volume,content\nM0,1,0,1,1\nM1,2,0,2,1\n");
    auto c = read_chain(good, "c.csv");
    CHECK(c.d == 10);
    CHECK(c.meta.at("t") == "5");
    REQUIRE(c.members.size() == 2);
    CHECK(c.members[1].ideal == numberfield::QuadIdeal(40, 1, 2, 0));
    CHECK(*c.members[1].volume == 2);

    std::istringstream no_d("label,a,b,volume\nM0,1,0,1\n");
    CHECK_THROWS_AS(read_chain(no_d, "n.csv"), FileError);
    std::istringstream bad_d("# d=12\nlabel,a,b,volume\n");
    CHECK_THROWS_AS(read_chain(bad_d, "b.csv"), FileError);
    std::istringstream bad_row("# d=10\nlabel,a,b,volume\nM0,3,0,1\nM1,1,0\n");
    try {
        read_chain(bad_row, "r.csv");
        FAIL("expected a FileError");
    } catch (FileError const & e) {
        CHECK(e.errors.size() == 2);
    }
}
