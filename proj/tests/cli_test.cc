#include "fixtures.hh"

#include "ratasp/cli.hh"
#include "ratasp/evaluator.hh"

#include <doctest.h>

#include <sstream>

using namespace ratasp;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(Options const &opts, std::string const &input = {}) {
    std::istringstream in(input);
    std::ostringstream out;
    std::ostringstream err;
    int code = run(opts, in, out, err);
    return {code, out.str(), err.str()};
}

Options solving(PrintMode print = PrintMode::Fraction) {
    Options o;
    o.mode = Mode::SolveReference;
    o.print = print;
    return o;
}

std::vector<std::string> lines(std::string const &text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) { out.push_back(l); }
    return out;
}

} // namespace

TEST_CASE("solve mode prints answer sets") {
    auto r = call(solving(), "a(3/4). pow(X,Y) :- a(X), &pow(X,2;Y).");
    CHECK(r.code == exit_ok);
    CHECK(r.out == "{a(3/4), pow(3/4,9/16)}\n");
    CHECK(r.err.empty());
    SUBCASE("decimal printing") {
        auto d = call(solving(PrintMode::Decimal), "a(3/4). pow(X,Y) :- a(X), &pow(X,2;Y).");
        CHECK(d.out == "{a(0.75), pow(0.75,0.5625)}\n");
    }
    SUBCASE("unsatisfiable") { CHECK(call(solving(), "a :- not a.").out == "UNSATISFIABLE\n"); }
    SUBCASE("model limit") {
        auto o = solving();
        o.models = 1;
        CHECK(lines(call(o, "a | b.").out).size() == 1);
        o.models = 0;
        CHECK(lines(call(o, "a | b.").out).size() == 2);
    }
}

TEST_CASE("input files") {
    auto o = solving();
    o.inputs = {(fixtures::directory() / "q3.lp").string()};
    auto fraction = call(o);
    REQUIRE(fraction.code == exit_ok);
    CHECK(fraction.out.find("avgCongestionLevel(7/225)") != std::string::npos);
    o.print = PrintMode::Decimal;
    auto decimal = call(o);
    CHECK(decimal.out.find("avgCongestionLevel(0.031111)") != std::string::npos);
    SUBCASE("fewer decimal digits") {
        o.decimal_digits = 2;
        CHECK(call(o).out.find("avgCongestionLevel(0.03)") != std::string::npos);
    }
    SUBCASE("several files form one program") {
        Options two = solving();
        two.inputs = {(fixtures::directory() / "r1.lp").string(), (fixtures::directory() / "pow.lp").string()};
        CHECK(call(two).code == exit_ok);
    }
}

TEST_CASE("decimal printing does not change membership") {
    for (auto const &name : fixtures::programs()) {
        CAPTURE(name);
        auto o = solving();
        o.inputs = {(fixtures::directory() / name).string()};
        auto fraction = call(o);
        o.print = PrintMode::Decimal;
        auto decimal = call(o);
        CHECK(fraction.code == decimal.code);
        CHECK(lines(fraction.out).size() == lines(decimal.out).size());
    }
}

TEST_CASE("weak constraints print costs") {
    auto r = call(solving(), "a | b. :~ a. [1/2@1] :~ b. [1@0]");
    CHECK(r.out == "{b}\nCOSTS 1:0 0:1\n");
}

TEST_CASE("ground modes") {
    Options numeric;
    auto n = call(numeric, "a | b.");
    CHECK(n.code == exit_ok);
    CHECK(n.out.starts_with("8 2 2 3 0 0\n0\n2 a\n3 b\n0\nB+\n0\nB-\n1\n0\n1\n"));
    Options text;
    text.mode = Mode::GroundText;
    CHECK(call(text, "p(1..2).").out == "p(1).\np(2).\n");
    SUBCASE("integer division") {
        text.integer_division = true;
        CHECK(call(text, "n(7). h(X/2) :- n(X).").out == "n(7).\nh(3).\n");
    }
}

TEST_CASE("exit codes") {
    SUBCASE("syntax error") {
        auto r = call(Options{}, "a(1).\nb :- .");
        CHECK(r.code == exit_input_error);
        CHECK(r.err.starts_with("<stdin>:2:"));
    }
    SUBCASE("unsafe rule") {
        auto r = call(Options{}, "p(X) :- q(Y).");
        CHECK(r.code == exit_input_error);
        CHECK(r.err.find(": error: ") != std::string::npos);
        CHECK(r.err.starts_with("<stdin>:1:"));
    }
    SUBCASE("missing file") {
        Options o;
        o.inputs = {"/nonexistent/input.lp"};
        CHECK(call(o).code == exit_input_error);
    }
    SUBCASE("bad decimal digits") {
        Options o;
        o.decimal_digits = max_decimal_digits + 1;
        CHECK(call(o, "a.").code == exit_input_error);
    }
    SUBCASE("grounding errors") {
        CHECK(call(Options{}, "p(1..a).").code == exit_grounding_error);
        CHECK(call(Options{}, "p :- #count{1:p} >= 1.").code == exit_grounding_error);
        CHECK(call(Options{}, "p(Y) :- &nope(1; Y).").code == exit_grounding_error);
    }
    SUBCASE("too large for the reference solver") {
        std::string text;
        for (std::size_t k = 0; k <= max_brute_force_atoms; ++k) {
            text += "a" + std::to_string(k) + " | b" + std::to_string(k) + ".\n";
        }
        CHECK(call(solving(), text).code == exit_too_large);
        // grounding alone is fine
        CHECK(call(Options{}, text).code == exit_ok);
    }
}

TEST_CASE("undefined arithmetic warnings are opt-in") {
    Options o;
    o.mode = Mode::GroundText;
    CHECK(call(o, "a(0). b(1/X) :- a(X).").err.empty());
    o.warn_undefined = true;
    CHECK(call(o, "a(0). b(1/X) :- a(X).").err.find("warning") != std::string::npos);
}
