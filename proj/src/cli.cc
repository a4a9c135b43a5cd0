#include "ratasp/cli.hh"

#include "ratasp/emitter.hh"
#include "ratasp/evaluator.hh"
#include "ratasp/grounder.hh"
#include "ratasp/parser.hh"

#include <fstream>
#include <iostream>
#include <sstream>

namespace ratasp {

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SourceProgram read_program(Options const &opts, std::istream &in) {
    ParseOptions po;
    po.decimal_digits = opts.decimal_digits;
    po.integer_division = opts.integer_division;
    auto parse = [&](std::istream &stream) {
        std::ostringstream text;
        text << stream.rdbuf();
        return parse_program(text.str(), po);
    };
    if (opts.inputs.empty()) { return parse(in); }
    SourceProgram prg;
    for (auto const &path : opts.inputs) {
        std::ifstream file(path);
        if (!file) { throw InputError("cannot open input file " + path); }
        po.file = path;
        auto part = parse(file);
        prg.rules.insert(prg.rules.end(), part.rules.begin(), part.rules.end());
        prg.weaks.insert(prg.weaks.end(), part.weaks.begin(), part.weaks.end());
    }
    return prg;
}

void solve(GroundProgram const &g, Options const &opts, PrintOptions const &print, std::ostream &out) {
    bool optimize = !g.weaks.empty();
    auto sets = optimize ? optimal_answer_sets(g) : answer_sets(g);
    if (sets.empty()) {
        out << "UNSATISFIABLE\n";
        return;
    }
    std::uint64_t printed = 0;
    for (auto const &i : sets) {
        if (opts.models != 0 && printed++ == opts.models) { break; }
        out << format_answer_set(g, i, print) << '\n';
        if (optimize) { out << format_costs(g, costs(g, i), print) << '\n'; }
    }
}

} // namespace

int run(Options const &opts, std::istream &in, std::ostream &out, std::ostream &err) {
    try {
        if (opts.decimal_digits < 0 || opts.decimal_digits > max_decimal_digits) {
            throw InputError("decimal digits must be between 0 and " + std::to_string(max_decimal_digits));
        }
        auto prg = read_program(opts, in);
        auto violations = check_safety(prg);
        if (!violations.empty()) {
            for (auto const &v : violations) { err << to_string(v.loc) << ": error: " << v.message << '\n'; }
            return exit_input_error;
        }
        GroundOptions go;
        go.integer_division = opts.integer_division;
        go.warn_undefined = opts.warn_undefined;
        go.diagnostics = &err;
        auto g = ground(prg, go);
        PrintOptions print{opts.print == PrintMode::Decimal, opts.decimal_digits};
        switch (opts.mode) {
            case Mode::GroundNumeric: emit(g, out, EmitOptions{2, print}); break;
            case Mode::GroundText: out << to_string(g, print); break;
            case Mode::SolveReference: solve(g, opts, print, out); break;
        }
        out.flush();
        return exit_ok;
    }
    catch (SyntaxError const &e) {
        err << e.what() << '\n';
        return exit_input_error;
    }
    catch (InputError const &e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    catch (MalformedDecimal const &e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    catch (ZeroDenominator const &e) {
        err << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    catch (GroundingError const &e) {
        err << "error: " << e.what() << '\n';
        return exit_grounding_error;
    }
    catch (ExternalCallError const &e) {
        err << "error: " << e.what() << '\n';
        return exit_grounding_error;
    }
    catch (IoError const &e) {
        err << "error: " << e.what() << '\n';
        return exit_grounding_error;
    }
    catch (TooLargeForBruteForce const &e) {
        err << "error: " << e.what() << '\n';
        return exit_too_large;
    }
}

} // namespace ratasp
