#include "ratasp/cli.hh"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char **argv) {
    using ratasp::Mode;
    using ratasp::PrintMode;

    std::map<std::string, Mode> const modes{
        {"ground-numeric", Mode::GroundNumeric},
        {"ground-text", Mode::GroundText},
        {"solve-reference", Mode::SolveReference},
    };
    std::map<std::string, PrintMode> const prints{{"fraction", PrintMode::Fraction}, {"decimal", PrintMode::Decimal}};

    ratasp::Options opts;
    std::string mode = "ground-numeric";
    std::string print = "fraction";
    CLI::App app{"Grounder and reference evaluator for ASP with exact rational terms"};
    app.add_option("inputs", opts.inputs, "Input files (default: standard input)");
    app.add_option("--mode", mode, "Output: ground-numeric (default), ground-text or solve-reference")
        ->check(CLI::IsMember({"ground-numeric", "ground-text", "solve-reference"}, CLI::ignore_case))
        ->type_name("MODE");
    app.add_option("--decimal-digits", opts.decimal_digits, "Decimal places kept and printed (0-6, default 6)")
        ->check(CLI::Range(0, ratasp::max_decimal_digits))
        ->type_name("N");
    app.add_option("--print", print, "Rational rendering: fraction (default) or decimal")
        ->check(CLI::IsMember({"fraction", "decimal"}, CLI::ignore_case))
        ->type_name("FORMAT");
    app.add_flag("--integer-division", opts.integer_division, "'/' on integers truncates toward zero");
    app.add_flag("--warn-undefined", opts.warn_undefined, "Report substitutions dropped by undefined arithmetic");
    app.add_option("--models", opts.models, "Answer sets to print in solve mode (0 = all)")->type_name("N");
    try {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const &e) {
        // --help and --version exit 0; usage errors share the input error code
        return app.exit(e) == 0 ? ratasp::exit_ok : ratasp::exit_input_error;
    }
    opts.mode = modes.at(CLI::detail::to_lower(mode));
    opts.print = prints.at(CLI::detail::to_lower(print));
    return ratasp::run(opts, std::cin, std::cout, std::cerr);
}
