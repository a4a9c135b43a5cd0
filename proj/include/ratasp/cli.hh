#ifndef RATASP_CLI_HH
#define RATASP_CLI_HH

#include "ratasp/rational.hh"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ratasp {

enum class Mode : std::uint8_t { GroundNumeric, GroundText, SolveReference };
enum class PrintMode : std::uint8_t { Fraction, Decimal };

struct Options {
    // Empty: read standard input.
    std::vector<std::string> inputs;
    Mode mode = Mode::GroundNumeric;
    int decimal_digits = max_decimal_digits;
    PrintMode print = PrintMode::Fraction;
    bool integer_division = false;
    bool warn_undefined = false;
    // Answer sets printed in solve mode; 0 prints all.
    std::uint64_t models = 0;
};

enum ExitCode : int {
    exit_ok = 0,
    exit_input_error = 1,
    exit_grounding_error = 2,
    exit_too_large = 3,
};

// Parses, grounds and then emits or solves. Output goes to `out`,
// diagnostics to `err`.
int run(Options const &opts, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace ratasp

#endif // RATASP_CLI_HH
