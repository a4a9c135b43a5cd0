#ifndef RATASP_EMITTER_HH
#define RATASP_EMITTER_HH

#include "ratasp/ground_program.hh"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ratasp {

class IoError : public std::runtime_error {
public:
    explicit IoError(std::string const &what) : std::runtime_error(what) { }
};

using NumericId = std::uint64_t;

// One statement of the lparse/smodels numeric format. Literal lists keep the
// format's order: negative literals first.
struct NumericRule {
    enum class Kind : std::uint8_t { Basic = 1, Constraint = 2, Weight = 5, Minimize = 6, Disjunctive = 8 };

    Kind kind = Kind::Basic;
    std::vector<NumericId> head;
    std::vector<NumericId> neg;
    std::vector<NumericId> pos;
    // Weight and Minimize: one weight per literal, negative literals first.
    std::vector<Integer> weights;
    // Constraint and Weight.
    Integer bound = 0;

    friend bool operator==(NumericRule const &, NumericRule const &) = default;
};

// Line rendering, e.g. "5 4 2 2 0 1 2 1 3".
std::string to_string(NumericRule const &r);

struct NumericProgram {
    std::vector<NumericRule> rules;
    std::vector<std::pair<NumericId, std::string>> symbols;
    std::vector<NumericId> compute_pos;
    std::vector<NumericId> compute_neg;
    std::uint64_t models = 1;

    friend bool operator==(NumericProgram const &, NumericProgram const &) = default;
};

struct Scaled {
    std::vector<Integer> weights;
    Integer bound;
};

// Multiplies weights and bound by the lcm of all their denominators.
Scaled scale(std::vector<Rational> const &weights, Rational const &bound);

struct EmitOptions {
    // Id of the first source atom. The default reserves id 1 for the false
    // atom heading integrity constraints; with 1 the false atom is allocated
    // after the auxiliaries, on first use.
    NumericId first_atom_id = 2;
    PrintOptions print;
};

// Allocates fresh auxiliary ids and collects the statements defining them.
class AuxAllocator {
public:
    explicit AuxAllocator(NumericId next) : next_(next) { }
    NumericId fresh() { return next_++; }
    NumericId peek() const { return next_; }

private:
    NumericId next_;
};

// Translates a ground aggregate into an auxiliary atom that is true exactly
// when the aggregate (ignoring its default negation) holds. `ids` maps atom
// table indices to numeric ids; defining statements are appended to `out`.
NumericId normalize_aggregate(GroundAggregate const &a, std::vector<NumericId> const &ids, AuxAllocator &aux,
                              std::vector<NumericRule> &out);

NumericProgram translate(GroundProgram const &g, EmitOptions const &opts = {});
void write(NumericProgram const &p, std::ostream &out);
void emit(GroundProgram const &g, std::ostream &out, EmitOptions const &opts = {});

// Reader for the format written by write(); throws std::runtime_error on
// malformed input.
NumericProgram read_numeric(std::istream &in);

} // namespace ratasp

#endif // RATASP_EMITTER_HH
