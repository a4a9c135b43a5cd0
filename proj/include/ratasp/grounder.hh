#ifndef RATASP_GROUNDER_HH
#define RATASP_GROUNDER_HH

#include "ratasp/builtins.hh"
#include "ratasp/ground_program.hh"

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace ratasp {

class GroundingError : public std::runtime_error {
public:
    explicit GroundingError(std::string const &what) : std::runtime_error(what) { }
};

// A range bound that does not evaluate to an integer.
class RangeTypeError : public GroundingError {
public:
    explicit RangeTypeError(std::string const &what) : GroundingError(what) { }
};

// A predicate depending on itself through an aggregate.
class AggregateRecursionError : public GroundingError {
public:
    explicit AggregateRecursionError(std::string const &what) : GroundingError(what) { }
};

struct GroundOptions {
    // '/' on two integers truncates toward zero (ASP-Core-2 compatibility).
    bool integer_division = false;
    // Report skipped not-well-formed substitutions on `diagnostics`.
    bool warn_undefined = false;
    std::ostream *diagnostics = nullptr;
};

using Substitution = std::map<std::string, Term>;

// Value of a ground arithmetic term; nullopt when undefined (division by
// zero, non-integral '\' operands, arithmetic over non-numbers). Ranges are
// generators and never evaluate to a single value.
std::optional<Rational> eval_arith(Term const &t, bool integer_division = false);

// Replaces every maximal arithmetic subterm of a ground term by its value.
std::optional<Term> evaluate(Term const &t, bool integer_division = false);

// Applies the substitution and evaluates; unbound variables are left in
// place (and then arithmetic over them stays unevaluated).
std::optional<Term> instantiate(Term const &t, Substitution const &s, bool integer_division = false);

// Evaluates &name(inputs; Z) through the builtin registry; nullopt means the
// substitution is dropped.
std::optional<Term> eval_external(std::string const &name, std::vector<Term> const &inputs);

// Bottom-up instantiation of a safe program.
GroundProgram ground(SourceProgram const &p, GroundOptions const &opts = {});

} // namespace ratasp

#endif // RATASP_GROUNDER_HH
