#ifndef RATASP_TERM_HH
#define RATASP_TERM_HH

#include "ratasp/rational.hh"

#include <compare>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratasp {

class InternalError : public std::logic_error {
public:
    explicit InternalError(std::string const &what) : std::logic_error(what) { }
};

enum class TermKind : std::uint8_t { Number, Symbol, String, Variable, Function, Arithmetic };

// Range and Mod require integral operands; Neg is unary.
enum class ArithOp : std::uint8_t { Neg, Add, Sub, Mul, Div, Mod, Range };

char const *op_symbol(ArithOp op);

struct PrintOptions {
    bool decimal = false;
    int digits = max_decimal_digits;
};

class Term {
public:
    Term() = default;

    static Term number(Rational value);
    static Term symbol(std::string name);
    static Term string(std::string text);
    static Term variable(std::string name);
    // Arity 0 collapses to a symbolic constant.
    static Term function(std::string name, std::vector<Term> args);
    static Term arithmetic(ArithOp op, std::vector<Term> operands);
    static Term unary(ArithOp op, Term operand) { return arithmetic(op, {std::move(operand)}); }
    static Term binary(ArithOp op, Term lhs, Term rhs) { return arithmetic(op, {std::move(lhs), std::move(rhs)}); }

    TermKind kind() const { return kind_; }
    bool is_number() const { return kind_ == TermKind::Number; }
    bool is_variable() const { return kind_ == TermKind::Variable; }
    bool is_arithmetic() const { return kind_ == TermKind::Arithmetic; }

    Rational const &value() const { return value_; }
    std::string const &name() const { return name_; }
    ArithOp op() const { return op_; }
    std::vector<Term> const &args() const { return args_; }

    // No variables at any depth.
    bool ground() const;
    // Ground and free of arithmetic: an element of the Herbrand universe.
    bool evaluated() const;
    bool contains_range() const;
    void collect_variables(std::set<std::string> &out) const;

    friend bool operator==(Term const &a, Term const &b) = default;

private:
    TermKind kind_ = TermKind::Number;
    ArithOp op_ = ArithOp::Neg;
    Rational value_;
    std::string name_;
    std::vector<Term> args_;
};

// The total order on evaluated ground terms:
// rationals < symbols < strings < functional terms. Throws InternalError on
// variables or arithmetic.
std::strong_ordering term_order(Term const &t, Term const &u);
std::strong_ordering tuple_order(std::vector<Term> const &a, std::vector<Term> const &b);

struct TermLess {
    bool operator()(Term const &a, Term const &b) const { return term_order(a, b) < 0; }
};

struct TupleLess {
    bool operator()(std::vector<Term> const &a, std::vector<Term> const &b) const {
        return tuple_order(a, b) < 0;
    }
};

// Folds rational literal forms (-p, p/q over integer constants) into a single
// rational constant in standard form. Other arithmetic is left intact.
// With integer_division, p/q folds to the truncated quotient.
Term standardize(Term const &t, bool integer_division = false);

std::string to_string(Term const &t, PrintOptions const &opts = {});
std::string to_string(std::vector<Term> const &tuple, PrintOptions const &opts = {});

std::ostream &operator<<(std::ostream &out, Term const &t);

} // namespace ratasp

#endif // RATASP_TERM_HH
