#ifndef RATASP_AST_HH
#define RATASP_AST_HH

#include "ratasp/term.hh"

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace ratasp {

struct Location {
    std::string file;
    int line = 1;
    int column = 1;
};

std::string to_string(Location const &loc);

enum class Relation : std::uint8_t { Lt, Le, Eq, Ne, Gt, Ge };

char const *relation_symbol(Relation rel);
// a rel b  <=>  b flip(rel) a
Relation flip(Relation rel);
bool holds(Relation rel, std::strong_ordering cmp);

enum class AggregateFunction : std::uint8_t { Count, Sum, Max, Min };

char const *function_name(AggregateFunction fn);

// A classical atom: p(t1,...,tn) or -p(t1,...,tn).
struct Atom {
    bool strong_neg = false;
    std::string predicate;
    std::vector<Term> args;

    // "p/2" or "-p/2"; strong negation is a distinct predicate.
    std::string signature() const;
    // The atom as a term, used to order atoms for printing.
    Term as_term() const;

    friend bool operator==(Atom const &, Atom const &) = default;
};

struct ClassicalLiteral {
    Atom atom;
    bool naf = false;

    friend bool operator==(ClassicalLiteral const &, ClassicalLiteral const &) = default;
};

struct BuiltinAtom {
    Relation rel = Relation::Eq;
    Term left;
    Term right;

    friend bool operator==(BuiltinAtom const &, BuiltinAtom const &) = default;
};

// &name(inputs; outputs)
struct ExternalLiteral {
    bool naf = false;
    std::string name;
    std::vector<Term> inputs;
    std::vector<Term> outputs;

    friend bool operator==(ExternalLiteral const &, ExternalLiteral const &) = default;
};

using NafLiteral = std::variant<ClassicalLiteral, BuiltinAtom>;

struct AggregateElement {
    std::vector<Term> terms;
    std::vector<NafLiteral> condition;

    friend bool operator==(AggregateElement const &, AggregateElement const &) = default;
};

// #fn{elements} rel guard
struct AggregateLiteral {
    bool naf = false;
    AggregateFunction fn = AggregateFunction::Count;
    std::vector<AggregateElement> elements;
    Relation rel = Relation::Ge;
    Term guard;

    friend bool operator==(AggregateLiteral const &, AggregateLiteral const &) = default;
};

using Literal = std::variant<ClassicalLiteral, BuiltinAtom, ExternalLiteral, AggregateLiteral>;

struct Rule {
    std::vector<Atom> head;
    std::vector<Literal> body;
    Location loc;

    bool is_fact() const;
    bool is_constraint() const { return head.empty(); }

    // Structural equality ignores the location.
    friend bool operator==(Rule const &a, Rule const &b) { return a.head == b.head && a.body == b.body; }
};

struct WeakConstraint {
    std::vector<Literal> body;
    Term weight;
    Term level = Term::number(0);
    std::vector<Term> terms;
    Location loc;

    friend bool operator==(WeakConstraint const &a, WeakConstraint const &b) {
        return a.body == b.body && a.weight == b.weight && a.level == b.level && a.terms == b.terms;
    }
};

struct SourceProgram {
    std::vector<Rule> rules;
    std::vector<WeakConstraint> weaks;

    friend bool operator==(SourceProgram const &, SourceProgram const &) = default;
};

struct VariableClassification {
    std::set<std::string> global;
    // One entry per aggregate element, in body order.
    std::vector<std::set<std::string>> local;
};

VariableClassification classify_variables(Rule const &r);
VariableClassification classify_variables(WeakConstraint const &c);

void collect_variables(Atom const &a, std::set<std::string> &out);
void collect_variables(NafLiteral const &l, std::set<std::string> &out);
// Variables of a body literal outside its aggregate elements.
void collect_global_variables(Literal const &l, std::set<std::string> &out);
void collect_variables(AggregateElement const &e, std::set<std::string> &out);

Atom standardize(Atom const &a, bool integer_division = false);
Literal standardize(Literal const &l, bool integer_division = false);
Rule standardize(Rule const &r, bool integer_division = false);
WeakConstraint standardize(WeakConstraint const &c, bool integer_division = false);
SourceProgram standardize(SourceProgram const &p, bool integer_division = false);

std::string to_string(Atom const &a, PrintOptions const &opts = {});
std::string to_string(NafLiteral const &l, PrintOptions const &opts = {});
std::string to_string(Literal const &l, PrintOptions const &opts = {});
std::string to_string(Rule const &r, PrintOptions const &opts = {});
std::string to_string(WeakConstraint const &c, PrintOptions const &opts = {});
// One statement per line.
std::string to_string(SourceProgram const &p, PrintOptions const &opts = {});

} // namespace ratasp

#endif // RATASP_AST_HH
