#ifndef RATASP_GROUND_PROGRAM_HH
#define RATASP_GROUND_PROGRAM_HH

#include "ratasp/ast.hh"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace ratasp {

// Dense 0-based index into the atom table. Numeric-format ids are assigned
// from it at emission time.
using AtomIndex = std::uint32_t;

struct GroundLiteral {
    AtomIndex atom = 0;
    bool naf = false;

    friend bool operator==(GroundLiteral const &, GroundLiteral const &) = default;
    friend auto operator<=>(GroundLiteral const &, GroundLiteral const &) = default;
};

struct GroundElement {
    std::vector<Term> tuple;
    std::vector<GroundLiteral> condition;

    friend bool operator==(GroundElement const &, GroundElement const &) = default;
};

struct GroundAggregate {
    bool naf = false;
    AggregateFunction fn = AggregateFunction::Count;
    Relation rel = Relation::Ge;
    Term guard;
    std::vector<GroundElement> elements;

    friend bool operator==(GroundAggregate const &, GroundAggregate const &) = default;
};

struct GroundRule {
    std::vector<AtomIndex> head;
    std::vector<GroundLiteral> body;
    std::vector<GroundAggregate> aggregates;

    bool is_fact() const { return head.size() == 1 && body.empty() && aggregates.empty(); }
};

struct GroundWeak {
    std::vector<GroundLiteral> body;
    std::vector<GroundAggregate> aggregates;
    Term weight;
    Term level;
    std::vector<Term> terms;
};

// Bijection between ground classical atoms and dense indices, in insertion
// order.
class AtomTable {
public:
    // Returns the index and whether the atom was new.
    std::pair<AtomIndex, bool> insert(Atom atom);
    std::optional<AtomIndex> find(Atom const &atom) const;
    std::optional<AtomIndex> find(std::string const &key) const;

    Atom const &atom(AtomIndex i) const { return atoms_[i]; }
    // Canonical fraction rendering, unique per atom.
    std::string const &key(AtomIndex i) const { return keys_[i]; }
    std::size_t size() const { return atoms_.size(); }

private:
    std::vector<Atom> atoms_;
    std::vector<std::string> keys_;
    std::unordered_map<std::string, AtomIndex> index_;
};

struct GroundProgram {
    AtomTable atoms;
    std::vector<GroundRule> rules;
    std::vector<GroundWeak> weaks;
    std::vector<bool> facts;

    bool is_fact(AtomIndex i) const { return i < facts.size() && facts[i]; }
    // Inserts an atom (growing the fact vector alongside).
    AtomIndex add_atom(Atom atom);
    void add_fact(Atom atom);
};

// {{{ aggregate semantics shared by grounder, emitter and evaluator

using TupleSet = std::set<std::vector<Term>, TupleLess>;

// An aggregate result: a term or one of the two infinite sentinels.
struct AggregateValue {
    enum class Kind : std::uint8_t { NegInf, Finite, PosInf };
    Kind kind = Kind::Finite;
    Term term;

    static AggregateValue finite(Term t) { return {Kind::Finite, std::move(t)}; }
    static AggregateValue neg_inf() { return {Kind::NegInf, {}}; }
    static AggregateValue pos_inf() { return {Kind::PosInf, {}}; }
};

AggregateValue aggregate_value(AggregateFunction fn, TupleSet const &tuples);
// -inf precedes and +inf follows every term.
std::strong_ordering compare(AggregateValue const &v, Term const &guard);
bool aggregate_holds(AggregateFunction fn, Relation rel, Term const &guard, TupleSet const &tuples);

// }}}

std::string to_string(GroundRule const &r, AtomTable const &atoms, PrintOptions const &opts = {});
std::string to_string(GroundWeak const &w, AtomTable const &atoms, PrintOptions const &opts = {});
std::string to_string(GroundAggregate const &a, AtomTable const &atoms, PrintOptions const &opts = {});
// Text-ground format: one statement per line, rules then weak constraints.
std::string to_string(GroundProgram const &g, PrintOptions const &opts = {});

} // namespace ratasp

#endif // RATASP_GROUND_PROGRAM_HH
