#include "ratasp/ground_program.hh"

namespace ratasp {

std::pair<AtomIndex, bool> AtomTable::insert(Atom atom) {
    std::string key = to_string(atom);
    auto [it, added] = index_.emplace(key, static_cast<AtomIndex>(atoms_.size()));
    if (added) {
        atoms_.push_back(std::move(atom));
        keys_.push_back(std::move(key));
    }
    return {it->second, added};
}

std::optional<AtomIndex> AtomTable::find(Atom const &atom) const {
    return find(to_string(atom));
}

std::optional<AtomIndex> AtomTable::find(std::string const &key) const {
    auto it = index_.find(key);
    if (it == index_.end()) { return std::nullopt; }
    return it->second;
}

AtomIndex GroundProgram::add_atom(Atom atom) {
    auto idx = atoms.insert(std::move(atom)).first;
    if (facts.size() < atoms.size()) { facts.resize(atoms.size(), false); }
    return idx;
}

void GroundProgram::add_fact(Atom atom) {
    auto idx = add_atom(std::move(atom));
    if (!facts[idx]) {
        facts[idx] = true;
        rules.push_back(GroundRule{{idx}, {}, {}});
    }
}

AggregateValue aggregate_value(AggregateFunction fn, TupleSet const &tuples) {
    switch (fn) {
        case AggregateFunction::Count:
            return AggregateValue::finite(Term::number(Rational(static_cast<std::int64_t>(tuples.size()))));
        case AggregateFunction::Sum: {
            Rational sum;
            for (auto const &t : tuples) {
                if (!t.empty() && t.front().is_number()) { sum = sum + t.front().value(); }
            }
            return AggregateValue::finite(Term::number(std::move(sum)));
        }
        case AggregateFunction::Max:
        case AggregateFunction::Min: {
            bool is_max = fn == AggregateFunction::Max;
            std::optional<Term> best;
            for (auto const &t : tuples) {
                if (t.empty()) { continue; }
                if (!best || (is_max ? term_order(t.front(), *best) > 0 : term_order(t.front(), *best) < 0)) {
                    best = t.front();
                }
            }
            if (!best) { return is_max ? AggregateValue::neg_inf() : AggregateValue::pos_inf(); }
            return AggregateValue::finite(std::move(*best));
        }
    }
    throw InternalError("unknown aggregate function");
}

std::strong_ordering compare(AggregateValue const &v, Term const &guard) {
    switch (v.kind) {
        case AggregateValue::Kind::NegInf: return std::strong_ordering::less;
        case AggregateValue::Kind::PosInf: return std::strong_ordering::greater;
        default: return term_order(v.term, guard);
    }
}

bool aggregate_holds(AggregateFunction fn, Relation rel, Term const &guard, TupleSet const &tuples) {
    return holds(rel, compare(aggregate_value(fn, tuples), guard));
}

namespace {

std::string literal_text(GroundLiteral const &l, AtomTable const &atoms, PrintOptions const &opts) {
    return (l.naf ? "not " : "") + to_string(atoms.atom(l.atom), opts);
}

std::string body_text(std::vector<GroundLiteral> const &body, std::vector<GroundAggregate> const &aggs,
                      AtomTable const &atoms, PrintOptions const &opts) {
    std::string out;
    bool first = true;
    for (auto const &l : body) {
        if (!first) { out += ", "; }
        first = false;
        out += literal_text(l, atoms, opts);
    }
    for (auto const &a : aggs) {
        if (!first) { out += ", "; }
        first = false;
        out += to_string(a, atoms, opts);
    }
    return out;
}

} // namespace

std::string to_string(GroundAggregate const &a, AtomTable const &atoms, PrintOptions const &opts) {
    std::string out = a.naf ? "not " : "";
    out += function_name(a.fn);
    out += '{';
    bool first = true;
    for (auto const &e : a.elements) {
        if (!first) { out += ';'; }
        first = false;
        out += to_string(e.tuple, opts);
        if (!e.condition.empty()) {
            out += ':';
            bool cf = true;
            for (auto const &c : e.condition) {
                if (!cf) { out += ','; }
                cf = false;
                out += literal_text(c, atoms, opts);
            }
        }
    }
    out += '}';
    out += relation_symbol(a.rel);
    out += to_string(a.guard, opts);
    return out;
}

std::string to_string(GroundRule const &r, AtomTable const &atoms, PrintOptions const &opts) {
    std::string out;
    bool first = true;
    for (auto h : r.head) {
        if (!first) { out += " | "; }
        first = false;
        out += to_string(atoms.atom(h), opts);
    }
    if (!r.body.empty() || !r.aggregates.empty()) {
        out += r.head.empty() ? ":- " : " :- ";
        out += body_text(r.body, r.aggregates, atoms, opts);
    }
    else if (r.head.empty()) {
        out += ":-";
    }
    return out + ".";
}

std::string to_string(GroundWeak const &w, AtomTable const &atoms, PrintOptions const &opts) {
    std::string out = ":~ " + body_text(w.body, w.aggregates, atoms, opts) + ". [" + to_string(w.weight, opts) + "@" +
                      to_string(w.level, opts);
    for (auto const &t : w.terms) { out += "," + to_string(t, opts); }
    return out + "]";
}

std::string to_string(GroundProgram const &g, PrintOptions const &opts) {
    std::string out;
    for (auto const &r : g.rules) { out += to_string(r, g.atoms, opts) + "\n"; }
    for (auto const &w : g.weaks) { out += to_string(w, g.atoms, opts) + "\n"; }
    return out;
}

} // namespace ratasp
