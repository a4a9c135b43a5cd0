#include "ratasp/emitter.hh"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace ratasp {

std::string to_string(NumericRule const &r) {
    std::ostringstream out;
    out << static_cast<int>(r.kind);
    auto literals = [&] {
        out << ' ' << r.neg.size() + r.pos.size() << ' ' << r.neg.size();
    };
    auto ids = [&] {
        for (auto id : r.neg) { out << ' ' << id; }
        for (auto id : r.pos) { out << ' ' << id; }
    };
    switch (r.kind) {
        case NumericRule::Kind::Basic:
            out << ' ' << r.head.front();
            literals();
            ids();
            break;
        case NumericRule::Kind::Constraint:
            out << ' ' << r.head.front();
            literals();
            out << ' ' << r.bound;
            ids();
            break;
        case NumericRule::Kind::Weight:
            out << ' ' << r.head.front() << ' ' << r.bound;
            literals();
            ids();
            for (auto const &w : r.weights) { out << ' ' << w; }
            break;
        case NumericRule::Kind::Minimize:
            out << " 0";
            literals();
            ids();
            for (auto const &w : r.weights) { out << ' ' << w; }
            break;
        case NumericRule::Kind::Disjunctive:
            out << ' ' << r.head.size();
            for (auto h : r.head) { out << ' ' << h; }
            literals();
            ids();
            break;
    }
    return out.str();
}

Scaled scale(std::vector<Rational> const &weights, Rational const &bound) {
    std::vector<Rational> all = weights;
    all.push_back(bound);
    Integer l = lcm_denominators(all);
    Scaled out;
    for (auto const &w : weights) { out.weights.push_back(w.num() * (l / w.den())); }
    out.bound = bound.num() * (l / bound.den());
    return out;
}

namespace {

struct Lit {
    NumericId id = 0;
    bool neg = false;
};

Lit complement(Lit l) { return {l.id, !l.neg}; }

NumericRule basic(NumericId head, std::vector<Lit> const &body) {
    NumericRule r;
    r.kind = NumericRule::Kind::Basic;
    r.head = {head};
    for (auto const &l : body) { (l.neg ? r.neg : r.pos).push_back(l.id); }
    return r;
}

// Splits (literal, weight) pairs into the negative-first layout.
void weighted(NumericRule &r, std::vector<std::pair<Lit, Integer>> const &entries) {
    for (bool neg : {true, false}) {
        for (auto const &[l, w] : entries) {
            if (l.neg != neg) { continue; }
            (neg ? r.neg : r.pos).push_back(l.id);
            r.weights.push_back(w);
        }
    }
}

// Positive-weight form: a literal with weight w < 0 is replaced by its
// complement with weight -w, and -w is added to the bound.
std::vector<std::pair<Lit, Integer>> shift(std::vector<Lit> const &lits, std::vector<Integer> const &weights,
                                            Integer &bound) {
    std::vector<std::pair<Lit, Integer>> out;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (weights[i].is_zero()) { continue; }
        if (weights[i] < 0) {
            bound -= weights[i];
            out.emplace_back(complement(lits[i]), -weights[i]);
        }
        else {
            out.emplace_back(lits[i], weights[i]);
        }
    }
    return out;
}

class AggregateTranslator {
public:
    AggregateTranslator(GroundAggregate const &a, std::vector<NumericId> const &ids, AuxAllocator &aux,
                        std::vector<NumericRule> &out)
    : a_(a), ids_(ids), aux_(aux), out_(out) {
        collect();
    }

    NumericId run() {
        // min is handled as max with the comparison mirrored
        Relation rel = a_.rel;
        if (a_.fn == AggregateFunction::Min) {
            switch (rel) {
                case Relation::Le: rel = Relation::Ge; break;
                case Relation::Lt: rel = Relation::Gt; break;
                case Relation::Ge: rel = Relation::Le; break;
                case Relation::Gt: rel = Relation::Lt; break;
                default: break;
            }
        }
        switch (rel) {
            case Relation::Ge: return weak();
            case Relation::Gt: return strict();
            case Relation::Le: return define({{strict(), true}});
            case Relation::Lt: return define({{weak(), true}});
            case Relation::Eq: {
                auto w = weak();
                auto s = strict();
                return define({{w, false}, {s, true}});
            }
            case Relation::Ne: {
                auto w = weak();
                auto s = strict();
                auto id = aux_.fresh();
                out_.push_back(basic(id, {{w, true}}));
                out_.push_back(basic(id, {{s, false}}));
                return id;
            }
        }
        throw InternalError("unknown relation");
    }

private:
    Lit literal(GroundLiteral const &l) const { return {ids_[l.atom], l.naf}; }

    // One literal per distinct tuple; a tuple with several conditions (or a
    // condition of several literals) gets an auxiliary atom.
    void collect() {
        std::map<std::vector<Term>, std::size_t, TupleLess> index;
        std::vector<std::vector<std::vector<GroundLiteral> const *>> conditions;
        for (auto const &e : a_.elements) {
            auto [it, added] = index.emplace(e.tuple, tuples_.size());
            if (added) {
                tuples_.push_back(e.tuple);
                conditions.emplace_back();
            }
            conditions[it->second].push_back(&e.condition);
        }
        for (std::size_t i = 0; i < tuples_.size(); ++i) {
            auto const &conds = conditions[i];
            if (std::any_of(conds.begin(), conds.end(), [](auto const *c) { return c->empty(); })) {
                lits_.push_back(std::nullopt);
                continue;
            }
            if (conds.size() == 1 && conds.front()->size() == 1) {
                lits_.push_back(literal(conds.front()->front()));
                continue;
            }
            auto id = aux_.fresh();
            for (auto const *c : conds) {
                std::vector<Lit> body;
                for (auto const &l : *c) { body.push_back(literal(l)); }
                out_.push_back(basic(id, body));
            }
            lits_.push_back(Lit{id, false});
        }
    }

    NumericId define(std::vector<Lit> const &body) {
        auto id = aux_.fresh();
        out_.push_back(basic(id, body));
        return id;
    }

    NumericId weak() {
        if (!weak_) { weak_ = threshold(false); }
        return *weak_;
    }

    NumericId strict() {
        if (!strict_) { strict_ = threshold(true); }
        return *strict_;
    }

    // Atom for "value >= guard" (or "value > guard" when strict); for min
    // the mirrored "value <= guard" / "value < guard".
    NumericId threshold(bool is_strict) {
        // sums and counts are rationals, which precede every other term
        if (a_.fn != AggregateFunction::Max && a_.fn != AggregateFunction::Min && !a_.guard.is_number()) {
            return aux_.fresh();
        }
        switch (a_.fn) {
            case AggregateFunction::Sum: return sum_threshold(is_strict);
            case AggregateFunction::Count: return count_threshold(is_strict);
            default: return extremum_threshold(is_strict);
        }
    }

    NumericId sum_threshold(bool is_strict) {
        Rational certain;
        std::vector<Lit> lits;
        std::vector<Rational> weights;
        for (std::size_t i = 0; i < tuples_.size(); ++i) {
            auto const &t = tuples_[i];
            if (t.empty() || !t.front().is_number()) { continue; }
            if (!lits_[i]) {
                certain = certain + t.front().value();
                continue;
            }
            lits.push_back(*lits_[i]);
            weights.push_back(t.front().value());
        }
        auto scaled = scale(weights, a_.guard.value() - certain);
        Integer bound = scaled.bound + (is_strict ? 1 : 0);
        auto entries = shift(lits, scaled.weights, bound);
        auto id = aux_.fresh();
        if (bound <= 0) {
            out_.push_back(basic(id, {}));
            return id;
        }
        NumericRule r;
        r.kind = NumericRule::Kind::Weight;
        r.head = {id};
        r.bound = bound;
        weighted(r, entries);
        out_.push_back(std::move(r));
        return id;
    }

    NumericId count_threshold(bool is_strict) {
        std::int64_t certain = 0;
        std::vector<Lit> lits;
        for (auto const &l : lits_) {
            if (l) { lits.push_back(*l); }
            else { ++certain; }
        }
        Rational guard = a_.guard.value() - Rational(certain);
        Integer bound = is_strict ? floor(guard).num() + 1 : ceil(guard).num();
        auto id = aux_.fresh();
        if (bound <= 0) {
            out_.push_back(basic(id, {}));
            return id;
        }
        NumericRule r;
        r.kind = NumericRule::Kind::Constraint;
        r.head = {id};
        r.bound = bound;
        for (auto const &l : lits) { (l.neg ? r.neg : r.pos).push_back(l.id); }
        out_.push_back(std::move(r));
        return id;
    }

    NumericId extremum_threshold(bool is_strict) {
        bool is_max = a_.fn == AggregateFunction::Max;
        auto id = aux_.fresh();
        std::vector<NumericRule> rules;
        for (std::size_t i = 0; i < tuples_.size(); ++i) {
            auto const &t = tuples_[i];
            if (t.empty()) { continue; }
            auto c = term_order(t.front(), a_.guard);
            if (!is_max) { c = 0 <=> c; }
            if (is_strict ? c <= 0 : c < 0) { continue; }
            if (!lits_[i]) {
                out_.push_back(basic(id, {}));
                return id;
            }
            rules.push_back(basic(id, {*lits_[i]}));
        }
        out_.insert(out_.end(), rules.begin(), rules.end());
        return id;
    }

    GroundAggregate const &a_;
    std::vector<NumericId> const &ids_;
    AuxAllocator &aux_;
    std::vector<NumericRule> &out_;
    std::vector<std::vector<Term>> tuples_;
    std::vector<std::optional<Lit>> lits_;
    std::optional<NumericId> weak_;
    std::optional<NumericId> strict_;
};

class Translator {
public:
    Translator(GroundProgram const &g, EmitOptions const &opts)
    : g_(g), opts_(opts), aux_(opts.first_atom_id + g.atoms.size()) {
        if (opts.first_atom_id > 1) { false_ = 1; }
        for (AtomIndex i = 0; i < g.atoms.size(); ++i) { ids_.push_back(opts.first_atom_id + i); }
    }

    NumericProgram run() {
        for (auto const &r : g_.rules) { rule(r); }
        minimize();
        for (AtomIndex i = 0; i < g_.atoms.size(); ++i) {
            p_.symbols.emplace_back(ids_[i], to_string(g_.atoms.atom(i), opts_.print));
            if (g_.is_fact(i)) { p_.compute_pos.push_back(ids_[i]); }
        }
        if (false_) { p_.compute_neg.push_back(*false_); }
        return std::move(p_);
    }

private:
    std::vector<Lit> body(std::vector<GroundLiteral> const &lits, std::vector<GroundAggregate> const &aggs,
                          std::vector<NumericRule> &defs) {
        std::vector<Lit> out;
        for (auto const &l : lits) { out.push_back({ids_[l.atom], l.naf}); }
        for (auto const &a : aggs) { out.push_back({normalize_aggregate(a, ids_, aux_, defs), a.naf}); }
        return out;
    }

    NumericId false_atom() {
        if (!false_) { false_ = aux_.fresh(); }
        return *false_;
    }

    void rule(GroundRule const &r) {
        std::vector<NumericRule> defs;
        auto lits = body(r.body, r.aggregates, defs);
        NumericRule out;
        if (r.head.size() > 1) {
            out = basic(0, lits);
            out.kind = NumericRule::Kind::Disjunctive;
            out.head.clear();
            for (auto h : r.head) { out.head.push_back(ids_[h]); }
        }
        else {
            out = basic(r.head.empty() ? false_atom() : ids_[r.head.front()], lits);
        }
        p_.rules.push_back(std::move(out));
        p_.rules.insert(p_.rules.end(), defs.begin(), defs.end());
    }

    // Weak constraints sharing (weight, level, terms) contribute once; each
    // such tuple becomes one literal of the minimize statement of its level.
    void minimize() {
        std::map<std::vector<Term>, std::vector<GroundWeak const *>, TupleLess> groups;
        std::vector<std::vector<Term>> order;
        for (auto const &w : g_.weaks) {
            std::vector<Term> key{w.weight, w.level};
            key.insert(key.end(), w.terms.begin(), w.terms.end());
            auto [it, added] = groups.try_emplace(key);
            if (added) { order.push_back(key); }
            it->second.push_back(&w);
        }
        std::map<Rational, std::vector<std::pair<Lit, Rational>>, std::greater<>> levels;
        for (auto const &key : order) {
            auto const &ws = groups.at(key);
            Lit lit;
            if (ws.size() == 1 && ws.front()->body.size() == 1 && ws.front()->aggregates.empty()) {
                auto const &l = ws.front()->body.front();
                lit = {ids_[l.atom], l.naf};
            }
            else {
                lit = {aux_.fresh(), false};
                for (auto const *w : ws) {
                    std::vector<NumericRule> defs;
                    auto lits = body(w->body, w->aggregates, defs);
                    p_.rules.push_back(basic(lit.id, lits));
                    p_.rules.insert(p_.rules.end(), defs.begin(), defs.end());
                }
            }
            levels[key[1].value()].emplace_back(lit, key[0].value());
        }
        for (auto const &[level, entries] : levels) {
            std::vector<Lit> lits;
            std::vector<Rational> weights;
            for (auto const &[l, w] : entries) {
                lits.push_back(l);
                weights.push_back(w);
            }
            auto scaled = scale(weights, Rational(0));
            Integer unused = 0;
            NumericRule r;
            r.kind = NumericRule::Kind::Minimize;
            weighted(r, shift(lits, scaled.weights, unused));
            p_.rules.push_back(std::move(r));
        }
    }

    GroundProgram const &g_;
    EmitOptions const &opts_;
    AuxAllocator aux_;
    std::vector<NumericId> ids_;
    std::optional<NumericId> false_;
    NumericProgram p_;
};

} // namespace

NumericId normalize_aggregate(GroundAggregate const &a, std::vector<NumericId> const &ids, AuxAllocator &aux,
                              std::vector<NumericRule> &out) {
    return AggregateTranslator(a, ids, aux, out).run();
}

NumericProgram translate(GroundProgram const &g, EmitOptions const &opts) {
    return Translator(g, opts).run();
}

void write(NumericProgram const &p, std::ostream &out) {
    for (auto const &r : p.rules) { out << to_string(r) << '\n'; }
    out << "0\n";
    for (auto const &[id, text] : p.symbols) { out << id << ' ' << text << '\n'; }
    out << "0\nB+\n";
    for (auto id : p.compute_pos) { out << id << '\n'; }
    out << "0\nB-\n";
    for (auto id : p.compute_neg) { out << id << '\n'; }
    out << "0\n" << p.models << '\n';
    out.flush();
    if (!out) { throw IoError("failed to write numeric output"); }
}

void emit(GroundProgram const &g, std::ostream &out, EmitOptions const &opts) {
    write(translate(g, opts), out);
}

// {{{1 reader

namespace {

class Reader {
public:
    explicit Reader(std::istream &in) : in_(in) { }

    NumericProgram run() {
        NumericProgram p;
        for (;;) {
            auto line = next();
            std::istringstream ls(line);
            int kind = 0;
            ls >> kind;
            if (kind == 0) { break; }
            p.rules.push_back(rule(kind, ls, line));
        }
        for (;;) {
            auto line = next();
            if (line == "0") { break; }
            auto space = line.find(' ');
            if (space == std::string::npos) { fail(line); }
            p.symbols.emplace_back(std::stoull(line.substr(0, space)), line.substr(space + 1));
        }
        expect("B+");
        p.compute_pos = ids();
        expect("B-");
        p.compute_neg = ids();
        p.models = std::stoull(next());
        return p;
    }

private:
    [[noreturn]] static void fail(std::string const &line) {
        throw std::runtime_error("malformed numeric format line: '" + line + "'");
    }

    std::string next() {
        std::string line;
        if (!std::getline(in_, line)) { throw std::runtime_error("unexpected end of numeric format input"); }
        return line;
    }

    void expect(std::string const &text) {
        auto line = next();
        if (line != text) { fail(line); }
    }

    std::vector<NumericId> ids() {
        std::vector<NumericId> out;
        for (auto line = next(); line != "0"; line = next()) { out.push_back(std::stoull(line)); }
        return out;
    }

    template <class T> static T read(std::istringstream &ls, std::string const &line) {
        T v{};
        if (!(ls >> v)) { fail(line); }
        return v;
    }

    static NumericRule rule(int kind, std::istringstream &ls, std::string const &line) {
        NumericRule r;
        r.kind = static_cast<NumericRule::Kind>(kind);
        auto id = [&] { return read<NumericId>(ls, line); };
        auto integer = [&] {
            try {
                return parse_integer(read<std::string>(ls, line));
            }
            catch (std::invalid_argument const &) {
                fail(line);
            }
        };
        auto literals = [&](bool with_bound) {
            auto n = id();
            auto neg = id();
            if (neg > n) { fail(line); }
            if (with_bound) { r.bound = integer(); }
            for (NumericId i = 0; i < n; ++i) { (i < neg ? r.neg : r.pos).push_back(id()); }
            return n;
        };
        switch (r.kind) {
            case NumericRule::Kind::Basic:
                r.head = {id()};
                literals(false);
                break;
            case NumericRule::Kind::Constraint:
                r.head = {id()};
                literals(true);
                break;
            case NumericRule::Kind::Weight: {
                r.head = {id()};
                r.bound = integer();
                auto n = literals(false);
                for (NumericId i = 0; i < n; ++i) { r.weights.push_back(integer()); }
                break;
            }
            case NumericRule::Kind::Minimize: {
                if (id() != 0) { fail(line); }
                auto n = literals(false);
                for (NumericId i = 0; i < n; ++i) { r.weights.push_back(integer()); }
                break;
            }
            case NumericRule::Kind::Disjunctive: {
                auto h = id();
                for (NumericId i = 0; i < h; ++i) { r.head.push_back(id()); }
                literals(false);
                break;
            }
            default: fail(line);
        }
        std::string rest;
        if (ls >> rest) { fail(line); }
        return r;
    }

    std::istream &in_;
};

} // namespace

NumericProgram read_numeric(std::istream &in) {
    return Reader(in).run();
}

} // namespace ratasp
