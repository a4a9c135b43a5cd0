#include "ratasp/ast.hh"

#include <algorithm>

namespace ratasp {

std::string to_string(Location const &loc) {
    return (loc.file.empty() ? std::string("<stdin>") : loc.file) + ":" + std::to_string(loc.line) + ":" +
           std::to_string(loc.column);
}

char const *relation_symbol(Relation rel) {
    switch (rel) {
        case Relation::Lt: return "<";
        case Relation::Le: return "<=";
        case Relation::Eq: return "=";
        case Relation::Ne: return "!=";
        case Relation::Gt: return ">";
        case Relation::Ge: return ">=";
    }
    return "?";
}

Relation flip(Relation rel) {
    switch (rel) {
        case Relation::Lt: return Relation::Gt;
        case Relation::Le: return Relation::Ge;
        case Relation::Gt: return Relation::Lt;
        case Relation::Ge: return Relation::Le;
        default: return rel;
    }
}

bool holds(Relation rel, std::strong_ordering cmp) {
    switch (rel) {
        case Relation::Lt: return cmp < 0;
        case Relation::Le: return cmp <= 0;
        case Relation::Eq: return cmp == 0;
        case Relation::Ne: return cmp != 0;
        case Relation::Gt: return cmp > 0;
        case Relation::Ge: return cmp >= 0;
    }
    return false;
}

char const *function_name(AggregateFunction fn) {
    switch (fn) {
        case AggregateFunction::Count: return "#count";
        case AggregateFunction::Sum: return "#sum";
        case AggregateFunction::Max: return "#max";
        case AggregateFunction::Min: return "#min";
    }
    return "#?";
}

std::string Atom::signature() const {
    return (strong_neg ? "-" : "") + predicate + "/" + std::to_string(args.size());
}

Term Atom::as_term() const {
    return Term::function((strong_neg ? "-" : "") + predicate, args);
}

bool Rule::is_fact() const {
    return body.empty() && head.size() == 1 &&
           std::all_of(head[0].args.begin(), head[0].args.end(), [](Term const &t) { return t.evaluated(); });
}

void collect_variables(Atom const &a, std::set<std::string> &out) {
    for (auto const &t : a.args) { t.collect_variables(out); }
}

void collect_variables(NafLiteral const &l, std::set<std::string> &out) {
    if (auto const *c = std::get_if<ClassicalLiteral>(&l)) {
        collect_variables(c->atom, out);
    }
    else {
        auto const &b = std::get<BuiltinAtom>(l);
        b.left.collect_variables(out);
        b.right.collect_variables(out);
    }
}

void collect_variables(AggregateElement const &e, std::set<std::string> &out) {
    for (auto const &t : e.terms) { t.collect_variables(out); }
    for (auto const &l : e.condition) { collect_variables(l, out); }
}

void collect_global_variables(Literal const &l, std::set<std::string> &out) {
    std::visit(
        [&](auto const &x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ClassicalLiteral>) { collect_variables(x.atom, out); }
            else if constexpr (std::is_same_v<T, BuiltinAtom>) {
                x.left.collect_variables(out);
                x.right.collect_variables(out);
            }
            else if constexpr (std::is_same_v<T, ExternalLiteral>) {
                for (auto const &t : x.inputs) { t.collect_variables(out); }
                for (auto const &t : x.outputs) { t.collect_variables(out); }
            }
            else { x.guard.collect_variables(out); }
        },
        l);
}

namespace {

VariableClassification classify(std::vector<Literal> const &body, std::set<std::string> global) {
    VariableClassification vc;
    for (auto const &l : body) { collect_global_variables(l, global); }
    vc.global = std::move(global);
    for (auto const &l : body) {
        if (auto const *agg = std::get_if<AggregateLiteral>(&l)) {
            for (auto const &e : agg->elements) {
                std::set<std::string> vars;
                collect_variables(e, vars);
                std::set<std::string> local;
                for (auto const &v : vars) {
                    if (!vc.global.contains(v)) { local.insert(v); }
                }
                vc.local.push_back(std::move(local));
            }
        }
    }
    return vc;
}

} // namespace

VariableClassification classify_variables(Rule const &r) {
    std::set<std::string> head;
    for (auto const &a : r.head) { collect_variables(a, head); }
    return classify(r.body, std::move(head));
}

VariableClassification classify_variables(WeakConstraint const &c) {
    std::set<std::string> spec;
    c.weight.collect_variables(spec);
    c.level.collect_variables(spec);
    for (auto const &t : c.terms) { t.collect_variables(spec); }
    return classify(c.body, std::move(spec));
}

Atom standardize(Atom const &a, bool integer_division) {
    Atom out{a.strong_neg, a.predicate, {}};
    out.args.reserve(a.args.size());
    for (auto const &t : a.args) { out.args.push_back(standardize(t, integer_division)); }
    return out;
}

namespace {

NafLiteral standardize(NafLiteral const &l, bool integer_division) {
    if (auto const *c = std::get_if<ClassicalLiteral>(&l)) {
        return ClassicalLiteral{standardize(c->atom, integer_division), c->naf};
    }
    auto const &b = std::get<BuiltinAtom>(l);
    return BuiltinAtom{b.rel, standardize(b.left, integer_division), standardize(b.right, integer_division)};
}

std::vector<Term> standardize(std::vector<Term> const &ts, bool integer_division) {
    std::vector<Term> out;
    out.reserve(ts.size());
    for (auto const &t : ts) { out.push_back(standardize(t, integer_division)); }
    return out;
}

} // namespace

Literal standardize(Literal const &l, bool integer_division) {
    return std::visit(
        [&](auto const &x) -> Literal {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ClassicalLiteral> || std::is_same_v<T, BuiltinAtom>) {
                return std::visit([](auto const &y) -> Literal { return y; },
                                  standardize(NafLiteral{x}, integer_division));
            }
            else if constexpr (std::is_same_v<T, ExternalLiteral>) {
                return ExternalLiteral{x.naf, x.name, standardize(x.inputs, integer_division),
                                       standardize(x.outputs, integer_division)};
            }
            else {
                AggregateLiteral out{x.naf, x.fn, {}, x.rel, standardize(x.guard, integer_division)};
                for (auto const &e : x.elements) {
                    AggregateElement ne{standardize(e.terms, integer_division), {}};
                    for (auto const &c : e.condition) { ne.condition.push_back(standardize(c, integer_division)); }
                    out.elements.push_back(std::move(ne));
                }
                return out;
            }
        },
        l);
}

Rule standardize(Rule const &r, bool integer_division) {
    Rule out{{}, {}, r.loc};
    for (auto const &a : r.head) { out.head.push_back(standardize(a, integer_division)); }
    for (auto const &l : r.body) { out.body.push_back(standardize(l, integer_division)); }
    return out;
}

WeakConstraint standardize(WeakConstraint const &c, bool integer_division) {
    WeakConstraint out;
    for (auto const &l : c.body) { out.body.push_back(standardize(l, integer_division)); }
    out.weight = standardize(c.weight, integer_division);
    out.level = standardize(c.level, integer_division);
    out.terms = standardize(c.terms, integer_division);
    out.loc = c.loc;
    return out;
}

SourceProgram standardize(SourceProgram const &p, bool integer_division) {
    SourceProgram out;
    for (auto const &r : p.rules) { out.rules.push_back(standardize(r, integer_division)); }
    for (auto const &c : p.weaks) { out.weaks.push_back(standardize(c, integer_division)); }
    return out;
}

std::string to_string(Atom const &a, PrintOptions const &opts) {
    std::string out = a.strong_neg ? "-" : "";
    out += a.predicate;
    if (!a.args.empty()) { out += "(" + to_string(a.args, opts) + ")"; }
    return out;
}

std::string to_string(NafLiteral const &l, PrintOptions const &opts) {
    if (auto const *c = std::get_if<ClassicalLiteral>(&l)) {
        return (c->naf ? "not " : "") + to_string(c->atom, opts);
    }
    auto const &b = std::get<BuiltinAtom>(l);
    return to_string(b.left, opts) + relation_symbol(b.rel) + to_string(b.right, opts);
}

namespace {

std::string join_body(std::vector<Literal> const &body, PrintOptions const &opts) {
    std::string out;
    bool first = true;
    for (auto const &l : body) {
        if (!first) { out += ", "; }
        first = false;
        out += to_string(l, opts);
    }
    return out;
}

} // namespace

std::string to_string(Literal const &l, PrintOptions const &opts) {
    return std::visit(
        [&](auto const &x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ClassicalLiteral> || std::is_same_v<T, BuiltinAtom>) {
                return to_string(NafLiteral{x}, opts);
            }
            else if constexpr (std::is_same_v<T, ExternalLiteral>) {
                return (x.naf ? "not &" : "&") + x.name + "(" + to_string(x.inputs, opts) + ";" +
                       to_string(x.outputs, opts) + ")";
            }
            else {
                std::string out = x.naf ? "not " : "";
                out += function_name(x.fn);
                out += '{';
                bool first = true;
                for (auto const &e : x.elements) {
                    if (!first) { out += ';'; }
                    first = false;
                    out += to_string(e.terms, opts);
                    if (!e.condition.empty()) {
                        out += ':';
                        bool cf = true;
                        for (auto const &c : e.condition) {
                            if (!cf) { out += ','; }
                            cf = false;
                            out += to_string(c, opts);
                        }
                    }
                }
                out += '}';
                out += relation_symbol(x.rel);
                out += to_string(x.guard, opts);
                return out;
            }
        },
        l);
}

std::string to_string(Rule const &r, PrintOptions const &opts) {
    std::string out;
    bool first = true;
    for (auto const &a : r.head) {
        if (!first) { out += " | "; }
        first = false;
        out += to_string(a, opts);
    }
    if (!r.body.empty()) {
        out += r.head.empty() ? ":- " : " :- ";
        out += join_body(r.body, opts);
    }
    else if (r.head.empty()) {
        out += ":-";
    }
    return out + ".";
}

std::string to_string(WeakConstraint const &c, PrintOptions const &opts) {
    std::string out = ":~ " + join_body(c.body, opts) + ". [" + to_string(c.weight, opts) + "@" +
                      to_string(c.level, opts);
    for (auto const &t : c.terms) { out += "," + to_string(t, opts); }
    return out + "]";
}

std::string to_string(SourceProgram const &p, PrintOptions const &opts) {
    std::string out;
    for (auto const &r : p.rules) { out += to_string(r, opts) + "\n"; }
    for (auto const &c : p.weaks) { out += to_string(c, opts) + "\n"; }
    return out;
}

} // namespace ratasp
