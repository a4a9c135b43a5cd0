#include "oracle.hh"

#include "ratasp/evaluator.hh"
#include "ratasp/grounder.hh"
#include "ratasp/parser.hh"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

namespace ratasp::oracle {

namespace {

enum class Tri { True, False, Unknown };

using TermSet = std::set<Term, TermLess>;
using AtomMap = std::map<std::string, Atom>;

Tri negate(Tri t) { return t == Tri::True ? Tri::False : t == Tri::False ? Tri::True : Tri::Unknown; }

bool is_range(Term const &t) { return t.is_arithmetic() && t.op() == ArithOp::Range; }

std::set<std::string> vars_of(Term const &t) {
    std::set<std::string> out;
    t.collect_variables(out);
    return out;
}

bool subset(std::set<std::string> const &a, std::set<std::string> const &b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Literal> as_literals(std::vector<NafLiteral> const &cond) {
    std::vector<Literal> out;
    for (auto const &c : cond) {
        std::visit([&](auto const &x) { out.emplace_back(x); }, c);
    }
    return out;
}

// A variable whose value a literal determines once its inputs are known.
struct Step {
    std::string var;
    Literal const *literal;
};

// How the variables of a statement are instantiated: variables that positive
// atoms bind by matching range over the whole universe, the others are
// computed from assignments, ranges, external calls and aggregates.
struct Plan {
    std::vector<std::string> enumerated;
    // checks[i]: positive atoms whose variables are all among
    // enumerated[0..i)
    std::vector<std::vector<Atom const *>> checks;
    std::vector<Step> steps;
    // positive atoms that also contain computed variables
    std::vector<Atom const *> late;
};

// The variable an assignment-like literal computes, if its inputs are in
// `avail`.
std::optional<std::string> computes(Literal const &l, std::set<std::string> const &avail,
                                    std::set<std::string> const &vars) {
    std::optional<std::string> out;
    std::visit(
        [&](auto const &x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, BuiltinAtom>) {
                if (x.rel != Relation::Eq) { return; }
                if (x.left.is_variable() && !avail.contains(x.left.name()) && subset(vars_of(x.right), avail)) {
                    out = x.left.name();
                }
                else if (x.right.is_variable() && !avail.contains(x.right.name()) && subset(vars_of(x.left), avail)) {
                    out = x.right.name();
                }
            }
            else if constexpr (std::is_same_v<T, ExternalLiteral>) {
                std::set<std::string> in;
                for (auto const &t : x.inputs) { t.collect_variables(in); }
                auto const &o = x.outputs.front();
                if (!x.naf && o.is_variable() && !avail.contains(o.name()) && subset(in, avail)) { out = o.name(); }
            }
            else if constexpr (std::is_same_v<T, AggregateLiteral>) {
                if (x.naf || x.rel != Relation::Eq || !x.guard.is_variable() || avail.contains(x.guard.name())) {
                    return;
                }
                std::set<std::string> inner, global;
                for (auto const &e : x.elements) { collect_variables(e, inner); }
                for (auto const &v : inner) {
                    if (vars.contains(v)) { global.insert(v); }
                }
                if (subset(global, avail)) { out = x.guard.name(); }
            }
        },
        l);
    return out;
}

Plan make_plan(std::vector<Literal> const &body, std::set<std::string> const &vars,
               std::set<std::string> const &bound) {
    Plan p;
    std::vector<Atom const *> positives;
    for (auto const &l : body) {
        auto const *c = std::get_if<ClassicalLiteral>(&l);
        if (c && !c->naf) { positives.push_back(&c->atom); }
    }
    // variables of earlier positive atoms first, so that checks prune early
    for (auto const *a : positives) {
        std::set<std::string> av;
        for (auto const &t : a->args) { collect_binding_variables(t, av); }
        for (auto const &v : av) {
            if (vars.contains(v) && !bound.contains(v) &&
                std::find(p.enumerated.begin(), p.enumerated.end(), v) == p.enumerated.end()) {
                p.enumerated.push_back(v);
            }
        }
    }
    std::set<std::string> avail = bound;
    avail.insert(p.enumerated.begin(), p.enumerated.end());
    std::vector<bool> used(body.size(), false);
    for (bool progress = true; progress;) {
        progress = false;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (used[i]) { continue; }
            if (auto v = computes(body[i], avail, vars)) {
                used[i] = true;
                avail.insert(*v);
                p.steps.push_back({*v, &body[i]});
                progress = true;
            }
        }
    }
    // anything left (only in unsafe input) is enumerated as well
    for (auto const &v : vars) {
        if (!avail.contains(v)) { p.enumerated.push_back(v); }
    }
    p.checks.resize(p.enumerated.size() + 1);
    for (auto const *a : positives) {
        std::set<std::string> av;
        collect_variables(*a, av);
        std::size_t at = 0;
        bool late = false;
        for (auto const &v : av) {
            auto it = std::find(p.enumerated.begin(), p.enumerated.end(), v);
            if (it != p.enumerated.end()) { at = std::max<std::size_t>(at, it - p.enumerated.begin() + 1); }
            else if (!bound.contains(v)) { late = true; }
        }
        if (late) { p.late.push_back(a); }
        else { p.checks[at].push_back(a); }
    }
    return p;
}

class Naive {
public:
    Naive(SourceProgram const &p, bool integer_division) : p_(p), intdiv_(integer_division) {
        for (auto const &r : p_.rules) {
            auto vc = classify_variables(r);
            rules_.push_back({&r.head, &r.body, make_plan(r.body, vc.global, {})});
        }
        for (auto const &c : p_.weaks) {
            auto vc = classify_variables(c);
            weaks_.push_back(make_plan(c.body, vc.global, {}));
        }
    }

    GroundProgram run() {
        for (;;) {
            auto old_f = keys(f_);
            auto old_s = keys(s_);
            possible();
            definite();
            if (keys(f_) == old_f && keys(s_) == old_s) { break; }
        }
        refresh();
        return build();
    }

private:
    struct Stmt {
        std::vector<Atom> const *head;
        std::vector<Literal> const *body;
        Plan plan;
    };

    static std::set<std::string> keys(AtomMap const &m) {
        std::set<std::string> out;
        for (auto const &[k, a] : m) { out.insert(k); }
        return out;
    }

    // {{{2 universe

    static void subterms(Term const &t, TermSet &out) {
        out.insert(t);
        for (auto const &a : t.args()) { subterms(a, out); }
    }

    // Every subterm of a possibly true atom: the only values a variable bound
    // by matching a positive atom can take.
    void refresh() {
        TermSet u;
        for (auto const *m : {&s_, &f_}) {
            for (auto const &[k, a] : *m) {
                for (auto const &t : a.args) { subterms(t, u); }
            }
        }
        domain_.assign(u.begin(), u.end());
    }

    // {{{2 evaluation under a total substitution

    std::optional<Term> value(Term const &t, Substitution const &s) const { return ratasp::instantiate(t, s, intdiv_); }

    std::optional<Atom> ground(Atom const &a, Substitution const &s) const {
        Atom out{a.strong_neg, a.predicate, {}};
        for (auto const &t : a.args) {
            auto v = value(t, s);
            if (!v) { return std::nullopt; }
            out.args.push_back(std::move(*v));
        }
        return out;
    }

    std::optional<std::pair<Integer, Integer>> range(Term const &t, Substitution const &s) const {
        auto lo = value(t.args()[0], s);
        auto hi = value(t.args()[1], s);
        if (!lo || !hi || !lo->is_number() || !hi->is_number() || !lo->value().is_integer() ||
            !hi->value().is_integer()) {
            return std::nullopt;
        }
        return std::make_pair(lo->value().num(), hi->value().num());
    }

    std::optional<Term> call(ExternalLiteral const &x, Substitution const &s) const {
        std::vector<Term> in;
        for (auto const &t : x.inputs) {
            auto v = value(t, s);
            if (!v) { return std::nullopt; }
            in.push_back(std::move(*v));
        }
        try {
            return eval_external(x.name, in);
        }
        catch (ExternalCallError const &) {
            // the universe also offers non-rational inputs
            return std::nullopt;
        }
    }

    // nullopt: the substitution is not well-formed
    std::optional<bool> builtin(BuiltinAtom const &b, Substitution const &s) const {
        if (is_range(b.left) || is_range(b.right)) {
            auto bounds = range(is_range(b.left) ? b.left : b.right, s);
            auto v = value(is_range(b.left) ? b.right : b.left, s);
            if (!bounds || !v) { return std::nullopt; }
            return v->is_number() && v->value().is_integer() && v->value().num() >= bounds->first &&
                   v->value().num() <= bounds->second;
        }
        auto l = value(b.left, s);
        auto r = value(b.right, s);
        if (!l || !r) { return std::nullopt; }
        return holds(b.rel, term_order(*l, *r));
    }

    std::optional<bool> external(ExternalLiteral const &x, Substitution const &s) const {
        auto r = call(x, s);
        if (!r) { return std::nullopt; }
        auto out = value(x.outputs.front(), s);
        if (!out) { return std::nullopt; }
        return (*r == *out) != x.naf;
    }

    Tri status(Atom const &a) const {
        auto key = to_string(a);
        if (f_.contains(key)) { return Tri::True; }
        if (!s_.contains(key)) { return Tri::False; }
        return Tri::Unknown;
    }

    // {{{2 instantiation

    // Calls f for every extension of s: enumerated variables over the
    // universe, then computed ones; positive atoms must be in `allowed`.
    void instances(Plan const &p, AtomMap const &allowed, bool possible_mode, Substitution s,
                   std::function<void(Substitution &)> const &f) const {
        auto in_allowed = [&](Atom const *a) {
            auto g = ground(*a, s);
            return g && allowed.contains(to_string(*g));
        };
        std::function<void(std::size_t)> steps = [&](std::size_t k) {
            if (k == p.steps.size()) {
                if (std::all_of(p.late.begin(), p.late.end(), in_allowed)) { f(s); }
                return;
            }
            auto const &st = p.steps[k];
            auto bind = [&](Term v) {
                s[st.var] = std::move(v);
                steps(k + 1);
                s.erase(st.var);
            };
            std::visit(
                [&](auto const &x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, BuiltinAtom>) {
                        auto const &other = x.left.is_variable() && x.left.name() == st.var ? x.right : x.left;
                        if (is_range(other)) {
                            if (auto b = range(other, s)) {
                                for (Integer i = b->first; i <= b->second; ++i) { bind(Term::number(Rational(i))); }
                            }
                        }
                        else if (auto v = value(other, s)) {
                            bind(std::move(*v));
                        }
                    }
                    else if constexpr (std::is_same_v<T, ExternalLiteral>) {
                        if (auto v = call(x, s)) { bind(std::move(*v)); }
                    }
                    else if constexpr (std::is_same_v<T, AggregateLiteral>) {
                        auto values = possible_values(x.fn, aggregate_instances(x, s, possible_mode));
                        for (auto const &v : values) { bind(v); }
                    }
                },
                *st.literal);
        };
        std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
            if (!std::all_of(p.checks[i].begin(), p.checks[i].end(), in_allowed)) { return; }
            if (i == p.enumerated.size()) {
                steps(0);
                return;
            }
            for (auto const &t : domain_) {
                s[p.enumerated[i]] = t;
                enumerate(i + 1);
            }
            s.erase(p.enumerated[i]);
        };
        enumerate(0);
    }

    // Instances of one aggregate element under s: (tuple, condition status,
    // unknown literals).
    struct ElementInstance {
        std::vector<Term> tuple;
        Tri status = Tri::True;
        std::vector<std::pair<Atom, bool>> unknown;
    };

    // `possible_mode`: S is still growing, so default-negated conditions are
    // never certain.
    std::vector<ElementInstance> aggregate_instances(AggregateLiteral const &a, Substitution const &s,
                                                     bool possible_mode) const {
        std::vector<ElementInstance> out;
        std::set<std::string> bound;
        for (auto const &[k, v] : s) { bound.insert(k); }
        for (auto const &e : a.elements) {
            auto cond = as_literals(e.condition);
            std::set<std::string> vars;
            collect_variables(e, vars);
            auto plan = make_plan(cond, vars, bound);
            instances(plan, s_, possible_mode, s, [&](Substitution &sub) {
                ElementInstance inst;
                for (auto const &c : cond) {
                    if (auto const *b = std::get_if<BuiltinAtom>(&c)) {
                        auto ok = builtin(*b, sub);
                        if (!ok || !*ok) { return; }
                        continue;
                    }
                    auto const &cl = std::get<ClassicalLiteral>(c);
                    auto g = ground(cl.atom, sub);
                    if (!g) { return; }
                    auto st = cl.naf ? negate(status(*g)) : status(*g);
                    if (possible_mode && cl.naf && st == Tri::True) { st = Tri::Unknown; }
                    if (st == Tri::False) { return; }
                    if (st == Tri::Unknown) {
                        inst.status = Tri::Unknown;
                        inst.unknown.emplace_back(*g, cl.naf);
                    }
                }
                for (auto const &t : e.terms) {
                    auto v = value(t, sub);
                    if (!v) { return; }
                    inst.tuple.push_back(std::move(*v));
                }
                out.push_back(std::move(inst));
            });
        }
        return out;
    }

    // Every value the aggregate can take given certain and possible tuples.
    static TermSet possible_values(AggregateFunction fn, std::vector<ElementInstance> const &insts) {
        TupleSet certain, maybe;
        for (auto const &i : insts) {
            if (i.status == Tri::True) { certain.insert(i.tuple); }
        }
        for (auto const &i : insts) {
            if (!certain.contains(i.tuple)) { maybe.insert(i.tuple); }
        }
        std::vector<std::vector<Term>> m(maybe.begin(), maybe.end());
        if (m.size() > 16) { throw std::runtime_error("oracle: too many undetermined aggregate tuples"); }
        TermSet out;
        for (std::uint32_t mask = 0; mask < (1U << m.size()); ++mask) {
            TupleSet t = certain;
            for (std::size_t b = 0; b < m.size(); ++b) {
                if ((mask >> b) & 1U) { t.insert(m[b]); }
            }
            auto v = aggregate_value(fn, t);
            if (v.kind == AggregateValue::Kind::Finite) { out.insert(v.term); }
        }
        return out;
    }

    // {{{2 fixpoints

    // Least fixpoint of "possibly derivable" with F fixed: default-negated
    // atoms outside F, builtins and external calls true; aggregates other
    // than assignments are ignored.
    void possible() {
        s_.clear();
        for (bool changed = true; changed;) {
            changed = false;
            refresh();
            for (auto const &st : rules_) {
                instances(st.plan, s_, true, {}, [&](Substitution &sub) {
                    for (auto const &l : *st.body) {
                        if (auto const *c = std::get_if<ClassicalLiteral>(&l)) {
                            if (!c->naf) { continue; }
                            auto g = ground(c->atom, sub);
                            if (!g || f_.contains(to_string(*g))) { return; }
                        }
                        else if (auto const *b = std::get_if<BuiltinAtom>(&l)) {
                            auto ok = builtin(*b, sub);
                            if (!ok || !*ok) { return; }
                        }
                        else if (auto const *x = std::get_if<ExternalLiteral>(&l)) {
                            auto ok = external(*x, sub);
                            if (!ok || !*ok) { return; }
                        }
                    }
                    for (auto const &h : *st.head) {
                        auto g = ground(h, sub);
                        if (!g) { return; }
                        if (s_.emplace(to_string(*g), *g).second) { changed = true; }
                    }
                });
            }
        }
    }

    // Least fixpoint of "certainly true" w.r.t. F and the complete S.
    void definite() {
        for (bool changed = true; changed;) {
            changed = false;
            refresh();
            for (auto const &st : rules_) {
                if (st.head->size() != 1) { continue; }
                instances(st.plan, f_, false, {}, [&](Substitution &sub) {
                    for (auto const &l : *st.body) {
                        if (truth(l, sub) != Tri::True) { return; }
                    }
                    auto g = ground(st.head->front(), sub);
                    if (g && f_.emplace(to_string(*g), *g).second) { changed = true; }
                });
            }
        }
    }

    Tri aggregate_truth(AggregateLiteral const &a, Substitution const &s) const {
        auto insts = aggregate_instances(a, s, false);
        TupleSet certain;
        for (auto const &i : insts) {
            if (i.status == Tri::True) { certain.insert(i.tuple); }
        }
        for (auto const &i : insts) {
            if (i.status == Tri::Unknown && !certain.contains(i.tuple)) { return Tri::Unknown; }
        }
        auto guard = value(a.guard, s);
        if (!guard) { return Tri::False; }
        return aggregate_holds(a.fn, a.rel, *guard, certain) != a.naf ? Tri::True : Tri::False;
    }

    Tri truth(Literal const &l, Substitution const &s) const {
        return std::visit(
            [&](auto const &x) -> Tri {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, ClassicalLiteral>) {
                    auto g = ground(x.atom, s);
                    if (!g) { return Tri::False; }
                    return x.naf ? negate(status(*g)) : status(*g);
                }
                else if constexpr (std::is_same_v<T, BuiltinAtom>) {
                    auto r = builtin(x, s);
                    return r && *r ? Tri::True : Tri::False;
                }
                else if constexpr (std::is_same_v<T, ExternalLiteral>) {
                    auto r = external(x, s);
                    return r && *r ? Tri::True : Tri::False;
                }
                else {
                    return aggregate_truth(x, s);
                }
            },
            l);
    }

    // {{{2 residual program

    // Appends the undecided part of the body; false if the body is refuted.
    bool residual(std::vector<Literal> const &body, Substitution const &s, GroundProgram &g,
                  std::vector<GroundLiteral> &lits, std::vector<GroundAggregate> &aggs) const {
        for (auto const &l : body) {
            auto t = truth(l, s);
            if (t == Tri::False) { return false; }
            if (t == Tri::True) { continue; }
            if (auto const *c = std::get_if<ClassicalLiteral>(&l)) {
                lits.push_back({g.add_atom(*ground(c->atom, s)), c->naf});
                continue;
            }
            auto const &a = std::get<AggregateLiteral>(l);
            GroundAggregate ga{a.naf, a.fn, a.rel, *value(a.guard, s), {}};
            for (auto const &i : aggregate_instances(a, s, false)) {
                GroundElement e{i.tuple, {}};
                for (auto const &[atom, naf] : i.unknown) { e.condition.push_back({g.add_atom(atom), naf}); }
                ga.elements.push_back(std::move(e));
            }
            aggs.push_back(std::move(ga));
        }
        return true;
    }

    GroundProgram build() const {
        GroundProgram g;
        for (auto const &[k, a] : f_) { g.add_fact(a); }
        std::set<std::string> seen;
        for (auto const &st : rules_) {
            instances(st.plan, s_, false, {}, [&](Substitution &sub) {
                GroundRule r;
                for (auto const &h : *st.head) {
                    auto a = ground(h, sub);
                    if (!a || f_.contains(to_string(*a))) { return; }
                    r.head.push_back(g.add_atom(*a));
                }
                if (!residual(*st.body, sub, g, r.body, r.aggregates)) { return; }
                if (seen.insert(to_string(r, g.atoms)).second) { g.rules.push_back(std::move(r)); }
            });
        }
        for (std::size_t k = 0; k < p_.weaks.size(); ++k) {
            auto const &c = p_.weaks[k];
            instances(weaks_[k], s_, false, {}, [&](Substitution &sub) {
                GroundWeak w;
                auto weight = value(c.weight, sub);
                auto level = value(c.level, sub);
                if (!weight || !level || !weight->is_number() || !level->is_number()) { return; }
                w.weight = *weight;
                w.level = *level;
                for (auto const &t : c.terms) {
                    auto v = value(t, sub);
                    if (!v) { return; }
                    w.terms.push_back(*v);
                }
                if (!residual(c.body, sub, g, w.body, w.aggregates)) { return; }
                g.weaks.push_back(std::move(w));
            });
        }
        // p and -p exclude each other
        for (AtomIndex i = 0; i < g.atoms.size(); ++i) {
            auto const &a = g.atoms.atom(i);
            if (!a.strong_neg) { continue; }
            auto p = g.atoms.find(Atom{false, a.predicate, a.args});
            if (!p) { continue; }
            GroundRule r;
            if (!g.is_fact(*p)) { r.body.push_back({*p, false}); }
            if (!g.is_fact(i)) { r.body.push_back({i, false}); }
            g.rules.push_back(std::move(r));
        }
        return g;
    }

    SourceProgram const &p_;
    bool intdiv_;
    std::vector<Stmt> rules_;
    std::vector<Plan> weaks_;
    std::vector<Term> domain_;
    AtomMap f_;
    AtomMap s_;
};

// Drops atoms that no statement mentions (left over from refuted
// instances).
GroundProgram compact(GroundProgram const &g) {
    std::vector<bool> used(g.atoms.size(), false);
    auto mark = [&](std::vector<GroundLiteral> const &body, std::vector<GroundAggregate> const &aggs) {
        for (auto const &l : body) { used[l.atom] = true; }
        for (auto const &a : aggs) {
            for (auto const &e : a.elements) {
                for (auto const &l : e.condition) { used[l.atom] = true; }
            }
        }
    };
    for (auto const &r : g.rules) {
        for (auto h : r.head) { used[h] = true; }
        mark(r.body, r.aggregates);
    }
    for (auto const &w : g.weaks) { mark(w.body, w.aggregates); }
    GroundProgram out;
    std::vector<AtomIndex> map(g.atoms.size(), 0);
    for (AtomIndex i = 0; i < g.atoms.size(); ++i) {
        if (used[i]) {
            map[i] = out.add_atom(g.atoms.atom(i));
            out.facts[map[i]] = g.is_fact(i);
        }
    }
    auto remap = [&](std::vector<GroundLiteral> &body, std::vector<GroundAggregate> &aggs) {
        for (auto &l : body) { l.atom = map[l.atom]; }
        for (auto &a : aggs) {
            for (auto &e : a.elements) {
                for (auto &l : e.condition) { l.atom = map[l.atom]; }
            }
        }
    };
    out.rules = g.rules;
    out.weaks = g.weaks;
    for (auto &r : out.rules) {
        for (auto &h : r.head) { h = map[h]; }
        remap(r.body, r.aggregates);
    }
    for (auto &w : out.weaks) { remap(w.body, w.aggregates); }
    return out;
}

std::set<std::string> texts(GroundProgram const &g, Interpretation const &i) {
    std::set<std::string> out;
    for (AtomIndex k = 0; k < g.atoms.size(); ++k) {
        if (i[k]) { out.insert(g.atoms.key(k)); }
    }
    return out;
}

} // namespace

GroundProgram instantiate(SourceProgram const &p, bool integer_division) {
    return compact(Naive(p, integer_division).run());
}

AnswerSetTexts answer_sets(GroundProgram const &g) {
    AnswerSetTexts out;
    for (auto const &i : answer_sets_serial(g)) { out.insert(texts(g, i)); }
    return out;
}

AnswerSetTexts optimal_by_domination(GroundProgram const &g) {
    auto all = answer_sets_serial(g);
    std::vector<CostVector> cs;
    for (auto const &i : all) { cs.push_back(costs(g, i)); }
    // A' dominates A: lower cost at some level, equal at every higher level
    auto dominates = [](CostVector const &a, CostVector const &b) {
        std::set<Rational> levels;
        for (auto const &[l, c] : a) { levels.insert(l); }
        for (auto const &[l, c] : b) { levels.insert(l); }
        for (auto const &l : levels) {
            auto ca = a.contains(l) ? a.at(l) : Rational{};
            auto cb = b.contains(l) ? b.at(l) : Rational{};
            if (!(ca < cb)) { continue; }
            bool higher_equal = true;
            for (auto const &h : levels) {
                if (h > l) {
                    auto ha = a.contains(h) ? a.at(h) : Rational{};
                    auto hb = b.contains(h) ? b.at(h) : Rational{};
                    higher_equal = higher_equal && ha == hb;
                }
            }
            if (higher_equal) { return true; }
        }
        return false;
    };
    AnswerSetTexts out;
    for (std::size_t k = 0; k < all.size(); ++k) {
        bool dominated = false;
        for (std::size_t j = 0; j < all.size() && !dominated; ++j) { dominated = j != k && dominates(cs[j], cs[k]); }
        if (!dominated) { out.insert(texts(g, all[k])); }
    }
    return out;
}

AnswerSetTexts solve(std::string_view text, bool integer_division) {
    ParseOptions po;
    po.integer_division = integer_division;
    GroundOptions go;
    go.integer_division = integer_division;
    auto g = ground(parse_program(text, po), go);
    return oracle::answer_sets(g);
}

AnswerSetTexts solve_naive(std::string_view text, bool integer_division) {
    ParseOptions po;
    po.integer_division = integer_division;
    return oracle::answer_sets(oracle::instantiate(parse_program(text, po), integer_division));
}

std::string to_string(AnswerSetTexts const &sets) {
    std::string out;
    for (auto const &s : sets) {
        out += "{";
        bool first = true;
        for (auto const &a : s) {
            out += (first ? "" : ", ") + a;
            first = false;
        }
        out += "}\n";
    }
    return out.empty() ? "UNSATISFIABLE\n" : out;
}

} // namespace ratasp::oracle
