#include "ratasp/grounder.hh"

#include "ratasp/parser.hh"

#include <algorithm>
#include <functional>
#include <limits>
#include <ostream>
#include <unordered_set>

namespace ratasp {

// {{{1 arithmetic evaluation

std::optional<Rational> eval_arith(Term const &t, bool integer_division) {
    if (t.is_number()) { return t.value(); }
    if (!t.is_arithmetic() || t.op() == ArithOp::Range) { return std::nullopt; }
    auto a = eval_arith(t.args()[0], integer_division);
    if (!a) { return std::nullopt; }
    if (t.op() == ArithOp::Neg) { return -*a; }
    auto b = eval_arith(t.args()[1], integer_division);
    if (!b) { return std::nullopt; }
    switch (t.op()) {
        case ArithOp::Add: return *a + *b;
        case ArithOp::Sub: return *a - *b;
        case ArithOp::Mul: return *a * *b;
        case ArithOp::Div:
            if (b->is_zero()) { return std::nullopt; }
            if (integer_division && a->is_integer() && b->is_integer()) { return integer_divide(*a, *b); }
            return *a / *b;
        case ArithOp::Mod:
            if (b->is_zero() || !a->is_integer() || !b->is_integer()) { return std::nullopt; }
            return *a - truncate(*a / *b) * *b;
        default: return std::nullopt;
    }
}

std::optional<Term> evaluate(Term const &t, bool integer_division) {
    switch (t.kind()) {
        case TermKind::Arithmetic: {
            auto v = eval_arith(t, integer_division);
            if (!v) { return std::nullopt; }
            return Term::number(std::move(*v));
        }
        case TermKind::Function: {
            std::vector<Term> args;
            args.reserve(t.args().size());
            for (auto const &a : t.args()) {
                auto v = evaluate(a, integer_division);
                if (!v) { return std::nullopt; }
                args.push_back(std::move(*v));
            }
            return Term::function(t.name(), std::move(args));
        }
        case TermKind::Variable: throw InternalError("evaluate: non-ground term " + to_string(t));
        default: return t;
    }
}

namespace {

// Substitutes bound variables; ground arithmetic subterms are evaluated.
// Arithmetic over unbound variables is an internal error: plans only match
// atoms once their arithmetic arguments are bound.
std::optional<Term> partial(Term const &t, Substitution const &s, bool integer_division) {
    switch (t.kind()) {
        case TermKind::Variable: {
            auto it = s.find(t.name());
            return it == s.end() ? t : it->second;
        }
        case TermKind::Function: {
            std::vector<Term> args;
            args.reserve(t.args().size());
            for (auto const &a : t.args()) {
                auto v = partial(a, s, integer_division);
                if (!v) { return std::nullopt; }
                args.push_back(std::move(*v));
            }
            return Term::function(t.name(), std::move(args));
        }
        case TermKind::Arithmetic: {
            std::vector<Term> args;
            for (auto const &a : t.args()) {
                auto v = partial(a, s, integer_division);
                if (!v) { return std::nullopt; }
                if (!v->ground()) { throw InternalError("arithmetic over unbound variables: " + to_string(t)); }
                args.push_back(std::move(*v));
            }
            return evaluate(Term::arithmetic(t.op(), std::move(args)), integer_division);
        }
        default: return t;
    }
}

} // namespace

std::optional<Term> instantiate(Term const &t, Substitution const &s, bool integer_division) {
    return partial(t, s, integer_division);
}

std::optional<Term> eval_external(std::string const &name, std::vector<Term> const &inputs) {
    return BuiltinRegistry::instance().call(name, inputs);
}

// {{{1 grounder

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
constexpr std::uint32_t not_derived = std::numeric_limits<std::uint32_t>::max();

struct Window {
    std::size_t lo = 0;
    std::size_t hi = npos;
};

struct BodyPlan {
    std::vector<std::size_t> order;
};

struct ElementPlan {
    std::vector<Literal> condition;
    BodyPlan plan;
};

struct StatementPlan {
    VariableClassification vc;
    BodyPlan body;
    // per body literal, per aggregate element
    std::vector<std::vector<ElementPlan>> elements;
};

bool all_bound(std::set<std::string> const &vars, std::set<std::string> const &bound) {
    return std::includes(bound.begin(), bound.end(), vars.begin(), vars.end());
}

std::set<std::string> vars_of(Term const &t) {
    std::set<std::string> v;
    t.collect_variables(v);
    return v;
}

// Variables that must be bound before the positive atom can be matched.
void arithmetic_variables(Term const &t, std::set<std::string> &out) {
    if (t.is_arithmetic()) {
        t.collect_variables(out);
        return;
    }
    for (auto const &a : t.args()) { arithmetic_variables(a, out); }
}

enum class Readiness : std::uint8_t { No, Filter, Generator };

Readiness readiness(Literal const &l, std::set<std::string> const &bound, std::set<std::string> const &globals) {
    return std::visit(
        [&](auto const &x) -> Readiness {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ClassicalLiteral>) {
                std::set<std::string> all;
                collect_variables(x.atom, all);
                if (all_bound(all, bound)) { return Readiness::Filter; }
                if (x.naf) { return Readiness::No; }
                std::set<std::string> arith;
                for (auto const &t : x.atom.args) { arithmetic_variables(t, arith); }
                return all_bound(arith, bound) ? Readiness::Generator : Readiness::No;
            }
            else if constexpr (std::is_same_v<T, BuiltinAtom>) {
                auto lv = vars_of(x.left);
                auto rv = vars_of(x.right);
                if (all_bound(lv, bound) && all_bound(rv, bound)) { return Readiness::Filter; }
                if (x.rel != Relation::Eq) { return Readiness::No; }
                if (x.left.is_variable() && all_bound(rv, bound)) { return Readiness::Generator; }
                if (x.right.is_variable() && all_bound(lv, bound)) { return Readiness::Generator; }
                return Readiness::No;
            }
            else if constexpr (std::is_same_v<T, ExternalLiteral>) {
                std::set<std::string> in;
                for (auto const &t : x.inputs) { t.collect_variables(in); }
                if (!all_bound(in, bound)) { return Readiness::No; }
                std::set<std::string> out;
                for (auto const &t : x.outputs) { t.collect_variables(out); }
                if (all_bound(out, bound)) { return Readiness::Filter; }
                return x.naf ? Readiness::No : Readiness::Generator;
            }
            else {
                std::set<std::string> inner;
                for (auto const &e : x.elements) { collect_variables(e, inner); }
                std::set<std::string> needed;
                for (auto const &v : inner) {
                    if (globals.contains(v)) { needed.insert(v); }
                }
                if (!all_bound(needed, bound)) { return Readiness::No; }
                auto gv = vars_of(x.guard);
                if (all_bound(gv, bound)) { return Readiness::Filter; }
                if (!x.naf && x.rel == Relation::Eq && x.guard.is_variable()) { return Readiness::Generator; }
                return Readiness::No;
            }
        },
        l);
}

void bind_literal(Literal const &l, std::set<std::string> &bound) {
    std::visit(
        [&](auto const &x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ClassicalLiteral>) {
                if (!x.naf) { collect_variables(x.atom, bound); }
            }
            else if constexpr (std::is_same_v<T, BuiltinAtom>) {
                x.left.collect_variables(bound);
                x.right.collect_variables(bound);
            }
            else if constexpr (std::is_same_v<T, ExternalLiteral>) {
                for (auto const &t : x.outputs) { t.collect_variables(bound); }
            }
            else {
                x.guard.collect_variables(bound);
            }
        },
        l);
}

// Greedy left-to-right order: ready filters first, then the first ready
// generator.
BodyPlan make_plan(std::vector<Literal> const &body, std::set<std::string> bound, std::set<std::string> const &globals,
                   Location const &loc) {
    BodyPlan plan;
    std::vector<bool> done(body.size(), false);
    for (std::size_t n = 0; n < body.size(); ++n) {
        std::size_t pick = npos;
        for (std::size_t i = 0; i < body.size() && pick == npos; ++i) {
            if (!done[i] && readiness(body[i], bound, globals) == Readiness::Filter) { pick = i; }
        }
        for (std::size_t i = 0; i < body.size() && pick == npos; ++i) {
            if (!done[i] && readiness(body[i], bound, globals) == Readiness::Generator) { pick = i; }
        }
        if (pick == npos) { throw GroundingError(to_string(loc) + ": cannot order body literals (unsafe statement)"); }
        done[pick] = true;
        plan.order.push_back(pick);
        bind_literal(body[pick], bound);
    }
    return plan;
}

std::vector<Literal> as_literals(std::vector<NafLiteral> const &cond) {
    std::vector<Literal> out;
    for (auto const &c : cond) {
        std::visit([&](auto const &x) { out.emplace_back(x); }, c);
    }
    return out;
}

StatementPlan make_statement_plan(std::vector<Literal> const &body, VariableClassification vc, Location const &loc) {
    StatementPlan sp;
    sp.vc = std::move(vc);
    sp.body = make_plan(body, {}, sp.vc.global, loc);
    sp.elements.resize(body.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
        auto const *agg = std::get_if<AggregateLiteral>(&body[i]);
        if (!agg) { continue; }
        for (auto const &e : agg->elements) {
            ElementPlan ep;
            ep.condition = as_literals(e.condition);
            std::set<std::string> vars;
            collect_variables(e, vars);
            std::set<std::string> bound;
            for (auto const &v : vars) {
                if (sp.vc.global.contains(v)) { bound.insert(v); }
            }
            ep.plan = make_plan(ep.condition, bound, sp.vc.global, loc);
            sp.elements[i].push_back(std::move(ep));
        }
    }
    return sp;
}

struct Frame {
    Substitution s;
    std::vector<GroundLiteral> lits;
    std::vector<GroundAggregate> aggs;
};

struct Domain {
    std::vector<AtomIndex> atoms;
    bool complete = false;
};

class Grounder {
public:
    Grounder(SourceProgram const &prg, GroundOptions const &opts) : prg_(prg), opts_(opts) { }

    GroundProgram run() {
        check_externals(prg_);
        build_components();
        for (auto const &comp : components_) { ground_component(comp); }
        for (std::size_t i = 0; i < prg_.rules.size(); ++i) {
            if (prg_.rules[i].head.empty()) { ground_rule(i, {}); }
        }
        for (auto const &c : prg_.weaks) { ground_weak(c); }
        finalize();
        return std::move(out_);
    }

private:
    // {{{2 dependency graph

    std::size_t node(std::string const &sig) {
        auto [it, added] = node_index_.emplace(sig, sigs_.size());
        if (added) {
            sigs_.push_back(sig);
            edges_.emplace_back();
        }
        return it->second;
    }

    static void condition_signatures(Literal const &l, std::vector<std::string> &out) {
        if (auto const *agg = std::get_if<AggregateLiteral>(&l)) {
            for (auto const &e : agg->elements) {
                for (auto const &c : e.condition) {
                    if (auto const *cl = std::get_if<ClassicalLiteral>(&c)) { out.push_back(cl->atom.signature()); }
                }
            }
        }
    }

    void build_components() {
        for (auto const &r : prg_.rules) {
            std::vector<std::size_t> heads;
            for (auto const &a : r.head) { heads.push_back(node(a.signature())); }
            for (std::size_t i = 0; i + 1 < heads.size(); ++i) {
                edges_[heads[i]].push_back(heads[i + 1]);
                edges_[heads[i + 1]].push_back(heads[i]);
            }
            for (auto const &l : r.body) {
                std::vector<std::string> deps;
                if (auto const *cl = std::get_if<ClassicalLiteral>(&l)) { deps.push_back(cl->atom.signature()); }
                condition_signatures(l, deps);
                for (auto const &d : deps) {
                    std::size_t from = node(d);
                    for (auto h : heads) { edges_[from].push_back(h); }
                }
            }
        }
        for (auto const &c : prg_.weaks) {
            for (auto const &l : c.body) {
                if (auto const *cl = std::get_if<ClassicalLiteral>(&l)) { node(cl->atom.signature()); }
            }
        }
        // Tarjan; SCCs come out sinks first.
        std::size_t n = sigs_.size();
        std::vector<std::size_t> index(n, npos), low(n, 0);
        std::vector<bool> on_stack(n, false);
        std::vector<std::size_t> stack;
        std::size_t counter = 0;
        std::vector<std::vector<std::size_t>> sccs;
        std::function<void(std::size_t)> visit = [&](std::size_t v) {
            index[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = true;
            for (auto w : edges_[v]) {
                if (index[w] == npos) {
                    visit(w);
                    low[v] = std::min(low[v], low[w]);
                }
                else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            }
            if (low[v] == index[v]) {
                std::vector<std::size_t> scc;
                std::size_t w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    scc.push_back(w);
                } while (w != v);
                sccs.push_back(std::move(scc));
            }
        };
        for (std::size_t v = 0; v < n; ++v) {
            if (index[v] == npos) { visit(v); }
        }
        // Topological order of the condensation; among ready components the
        // one whose first predicate appears earliest goes first.
        std::vector<std::size_t> scc_of(n, 0);
        for (std::size_t c = 0; c < sccs.size(); ++c) {
            for (auto v : sccs[c]) { scc_of[v] = c; }
        }
        std::vector<std::size_t> indegree(sccs.size(), 0);
        std::vector<std::set<std::size_t>> succ(sccs.size());
        for (std::size_t v = 0; v < n; ++v) {
            for (auto w : edges_[v]) {
                if (scc_of[v] != scc_of[w] && succ[scc_of[v]].insert(scc_of[w]).second) { ++indegree[scc_of[w]]; }
            }
        }
        auto first = [&](std::size_t c) { return *std::min_element(sccs[c].begin(), sccs[c].end()); };
        std::set<std::pair<std::size_t, std::size_t>> ready;
        for (std::size_t c = 0; c < sccs.size(); ++c) {
            if (indegree[c] == 0) { ready.emplace(first(c), c); }
        }
        component_of_.assign(n, 0);
        for (std::size_t pos = 0; !ready.empty(); ++pos) {
            auto c = ready.begin()->second;
            ready.erase(ready.begin());
            for (auto v : sccs[c]) { component_of_[v] = pos; }
            for (auto d : succ[c]) {
                if (--indegree[d] == 0) { ready.emplace(first(d), d); }
            }
        }
        components_.assign(sccs.size(), {});
        for (std::size_t i = 0; i < prg_.rules.size(); ++i) {
            auto const &r = prg_.rules[i];
            if (r.head.empty()) { continue; }
            std::size_t comp = component_of_[node_index_.at(r.head.front().signature())];
            for (auto const &l : r.body) {
                std::vector<std::string> deps;
                condition_signatures(l, deps);
                for (auto const &d : deps) {
                    if (component_of_[node_index_.at(d)] == comp) {
                        throw AggregateRecursionError(to_string(r.loc) + ": recursion through aggregate over " + d +
                                                      " is not supported");
                    }
                }
            }
            components_[comp].push_back(i);
        }
        component_sigs_.assign(sccs.size(), {});
        for (std::size_t v = 0; v < n; ++v) { component_sigs_[component_of_[v]].insert(sigs_[v]); }
    }

    // {{{2 atoms and domains

    Domain &domain(std::string const &sig) { return domains_[sig]; }

    AtomIndex intern(Atom atom) {
        auto idx = out_.add_atom(std::move(atom));
        if (domain_pos_.size() < out_.atoms.size()) { domain_pos_.resize(out_.atoms.size(), not_derived); }
        return idx;
    }

    void derive(AtomIndex idx) {
        if (domain_pos_[idx] != not_derived) { return; }
        auto &d = domain(out_.atoms.atom(idx).signature());
        domain_pos_[idx] = static_cast<std::uint32_t>(d.atoms.size());
        d.atoms.push_back(idx);
    }

    void undefined(Location const &loc) const {
        if (opts_.warn_undefined && opts_.diagnostics) {
            *opts_.diagnostics << to_string(loc) << ": warning: undefined arithmetic, substitution skipped\n";
        }
    }

    std::optional<Term> ground_term(Term const &t, Substitution const &s) const {
        auto v = partial(t, s, opts_.integer_division);
        if (v && !v->ground()) { throw InternalError("term not ground after substitution: " + to_string(t)); }
        return v;
    }

    std::optional<Atom> ground_atom(Atom const &a, Substitution const &s) const {
        Atom out{a.strong_neg, a.predicate, {}};
        for (auto const &t : a.args) {
            auto v = ground_term(t, s);
            if (!v) { return std::nullopt; }
            out.args.push_back(std::move(*v));
        }
        return out;
    }

    // {{{2 matching

    static bool match(Term const &pattern, Term const &value, Substitution &s, std::vector<std::string> &trail) {
        switch (pattern.kind()) {
            case TermKind::Variable: {
                auto it = s.find(pattern.name());
                if (it != s.end()) { return it->second == value; }
                s.emplace(pattern.name(), value);
                trail.push_back(pattern.name());
                return true;
            }
            case TermKind::Function:
                if (value.kind() != TermKind::Function || value.name() != pattern.name() ||
                    value.args().size() != pattern.args().size()) {
                    return false;
                }
                for (std::size_t i = 0; i < pattern.args().size(); ++i) {
                    if (!match(pattern.args()[i], value.args()[i], s, trail)) { return false; }
                }
                return true;
            default: return pattern == value;
        }
    }

    static void undo(Substitution &s, std::vector<std::string> &trail, std::size_t mark) {
        while (trail.size() > mark) {
            s.erase(trail.back());
            trail.pop_back();
        }
    }

    // {{{2 search

    using Done = std::function<void(Frame &)>;

    struct Search {
        std::vector<Literal> const &body;
        BodyPlan const &plan;
        std::vector<Window> const &windows;
        std::vector<std::vector<ElementPlan>> const *elements;
        Location const &loc;
        Done const &done;
    };

    void search(Search const &ctx, std::size_t k, Frame &f) {
        if (k == ctx.plan.order.size()) {
            ctx.done(f);
            return;
        }
        std::size_t li = ctx.plan.order[k];
        std::visit(
            [&](auto const &x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, ClassicalLiteral>) {
                    if (x.naf) { negative(ctx, k, f, x.atom); }
                    else { positive(ctx, k, f, x.atom); }
                }
                else if constexpr (std::is_same_v<T, BuiltinAtom>) { builtin(ctx, k, f, x); }
                else if constexpr (std::is_same_v<T, ExternalLiteral>) { external(ctx, k, f, x); }
                else { aggregate(ctx, k, f, x, (*ctx.elements)[li]); }
            },
            ctx.body[li]);
    }

    void with_literal(Search const &ctx, std::size_t k, Frame &f, GroundLiteral lit) {
        f.lits.push_back(lit);
        search(ctx, k + 1, f);
        f.lits.pop_back();
    }

    void positive(Search const &ctx, std::size_t k, Frame &f, Atom const &atom) {
        Atom pattern{atom.strong_neg, atom.predicate, {}};
        for (auto const &t : atom.args) {
            auto v = partial(t, f.s, opts_.integer_division);
            if (!v) {
                undefined(ctx.loc);
                return;
            }
            pattern.args.push_back(std::move(*v));
        }
        auto &d = domain(pattern.signature());
        Window w = ctx.windows[k];
        auto in_window = [&](AtomIndex idx) {
            auto pos = domain_pos_[idx];
            return pos != not_derived && pos >= w.lo && pos < std::min(w.hi, d.atoms.size());
        };
        auto proceed = [&](AtomIndex idx) {
            if (out_.is_fact(idx)) { search(ctx, k + 1, f); }
            else { with_literal(ctx, k, f, {idx, false}); }
        };
        bool ground = std::all_of(pattern.args.begin(), pattern.args.end(), [](Term const &t) { return t.ground(); });
        if (ground) {
            auto idx = out_.atoms.find(pattern);
            if (idx && in_window(*idx)) { proceed(*idx); }
            return;
        }
        std::size_t hi = std::min(w.hi, d.atoms.size());
        std::vector<std::string> trail;
        for (std::size_t pos = w.lo; pos < hi; ++pos) {
            AtomIndex idx = d.atoms[pos];
            bool ok = true;
            {
                auto const &cand = out_.atoms.atom(idx);
                for (std::size_t i = 0; ok && i < pattern.args.size(); ++i) {
                    ok = match(pattern.args[i], cand.args[i], f.s, trail);
                }
            }
            if (ok) { proceed(idx); }
            undo(f.s, trail, 0);
        }
    }

    void negative(Search const &ctx, std::size_t k, Frame &f, Atom const &atom) {
        auto g = ground_atom(atom, f.s);
        if (!g) {
            undefined(ctx.loc);
            return;
        }
        bool complete = domain(g->signature()).complete;
        auto idx = out_.atoms.find(*g);
        if (idx && out_.is_fact(*idx)) { return; }
        if (!idx || domain_pos_[*idx] == not_derived) {
            if (complete) {
                search(ctx, k + 1, f);
                return;
            }
            idx = intern(std::move(*g));
        }
        with_literal(ctx, k, f, {*idx, true});
    }

    void bind_and_continue(Search const &ctx, std::size_t k, Frame &f, std::string const &var, Term value) {
        f.s.emplace(var, std::move(value));
        search(ctx, k + 1, f);
        f.s.erase(var);
    }

    static bool is_range(Term const &t) { return t.is_arithmetic() && t.op() == ArithOp::Range; }

    std::optional<std::pair<Integer, Integer>> range_bounds(Term const &range, Substitution const &s,
                                                            Location const &loc) const {
        std::optional<Rational> bounds[2];
        for (int i = 0; i < 2; ++i) {
            auto v = ground_term(range.args()[i], s);
            if (!v) { return std::nullopt; }
            if (!v->is_number() || !v->value().is_integer()) {
                throw RangeTypeError(to_string(loc) + ": range bound " + to_string(*v) + " is not an integer");
            }
            bounds[i] = v->value();
        }
        return std::make_pair(bounds[0]->num(), bounds[1]->num());
    }

    void builtin(Search const &ctx, std::size_t k, Frame &f, BuiltinAtom const &b) {
        auto unbound_var = [&](Term const &t) { return t.is_variable() && !f.s.contains(t.name()); };
        if (b.rel == Relation::Eq && (unbound_var(b.left) || unbound_var(b.right))) {
            Term const &var = unbound_var(b.left) ? b.left : b.right;
            Term const &other = unbound_var(b.left) ? b.right : b.left;
            if (is_range(other)) {
                auto bounds = range_bounds(other, f.s, ctx.loc);
                if (!bounds) {
                    undefined(ctx.loc);
                    return;
                }
                for (Integer i = bounds->first; i <= bounds->second; ++i) {
                    bind_and_continue(ctx, k, f, var.name(), Term::number(Rational(i)));
                }
                return;
            }
            auto v = ground_term(other, f.s);
            if (!v) {
                undefined(ctx.loc);
                return;
            }
            bind_and_continue(ctx, k, f, var.name(), std::move(*v));
            return;
        }
        if (b.rel == Relation::Eq && (is_range(b.left) || is_range(b.right))) {
            Term const &range = is_range(b.left) ? b.left : b.right;
            auto v = ground_term(is_range(b.left) ? b.right : b.left, f.s);
            auto bounds = range_bounds(range, f.s, ctx.loc);
            if (!v || !bounds) {
                undefined(ctx.loc);
                return;
            }
            if (v->is_number() && v->value().is_integer() && v->value().num() >= bounds->first &&
                v->value().num() <= bounds->second) {
                search(ctx, k + 1, f);
            }
            return;
        }
        auto l = ground_term(b.left, f.s);
        auto r = ground_term(b.right, f.s);
        if (!l || !r) {
            undefined(ctx.loc);
            return;
        }
        if (holds(b.rel, term_order(*l, *r))) { search(ctx, k + 1, f); }
    }

    void external(Search const &ctx, std::size_t k, Frame &f, ExternalLiteral const &x) {
        std::vector<Term> inputs;
        for (auto const &t : x.inputs) {
            auto v = ground_term(t, f.s);
            if (!v) {
                undefined(ctx.loc);
                return;
            }
            inputs.push_back(std::move(*v));
        }
        auto result = eval_external(x.name, inputs);
        if (!result) {
            undefined(ctx.loc);
            return;
        }
        auto const &out = x.outputs.front();
        auto it = f.s.find(out.name());
        if (it == f.s.end()) {
            bind_and_continue(ctx, k, f, out.name(), std::move(*result));
            return;
        }
        bool equal = it->second == *result;
        if (equal != x.naf) { search(ctx, k + 1, f); }
    }

    // {{{2 aggregates

    std::vector<GroundElement> instantiate_elements(AggregateLiteral const &agg, std::vector<ElementPlan> const &plans,
                                                    Substitution const &s, Location const &loc) {
        std::vector<GroundElement> out;
        std::unordered_set<std::string> seen;
        for (std::size_t i = 0; i < agg.elements.size(); ++i) {
            auto const &e = agg.elements[i];
            auto const &ep = plans[i];
            std::vector<Window> windows(ep.plan.order.size());
            Done done = [&](Frame &ef) {
                GroundElement ge;
                for (auto const &t : e.terms) {
                    auto v = ground_term(t, ef.s);
                    if (!v) {
                        undefined(loc);
                        return;
                    }
                    ge.tuple.push_back(std::move(*v));
                }
                ge.condition = ef.lits;
                std::string key = to_string(ge.tuple) + ":";
                for (auto const &c : ge.condition) { key += (c.naf ? "-" : "+") + std::to_string(c.atom) + ","; }
                if (seen.insert(key).second) { out.push_back(std::move(ge)); }
            };
            Frame ef{s, {}, {}};
            search(Search{ep.condition, ep.plan, windows, nullptr, loc, done}, 0, ef);
        }
        return out;
    }

    static std::vector<Term> candidate_values(AggregateFunction fn, TupleSet const &certain,
                                              std::vector<std::vector<Term>> const &uncertain) {
        std::vector<Term> out;
        switch (fn) {
            case AggregateFunction::Count:
                for (std::size_t k = 0; k <= uncertain.size(); ++k) {
                    out.push_back(Term::number(Rational(static_cast<std::int64_t>(certain.size() + k))));
                }
                break;
            case AggregateFunction::Sum: {
                Rational base = aggregate_value(fn, certain).term.value();
                std::set<Rational> sums{base};
                for (auto const &t : uncertain) {
                    if (t.empty() || !t.front().is_number()) { continue; }
                    std::set<Rational> next = sums;
                    for (auto const &v : sums) { next.insert(v + t.front().value()); }
                    sums = std::move(next);
                }
                for (auto const &v : sums) { out.push_back(Term::number(v)); }
                break;
            }
            case AggregateFunction::Max:
            case AggregateFunction::Min: {
                auto base = aggregate_value(fn, certain);
                std::set<Term, TermLess> values;
                if (base.kind == AggregateValue::Kind::Finite) { values.insert(base.term); }
                bool is_max = fn == AggregateFunction::Max;
                for (auto const &t : uncertain) {
                    if (t.empty()) { continue; }
                    auto c = compare(base, t.front());
                    if (is_max ? c < 0 : c > 0) { values.insert(t.front()); }
                }
                out.assign(values.begin(), values.end());
                break;
            }
        }
        return out;
    }

    void aggregate(Search const &ctx, std::size_t k, Frame &f, AggregateLiteral const &agg,
                   std::vector<ElementPlan> const &plans) {
        bool assignment = agg.rel == Relation::Eq && !agg.naf && agg.guard.is_variable() &&
                          !f.s.contains(agg.guard.name());
        std::optional<Term> guard;
        if (!assignment) {
            guard = ground_term(agg.guard, f.s);
            if (!guard) {
                undefined(ctx.loc);
                return;
            }
        }
        auto elements = instantiate_elements(agg, plans, f.s, ctx.loc);
        TupleSet certain;
        for (auto const &e : elements) {
            if (e.condition.empty()) { certain.insert(e.tuple); }
        }
        TupleSet uncertain_set;
        for (auto const &e : elements) {
            if (!e.condition.empty() && !certain.contains(e.tuple)) { uncertain_set.insert(e.tuple); }
        }
        std::vector<std::vector<Term>> uncertain(uncertain_set.begin(), uncertain_set.end());
        if (uncertain.empty()) {
            elements.clear();
            for (auto const &t : certain) { elements.push_back(GroundElement{t, {}}); }
        }
        if (assignment) {
            for (auto &v : candidate_values(agg.fn, certain, uncertain)) {
                if (uncertain.empty()) {
                    bind_and_continue(ctx, k, f, agg.guard.name(), std::move(v));
                    continue;
                }
                f.aggs.push_back(GroundAggregate{false, agg.fn, Relation::Eq, v, elements});
                bind_and_continue(ctx, k, f, agg.guard.name(), std::move(v));
                f.aggs.pop_back();
            }
            return;
        }
        if (uncertain.empty()) {
            if (aggregate_holds(agg.fn, agg.rel, *guard, certain) != agg.naf) { search(ctx, k + 1, f); }
            return;
        }
        f.aggs.push_back(GroundAggregate{agg.naf, agg.fn, agg.rel, std::move(*guard), std::move(elements)});
        search(ctx, k + 1, f);
        f.aggs.pop_back();
    }

    // {{{2 statements

    StatementPlan const &rule_plan(std::size_t i) {
        auto it = rule_plans_.find(i);
        if (it == rule_plans_.end()) {
            auto const &r = prg_.rules[i];
            it = rule_plans_.emplace(i, make_statement_plan(r.body, classify_variables(r), r.loc)).first;
        }
        return it->second;
    }

    static void dedupe(std::vector<GroundLiteral> &lits) {
        std::vector<GroundLiteral> out;
        for (auto const &l : lits) {
            if (std::find(out.begin(), out.end(), l) == out.end()) { out.push_back(l); }
        }
        lits = std::move(out);
    }

    void emit_rule(GroundRule rule) {
        dedupe(rule.body);
        std::string key = to_string(rule, out_.atoms);
        if (emitted_.insert(std::move(key)).second) { out_.rules.push_back(std::move(rule)); }
    }

    void finish_rule(Rule const &r, Frame &f) {
        std::vector<Atom> heads;
        for (auto const &a : r.head) {
            auto g = ground_atom(a, f.s);
            if (!g) {
                undefined(r.loc);
                return;
            }
            auto idx = out_.atoms.find(*g);
            if (idx && out_.is_fact(*idx)) { return; }
            heads.push_back(std::move(*g));
        }
        GroundRule rule;
        for (auto &h : heads) {
            auto idx = intern(std::move(h));
            derive(idx);
            if (std::find(rule.head.begin(), rule.head.end(), idx) == rule.head.end()) { rule.head.push_back(idx); }
        }
        rule.body = f.lits;
        rule.aggregates = f.aggs;
        // a rule whose head occurs positively in its body is always satisfied
        for (auto const &l : rule.body) {
            if (!l.naf && std::find(rule.head.begin(), rule.head.end(), l.atom) != rule.head.end()) { return; }
        }
        if (rule.is_fact()) {
            out_.facts[rule.head.front()] = true;
            out_.rules.push_back(std::move(rule));
            return;
        }
        emit_rule(std::move(rule));
    }

    void ground_rule(std::size_t i, std::vector<Window> windows) {
        auto const &r = prg_.rules[i];
        auto const &sp = rule_plan(i);
        if (windows.empty()) { windows.resize(sp.body.order.size()); }
        Done done = [&](Frame &f) { finish_rule(r, f); };
        Frame f;
        search(Search{r.body, sp.body, windows, &sp.elements, r.loc, done}, 0, f);
    }

    // Positions (in plan order) of positive literals over predicates of the
    // component being grounded.
    std::vector<std::size_t> recursive_steps(std::size_t i, std::set<std::string> const &sigs) {
        auto const &r = prg_.rules[i];
        auto const &sp = rule_plan(i);
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < sp.body.order.size(); ++k) {
            auto const *cl = std::get_if<ClassicalLiteral>(&r.body[sp.body.order[k]]);
            if (cl && !cl->naf && sigs.contains(cl->atom.signature())) { out.push_back(k); }
        }
        return out;
    }

    std::map<std::string, std::size_t> sizes(std::set<std::string> const &sigs) {
        std::map<std::string, std::size_t> out;
        for (auto const &s : sigs) { out[s] = domain(s).atoms.size(); }
        return out;
    }

    void ground_component(std::vector<std::size_t> const &rules) {
        if (rules.empty()) {
            return;
        }
        std::size_t comp = component_of_[node_index_.at(prg_.rules[rules.front()].head.front().signature())];
        auto const &sigs = component_sigs_[comp];
        std::map<std::size_t, std::vector<std::size_t>> rec;
        for (auto i : rules) { rec[i] = recursive_steps(i, sigs); }
        auto signature_at = [&](std::size_t i, std::size_t k) {
            auto const &r = prg_.rules[i];
            return std::get<ClassicalLiteral>(r.body[rule_plan(i).body.order[k]]).atom.signature();
        };
        auto prev = sizes(sigs);
        for (auto i : rules) {
            std::vector<Window> windows(rule_plan(i).body.order.size());
            for (auto k : rec[i]) { windows[k] = Window{0, prev[signature_at(i, k)]}; }
            ground_rule(i, std::move(windows));
        }
        for (;;) {
            auto cur = sizes(sigs);
            if (cur == prev) { break; }
            for (auto i : rules) {
                auto const &steps = rec[i];
                for (std::size_t d = 0; d < steps.size(); ++d) {
                    std::vector<Window> windows(rule_plan(i).body.order.size());
                    for (std::size_t j = 0; j < steps.size(); ++j) {
                        auto sig = signature_at(i, steps[j]);
                        if (j < d) { windows[steps[j]] = Window{0, prev[sig]}; }
                        else if (j == d) { windows[steps[j]] = Window{prev[sig], cur[sig]}; }
                        else { windows[steps[j]] = Window{0, cur[sig]}; }
                    }
                    ground_rule(i, std::move(windows));
                }
            }
            prev = std::move(cur);
        }
        for (auto const &s : sigs) { domain(s).complete = true; }
    }

    void ground_weak(WeakConstraint const &c) {
        auto sp = make_statement_plan(c.body, classify_variables(c), c.loc);
        std::vector<Window> windows(sp.body.order.size());
        std::unordered_set<std::string> seen;
        Done done = [&](Frame &f) {
            GroundWeak w;
            auto weight = ground_term(c.weight, f.s);
            auto level = ground_term(c.level, f.s);
            if (!weight || !level || !weight->is_number() || !level->is_number()) {
                undefined(c.loc);
                return;
            }
            w.weight = std::move(*weight);
            w.level = std::move(*level);
            for (auto const &t : c.terms) {
                auto v = ground_term(t, f.s);
                if (!v) {
                    undefined(c.loc);
                    return;
                }
                w.terms.push_back(std::move(*v));
            }
            w.body = f.lits;
            dedupe(w.body);
            w.aggregates = f.aggs;
            if (weak_keys_.insert(to_string(w, out_.atoms)).second) { out_.weaks.push_back(std::move(w)); }
        };
        Frame f;
        search(Search{c.body, sp.body, windows, &sp.elements, c.loc, done}, 0, f);
    }

    // {{{2 final simplification and renumbering

    enum class Verdict : std::uint8_t { Keep, Drop };

    // Removes literals that are decided by facts or undefined atoms.
    Verdict simplify(std::vector<GroundLiteral> &body, std::vector<GroundAggregate> &aggs,
                     std::vector<bool> const &defined) const {
        std::vector<GroundLiteral> kept;
        for (auto const &l : body) {
            bool fact = out_.is_fact(l.atom);
            bool def = defined[l.atom];
            if (l.naf ? fact : !def) { return Verdict::Drop; }
            if (l.naf ? !def : fact) { continue; }
            kept.push_back(l);
        }
        body = std::move(kept);
        std::vector<GroundAggregate> kept_aggs;
        for (auto &a : aggs) {
            std::vector<GroundElement> elems;
            for (auto &e : a.elements) {
                std::vector<GroundLiteral> cond;
                bool alive = true;
                for (auto const &l : e.condition) {
                    bool fact = out_.is_fact(l.atom);
                    bool def = defined[l.atom];
                    if (l.naf ? fact : !def) {
                        alive = false;
                        break;
                    }
                    if (l.naf ? !def : fact) { continue; }
                    cond.push_back(l);
                }
                if (alive) { elems.push_back(GroundElement{std::move(e.tuple), std::move(cond)}); }
            }
            a.elements = std::move(elems);
            bool decided = std::all_of(a.elements.begin(), a.elements.end(),
                                       [](GroundElement const &e) { return e.condition.empty(); });
            if (decided) {
                TupleSet tuples;
                for (auto const &e : a.elements) { tuples.insert(e.tuple); }
                if (aggregate_holds(a.fn, a.rel, a.guard, tuples) == a.naf) { return Verdict::Drop; }
                continue;
            }
            kept_aggs.push_back(std::move(a));
        }
        aggs = std::move(kept_aggs);
        return Verdict::Keep;
    }

    void add_consistency_constraints() {
        for (AtomIndex i = 0; i < out_.atoms.size(); ++i) {
            auto const &a = out_.atoms.atom(i);
            if (!a.strong_neg || domain_pos_[i] == not_derived) { continue; }
            auto pos = out_.atoms.find(Atom{false, a.predicate, a.args});
            if (!pos || domain_pos_[*pos] == not_derived) { continue; }
            emit_rule(GroundRule{{}, {{*pos, false}, {i, false}}, {}});
        }
    }

    void finalize() {
        add_consistency_constraints();
        std::size_t n = out_.atoms.size();
        out_.facts.resize(n, false);
        for (;;) {
            std::vector<bool> defined(n, false);
            for (auto const &r : out_.rules) {
                for (auto h : r.head) { defined[h] = true; }
            }
            bool changed = false;
            std::vector<GroundRule> rules;
            std::unordered_set<std::string> keys;
            for (auto &r : out_.rules) {
                if (r.is_fact()) {
                    if (keys.insert(to_string(r, out_.atoms)).second) { rules.push_back(std::move(r)); }
                    continue;
                }
                bool satisfied = std::any_of(r.head.begin(), r.head.end(), [&](AtomIndex h) { return out_.is_fact(h); });
                std::size_t before = r.body.size() + r.aggregates.size();
                if (satisfied || simplify(r.body, r.aggregates, defined) == Verdict::Drop) {
                    changed = true;
                    continue;
                }
                changed = changed || before != r.body.size() + r.aggregates.size();
                if (r.is_fact()) {
                    out_.facts[r.head.front()] = true;
                    changed = true;
                }
                if (keys.insert(to_string(r, out_.atoms)).second) { rules.push_back(std::move(r)); }
            }
            out_.rules = std::move(rules);
            if (!changed) {
                std::vector<GroundWeak> weaks;
                for (auto &w : out_.weaks) {
                    if (simplify(w.body, w.aggregates, defined) == Verdict::Keep) { weaks.push_back(std::move(w)); }
                }
                out_.weaks = std::move(weaks);
                renumber(defined);
                return;
            }
        }
    }

    void renumber(std::vector<bool> const &defined) {
        GroundProgram g;
        std::vector<AtomIndex> map(out_.atoms.size(), 0);
        for (AtomIndex i = 0; i < out_.atoms.size(); ++i) {
            if (!defined[i]) { continue; }
            map[i] = g.add_atom(out_.atoms.atom(i));
            g.facts[map[i]] = out_.is_fact(i);
        }
        auto remap_body = [&](std::vector<GroundLiteral> &body, std::vector<GroundAggregate> &aggs) {
            for (auto &l : body) { l.atom = map[l.atom]; }
            for (auto &a : aggs) {
                for (auto &e : a.elements) {
                    for (auto &l : e.condition) { l.atom = map[l.atom]; }
                }
            }
        };
        for (auto &r : out_.rules) {
            for (auto &h : r.head) { h = map[h]; }
            remap_body(r.body, r.aggregates);
        }
        for (auto &w : out_.weaks) { remap_body(w.body, w.aggregates); }
        g.rules = std::move(out_.rules);
        g.weaks = std::move(out_.weaks);
        out_ = std::move(g);
    }

    SourceProgram const &prg_;
    GroundOptions const &opts_;
    GroundProgram out_;

    std::vector<std::string> sigs_;
    std::unordered_map<std::string, std::size_t> node_index_;
    std::vector<std::vector<std::size_t>> edges_;
    std::vector<std::size_t> component_of_;
    std::vector<std::vector<std::size_t>> components_;
    std::vector<std::set<std::string>> component_sigs_;
    std::map<std::size_t, StatementPlan> rule_plans_;

    std::unordered_map<std::string, Domain> domains_;
    std::vector<std::uint32_t> domain_pos_;
    std::unordered_set<std::string> emitted_;
    std::unordered_set<std::string> weak_keys_;
};

} // namespace

GroundProgram ground(SourceProgram const &p, GroundOptions const &opts) {
    return Grounder(p, opts).run();
}

} // namespace ratasp
