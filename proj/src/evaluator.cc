#include "ratasp/evaluator.hh"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ratasp {

bool satisfied(GroundLiteral const &l, Interpretation const &i) {
    return i[l.atom] != l.naf;
}

bool satisfied(GroundAggregate const &a, Interpretation const &i) {
    TupleSet tuples;
    for (auto const &e : a.elements) {
        if (std::all_of(e.condition.begin(), e.condition.end(),
                        [&](GroundLiteral const &l) { return satisfied(l, i); })) {
            tuples.insert(e.tuple);
        }
    }
    return aggregate_holds(a.fn, a.rel, a.guard, tuples) != a.naf;
}

bool body_true(std::vector<GroundLiteral> const &body, std::vector<GroundAggregate> const &aggs,
               Interpretation const &i) {
    return std::all_of(body.begin(), body.end(), [&](GroundLiteral const &l) { return satisfied(l, i); }) &&
           std::all_of(aggs.begin(), aggs.end(), [&](GroundAggregate const &a) { return satisfied(a, i); });
}

namespace {

bool rule_satisfied(GroundRule const &r, Interpretation const &i) {
    return std::any_of(r.head.begin(), r.head.end(), [&](AtomIndex h) { return i[h]; }) ||
           !body_true(r.body, r.aggregates, i);
}

// Pairs (p, -p) present in the atom table.
std::vector<std::pair<AtomIndex, AtomIndex>> complementary_pairs(GroundProgram const &g) {
    std::vector<std::pair<AtomIndex, AtomIndex>> out;
    for (AtomIndex k = 0; k < g.atoms.size(); ++k) {
        auto const &a = g.atoms.atom(k);
        if (!a.strong_neg) { continue; }
        if (auto p = g.atoms.find(Atom{false, a.predicate, a.args})) { out.emplace_back(*p, k); }
    }
    return out;
}

class Search {
public:
    explicit Search(GroundProgram const &g) : g_(g), pairs_(complementary_pairs(g)) {
        for (AtomIndex k = 0; k < g.atoms.size(); ++k) {
            if (!g.is_fact(k)) { free_.push_back(k); }
        }
        if (free_.size() > max_brute_force_atoms) {
            throw TooLargeForBruteForce(std::to_string(free_.size()) + " non-fact atoms exceed the limit of " +
                                        std::to_string(max_brute_force_atoms) + " for exhaustive search");
        }
    }

    std::uint64_t candidates() const { return std::uint64_t{1} << free_.size(); }

    Interpretation interpretation(std::uint64_t mask) const {
        Interpretation i(g_.atoms.size(), false);
        for (AtomIndex k = 0; k < g_.atoms.size(); ++k) { i[k] = g_.is_fact(k); }
        for (std::size_t b = 0; b < free_.size(); ++b) {
            if ((mask >> b) & 1U) { i[free_[b]] = true; }
        }
        return i;
    }

    bool answer_set(std::uint64_t mask) const {
        auto i = interpretation(mask);
        for (auto const &[p, n] : pairs_) {
            if (i[p] && i[n]) { return false; }
        }
        std::vector<GroundRule const *> reduct;
        for (auto const &r : g_.rules) {
            if (!body_true(r.body, r.aggregates, i)) { continue; }
            if (std::none_of(r.head.begin(), r.head.end(), [&](AtomIndex h) { return i[h]; })) { return false; }
            reduct.push_back(&r);
        }
        // no proper subset of i may be a model of the reduct
        if (mask == 0) { return true; }
        for (std::uint64_t sub = (mask - 1) & mask;; sub = (sub - 1) & mask) {
            auto j = interpretation(sub);
            if (std::all_of(reduct.begin(), reduct.end(), [&](GroundRule const *r) { return rule_satisfied(*r, j); })) {
                return false;
            }
            if (sub == 0) { break; }
        }
        return true;
    }

    // Canonical order: compare the term-order-sorted atom lists.
    std::vector<Interpretation> sorted(std::vector<std::uint64_t> const &masks) const {
        std::vector<AtomIndex> order(g_.atoms.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](AtomIndex a, AtomIndex b) {
            return term_order(g_.atoms.atom(a).as_term(), g_.atoms.atom(b).as_term()) < 0;
        });
        std::vector<std::pair<std::vector<std::size_t>, Interpretation>> keyed;
        for (auto m : masks) {
            auto i = interpretation(m);
            std::vector<std::size_t> key;
            for (std::size_t r = 0; r < order.size(); ++r) {
                if (i[order[r]]) { key.push_back(r); }
            }
            keyed.emplace_back(std::move(key), std::move(i));
        }
        std::sort(keyed.begin(), keyed.end(), [](auto const &a, auto const &b) { return a.first < b.first; });
        std::vector<Interpretation> out;
        for (auto &k : keyed) { out.push_back(std::move(k.second)); }
        return out;
    }

private:
    GroundProgram const &g_;
    std::vector<std::pair<AtomIndex, AtomIndex>> pairs_;
    std::vector<AtomIndex> free_;
};

} // namespace

bool is_model(GroundProgram const &g, Interpretation const &i) {
    return std::all_of(g.rules.begin(), g.rules.end(), [&](GroundRule const &r) { return rule_satisfied(r, i); });
}

bool consistent(GroundProgram const &g, Interpretation const &i) {
    auto pairs = complementary_pairs(g);
    return std::none_of(pairs.begin(), pairs.end(), [&](auto const &p) { return i[p.first] && i[p.second]; });
}

GroundProgram reduct(GroundProgram const &g, Interpretation const &i) {
    GroundProgram out;
    out.atoms = g.atoms;
    out.facts = g.facts;
    for (auto const &r : g.rules) {
        if (body_true(r.body, r.aggregates, i)) { out.rules.push_back(r); }
    }
    out.weaks = g.weaks;
    return out;
}

std::vector<Interpretation> answer_sets_serial(GroundProgram const &g) {
    Search s(g);
    std::vector<std::uint64_t> found;
    for (std::uint64_t m = 0; m < s.candidates(); ++m) {
        if (s.answer_set(m)) { found.push_back(m); }
    }
    return s.sorted(found);
}

std::vector<Interpretation> answer_sets(GroundProgram const &g) {
    Search s(g);
    auto n = static_cast<std::int64_t>(s.candidates());
    std::vector<std::uint64_t> found;
#pragma omp parallel
    {
        std::vector<std::uint64_t> local;
#pragma omp for schedule(dynamic, 64) nowait
        for (std::int64_t m = 0; m < n; ++m) {
            if (s.answer_set(static_cast<std::uint64_t>(m))) { local.push_back(static_cast<std::uint64_t>(m)); }
        }
#pragma omp critical
        found.insert(found.end(), local.begin(), local.end());
    }
    return s.sorted(found);
}

CostVector costs(GroundProgram const &g, Interpretation const &i) {
    std::set<std::vector<Term>, TupleLess> tuples;
    for (auto const &w : g.weaks) {
        if (!body_true(w.body, w.aggregates, i)) { continue; }
        std::vector<Term> key{w.weight, w.level};
        key.insert(key.end(), w.terms.begin(), w.terms.end());
        tuples.insert(std::move(key));
    }
    CostVector out;
    for (auto const &t : tuples) {
        if (!t[0].is_number() || !t[1].is_number()) { continue; }
        out[t[1].value()] = out[t[1].value()] + t[0].value();
    }
    return out;
}

int compare_costs(CostVector const &a, CostVector const &b) {
    std::set<Rational> levels;
    for (auto const &[l, c] : a) { levels.insert(l); }
    for (auto const &[l, c] : b) { levels.insert(l); }
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        auto ca = a.contains(*it) ? a.at(*it) : Rational{};
        auto cb = b.contains(*it) ? b.at(*it) : Rational{};
        if (ca != cb) { return ca < cb ? -1 : 1; }
    }
    return 0;
}

std::vector<Interpretation> optimal_answer_sets(GroundProgram const &g) {
    auto all = answer_sets(g);
    if (all.empty()) { return all; }
    std::vector<CostVector> cs;
    for (auto const &i : all) { cs.push_back(costs(g, i)); }
    auto best = *std::min_element(cs.begin(), cs.end(),
                                  [](CostVector const &a, CostVector const &b) { return compare_costs(a, b) < 0; });
    std::vector<Interpretation> out;
    for (std::size_t k = 0; k < all.size(); ++k) {
        if (compare_costs(cs[k], best) == 0) { out.push_back(std::move(all[k])); }
    }
    return out;
}

std::string format_answer_set(GroundProgram const &g, Interpretation const &i, PrintOptions const &opts) {
    std::vector<AtomIndex> atoms;
    for (AtomIndex k = 0; k < g.atoms.size(); ++k) {
        if (i[k]) { atoms.push_back(k); }
    }
    std::sort(atoms.begin(), atoms.end(), [&](AtomIndex a, AtomIndex b) {
        return term_order(g.atoms.atom(a).as_term(), g.atoms.atom(b).as_term()) < 0;
    });
    std::string out = "{";
    for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (k > 0) { out += ", "; }
        out += to_string(g.atoms.atom(atoms[k]), opts);
    }
    return out + "}";
}

std::string format_costs(GroundProgram const &g, CostVector const &c, PrintOptions const &opts) {
    std::set<Rational> levels;
    for (auto const &w : g.weaks) {
        if (w.level.is_number()) { levels.insert(w.level.value()); }
    }
    for (auto const &[l, v] : c) { levels.insert(l); }
    std::string out = "COSTS";
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
        auto v = c.contains(*it) ? c.at(*it) : Rational{};
        out += " " + to_string(Term::number(*it), opts) + ":" + to_string(Term::number(v), opts);
    }
    return out;
}

} // namespace ratasp
