#include "ratasp/term.hh"

#include <ostream>

namespace ratasp {

char const *op_symbol(ArithOp op) {
    switch (op) {
        case ArithOp::Neg: return "-";
        case ArithOp::Add: return "+";
        case ArithOp::Sub: return "-";
        case ArithOp::Mul: return "*";
        case ArithOp::Div: return "/";
        case ArithOp::Mod: return "\\";
        case ArithOp::Range: return "..";
    }
    return "?";
}

Term Term::number(Rational value) {
    Term t;
    t.kind_ = TermKind::Number;
    t.value_ = std::move(value);
    return t;
}

Term Term::symbol(std::string name) {
    Term t;
    t.kind_ = TermKind::Symbol;
    t.name_ = std::move(name);
    return t;
}

Term Term::string(std::string text) {
    Term t;
    t.kind_ = TermKind::String;
    t.name_ = std::move(text);
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = TermKind::Variable;
    t.name_ = std::move(name);
    return t;
}

Term Term::function(std::string name, std::vector<Term> args) {
    if (args.empty()) { return symbol(std::move(name)); }
    Term t;
    t.kind_ = TermKind::Function;
    t.name_ = std::move(name);
    t.args_ = std::move(args);
    return t;
}

Term Term::arithmetic(ArithOp op, std::vector<Term> operands) {
    if (operands.size() != (op == ArithOp::Neg ? 1u : 2u)) {
        throw InternalError("wrong operand count for arithmetic term");
    }
    Term t;
    t.kind_ = TermKind::Arithmetic;
    t.op_ = op;
    t.args_ = std::move(operands);
    return t;
}

bool Term::ground() const {
    if (kind_ == TermKind::Variable) { return false; }
    for (auto const &a : args_) {
        if (!a.ground()) { return false; }
    }
    return true;
}

bool Term::evaluated() const {
    if (kind_ == TermKind::Variable || kind_ == TermKind::Arithmetic) { return false; }
    for (auto const &a : args_) {
        if (!a.evaluated()) { return false; }
    }
    return true;
}

bool Term::contains_range() const {
    if (kind_ == TermKind::Arithmetic && op_ == ArithOp::Range) { return true; }
    for (auto const &a : args_) {
        if (a.contains_range()) { return true; }
    }
    return false;
}

void Term::collect_variables(std::set<std::string> &out) const {
    if (kind_ == TermKind::Variable) {
        out.insert(name_);
        return;
    }
    for (auto const &a : args_) { a.collect_variables(out); }
}

namespace {

int kind_rank(Term const &t) {
    switch (t.kind()) {
        case TermKind::Number: return 0;
        case TermKind::Symbol: return 1;
        case TermKind::String: return 2;
        case TermKind::Function: return 3;
        default: throw InternalError("term order requires evaluated ground terms: " + to_string(t));
    }
}

std::strong_ordering bytewise(std::string const &a, std::string const &b) {
    int c = a.compare(b);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

} // namespace

std::strong_ordering term_order(Term const &t, Term const &u) {
    int rt = kind_rank(t);
    int ru = kind_rank(u);
    if (rt != ru) { return rt <=> ru; }
    switch (t.kind()) {
        case TermKind::Number: return t.value() <=> u.value();
        case TermKind::Symbol:
        case TermKind::String: return bytewise(t.name(), u.name());
        default: break;
    }
    if (auto c = t.args().size() <=> u.args().size(); c != 0) { return c; }
    if (auto c = bytewise(t.name(), u.name()); c != 0) { return c; }
    return tuple_order(t.args(), u.args());
}

std::strong_ordering tuple_order(std::vector<Term> const &a, std::vector<Term> const &b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = term_order(a[i], b[i]); c != 0) { return c; }
    }
    return a.size() <=> b.size();
}

Term standardize(Term const &t, bool integer_division) {
    if (t.kind() != TermKind::Arithmetic && t.kind() != TermKind::Function) { return t; }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (auto const &a : t.args()) { args.push_back(standardize(a, integer_division)); }
    if (t.kind() == TermKind::Function) { return Term::function(t.name(), std::move(args)); }
    if (t.op() == ArithOp::Neg && args[0].is_number()) { return Term::number(-args[0].value()); }
    if (t.op() == ArithOp::Div && args[0].is_number() && args[1].is_number() &&
        args[0].value().is_integer() && args[1].value().is_integer() && !args[1].value().is_zero()) {
        auto const &p = args[0].value();
        auto const &q = args[1].value();
        return Term::number(integer_division ? integer_divide(p, q) : p / q);
    }
    return Term::arithmetic(t.op(), std::move(args));
}

namespace {

int precedence(Term const &t) {
    if (t.kind() != TermKind::Arithmetic) { return 10; }
    switch (t.op()) {
        case ArithOp::Range: return 0;
        case ArithOp::Add:
        case ArithOp::Sub: return 1;
        case ArithOp::Mul:
        case ArithOp::Div:
        case ArithOp::Mod: return 2;
        case ArithOp::Neg: return 3;
    }
    return 10;
}

std::string quote(std::string const &text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') { out += '\\'; }
        out += c;
    }
    return out + "\"";
}

std::string render_number(Rational const &r, PrintOptions const &opts) {
    if (opts.decimal && !r.is_integer()) { return to_decimal_string(r, opts.digits); }
    return r.str();
}

void render(std::string &out, Term const &t, PrintOptions const &opts);

// Operands of arithmetic terms are parenthesized when needed to reparse into
// the same tree; composite numbers (negative or fractional) always are.
void render_operand(std::string &out, Term const &t, int parent, bool strict, PrintOptions const &opts) {
    bool composite = t.is_number() && (t.value().sign() < 0 || !t.value().is_integer());
    int p = precedence(t);
    bool wrap = composite || p < parent || (strict && p == parent);
    if (wrap) { out += '('; }
    render(out, t, opts);
    if (wrap) { out += ')'; }
}

void render(std::string &out, Term const &t, PrintOptions const &opts) {
    switch (t.kind()) {
        case TermKind::Number: out += render_number(t.value(), opts); return;
        case TermKind::Symbol:
        case TermKind::Variable: out += t.name(); return;
        case TermKind::String: out += quote(t.name()); return;
        case TermKind::Function: {
            out += t.name();
            out += '(';
            bool first = true;
            for (auto const &a : t.args()) {
                if (!first) { out += ','; }
                first = false;
                render(out, a, opts);
            }
            out += ')';
            return;
        }
        case TermKind::Arithmetic: {
            int p = precedence(t);
            if (t.op() == ArithOp::Neg) {
                out += '-';
                render_operand(out, t.args()[0], p, false, opts);
                return;
            }
            render_operand(out, t.args()[0], p, false, opts);
            out += op_symbol(t.op());
            render_operand(out, t.args()[1], p, true, opts);
            return;
        }
    }
}

} // namespace

std::string to_string(Term const &t, PrintOptions const &opts) {
    std::string out;
    render(out, t, opts);
    return out;
}

std::string to_string(std::vector<Term> const &tuple, PrintOptions const &opts) {
    std::string out;
    bool first = true;
    for (auto const &t : tuple) {
        if (!first) { out += ','; }
        first = false;
        render(out, t, opts);
    }
    return out;
}

std::ostream &operator<<(std::ostream &out, Term const &t) {
    return out << to_string(t);
}

} // namespace ratasp
