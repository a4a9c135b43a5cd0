#include "ratasp/parser.hh"

#include <functional>

namespace ratasp {

char const *token_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Variable: return "variable";
        case TokenKind::Anonymous: return "'_'";
        case TokenKind::Integer: return "integer";
        case TokenKind::Decimal: return "decimal";
        case TokenKind::String: return "string";
        case TokenKind::Aggregate: return "aggregate function";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::LBracket: return "'['";
        case TokenKind::RBracket: return "']'";
        case TokenKind::Comma: return "','";
        case TokenKind::Semicolon: return "';'";
        case TokenKind::Colon: return "':'";
        case TokenKind::Dot: return "'.'";
        case TokenKind::DotDot: return "'..'";
        case TokenKind::Bar: return "'|'";
        case TokenKind::If: return "':-'";
        case TokenKind::WeakIf: return "':~'";
        case TokenKind::At: return "'@'";
        case TokenKind::Amp: return "'&'";
        case TokenKind::Plus: return "'+'";
        case TokenKind::Minus: return "'-'";
        case TokenKind::Star: return "'*'";
        case TokenKind::Slash: return "'/'";
        case TokenKind::Backslash: return "'\\'";
        case TokenKind::Eq: return "'='";
        case TokenKind::Ne: return "'!='";
        case TokenKind::Lt: return "'<'";
        case TokenKind::Le: return "'<='";
        case TokenKind::Gt: return "'>'";
        case TokenKind::Ge: return "'>='";
        case TokenKind::End: return "end of input";
    }
    return "token";
}

// {{{1 lexer

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word(char c) { return is_lower(c) || is_upper(c) || is_digit(c) || c == '_'; }

class Lexer {
public:
    Lexer(std::string_view text, std::string const &file) : text_(text) { loc_.file = file; }

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token tok;
            tok.loc = loc_;
            if (pos_ >= text_.size()) {
                out.push_back(std::move(tok));
                return out;
            }
            lex_one(tok);
            out.push_back(std::move(tok));
        }
    }

private:
    char peek(std::size_t k = 0) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
            if (text_[pos_] == '\n') {
                ++loc_.line;
                loc_.column = 1;
            }
            else {
                ++loc_.column;
            }
        }
    }

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = peek();
            if (c == '%') {
                while (pos_ < text_.size() && peek() != '\n') { advance(); }
            }
            else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            }
            else {
                break;
            }
        }
    }

    std::string take_word() {
        std::size_t start = pos_;
        while (is_word(peek())) { advance(); }
        return std::string(text_.substr(start, pos_ - start));
    }

    void single(Token &tok, TokenKind kind, std::size_t n) {
        tok.kind = kind;
        tok.text = std::string(text_.substr(pos_, n));
        advance(n);
    }

    void lex_one(Token &tok) {
        char c = peek();
        if (is_lower(c)) {
            tok.kind = TokenKind::Identifier;
            tok.text = take_word();
            return;
        }
        if (is_upper(c)) {
            tok.kind = TokenKind::Variable;
            tok.text = take_word();
            return;
        }
        if (c == '_') {
            tok.text = take_word();
            tok.kind = tok.text.size() == 1 ? TokenKind::Anonymous : TokenKind::Variable;
            return;
        }
        if (is_digit(c)) {
            std::size_t start = pos_;
            while (is_digit(peek())) { advance(); }
            tok.kind = TokenKind::Integer;
            if (peek() == '.' && is_digit(peek(1))) {
                advance();
                while (is_digit(peek())) { advance(); }
                tok.kind = TokenKind::Decimal;
            }
            tok.text = std::string(text_.substr(start, pos_ - start));
            return;
        }
        if (c == '"') {
            lex_string(tok);
            return;
        }
        if (c == '#') {
            advance();
            if (!is_lower(peek())) { throw SyntaxError(tok.loc, "expected directive name after '#'"); }
            tok.kind = TokenKind::Aggregate;
            tok.text = "#" + take_word();
            return;
        }
        // U+223C TILDE OPERATOR, as in ":∼"
        if (c == ':' && text_.substr(pos_ + 1, 3) == "\xE2\x88\xBC") {
            tok.kind = TokenKind::WeakIf;
            tok.text = ":~";
            advance(4);
            return;
        }
        switch (c) {
            case '(': return single(tok, TokenKind::LParen, 1);
            case ')': return single(tok, TokenKind::RParen, 1);
            case '{': return single(tok, TokenKind::LBrace, 1);
            case '}': return single(tok, TokenKind::RBrace, 1);
            case '[': return single(tok, TokenKind::LBracket, 1);
            case ']': return single(tok, TokenKind::RBracket, 1);
            case ',': return single(tok, TokenKind::Comma, 1);
            case ';': return single(tok, TokenKind::Semicolon, 1);
            case '|': return single(tok, TokenKind::Bar, 1);
            case '@': return single(tok, TokenKind::At, 1);
            case '&': return single(tok, TokenKind::Amp, 1);
            case '+': return single(tok, TokenKind::Plus, 1);
            case '-': return single(tok, TokenKind::Minus, 1);
            case '*': return single(tok, TokenKind::Star, 1);
            case '/': return single(tok, TokenKind::Slash, 1);
            case '\\': return single(tok, TokenKind::Backslash, 1);
            case ':':
                if (peek(1) == '-') { return single(tok, TokenKind::If, 2); }
                if (peek(1) == '~') { return single(tok, TokenKind::WeakIf, 2); }
                return single(tok, TokenKind::Colon, 1);
            case '.':
                if (peek(1) == '.') { return single(tok, TokenKind::DotDot, 2); }
                return single(tok, TokenKind::Dot, 1);
            case '=':
                return single(tok, TokenKind::Eq, peek(1) == '=' ? 2 : 1);
            case '!':
                if (peek(1) == '=') { return single(tok, TokenKind::Ne, 2); }
                break;
            case '<':
                if (peek(1) == '=') { return single(tok, TokenKind::Le, 2); }
                if (peek(1) == '>') { return single(tok, TokenKind::Ne, 2); }
                return single(tok, TokenKind::Lt, 1);
            case '>':
                if (peek(1) == '=') { return single(tok, TokenKind::Ge, 2); }
                return single(tok, TokenKind::Gt, 1);
            default: break;
        }
        throw SyntaxError(tok.loc, std::string("illegal character '") + c + "'");
    }

    void lex_string(Token &tok) {
        advance();
        std::string value;
        for (;;) {
            if (pos_ >= text_.size()) { throw SyntaxError(tok.loc, "unterminated string constant"); }
            char c = peek();
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\' && peek(1) == '"') {
                value += '"';
                advance(2);
                continue;
            }
            value += c;
            advance();
        }
        tok.kind = TokenKind::String;
        tok.text = std::move(value);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Location loc_;
};

} // namespace

std::vector<Token> tokenize(std::string_view text, std::string const &file) {
    return Lexer(text, file).run();
}

// {{{1 parser

namespace {

bool is_relation(TokenKind k) {
    return k == TokenKind::Eq || k == TokenKind::Ne || k == TokenKind::Lt || k == TokenKind::Le ||
           k == TokenKind::Gt || k == TokenKind::Ge;
}

Relation to_relation(TokenKind k) {
    switch (k) {
        case TokenKind::Lt: return Relation::Lt;
        case TokenKind::Le: return Relation::Le;
        case TokenKind::Ne: return Relation::Ne;
        case TokenKind::Gt: return Relation::Gt;
        case TokenKind::Ge: return Relation::Ge;
        default: return Relation::Eq;
    }
}

class Parser {
public:
    Parser(std::vector<Token> const &tokens, ParseOptions const &opts) : toks_(tokens), opts_(opts) {
        if (opts.decimal_digits < 0 || opts.decimal_digits > max_decimal_digits) {
            throw std::invalid_argument("decimal digits must be within 0.." + std::to_string(max_decimal_digits));
        }
        if (toks_.empty() || toks_.back().kind != TokenKind::End) {
            throw InternalError("token stream must end with an end token");
        }
    }

    SourceProgram run() {
        SourceProgram prg;
        while (peek().kind != TokenKind::End) { statement(prg); }
        return prg;
    }

private:
    Token const &peek(std::size_t k = 0) const {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }

    Token const &next() {
        Token const &t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) { ++pos_; }
        return t;
    }

    bool accept(TokenKind k) {
        if (peek().kind == k) {
            next();
            return true;
        }
        return false;
    }

    [[noreturn]] void unexpected(std::string const &expected) const {
        auto const &t = peek();
        std::string got = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError(t.loc, "unexpected " + got + ", expected " + expected);
    }

    Token const &expect(TokenKind k) {
        if (peek().kind != k) { unexpected(token_name(k)); }
        return next();
    }

    // {{{2 statements

    void statement(SourceProgram &prg) {
        Location loc = peek().loc;
        if (accept(TokenKind::If)) {
            Rule r;
            r.loc = loc;
            if (peek().kind != TokenKind::Dot) { r.body = body(); }
            expect(TokenKind::Dot);
            prg.rules.push_back(std::move(r));
            return;
        }
        if (accept(TokenKind::WeakIf)) {
            WeakConstraint c;
            c.loc = loc;
            if (peek().kind != TokenKind::Dot) { c.body = body(); }
            expect(TokenKind::Dot);
            expect(TokenKind::LBracket);
            c.weight = term();
            if (accept(TokenKind::At)) { c.level = term(); }
            while (accept(TokenKind::Comma)) { c.terms.push_back(term()); }
            expect(TokenKind::RBracket);
            prg.weaks.push_back(std::move(c));
            return;
        }
        Rule r;
        r.loc = loc;
        r.head.push_back(head_atom());
        while (accept(TokenKind::Bar)) { r.head.push_back(head_atom()); }
        if (accept(TokenKind::If)) { r.body = body(); }
        expect(TokenKind::Dot);
        prg.rules.push_back(std::move(r));
    }

    Atom head_atom() {
        Location loc = peek().loc;
        Term t = term();
        return to_atom(t, loc);
    }

    static Atom to_atom(Term const &t, Location const &loc) {
        Term const *base = &t;
        bool neg = false;
        if (t.is_arithmetic() && t.op() == ArithOp::Neg) {
            base = &t.args()[0];
            neg = true;
        }
        if (base->kind() == TermKind::Symbol) { return Atom{neg, base->name(), {}}; }
        if (base->kind() == TermKind::Function) { return Atom{neg, base->name(), base->args()}; }
        throw SyntaxError(loc, "expected classical atom, got term '" + to_string(t) + "'");
    }

    std::vector<Literal> body() {
        std::vector<Literal> out;
        do {
            for (auto &l : literal()) { out.push_back(std::move(l)); }
        } while (accept(TokenKind::Comma));
        return out;
    }

    // {{{2 literals

    std::vector<Literal> literal() {
        Location loc = peek().loc;
        bool naf = false;
        if (peek().kind == TokenKind::Identifier && peek().text == "not") {
            next();
            naf = true;
        }
        if (peek().kind == TokenKind::Amp) { return {external(naf)}; }
        if (peek().kind == TokenKind::Aggregate) {
            AggregateLiteral agg = aggregate_body();
            return guarded(std::move(agg), std::nullopt, naf, loc);
        }
        Term t = term();
        if (is_relation(peek().kind)) {
            Relation rel = to_relation(next().kind);
            if (peek().kind == TokenKind::Aggregate) {
                AggregateLiteral agg = aggregate_body();
                return guarded(std::move(agg), std::make_pair(flip(rel), std::move(t)), naf, loc);
            }
            Term rhs = term();
            if (naf) { throw SyntaxError(loc, "built-in atoms cannot be negated"); }
            return {BuiltinAtom{rel, std::move(t), std::move(rhs)}};
        }
        return {ClassicalLiteral{to_atom(t, loc), naf}};
    }

    // Attaches the left guard (already flipped so the aggregate is on the
    // left) and an optional right guard.
    std::vector<Literal> guarded(AggregateLiteral agg, std::optional<std::pair<Relation, Term>> left, bool naf,
                                 Location const &loc) {
        std::optional<std::pair<Relation, Term>> right;
        if (is_relation(peek().kind)) {
            Relation rel = to_relation(next().kind);
            right = std::make_pair(rel, term());
        }
        if (!left && !right) { throw SyntaxError(peek().loc, "aggregate atom requires a comparison guard"); }
        agg.naf = naf;
        if (left && right) {
            if (naf) { throw SyntaxError(loc, "negated aggregate with two guards is not supported"); }
            AggregateLiteral second = agg;
            agg.rel = left->first;
            agg.guard = std::move(left->second);
            second.rel = right->first;
            second.guard = std::move(right->second);
            return {std::move(agg), std::move(second)};
        }
        auto &g = left ? *left : *right;
        agg.rel = g.first;
        agg.guard = std::move(g.second);
        return {std::move(agg)};
    }

    AggregateLiteral aggregate_body() {
        Token const &tok = next();
        AggregateLiteral agg;
        if (tok.text == "#count") { agg.fn = AggregateFunction::Count; }
        else if (tok.text == "#sum") { agg.fn = AggregateFunction::Sum; }
        else if (tok.text == "#max") { agg.fn = AggregateFunction::Max; }
        else if (tok.text == "#min") { agg.fn = AggregateFunction::Min; }
        else { throw SyntaxError(tok.loc, "unknown aggregate function '" + tok.text + "'"); }
        expect(TokenKind::LBrace);
        if (accept(TokenKind::RBrace)) { return agg; }
        do {
            AggregateElement e;
            if (peek().kind != TokenKind::Colon) {
                do { e.terms.push_back(term()); } while (accept(TokenKind::Comma));
            }
            if (accept(TokenKind::Colon)) {
                do { e.condition.push_back(naf_literal()); } while (accept(TokenKind::Comma));
            }
            agg.elements.push_back(std::move(e));
        } while (accept(TokenKind::Semicolon));
        expect(TokenKind::RBrace);
        return agg;
    }

    NafLiteral naf_literal() {
        Location loc = peek().loc;
        bool naf = false;
        if (peek().kind == TokenKind::Identifier && peek().text == "not") {
            next();
            naf = true;
        }
        Term t = term();
        if (is_relation(peek().kind)) {
            if (naf) { throw SyntaxError(loc, "built-in atoms cannot be negated"); }
            Relation rel = to_relation(next().kind);
            return BuiltinAtom{rel, std::move(t), term()};
        }
        return ClassicalLiteral{to_atom(t, loc), naf};
    }

    ExternalLiteral external(bool naf) {
        expect(TokenKind::Amp);
        ExternalLiteral ext;
        ext.naf = naf;
        ext.name = expect(TokenKind::Identifier).text;
        expect(TokenKind::LParen);
        if (peek().kind != TokenKind::Semicolon && peek().kind != TokenKind::RParen) {
            do { ext.inputs.push_back(term()); } while (accept(TokenKind::Comma));
        }
        if (accept(TokenKind::Semicolon)) {
            do {
                Location loc = peek().loc;
                Term out = term();
                if (!out.is_variable()) {
                    throw SyntaxError(loc, "output terms of external atoms must be variables");
                }
                ext.outputs.push_back(std::move(out));
            } while (accept(TokenKind::Comma));
        }
        expect(TokenKind::RParen);
        return ext;
    }

    // {{{2 terms

    Term term() {
        Term lhs = additive();
        if (accept(TokenKind::DotDot)) { return Term::binary(ArithOp::Range, std::move(lhs), additive()); }
        return lhs;
    }

    Term additive() {
        Term lhs = multiplicative();
        for (;;) {
            if (accept(TokenKind::Plus)) { lhs = Term::binary(ArithOp::Add, std::move(lhs), multiplicative()); }
            else if (accept(TokenKind::Minus)) { lhs = Term::binary(ArithOp::Sub, std::move(lhs), multiplicative()); }
            else { return lhs; }
        }
    }

    Term multiplicative() {
        Term lhs = unary();
        for (;;) {
            if (accept(TokenKind::Star)) { lhs = Term::binary(ArithOp::Mul, std::move(lhs), unary()); }
            else if (accept(TokenKind::Slash)) { lhs = Term::binary(ArithOp::Div, std::move(lhs), unary()); }
            else if (accept(TokenKind::Backslash)) { lhs = Term::binary(ArithOp::Mod, std::move(lhs), unary()); }
            else { return lhs; }
        }
    }

    Term unary() {
        if (accept(TokenKind::Minus)) { return Term::unary(ArithOp::Neg, unary()); }
        return primary();
    }

    Term primary() {
        Token const &t = peek();
        switch (t.kind) {
            case TokenKind::Integer: next(); return Term::number(Rational(parse_integer(t.text)));
            case TokenKind::Decimal: next(); return Term::number(from_decimal(t.text, opts_.decimal_digits));
            case TokenKind::String: next(); return Term::string(t.text);
            case TokenKind::Variable: next(); return Term::variable(t.text);
            case TokenKind::Anonymous: next(); return Term::variable("_");
            case TokenKind::Identifier: {
                if (t.text == "not") { unexpected("term"); }
                std::string name = next().text;
                std::vector<Term> args;
                if (accept(TokenKind::LParen)) {
                    if (peek().kind != TokenKind::RParen) {
                        do { args.push_back(term()); } while (accept(TokenKind::Comma));
                    }
                    expect(TokenKind::RParen);
                }
                return Term::function(std::move(name), std::move(args));
            }
            case TokenKind::LParen: {
                next();
                Term inner = term();
                expect(TokenKind::RParen);
                return inner;
            }
            default: unexpected("term");
        }
    }

    std::vector<Token> const &toks_;
    ParseOptions const &opts_;
    std::size_t pos_ = 0;
};

// {{{1 desugaring

using TermMap = std::function<Term(Term const &)>;

class Desugar {
public:
    explicit Desugar(SourceProgram const &prg) {
        for (auto const &r : prg.rules) {
            auto vc = classify_variables(r);
            used_.insert(vc.global.begin(), vc.global.end());
            for (auto const &l : vc.local) { used_.insert(l.begin(), l.end()); }
        }
        for (auto const &c : prg.weaks) {
            auto vc = classify_variables(c);
            used_.insert(vc.global.begin(), vc.global.end());
            for (auto const &l : vc.local) { used_.insert(l.begin(), l.end()); }
        }
    }

    void apply(SourceProgram &prg) {
        for (auto &r : prg.rules) {
            rename_anonymous(r.head, r.body);
            desugar_ranges(r.head, r.body);
        }
        for (auto &c : prg.weaks) {
            std::vector<Atom> none;
            std::vector<Term> spec{c.weight, c.level};
            spec.insert(spec.end(), c.terms.begin(), c.terms.end());
            TermMap anon = [this](Term const &t) { return freshen(t); };
            for (auto &t : spec) { t = anon(t); }
            rename_anonymous(none, c.body);
            std::vector<Literal> extra;
            for (auto &t : spec) { t = replace_ranges(t, extra); }
            desugar_ranges(none, c.body);
            for (auto &l : extra) { c.body.push_back(std::move(l)); }
            c.weight = spec[0];
            c.level = spec[1];
            c.terms.assign(spec.begin() + 2, spec.end());
        }
    }

private:
    std::string fresh(char const *prefix) {
        for (;;) {
            std::string name = std::string(prefix) + std::to_string(++counter_);
            if (used_.insert(name).second) { return name; }
        }
    }

    static Term map_term(Term const &t, TermMap const &f) {
        if (t.kind() == TermKind::Function || t.kind() == TermKind::Arithmetic) {
            std::vector<Term> args;
            for (auto const &a : t.args()) { args.push_back(f(a)); }
            return t.kind() == TermKind::Function ? Term::function(t.name(), std::move(args))
                                                  : Term::arithmetic(t.op(), std::move(args));
        }
        return t;
    }

    Term freshen(Term const &t) {
        if (t.is_variable() && t.name() == "_") { return Term::variable(fresh("_V")); }
        return map_term(t, [this](Term const &a) { return freshen(a); });
    }

    static Atom map_atom(Atom a, TermMap const &f) {
        for (auto &t : a.args) { t = f(t); }
        return a;
    }

    static NafLiteral map_naf(NafLiteral const &l, TermMap const &f) {
        if (auto const *c = std::get_if<ClassicalLiteral>(&l)) { return ClassicalLiteral{map_atom(c->atom, f), c->naf}; }
        auto const &b = std::get<BuiltinAtom>(l);
        return BuiltinAtom{b.rel, f(b.left), f(b.right)};
    }

    void rename_anonymous(std::vector<Atom> &head, std::vector<Literal> &body) {
        TermMap f = [this](Term const &t) { return freshen(t); };
        for (auto &a : head) { a = map_atom(a, f); }
        for (auto &l : body) {
            std::visit(
                [&](auto &x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, ClassicalLiteral>) { x.atom = map_atom(x.atom, f); }
                    else if constexpr (std::is_same_v<T, BuiltinAtom>) {
                        x.left = f(x.left);
                        x.right = f(x.right);
                    }
                    else if constexpr (std::is_same_v<T, ExternalLiteral>) {
                        for (auto &t : x.inputs) { t = f(t); }
                        for (auto &t : x.outputs) { t = f(t); }
                    }
                    else {
                        x.guard = f(x.guard);
                        for (auto &e : x.elements) {
                            for (auto &t : e.terms) { t = f(t); }
                            for (auto &c : e.condition) { c = map_naf(c, f); }
                        }
                    }
                },
                l);
        }
    }

    Term replace_ranges(Term const &t, std::vector<Literal> &extra) {
        if (t.is_arithmetic() && t.op() == ArithOp::Range) {
            Term var = Term::variable(fresh("_R"));
            Term lo = replace_ranges(t.args()[0], extra);
            Term hi = replace_ranges(t.args()[1], extra);
            extra.emplace_back(BuiltinAtom{Relation::Eq, var, Term::binary(ArithOp::Range, lo, hi)});
            return var;
        }
        return map_term(t, [&](Term const &a) { return replace_ranges(a, extra); });
    }

    static bool is_range_assignment(BuiltinAtom const &b) {
        auto is_range = [](Term const &t) { return t.is_arithmetic() && t.op() == ArithOp::Range; };
        return b.rel == Relation::Eq && ((b.left.is_variable() && is_range(b.right) && !b.right.args()[0].contains_range() &&
                                          !b.right.args()[1].contains_range()) ||
                                         (b.right.is_variable() && is_range(b.left) && !b.left.args()[0].contains_range() &&
                                          !b.left.args()[1].contains_range()));
    }

    void desugar_ranges(std::vector<Atom> &head, std::vector<Literal> &body) {
        std::vector<Literal> extra;
        TermMap f = [&](Term const &t) { return replace_ranges(t, extra); };
        for (auto &a : head) { a = map_atom(a, f); }
        for (auto &l : body) {
            std::visit(
                [&](auto &x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, ClassicalLiteral>) { x.atom = map_atom(x.atom, f); }
                    else if constexpr (std::is_same_v<T, BuiltinAtom>) {
                        if (!is_range_assignment(x)) {
                            x.left = f(x.left);
                            x.right = f(x.right);
                        }
                    }
                    else if constexpr (std::is_same_v<T, ExternalLiteral>) {
                        for (auto &t : x.inputs) { t = f(t); }
                    }
                    else {
                        x.guard = f(x.guard);
                        for (auto &e : x.elements) {
                            std::vector<Literal> local;
                            TermMap g = [&](Term const &t) { return replace_ranges(t, local); };
                            for (auto &t : e.terms) { t = g(t); }
                            for (auto &c : e.condition) {
                                if (auto *b = std::get_if<BuiltinAtom>(&c); b && is_range_assignment(*b)) { continue; }
                                c = map_naf(c, g);
                            }
                            for (auto &nl : local) { e.condition.push_back(std::get<BuiltinAtom>(nl)); }
                        }
                    }
                },
                l);
        }
        for (auto &l : extra) { body.push_back(std::move(l)); }
    }

    std::set<std::string> used_;
    int counter_ = 0;
};

} // namespace

SourceProgram parse_program(std::vector<Token> const &tokens, ParseOptions const &opts) {
    SourceProgram prg = standardize(Parser(tokens, opts).run(), opts.integer_division);
    Desugar(prg).apply(prg);
    return prg;
}

SourceProgram parse_program(std::string_view text, ParseOptions const &opts) {
    return parse_program(tokenize(text, opts.file), opts);
}

// {{{1 safety

void collect_binding_variables(Term const &t, std::set<std::string> &out) {
    if (t.is_variable()) {
        out.insert(t.name());
        return;
    }
    if (t.kind() == TermKind::Function) {
        for (auto const &a : t.args()) { collect_binding_variables(a, out); }
    }
}

namespace {

bool subset(std::set<std::string> const &a, std::set<std::string> const &b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool bind_builtin(BuiltinAtom const &b, std::set<std::string> &bound) {
    if (b.rel != Relation::Eq) { return false; }
    bool changed = false;
    auto try_side = [&](Term const &var, Term const &other) {
        if (!var.is_variable() || bound.contains(var.name())) { return; }
        std::set<std::string> vars;
        other.collect_variables(vars);
        if (subset(vars, bound)) {
            bound.insert(var.name());
            changed = true;
        }
    };
    try_side(b.left, b.right);
    try_side(b.right, b.left);
    return changed;
}

// Binding closure over a conjunction, starting from `bound`.
void close_bindings(std::vector<Literal> const &body, std::set<std::string> &bound) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto const &l : body) {
            std::size_t before = bound.size();
            std::visit(
                [&](auto const &x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, ClassicalLiteral>) {
                        if (!x.naf) {
                            for (auto const &t : x.atom.args) { collect_binding_variables(t, bound); }
                        }
                    }
                    else if constexpr (std::is_same_v<T, BuiltinAtom>) { bind_builtin(x, bound); }
                    else if constexpr (std::is_same_v<T, ExternalLiteral>) {
                        if (x.naf) { return; }
                        std::set<std::string> in;
                        for (auto const &t : x.inputs) { t.collect_variables(in); }
                        if (subset(in, bound)) {
                            for (auto const &t : x.outputs) { t.collect_variables(bound); }
                        }
                    }
                    else {
                        if (x.naf || x.rel != Relation::Eq || !x.guard.is_variable()) { return; }
                        std::set<std::string> inner;
                        for (auto const &e : x.elements) { collect_variables(e, inner); }
                        // variables of the elements that are also bound outside are the
                        // aggregate's global inputs; the rest are local
                        std::set<std::string> outside;
                        for (auto const &o : body) {
                            if (&o != &l) { collect_global_variables(o, outside); }
                        }
                        std::set<std::string> needed;
                        for (auto const &v : inner) {
                            if (outside.contains(v)) { needed.insert(v); }
                        }
                        if (subset(needed, bound)) { bound.insert(x.guard.name()); }
                    }
                },
                l);
            changed = changed || bound.size() != before;
        }
    }
}

void check_statement(std::vector<Literal> const &body, VariableClassification const &vc, Location const &loc,
                     std::vector<SafetyViolation> &out) {
    std::set<std::string> bound;
    close_bindings(body, bound);
    for (auto const &v : vc.global) {
        if (!bound.contains(v)) { out.push_back({loc, v, "unsafe variable " + v}); }
    }
    for (auto const &l : body) {
        auto const *agg = std::get_if<AggregateLiteral>(&l);
        if (!agg) { continue; }
        for (auto const &e : agg->elements) {
            std::vector<Literal> cond;
            for (auto const &c : e.condition) {
                std::visit([&](auto const &x) { cond.emplace_back(x); }, c);
            }
            std::set<std::string> local = bound;
            close_bindings(cond, local);
            std::set<std::string> vars;
            collect_variables(e, vars);
            for (auto const &v : vars) {
                if (!local.contains(v)) { out.push_back({loc, v, "unsafe local variable " + v + " in aggregate element"}); }
            }
        }
    }
}

} // namespace

std::vector<SafetyViolation> check_safety(SourceProgram const &p) {
    std::vector<SafetyViolation> out;
    for (auto const &r : p.rules) { check_statement(r.body, classify_variables(r), r.loc, out); }
    for (auto const &c : p.weaks) { check_statement(c.body, classify_variables(c), c.loc, out); }
    return out;
}

} // namespace ratasp
