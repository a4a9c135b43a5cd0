#include "ratasp/builtins.hh"

namespace ratasp {

namespace builtins {

Rational truncate(Rational const &x) { return ratasp::truncate(x); }
Rational round(Rational const &x) { return ratasp::round(x); }
Rational ceil(Rational const &x) { return ratasp::ceil(x); }
Rational floor(Rational const &x) { return ratasp::floor(x); }
Rational abs(Rational const &x) { return ratasp::abs(x); }

std::optional<Rational> pow(Rational const &x, Rational const &e) {
    if (!e.is_integer()) { return std::nullopt; }
    if (e.sign() < 0 && x.is_zero()) { return std::nullopt; }
    Integer n = boost::multiprecision::abs(e.num());
    Rational base = e.sign() < 0 ? Rational(1) / x : x;
    Rational result = 1;
    // square and multiply
    while (!n.is_zero()) {
        if (boost::multiprecision::bit_test(n, 0)) { result = result * base; }
        n >>= 1;
        if (!n.is_zero()) { base = base * base; }
    }
    return result;
}

} // namespace builtins

namespace {

BuiltinSpec unary(Rational (*f)(Rational const &)) {
    return {1, 1, [f](std::vector<Rational> const &in) -> std::optional<Rational> { return f(in[0]); }};
}

} // namespace

BuiltinRegistry::BuiltinRegistry() {
    table_.emplace("truncate", unary(&builtins::truncate));
    table_.emplace("round", unary(&builtins::round));
    table_.emplace("ceil", unary(&builtins::ceil));
    table_.emplace("floor", unary(&builtins::floor));
    table_.emplace("abs", unary(&builtins::abs));
    table_.emplace("pow", BuiltinSpec{2, 1, [](std::vector<Rational> const &in) { return builtins::pow(in[0], in[1]); }});
}

BuiltinRegistry const &BuiltinRegistry::instance() {
    static BuiltinRegistry const registry;
    return registry;
}

BuiltinSpec const *BuiltinRegistry::find(std::string const &name) const {
    auto it = table_.find(name);
    return it == table_.end() ? nullptr : &it->second;
}

std::vector<std::string> BuiltinRegistry::names() const {
    std::vector<std::string> out;
    for (auto const &[name, spec] : table_) { out.push_back(name); }
    return out;
}

std::optional<Term> BuiltinRegistry::call(std::string const &name, std::vector<Term> const &inputs) const {
    auto const *spec = find(name);
    if (!spec) { throw ExternalCallError("unknown external function &" + name); }
    if (inputs.size() != spec->inputs) {
        throw ExternalCallError("&" + name + " expects " + std::to_string(spec->inputs) + " input terms, got " +
                                std::to_string(inputs.size()));
    }
    std::vector<Rational> args;
    for (auto const &t : inputs) {
        if (!t.is_number()) { throw ExternalCallError("&" + name + " expects rational inputs, got " + to_string(t)); }
        args.push_back(t.value());
    }
    auto r = spec->fn(args);
    if (!r) { return std::nullopt; }
    return Term::number(std::move(*r));
}

void check_externals(SourceProgram const &p) {
    auto const &reg = BuiltinRegistry::instance();
    auto check = [&](std::vector<Literal> const &body, Location const &loc) {
        for (auto const &l : body) {
            auto const *ext = std::get_if<ExternalLiteral>(&l);
            if (!ext) { continue; }
            auto const *spec = reg.find(ext->name);
            if (!spec) { throw ExternalCallError(to_string(loc) + ": unknown external function &" + ext->name); }
            if (ext->inputs.size() != spec->inputs || ext->outputs.size() != spec->outputs) {
                throw ExternalCallError(to_string(loc) + ": &" + ext->name + " takes " + std::to_string(spec->inputs) +
                                        " input and " + std::to_string(spec->outputs) + " output terms");
            }
        }
    };
    for (auto const &r : p.rules) { check(r.body, r.loc); }
    for (auto const &c : p.weaks) { check(c.body, c.loc); }
}

} // namespace ratasp
