#ifndef RATASP_BUILTINS_HH
#define RATASP_BUILTINS_HH

#include "ratasp/ast.hh"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratasp {

class ExternalCallError : public std::runtime_error {
public:
    explicit ExternalCallError(std::string const &what) : std::runtime_error(what) { }
};

namespace builtins {

Rational truncate(Rational const &x);
Rational round(Rational const &x);
Rational ceil(Rational const &x);
Rational floor(Rational const &x);
Rational abs(Rational const &x);
// Integer exponents only; nullopt for fractional exponents and 0 to a
// negative power. pow(0, 0) = 1.
std::optional<Rational> pow(Rational const &x, Rational const &e);

} // namespace builtins

// Evaluation result: nullopt means undefined (the substitution is dropped).
using BuiltinFunction = std::function<std::optional<Rational>(std::vector<Rational> const &)>;

struct BuiltinSpec {
    std::size_t inputs = 0;
    std::size_t outputs = 0;
    BuiltinFunction fn;
};

// The closed set of mathematical functions reachable through &name(in; out).
class BuiltinRegistry {
public:
    static BuiltinRegistry const &instance();

    BuiltinSpec const *find(std::string const &name) const;
    std::vector<std::string> names() const;

    // Evaluates &name(inputs; Z). Throws ExternalCallError for unknown names,
    // arity mismatches and non-rational inputs.
    std::optional<Term> call(std::string const &name, std::vector<Term> const &inputs) const;

private:
    BuiltinRegistry();

    std::map<std::string, BuiltinSpec> table_;
};

// Validates every external literal of the program against the registry.
void check_externals(SourceProgram const &p);

} // namespace ratasp

#endif // RATASP_BUILTINS_HH
