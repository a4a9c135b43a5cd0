#ifndef RATASP_PARSER_HH
#define RATASP_PARSER_HH

#include "ratasp/ast.hh"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ratasp {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(Location loc, std::string const &message)
    : std::runtime_error(to_string(loc) + ": error: " + message), loc_(std::move(loc)) { }

    Location const &location() const { return loc_; }

private:
    Location loc_;
};

enum class TokenKind : std::uint8_t {
    Identifier, Variable, Anonymous, Integer, Decimal, String, Aggregate,
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Comma, Semicolon, Colon, Dot, DotDot, Bar, If, WeakIf, At, Amp,
    Plus, Minus, Star, Slash, Backslash,
    Eq, Ne, Lt, Le, Gt, Ge,
    End
};

char const *token_name(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    Location loc;
};

// Throws SyntaxError on unterminated strings and illegal characters.
// '%' starts a comment running to the end of the line.
std::vector<Token> tokenize(std::string_view text, std::string const &file = "");

struct ParseOptions {
    // Decimal places kept for literals of the form i.d1...dm (0..6).
    int decimal_digits = max_decimal_digits;
    bool integer_division = false;
    std::string file;
};

// Parses, standardizes rational literals, freshens anonymous variables and
// desugars ranges outside `Var = a..b` into fresh variables.
SourceProgram parse_program(std::vector<Token> const &tokens, ParseOptions const &opts = {});
SourceProgram parse_program(std::string_view text, ParseOptions const &opts = {});

struct SafetyViolation {
    Location loc;
    std::string variable;
    std::string message;
};

std::vector<SafetyViolation> check_safety(SourceProgram const &p);

// Variables of t that a positive atom argument binds by matching: those not
// nested in arithmetic.
void collect_binding_variables(Term const &t, std::set<std::string> &out);

} // namespace ratasp

#endif // RATASP_PARSER_HH
