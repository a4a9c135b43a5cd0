#ifndef RATASP_RATIONAL_HH
#define RATASP_RATIONAL_HH

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ratasp {

using Integer = boost::multiprecision::cpp_int;

class ZeroDenominator : public std::domain_error {
public:
    ZeroDenominator() : std::domain_error("zero denominator") { }
};

class UndefinedArithmetic : public std::domain_error {
public:
    explicit UndefinedArithmetic(std::string const &what) : std::domain_error(what) { }
};

class MalformedDecimal : public std::invalid_argument {
public:
    explicit MalformedDecimal(std::string const &text)
    : std::invalid_argument("malformed decimal literal: " + text) { }
};

// Largest number of decimal places accepted for literals and printing.
inline constexpr int max_decimal_digits = 6;

// An exact fraction num/den kept in standard form: den > 0 and
// gcd(|num|, den) = 1. Zero is 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) { }
    Rational(std::int64_t value) : num_(value), den_(1) { } // NOLINT(google-explicit-constructor)
    explicit Rational(Integer value) : num_(std::move(value)), den_(1) { }

    // Throws ZeroDenominator if q == 0.
    static Rational normalize(Integer p, Integer q);

    Integer const &num() const { return num_; }
    Integer const &den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    friend Rational operator+(Rational const &t, Rational const &u);
    friend Rational operator-(Rational const &t, Rational const &u);
    friend Rational operator*(Rational const &t, Rational const &u);
    // Throws UndefinedArithmetic when u is zero.
    friend Rational operator/(Rational const &t, Rational const &u);
    Rational operator-() const;

    friend bool operator==(Rational const &t, Rational const &u) = default;
    friend std::strong_ordering operator<=>(Rational const &t, Rational const &u);

    // Fraction rendering: "p" when den == 1, "p/q" otherwise.
    std::string str() const;

private:
    Rational(Integer p, Integer q, int) : num_(std::move(p)), den_(std::move(q)) { }

    Integer num_;
    Integer den_;
};

inline Rational normalize(Integer p, Integer q) { return Rational::normalize(std::move(p), std::move(q)); }
inline Rational add(Rational const &t, Rational const &u) { return t + u; }
inline Rational sub(Rational const &t, Rational const &u) { return t - u; }
inline Rational mul(Rational const &t, Rational const &u) { return t * u; }
inline Rational div(Rational const &t, Rational const &u) { return t / u; }
inline Rational neg(Rational const &t) { return -t; }
inline std::strong_ordering compare(Rational const &t, Rational const &u) { return t <=> u; }

Rational abs(Rational const &x);
Rational floor(Rational const &x);
Rational ceil(Rational const &x);
Rational truncate(Rational const &x);
// Nearest integer, ties away from zero.
Rational round(Rational const &x);

// Integer division truncated toward zero on denominator-1 operands. Used by
// the integer-compatibility mode. Throws UndefinedArithmetic on zero divisor.
Rational integer_divide(Rational const &t, Rational const &u);

// Parses "[-]d1...dn" as a decimal integer; leading zeros are insignificant
// (unlike cpp_int's own string constructor, which reads them as octal).
// Throws std::invalid_argument on anything else.
Integer parse_integer(std::string_view text);

// Parses "[-]i.d1...dm" (or a plain integer). More than `digits` decimal
// places are rounded to `digits` places, ties away from zero.
Rational from_decimal(std::string_view text, int digits = max_decimal_digits);

// Renders r rounded to `digits` places (ties away from zero) with trailing
// zeros stripped: 1/2 -> "0.5", 3 -> "3", 7/225 at 6 -> "0.031111".
std::string to_decimal_string(Rational const &r, int digits = max_decimal_digits);

// lcm of all denominators; 1 for an empty list.
Integer lcm_denominators(std::span<Rational const> values);

std::ostream &operator<<(std::ostream &out, Rational const &r);

} // namespace ratasp

#endif // RATASP_RATIONAL_HH
