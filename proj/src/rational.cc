#include "ratasp/rational.hh"

#include <ostream>

namespace ratasp {

namespace mp = boost::multiprecision;

namespace {

Integer pow10(int n) {
    Integer r = 1;
    for (int i = 0; i < n; ++i) { r *= 10; }
    return r;
}

// Divides a non-negative p by a positive q, rounding half away from zero.
Integer round_div(Integer const &p, Integer const &q) {
    return (2 * p + q) / (2 * q);
}

} // namespace

Rational Rational::normalize(Integer p, Integer q) {
    if (q.is_zero()) { throw ZeroDenominator(); }
    if (q.sign() < 0) {
        p = -p;
        q = -q;
    }
    Integer g = mp::gcd(mp::abs(p), q);
    if (g > 1) {
        p /= g;
        q /= g;
    }
    return Rational(std::move(p), std::move(q), 0);
}

Rational operator+(Rational const &t, Rational const &u) {
    Integer l = mp::lcm(t.den_, u.den_);
    return Rational::normalize(l / t.den_ * t.num_ + l / u.den_ * u.num_, l);
}

Rational operator-(Rational const &t, Rational const &u) {
    Integer l = mp::lcm(t.den_, u.den_);
    return Rational::normalize(l / t.den_ * t.num_ - l / u.den_ * u.num_, l);
}

Rational operator*(Rational const &t, Rational const &u) {
    return Rational::normalize(t.num_ * u.num_, t.den_ * u.den_);
}

Rational operator/(Rational const &t, Rational const &u) {
    if (u.is_zero()) { throw UndefinedArithmetic("division by zero"); }
    return Rational::normalize(t.num_ * u.den_, t.den_ * u.num_);
}

Rational Rational::operator-() const {
    return Rational(-num_, den_, 0);
}

std::strong_ordering operator<=>(Rational const &t, Rational const &u) {
    Integer lhs = t.num_ * u.den_;
    Integer rhs = u.num_ * t.den_;
    if (lhs < rhs) { return std::strong_ordering::less; }
    if (rhs < lhs) { return std::strong_ordering::greater; }
    return std::strong_ordering::equal;
}

std::string Rational::str() const {
    if (den_ == 1) { return num_.str(); }
    return num_.str() + "/" + den_.str();
}

Rational abs(Rational const &x) {
    return x.sign() < 0 ? -x : x;
}

Rational floor(Rational const &x) {
    // cpp_int division truncates toward zero
    Integer q = x.num() / x.den();
    if (x.sign() < 0 && !x.is_integer()) { q -= 1; }
    return Rational(q);
}

Rational ceil(Rational const &x) {
    Integer q = x.num() / x.den();
    if (x.sign() > 0 && !x.is_integer()) { q += 1; }
    return Rational(q);
}

Rational truncate(Rational const &x) {
    return Rational(Integer(x.num() / x.den()));
}

Rational round(Rational const &x) {
    Integer r = round_div(mp::abs(x.num()), x.den());
    return Rational(x.sign() < 0 ? Integer(-r) : r);
}

Rational integer_divide(Rational const &t, Rational const &u) {
    if (u.is_zero()) { throw UndefinedArithmetic("division by zero"); }
    return truncate(t / u);
}

Integer parse_integer(std::string_view text) {
    bool negative = !text.empty() && text.front() == '-';
    if (negative) { text.remove_prefix(1); }
    if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos) {
        throw std::invalid_argument("not a decimal integer: " + std::string(text));
    }
    auto first = text.find_first_not_of('0');
    Integer out(first == std::string_view::npos ? std::string("0") : std::string(text.substr(first)));
    return negative ? Integer(-out) : out;
}

Rational from_decimal(std::string_view text, int digits) {
    if (digits < 0) { throw std::invalid_argument("negative digit count"); }
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    auto dot = body.find('.');
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    auto all_digits = [](std::string_view s) {
        for (char c : s) {
            if (c < '0' || c > '9') { return false; }
        }
        return true;
    };
    if (int_part.empty() || !all_digits(int_part) || !all_digits(frac_part) ||
        (dot != std::string_view::npos && frac_part.empty())) {
        throw MalformedDecimal(std::string(text));
    }
    bool round_up = false;
    if (static_cast<int>(frac_part.size()) > digits) {
        round_up = frac_part[digits] >= '5';
        frac_part = frac_part.substr(0, digits);
    }
    auto p = parse_integer(std::string(int_part) + std::string(frac_part));
    if (round_up) { p += 1; }
    if (negative) { p = -p; }
    return Rational::normalize(std::move(p), pow10(static_cast<int>(frac_part.size())));
}

std::string to_decimal_string(Rational const &r, int digits) {
    if (digits < 0) { throw std::invalid_argument("negative digit count"); }
    Integer scale = pow10(digits);
    Integer scaled = round_div(mp::abs(r.num()) * scale, r.den());
    if (scaled.is_zero()) { return "0"; }
    std::string text = Integer(scaled / scale).str();
    std::string frac = Integer(scaled % scale).str();
    if (digits > 0) {
        frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
        while (!frac.empty() && frac.back() == '0') { frac.pop_back(); }
        if (!frac.empty()) { text += "." + frac; }
    }
    return r.sign() < 0 ? "-" + text : text;
}

Integer lcm_denominators(std::span<Rational const> values) {
    Integer l = 1;
    for (auto const &v : values) { l = mp::lcm(l, v.den()); }
    return l;
}

std::ostream &operator<<(std::ostream &out, Rational const &r) {
    return out << r.str();
}

} // namespace ratasp
