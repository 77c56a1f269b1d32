#include "overlap/rational.hpp"

#include <stdexcept>

namespace overlap {

std::string to_string(const Rational& r)
{
    return boost::multiprecision::numerator(r).str() + "/" +
           boost::multiprecision::denominator(r).str();
}

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

Integer parse_integer(std::string_view s)
{
    if (s[0] == '+') s.remove_prefix(1);
    return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    if (!is_integer_literal(num_text)) {
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(num_text));
    }
    const auto den_text = text.substr(slash + 1);
    if (!is_integer_literal(den_text) || den_text[0] == '-' || den_text[0] == '+') {
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    const Integer den = parse_integer(den_text);
    if (den == 0) {
        throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    }
    return Rational(parse_integer(num_text), den);
}

Rational make_rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(Integer(num), Integer(den));
}

double to_double(const Rational& r)
{
    return r.convert_to<double>();
}

int sign(const Rational& r)
{
    return r.sign();
}

}  // namespace overlap
