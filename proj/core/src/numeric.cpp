#include <sheafctx/error.hpp>
#include <sheafctx/numeric.hpp>

#include <cctype>
#include <cmath>
#include <limits>

using namespace sheafctx;

namespace
{
    auto parse_integer_digits(std::string_view digits, std::string_view original) -> Integer
    {
        if (digits.empty())
            throw Error{ErrorCode::ParseError, "malformed number '" + std::string{original} + "'"};
        Integer value = 0;
        for (char c : digits) {
            if (! std::isdigit(static_cast<unsigned char>(c)))
                throw Error{ErrorCode::ParseError, "malformed number '" + std::string{original} + "'"};
            value = value * 10 + (c - '0');
        }
        return value;
    }

    auto parse_signed_integer(std::string_view text, std::string_view original) -> Integer
    {
        bool negative = false;
        if (! text.empty() && (text.front() == '-' || text.front() == '+')) {
            negative = text.front() == '-';
            text.remove_prefix(1);
        }
        auto value = parse_integer_digits(text, original);
        return negative ? Integer{-value} : value;
    }

    auto pow10(long exponent) -> Integer
    {
        Integer result = 1;
        for (long i = 0; i < exponent; ++i)
            result *= 10;
        return result;
    }

    auto parse_decimal(std::string_view text, std::string_view original) -> Rational
    {
        bool negative = false;
        if (! text.empty() && (text.front() == '-' || text.front() == '+')) {
            negative = text.front() == '-';
            text.remove_prefix(1);
        }

        long exponent = 0;
        if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            auto exp_text = text.substr(e + 1);
            auto exp_value = parse_signed_integer(exp_text, original);
            if (abs(exp_value) > 4000)
                throw Error{ErrorCode::ParseError, "exponent out of range in '" + std::string{original} + "'"};
            exponent = exp_value.convert_to<long>();
            text = text.substr(0, e);
        }

        std::string digits;
        long fraction_digits = 0;
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            digits = std::string{text.substr(0, dot)} + std::string{text.substr(dot + 1)};
            fraction_digits = static_cast<long>(text.size() - dot - 1);
            if (dot == 0 && fraction_digits == 0)
                digits.clear();
        }
        else
            digits = std::string{text};

        Integer mantissa = parse_integer_digits(digits, original);
        long scale = exponent - fraction_digits;
        Rational value = scale >= 0 ? Rational{mantissa * pow10(scale)} : Rational{mantissa, pow10(-scale)};
        return negative ? Rational{-value} : value;
    }
}

auto sheafctx::to_string(NumericMode mode) -> std::string_view
{
    return mode == NumericMode::Exact ? "rational" : "float";
}

auto sheafctx::parse_numeric_mode(std::string_view text) -> NumericMode
{
    if (text == "rational")
        return NumericMode::Exact;
    if (text == "float")
        return NumericMode::Float;
    throw Error{ErrorCode::ParseError, "unknown numeric mode '" + std::string{text} + "' (expected rational or float)"};
}

auto sheafctx::parse_rational(std::string_view text) -> Rational
{
    auto original = text;
    while (! text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
        text.remove_prefix(1);
    while (! text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
        text.remove_suffix(1);

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto numerator = parse_signed_integer(text.substr(0, slash), original);
        auto denominator = parse_signed_integer(text.substr(slash + 1), original);
        if (denominator == 0)
            throw Error{ErrorCode::ParseError, "zero denominator in '" + std::string{original} + "'"};
        return Rational{numerator, denominator};
    }
    return parse_decimal(text, original);
}

auto sheafctx::format_rational(const Rational & value) -> std::string
{
    return numerator(value).str() + "/" + denominator(value).str();
}

auto sheafctx::to_double(const Rational & value) -> double
{
    return value.convert_to<double>();
}

auto sheafctx::exact_rational(double value) -> Rational
{
    if (! std::isfinite(value))
        throw Error{ErrorCode::InvalidArgument, "non-finite value has no rational representation"};
    if (value == 0.0)
        return Rational{0};

    int exponent = 0;
    double mantissa = std::frexp(value, &exponent);
    // Scale the mantissa to an exact 53-bit integer.
    constexpr int bits = std::numeric_limits<double>::digits;
    auto scaled = static_cast<long long>(std::ldexp(mantissa, bits));
    exponent -= bits;

    Integer numerator_value = scaled;
    if (exponent >= 0)
        return Rational{numerator_value << exponent};
    return Rational{numerator_value, Integer{1} << -exponent};
}

auto sheafctx::approximately_equal(const Rational & a, const Rational & b, NumericMode mode) -> bool
{
    if (mode == NumericMode::Exact)
        return a == b;
    return std::abs(to_double(a - b)) <= kFloatTolerance;
}
