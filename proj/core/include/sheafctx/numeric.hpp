#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace sheafctx
{
    using Integer = boost::multiprecision::cpp_int;
    using Rational = boost::multiprecision::cpp_rational;

    /// How an empirical model's probabilities are interpreted. Exact models are
    /// compared with equality; float models with kFloatTolerance.
    enum class NumericMode
    {
        Exact,
        Float
    };

    inline constexpr double kFloatTolerance = 1e-9;
    inline constexpr double kFloatSupportThreshold = 1e-12;

    auto to_string(NumericMode mode) -> std::string_view;
    auto parse_numeric_mode(std::string_view text) -> NumericMode;

    /// Accepts "p/q", "p" and finite decimals such as "0.25" or "-1.5e-3";
    /// decimals are converted exactly.
    auto parse_rational(std::string_view text) -> Rational;

    /// Always "p/q" with q > 0, so 1 prints as "1/1".
    auto format_rational(const Rational & value) -> std::string;

    auto to_double(const Rational & value) -> double;

    /// The exact binary value of a finite double.
    auto exact_rational(double value) -> Rational;

    /// Equality in exact mode, |a-b| <= kFloatTolerance otherwise.
    auto approximately_equal(const Rational & a, const Rational & b, NumericMode mode) -> bool;
}
