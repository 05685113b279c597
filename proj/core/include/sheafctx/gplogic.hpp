#pragma once

#include <sheafctx/presheaf.hpp>
#include <sheafctx/scenario.hpp>

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sheafctx
{
    /// The three-element Heyting chain F < U < T.
    enum class ThreeValue
    {
        False = 0,
        Unknown = 1,
        True = 2
    };

    auto to_string(ThreeValue value) -> std::string_view;

    auto conjunction(ThreeValue a, ThreeValue b) -> ThreeValue;
    auto disjunction(ThreeValue a, ThreeValue b) -> ThreeValue;
    /// T if a <= b, otherwise b.
    auto implication(ThreeValue a, ThreeValue b) -> ThreeValue;
    /// a -> F
    auto negation(ThreeValue a) -> ThreeValue;

    /// Syntax tree over atoms `observable = outcome`.
    struct Proposition
    {
        enum class Kind
        {
            Atom,
            Not,
            And,
            Or,
            Implies
        };

        Kind kind = Kind::Atom;
        ObservableIndex observable = 0;
        Outcome outcome = 0;
        std::vector<Proposition> operands;

        static auto atom(ObservableIndex observable, Outcome outcome) -> Proposition;
        static auto negate(Proposition p) -> Proposition;
        static auto binary(Kind kind, Proposition left, Proposition right) -> Proposition;

        auto observables() const -> std::vector<ObservableIndex>;
    };

    /// Grammar, loosest binding first:
    ///   implies := or ( "->" implies )?
    ///   or      := and ( "|" and )*
    ///   and     := unary ( "&" unary )*
    ///   unary   := "!" unary | "(" implies ")" | id "=" outcome
    /// Throws ParseError, UnknownObservable, OutcomeOutOfRange.
    auto parse_proposition(std::string_view text, const MeasurementScenario & scenario) -> Proposition;

    /// Fully parenthesised rendering that parses back to the same tree.
    auto to_string(const Proposition & proposition, const MeasurementScenario & scenario) -> std::string;

    /// Value under one section of one context: atoms on the context's
    /// observables are decided by the section, other atoms are U.
    auto eval_in_section(const Proposition & proposition, const LocalSection & section) -> ThreeValue;

    /// T if every supported section of the context gives T, F if every one
    /// gives F, U otherwise.
    auto eval_in_context(const SupportModel & support, std::size_t cover_index, const Proposition & proposition)
        -> ThreeValue;

    /// One value per cover context.
    using ContextProfile = std::vector<ThreeValue>;

    auto profile(const SupportModel & support, const Proposition & proposition) -> ContextProfile;

    /// The seven predication modes, by attained set:
    /// i {T}, ii {F}, iii {U}, iv {T,F}, v {T,U}, vi {F,U}, vii {T,F,U}.
    enum class Mode
    {
        I = 1,
        II,
        III,
        IV,
        V,
        VI,
        VII
    };

    auto to_string(Mode mode) -> std::string_view;
    auto describe(Mode mode) -> std::string_view;

    struct SevenValue
    {
        Mode mode = Mode::I;
        /// Indexed by ThreeValue.
        std::array<bool, 3> attained{};
        /// Cover indices holding each value, indexed by ThreeValue. The
        /// families are pairwise disjoint.
        std::array<std::vector<std::size_t>, 3> witnesses;
    };

    /// The mode of a non-empty attained set. Throws InvalidArgument on the empty set.
    auto mode_of(const std::array<bool, 3> & attained) -> Mode;

    /// Throws InvalidArgument on an empty profile.
    auto classify(const ContextProfile & profile) -> SevenValue;

    struct SevenValueResult
    {
        SevenValue value;
        ContextProfile profile;
    };

    auto seven_value_of(const SupportModel & support, const Proposition & proposition) -> SevenValueResult;
}
