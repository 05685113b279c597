#pragma once

#include <sheafctx/numeric.hpp>
#include <sheafctx/scenario.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sheafctx
{
    /// An outcome for every observable of one context; outcomes[k] belongs to
    /// context.members()[k].
    struct LocalSection
    {
        Context context;
        std::vector<Outcome> outcomes;

        auto value_of(ObservableIndex observable) const -> std::optional<Outcome>;

        auto operator<=>(const LocalSection &) const = default;
    };

    inline constexpr std::size_t kDefaultSectionLimit = std::size_t{1} << 20;

    /// |E(C)|, the product of member arities. Throws SizeLimitExceeded above limit.
    auto section_count(const MeasurementScenario & scenario, const Context & context,
            std::size_t limit = kDefaultSectionLimit) -> std::size_t;

    /// Lexicographic rank of a section (first member most significant).
    auto section_index(const MeasurementScenario & scenario, const LocalSection & section) -> std::size_t;
    auto section_at(const MeasurementScenario & scenario, const Context & context, std::size_t index) -> LocalSection;

    auto enumerate_sections(const Context & context, const MeasurementScenario & scenario,
            std::size_t limit = kDefaultSectionLimit) -> std::vector<LocalSection>;

    /// Throws OutcomeOutOfRange / InvalidContext when the section does not
    /// belong to E(context) of the scenario.
    auto validate_section(const MeasurementScenario & scenario, const LocalSection & section) -> void;

    /// Presheaf restriction E(D) -> E(C) for C ⊆ D. Throws NotASubcontext.
    auto restrict(const LocalSection & section, const Context & subcontext) -> LocalSection;

    /// For each section index of `from`, the index of its restriction in `to`.
    auto restriction_indices(const MeasurementScenario & scenario, const Context & from, const Context & to)
        -> std::vector<std::size_t>;

    /// Dense probability table over E(C) in lexicographic section order.
    using Distribution = std::vector<Rational>;

    /// A probability table for each cover context. Tables are validated on
    /// construction: dense, non-negative, summing to one (exactly in exact mode).
    class EmpiricalModel
    {
        public:
            EmpiricalModel(MeasurementScenario scenario, std::vector<Distribution> tables, NumericMode mode);

            auto scenario() const -> const MeasurementScenario & { return _scenario; }
            auto tables() const -> const std::vector<Distribution> & { return _tables; }
            auto table(std::size_t cover_index) const -> const Distribution & { return _tables.at(cover_index); }
            auto mode() const -> NumericMode { return _mode; }

            auto probability(std::size_t cover_index, const LocalSection & section) const -> const Rational &;

        private:
            MeasurementScenario _scenario;
            std::vector<Distribution> _tables;
            NumericMode _mode;
    };

    /// Sums a table over E(context) down to E(overlap). Throws NotASubcontext.
    auto marginalize(const MeasurementScenario & scenario, const Context & context, const Distribution & table,
            const Context & overlap) -> Distribution;

    struct CompatibilityViolation
    {
        std::size_t first;
        std::size_t second;
        Context overlap;
        Rational discrepancy;
    };

    struct CompatibilityReport
    {
        bool ok = true;
        std::vector<CompatibilityViolation> violations;
    };

    /// Marginals of every overlapping cover pair must agree. Discrepancies are
    /// max-norm differences of the two marginals on the overlap.
    auto check_compatibility(const EmpiricalModel & model) -> CompatibilityReport;

    /// The possibilistic presheaf: per cover context, the sorted indices of
    /// supported sections.
    class SupportModel
    {
        public:
            SupportModel(MeasurementScenario scenario, std::vector<std::vector<std::size_t>> supports);

            auto scenario() const -> const MeasurementScenario & { return _scenario; }
            auto supports() const -> const std::vector<std::vector<std::size_t>> & { return _supports; }
            auto support(std::size_t cover_index) const -> const std::vector<std::size_t> & { return _supports.at(cover_index); }
            auto contains(std::size_t cover_index, std::size_t section_index) const -> bool;
            auto supported_sections(std::size_t cover_index) const -> std::vector<LocalSection>;

            /// Sections of an arbitrary sub-context that are restrictions of some
            /// supported section of a cover context containing it.
            auto restricted_support(const Context & context) const -> std::vector<std::size_t>;

        private:
            MeasurementScenario _scenario;
            std::vector<std::vector<std::size_t>> _supports;
    };

    /// Sections with probability strictly above the threshold. The default
    /// threshold is 0 in exact mode and kFloatSupportThreshold in float mode.
    /// Throws EmptySupport.
    auto support_of(const EmpiricalModel & model, std::optional<Rational> threshold = std::nullopt) -> SupportModel;

    /// Possibilistic compatibility: supports restrict to the same sets on
    /// every pairwise overlap.
    auto supports_compatible(const SupportModel & support) -> bool;
}
