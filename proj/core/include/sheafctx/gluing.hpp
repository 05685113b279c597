#pragma once

#include <sheafctx/numeric.hpp>
#include <sheafctx/presheaf.hpp>
#include <sheafctx/scenario.hpp>
#include <sheafctx/simplex.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace sheafctx
{
    /// An outcome for every observable of the scenario, indexed by observable.
    struct GlobalAssignment
    {
        std::vector<Outcome> outcomes;

        auto restrict_to(const Context & context) const -> LocalSection;

        auto operator<=>(const GlobalAssignment &) const = default;
    };

    inline constexpr std::size_t kDefaultGlobalLimit = std::size_t{1} << 24;
    inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

    /// Product of all arities; throws SizeLimitExceeded above limit.
    auto global_count(const MeasurementScenario & scenario, std::size_t limit = kDefaultGlobalLimit) -> std::size_t;

    /// Lexicographic with the first observable most significant.
    auto global_at(const MeasurementScenario & scenario, std::size_t index) -> GlobalAssignment;

    auto for_each_global(const MeasurementScenario & scenario, const std::function<void (const GlobalAssignment &)> & visit,
            std::size_t limit = kDefaultGlobalLimit) -> void;

    auto enumerate_globals(const MeasurementScenario & scenario, std::size_t limit = kDefaultGlobalLimit)
        -> std::vector<GlobalAssignment>;

    struct ContextualityVerdict
    {
        bool noncontextual = false;
        bool logically_contextual = false;
        bool strongly_contextual = false;
        /// A supported section (cover index, section) lying in no global section.
        std::optional<std::pair<std::size_t, LocalSection>> non_extendable;
        /// A global assignment whose every restriction is supported.
        std::optional<GlobalAssignment> global_section;
        /// Exactly one global assignment glues the supports.
        bool unique_global_section = false;
    };

    /// Decides the possibilistic hierarchy by backtracking over observables
    /// (descending cover degree) with forward checking against every support.
    /// noncontextual means every supported section extends to a global
    /// section. Throws SizeLimitExceeded once node_budget search nodes are spent.
    auto sheaf_check(const SupportModel & support, std::uint64_t node_budget = kDefaultNodeBudget) -> ContextualityVerdict;

    /// A global section through the given supported section, if any.
    auto extend_to_global(const SupportModel & support, std::size_t cover_index, std::size_t section_index,
            std::uint64_t node_budget = kDefaultNodeBudget) -> std::optional<GlobalAssignment>;

    /// Rows are (cover context, section) pairs in cover then lexicographic
    /// order; columns are global assignments. Each column has one 1 per cover
    /// context, stored as its row indices.
    class IncidenceMatrix
    {
        public:
            auto rows() const -> std::size_t { return _rows; }
            auto columns() const -> std::size_t { return _column_rows.size(); }
            auto row_offset(std::size_t cover_index) const -> std::size_t { return _row_offsets.at(cover_index); }
            auto column_rows(std::size_t column) const -> const std::vector<std::size_t> & { return _column_rows.at(column); }
            auto at(std::size_t row, std::size_t column) const -> int;
            auto dense() const -> std::vector<std::vector<int>>;

        private:
            friend auto build_incidence(const MeasurementScenario &, std::size_t) -> IncidenceMatrix;

            std::size_t _rows = 0;
            std::vector<std::size_t> _row_offsets;
            std::vector<std::vector<std::size_t>> _column_rows;
    };

    auto build_incidence(const MeasurementScenario & scenario, std::size_t limit = kDefaultGlobalLimit) -> IncidenceMatrix;

    /// The model's probabilities stacked in incidence row order.
    auto stacked_probabilities(const EmpiricalModel & model) -> std::vector<Rational>;

    struct LpBudget
    {
        std::size_t global_limit = kDefaultGlobalLimit;
        std::size_t pivot_limit = kDefaultPivotLimit;
    };

    struct NoncontextualityResult
    {
        bool noncontextual = false;
        /// A distribution over global assignments (incidence column order)
        /// reproducing the model, when one exists.
        std::vector<Rational> global_distribution;
        /// Otherwise y with y·incidence <= 0 columnwise and y·p > 0.
        std::vector<Rational> farkas;
    };

    /// Feasibility of incidence·x = p, x >= 0. Exact in exact mode; float
    /// models are solved in double precision with kFloatTolerance.
    auto is_noncontextual(const EmpiricalModel & model, const LpBudget & budget = {}) -> NoncontextualityResult;

    struct FractionReport
    {
        Rational noncontextual_fraction;
        Rational contextual_fraction;
        /// Optimal sub-distribution over global assignments.
        std::vector<Rational> weights;
    };

    /// maximize Σx subject to incidence·x <= p, x >= 0.
    auto contextual_fraction(const EmpiricalModel & model, const LpBudget & budget = {}) -> FractionReport;
}
