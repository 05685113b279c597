#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sheafctx
{
    using ObservableIndex = std::size_t;
    using Outcome = std::uint32_t;

    struct Observable
    {
        std::string id;
        std::size_t arity = 2;
    };

    /// A set of jointly measurable observables. Members are kept sorted by
    /// observable index, so two presentations of the same set compare equal.
    class Context
    {
        public:
            Context() = default;
            explicit Context(std::vector<ObservableIndex> members);

            auto members() const -> const std::vector<ObservableIndex> & { return _members; }
            auto size() const -> std::size_t { return _members.size(); }
            auto empty() const -> bool { return _members.empty(); }
            auto contains(ObservableIndex observable) const -> bool;
            /// Position of the observable within members(), if present.
            auto position_of(ObservableIndex observable) const -> std::optional<std::size_t>;
            auto is_subset_of(const Context & other) const -> bool;
            auto intersect(const Context & other) const -> Context;

            auto operator<=>(const Context &) const = default;

        private:
            std::vector<ObservableIndex> _members;
    };

    class MeasurementScenario
    {
        public:
            MeasurementScenario() = default;

            auto observables() const -> const std::vector<Observable> & { return _observables; }
            auto observable(ObservableIndex index) const -> const Observable & { return _observables.at(index); }
            auto arity(ObservableIndex index) const -> std::size_t { return _observables.at(index).arity; }
            auto observable_count() const -> std::size_t { return _observables.size(); }

            auto cover() const -> const std::vector<Context> & { return _cover; }
            auto context(std::size_t cover_index) const -> const Context & { return _cover.at(cover_index); }
            auto cover_size() const -> std::size_t { return _cover.size(); }

            auto index_of(const std::string & id) const -> std::optional<ObservableIndex>;
            /// Resolves ids to a canonical context; throws UnknownObservable or InvalidContext.
            auto make_context(const std::vector<std::string> & ids) const -> Context;
            auto cover_index_of(const Context & context) const -> std::optional<std::size_t>;

            /// Number of cover contexts containing the observable.
            auto cover_degree(ObservableIndex index) const -> std::size_t;

            /// "{a1,b1}"
            auto label(const Context & context) const -> std::string;

        private:
            friend auto build_scenario(std::vector<Observable>, const std::vector<std::vector<std::string>> &)
                -> MeasurementScenario;

            std::vector<Observable> _observables;
            std::vector<Context> _cover;
    };

    /// Validates and canonicalises a scenario. Throws DuplicateObservable,
    /// UnknownObservable, InvalidObservable (arity < 2), InvalidContext
    /// (empty or repeated member), DominatedContext, EmptyCover.
    auto build_scenario(std::vector<Observable> observables, const std::vector<std::vector<std::string>> & cover)
        -> MeasurementScenario;

    struct NerveEdge
    {
        std::size_t first;
        std::size_t second;
        Context overlap;
    };

    struct NerveTriangle
    {
        std::size_t first;
        std::size_t second;
        std::size_t third;
        Context overlap;
        // Indices into Nerve::edges of the faces (first,second), (first,third), (second,third).
        std::size_t edge_01;
        std::size_t edge_02;
        std::size_t edge_12;
    };

    /// Cover contexts with their non-empty pairwise and triple overlaps,
    /// oriented by increasing cover index.
    struct Nerve
    {
        std::vector<Context> vertices;
        std::vector<NerveEdge> edges;
        std::vector<NerveTriangle> triangles;

        auto edge_index(std::size_t i, std::size_t j) const -> std::optional<std::size_t>;
    };

    auto build_nerve(const MeasurementScenario & scenario) -> Nerve;

    /// The downward closure of the cover under inclusion. arrows holds one
    /// (from, to) pair per strict inclusion elements[to] ⊂ elements[from],
    /// read as the refinement arrow from the larger context to the smaller.
    struct ContextPoset
    {
        std::vector<Context> elements;
        std::vector<std::pair<std::size_t, std::size_t>> arrows;

        auto index_of(const Context & context) const -> std::optional<std::size_t>;
        auto less_equal(std::size_t a, std::size_t b) const -> bool;
    };

    inline constexpr std::size_t kDefaultPosetLimit = 1'000'000;

    auto build_context_poset(const MeasurementScenario & scenario, std::size_t limit = kDefaultPosetLimit)
        -> ContextPoset;
}
