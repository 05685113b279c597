#include <sheafctx/error.hpp>
#include <sheafctx/gluing.hpp>

#include <algorithm>
#include <numeric>
#include <set>

using namespace sheafctx;

using std::size_t;
using std::uint64_t;
using std::vector;

namespace
{
    constexpr std::int64_t unassigned = -1;

    class SupportSearch
    {
        public:
            SupportSearch(const SupportModel & support, uint64_t & nodes, uint64_t budget) :
                _support(support),
                _scenario(support.scenario()),
                _nodes(nodes),
                _budget(budget)
            {
                auto n = _scenario.observable_count();
                _order.resize(n);
                std::iota(_order.begin(), _order.end(), 0);
                std::stable_sort(_order.begin(), _order.end(), [&] (size_t a, size_t b) {
                        return _scenario.cover_degree(a) > _scenario.cover_degree(b);
                        });

                _contexts_of.resize(n);
                for (size_t c = 0; c < _scenario.cover_size(); ++c) {
                    for (auto m : _scenario.context(c).members())
                        _contexts_of[m].push_back(c);
                    vector<vector<Outcome>> tuples;
                    for (auto & s : _support.supported_sections(c))
                        tuples.push_back(s.outcomes);
                    _tuples.push_back(std::move(tuples));
                }
                _assignment.assign(n, unassigned);
            }

            /// Collects up to `wanted` global sections, optionally through a fixed section.
            auto find(std::optional<std::pair<size_t, size_t>> fixed, size_t wanted) -> vector<GlobalAssignment>
            {
                std::fill(_assignment.begin(), _assignment.end(), unassigned);
                _found.clear();
                _wanted = wanted;

                if (fixed) {
                    auto & context = _scenario.context(fixed->first);
                    auto section = section_at(_scenario, context, fixed->second);
                    for (size_t k = 0; k < context.size(); ++k)
                        _assignment[context.members()[k]] = section.outcomes[k];
                    for (auto m : context.members())
                        for (auto c : _contexts_of[m])
                            if (! consistent(c))
                                return {};
                }

                search(0);
                return std::move(_found);
            }

        private:
            auto consistent(size_t context_index) const -> bool
            {
                auto & members = _scenario.context(context_index).members();
                for (auto & tuple : _tuples[context_index]) {
                    bool ok = true;
                    for (size_t k = 0; k < members.size() && ok; ++k) {
                        auto value = _assignment[members[k]];
                        ok = value == unassigned || static_cast<Outcome>(value) == tuple[k];
                    }
                    if (ok)
                        return true;
                }
                return false;
            }

            /// Returns true once enough sections have been found.
            auto search(size_t depth) -> bool
            {
                if (++_nodes > _budget)
                    throw Error{ErrorCode::SizeLimitExceeded, "global-section search exceeded "
                        + std::to_string(_budget) + " nodes"};

                while (depth < _order.size() && _assignment[_order[depth]] != unassigned)
                    ++depth;

                if (depth == _order.size()) {
                    GlobalAssignment g;
                    for (auto v : _assignment)
                        g.outcomes.push_back(static_cast<Outcome>(v));
                    _found.push_back(std::move(g));
                    return _found.size() >= _wanted;
                }

                auto var = _order[depth];
                for (size_t value = 0; value < _scenario.arity(var); ++value) {
                    _assignment[var] = static_cast<std::int64_t>(value);
                    bool ok = true;
                    for (auto c : _contexts_of[var])
                        if (! consistent(c)) {
                            ok = false;
                            break;
                        }
                    if (ok && search(depth + 1)) {
                        _assignment[var] = unassigned;
                        return true;
                    }
                }
                _assignment[var] = unassigned;
                return false;
            }

            const SupportModel & _support;
            const MeasurementScenario & _scenario;
            uint64_t & _nodes;
            uint64_t _budget;
            vector<size_t> _order;
            vector<vector<size_t>> _contexts_of;
            vector<vector<vector<Outcome>>> _tuples;
            vector<std::int64_t> _assignment;
            vector<GlobalAssignment> _found;
            size_t _wanted = 1;
    };

    auto to_double_vector(const vector<Rational> & values) -> vector<double>
    {
        vector<double> result;
        result.reserve(values.size());
        for (auto & v : values)
            result.push_back(to_double(v));
        return result;
    }

    auto to_rational_vector(const vector<double> & values) -> vector<Rational>
    {
        vector<Rational> result;
        result.reserve(values.size());
        for (auto v : values)
            result.push_back(exact_rational(v));
        return result;
    }

    template <typename Scalar>
    auto incidence_program(const IncidenceMatrix & incidence, const vector<Scalar> & probabilities,
            ConstraintSense sense, const Scalar & objective_weight) -> LinearProgram<Scalar>
    {
        LinearProgram<Scalar> lp;
        lp.variables = incidence.columns();
        lp.rows.assign(incidence.rows(), vector<Scalar>(incidence.columns(), Scalar{0}));
        for (size_t col = 0; col < incidence.columns(); ++col)
            for (auto row : incidence.column_rows(col))
                lp.rows[row][col] = Scalar{1};
        lp.senses.assign(incidence.rows(), sense);
        lp.rhs = probabilities;
        lp.objective.assign(incidence.columns(), objective_weight);
        return lp;
    }
}

auto GlobalAssignment::restrict_to(const Context & context) const -> LocalSection
{
    LocalSection section{context, {}};
    for (auto m : context.members())
        section.outcomes.push_back(outcomes.at(m));
    return section;
}

auto sheafctx::global_count(const MeasurementScenario & scenario, size_t limit) -> size_t
{
    size_t count = 1;
    for (auto & o : scenario.observables()) {
        if (count > limit / o.arity)
            throw Error{ErrorCode::SizeLimitExceeded, "more than " + std::to_string(limit) + " global assignments"};
        count *= o.arity;
    }
    return count;
}

auto sheafctx::global_at(const MeasurementScenario & scenario, size_t index) -> GlobalAssignment
{
    GlobalAssignment g;
    g.outcomes.resize(scenario.observable_count());
    for (size_t k = scenario.observable_count(); k-- > 0; ) {
        g.outcomes[k] = static_cast<Outcome>(index % scenario.arity(k));
        index /= scenario.arity(k);
    }
    return g;
}

auto sheafctx::for_each_global(const MeasurementScenario & scenario,
        const std::function<void (const GlobalAssignment &)> & visit, size_t limit) -> void
{
    auto count = global_count(scenario, limit);
    GlobalAssignment g;
    g.outcomes.assign(scenario.observable_count(), 0);
    for (size_t i = 0; i < count; ++i) {
        visit(g);
        // Odometer increment, last observable fastest.
        for (size_t k = g.outcomes.size(); k-- > 0; ) {
            if (++g.outcomes[k] < scenario.arity(k))
                break;
            g.outcomes[k] = 0;
        }
    }
}

auto sheafctx::enumerate_globals(const MeasurementScenario & scenario, size_t limit) -> vector<GlobalAssignment>
{
    vector<GlobalAssignment> result;
    result.reserve(global_count(scenario, limit));
    for_each_global(scenario, [&] (const GlobalAssignment & g) { result.push_back(g); }, limit);
    return result;
}

auto sheafctx::extend_to_global(const SupportModel & support, size_t cover_index, size_t section_index,
        uint64_t node_budget) -> std::optional<GlobalAssignment>
{
    if (! support.contains(cover_index, section_index))
        throw Error{ErrorCode::InvalidArgument, "section is not in the support of its context"};
    uint64_t nodes = 0;
    SupportSearch search{support, nodes, node_budget};
    auto found = search.find(std::pair{cover_index, section_index}, 1);
    if (found.empty())
        return std::nullopt;
    return found.front();
}

auto sheafctx::sheaf_check(const SupportModel & support, uint64_t node_budget) -> ContextualityVerdict
{
    ContextualityVerdict verdict;
    auto & scenario = support.scenario();
    uint64_t nodes = 0;
    SupportSearch search{support, nodes, node_budget};

    auto globals = search.find(std::nullopt, 2);
    verdict.strongly_contextual = globals.empty();
    verdict.unique_global_section = globals.size() == 1;
    if (! globals.empty())
        verdict.global_section = globals.front();

    std::set<std::pair<size_t, size_t>> extendable;
    auto mark = [&] (const GlobalAssignment & g) {
        for (size_t c = 0; c < scenario.cover_size(); ++c)
            extendable.emplace(c, section_index(scenario, g.restrict_to(scenario.context(c))));
    };
    for (auto & g : globals)
        mark(g);

    for (size_t c = 0; c < scenario.cover_size() && ! verdict.non_extendable; ++c)
        for (auto s : support.support(c)) {
            if (extendable.contains({c, s}))
                continue;
            auto found = search.find(std::pair{c, s}, 1);
            if (found.empty()) {
                verdict.non_extendable = std::pair{c, section_at(scenario, scenario.context(c), s)};
                break;
            }
            mark(found.front());
        }

    verdict.logically_contextual = verdict.non_extendable.has_value();
    verdict.noncontextual = ! verdict.logically_contextual;
    return verdict;
}

auto IncidenceMatrix::at(size_t row, size_t column) const -> int
{
    auto & rows = _column_rows.at(column);
    return std::find(rows.begin(), rows.end(), row) != rows.end() ? 1 : 0;
}

auto IncidenceMatrix::dense() const -> vector<vector<int>>
{
    vector<vector<int>> result(_rows, vector<int>(columns(), 0));
    for (size_t col = 0; col < columns(); ++col)
        for (auto row : _column_rows[col])
            result[row][col] = 1;
    return result;
}

auto sheafctx::build_incidence(const MeasurementScenario & scenario, size_t limit) -> IncidenceMatrix
{
    IncidenceMatrix matrix;
    for (auto & c : scenario.cover()) {
        matrix._row_offsets.push_back(matrix._rows);
        matrix._rows += section_count(scenario, c);
    }

    matrix._column_rows.reserve(global_count(scenario, limit));
    for_each_global(scenario, [&] (const GlobalAssignment & g) {
            vector<size_t> rows;
            rows.reserve(scenario.cover_size());
            for (size_t c = 0; c < scenario.cover_size(); ++c)
                rows.push_back(matrix._row_offsets[c] + section_index(scenario, g.restrict_to(scenario.context(c))));
            matrix._column_rows.push_back(std::move(rows));
            }, limit);
    return matrix;
}

auto sheafctx::stacked_probabilities(const EmpiricalModel & model) -> vector<Rational>
{
    vector<Rational> p;
    for (auto & table : model.tables())
        p.insert(p.end(), table.begin(), table.end());
    return p;
}

auto sheafctx::is_noncontextual(const EmpiricalModel & model, const LpBudget & budget) -> NoncontextualityResult
{
    auto incidence = build_incidence(model.scenario(), budget.global_limit);
    auto p = stacked_probabilities(model);
    NoncontextualityResult result;

    if (model.mode() == NumericMode::Exact) {
        auto lp = incidence_program<Rational>(incidence, p, ConstraintSense::Equal, Rational{0});
        auto solution = solve_lp(lp, budget.pivot_limit);
        result.noncontextual = solution.status == LpStatus::Optimal;
        result.global_distribution = std::move(solution.x);
        result.farkas = std::move(solution.farkas);
    }
    else {
        auto lp = incidence_program<double>(incidence, to_double_vector(p), ConstraintSense::Equal, 0.0);
        auto solution = solve_lp(lp, budget.pivot_limit);
        result.noncontextual = solution.status == LpStatus::Optimal;
        result.global_distribution = to_rational_vector(solution.x);
        result.farkas = to_rational_vector(solution.farkas);
    }
    return result;
}

auto sheafctx::contextual_fraction(const EmpiricalModel & model, const LpBudget & budget) -> FractionReport
{
    auto incidence = build_incidence(model.scenario(), budget.global_limit);
    auto p = stacked_probabilities(model);
    FractionReport report;

    if (model.mode() == NumericMode::Exact) {
        auto lp = incidence_program<Rational>(incidence, p, ConstraintSense::LessEqual, Rational{1});
        auto solution = solve_lp(lp, budget.pivot_limit);
        report.noncontextual_fraction = solution.objective;
        report.weights = std::move(solution.x);
    }
    else {
        auto lp = incidence_program<double>(incidence, to_double_vector(p), ConstraintSense::LessEqual, 1.0);
        auto solution = solve_lp(lp, budget.pivot_limit);
        auto value = std::clamp(solution.objective, 0.0, 1.0);
        report.noncontextual_fraction = exact_rational(value);
        report.weights = to_rational_vector(solution.x);
    }
    report.contextual_fraction = Rational{1} - report.noncontextual_fraction;
    return report;
}
