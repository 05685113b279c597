#include <sheafctx/error.hpp>
#include <sheafctx/scenario.hpp>

#include <algorithm>
#include <set>

using namespace sheafctx;

using std::size_t;
using std::string;
using std::vector;

Context::Context(vector<ObservableIndex> members) :
    _members(std::move(members))
{
    std::sort(_members.begin(), _members.end());
}

auto Context::contains(ObservableIndex observable) const -> bool
{
    return std::binary_search(_members.begin(), _members.end(), observable);
}

auto Context::position_of(ObservableIndex observable) const -> std::optional<size_t>
{
    auto it = std::lower_bound(_members.begin(), _members.end(), observable);
    if (it == _members.end() || *it != observable)
        return std::nullopt;
    return static_cast<size_t>(it - _members.begin());
}

auto Context::is_subset_of(const Context & other) const -> bool
{
    return std::includes(other._members.begin(), other._members.end(), _members.begin(), _members.end());
}

auto Context::intersect(const Context & other) const -> Context
{
    vector<ObservableIndex> common;
    std::set_intersection(_members.begin(), _members.end(), other._members.begin(), other._members.end(),
            std::back_inserter(common));
    return Context{std::move(common)};
}

auto MeasurementScenario::index_of(const string & id) const -> std::optional<ObservableIndex>
{
    for (size_t i = 0; i < _observables.size(); ++i)
        if (_observables[i].id == id)
            return i;
    return std::nullopt;
}

auto MeasurementScenario::make_context(const vector<string> & ids) const -> Context
{
    if (ids.empty())
        throw Error{ErrorCode::InvalidContext, "contexts must be non-empty"};

    vector<ObservableIndex> members;
    for (auto & id : ids) {
        auto index = index_of(id);
        if (! index)
            throw Error{ErrorCode::UnknownObservable, "'" + id + "' is not an observable of the scenario"};
        if (std::find(members.begin(), members.end(), *index) != members.end())
            throw Error{ErrorCode::InvalidContext, "observable '" + id + "' repeated within a context"};
        members.push_back(*index);
    }
    return Context{std::move(members)};
}

auto MeasurementScenario::cover_index_of(const Context & context) const -> std::optional<size_t>
{
    for (size_t i = 0; i < _cover.size(); ++i)
        if (_cover[i] == context)
            return i;
    return std::nullopt;
}

auto MeasurementScenario::cover_degree(ObservableIndex index) const -> size_t
{
    return static_cast<size_t>(std::count_if(_cover.begin(), _cover.end(),
                [&] (const Context & c) { return c.contains(index); }));
}

auto MeasurementScenario::label(const Context & context) const -> string
{
    string result = "{";
    bool first = true;
    for (auto m : context.members()) {
        if (! first)
            result += ",";
        result += _observables.at(m).id;
        first = false;
    }
    return result + "}";
}

auto sheafctx::build_scenario(vector<Observable> observables, const vector<vector<string>> & cover)
    -> MeasurementScenario
{
    if (cover.empty())
        throw Error{ErrorCode::EmptyCover, "a scenario needs at least one context"};

    std::set<string> seen;
    for (auto & o : observables) {
        if (o.id.empty())
            throw Error{ErrorCode::InvalidObservable, "observable ids must be non-empty"};
        if (o.arity < 2)
            throw Error{ErrorCode::InvalidObservable, "observable '" + o.id + "' needs at least two outcomes"};
        if (! seen.insert(o.id).second)
            throw Error{ErrorCode::DuplicateObservable, "observable '" + o.id + "' declared twice"};
    }

    MeasurementScenario result;
    result._observables = std::move(observables);
    for (auto & ids : cover)
        result._cover.push_back(result.make_context(ids));

    for (size_t i = 0; i < result._cover.size(); ++i)
        for (size_t j = 0; j < result._cover.size(); ++j)
            if (i != j && result._cover[i].is_subset_of(result._cover[j]))
                throw Error{ErrorCode::DominatedContext, "context " + result.label(result._cover[i])
                    + " is contained in " + result.label(result._cover[j])};

    for (size_t o = 0; o < result._observables.size(); ++o)
        if (result.cover_degree(o) == 0)
            throw Error{ErrorCode::InvalidObservable, "observable '" + result._observables[o].id
                + "' does not appear in any context"};

    return result;
}

auto Nerve::edge_index(size_t i, size_t j) const -> std::optional<size_t>
{
    if (i > j)
        std::swap(i, j);
    for (size_t e = 0; e < edges.size(); ++e)
        if (edges[e].first == i && edges[e].second == j)
            return e;
    return std::nullopt;
}

auto sheafctx::build_nerve(const MeasurementScenario & scenario) -> Nerve
{
    Nerve nerve;
    nerve.vertices = scenario.cover();
    auto n = nerve.vertices.size();

    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (auto overlap = nerve.vertices[i].intersect(nerve.vertices[j]); ! overlap.empty())
                nerve.edges.push_back(NerveEdge{i, j, std::move(overlap)});

    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                auto overlap = nerve.vertices[i].intersect(nerve.vertices[j]).intersect(nerve.vertices[k]);
                if (overlap.empty())
                    continue;
                nerve.triangles.push_back(NerveTriangle{i, j, k, std::move(overlap),
                        *nerve.edge_index(i, j), *nerve.edge_index(i, k), *nerve.edge_index(j, k)});
            }

    return nerve;
}

auto ContextPoset::index_of(const Context & context) const -> std::optional<size_t>
{
    auto it = std::find(elements.begin(), elements.end(), context);
    if (it == elements.end())
        return std::nullopt;
    return static_cast<size_t>(it - elements.begin());
}

auto ContextPoset::less_equal(size_t a, size_t b) const -> bool
{
    return elements.at(a).is_subset_of(elements.at(b));
}

auto sheafctx::build_context_poset(const MeasurementScenario & scenario, size_t limit) -> ContextPoset
{
    std::set<Context> closure;
    for (auto & c : scenario.cover()) {
        auto & members = c.members();
        if (members.size() >= 40)
            throw Error{ErrorCode::SizeLimitExceeded, "context " + scenario.label(c) + " has too many subsets"};
        for (size_t mask = 1; mask < (size_t{1} << members.size()); ++mask) {
            vector<ObservableIndex> subset;
            for (size_t b = 0; b < members.size(); ++b)
                if (mask & (size_t{1} << b))
                    subset.push_back(members[b]);
            closure.insert(Context{std::move(subset)});
            if (closure.size() > limit)
                throw Error{ErrorCode::SizeLimitExceeded, "downward closure of the cover exceeds "
                    + std::to_string(limit) + " elements"};
        }
    }

    ContextPoset poset;
    poset.elements.assign(closure.begin(), closure.end());
    std::stable_sort(poset.elements.begin(), poset.elements.end(),
            [] (const Context & a, const Context & b) { return a.size() < b.size(); });

    for (size_t from = 0; from < poset.elements.size(); ++from)
        for (size_t to = 0; to < poset.elements.size(); ++to)
            if (from != to && poset.elements[to].is_subset_of(poset.elements[from]))
                poset.arrows.emplace_back(from, to);

    return poset;
}
