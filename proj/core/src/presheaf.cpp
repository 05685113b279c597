#include <sheafctx/error.hpp>
#include <sheafctx/presheaf.hpp>

#include <algorithm>
#include <set>

using namespace sheafctx;

using std::size_t;
using std::vector;

namespace
{
    auto decode(const MeasurementScenario & scenario, const Context & context, size_t index) -> vector<Outcome>
    {
        auto & members = context.members();
        vector<Outcome> outcomes(members.size());
        for (size_t k = members.size(); k-- > 0; ) {
            auto arity = scenario.arity(members[k]);
            outcomes[k] = static_cast<Outcome>(index % arity);
            index /= arity;
        }
        return outcomes;
    }

    auto encode(const MeasurementScenario & scenario, const Context & context, const vector<Outcome> & outcomes) -> size_t
    {
        size_t index = 0;
        auto & members = context.members();
        for (size_t k = 0; k < members.size(); ++k)
            index = index * scenario.arity(members[k]) + outcomes[k];
        return index;
    }
}

auto LocalSection::value_of(ObservableIndex observable) const -> std::optional<Outcome>
{
    if (auto pos = context.position_of(observable))
        return outcomes[*pos];
    return std::nullopt;
}

auto sheafctx::section_count(const MeasurementScenario & scenario, const Context & context, size_t limit) -> size_t
{
    size_t count = 1;
    for (auto m : context.members()) {
        auto arity = scenario.arity(m);
        if (count > limit / arity)
            throw Error{ErrorCode::SizeLimitExceeded, "context " + scenario.label(context) + " has more than "
                + std::to_string(limit) + " sections"};
        count *= arity;
    }
    if (count > limit)
        throw Error{ErrorCode::SizeLimitExceeded, "context " + scenario.label(context) + " has more than "
            + std::to_string(limit) + " sections"};
    return count;
}

auto sheafctx::validate_section(const MeasurementScenario & scenario, const LocalSection & section) -> void
{
    if (section.outcomes.size() != section.context.size())
        throw Error{ErrorCode::InvalidContext, "section does not assign every member of its context"};
    for (size_t k = 0; k < section.outcomes.size(); ++k) {
        auto m = section.context.members()[k];
        if (m >= scenario.observable_count())
            throw Error{ErrorCode::UnknownObservable, "observable index " + std::to_string(m) + " out of range"};
        if (section.outcomes[k] >= scenario.arity(m))
            throw Error{ErrorCode::OutcomeOutOfRange, "outcome " + std::to_string(section.outcomes[k])
                + " for '" + scenario.observable(m).id + "'"};
    }
}

auto sheafctx::section_index(const MeasurementScenario & scenario, const LocalSection & section) -> size_t
{
    validate_section(scenario, section);
    return encode(scenario, section.context, section.outcomes);
}

auto sheafctx::section_at(const MeasurementScenario & scenario, const Context & context, size_t index) -> LocalSection
{
    return LocalSection{context, decode(scenario, context, index)};
}

auto sheafctx::enumerate_sections(const Context & context, const MeasurementScenario & scenario, size_t limit)
    -> vector<LocalSection>
{
    auto count = section_count(scenario, context, limit);
    vector<LocalSection> result;
    result.reserve(count);
    for (size_t i = 0; i < count; ++i)
        result.push_back(section_at(scenario, context, i));
    return result;
}

auto sheafctx::restrict(const LocalSection & section, const Context & subcontext) -> LocalSection
{
    if (! subcontext.is_subset_of(section.context))
        throw Error{ErrorCode::NotASubcontext, "restriction target is not contained in the section's context"};

    LocalSection result{subcontext, {}};
    result.outcomes.reserve(subcontext.size());
    for (auto m : subcontext.members())
        result.outcomes.push_back(*section.value_of(m));
    return result;
}

auto sheafctx::restriction_indices(const MeasurementScenario & scenario, const Context & from, const Context & to)
    -> vector<size_t>
{
    if (! to.is_subset_of(from))
        throw Error{ErrorCode::NotASubcontext, scenario.label(to) + " is not contained in " + scenario.label(from)};

    vector<size_t> positions;
    for (auto m : to.members())
        positions.push_back(*from.position_of(m));

    auto count = section_count(scenario, from);
    vector<size_t> result(count);
    vector<Outcome> sub(positions.size());
    for (size_t i = 0; i < count; ++i) {
        auto outcomes = decode(scenario, from, i);
        for (size_t k = 0; k < positions.size(); ++k)
            sub[k] = outcomes[positions[k]];
        result[i] = encode(scenario, to, sub);
    }
    return result;
}

EmpiricalModel::EmpiricalModel(MeasurementScenario scenario, vector<Distribution> tables, NumericMode mode) :
    _scenario(std::move(scenario)),
    _tables(std::move(tables)),
    _mode(mode)
{
    if (_tables.size() != _scenario.cover_size())
        throw Error{ErrorCode::InvalidModel, "expected " + std::to_string(_scenario.cover_size())
            + " tables, got " + std::to_string(_tables.size())};

    for (size_t i = 0; i < _tables.size(); ++i) {
        auto & context = _scenario.context(i);
        auto expected = section_count(_scenario, context);
        if (_tables[i].size() != expected)
            throw Error{ErrorCode::InvalidModel, "table for " + _scenario.label(context) + " has "
                + std::to_string(_tables[i].size()) + " entries, expected " + std::to_string(expected)};

        Rational total = 0;
        for (auto & p : _tables[i]) {
            if (p < 0)
                throw Error{ErrorCode::InvalidModel, "negative probability in table for " + _scenario.label(context)};
            total += p;
        }
        if (! approximately_equal(total, Rational{1}, _mode))
            throw Error{ErrorCode::InvalidModel, "table for " + _scenario.label(context) + " sums to "
                + format_rational(total)};
    }
}

auto EmpiricalModel::probability(size_t cover_index, const LocalSection & section) const -> const Rational &
{
    if (section.context != _scenario.context(cover_index))
        throw Error{ErrorCode::InvalidContext, "section belongs to a different context"};
    return _tables.at(cover_index).at(section_index(_scenario, section));
}

auto sheafctx::marginalize(const MeasurementScenario & scenario, const Context & context, const Distribution & table,
        const Context & overlap) -> Distribution
{
    auto map = restriction_indices(scenario, context, overlap);
    if (table.size() != map.size())
        throw Error{ErrorCode::InvalidModel, "table size does not match " + scenario.label(context)};

    Distribution result(section_count(scenario, overlap), Rational{0});
    for (size_t i = 0; i < map.size(); ++i)
        result[map[i]] += table[i];
    return result;
}

auto sheafctx::check_compatibility(const EmpiricalModel & model) -> CompatibilityReport
{
    CompatibilityReport report;
    auto & scenario = model.scenario();
    for (size_t i = 0; i < scenario.cover_size(); ++i)
        for (size_t j = i + 1; j < scenario.cover_size(); ++j) {
            auto overlap = scenario.context(i).intersect(scenario.context(j));
            if (overlap.empty())
                continue;

            auto left = marginalize(scenario, scenario.context(i), model.table(i), overlap);
            auto right = marginalize(scenario, scenario.context(j), model.table(j), overlap);
            Rational worst = 0;
            for (size_t k = 0; k < left.size(); ++k)
                worst = std::max(worst, Rational{abs(left[k] - right[k])});

            if (! approximately_equal(worst, Rational{0}, model.mode()))
                report.violations.push_back(CompatibilityViolation{i, j, overlap, worst});
        }
    report.ok = report.violations.empty();
    return report;
}

SupportModel::SupportModel(MeasurementScenario scenario, vector<vector<size_t>> supports) :
    _scenario(std::move(scenario)),
    _supports(std::move(supports))
{
    if (_supports.size() != _scenario.cover_size())
        throw Error{ErrorCode::InvalidModel, "expected one support per cover context"};
    for (size_t i = 0; i < _supports.size(); ++i) {
        auto & s = _supports[i];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (s.empty())
            throw Error{ErrorCode::EmptySupport, "context " + _scenario.label(_scenario.context(i)) + " has empty support"};
        if (s.back() >= section_count(_scenario, _scenario.context(i)))
            throw Error{ErrorCode::InvalidModel, "support index out of range for " + _scenario.label(_scenario.context(i))};
    }
}

auto SupportModel::contains(size_t cover_index, size_t section_index) const -> bool
{
    auto & s = _supports.at(cover_index);
    return std::binary_search(s.begin(), s.end(), section_index);
}

auto SupportModel::supported_sections(size_t cover_index) const -> vector<LocalSection>
{
    vector<LocalSection> result;
    for (auto index : _supports.at(cover_index))
        result.push_back(section_at(_scenario, _scenario.context(cover_index), index));
    return result;
}

auto SupportModel::restricted_support(const Context & context) const -> vector<size_t>
{
    std::set<size_t> result;
    for (size_t i = 0; i < _scenario.cover_size(); ++i) {
        if (! context.is_subset_of(_scenario.context(i)))
            continue;
        auto map = restriction_indices(_scenario, _scenario.context(i), context);
        for (auto s : _supports[i])
            result.insert(map[s]);
    }
    return {result.begin(), result.end()};
}

auto sheafctx::support_of(const EmpiricalModel & model, std::optional<Rational> threshold) -> SupportModel
{
    Rational cut = threshold ? *threshold
        : (model.mode() == NumericMode::Exact ? Rational{0} : exact_rational(kFloatSupportThreshold));
    if (cut < 0)
        throw Error{ErrorCode::InvalidArgument, "support threshold must be non-negative"};

    vector<vector<size_t>> supports;
    for (size_t i = 0; i < model.scenario().cover_size(); ++i) {
        vector<size_t> s;
        auto & table = model.table(i);
        for (size_t k = 0; k < table.size(); ++k)
            if (table[k] > cut)
                s.push_back(k);
        if (s.empty())
            throw Error{ErrorCode::EmptySupport, "no section of " + model.scenario().label(model.scenario().context(i))
                + " exceeds the support threshold"};
        supports.push_back(std::move(s));
    }
    return SupportModel{model.scenario(), std::move(supports)};
}

auto sheafctx::supports_compatible(const SupportModel & support) -> bool
{
    auto & scenario = support.scenario();
    for (size_t i = 0; i < scenario.cover_size(); ++i)
        for (size_t j = i + 1; j < scenario.cover_size(); ++j) {
            auto overlap = scenario.context(i).intersect(scenario.context(j));
            if (overlap.empty())
                continue;
            auto project = [&] (size_t c) {
                auto map = restriction_indices(scenario, scenario.context(c), overlap);
                std::set<size_t> image;
                for (auto s : support.support(c))
                    image.insert(map[s]);
                return image;
            };
            if (project(i) != project(j))
                return false;
        }
    return true;
}
