#include <sheafctx/error.hpp>
#include <sheafctx/model_io.hpp>

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

using namespace sheafctx;

using nlohmann::json;
using std::size_t;
using std::string;
using std::vector;

namespace
{
    auto parse_json(std::string_view text) -> json
    {
        try {
            return json::parse(text.begin(), text.end());
        }
        catch (const json::exception & e) {
            throw Error{ErrorCode::ParseError, string{"malformed JSON: "} + e.what()};
        }
    }

    auto require_object(const json & j, const string & where, std::initializer_list<const char *> allowed) -> void
    {
        if (! j.is_object())
            throw Error{ErrorCode::ParseError, where + " must be a JSON object"};
        std::set<string> keys{allowed.begin(), allowed.end()};
        for (auto & [key, value] : j.items())
            if (! keys.contains(key))
                throw Error{ErrorCode::ParseError, "unknown key '" + key + "' in " + where};
    }

    auto member(const json & j, const char * key, const string & where) -> const json &
    {
        auto it = j.find(key);
        if (it == j.end())
            throw Error{ErrorCode::ParseError, where + " is missing '" + key + "'"};
        return *it;
    }

    auto string_list(const json & j, const string & where) -> vector<string>
    {
        if (! j.is_array())
            throw Error{ErrorCode::ParseError, where + " must be an array of observable ids"};
        vector<string> result;
        for (auto & e : j) {
            if (! e.is_string())
                throw Error{ErrorCode::ParseError, where + " must contain only strings"};
            result.push_back(e.get<string>());
        }
        return result;
    }

    auto scenario_from_json(const json & j) -> MeasurementScenario
    {
        require_object(j, "scenario", {"observables", "cover"});

        auto & observables_json = member(j, "observables", "scenario");
        if (! observables_json.is_array())
            throw Error{ErrorCode::ParseError, "'observables' must be an array"};
        vector<Observable> observables;
        for (auto & o : observables_json) {
            require_object(o, "observable", {"id", "arity"});
            auto & id = member(o, "id", "observable");
            auto & arity = member(o, "arity", "observable");
            if (! id.is_string())
                throw Error{ErrorCode::ParseError, "observable id must be a string"};
            if (! arity.is_number_integer())
                throw Error{ErrorCode::ParseError, "arity of '" + id.get<string>() + "' must be an integer"};
            auto value = arity.get<long long>();
            if (value < 2)
                throw Error{ErrorCode::InvalidObservable, "observable '" + id.get<string>() + "' has arity "
                    + std::to_string(value) + " (at least 2 required)"};
            observables.push_back(Observable{id.get<string>(), static_cast<size_t>(value)});
        }

        auto & cover_json = member(j, "cover", "scenario");
        if (! cover_json.is_array())
            throw Error{ErrorCode::ParseError, "'cover' must be an array of contexts"};
        vector<vector<string>> cover;
        for (auto & c : cover_json)
            cover.push_back(string_list(c, "cover context"));

        return build_scenario(std::move(observables), cover);
    }

    auto section_key(const string & key, const vector<ObservableIndex> & order, const MeasurementScenario & scenario)
        -> vector<Outcome>
    {
        vector<string> parts;
        if (key.find(',') != string::npos) {
            std::stringstream in{key};
            string part;
            while (std::getline(in, part, ','))
                parts.push_back(part);
        }
        else
            for (auto c : key)
                parts.emplace_back(1, c);

        if (parts.size() != order.size())
            throw Error{ErrorCode::ParseError, "section key '" + key + "' does not assign "
                + std::to_string(order.size()) + " outcomes"};

        vector<Outcome> outcomes;
        for (size_t k = 0; k < parts.size(); ++k) {
            auto & p = parts[k];
            if (p.empty() || p.find_first_not_of("0123456789") != string::npos || p.size() > 9)
                throw Error{ErrorCode::ParseError, "section key '" + key + "' is not a list of outcomes"};
            auto value = std::stoul(p);
            if (value >= scenario.arity(order[k]))
                throw Error{ErrorCode::OutcomeOutOfRange, "outcome " + p + " for '" + scenario.observable(order[k]).id
                    + "' in section key '" + key + "'"};
            outcomes.push_back(static_cast<Outcome>(value));
        }
        return outcomes;
    }

    auto probability(const json & value, NumericMode mode, const string & where) -> Rational
    {
        if (value.is_string()) {
            auto r = parse_rational(value.get<string>());
            return mode == NumericMode::Float ? exact_rational(to_double(r)) : r;
        }
        if (value.is_number_integer())
            return Rational{value.get<long long>()};
        if (value.is_number_float()) {
            if (mode == NumericMode::Exact)
                throw Error{ErrorCode::ParseError, "probability at " + where
                    + " is a JSON float; rational mode needs a \"p/q\" string"};
            return exact_rational(value.get<double>());
        }
        throw Error{ErrorCode::ParseError, "probability at " + where + " must be a string or a number"};
    }
}

auto sheafctx::read_text_file(const std::filesystem::path & path) -> string
{
    std::ifstream in{path, std::ios::binary};
    if (! in)
        throw Error{ErrorCode::ParseError, "cannot read '" + path.string() + "'"};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

auto sheafctx::parse_scenario(std::string_view json_text) -> MeasurementScenario
{
    return scenario_from_json(parse_json(json_text));
}

auto sheafctx::load_scenario(const std::filesystem::path & path) -> MeasurementScenario
{
    return parse_scenario(read_text_file(path));
}

auto sheafctx::scenario_to_json(const MeasurementScenario & scenario) -> string
{
    json j;
    j["observables"] = json::array();
    for (auto & o : scenario.observables())
        j["observables"].push_back({{"id", o.id}, {"arity", o.arity}});
    j["cover"] = json::array();
    for (auto & c : scenario.cover()) {
        json ids = json::array();
        for (auto m : c.members())
            ids.push_back(scenario.observable(m).id);
        j["cover"].push_back(ids);
    }
    return j.dump();
}

auto sheafctx::parse_model(std::string_view json_text, const std::filesystem::path & base_dir,
        std::optional<NumericMode> mode_override) -> EmpiricalModel
{
    auto j = parse_json(json_text);
    require_object(j, "model", {"scenario", "mode", "tables"});

    auto & scenario_json = member(j, "scenario", "model");
    MeasurementScenario scenario;
    if (scenario_json.is_string()) {
        std::filesystem::path p{scenario_json.get<string>()};
        scenario = load_scenario(p.is_absolute() ? p : base_dir / p);
    }
    else
        scenario = scenario_from_json(scenario_json);

    NumericMode mode = NumericMode::Exact;
    if (auto it = j.find("mode"); it != j.end()) {
        if (! it->is_string())
            throw Error{ErrorCode::ParseError, "'mode' must be \"rational\" or \"float\""};
        mode = parse_numeric_mode(it->get<string>());
    }
    if (mode_override)
        mode = *mode_override;

    auto & tables_json = member(j, "tables", "model");
    if (! tables_json.is_array())
        throw Error{ErrorCode::ParseError, "'tables' must be an array"};

    vector<std::optional<Distribution>> tables(scenario.cover_size());
    for (auto & t : tables_json) {
        require_object(t, "table", {"context", "probs"});
        auto ids = string_list(member(t, "context", "table"), "table context");
        auto context = scenario.make_context(ids);
        auto cover_index = scenario.cover_index_of(context);
        if (! cover_index)
            throw Error{ErrorCode::InvalidModel, "table context " + scenario.label(context) + " is not in the cover"};
        if (tables[*cover_index])
            throw Error{ErrorCode::InvalidModel, "two tables for context " + scenario.label(context)};
        if (context.size() != ids.size())
            throw Error{ErrorCode::InvalidContext, "table context repeats an observable"};

        vector<ObservableIndex> order;
        for (auto & id : ids)
            order.push_back(*scenario.index_of(id));

        auto & probs = member(t, "probs", "table");
        if (! probs.is_object())
            throw Error{ErrorCode::ParseError, "'probs' must be an object keyed by section"};

        Distribution table(section_count(scenario, context), Rational{0});
        for (auto & [key, value] : probs.items()) {
            auto listed = section_key(key, order, scenario);
            LocalSection section{context, vector<Outcome>(context.size())};
            for (size_t k = 0; k < order.size(); ++k)
                section.outcomes[*context.position_of(order[k])] = listed[k];
            table[section_index(scenario, section)] = probability(value, mode, scenario.label(context) + "[" + key + "]");
        }
        tables[*cover_index] = std::move(table);
    }

    vector<Distribution> dense;
    for (size_t i = 0; i < tables.size(); ++i) {
        if (! tables[i])
            throw Error{ErrorCode::InvalidModel, "no table for context " + scenario.label(scenario.context(i))};
        dense.push_back(std::move(*tables[i]));
    }
    return EmpiricalModel{std::move(scenario), std::move(dense), mode};
}

auto sheafctx::load_model(const std::filesystem::path & path, std::optional<NumericMode> mode_override) -> EmpiricalModel
{
    return parse_model(read_text_file(path), path.parent_path(), mode_override);
}

auto sheafctx::model_to_json(const EmpiricalModel & model) -> string
{
    auto & scenario = model.scenario();
    json j;
    j["scenario"] = json::parse(scenario_to_json(scenario));
    j["mode"] = string{to_string(model.mode())};
    j["tables"] = json::array();
    for (size_t i = 0; i < scenario.cover_size(); ++i) {
        auto & context = scenario.context(i);
        bool wide = false;
        json ids = json::array();
        for (auto m : context.members()) {
            ids.push_back(scenario.observable(m).id);
            wide = wide || scenario.arity(m) > 10;
        }
        json probs = json::object();
        auto & table = model.table(i);
        for (size_t s = 0; s < table.size(); ++s) {
            if (table[s] == 0)
                continue;
            string key;
            auto section = section_at(scenario, context, s);
            for (size_t k = 0; k < section.outcomes.size(); ++k) {
                if (wide && k > 0)
                    key += ',';
                key += std::to_string(section.outcomes[k]);
            }
            if (model.mode() == NumericMode::Exact)
                probs[key] = format_rational(table[s]);
            else
                probs[key] = to_double(table[s]);
        }
        j["tables"].push_back({{"context", ids}, {"probs", probs}});
    }
    return j.dump();
}
