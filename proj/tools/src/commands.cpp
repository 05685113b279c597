#include "commands.hpp"

#include <sheafctx/dynamics.hpp>
#include <sheafctx/error.hpp>
#include <sheafctx/gplogic.hpp>
#include <sheafctx/model_io.hpp>
#include <sheafctx_cli/cli.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sheafctx;
using namespace sheafctx::cli;

using std::size_t;
using std::string;
using std::vector;

namespace fs = std::filesystem;

namespace
{
    struct Source
    {
        string content;
        fs::path base_dir;
        Json input;
    };

    auto fixture_source(const BundledFixture & f, const string & given, const string & role) -> Source
    {
        return Source{string{f.content}, {}, Json{{"role", role}, {"source", given}, {"fixture", f.name},
            {"sha256", sha256_hex(f.content)}}};
    }

    auto file_source(const string & path, const string & role) -> Source
    {
        auto content = read_text_file(path);
        Json input{{"role", role}, {"source", path}, {"fixture", nullptr}, {"sha256", sha256_hex(content)}};
        if (auto f = fixture_with_content(content))
            input["fixture"] = f->name;
        return Source{std::move(content), fs::path{path}.parent_path(), std::move(input)};
    }

    /// "fixture:NAME", an existing path, or a bare fixture name. A missing
    /// path whose stem names a bundled fixture falls back to that fixture.
    auto resolve_model(const string & given) -> Source
    {
        if (given.starts_with("fixture:")) {
            auto name = given.substr(8);
            if (auto f = find_fixture(name))
                return fixture_source(*f, given, "model");
            throw Error{ErrorCode::ParseError, "no bundled fixture named '" + name + "'"};
        }
        std::error_code ec;
        if (fs::is_regular_file(given, ec))
            return file_source(given, "model");
        if (auto f = find_fixture(given))
            return fixture_source(*f, given, "model");
        if (auto f = find_fixture(fs::path{given}.stem().string()); f && fs::path{given}.extension() == ".json")
            return fixture_source(*f, given, "model");
        throw Error{ErrorCode::ParseError, "cannot read model '" + given + "' (not a file or bundled fixture)"};
    }

    auto number(const Rational & value, NumericMode mode) -> Json
    {
        if (mode == NumericMode::Exact)
            return format_rational(value);
        return to_double(value);
    }

    auto number_text(const Rational & value, NumericMode mode) -> string
    {
        if (mode == NumericMode::Exact)
            return format_rational(value);
        char buffer[32];
        std::snprintf(buffer, sizeof buffer, "%.12g", to_double(value));
        return buffer;
    }

    auto real_text(double value) -> string
    {
        char buffer[32];
        std::snprintf(buffer, sizeof buffer, "%.12g", value);
        return buffer;
    }

    auto context_json(const MeasurementScenario & scenario, const Context & context) -> Json
    {
        Json ids = Json::array();
        for (auto m : context.members())
            ids.push_back(scenario.observable(m).id);
        return ids;
    }

    auto section_key(const MeasurementScenario & scenario, const LocalSection & section) -> string
    {
        bool wide = false;
        for (auto m : section.context.members())
            wide = wide || scenario.arity(m) > 10;
        string key;
        for (size_t k = 0; k < section.outcomes.size(); ++k) {
            if (wide && k > 0)
                key += ',';
            key += std::to_string(section.outcomes[k]);
        }
        return key;
    }

    auto section_text(const MeasurementScenario & scenario, const LocalSection & section) -> string
    {
        string text;
        for (size_t k = 0; k < section.outcomes.size(); ++k)
            text += (k ? " " : "") + scenario.observable(section.context.members()[k]).id + "="
                + std::to_string(section.outcomes[k]);
        return text;
    }

    auto assignment_json(const MeasurementScenario & scenario, const GlobalAssignment & g) -> Json
    {
        Json object = Json::object();
        for (size_t i = 0; i < g.outcomes.size(); ++i)
            object[scenario.observable(i).id] = g.outcomes[i];
        return object;
    }

    auto assignment_text(const MeasurementScenario & scenario, const GlobalAssignment & g) -> string
    {
        string text;
        for (size_t i = 0; i < g.outcomes.size(); ++i)
            text += (i ? " " : "") + scenario.observable(i).id + "=" + std::to_string(g.outcomes[i]);
        return text;
    }

    auto csv_quote(const string & field) -> string
    {
        if (field.find_first_of(",\"\n") == string::npos)
            return field;
        string quoted = "\"";
        for (auto c : field)
            quoted += c == '"' ? string{"\"\""} : string{c};
        return quoted + "\"";
    }

    auto yes_no(bool b) -> const char * { return b ? "yes" : "no"; }

    auto lp_budget(const RunConfig & config) -> LpBudget
    {
        return LpBudget{config.budgets.globals, config.budgets.pivots};
    }

    struct LoadedModel
    {
        EmpiricalModel model;
        Json input;
    };

    /// Parses the model and rejects it unless no-signalling holds.
    auto load_compatible_model(const RunConfig & config) -> LoadedModel
    {
        auto source = resolve_model(config.model);
        auto model = parse_model(source.content, source.base_dir, config.mode);
        auto report = check_compatibility(model);
        if (! report.ok) {
            auto & scenario = model.scenario();
            Json violations = Json::array();
            string message = "model violates no-signalling on " + std::to_string(report.violations.size()) + " overlap(s):";
            for (auto & v : report.violations) {
                violations.push_back(Json{
                        {"contexts", Json::array({context_json(scenario, scenario.context(v.first)),
                                context_json(scenario, scenario.context(v.second))})},
                        {"overlap", context_json(scenario, v.overlap)},
                        {"discrepancy", number(v.discrepancy, model.mode())}});
                message += " " + scenario.label(scenario.context(v.first)) + "/" + scenario.label(scenario.context(v.second))
                    + " on " + scenario.label(v.overlap) + " by " + number_text(v.discrepancy, model.mode()) + ";";
            }
            message.pop_back();
            throw InputError{ErrorCode::IncompatibleModel, message,
                Json{{"input", source.input}, {"violations", violations}}};
        }
        return LoadedModel{std::move(model), std::move(source.input)};
    }

    auto is_positive(const Rational & value, NumericMode mode) -> bool
    {
        return mode == NumericMode::Exact ? value > 0 : to_double(value) > kFloatTolerance;
    }

    auto header_text(const string & command, const Json & input) -> string
    {
        string name = input["fixture"].is_null() ? input["source"].get<string>()
            : "fixture " + input["fixture"].get<string>();
        return command + ": " + name + " (sha256 " + input["sha256"].get<string>().substr(0, 16) + ")\n";
    }
}

auto sheafctx::cli::cmd_check(const RunConfig & config) -> CommandResult
{
    auto [model, input] = load_compatible_model(config);
    auto & scenario = model.scenario();
    auto mode = model.mode();

    auto verdict = sheaf_check(support_of(model), config.budgets.nodes);
    auto lp = is_noncontextual(model, lp_budget(config));
    auto fraction = contextual_fraction(model, lp_budget(config));
    bool contextual = ! lp.noncontextual || verdict.logically_contextual;

    Json result;
    result["compatible"] = true;
    result["noncontextual"] = lp.noncontextual;
    result["logically_contextual"] = verdict.logically_contextual;
    result["strongly_contextual"] = verdict.strongly_contextual;
    result["contextual_fraction"] = number(fraction.contextual_fraction, mode);
    result["unique_global_section"] = verdict.unique_global_section;
    result["global_section"] = verdict.global_section ? assignment_json(scenario, *verdict.global_section) : Json{};
    if (verdict.non_extendable)
        result["non_extendable_section"] = Json{
            {"context", context_json(scenario, verdict.non_extendable->second.context)},
            {"section", section_key(scenario, verdict.non_extendable->second)}};
    else
        result["non_extendable_section"] = nullptr;

    Json certificate;
    if (lp.noncontextual) {
        certificate["kind"] = "global_distribution";
        Json weights = Json::array();
        for (size_t col = 0; col < lp.global_distribution.size(); ++col)
            if (lp.global_distribution[col] != 0)
                weights.push_back(Json{{"assignment", assignment_json(scenario, global_at(scenario, col))},
                        {"p", number(lp.global_distribution[col], mode)}});
        certificate["weights"] = weights;
    }
    else {
        certificate["kind"] = "farkas";
        Json entries = Json::array();
        size_t row = 0;
        for (size_t c = 0; c < scenario.cover_size(); ++c)
            for (size_t s = 0; s < section_count(scenario, scenario.context(c)); ++s, ++row)
                if (row < lp.farkas.size() && lp.farkas[row] != 0)
                    entries.push_back(Json{{"context", context_json(scenario, scenario.context(c))},
                            {"section", section_key(scenario, section_at(scenario, scenario.context(c), s))},
                            {"y", number(lp.farkas[row], mode)}});
        certificate["y"] = entries;
    }
    result["certificate"] = certificate;

    string classification = verdict.strongly_contextual ? "strongly contextual"
        : verdict.logically_contextual ? "logically contextual"
        : contextual ? "probabilistically contextual" : "noncontextual";
    result["classification"] = classification;

    std::ostringstream text;
    text << header_text("check", input)
        << "compatible            yes\n"
        << "noncontextual         " << yes_no(lp.noncontextual) << "\n"
        << "logically contextual  " << yes_no(verdict.logically_contextual) << "\n"
        << "strongly contextual   " << yes_no(verdict.strongly_contextual) << "\n"
        << "contextual fraction   " << number_text(fraction.contextual_fraction, mode) << "\n"
        << "global section        " << (verdict.global_section ? assignment_text(scenario, *verdict.global_section) : "none")
        << (verdict.unique_global_section ? " (unique)" : "") << "\n";
    if (verdict.non_extendable)
        text << "non-extendable        " << scenario.label(verdict.non_extendable->second.context) << " "
            << section_text(scenario, verdict.non_extendable->second) << "\n";
    text << "verdict: " << classification << "\n";

    std::ostringstream csv;
    csv << "key,value\n"
        << "noncontextual," << (lp.noncontextual ? "true" : "false") << "\n"
        << "logically_contextual," << (verdict.logically_contextual ? "true" : "false") << "\n"
        << "strongly_contextual," << (verdict.strongly_contextual ? "true" : "false") << "\n"
        << "contextual_fraction," << number_text(fraction.contextual_fraction, mode) << "\n";

    return CommandResult{contextual ? exit_contextual : exit_noncontextual, std::move(result), {input}, text.str(),
        csv.str(), std::nullopt, string{to_string(mode)}};
}

auto sheafctx::cli::cmd_fraction(const RunConfig & config) -> CommandResult
{
    auto [model, input] = load_compatible_model(config);
    auto & scenario = model.scenario();
    auto mode = model.mode();
    auto report = contextual_fraction(model, lp_budget(config));

    Json result;
    result["noncontextual_fraction"] = number(report.noncontextual_fraction, mode);
    result["contextual_fraction"] = number(report.contextual_fraction, mode);
    Json weights = Json::array();
    for (size_t col = 0; col < report.weights.size(); ++col)
        if (report.weights[col] != 0)
            weights.push_back(Json{{"assignment", assignment_json(scenario, global_at(scenario, col))},
                    {"weight", number(report.weights[col], mode)}});
    result["weights"] = weights;

    std::ostringstream text;
    text << header_text("fraction", input)
        << "noncontextual fraction  " << number_text(report.noncontextual_fraction, mode) << "\n"
        << "contextual fraction     " << number_text(report.contextual_fraction, mode) << "\n";
    for (size_t col = 0; col < report.weights.size(); ++col)
        if (report.weights[col] != 0)
            text << "  " << number_text(report.weights[col], mode) << "  "
                << assignment_text(scenario, global_at(scenario, col)) << "\n";

    std::ostringstream csv;
    csv << "key,value\n"
        << "noncontextual_fraction," << number_text(report.noncontextual_fraction, mode) << "\n"
        << "contextual_fraction," << number_text(report.contextual_fraction, mode) << "\n";

    bool contextual = is_positive(report.contextual_fraction, mode);
    return CommandResult{contextual ? exit_contextual : exit_noncontextual, std::move(result), {input}, text.str(),
        csv.str(), std::nullopt, string{to_string(mode)}};
}

auto sheafctx::cli::cmd_cohomology(const RunConfig & config) -> CommandResult
{
    auto [model, input] = load_compatible_model(config);
    auto & scenario = model.scenario();
    auto report = obstruction_report(support_of(model), config.threads, config.budgets.matrix);

    Json sections = Json::array();
    std::ostringstream csv, text;
    csv << "context,section,vanishes\n";
    text << header_text("cohomology", input);
    for (auto & r : report.sections) {
        Json entry{{"context", context_json(scenario, r.section.context)},
            {"section", section_key(scenario, r.section)}, {"vanishes", r.vanishes}};
        if (r.witness) {
            Json family = Json::array();
            for (size_t v = 0; v < r.witness->size(); ++v) {
                Json terms = Json::array();
                for (auto & [outcomes, c] : (*r.witness)[v].coefficients())
                    terms.push_back(Json{{"section", section_key(scenario, LocalSection{scenario.context(v), outcomes})},
                            {"coefficient", c.str()}});
                family.push_back(Json{{"context", context_json(scenario, scenario.context(v))}, {"terms", terms}});
            }
            entry["witness"] = family;
        }
        sections.push_back(entry);
        csv << csv_quote(scenario.label(r.section.context)) << "," << section_key(scenario, r.section) << ","
            << (r.vanishes ? "true" : "false") << "\n";
        text << "  " << scenario.label(r.section.context) << " " << section_text(scenario, r.section) << "  "
            << (r.vanishes ? "vanishes" : "obstructed") << "\n";
    }

    Json torsion = Json::array();
    for (auto & t : report.invariants.h1_torsion)
        torsion.push_back(t.str());

    Json result;
    result["sections"] = sections;
    result["invariants"] = Json{{"h0_rank", report.invariants.h0_rank}, {"h1_rank", report.invariants.h1_rank},
        {"h1_torsion", torsion}};
    result["cohomologically_witnessed"] = report.cohomologically_witnessed;

    text << "H0 rank " << report.invariants.h0_rank << ", H1 rank " << report.invariants.h1_rank << ", H1 torsion [";
    for (size_t i = 0; i < report.invariants.h1_torsion.size(); ++i)
        text << (i ? " " : "") << report.invariants.h1_torsion[i].str();
    text << "]\n";
    if (report.cohomologically_witnessed)
        text << "every supported section is obstructed: cohomologically witnessed strong contextuality\n";

    bool any_obstructed = false;
    for (auto & r : report.sections)
        any_obstructed = any_obstructed || ! r.vanishes;
    return CommandResult{any_obstructed ? exit_contextual : exit_noncontextual, std::move(result), {input},
        text.str(), csv.str(), std::nullopt, string{to_string(model.mode())}};
}

auto sheafctx::cli::cmd_logic(const RunConfig & config) -> CommandResult
{
    auto [model, input] = load_compatible_model(config);
    auto & scenario = model.scenario();
    if (config.proposition.empty())
        throw Error{ErrorCode::ParseError, "logic needs --prop \"<expression>\""};
    auto proposition = parse_proposition(config.proposition, scenario);
    auto value = seven_value_of(support_of(model), proposition);

    Json profile = Json::array();
    std::ostringstream csv, text;
    csv << "context,value\n";
    text << header_text("logic", input) << "proposition  " << to_string(proposition, scenario) << "\n";
    for (size_t c = 0; c < value.profile.size(); ++c) {
        profile.push_back(Json{{"context", context_json(scenario, scenario.context(c))},
                {"value", to_string(value.profile[c])}});
        csv << csv_quote(scenario.label(scenario.context(c))) << "," << to_string(value.profile[c]) << "\n";
        text << "  " << scenario.label(scenario.context(c)) << "  " << to_string(value.profile[c]) << "\n";
    }

    Json attained = Json::array();
    Json witnesses = Json::object();
    for (auto v : {ThreeValue::True, ThreeValue::False, ThreeValue::Unknown}) {
        auto k = static_cast<size_t>(v);
        if (! value.value.attained[k])
            continue;
        attained.push_back(to_string(v));
        Json family = Json::array();
        for (auto c : value.value.witnesses[k])
            family.push_back(context_json(scenario, scenario.context(c)));
        witnesses[string{to_string(v)}] = family;
    }

    Json result;
    result["proposition"] = to_string(proposition, scenario);
    result["profile"] = profile;
    result["mode"] = to_string(value.value.mode);
    result["description"] = describe(value.value.mode);
    result["attained"] = attained;
    result["witnesses"] = witnesses;

    text << "mode " << to_string(value.value.mode) << " (" << describe(value.value.mode) << ")\n";
    return CommandResult{exit_noncontextual, std::move(result), {input}, text.str(), csv.str(), std::nullopt,
        string{to_string(model.mode())}};
}

namespace
{
    auto split_numbers(const string & text, const string & what) -> vector<double>
    {
        vector<double> values;
        std::stringstream in{text};
        string part;
        while (std::getline(in, part, ',')) {
            try {
                size_t used = 0;
                values.push_back(std::stod(part, &used));
                if (used != part.size())
                    throw std::invalid_argument(part);
            }
            catch (const std::exception &) {
                throw Error{ErrorCode::ParseError, "bad number '" + part + "' in " + what};
            }
        }
        return values;
    }

    auto parse_initial(const string & spec, const Grid & grid, double hbar) -> ComplexField
    {
        auto colon = spec.find(':');
        auto kind = spec.substr(0, colon);
        auto args = colon == string::npos ? vector<double>{} : split_numbers(spec.substr(colon + 1), "--initial");
        if (kind == "gaussian" && (args.size() == 2 || args.size() == 3))
            return gaussian_state(grid, args[0], args[1], args.size() == 3 ? args[2] : 0.0, hbar);
        if (kind == "two-gaussian" && (args.size() == 2 || args.size() == 3))
            return two_gaussian_state(grid, args[0], args[1], args.size() == 3 ? args[2] : 0.0);
        throw Error{ErrorCode::ParseError, "--initial must be gaussian:mu,sigma0[,p] or two-gaussian:sep,sigma0[,pedestal]"};
    }

    auto parse_potential(const string & spec, const Grid & grid, vector<Json> & inputs) -> RealField
    {
        if (spec == "free")
            return {};
        if (spec.starts_with("harmonic:")) {
            auto k = split_numbers(spec.substr(9), "--potential");
            if (k.size() != 1)
                throw Error{ErrorCode::ParseError, "--potential harmonic:k takes one stiffness"};
            return harmonic_potential(grid, k[0]);
        }
        if (spec.starts_with("file:")) {
            auto path = spec.substr(5);
            auto content = read_text_file(path);
            inputs.push_back(Json{{"role", "potential"}, {"source", path}, {"fixture", nullptr},
                    {"sha256", sha256_hex(content)}});
            for (auto & c : content)
                if (c == ',' || c == '[' || c == ']')
                    c = ' ';
            RealField v;
            std::istringstream in{content};
            double x;
            while (in >> x)
                v.push_back(x);
            if (! in.eof())
                throw Error{ErrorCode::ParseError, "potential file '" + path + "' holds a non-number"};
            if (v.size() != grid.n_points())
                throw Error{ErrorCode::InvalidArgument, "potential file has " + std::to_string(v.size())
                    + " samples, grid has " + std::to_string(grid.n_points())};
            return v;
        }
        throw Error{ErrorCode::ParseError, "--potential must be free, harmonic:k or file:path"};
    }

    auto parse_map(const string & path, vector<Json> & inputs) -> LambdaMap
    {
        auto content = read_text_file(path);
        inputs.push_back(Json{{"role", "lambda_map"}, {"source", path}, {"fixture", nullptr},
                {"sha256", sha256_hex(content)}});
        Json doc;
        try {
            doc = Json::parse(content);
        }
        catch (const Json::exception & e) {
            throw Error{ErrorCode::ParseError, "lambda map '" + path + "': " + e.what()};
        }
        if (! doc.is_array())
            throw Error{ErrorCode::ParseError, "lambda map must be a JSON array of [sigma, lambda] pairs"};
        vector<std::pair<double, double>> points;
        for (auto & p : doc) {
            if (! p.is_array() || p.size() != 2 || ! p[0].is_number() || ! p[1].is_number())
                throw Error{ErrorCode::ParseError, "lambda map entries must be [sigma, lambda] number pairs"};
            points.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        return LambdaMap::from_table(std::move(points));
    }
}

auto sheafctx::cli::cmd_evolve(const RunConfig & config) -> CommandResult
{
    auto & e = config.evolve;
    vector<Json> inputs;
    Grid grid{e.grid_n, e.length};

    PhysicalParams params;
    params.hbar = e.hbar;
    params.mass = e.mass;
    params.sigma = e.sigma;
    params.cfl = e.cfl;
    if (e.q_scheme == "fd")
        params.scheme = LaplacianScheme::FiniteDifference;
    else if (e.q_scheme != "spectral")
        throw Error{ErrorCode::ParseError, "--q-scheme must be spectral or fd"};

    LambdaMap map;
    if (e.map_path)
        map = parse_map(*e.map_path, inputs);
    if (e.lambda)
        params.lambda = *e.lambda;
    else if (e.sigma)
        params.lambda = lambda_from_sigma(*e.sigma, params, map);
    params.potential = parse_potential(e.potential, grid, inputs);
    validate(params, grid);

    auto initial = parse_initial(e.initial, grid, params.hbar);
    EvolveOptions options;
    options.t_final = e.t_final;
    options.dt = e.dt ? *e.dt : max_stable_dt(grid, params);
    options.record_every = e.record_every;
    options.window = e.window;
    options.keep_frames = e.frames_path.has_value();
    auto run = evolve(initial, grid, params, options);

    if (e.frames_path) {
        std::ofstream out{*e.frames_path, std::ios::binary};
        if (! out)
            throw Error{ErrorCode::InvalidArgument, "cannot write frame file '" + *e.frames_path + "'"};
        write_frames(out, run.frames, grid.n_points());
    }

    Json parameters{{"hbar", params.hbar}, {"mass", params.mass}, {"lambda", params.lambda},
        {"sigma", e.sigma ? Json(*e.sigma) : Json{}},
        {"hbar_sigma_mismatch", hbar_sigma_mismatch(params) ? Json(*hbar_sigma_mismatch(params)) : Json{}},
        {"lambda_map", map.is_default() ? Json("clamp(m*sigma/hbar,0,1)") : Json(map.points())},
        {"grid_n", grid.n_points()}, {"length", grid.length()}, {"dx", grid.dx()},
        {"dt", run.dt}, {"steps", run.steps}, {"t_final", options.t_final}, {"record_every", options.record_every},
        {"potential", e.potential}, {"initial", e.initial}, {"q_scheme", e.q_scheme}, {"cfl", params.cfl},
        {"window", e.window ? Json(*e.window) : Json{}}};

    Json records = Json::array();
    std::ostringstream csv;
    csv << "t,norm,mean_x,width,visibility\n";
    for (auto & r : run.records) {
        records.push_back(Json{{"t", r.time}, {"norm", r.norm}, {"mean_x", r.mean_x}, {"width", r.width},
                {"visibility", r.visibility}, {"energy", r.energy}});
        csv << real_text(r.time) << "," << real_text(r.norm) << "," << real_text(r.mean_x) << ","
            << real_text(r.width) << "," << real_text(r.visibility) << "\n";
    }

    Json result;
    result["parameters"] = parameters;
    result["records"] = records;
    if (e.frames_path)
        result["frames"] = Json{{"path", *e.frames_path}, {"count", run.frames.size()}};

    auto & last = run.records.back();
    std::ostringstream text;
    text << "evolve: lambda " << real_text(params.lambda) << ", " << run.steps << " steps of dt " << real_text(run.dt)
        << " on " << grid.n_points() << " points over length " << real_text(grid.length()) << "\n";
    if (auto mismatch = hbar_sigma_mismatch(params); mismatch && *mismatch != 0)
        text << "note: hbar - m*sigma = " << real_text(*mismatch) << "\n";
    text << "final t " << real_text(last.time) << "  norm " << real_text(last.norm) << "  mean_x "
        << real_text(last.mean_x) << "  width " << real_text(last.width) << "  visibility "
        << real_text(last.visibility) << "\n";

    return CommandResult{exit_noncontextual, std::move(result), std::move(inputs), text.str(), csv.str(), std::nullopt, {}};
}

auto sheafctx::cli::cmd_fixtures_list(const RunConfig &) -> CommandResult
{
    Json list = Json::array();
    std::ostringstream text, csv;
    csv << "name,description,sha256\n";
    for (auto & f : bundled_fixtures()) {
        auto digest = sha256_hex(f.content);
        list.push_back(Json{{"name", f.name}, {"description", f.description}, {"sha256", digest}});
        text << f.name << string(26 - std::min<size_t>(25, f.name.size()), ' ') << f.description << "\n";
        csv << f.name << "," << csv_quote(string{f.description}) << "," << digest << "\n";
    }
    return CommandResult{0, Json{{"fixtures", list}}, {}, text.str(), csv.str(), std::nullopt, {}};
}

auto sheafctx::cli::cmd_fixtures_show(const RunConfig &, const string & name) -> CommandResult
{
    auto f = find_fixture(name);
    if (! f)
        throw Error{ErrorCode::ParseError, "no bundled fixture named '" + name + "'"};
    return CommandResult{0, {}, {}, {}, {}, string{f->content}, {}};
}
