#include <doctest.h>
#include <oracles.hpp>

#include <sheafctx/model_io.hpp>

#include <filesystem>
#include <fstream>

using namespace sheafctx;
using oracle::error_code;

namespace
{
    const std::string kScenario = R"({"observables": [{"id": "a", "arity": 2}, {"id": "b", "arity": 2}], "cover": [["a", "b"]]})";

    auto model_text(const std::string & tables, const std::string & extra = "") -> std::string
    {
        return R"({"scenario": )" + kScenario + extra + R"(, "tables": )" + tables + "}";
    }

    auto parse_code(const std::string & text) -> std::optional<ErrorCode>
    {
        return error_code([&] { parse_model(text); });
    }
}

TEST_CASE("bundled fixtures load")
{
    for (auto name : {"prbox", "bell_uniform", "triangle_anticorrelated", "deterministic", "signalling"}) {
        auto model = load_model(std::filesystem::path{SHEAFCTX_FIXTURE_DIR} / (std::string{name} + ".json"));
        CHECK(model.mode() == NumericMode::Exact);
    }
    auto pr = load_model(std::filesystem::path{SHEAFCTX_FIXTURE_DIR} / "prbox.json");
    auto expected = oracle::pr_box();
    CHECK(pr.tables() == expected.tables());
}

TEST_CASE("tables may list context members in any order")
{
    auto m = parse_model(model_text(R"([{"context": ["b", "a"], "probs": {"01": "1/4", "10": "3/4"}}])"));
    auto & s = m.scenario();
    CHECK(m.probability(0, LocalSection{s.context(0), {1, 0}}) == Rational(1, 4));
    CHECK(m.probability(0, LocalSection{s.context(0), {0, 1}}) == Rational(3, 4));
}

TEST_CASE("unknown keys are rejected at every level")
{
    CHECK(parse_code(model_text(R"([{"context": ["a", "b"], "probs": {"00": "1"}}])", R"(, "comment": 1)"))
            == ErrorCode::ParseError);
    CHECK(parse_code(model_text(R"([{"context": ["a", "b"], "probs": {"00": "1"}, "weight": 2}])"))
            == ErrorCode::ParseError);
    CHECK(error_code([] { parse_scenario(R"({"observables": [], "cover": [], "name": "x"})"); }) == ErrorCode::ParseError);
    CHECK(error_code([] { parse_scenario(R"({"observables": [{"id": "a", "arity": 2, "label": "A"}], "cover": [["a"]]})"); })
            == ErrorCode::ParseError);
}

TEST_CASE("model validation")
{
    CHECK(parse_code("{") == ErrorCode::ParseError);
    CHECK(parse_code(model_text(R"([])")) == ErrorCode::InvalidModel);
    CHECK(parse_code(model_text(R"([{"context": ["a", "b"], "probs": {"00": "1/2"}}])")) == ErrorCode::InvalidModel);
    CHECK(parse_code(model_text(R"([{"context": ["a"], "probs": {"0": "1"}}])")) == ErrorCode::InvalidModel);
    CHECK(parse_code(model_text(R"([{"context": ["a", "b"], "probs": {"00": "1"}}, {"context": ["b", "a"], "probs": {"00": "1"}}])"))
            == ErrorCode::InvalidModel);
    CHECK(parse_code(model_text(R"([{"context": ["a", "c"], "probs": {"00": "1"}}])")) == ErrorCode::UnknownObservable);
    CHECK(parse_code(model_text(R"([{"context": ["a", "b"], "probs": {"02": "1"}}])")) == ErrorCode::OutcomeOutOfRange);
    CHECK(parse_code(model_text(R"([{"context": ["a", "b"], "probs": {"0": "1"}}])")) == ErrorCode::ParseError);
    CHECK(parse_code(model_text(R"([{"context": ["a", "b"], "probs": {"00": "x"}}])")) == ErrorCode::ParseError);
}

TEST_CASE("numeric modes")
{
    // JSON numbers are not exact, so rational mode refuses them.
    auto with_float = model_text(R"([{"context": ["a", "b"], "probs": {"00": 0.5, "11": 0.5}}])");
    CHECK(parse_code(with_float) == ErrorCode::ParseError);
    auto m = parse_model(with_float, {}, NumericMode::Float);
    CHECK(m.mode() == NumericMode::Float);
    auto declared = model_text(R"([{"context": ["a", "b"], "probs": {"00": 0.5, "11": 0.5}}])", R"(, "mode": "float")");
    CHECK(parse_model(declared).mode() == NumericMode::Float);
    CHECK(error_code([&] { parse_model(declared, {}, NumericMode::Exact); }) == ErrorCode::ParseError);
    auto decimal = model_text(R"([{"context": ["a", "b"], "probs": {"00": "0.25", "11": "0.75"}}])");
    CHECK(parse_model(decimal).table(0)[0] == Rational(1, 4));
}

TEST_CASE("wide arities use comma-separated keys")
{
    auto text = R"({"scenario": {"observables": [{"id": "a", "arity": 12}, {"id": "b", "arity": 2}], "cover": [["a", "b"]]},
        "tables": [{"context": ["a", "b"], "probs": {"11,1": "1"}}]})";
    auto m = parse_model(text);
    CHECK(m.probability(0, LocalSection{m.scenario().context(0), {11, 1}}) == 1);
    auto round = parse_model(model_to_json(m));
    CHECK(round.tables() == m.tables());
}

TEST_CASE("scenario by relative path")
{
    auto dir = std::filesystem::temp_directory_path() / "sheafctx_model_io_test";
    std::filesystem::create_directories(dir);
    std::ofstream{dir / "scenario.json"} << kScenario;
    std::ofstream{dir / "model.json"} << R"({"scenario": "scenario.json", "tables": [{"context": ["a", "b"], "probs": {"00": "1"}}]})";
    auto m = load_model(dir / "model.json");
    CHECK(m.scenario().observable_count() == 2);
    CHECK(error_code([&] { load_model(dir / "missing.json"); }) == ErrorCode::ParseError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("models round trip through JSON")
{
    for (auto & m : {oracle::pr_box(), oracle::pr_box(Rational(3, 7))}) {
        auto text = model_to_json(m);
        auto back = parse_model(text);
        CHECK(back.tables() == m.tables());
        CHECK(back.scenario().cover() == m.scenario().cover());
        CHECK(model_to_json(back) == text);
    }
    auto s = parse_scenario(scenario_to_json(oracle::bell_scenario()));
    CHECK(s.cover() == oracle::bell_scenario().cover());
}
