#pragma once

#include <sheafctx/numeric.hpp>
#include <sheafctx/presheaf.hpp>
#include <sheafctx/scenario.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace sheafctx
{
    /// {"observables":[{"id":"a1","arity":2},...],"cover":[["a1","b1"],...]}
    /// Unknown keys and malformed JSON raise ParseError; validation errors
    /// come from build_scenario.
    auto parse_scenario(std::string_view json_text) -> MeasurementScenario;
    auto load_scenario(const std::filesystem::path & path) -> MeasurementScenario;
    auto scenario_to_json(const MeasurementScenario & scenario) -> std::string;

    /// {"scenario": <object or path>, "mode": "rational"|"float",
    ///  "tables": [{"context": ["a1","b1"], "probs": {"00": "1/2", ...}}]}
    /// Section keys list outcomes in the order of the table's "context"
    /// array, one digit each, or comma separated ("10,3") when an arity
    /// exceeds ten. Missing sections have probability 0. A scenario given as
    /// a path is resolved against base_dir. mode_override, when set, wins
    /// over the file's "mode".
    auto parse_model(std::string_view json_text, const std::filesystem::path & base_dir = {},
            std::optional<NumericMode> mode_override = std::nullopt) -> EmpiricalModel;
    auto load_model(const std::filesystem::path & path, std::optional<NumericMode> mode_override = std::nullopt)
        -> EmpiricalModel;

    /// Canonical form: inline scenario, cover-ordered contexts, non-zero
    /// entries only, rationals as "p/q" (float mode prints shortest doubles).
    auto model_to_json(const EmpiricalModel & model) -> std::string;

    auto read_text_file(const std::filesystem::path & path) -> std::string;
}
