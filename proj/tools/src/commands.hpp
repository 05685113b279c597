#pragma once

#include <sheafctx/cohomology.hpp>
#include <sheafctx/gluing.hpp>
#include <sheafctx/numeric.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sheafctx::cli
{
    using Json = nlohmann::ordered_json;

    enum class Format
    {
        Json,
        Csv,
        Text
    };

    struct Budgets
    {
        std::size_t globals = kDefaultGlobalLimit;
        std::size_t pivots = kDefaultPivotLimit;
        std::uint64_t nodes = kDefaultNodeBudget;
        std::size_t matrix = kDefaultMatrixLimit;
    };

    struct EvolveConfig
    {
        std::optional<double> lambda;
        std::optional<double> sigma;
        std::optional<std::string> map_path;
        double hbar = 1.0;
        double mass = 1.0;
        std::size_t grid_n = 512;
        double length = 20.0;
        std::optional<double> dt;
        double t_final = 1.0;
        std::string potential = "free";
        std::string initial = "gaussian:0,0.5";
        std::size_t record_every = 100;
        std::optional<double> window;
        std::optional<std::string> frames_path;
        double cfl = 0.2;
        std::string q_scheme = "spectral";
    };

    struct RunConfig
    {
        std::string command;
        std::string model;
        std::optional<NumericMode> mode;
        std::optional<std::string> output;
        std::optional<Format> format;
        std::size_t threads = 0;
        Budgets budgets;
        bool timings = true;
        std::uint64_t seed = 0;
        std::string proposition;
        EvolveConfig evolve;
    };

    /// A command's report in every output format.
    struct CommandResult
    {
        int exit_code = 0;
        Json result;
        std::vector<Json> inputs;
        std::string text;
        std::string csv;
        /// Raw bytes that replace the report entirely (fixtures show).
        std::optional<std::string> raw;
        /// Numeric mode the model was read in, empty for model-free commands.
        std::string mode;
    };

    /// An input problem carrying structured detail for the report.
    class InputError : public Error
    {
        public:
            InputError(ErrorCode code, const std::string & message, Json detail) :
                Error(code, message),
                _detail(std::move(detail))
            {
            }

            auto detail() const -> const Json & { return _detail; }

        private:
            Json _detail;
    };

    auto cmd_check(const RunConfig & config) -> CommandResult;
    auto cmd_fraction(const RunConfig & config) -> CommandResult;
    auto cmd_cohomology(const RunConfig & config) -> CommandResult;
    auto cmd_logic(const RunConfig & config) -> CommandResult;
    auto cmd_evolve(const RunConfig & config) -> CommandResult;
    auto cmd_fixtures_list(const RunConfig & config) -> CommandResult;
    auto cmd_fixtures_show(const RunConfig & config, const std::string & name) -> CommandResult;
}
