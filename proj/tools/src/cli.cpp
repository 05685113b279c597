#include <sheafctx_cli/cli.hpp>

#include "commands.hpp"

#include <sheafctx/dynamics.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

using namespace sheafctx;
using namespace sheafctx::cli;

using std::string;

namespace
{
    constexpr auto kTool = "sheafctx";

    auto is_failure(ErrorCode code) -> bool
    {
        switch (code) {
            case ErrorCode::SizeLimitExceeded:
            case ErrorCode::SolverBudgetExceeded:
            case ErrorCode::StabilityViolation:
            case ErrorCode::DensityCollapse:
                return true;
            default:
                return false;
        }
    }

    auto default_format(const string & command) -> Format
    {
        if (command == "evolve")
            return Format::Csv;
        if (command == "fixtures")
            return Format::Text;
        return Format::Json;
    }

    auto report(const RunConfig & config, const string & mode) -> Json
    {
        return Json{{"tool", kTool}, {"version", SHEAFCTX_VERSION}, {"command", config.command},
            {"mode", mode.empty() ? Json{} : Json(mode)}, {"seed", config.seed}};
    }

    /// Writes to --output when given, otherwise to out.
    auto emit(const RunConfig & config, std::ostream & out, const string & bytes) -> void
    {
        if (! config.output) {
            out << bytes;
            return;
        }
        std::ofstream file{*config.output, std::ios::binary};
        if (! file)
            throw Error{ErrorCode::InvalidArgument, "cannot write output file '" + *config.output + "'"};
        file << bytes;
    }
}

auto sheafctx::cli::run(const std::vector<string> & args, std::ostream & out, std::ostream & err) -> int
{
    RunConfig config;
    string mode_text, format_text, fixture_name;

    CLI::App app{"Sheaf-theoretic contextuality checks and lambda-deformed quantum dynamics.", kTool};
    app.set_version_flag("--version", SHEAFCTX_VERSION);
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.add_option("--mode", mode_text, "Override the model's numeric mode")->check(CLI::IsMember({"rational", "float"}));
    app.add_option("--output,-o", config.output, "Write the report to this file instead of stdout");
    app.add_option("--format", format_text, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--threads", config.threads, "Worker threads (0 = hardware concurrency)");
    app.add_option("--budget-globals", config.budgets.globals, "Largest global assignment space for LPs");
    app.add_option("--budget-pivots", config.budgets.pivots, "Simplex pivot budget");
    app.add_option("--budget-nodes", config.budgets.nodes, "Gluing search node budget");
    app.add_option("--budget-matrix", config.budgets.matrix, "Largest coboundary matrix dimension");
    app.add_flag("--no-timings", [&](std::int64_t) { config.timings = false; }, "Omit wall-clock timings");
    app.add_option("--seed", config.seed, "Seed recorded in the report");

    auto model_command = [&](const string & name, const string & about) {
        auto * sub = app.add_subcommand(name, about);
        sub->add_option("model", config.model, "Model file, bundled fixture name, or fixture:NAME")->required();
        return sub;
    };
    model_command("check", "Decide the contextuality hierarchy with certificates");
    model_command("fraction", "Noncontextual and contextual fractions");
    model_command("cohomology", "Cohomological obstructions and Cech invariants");
    auto * logic = model_command("logic", "Seven-valued truth of a proposition");
    logic->add_option("--prop", config.proposition, "Proposition such as \"a1=0 & !b1=1\"")->required();

    auto & e = config.evolve;
    auto * evolve = app.add_subcommand("evolve", "Integrate the lambda-deformed Schrodinger equation");
    evolve->add_option("--lambda", e.lambda, "Deformation parameter in [0,1]");
    evolve->add_option("--sigma", e.sigma, "Action scale; lambda comes from the map when --lambda is absent");
    evolve->add_option("--map", e.map_path, "JSON array of [sigma, lambda] pairs");
    evolve->add_option("--hbar", e.hbar)->capture_default_str();
    evolve->add_option("--mass", e.mass)->capture_default_str();
    evolve->add_option("--grid-n", e.grid_n, "Grid points (power of two, at least 64)")->capture_default_str();
    evolve->add_option("--length", e.length, "Periodic box length")->capture_default_str();
    evolve->add_option("--dt", e.dt, "Largest time step (default: the stability bound)");
    evolve->add_option("--t-final", e.t_final)->capture_default_str();
    evolve->add_option("--potential", e.potential, "free | harmonic:k | file:PATH")->capture_default_str();
    evolve->add_option("--initial", e.initial, "gaussian:mu,sigma0[,p] | two-gaussian:sep,sigma0[,pedestal]")
        ->capture_default_str();
    evolve->add_option("--record-every", e.record_every)->capture_default_str()->check(CLI::PositiveNumber);
    evolve->add_option("--window", e.window, "Visibility window half-width around x = 0");
    evolve->add_option("--frames", e.frames_path, "Binary frame dump path");
    evolve->add_option("--cfl", e.cfl)->capture_default_str();
    evolve->add_option("--q-scheme", e.q_scheme, "spectral | fd")->capture_default_str();

    auto * fixtures = app.add_subcommand("fixtures", "Bundled example models");
    fixtures->require_subcommand(1, 1);
    fixtures->add_subcommand("list", "List bundled fixtures");
    auto * show = fixtures->add_subcommand("show", "Print a bundled fixture");
    show->add_option("name", fixture_name)->required();

    try {
        std::vector<string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : exit_invalid_input;
    }

    config.command = app.get_subcommands().front()->get_name();
    if (! mode_text.empty())
        config.mode = parse_numeric_mode(mode_text);
    auto format = format_text.empty() ? default_format(config.command)
        : format_text == "csv" ? Format::Csv : format_text == "text" ? Format::Text : Format::Json;

    auto started = std::chrono::steady_clock::now();
    try {
        CommandResult result;
        if (config.command == "check")
            result = cmd_check(config);
        else if (config.command == "fraction")
            result = cmd_fraction(config);
        else if (config.command == "cohomology")
            result = cmd_cohomology(config);
        else if (config.command == "logic")
            result = cmd_logic(config);
        else if (config.command == "evolve")
            result = cmd_evolve(config);
        else if (fixtures->got_subcommand("show"))
            result = cmd_fixtures_show(config, fixture_name);
        else
            result = cmd_fixtures_list(config);

        if (result.raw) {
            emit(config, out, *result.raw);
            return result.exit_code;
        }
        if (config.command == "evolve" && result.result["parameters"]["hbar_sigma_mismatch"].is_number()
            && result.result["parameters"]["hbar_sigma_mismatch"].get<double>() != 0.0)
            err << "note: hbar - m*sigma = " << result.result["parameters"]["hbar_sigma_mismatch"].dump()
                << " (not enforced)\n";

        switch (format) {
            case Format::Json: {
                auto doc = report(config, result.mode);
                doc["inputs"] = result.inputs;
                doc["result"] = std::move(result.result);
                doc["exit_code"] = result.exit_code;
                if (config.timings)
                    doc["timings"] = Json{{"total_seconds",
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()}};
                emit(config, out, doc.dump(2) + "\n");
                break;
            }
            case Format::Csv:
                emit(config, out, result.csv);
                break;
            case Format::Text:
                emit(config, out, result.text);
                break;
        }
        return result.exit_code;
    }
    catch (const Error & error) {
        int code = is_failure(error.code()) ? exit_failure : exit_invalid_input;
        err << kTool << ": " << error.what() << "\n";
        if (format == Format::Json) {
            auto doc = report(config, config.mode ? string{to_string(*config.mode)} : string{});
            doc["error"] = Json{{"code", to_string(error.code())}, {"message", error.what()}};
            if (auto * input = dynamic_cast<const InputError *>(&error))
                doc["error"]["detail"] = input->detail();
            doc["exit_code"] = code;
            try {
                emit(config, out, doc.dump(2) + "\n");
            }
            catch (const Error &) {
                out << doc.dump(2) << "\n";
            }
        }
        return code;
    }
    catch (const std::exception & error) {
        err << kTool << ": internal error: " << error.what() << "\n";
        return exit_failure;
    }
}
