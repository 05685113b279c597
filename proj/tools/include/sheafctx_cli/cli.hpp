#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sheafctx::cli
{
    inline constexpr int exit_noncontextual = 0;
    inline constexpr int exit_contextual = 10;
    inline constexpr int exit_invalid_input = 2;
    /// Budgets exhausted or numerical preconditions violated.
    inline constexpr int exit_failure = 3;

    struct BundledFixture
    {
        std::string_view name;
        std::string_view description;
        std::string_view content;
    };

    auto bundled_fixtures() -> const std::vector<BundledFixture> &;

    /// By name, or by the alias "triangle" for triangle_anticorrelated.
    auto find_fixture(std::string_view name) -> const BundledFixture *;

    /// The bundled fixture with exactly these bytes, if any.
    auto fixture_with_content(std::string_view content) -> const BundledFixture *;

    auto sha256_hex(std::string_view bytes) -> std::string;

    /// Runs the command line (without the program name) and returns the exit code.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
