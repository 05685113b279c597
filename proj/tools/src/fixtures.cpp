#include <sheafctx_cli/cli.hpp>

#include "embedded.hpp"

#include <map>
#include <stdexcept>

using namespace sheafctx::cli;

namespace
{
    const std::map<std::string_view, std::string_view> descriptions{
        {"prbox", "Popescu-Rohrlich box on the 2x2 Bell scenario; strongly contextual"},
        {"bell_uniform", "uniformly random outcomes on the 2x2 Bell scenario; noncontextual"},
        {"triangle_anticorrelated", "perfect anticorrelation on the 3-cycle x,y,z; strongly contextual"},
        {"deterministic", "point masses a1=0 a2=1 b1=1 b2=0 on the Bell scenario; noncontextual"},
        {"signalling", "Bell scenario with {a1,b1} a point mass on 00 and the rest uniform; violates no-signalling"},
    };
}

auto sheafctx::cli::bundled_fixtures() -> const std::vector<BundledFixture> &
{
    static const std::vector<BundledFixture> fixtures = [] {
        std::vector<BundledFixture> result;
        for (std::size_t i = 0; i < detail::embedded_file_count; ++i) {
            auto & f = detail::embedded_files[i];
            auto d = descriptions.find(f.name);
            if (d == descriptions.end())
                throw std::logic_error("bundled fixture without a description");
            result.push_back(BundledFixture{f.name, d->second, std::string_view{f.content, f.size}});
        }
        return result;
    }();
    return fixtures;
}

auto sheafctx::cli::find_fixture(std::string_view name) -> const BundledFixture *
{
    if (name == "triangle")
        name = "triangle_anticorrelated";
    for (auto & f : bundled_fixtures())
        if (f.name == name)
            return &f;
    return nullptr;
}

auto sheafctx::cli::fixture_with_content(std::string_view content) -> const BundledFixture *
{
    for (auto & f : bundled_fixtures())
        if (f.content == content)
            return &f;
    return nullptr;
}
