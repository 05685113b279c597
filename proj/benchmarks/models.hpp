#pragma once

#include <sheafctx/model_io.hpp>
#include <sheafctx/presheaf.hpp>
#include <sheafctx/scenario.hpp>

#include <string>

namespace bench
{
    inline auto fixture(const std::string & name) -> sheafctx::EmpiricalModel
    {
        return sheafctx::load_model(std::string{SHEAFCTX_FIXTURE_DIR} + "/" + name + ".json");
    }

    /// n binary observables in a ring, correlated on every edge but the last,
    /// which is anticorrelated. Strongly contextual for every n >= 3.
    inline auto odd_ring(std::size_t n) -> sheafctx::EmpiricalModel
    {
        using namespace sheafctx;
        std::vector<Observable> obs;
        std::vector<std::vector<std::string>> cover;
        for (std::size_t i = 0; i < n; ++i)
            obs.push_back({"o" + std::to_string(i), 2});
        for (std::size_t i = 0; i < n; ++i)
            cover.push_back({obs[i].id, obs[(i + 1) % n].id});
        auto s = build_scenario(obs, cover);
        std::vector<Distribution> tables;
        for (std::size_t c = 0; c < n; ++c) {
            Distribution t(section_count(s, s.context(c)), Rational{0});
            bool anti = c + 1 == n;
            for (Outcome a = 0; a < 2; ++a) {
                // Context members are canonical, so the pair may come back swapped;
                // either order gives the same relation.
                Outcome b = anti ? 1 - a : a;
                t[section_index(s, LocalSection{s.context(c), {a, b}})] = Rational{1, 2};
            }
            tables.push_back(t);
        }
        return EmpiricalModel{s, tables, NumericMode::Exact};
    }
}
