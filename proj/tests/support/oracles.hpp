#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's solvers; only its data types are shared.

#include <sheafctx/error.hpp>
#include <sheafctx/presheaf.hpp>
#include <sheafctx/scenario.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle
{
    using namespace sheafctx;

    /// The ErrorCode thrown by f, or nothing if it returns normally.
    inline auto error_code(const std::function<void ()> & f) -> std::optional<ErrorCode>
    {
        try {
            f();
        }
        catch (const Error & e) {
            return e.code();
        }
        return std::nullopt;
    }

    inline auto bell_scenario() -> MeasurementScenario
    {
        return build_scenario({{"a1", 2}, {"a2", 2}, {"b1", 2}, {"b2", 2}},
                {{"a1", "b1"}, {"a1", "b2"}, {"a2", "b1"}, {"a2", "b2"}});
    }

    inline auto cycle_scenario(std::size_t n) -> MeasurementScenario
    {
        std::vector<Observable> obs;
        std::vector<std::vector<std::string>> cover;
        for (std::size_t i = 0; i < n; ++i)
            obs.push_back({"o" + std::to_string(i), 2});
        for (std::size_t i = 0; i < n; ++i)
            cover.push_back({obs[i].id, obs[(i + 1) % n].id});
        return build_scenario(obs, cover);
    }

    /// Builds a dense table from (outcomes in member order) -> p.
    inline auto table(const MeasurementScenario & s, const Context & c,
            const std::map<std::vector<Outcome>, Rational> & entries) -> Distribution
    {
        Distribution t(section_count(s, c), Rational{0});
        for (auto & [outcomes, p] : entries)
            t[section_index(s, LocalSection{c, outcomes})] = p;
        return t;
    }

    inline auto pr_box(Rational v = 1) -> EmpiricalModel
    {
        auto s = bell_scenario();
        std::vector<Distribution> tables;
        Rational half{1, 2}, quarter{1, 4};
        for (std::size_t c = 0; c < s.cover_size(); ++c) {
            bool anti = c == 3;
            std::map<std::vector<Outcome>, Rational> e;
            for (Outcome a = 0; a < 2; ++a)
                for (Outcome b = 0; b < 2; ++b) {
                    bool hit = anti ? a != b : a == b;
                    e[{a, b}] = v * (hit ? half : Rational{0}) + (1 - v) * quarter;
                }
            tables.push_back(table(s, s.context(c), e));
        }
        return EmpiricalModel{s, tables, NumericMode::Exact};
    }

    /// All outcome vectors over the scenario, first observable most significant.
    inline auto all_globals(const MeasurementScenario & s) -> std::vector<std::vector<Outcome>>
    {
        std::vector<std::vector<Outcome>> out{{}};
        for (std::size_t o = 0; o < s.observable_count(); ++o) {
            std::vector<std::vector<Outcome>> next;
            for (auto & g : out)
                for (Outcome v = 0; v < s.arity(o); ++v) {
                    auto h = g;
                    h.push_back(v);
                    next.push_back(h);
                }
            out = std::move(next);
        }
        return out;
    }

    inline auto restrict_global(const std::vector<Outcome> & g, const Context & c) -> LocalSection
    {
        LocalSection s{c, {}};
        for (auto m : c.members())
            s.outcomes.push_back(g[m]);
        return s;
    }

    /// Global assignments all of whose restrictions are supported.
    inline auto brute_global_sections(const SupportModel & support) -> std::vector<std::vector<Outcome>>
    {
        auto & s = support.scenario();
        std::vector<std::vector<Outcome>> glued;
        for (auto & g : all_globals(s)) {
            bool ok = true;
            for (std::size_t c = 0; ok && c < s.cover_size(); ++c)
                ok = support.contains(c, section_index(s, restrict_global(g, s.context(c))));
            if (ok)
                glued.push_back(g);
        }
        return glued;
    }

    struct BruteVerdict
    {
        bool strongly = false;
        bool logically = false;
        std::size_t global_sections = 0;
        /// (cover index, section index) pairs lying in some global section.
        std::set<std::pair<std::size_t, std::size_t>> extendable;
    };

    inline auto brute_verdict(const SupportModel & support) -> BruteVerdict
    {
        auto & s = support.scenario();
        BruteVerdict v;
        auto glued = brute_global_sections(support);
        v.global_sections = glued.size();
        v.strongly = glued.empty();
        for (auto & g : glued)
            for (std::size_t c = 0; c < s.cover_size(); ++c)
                v.extendable.insert({c, section_index(s, restrict_global(g, s.context(c)))});
        for (std::size_t c = 0; c < s.cover_size(); ++c)
            for (auto idx : support.support(c))
                v.logically = v.logically || ! v.extendable.contains({c, idx});
        return v;
    }

    /// A random cover of up to max_obs binary observables: random contexts
    /// of size 1..3, dominated ones dropped, every observable covered.
    inline auto random_scenario(std::mt19937_64 & rng, std::size_t max_obs = 4) -> MeasurementScenario
    {
        std::uniform_int_distribution<std::size_t> n_dist(2, max_obs);
        auto n = n_dist(rng);
        std::vector<Observable> obs;
        for (std::size_t i = 0; i < n; ++i)
            obs.push_back({"v" + std::to_string(i), 2});
        std::vector<std::set<std::size_t>> contexts;
        std::uniform_int_distribution<std::size_t> k_dist(1, std::min<std::size_t>(3, n));
        std::uniform_int_distribution<std::size_t> count_dist(2, 5);
        auto count = count_dist(rng);
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<std::size_t> idx(n);
            for (std::size_t j = 0; j < n; ++j)
                idx[j] = j;
            std::shuffle(idx.begin(), idx.end(), rng);
            contexts.emplace_back(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k_dist(rng)));
        }
        for (std::size_t j = 0; j < n; ++j) {
            bool covered = std::any_of(contexts.begin(), contexts.end(), [&](auto & c) { return c.contains(j); });
            if (! covered)
                contexts.push_back({j, (j + 1) % n});
        }
        std::vector<std::set<std::size_t>> kept;
        for (std::size_t i = 0; i < contexts.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < contexts.size() && ! dominated; ++j) {
                if (i == j)
                    continue;
                bool subset = std::includes(contexts[j].begin(), contexts[j].end(), contexts[i].begin(), contexts[i].end());
                dominated = subset && (contexts[i] != contexts[j] || j < i);
            }
            if (! dominated)
                kept.push_back(contexts[i]);
        }
        std::vector<std::vector<std::string>> cover;
        for (auto & c : kept) {
            std::vector<std::string> ids;
            for (auto j : c)
                ids.push_back(obs[j].id);
            cover.push_back(ids);
        }
        return build_scenario(obs, cover);
    }

    /// Random support subsets pruned to pairwise consistency. Nothing when
    /// pruning empties some context.
    inline auto random_compatible_support(std::mt19937_64 & rng, const MeasurementScenario & s, double density)
        -> std::optional<SupportModel>
    {
        std::bernoulli_distribution keep(density);
        std::vector<std::set<std::size_t>> sup(s.cover_size());
        for (std::size_t c = 0; c < s.cover_size(); ++c)
            for (std::size_t i = 0; i < section_count(s, s.context(c)); ++i)
                if (keep(rng))
                    sup[c].insert(i);
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t c = 0; c < s.cover_size(); ++c)
                for (std::size_t d = 0; d < s.cover_size(); ++d) {
                    auto overlap = s.context(c).intersect(s.context(d));
                    if (c == d || overlap.empty())
                        continue;
                    std::set<std::vector<Outcome>> seen;
                    for (auto i : sup[d])
                        seen.insert(restrict(section_at(s, s.context(d), i), overlap).outcomes);
                    for (auto it = sup[c].begin(); it != sup[c].end();) {
                        if (! seen.contains(restrict(section_at(s, s.context(c), *it), overlap).outcomes)) {
                            it = sup[c].erase(it);
                            changed = true;
                        }
                        else
                            ++it;
                    }
                }
        }
        std::vector<std::vector<std::size_t>> supports;
        for (auto & c : sup) {
            if (c.empty())
                return std::nullopt;
            supports.emplace_back(c.begin(), c.end());
        }
        return SupportModel{s, supports};
    }

    /// Projects a random rational distribution over global assignments.
    inline auto random_noncontextual_model(std::mt19937_64 & rng, const MeasurementScenario & s, std::size_t atoms)
        -> EmpiricalModel
    {
        auto globals = all_globals(s);
        std::uniform_int_distribution<std::size_t> pick(0, globals.size() - 1);
        std::uniform_int_distribution<int> weight(1, 9);
        std::vector<std::pair<std::size_t, int>> mass;
        int total = 0;
        for (std::size_t i = 0; i < atoms; ++i) {
            mass.emplace_back(pick(rng), weight(rng));
            total += mass.back().second;
        }
        std::vector<Distribution> tables;
        for (std::size_t c = 0; c < s.cover_size(); ++c) {
            Distribution t(section_count(s, s.context(c)), Rational{0});
            for (auto & [g, w] : mass)
                t[section_index(s, restrict_global(globals[g], s.context(c)))] += Rational(w, total);
            tables.push_back(t);
        }
        return EmpiricalModel{s, tables, NumericMode::Exact};
    }

    /// Point masses from one global assignment.
    inline auto deterministic_model(const MeasurementScenario & s, const std::vector<Outcome> & g) -> EmpiricalModel
    {
        std::vector<Distribution> tables;
        for (std::size_t c = 0; c < s.cover_size(); ++c) {
            Distribution t(section_count(s, s.context(c)), Rational{0});
            t[section_index(s, restrict_global(g, s.context(c)))] = 1;
            tables.push_back(t);
        }
        return EmpiricalModel{s, tables, NumericMode::Exact};
    }

    /// O(n²) DFT, sign -1 forward, unnormalised.
    inline auto dft(const std::vector<std::complex<double>> & in, int sign) -> std::vector<std::complex<double>>
    {
        auto n = in.size();
        std::vector<std::complex<double>> out(n);
        for (std::size_t k = 0; k < n; ++k) {
            std::complex<double> acc{};
            for (std::size_t j = 0; j < n; ++j)
                acc += in[j] * std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(j * k % n)
                        / static_cast<double>(n));
            out[k] = acc;
        }
        return out;
    }

    /// Linear Schrodinger split-step with V = 0 (exact in time for the kinetic term).
    inline auto free_split_step(std::vector<std::complex<double>> psi, double length, double t, double hbar, double mass)
        -> std::vector<std::complex<double>>
    {
        auto n = psi.size();
        auto hat = dft(psi, -1);
        for (std::size_t k = 0; k < n; ++k) {
            double m = k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
            double kk = 2 * std::numbers::pi / length * m;
            hat[k] *= std::polar(1.0, -hbar * kk * kk / (2 * mass) * t);
        }
        auto out = dft(hat, +1);
        for (auto & z : out)
            z /= static_cast<double>(n);
        return out;
    }

    /// Width of a free Gaussian: sigma0 * sqrt(1 + (hbar t / (2 m sigma0^2))^2).
    inline auto free_gaussian_width(double sigma0, double t, double hbar = 1.0, double mass = 1.0) -> double
    {
        double r = hbar * t / (2 * mass * sigma0 * sigma0);
        return sigma0 * std::sqrt(1 + r * r);
    }
}
