#include <doctest.h>
#include <oracles.hpp>

#include <sheafctx/presheaf.hpp>

#include <random>

using namespace sheafctx;
using oracle::error_code;

TEST_CASE("section indices enumerate E(C) bijectively")
{
    auto s = build_scenario({{"a", 2}, {"b", 3}, {"c", 4}}, {{"a", "b", "c"}});
    auto c = s.context(0);
    CHECK(section_count(s, c) == 24);
    auto all = enumerate_sections(c, s);
    REQUIRE(all.size() == 24);
    for (std::size_t i = 0; i < all.size(); ++i) {
        CHECK(section_index(s, all[i]) == i);
        CHECK(section_at(s, c, i) == all[i]);
    }
    CHECK(std::is_sorted(all.begin(), all.end(), [](auto & x, auto & y) { return x.outcomes < y.outcomes; }));
    CHECK(error_code([&] { validate_section(s, LocalSection{c, {0, 3, 0}}); }) == ErrorCode::OutcomeOutOfRange);
    CHECK(error_code([&] { validate_section(s, LocalSection{c, {0, 0}}); }) == ErrorCode::InvalidContext);
}

TEST_CASE("restriction is functorial")
{
    auto s = build_scenario({{"a", 2}, {"b", 3}, {"c", 2}}, {{"a", "b", "c"}});
    auto abc = s.context(0);
    auto ac = s.make_context({"a", "c"});
    auto a = s.make_context({"a"});
    for (auto & sec : enumerate_sections(abc, s)) {
        CHECK(restrict(restrict(sec, ac), a) == restrict(sec, a));
        CHECK(restrict(sec, abc) == sec);
        CHECK(restrict(sec, ac).outcomes == std::vector<Outcome>{sec.outcomes[0], sec.outcomes[2]});
    }
    auto idx = restriction_indices(s, abc, ac);
    for (std::size_t i = 0; i < idx.size(); ++i)
        CHECK(section_at(s, ac, idx[i]) == restrict(section_at(s, abc, i), ac));
    CHECK(error_code([&] { restrict(section_at(s, ac, 0), abc); }) == ErrorCode::NotASubcontext);
}

TEST_CASE("empirical model validation")
{
    auto s = oracle::bell_scenario();
    std::vector<Distribution> good(4, Distribution(4, Rational(1, 4)));
    CHECK_NOTHROW(EmpiricalModel(s, good, NumericMode::Exact));
    auto short_table = good;
    short_table[1].pop_back();
    CHECK(error_code([&] { EmpiricalModel(s, short_table, NumericMode::Exact); }) == ErrorCode::InvalidModel);
    auto negative = good;
    negative[0] = {Rational(1, 2), Rational(1, 2), Rational(1, 4), Rational(-1, 4)};
    CHECK(error_code([&] { EmpiricalModel(s, negative, NumericMode::Exact); }) == ErrorCode::InvalidModel);
    auto off = good;
    off[2][0] = Rational(1, 3);
    CHECK(error_code([&] { EmpiricalModel(s, off, NumericMode::Exact); }) == ErrorCode::InvalidModel);
    // A float sum within tolerance is accepted.
    auto nearly = good;
    nearly[2][0] += exact_rational(1e-12);
    CHECK_NOTHROW(EmpiricalModel(s, nearly, NumericMode::Float));
}

TEST_CASE("marginals and no-signalling")
{
    auto pr = oracle::pr_box();
    CHECK(check_compatibility(pr).ok);
    auto & s = pr.scenario();
    auto a1 = s.make_context({"a1"});
    CHECK(marginalize(s, s.context(0), pr.table(0), a1) == Distribution{Rational(1, 2), Rational(1, 2)});

    auto tables = pr.tables();
    tables[0] = oracle::table(s, s.context(0), {{{0, 0}, 1}});
    auto report = check_compatibility(EmpiricalModel{s, tables, NumericMode::Exact});
    CHECK_FALSE(report.ok);
    CHECK(report.violations.size() == 2);
    for (auto & v : report.violations) {
        CHECK(v.first == 0);
        CHECK(v.discrepancy == Rational(1, 2));
    }
}

TEST_CASE("supports follow the threshold")
{
    auto pr = oracle::pr_box();
    auto support = support_of(pr);
    for (std::size_t c = 0; c < 4; ++c)
        CHECK(support.support(c).size() == 2);
    CHECK(supports_compatible(support));
    CHECK(error_code([&] { support_of(pr, Rational(1, 2)); }) == ErrorCode::EmptySupport);
    CHECK(support_of(oracle::pr_box(Rational(1, 2)), Rational(1, 8)).support(3).size() == 2);
    CHECK(support_of(oracle::pr_box(Rational(1, 2))).support(3).size() == 4);
    CHECK(support.restricted_support(pr.scenario().make_context({"a1"})) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("random projected distributions are no-signalling")
{
    std::mt19937_64 rng{5};
    for (int i = 0; i < 50; ++i) {
        auto s = oracle::random_scenario(rng);
        auto model = oracle::random_noncontextual_model(rng, s, 3);
        CHECK(check_compatibility(model).ok);
        CHECK(supports_compatible(support_of(model)));
    }
}
