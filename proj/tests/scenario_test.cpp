#include <doctest.h>
#include <oracles.hpp>

#include <sheafctx/scenario.hpp>

using namespace sheafctx;
using oracle::error_code;

TEST_CASE("contexts are canonical sets")
{
    auto s = oracle::bell_scenario();
    CHECK(s.make_context({"b1", "a1"}) == s.make_context({"a1", "b1"}));
    CHECK(s.cover_index_of(s.make_context({"b2", "a2"})) == 3);
    CHECK_FALSE(s.cover_index_of(s.make_context({"a1", "a2"})));
    CHECK(s.label(s.context(0)) == "{a1,b1}");
    CHECK(s.cover_degree(*s.index_of("a1")) == 2);
}

TEST_CASE("scenario validation")
{
    CHECK(error_code([] { build_scenario({{"a", 2}, {"a", 2}}, {{"a"}}); }) == ErrorCode::DuplicateObservable);
    CHECK(error_code([] { build_scenario({{"a", 2}}, {{"b"}}); }) == ErrorCode::UnknownObservable);
    CHECK(error_code([] { build_scenario({{"a", 1}}, {{"a"}}); }) == ErrorCode::InvalidObservable);
    CHECK(error_code([] { build_scenario({{"a", 2}, {"b", 2}}, {{"a"}}); }) == ErrorCode::InvalidObservable);
    CHECK(error_code([] { build_scenario({{"a", 2}}, {}); }) == ErrorCode::EmptyCover);
    CHECK(error_code([] { build_scenario({{"a", 2}}, {{}}); }) == ErrorCode::InvalidContext);
    CHECK(error_code([] { build_scenario({{"a", 2}}, {{"a", "a"}}); }) == ErrorCode::InvalidContext);
    CHECK(error_code([] { build_scenario({{"a", 2}, {"b", 2}}, {{"a", "b"}, {"a"}}); })
            == ErrorCode::DominatedContext);
    CHECK(error_code([] { build_scenario({{"a", 2}, {"b", 2}}, {{"a", "b"}, {"b", "a"}}); })
            == ErrorCode::DominatedContext);
}

TEST_CASE("nerve of the Bell cover is a 4-cycle")
{
    auto nerve = build_nerve(oracle::bell_scenario());
    CHECK(nerve.vertices.size() == 4);
    CHECK(nerve.edges.size() == 4);
    CHECK(nerve.triangles.empty());
    for (auto & e : nerve.edges) {
        CHECK(e.first < e.second);
        CHECK(e.overlap.size() == 1);
    }
    CHECK(nerve.edge_index(0, 1));
    CHECK(nerve.edge_index(1, 0) == nerve.edge_index(0, 1));
    CHECK_FALSE(nerve.edge_index(0, 3));
}

TEST_CASE("triangles record their faces")
{
    auto s = build_scenario({{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}}, {{"a", "b", "c"}, {"a", "b", "d"}, {"a", "c", "d"}});
    auto nerve = build_nerve(s);
    REQUIRE(nerve.triangles.size() == 1);
    auto & t = nerve.triangles[0];
    CHECK(t.overlap == s.make_context({"a"}));
    CHECK(nerve.edges[t.edge_01].first == t.first);
    CHECK(nerve.edges[t.edge_01].second == t.second);
    CHECK(nerve.edges[t.edge_02].second == t.third);
    CHECK(nerve.edges[t.edge_12].first == t.second);
}

TEST_CASE("context poset is the downward closure")
{
    auto s = oracle::bell_scenario();
    auto poset = build_context_poset(s);
    // Four edges and four singletons.
    CHECK(poset.elements.size() == 8);
    auto top = *poset.index_of(s.context(0));
    auto a1 = *poset.index_of(s.make_context({"a1"}));
    CHECK(poset.less_equal(a1, top));
    CHECK_FALSE(poset.less_equal(top, a1));
    for (auto [from, to] : poset.arrows)
        CHECK(poset.elements[to].is_subset_of(poset.elements[from]));
}
