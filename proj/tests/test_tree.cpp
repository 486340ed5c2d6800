#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <vector>

#include "support.hpp"
#include "treemat/ingest.hpp"
#include "treemat/tree.hpp"

using namespace treemat;

namespace {

RawGraph tree12_raw() {
    RawGraph g;
    g.datum = 0;
    const auto& parents = testsupport::tree12_parents();
    for (int k = 1; k <= static_cast<int>(parents.size()); ++k) {
        g.edges.emplace_back(parents[static_cast<std::size_t>(k) - 1], k);
    }
    return g;
}

RawGraph apply_relabel(const RawGraph& g, const std::map<int, int>& relabel) {
    RawGraph out;
    out.datum = relabel.at(g.datum);
    for (const auto& [u, v] : g.edges) {
        out.edges.emplace_back(relabel.at(u), relabel.at(v));
    }
    return out;
}

}  // namespace

TEST_CASE("construction from parent links") {
    const Tree t = testsupport::tree12();
    CHECK(t.node_count() == 12);
    CHECK(t.parent(1) == 0);
    CHECK(t.parent(8) == 7);
    CHECK(t.parent(12) == 11);
    CHECK(t.children(0) == std::vector<int>{1});
    CHECK(t.children(2) == std::vector<int>{3, 6, 7});
    CHECK(t.children(9) == std::vector<int>{10, 11});
    CHECK(t.children(5).empty());
    CHECK(t.depth(0) == 0);
    CHECK(t.depth(1) == 1);
    CHECK(t.depth(5) == 5);
    CHECK(t.depth(8) == 4);
    CHECK(t.depth(12) == 6);
}

TEST_CASE("construction rejects malformed parent links") {
    CHECK_THROWS_AS(Tree::from_parents({}), PreconditionViolated);
    CHECK_THROWS_AS(Tree::from_parents({0, 5}), IndexOutOfRange);
    CHECK_THROWS_AS(Tree::from_parents({0, -1}), IndexOutOfRange);
    CHECK_THROWS_AS(Tree::from_parents({0, 2}), SelfLoop);
    CHECK_THROWS_AS(Tree::from_parents({2, 1}), CycleDetected);
    CHECK_THROWS_AS(Tree::from_parents({0, 3, 2}), CycleDetected);
}

TEST_CASE("non-monotone parent links still build and fail validation") {
    const Tree t = Tree::from_parents({0, 3, 1});
    CHECK(t.depth(2) == 3);
    const ValidationReport report = validate_indexing(t);
    CHECK_FALSE(report.pass);
    CHECK(report.violations == std::vector<std::pair<int, int>>{{3, 2}});
}

TEST_CASE("node accessors check their range") {
    const Tree t = testsupport::tree12();
    CHECK_THROWS_AS(t.parent(0), IndexOutOfRange);
    CHECK_THROWS_AS(t.parent(13), IndexOutOfRange);
    CHECK_THROWS_AS(t.children(13), IndexOutOfRange);
    CHECK_THROWS_AS(t.depth(-1), IndexOutOfRange);
}

TEST_CASE("building from an edge list") {
    RawGraph g = tree12_raw();
    std::reverse(g.edges.begin(), g.edges.end());
    std::swap(g.edges[3].first, g.edges[3].second);
    const Tree t = build_tree(g);
    const Tree expected = testsupport::tree12();
    REQUIRE(t.node_count() == expected.node_count());
    for (int k = 1; k <= t.node_count(); ++k) {
        CHECK(t.parent(k) == expected.parent(k));
        CHECK(t.depth(k) == expected.depth(k));
    }
    CHECK(validate_indexing(t).pass);
}

TEST_CASE("edge list validation failures") {
    CHECK_THROWS_AS(build_tree(RawGraph{}), PreconditionViolated);
    CHECK_THROWS_AS(build_tree(RawGraph{{{0, -2}}, 0}), PreconditionViolated);
    CHECK_THROWS_AS(build_tree(RawGraph{{{1, 1}}, 0}), SelfLoop);
    CHECK_THROWS_AS(build_tree(RawGraph{{{0, 1}, {1, 0}}, 0}), DuplicateEdge);

    SECTION("label gaps and unknown datum are isolated nodes") {
        try {
            build_tree(RawGraph{{{0, 1}, {1, 3}}, 0});
            FAIL("expected IsolatedNode");
        } catch (const IsolatedNode& e) {
            CHECK(e.node() == 2);
        }
        try {
            build_tree(RawGraph{{{0, 1}}, 5});
            FAIL("expected IsolatedNode");
        } catch (const IsolatedNode& e) {
            CHECK(e.node() == 5);
        }
    }

    CHECK_THROWS_AS(build_tree(RawGraph{{{0, 1}, {2, 3}}, 0}), Disconnected);
    CHECK_THROWS_AS(build_tree(RawGraph{{{0, 1}, {1, 2}, {2, 3}, {1, 3}}, 0}), CycleDetected);

    SECTION("monotonicity violations are all reported") {
        try {
            build_tree(RawGraph{{{0, 2}, {2, 1}, {2, 4}, {4, 3}}, 0});
            FAIL("expected NonMonotoneNumbering");
        } catch (const NonMonotoneNumbering& e) {
            CHECK(e.violations() == std::vector<std::pair<int, int>>{{2, 1}, {4, 3}});
        }
    }

    SECTION("a datum other than label zero cannot be monotone") {
        CHECK_THROWS_AS(build_tree(RawGraph{{{0, 1}, {1, 2}}, 1}), NonMonotoneNumbering);
    }
}

TEST_CASE("forward indexing assignment") {
    SECTION("depth-first labels the worked example") {
        const auto relabel = assign_forward_indexing(tree12_raw());
        CHECK(relabel.at(0) == 0);
        CHECK(relabel.at(5) == 5);
        CHECK(relabel.at(9) == 6);
        CHECK(relabel.at(12) == 9);
        CHECK(relabel.at(7) == 11);
    }
    SECTION("breadth-first labels the worked example") {
        const auto relabel =
            assign_forward_indexing(tree12_raw(), IndexingStrategy::bfs_level);
        CHECK(relabel.at(0) == 0);
        CHECK(relabel.at(6) == 4);
        CHECK(relabel.at(8) == 8);
        CHECK(relabel.at(5) == 9);
        CHECK(relabel.at(12) == 12);
    }
    SECTION("either strategy yields a buildable monotone tree") {
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            GeneratorConfig config;
            config.n = 1 + static_cast<int>(seed % 40);
            config.seed = seed;
            config.numbering = Numbering::scrambled;
            const RawGraph g = generate(config);
            for (const auto strategy :
                 {IndexingStrategy::dfs_preorder, IndexingStrategy::bfs_level}) {
                const RawGraph relabeled = apply_relabel(g, assign_forward_indexing(g, strategy));
                CHECK(relabeled.datum == 0);
                const Tree t = build_tree(relabeled);
                CHECK(t.node_count() == config.n);
                CHECK(validate_indexing(t).pass);
            }
        }
    }
    SECTION("structural failures") {
        CHECK_THROWS_AS(assign_forward_indexing(RawGraph{{{0, 1}, {2, 3}}, 0}), Disconnected);
        CHECK_THROWS_AS(assign_forward_indexing(RawGraph{{{1, 2}}, 0}), Disconnected);
        CHECK_THROWS_AS(assign_forward_indexing(RawGraph{{{0, 1}, {1, 2}, {2, 0}}, 0}),
                        CycleDetected);
    }
}

TEST_CASE("forward adjacency") {
    const Tree t = testsupport::tree12();
    CHECK(forward_adjacent(t, 0, 1));
    CHECK(forward_adjacent(t, 2, 7));
    CHECK_FALSE(forward_adjacent(t, 2, 11));
    CHECK_FALSE(forward_adjacent(t, 7, 2));
    CHECK_FALSE(forward_adjacent(t, 3, 0));
    CHECK_THROWS_AS(forward_adjacent(t, -1, 3), IndexOutOfRange);
    CHECK_THROWS_AS(forward_adjacent(t, 3, 13), IndexOutOfRange);
}

TEST_CASE("routes") {
    const Tree t = testsupport::tree12();

    const auto r = route(t, 2, 11);
    REQUIRE(r.has_value());
    CHECK(r->from == 2);
    CHECK(r->to == 11);
    CHECK(r->nodes == std::vector<int>{2, 3, 9, 11});

    CHECK_FALSE(route(t, 4, 9).has_value());
    CHECK_FALSE(route(t, 11, 2).has_value());

    const auto from_datum = route(t, 0, 5);
    REQUIRE(from_datum.has_value());
    CHECK(from_datum->nodes == std::vector<int>{0, 1, 2, 3, 4, 5});

    const auto trivial = route(t, 7, 7);
    REQUIRE(trivial.has_value());
    CHECK(trivial->nodes == std::vector<int>{7});

    CHECK_THROWS_AS(route(t, 0, 13), IndexOutOfRange);
    CHECK_THROWS_AS(route(t, -1, 4), IndexOutOfRange);

    CHECK(forward_connected(t, 2, 11));
    CHECK_FALSE(forward_connected(t, 4, 9));
}

TEST_CASE("forward closures") {
    const Tree t = testsupport::tree12();
    CHECK(forward_closure(t, 5) == std::vector<int>{5});
    CHECK(forward_closure(t, 4) == std::vector<int>{4, 5});
    CHECK(forward_closure(t, 9) == std::vector<int>{9, 10, 11, 12});
    CHECK(forward_closure(t, 1) == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
    CHECK(forward_closure(t, 0).size() == 13);
    CHECK_THROWS_AS(forward_closure(t, 13), IndexOutOfRange);
}

TEST_CASE("closure and route agree on membership") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        GeneratorConfig config;
        config.n = 1 + static_cast<int>(seed % 25);
        config.seed = seed;
        const Tree t = build_tree(generate(config));
        for (int i = 1; i <= t.node_count(); ++i) {
            const auto closure = forward_closure(t, i);
            for (int j = i; j <= t.node_count(); ++j) {
                const bool in_closure =
                    std::find(closure.begin(), closure.end(), j) != closure.end();
                CHECK(in_closure == forward_connected(t, i, j));
            }
        }
    }
}
