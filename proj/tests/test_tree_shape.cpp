#include <catch2/catch_amalgamated.hpp>

#include "permlang/tree_shape.hpp"

using namespace permlang;

namespace {

std::vector<std::vector<int>> outline_edges(const Outline& ol) {
    std::vector<std::vector<int>> out;
    for (const auto& seg : ol.segments) {
        std::vector<int> entries;
        for (const auto& e : seg) entries.push_back(e.rightSide ? -e.edge : e.edge);
        out.push_back(entries);
    }
    return out;
}

}  // namespace

TEST_CASE("shape counts follow the Catalan numbers") {
    CHECK(enumerate_shapes(2).size() == 1);
    CHECK(enumerate_shapes(3).size() == 2);
    CHECK(enumerate_shapes(4).size() == 5);
    CHECK(enumerate_shapes(5).size() == 14);
    CHECK(enumerate_shapes(6).size() == 42);
    CHECK_THROWS_AS(enumerate_shapes(0), ValidationError);
    CHECK_THROWS_AS(enumerate_shapes(1), ValidationError);
}

TEST_CASE("single edge shape") {
    TreeShape t = single_edge_shape();
    CHECK(t.leaf_count() == 1);
    EdgeOrder ord = order_edges(t);
    CHECK(ord.edgeCount == 1);
    CHECK(ord.innerCount == 0);
    CHECK(branch_points(t, ord).empty());
    Outline ol = outline(t, ord);
    // Down the lone edge, then back up its right side.
    CHECK(outline_edges(ol) == std::vector<std::vector<int>>{{1}, {-1}});
}

TEST_CASE("two-leaf shape: one junction") {
    TreeShape t = enumerate_shapes(2)[0];
    EdgeOrder ord = order_edges(t);
    CHECK(ord.edgeCount == 3);
    CHECK(ord.innerCount == 1);
    auto bps = branch_points(t, ord);
    REQUIRE(bps.size() == 1);
    CHECK(bps[0].parent == 1);
    CHECK(bps[0].left == 2);
    CHECK(bps[0].right == 3);
    Outline ol = outline(t, ord);
    CHECK(outline_edges(ol) == std::vector<std::vector<int>>{{1, 2}, {-2, 3}, {-3, -1}});
}

TEST_CASE("left-comb three-leaf shape") {
    // Root whose left child is an inner node with two leaves, right child a leaf.
    TreeShape t;
    t.nodes = {{1, 4}, {2, 3}, {-1, -1}, {-1, -1}, {-1, -1}};
    CHECK(t.leaf_count() == 3);
    EdgeOrder ord = order_edges(t);
    CHECK(ord.edgeCount == 5);
    CHECK(ord.innerCount == 2);
    // Inner edges take preorder numbers, leaves follow in encounter order.
    CHECK(ord.edgeOfNode == std::vector<int>{1, 2, 3, 4, 5});
    auto bps = branch_points(t, ord);
    REQUIRE(bps.size() == 2);
    CHECK(bps[0].parent == 1);
    CHECK(bps[0].left == 2);
    CHECK(bps[0].right == 5);
    CHECK(bps[1].parent == 2);
    CHECK(bps[1].left == 3);
    CHECK(bps[1].right == 4);
    Outline ol = outline(t, ord);
    CHECK(outline_edges(ol) ==
          std::vector<std::vector<int>>{{1, 2, 3}, {-3, 4}, {-4, -2, 5}, {-5, -1}});
}

TEST_CASE("edge order round-trips through nodeOfEdge") {
    for (const TreeShape& t : enumerate_shapes(4)) {
        EdgeOrder ord = order_edges(t);
        CHECK(ord.edgeCount == static_cast<int>(t.nodes.size()));
        for (int e = 1; e <= ord.edgeCount; ++e)
            CHECK(ord.edgeOfNode[static_cast<size_t>(ord.nodeOfEdge[static_cast<size_t>(e)])] == e);
        // Inner edges are exactly 1..innerCount.
        for (int e = 1; e <= ord.edgeCount; ++e) {
            bool leaf = t.is_leaf(ord.nodeOfEdge[static_cast<size_t>(e)]);
            CHECK(leaf == (e > ord.innerCount));
        }
    }
}

TEST_CASE("outline segments partition every edge side once") {
    for (const TreeShape& t : enumerate_shapes(5)) {
        EdgeOrder ord = order_edges(t);
        Outline ol = outline(t, ord);
        CHECK(ol.segments.size() == static_cast<size_t>(t.leaf_count() + 1));
        std::set<std::pair<int, bool>> seen;
        size_t total = 0;
        for (const auto& seg : ol.segments) {
            CHECK_FALSE(seg.empty());
            for (const auto& e : seg) seen.insert({e.edge, e.rightSide});
            total += seg.size();
        }
        CHECK(total == 2 * static_cast<size_t>(ord.edgeCount));
        CHECK(seen.size() == total);
        // Each part after the first starts by coming back up a leaf edge.
        for (size_t p = 1; p < ol.segments.size(); ++p) {
            CHECK(ol.segments[p][0].rightSide);
            CHECK(ol.segments[p][0].edge > ord.innerCount);
        }
    }
}

TEST_CASE("branch points pair each junction with its child edges") {
    for (const TreeShape& t : enumerate_shapes(4)) {
        EdgeOrder ord = order_edges(t);
        auto bps = branch_points(t, ord);
        CHECK(bps.size() == static_cast<size_t>(ord.innerCount));
        for (size_t i = 0; i < bps.size(); ++i) {
            CHECK(bps[i].parent == static_cast<int>(i) + 1);
            int node = ord.nodeOfEdge[static_cast<size_t>(bps[i].parent)];
            CHECK(ord.edgeOfNode[static_cast<size_t>(t.nodes[static_cast<size_t>(node)].left)] == bps[i].left);
            CHECK(ord.edgeOfNode[static_cast<size_t>(t.nodes[static_cast<size_t>(node)].right)] == bps[i].right);
        }
    }
}
