#pragma once

#include <vector>

#include "permlang/symbols.hpp"

namespace permlang {

// A full binary tree recorded as nodes with child indices (-1 marks a leaf).
// Node 0 is the top node; every node is identified with the edge hanging
// above it, so a tree with L leaves has 2L-1 nodes and as many edges.
struct TreeShape {
    struct Node {
        int left = -1;
        int right = -1;
    };
    std::vector<Node> nodes;

    bool is_leaf(int v) const { return nodes[static_cast<size_t>(v)].left < 0; }
    int leaf_count() const {
        int n = 0;
        for (size_t v = 0; v < nodes.size(); ++v)
            if (is_leaf(static_cast<int>(v))) ++n;
        return n;
    }
};

inline TreeShape single_edge_shape() { return TreeShape{{TreeShape::Node{}}}; }

namespace detail {

// Appends a copy of `sub` to `dst`, returning the index of its top node.
inline int graft(TreeShape& dst, const TreeShape& sub) {
    int offset = static_cast<int>(dst.nodes.size());
    for (const auto& nd : sub.nodes) {
        TreeShape::Node copy = nd;
        if (copy.left >= 0) copy.left += offset;
        if (copy.right >= 0) copy.right += offset;
        dst.nodes.push_back(copy);
    }
    return offset;
}

inline const std::vector<std::vector<TreeShape>>& shape_table(int leaves) {
    static std::vector<std::vector<TreeShape>> table{{}, {single_edge_shape()}};
    while (static_cast<int>(table.size()) <= leaves) {
        int n = static_cast<int>(table.size());
        std::vector<TreeShape> shapes;
        for (int l = 1; l < n; ++l)
            for (const auto& ls : table[static_cast<size_t>(l)])
                for (const auto& rs : table[static_cast<size_t>(n - l)]) {
                    TreeShape t;
                    t.nodes.push_back({});
                    t.nodes[0].left = graft(t, ls);
                    t.nodes[0].right = graft(t, rs);
                    shapes.push_back(std::move(t));
                }
        table.push_back(std::move(shapes));
    }
    return table;
}

}  // namespace detail

// All full binary trees with the given number of leaves (at least two).
inline std::vector<TreeShape> enumerate_shapes(int leaves) {
    if (leaves < 2) throw ValidationError("shape enumeration needs at least two leaves");
    return detail::shape_table(leaves)[static_cast<size_t>(leaves)];
}

// Edges numbered 1..N: inner edges first in preorder, then leaf edges left
// to right.  A parent edge always gets a smaller number than its children.
struct EdgeOrder {
    std::vector<int> nodeOfEdge;  // 1-based edge -> node ([0] unused)
    std::vector<int> edgeOfNode;  // node -> 1-based edge
    int edgeCount = 0;
    int innerCount = 0;
};

inline EdgeOrder order_edges(const TreeShape& t) {
    EdgeOrder ord;
    ord.edgeCount = static_cast<int>(t.nodes.size());
    ord.nodeOfEdge.assign(static_cast<size_t>(ord.edgeCount) + 1, -1);
    ord.edgeOfNode.assign(t.nodes.size(), -1);
    int next = 1;
    std::vector<int> leavesInOrder;
    // Preorder walk; children pushed right-first so left pops first.
    std::vector<int> dfs{0};
    while (!dfs.empty()) {
        int v = dfs.back();
        dfs.pop_back();
        if (t.is_leaf(v)) {
            leavesInOrder.push_back(v);
            continue;
        }
        ord.nodeOfEdge[static_cast<size_t>(next)] = v;
        ord.edgeOfNode[static_cast<size_t>(v)] = next;
        ++next;
        dfs.push_back(t.nodes[static_cast<size_t>(v)].right);
        dfs.push_back(t.nodes[static_cast<size_t>(v)].left);
    }
    ord.innerCount = next - 1;
    for (int v : leavesInOrder) {
        ord.nodeOfEdge[static_cast<size_t>(next)] = v;
        ord.edgeOfNode[static_cast<size_t>(v)] = next;
        ++next;
    }
    return ord;
}

// Inner node with its three surrounding edge numbers.
struct BranchPoint {
    int parent = 0;
    int left = 0;
    int right = 0;
};

inline std::vector<BranchPoint> branch_points(const TreeShape& t, const EdgeOrder& ord) {
    std::vector<BranchPoint> out;
    for (int e = 1; e <= ord.innerCount; ++e) {
        int v = ord.nodeOfEdge[static_cast<size_t>(e)];
        out.push_back({e, ord.edgeOfNode[static_cast<size_t>(t.nodes[static_cast<size_t>(v)].left)],
                       ord.edgeOfNode[static_cast<size_t>(t.nodes[static_cast<size_t>(v)].right)]});
    }
    return out;
}

// Contour walk of the tree: each edge is seen once on the way down (its left
// side) and once on the way up (its right side).  Cutting the walk at the
// leaves yields leafCount+1 segments; segment i lists the sides visited
// while producing part i.
struct OutlineEntry {
    int edge = 0;
    bool rightSide = false;
};

struct Outline {
    std::vector<std::vector<OutlineEntry>> segments;
};

inline Outline outline(const TreeShape& t, const EdgeOrder& ord) {
    Outline out;
    out.segments.emplace_back();
    auto walk = [&](auto&& self, int v) -> void {
        int e = ord.edgeOfNode[static_cast<size_t>(v)];
        out.segments.back().push_back({e, false});
        if (t.is_leaf(v)) {
            out.segments.emplace_back();
        } else {
            self(self, t.nodes[static_cast<size_t>(v)].left);
            self(self, t.nodes[static_cast<size_t>(v)].right);
        }
        out.segments.back().push_back({e, true});
    };
    walk(walk, 0);
    return out;
}

}  // namespace permlang
