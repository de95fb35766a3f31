// Iterated tensor-product expressions: binary trees whose leaves are labels.

#pragma once

#include <string>
#include <vector>

namespace mirrorcat {

// Path from the root of an expression: 0 = left child, 1 = right child.
using Pos = std::vector<int>;

struct Expr {
    int label = -1;          // leaf label; -1 on internal nodes
    std::vector<Expr> kids;  // empty (leaf) or exactly two

    static Expr leaf(int l) {
        Expr e;
        e.label = l;
        return e;
    }
    static Expr node(Expr a, Expr b) {
        Expr e;
        e.kids.reserve(2);
        e.kids.push_back(std::move(a));
        e.kids.push_back(std::move(b));
        return e;
    }

    bool is_leaf() const { return kids.empty(); }
    bool operator==(const Expr&) const = default;

    int leaf_count() const;
    int nonunit_leaf_count(int unit_label) const;
    std::vector<int> leaves() const;

    const Expr* at(const Pos& pos) const;  // nullptr if the path walks off the tree
    Expr* at(const Pos& pos);
};

// Internal nodes of an expression in pre-order (node, then left, then right).
// A fusion tree on an expression is an assignment of labels to these nodes;
// the root's label is the total.
std::vector<Pos> internal_nodes(const Expr& e);

// Pre-order index of the internal node at `pos`, or -1 if `pos` is a leaf.
int internal_index(const Expr& e, const Pos& pos);

// Labels of internal nodes, pre-order.
using TreeVec = std::vector<int>;

// Label carried by the subtree at `pos` in a given fusion tree.
int tree_label_at(const Expr& e, const TreeVec& tree, const Pos& pos);

std::string expr_str(const Expr& e, const std::vector<std::string>& label_names);
std::string tree_str(const Expr& e, const TreeVec& tree,
                     const std::vector<std::string>& label_names);

}  // namespace mirrorcat
