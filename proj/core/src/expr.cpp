#include "mirrorcat/expr.hpp"

#include <sstream>

namespace mirrorcat {

int Expr::leaf_count() const {
    if (is_leaf()) return 1;
    return kids[0].leaf_count() + kids[1].leaf_count();
}

int Expr::nonunit_leaf_count(int unit_label) const {
    if (is_leaf()) return label == unit_label ? 0 : 1;
    return kids[0].nonunit_leaf_count(unit_label) + kids[1].nonunit_leaf_count(unit_label);
}

std::vector<int> Expr::leaves() const {
    std::vector<int> out;
    std::vector<const Expr*> stack{this};
    while (!stack.empty()) {
        const Expr* e = stack.back();
        stack.pop_back();
        if (e->is_leaf()) {
            out.push_back(e->label);
        } else {
            stack.push_back(&e->kids[1]);
            stack.push_back(&e->kids[0]);
        }
    }
    return out;
}

const Expr* Expr::at(const Pos& pos) const {
    const Expr* e = this;
    for (int step : pos) {
        if (e->is_leaf() || (step != 0 && step != 1)) return nullptr;
        e = &e->kids[step];
    }
    return e;
}

Expr* Expr::at(const Pos& pos) {
    return const_cast<Expr*>(static_cast<const Expr*>(this)->at(pos));
}

namespace {
void collect_internal(const Expr& e, Pos& cur, std::vector<Pos>& out) {
    if (e.is_leaf()) return;
    out.push_back(cur);
    cur.push_back(0);
    collect_internal(e.kids[0], cur, out);
    cur.back() = 1;
    collect_internal(e.kids[1], cur, out);
    cur.pop_back();
}
}  // namespace

std::vector<Pos> internal_nodes(const Expr& e) {
    std::vector<Pos> out;
    Pos cur;
    collect_internal(e, cur, out);
    return out;
}

int internal_index(const Expr& e, const Pos& pos) {
    const Expr* sub = e.at(pos);
    if (sub == nullptr || sub->is_leaf()) return -1;
    auto nodes = internal_nodes(e);
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i] == pos) return static_cast<int>(i);
    return -1;
}

int tree_label_at(const Expr& e, const TreeVec& tree, const Pos& pos) {
    const Expr* sub = e.at(pos);
    if (sub == nullptr) return -1;
    if (sub->is_leaf()) return sub->label;
    int idx = internal_index(e, pos);
    return idx >= 0 && idx < static_cast<int>(tree.size()) ? tree[idx] : -1;
}

std::string expr_str(const Expr& e, const std::vector<std::string>& names) {
    if (e.is_leaf()) return names[e.label];
    std::ostringstream os;
    os << "(" << expr_str(e.kids[0], names) << " " << expr_str(e.kids[1], names) << ")";
    return os.str();
}

namespace {
void tree_str_rec(const Expr& e, const TreeVec& tree, const Expr& root,
                  const Pos& pos, const std::vector<std::string>& names, std::ostream& os) {
    if (e.is_leaf()) {
        os << names[e.label];
        return;
    }
    os << "(";
    Pos p = pos;
    p.push_back(0);
    tree_str_rec(e.kids[0], tree, root, p, names, os);
    os << " ";
    p.back() = 1;
    tree_str_rec(e.kids[1], tree, root, p, names, os);
    os << ")->" << names[tree_label_at(root, tree, pos)];
}
}  // namespace

std::string tree_str(const Expr& e, const TreeVec& tree,
                     const std::vector<std::string>& names) {
    std::ostringstream os;
    tree_str_rec(e, tree, e, {}, names, os);
    return os.str();
}

}  // namespace mirrorcat
