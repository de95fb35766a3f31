#include "mirrorcat/morphism.hpp"

#include <algorithm>
#include <sstream>

namespace mirrorcat {

CMat CMat::eye(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = CycNumber(1);
    return m;
}

bool CMat::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const CycNumber& x) { return x.is_zero(); });
}

CMat CMat::mul(const CMat& rhs) const {
    if (cols != rhs.rows) throw CatError("matrix shape mismatch in composition");
    CMat out(rows, rhs.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const CycNumber& v = at(i, k);
            if (v.is_zero()) continue;
            for (int j = 0; j < rhs.cols; ++j) {
                const CycNumber& w = rhs.at(k, j);
                if (!w.is_zero()) out.at(i, j) += v * w;
            }
        }
    return out;
}

CMat CMat::scaled(const CycNumber& s) const {
    CMat out = *this;
    for (auto& x : out.a) x *= s;
    return out;
}

namespace {

constexpr int kMaxNonUnitLeaves = 4;
constexpr int kMaxLeaves = 6;

bool is_prefix(const Pos& p, const Pos& q) {
    if (p.size() > q.size()) return false;
    return std::equal(p.begin(), p.end(), q.begin());
}

Pos cat_pos(Pos p, std::initializer_list<int> steps, const Pos& rest = {}) {
    for (int s : steps) p.push_back(s);
    p.insert(p.end(), rest.begin(), rest.end());
    return p;
}

Pos pos_suffix(const Pos& prefix, const Pos& q) {
    return Pos(q.begin() + static_cast<long>(prefix.size()), q.end());
}

struct BasisSet {
    std::map<int, std::vector<TreeVec>> trees;
    std::map<int, std::map<TreeVec, int>> index;

    explicit BasisSet(const RibbonCategory& C, const Expr& e) {
        for (auto& [c, t] : enumerate_trees(C, e)) {
            index[c].emplace(t, static_cast<int>(trees[c].size()));
            trees[c].push_back(t);
        }
    }
    int dim(int c) const {
        auto it = trees.find(c);
        return it == trees.end() ? 0 : static_cast<int>(it->second.size());
    }
};

void check_expr_size(const RibbonCategory& C, const Expr& e) {
    if (e.nonunit_leaf_count(C.unit) > kMaxNonUnitLeaves || e.leaf_count() > kMaxLeaves)
        throw CatError("expression exceeds the supported tensor length");
}

}  // namespace

Morphism Morphism::identity(CategoryPtr C, Expr e) {
    C->require_multiplicity_free();
    check_expr_size(*C, e);
    Morphism m;
    m.C_ = std::move(C);
    m.src_ = e;
    m.tgt_ = std::move(e);
    BasisSet b(*m.C_, m.src_);
    for (auto& [c, ts] : b.trees) m.blocks_[c] = CMat::eye(static_cast<int>(ts.size()));
    return m;
}

Morphism Morphism::zero(CategoryPtr C, Expr src, Expr tgt) {
    Morphism m;
    m.C_ = std::move(C);
    m.src_ = std::move(src);
    m.tgt_ = std::move(tgt);
    return m;
}

Morphism Morphism::elementary(CategoryPtr C, int x, int y, int z, const CycNumber& coeff) {
    if (!C->admissible(x, y, z)) {
        if (!coeff.is_zero())
            throw CatError("elementary morphism on an inadmissible fusion channel " +
                           C->label(x) + "," + C->label(y) + ";" + C->label(z));
        return zero(std::move(C), Expr::node(Expr::leaf(x), Expr::leaf(y)), Expr::leaf(z));
    }
    Morphism m;
    m.C_ = std::move(C);
    m.src_ = Expr::node(Expr::leaf(x), Expr::leaf(y));
    m.tgt_ = Expr::leaf(z);
    if (!coeff.is_zero()) {
        CMat blk(1, 1);
        blk.at(0, 0) = coeff;
        m.blocks_[z] = std::move(blk);
    }
    return m;
}

Morphism Morphism::basis_column(CategoryPtr C, Expr expr, int total, const TreeVec& tree) {
    TreeBasis b = hom_basis(*C, expr, total);
    int idx = b.index_of(tree);
    if (idx < 0) throw CatError("basis_column: tree not in the fusion-tree basis");
    Morphism m;
    m.C_ = std::move(C);
    m.src_ = Expr::leaf(total);
    m.tgt_ = std::move(expr);
    CMat blk(b.dim(), 1);
    blk.at(idx, 0) = CycNumber(1);
    m.blocks_[total] = std::move(blk);
    return m;
}

Morphism Morphism::basis_row(CategoryPtr C, Expr expr, int total, const TreeVec& tree) {
    TreeBasis b = hom_basis(*C, expr, total);
    int idx = b.index_of(tree);
    if (idx < 0) throw CatError("basis_row: tree not in the fusion-tree basis");
    Morphism m;
    m.C_ = std::move(C);
    m.src_ = std::move(expr);
    m.tgt_ = Expr::leaf(total);
    CMat blk(1, b.dim());
    blk.at(0, idx) = CycNumber(1);
    m.blocks_[total] = std::move(blk);
    return m;
}

Morphism Morphism::then(const Morphism& g) const {
    if (!(tgt_ == g.src_))
        throw CatError("composition of morphisms with mismatched expressions");
    Morphism out;
    out.C_ = C_;
    out.src_ = src_;
    out.tgt_ = g.tgt_;
    for (const auto& [c, blk] : blocks_) {
        auto it = g.blocks_.find(c);
        if (it == g.blocks_.end()) continue;
        CMat prod = it->second.mul(blk);
        if (!prod.is_zero()) out.blocks_[c] = std::move(prod);
    }
    return out;
}

Morphism Morphism::scaled(const CycNumber& s) const {
    Morphism out = *this;
    if (s.is_zero()) {
        out.blocks_.clear();
        return out;
    }
    for (auto& [c, blk] : out.blocks_) blk = blk.scaled(s);
    return out;
}

Morphism Morphism::plus(const Morphism& g) const {
    if (!(src_ == g.src_) || !(tgt_ == g.tgt_))
        throw CatError("sum of morphisms with mismatched expressions");
    Morphism out = *this;
    for (const auto& [c, blk] : g.blocks_) {
        auto it = out.blocks_.find(c);
        if (it == out.blocks_.end()) {
            out.blocks_[c] = blk;
        } else {
            if (it->second.rows != blk.rows || it->second.cols != blk.cols)
                throw CatError("sum of morphisms with mismatched blocks");
            for (size_t i = 0; i < blk.a.size(); ++i) it->second.a[i] += blk.a[i];
            if (it->second.is_zero()) out.blocks_.erase(it);
        }
    }
    return out;
}

bool Morphism::equals(const Morphism& g) const {
    if (!(src_ == g.src_) || !(tgt_ == g.tgt_)) return false;
    for (const auto& [c, blk] : blocks_) {
        auto it = g.blocks_.find(c);
        if (it == g.blocks_.end()) {
            if (!blk.is_zero()) return false;
        } else if (!(blk == it->second)) {
            return false;
        }
    }
    for (const auto& [c, blk] : g.blocks_) {
        if (blocks_.find(c) == blocks_.end() && !blk.is_zero()) return false;
    }
    return true;
}

bool Morphism::is_zero() const {
    return std::all_of(blocks_.begin(), blocks_.end(),
                       [](const auto& kv) { return kv.second.is_zero(); });
}

CMat Morphism::block(int total) const {
    auto it = blocks_.find(total);
    if (it != blocks_.end()) return it->second;
    return CMat(hom_basis(*C_, tgt_, total).dim(), hom_basis(*C_, src_, total).dim());
}

std::optional<CycNumber> Morphism::as_scalar() const {
    if (!(src_ == tgt_)) return std::nullopt;
    std::optional<CycNumber> s;
    BasisSet b(*C_, src_);
    for (const auto& [c, ts] : b.trees) {
        int n = static_cast<int>(ts.size());
        CMat blk = block(c);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) {
                    if (!s) s = blk.at(i, i);
                    else if (*s != blk.at(i, i)) return std::nullopt;
                } else if (!blk.at(i, j).is_zero()) {
                    return std::nullopt;
                }
            }
    }
    return s ? s : std::optional<CycNumber>(CycNumber(0));
}

CycNumber Morphism::scalar_value() const {
    if (!src_.is_leaf() || !tgt_.is_leaf() || src_.label != tgt_.label)
        throw CatError("scalar_value on a non-endomorphism of a single label");
    auto it = blocks_.find(src_.label);
    if (it == blocks_.end()) return CycNumber(0);
    return it->second.at(0, 0);
}

Morphism Morphism::moved(const Move& m) const {
    return then(structural_move(C_, tgt_, m));
}

Morphism tensor(const Morphism& f, const Morphism& g) {
    const RibbonCategory& C = *f.category();
    Expr src = Expr::node(f.source(), g.source());
    Expr tgt = Expr::node(f.target(), g.target());
    check_expr_size(C, src);
    check_expr_size(C, tgt);
    Morphism out = Morphism::zero(f.category(), src, tgt);

    // A pair-tree for node(S1, S2) is (k, [k] ta tb) with the first factor
    // fused to a and the second to b; f x g acts factorwise and is the
    // identity on the (a,b) -> k channel node.
    auto src_f = enumerate_trees(C, f.source());
    auto src_g = enumerate_trees(C, g.source());
    auto tgt_f = enumerate_trees(C, f.target());
    auto tgt_g = enumerate_trees(C, g.target());
    BasisSet sb(C, src), tb(C, tgt);

    // per-label positions of each factor tree inside its hom basis
    auto index_in_basis = [&C](const Expr& ex, const std::vector<std::pair<int, TreeVec>>& all) {
        std::map<int, int> counter;
        std::vector<int> idx(all.size());
        for (size_t i = 0; i < all.size(); ++i) idx[i] = counter[all[i].first]++;
        (void)ex;
        return idx;
    };
    std::vector<int> sfi = index_in_basis(f.source(), src_f);
    std::vector<int> sgi = index_in_basis(g.source(), src_g);
    std::vector<int> tfi = index_in_basis(f.target(), tgt_f);
    std::vector<int> tgi = index_in_basis(g.target(), tgt_g);

    std::map<int, CMat> blocks;
    for (auto& [c, ts] : sb.trees) {
        int td = tb.dim(c);
        if (td > 0) blocks.emplace(c, CMat(td, static_cast<int>(ts.size())));
    }
    std::map<int, CMat> fb, gb;
    for (size_t ia = 0; ia < src_f.size(); ++ia)
        for (size_t ib = 0; ib < src_g.size(); ++ib) {
            int a = src_f[ia].first, b = src_g[ib].first;
            if (fb.find(a) == fb.end()) fb.emplace(a, f.block(a));
            if (gb.find(b) == gb.end()) gb.emplace(b, g.block(b));
            for (size_t ja = 0; ja < tgt_f.size(); ++ja) {
                if (tgt_f[ja].first != a) continue;
                for (size_t jb = 0; jb < tgt_g.size(); ++jb) {
                    if (tgt_g[jb].first != b) continue;
                    CycNumber coeff = fb.at(a).at(tfi[ja], sfi[ia]) * gb.at(b).at(tgi[jb], sgi[ib]);
                    if (coeff.is_zero()) continue;
                    for (int k = 0; k < C.rank(); ++k) {
                        if (!C.admissible(a, b, k)) continue;
                        TreeVec st{k}, tt{k};
                        st.insert(st.end(), src_f[ia].second.begin(), src_f[ia].second.end());
                        st.insert(st.end(), src_g[ib].second.begin(), src_g[ib].second.end());
                        tt.insert(tt.end(), tgt_f[ja].second.begin(), tgt_f[ja].second.end());
                        tt.insert(tt.end(), tgt_g[jb].second.begin(), tgt_g[jb].second.end());
                        int si = sb.index.at(k).at(st);
                        int ti = tb.index.at(k).at(tt);
                        blocks.at(k).at(ti, si) += coeff;
                    }
                }
            }
        }
    for (auto& [c, blk] : blocks)
        if (!blk.is_zero()) out.blocks_[c] = std::move(blk);
    return out;
}

namespace {

TreeVec relabel(const Expr& ne, const std::function<int(const Pos&)>& label_for) {
    TreeVec out;
    for (const Pos& q : internal_nodes(ne)) out.push_back(label_for(q));
    return out;
}

}  // namespace

Morphism structural_move(const CategoryPtr& Cp, const Expr& e, const Move& mv) {
    const RibbonCategory& C = *Cp;
    C.require_multiplicity_free();
    const Expr* subp = e.at(mv.pos);
    if (subp == nullptr) throw CatError("move position does not exist in the expression");
    const Expr& sub = *subp;
    const Pos& P = mv.pos;

    Expr ne = e;
    std::function<std::vector<std::pair<TreeVec, CycNumber>>(int, const TreeVec&)> transport;

    switch (mv.kind) {
        case MoveKind::Associator: {
            if (sub.is_leaf() || sub.kids[1].is_leaf())
                throw CatError("associator needs a subtree of the form A x (B x C)");
            Expr A = sub.kids[0], B = sub.kids[1].kids[0], Cc = sub.kids[1].kids[1];
            *ne.at(P) = Expr::node(Expr::node(A, B), Cc);
            transport = [&, P](int total, const TreeVec& t) {
                (void)total;
                int i = tree_label_at(e, t, cat_pos(P, {0}));
                int j = tree_label_at(e, t, cat_pos(P, {1, 0}));
                int k = tree_label_at(e, t, cat_pos(P, {1, 1}));
                int l = tree_label_at(e, t, P);
                int f = tree_label_at(e, t, cat_pos(P, {1}));
                std::vector<std::pair<TreeVec, CycNumber>> out;
                for (int g = 0; g < C.rank(); ++g) {
                    if (!C.admissible(i, j, g) || !C.admissible(g, k, l)) continue;
                    CycNumber coeff = C.f_entry(i, j, k, l, g, f);
                    if (coeff.is_zero()) continue;
                    auto label_for = [&](const Pos& q) -> int {
                        if (q == P) return l;
                        if (q == cat_pos(P, {0})) return g;
                        Pos pa = cat_pos(P, {0, 0});
                        if (is_prefix(pa, q)) return tree_label_at(e, t, cat_pos(P, {0}, pos_suffix(pa, q)));
                        Pos pb = cat_pos(P, {0, 1});
                        if (is_prefix(pb, q)) return tree_label_at(e, t, cat_pos(P, {1, 0}, pos_suffix(pb, q)));
                        Pos pc = cat_pos(P, {1});
                        if (is_prefix(pc, q)) return tree_label_at(e, t, cat_pos(P, {1, 1}, pos_suffix(pc, q)));
                        return tree_label_at(e, t, q);
                    };
                    out.emplace_back(relabel(ne, label_for), coeff);
                }
                return out;
            };
            break;
        }
        case MoveKind::AssociatorInverse: {
            if (sub.is_leaf() || sub.kids[0].is_leaf())
                throw CatError("inverse associator needs a subtree of the form (A x B) x C");
            Expr A = sub.kids[0].kids[0], B = sub.kids[0].kids[1], Cc = sub.kids[1];
            *ne.at(P) = Expr::node(A, Expr::node(B, Cc));
            transport = [&, P](int total, const TreeVec& t) {
                (void)total;
                int i = tree_label_at(e, t, cat_pos(P, {0, 0}));
                int j = tree_label_at(e, t, cat_pos(P, {0, 1}));
                int k = tree_label_at(e, t, cat_pos(P, {1}));
                int l = tree_label_at(e, t, P);
                int g = tree_label_at(e, t, cat_pos(P, {0}));
                std::vector<std::pair<TreeVec, CycNumber>> out;
                for (int f = 0; f < C.rank(); ++f) {
                    if (!C.admissible(j, k, f) || !C.admissible(i, f, l)) continue;
                    CycNumber coeff = C.f_inv_entry(i, j, k, l, f, g);
                    if (coeff.is_zero()) continue;
                    auto label_for = [&](const Pos& q) -> int {
                        if (q == P) return l;
                        if (q == cat_pos(P, {1})) return f;
                        Pos pa = cat_pos(P, {0});
                        Pos pb = cat_pos(P, {1, 0});
                        Pos pc = cat_pos(P, {1, 1});
                        if (is_prefix(pb, q)) return tree_label_at(e, t, cat_pos(P, {0, 1}, pos_suffix(pb, q)));
                        if (is_prefix(pc, q)) return tree_label_at(e, t, cat_pos(P, {1}, pos_suffix(pc, q)));
                        if (is_prefix(pa, q) && q.size() > pa.size())
                            return tree_label_at(e, t, cat_pos(P, {0, 0}, pos_suffix(pa, q)));
                        if (q == pa) return tree_label_at(e, t, cat_pos(P, {0, 0}));
                        return tree_label_at(e, t, q);
                    };
                    out.emplace_back(relabel(ne, label_for), coeff);
                }
                return out;
            };
            break;
        }
        case MoveKind::Braid:
        case MoveKind::BraidInverse: {
            if (sub.is_leaf()) throw CatError("braid needs a two-factor subtree");
            Expr A = sub.kids[0], B = sub.kids[1];
            *ne.at(P) = Expr::node(B, A);
            bool inverse = mv.kind == MoveKind::BraidInverse;
            transport = [&, P, inverse](int total, const TreeVec& t) {
                (void)total;
                int a = tree_label_at(e, t, cat_pos(P, {0}));
                int b = tree_label_at(e, t, cat_pos(P, {1}));
                int k = tree_label_at(e, t, P);
                CycNumber coeff =
                    inverse ? C.r_symbol(b, a, k).inverse() : C.r_symbol(a, b, k);
                auto label_for = [&](const Pos& q) -> int {
                    if (q == P) return k;
                    Pos pl = cat_pos(P, {0});
                    Pos pr = cat_pos(P, {1});
                    if (is_prefix(pl, q)) return tree_label_at(e, t, cat_pos(P, {1}, pos_suffix(pl, q)));
                    if (is_prefix(pr, q)) return tree_label_at(e, t, cat_pos(P, {0}, pos_suffix(pr, q)));
                    return tree_label_at(e, t, q);
                };
                return std::vector<std::pair<TreeVec, CycNumber>>{{relabel(ne, label_for), coeff}};
            };
            break;
        }
        case MoveKind::Twist:
        case MoveKind::TwistInverse: {
            bool inverse = mv.kind == MoveKind::TwistInverse;
            transport = [&, P, inverse](int total, const TreeVec& t) {
                (void)total;
                int a = tree_label_at(e, t, P);
                CycNumber coeff = inverse ? C.theta[a].inverse() : C.theta[a];
                return std::vector<std::pair<TreeVec, CycNumber>>{{t, coeff}};
            };
            break;
        }
        case MoveKind::Cup: {
            int x = mv.label;
            if (x < 0 || x >= C.rank()) throw CatError("cup needs a label");
            int xs = C.dual[x];
            Expr pair = Expr::node(Expr::leaf(x), Expr::leaf(xs));
            *ne.at(P) = mv.on_left ? Expr::node(pair, sub) : Expr::node(sub, pair);
            check_expr_size(C, ne);
            bool left = mv.on_left;
            transport = [&, P, x, left](int total, const TreeVec& t) {
                (void)total;
                int s = tree_label_at(e, t, P);
                Pos sub_new = cat_pos(P, {left ? 1 : 0});
                Pos pair_new = cat_pos(P, {left ? 0 : 1});
                auto label_for = [&](const Pos& q) -> int {
                    if (q == P) return s;                    // join node keeps the subtree label
                    if (q == pair_new) return C.unit;        // coevaluation channel
                    if (is_prefix(sub_new, q)) return tree_label_at(e, t, cat_pos(P, {}, pos_suffix(sub_new, q)));
                    return tree_label_at(e, t, q);
                };
                return std::vector<std::pair<TreeVec, CycNumber>>{
                    {relabel(ne, label_for), C.coev[x]}};
            };
            break;
        }
        case MoveKind::Cap: {
            if (sub.is_leaf() || !sub.kids[0].is_leaf() || !sub.kids[1].is_leaf())
                throw CatError("cap needs a subtree of two leaves");
            int a = sub.kids[0].label, b = sub.kids[1].label;
            if (a != C.dual[b])
                throw CatError("cap needs a (dual, label) leaf pair, got " + C.label(a) + "," +
                               C.label(b));
            *ne.at(P) = Expr::leaf(C.unit);
            transport = [&, P](int total, const TreeVec& t) {
                (void)total;
                if (tree_label_at(e, t, P) != C.unit)
                    return std::vector<std::pair<TreeVec, CycNumber>>{};
                auto label_for = [&](const Pos& q) -> int { return tree_label_at(e, t, q); };
                return std::vector<std::pair<TreeVec, CycNumber>>{
                    {relabel(ne, label_for), CycNumber(1)}};
            };
            break;
        }
        case MoveKind::UnitInsert: {
            *ne.at(P) = mv.on_left ? Expr::node(Expr::leaf(C.unit), sub)
                                   : Expr::node(sub, Expr::leaf(C.unit));
            check_expr_size(C, ne);
            bool left = mv.on_left;
            transport = [&, P, left](int total, const TreeVec& t) {
                (void)total;
                int s = tree_label_at(e, t, P);
                Pos sub_new = cat_pos(P, {left ? 1 : 0});
                auto label_for = [&](const Pos& q) -> int {
                    if (q == P) return s;
                    if (is_prefix(sub_new, q)) return tree_label_at(e, t, cat_pos(P, {}, pos_suffix(sub_new, q)));
                    return tree_label_at(e, t, q);
                };
                return std::vector<std::pair<TreeVec, CycNumber>>{
                    {relabel(ne, label_for), CycNumber(1)}};
            };
            break;
        }
        case MoveKind::UnitRemove: {
            if (sub.is_leaf()) throw CatError("unit removal needs a two-factor subtree");
            bool right_unit = sub.kids[1].is_leaf() && sub.kids[1].label == C.unit;
            bool left_unit = sub.kids[0].is_leaf() && sub.kids[0].label == C.unit;
            if (!right_unit && !left_unit)
                throw CatError("unit removal needs a unit leaf factor");
            int keep = right_unit ? 0 : 1;
            *ne.at(P) = sub.kids[keep];
            transport = [&, P, keep](int total, const TreeVec& t) {
                (void)total;
                auto label_for = [&](const Pos& q) -> int {
                    if (is_prefix(P, q)) return tree_label_at(e, t, cat_pos(P, {keep}, pos_suffix(P, q)));
                    return tree_label_at(e, t, q);
                };
                return std::vector<std::pair<TreeVec, CycNumber>>{
                    {relabel(ne, label_for), CycNumber(1)}};
            };
            break;
        }
        case MoveKind::Fuse: {
            if (sub.is_leaf() || !sub.kids[0].is_leaf() || !sub.kids[1].is_leaf())
                throw CatError("fuse needs a subtree of two leaves");
            int a = sub.kids[0].label, b = sub.kids[1].label;
            int channel = -1, channels = 0;
            for (int k = 0; k < C.rank(); ++k)
                if (C.admissible(a, b, k)) {
                    channel = k;
                    channels += C.fusion(a, b, k);
                }
            if (channels != 1)
                throw CatError("fuse needs a unique fusion channel at " + C.label(a) + "," +
                               C.label(b));
            *ne.at(P) = Expr::leaf(channel);
            transport = [&, P](int total, const TreeVec& t) {
                (void)total;
                auto label_for = [&](const Pos& q) -> int { return tree_label_at(e, t, q); };
                return std::vector<std::pair<TreeVec, CycNumber>>{
                    {relabel(ne, label_for), CycNumber(1)}};
            };
            break;
        }
        case MoveKind::Split: {
            if (!sub.is_leaf()) throw CatError("split needs a leaf");
            int a = mv.label, b = mv.label2;
            if (a < 0 || b < 0) throw CatError("split needs the two factor labels");
            int channels = 0;
            for (int k = 0; k < C.rank(); ++k) channels += C.fusion(a, b, k);
            if (channels != 1 || !C.admissible(a, b, sub.label))
                throw CatError("split needs a unique fusion channel matching the leaf");
            *ne.at(P) = Expr::node(Expr::leaf(a), Expr::leaf(b));
            check_expr_size(C, ne);
            int lbl = sub.label;
            transport = [&, P, lbl](int total, const TreeVec& t) {
                (void)total;
                auto label_for = [&](const Pos& q) -> int {
                    if (q == P) return lbl;
                    return tree_label_at(e, t, q);
                };
                return std::vector<std::pair<TreeVec, CycNumber>>{
                    {relabel(ne, label_for), CycNumber(1)}};
            };
            break;
        }
    }

    BasisSet sb(C, e), tb(C, ne);
    Morphism out = Morphism::zero(Cp, e, ne);
    std::map<int, CMat> blocks;
    for (auto& [c, ts] : sb.trees) {
        int td = tb.dim(c);
        if (td == 0) continue;
        CMat blk(td, static_cast<int>(ts.size()));
        bool nonzero = false;
        for (size_t si = 0; si < ts.size(); ++si) {
            for (auto& [tt, coeff] : transport(c, ts[si])) {
                int ti = tb.index.at(c).at(tt);
                blk.at(ti, static_cast<int>(si)) += coeff;
                nonzero = true;
            }
        }
        if (nonzero && !blk.is_zero()) blocks[c] = std::move(blk);
    }
    out.blocks_ = std::move(blocks);
    return out;
}

std::string Morphism::str() const {
    std::ostringstream os;
    const auto& names = C_->label_names;
    os << expr_str(src_, names) << " -> " << expr_str(tgt_, names) << " {";
    bool first = true;
    for (const auto& [c, blk] : blocks_) {
        if (!first) os << "; ";
        first = false;
        os << names[c] << ": [";
        for (int i = 0; i < blk.rows; ++i) {
            if (i) os << " | ";
            for (int j = 0; j < blk.cols; ++j) {
                if (j) os << ", ";
                os << blk.at(i, j).str();
            }
        }
        os << "]";
    }
    os << "}";
    return os.str();
}

}  // namespace mirrorcat
