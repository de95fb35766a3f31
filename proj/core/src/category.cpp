#include "mirrorcat/category.hpp"

#include <algorithm>
#include <sstream>

namespace mirrorcat {

namespace {

std::string triple_str(const RibbonCategory& C, int i, int j, int k) {
    return C.label(i) + "," + C.label(j) + ";" + C.label(k);
}

// Invert a small matrix over the cyclotomic field; returns empty on singular.
std::vector<CycNumber> invert(const std::vector<CycNumber>& m, int n) {
    std::vector<CycNumber> a = m;
    std::vector<CycNumber> inv(n * n);
    for (int i = 0; i < n; ++i) inv[i * n + i] = CycNumber(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (!a[r * n + col].is_zero()) { piv = r; break; }
        if (piv < 0) return {};
        if (piv != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(a[piv * n + c], a[col * n + c]);
                std::swap(inv[piv * n + c], inv[col * n + c]);
            }
        }
        CycNumber d = a[col * n + col].inverse();
        for (int c = 0; c < n; ++c) {
            a[col * n + c] *= d;
            inv[col * n + c] *= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r * n + col].is_zero()) continue;
            CycNumber f = a[r * n + col];
            for (int c = 0; c < n; ++c) {
                a[r * n + c] -= f * a[col * n + c];
                inv[r * n + c] -= f * inv[col * n + c];
            }
        }
    }
    return inv;
}

}  // namespace

int RibbonCategory::label_index(const std::string& nm) const {
    for (int i = 0; i < rank(); ++i)
        if (label_names[i] == nm) return i;
    throw CatError("unknown label '" + nm + "' in category " + name);
}

CycNumber RibbonCategory::r_symbol(int i, int j, int k) const {
    if (!admissible(i, j, k))
        throw CatError("R-symbol requested for inadmissible triple " + triple_str(*this, i, j, k));
    if (i == unit || j == unit) return CycNumber(1);
    auto it = R.find({i, j, k});
    if (it == R.end())
        throw CatError("missing R-symbol " + triple_str(*this, i, j, k) + " in category " + name);
    return it->second;
}

CycNumber RibbonCategory::f_entry(int i, int j, int k, int l, int e, int f) const {
    // admissibility of the two trees
    bool row_ok = admissible(i, j, e) && admissible(e, k, l);
    bool col_ok = admissible(j, k, f) && admissible(i, f, l);
    if (!row_ok || !col_ok) return CycNumber(0);
    if (i == unit || j == unit || k == unit) return CycNumber(1);
    auto it = F.find({i, j, k, l});
    if (it == F.end()) {
        // canonical identity default, valid only on one-dimensional spaces
        return CycNumber(1);
    }
    const FMatrix& fm = it->second;
    auto re = std::find(fm.row_labels.begin(), fm.row_labels.end(), e);
    auto cf = std::find(fm.col_labels.begin(), fm.col_labels.end(), f);
    if (re == fm.row_labels.end() || cf == fm.col_labels.end())
        throw CatError("F-matrix index out of range for " + label(i) + "," + label(j) + "," +
                       label(k) + ";" + label(l));
    return fm.at(static_cast<int>(re - fm.row_labels.begin()),
                 static_cast<int>(cf - fm.col_labels.begin()));
}

CycNumber RibbonCategory::f_inv_entry(int i, int j, int k, int l, int f, int e) const {
    bool row_ok = admissible(i, j, e) && admissible(e, k, l);
    bool col_ok = admissible(j, k, f) && admissible(i, f, l);
    if (!row_ok || !col_ok) return CycNumber(0);
    if (i == unit || j == unit || k == unit) return CycNumber(1);
    auto it = F.find({i, j, k, l});
    if (it == F.end()) return CycNumber(1);
    const FMatrix& fm = it->second;
    auto re = std::find(fm.row_labels.begin(), fm.row_labels.end(), e);
    auto cf = std::find(fm.col_labels.begin(), fm.col_labels.end(), f);
    if (re == fm.row_labels.end() || cf == fm.col_labels.end())
        throw CatError("F-matrix index out of range");
    return fm.inv_at(static_cast<int>(cf - fm.col_labels.begin()),
                     static_cast<int>(re - fm.row_labels.begin()));
}

CycNumber RibbonCategory::quantum_dim(int i) const {
    const CycNumber& d = qdim[i];
    if (!qdim_input.empty() && qdim_input[i] != d)
        throw CatError("stored qdim disagrees with the loop value at label '" + label(i) + "'");
    return d;
}

bool RibbonCategory::multiplicity_free() const {
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j)
            for (int k = 0; k < rank(); ++k)
                if (fusion(i, j, k) > 1) return false;
    return true;
}

void RibbonCategory::require_multiplicity_free() const {
    if (!multiplicity_free())
        throw CatError("multiplicity not supported: category '" + name +
                       "' has a fusion multiplicity greater than one");
}

int RibbonCategory::pair_label(int u, int w) const {
    if (!product) throw CatError("category '" + name + "' is not a Deligne product");
    return u * product->right->rank() + w;
}

std::pair<int, int> RibbonCategory::factor_labels(int pair) const {
    if (!product) throw CatError("category '" + name + "' is not a Deligne product");
    int rr = product->right->rank();
    return {pair / rr, pair % rr};
}

void RibbonCategory::finalize() {
    int r = rank();
    if (r == 0) throw CatError("category has no labels");
    if (unit < 0 || unit >= r) throw CatError("unit label out of range");
    if (static_cast<int>(dual.size()) != r) throw CatError("dual map has wrong size");
    for (int i = 0; i < r; ++i) {
        if (dual[i] < 0 || dual[i] >= r || dual[dual[i]] != i)
            throw CatError("dual map is not an involution at label '" + label(i) + "'");
    }
    if (dual[unit] != unit) throw CatError("dual of the unit is not the unit");

    // fusion-ring axioms
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (fusion(unit, i, j) != (i == j ? 1 : 0) || fusion(i, unit, j) != (i == j ? 1 : 0))
                throw CatError("unit axiom violated at N(" + triple_str(*this, unit, i, j) + ")");
            if (fusion(i, j, unit) != (j == dual[i] ? 1 : 0))
                throw CatError("duality axiom violated at N(" + triple_str(*this, i, j, unit) + ")");
        }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                if (fusion(i, j, k) != fusion(j, i, k))
                    throw CatError("fusion commutativity violated at N(" +
                                   triple_str(*this, i, j, k) + ")");
                for (int l = 0; l < r; ++l) {
                    long lhs = 0, rhs = 0;
                    for (int e = 0; e < r; ++e) lhs += fusion(i, j, e) * fusion(e, k, l);
                    for (int f = 0; f < r; ++f) rhs += fusion(j, k, f) * fusion(i, f, l);
                    if (lhs != rhs)
                        throw CatError("fusion associativity violated at (" + label(i) + "," +
                                       label(j) + "," + label(k) + ";" + label(l) + ")");
                }
            }

    if (static_cast<int>(theta.size()) != r) throw CatError("twist map has wrong size");

    // F-matrix shapes and inverses
    for (auto& [key, fm] : F) {
        auto [i, j, k, l] = key;
        std::vector<int> want_rows, want_cols;
        for (int e = 0; e < r; ++e)
            if (admissible(i, j, e) && admissible(e, k, l)) want_rows.push_back(e);
        for (int f = 0; f < r; ++f)
            if (admissible(j, k, f) && admissible(i, f, l)) want_cols.push_back(f);
        if (fm.row_labels != want_rows || fm.col_labels != want_cols ||
            static_cast<int>(fm.m.size()) != fm.rows() * fm.cols())
            throw CatError("F-matrix shape mismatch at (" + label(i) + "," + label(j) + "," +
                           label(k) + ";" + label(l) + ")");
        if (fm.rows() != fm.cols())
            throw CatError("F-matrix is not square at (" + label(i) + "," + label(j) + "," +
                           label(k) + ";" + label(l) + ")");
        if ((i == unit || j == unit || k == unit)) {
            for (int a = 0; a < fm.rows(); ++a)
                for (int b = 0; b < fm.cols(); ++b)
                    if (fm.at(a, b) != CycNumber(a == b ? 1 : 0))
                        throw CatError("unit F-matrix is not the identity at (" + label(i) + "," +
                                       label(j) + "," + label(k) + ";" + label(l) + ")");
        }
        fm.inv = invert(fm.m, fm.rows());
        if (fm.inv.empty())
            throw CatError("F-matrix is singular at (" + label(i) + "," + label(j) + "," +
                           label(k) + ";" + label(l) + ")");
    }
    // Admissible multi-dimensional F-blocks must be provided.
    if (multiplicity_free()) {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < r; ++k)
                    for (int l = 0; l < r; ++l) {
                        if (i == unit || j == unit || k == unit) continue;
                        int dim = 0;
                        for (int e = 0; e < r; ++e)
                            if (admissible(i, j, e) && admissible(e, k, l)) ++dim;
                        if (dim > 1 && F.find({i, j, k, l}) == F.end())
                            throw CatError("missing F-matrix at (" + label(i) + "," + label(j) +
                                           "," + label(k) + ";" + label(l) + ")");
                    }
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < r; ++k) {
                    if (i == unit || j == unit || !admissible(i, j, k)) continue;
                    if (R.find({i, j, k}) == R.end())
                        throw CatError("missing R-symbol " + triple_str(*this, i, j, k));
                }
    }

    // Duality data: lambda_i from the snake relation, then the twisted
    // evaluation coefficient and the loop value.
    coev.assign(r, CycNumber(0));
    pivotal.assign(r, CycNumber(0));
    qdim.assign(r, CycNumber(0));
    for (int x = 0; x < r; ++x) {
        int xs = dual[x];
        CycNumber finv = f_inv_entry(x, xs, x, x, unit, unit);
        if (finv.is_zero())
            throw CatError("degenerate duality data at label '" + label(x) + "'");
        coev[x] = finv.inverse();
        CycNumber rxxs = r_symbol(x, xs, unit);
        pivotal[x] = theta[x].inverse() * r_symbol(xs, x, unit).inverse();
        qdim[x] = coev[x] * theta[x] * rxxs;
    }
    if (!pivotal_input.empty()) {
        for (int x = 0; x < r; ++x)
            if (pivotal_input[x] != pivotal[x])
                throw CatError("stored pivotal coefficient disagrees with the braiding-derived "
                               "value at label '" + label(x) + "'");
    }
}

int TreeBasis::index_of(const TreeVec& t) const {
    for (size_t i = 0; i < trees.size(); ++i)
        if (trees[i] == t) return static_cast<int>(i);
    return -1;
}

namespace {
void enumerate_rec(const RibbonCategory& C, const Expr& e,
                   std::vector<std::pair<int, TreeVec>>& out) {
    if (e.is_leaf()) {
        out.push_back({e.label, {}});
        return;
    }
    std::vector<std::pair<int, TreeVec>> la, lb;
    enumerate_rec(C, e.kids[0], la);
    enumerate_rec(C, e.kids[1], lb);
    for (const auto& [a, ta] : la)
        for (const auto& [b, tb] : lb)
            for (int k = 0; k < C.rank(); ++k) {
                int n = C.fusion(a, b, k);
                if (n == 0) continue;
                if (n > 1) C.require_multiplicity_free();
                TreeVec t;
                t.reserve(1 + ta.size() + tb.size());
                t.push_back(k);
                t.insert(t.end(), ta.begin(), ta.end());
                t.insert(t.end(), tb.begin(), tb.end());
                out.push_back({k, std::move(t)});
            }
}
}  // namespace

std::vector<std::pair<int, TreeVec>> enumerate_trees(const RibbonCategory& C, const Expr& expr) {
    std::vector<std::pair<int, TreeVec>> out;
    enumerate_rec(C, expr, out);
    return out;
}

TreeBasis hom_basis(const RibbonCategory& C, const Expr& expr, int total) {
    TreeBasis basis;
    for (auto& [c, t] : enumerate_trees(C, expr))
        if (c == total) basis.trees.push_back(t);
    return basis;
}

}  // namespace mirrorcat
