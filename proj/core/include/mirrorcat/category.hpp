// Skeletal ribbon category data: labels, duals, fusion multiplicities,
// F/R-symbols, twists, pivotal coefficients.

#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mirrorcat/cyclotomic.hpp"
#include "mirrorcat/expr.hpp"

namespace mirrorcat {

class CatError : public std::runtime_error {
public:
    explicit CatError(const std::string& what) : std::runtime_error(what) {}
};

// F-symbol matrix for one admissible (i,j,k;l): the matrix of the associator
// A_{i,j,k} : i x (j x k) -> (i x j) x k on Hom(-, l), written in the fusion
// tree bases.  Rows are indexed by the (i,j)-channel e of the target basis,
// columns by the (j,k)-channel f of the source basis:
//
//   A |i (jk)_f ; l>  =  sum_e  m[e][f] |(ij)_e k ; l>.
struct FMatrix {
    std::vector<int> row_labels;  // admissible e, ascending
    std::vector<int> col_labels;  // admissible f, ascending
    std::vector<CycNumber> m;     // row-major, rows x cols
    std::vector<CycNumber> inv;   // inverse matrix, cols x rows (filled on load)

    int rows() const { return static_cast<int>(row_labels.size()); }
    int cols() const { return static_cast<int>(col_labels.size()); }
    const CycNumber& at(int r, int c) const { return m[r * cols() + c]; }
    const CycNumber& inv_at(int r, int c) const { return inv[r * rows() + c]; }
};

class RibbonCategory {
public:
    std::string name;
    long cyc_order = 1;  // ambient cyclotomic order declared by the data file
    std::vector<std::string> label_names;
    int unit = 0;
    std::vector<int> dual;
    std::vector<std::vector<std::vector<int>>> fusion_table;  // N[i][j][k]
    std::map<std::array<int, 4>, FMatrix> F;                  // (i,j,k,l)
    std::map<std::array<int, 3>, CycNumber> R;                // (i,j,k), scalar
    std::vector<CycNumber> theta;
    std::vector<CycNumber> pivotal_input;  // as given in the data file (may be empty)
    std::vector<CycNumber> qdim_input;     // as given in the data file (may be empty)

    // Derived at finalize():
    std::vector<CycNumber> coev;     // lambda_i: coefficient of the coevaluation i_x
    std::vector<CycNumber> pivotal;  // kappa_i: coefficient of the twisted evaluation
    std::vector<CycNumber> qdim;     // d_i = lambda_i * theta_i * R^{i,i*}_0

    // Deligne-product metadata (set by deligne_product).
    struct ProductInfo {
        std::shared_ptr<const RibbonCategory> left, right;
    };
    std::optional<ProductInfo> product;

    int rank() const { return static_cast<int>(label_names.size()); }
    int label_index(const std::string& name) const;

    int fusion(int i, int j, int k) const { return fusion_table[i][j][k]; }
    bool admissible(int i, int j, int k) const { return fusion(i, j, k) > 0; }

    // R-symbol with strict-unit defaults (R^{0j}_j = R^{i0}_i = 1).
    CycNumber r_symbol(int i, int j, int k) const;

    // F-symbol entries with strict-unit and one-dimensional defaults.
    CycNumber f_entry(int i, int j, int k, int l, int e, int f) const;
    CycNumber f_inv_entry(int i, int j, int k, int l, int f, int e) const;

    CycNumber quantum_dim(int i) const;  // cross-checks stored qdim
    CycNumber monodromy(int i, int j, int k) const { return r_symbol(j, i, k) * r_symbol(i, j, k); }

    bool multiplicity_free() const;
    void require_multiplicity_free() const;

    // Product-category helpers (require product).
    int pair_label(int u, int w) const;
    std::pair<int, int> factor_labels(int pair) const;

    // Checks fusion-ring axioms, fills in F inverses, derives coev/pivotal/qdim.
    // Throws CatError naming the violated axiom.
    void finalize();

    std::string label(int i) const { return label_names[i]; }
};

using CategoryPtr = std::shared_ptr<const RibbonCategory>;

// Ordered fusion-tree basis of Hom(expr, total).
struct TreeBasis {
    std::vector<TreeVec> trees;
    int index_of(const TreeVec& t) const;
    int dim() const { return static_cast<int>(trees.size()); }
};

TreeBasis hom_basis(const RibbonCategory& C, const Expr& expr, int total);

// All (total label, tree) pairs for an expression, in enumeration order.
std::vector<std::pair<int, TreeVec>> enumerate_trees(const RibbonCategory& C, const Expr& expr);

}  // namespace mirrorcat
