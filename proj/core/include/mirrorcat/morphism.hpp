// Morphisms between iterated tensor products, represented blockwise over the
// total simple label in fusion-tree bases, and the structural moves
// (associators, braidings, twists, cups/caps, strict-unit bookkeeping) that
// generate the graphical calculus.

#pragma once

#include <functional>
#include <map>
#include <optional>

#include "mirrorcat/category.hpp"

namespace mirrorcat {

// Small dense matrix over the cyclotomic field.
struct CMat {
    int rows = 0, cols = 0;
    std::vector<CycNumber> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    static CMat eye(int n);

    CycNumber& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const CycNumber& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    bool is_zero() const;
    CMat mul(const CMat& rhs) const;
    CMat scaled(const CycNumber& s) const;
    bool operator==(const CMat&) const = default;
};

enum class MoveKind {
    Associator,         // i x (j x k) -> (i x j) x k
    AssociatorInverse,  // (i x j) x k -> i x (j x k)
    Braid,              // A x B -> B x A via R_{A,B}
    BraidInverse,       // A x B -> B x A via R_{B,A}^{-1}
    Twist,              // theta on the subtree at pos
    TwistInverse,
    Cup,                // insert (x x*) fusing to the unit, coefficient lambda_x
    Cap,                // contract (x* x) -> unit leaf, coefficient 1
    UnitInsert,         // S -> S x 1  (or 1 x S with on_left)
    UnitRemove,         // S x 1 -> S  (or 1 x S -> S)
    Fuse,               // (a b) -> c along a unique fusion channel
    Split,              // c -> (a b), inverse of Fuse
};

struct Move {
    MoveKind kind;
    Pos pos;            // subtree the move acts at
    int label = -1;     // Cup: x;  Split: the left label a
    int label2 = -1;    // Split: the right label b
    bool on_left = false;  // Cup/UnitInsert: insert to the left of the subtree
};

class Morphism {
public:
    Morphism() = default;

    static Morphism identity(CategoryPtr C, Expr e);
    static Morphism zero(CategoryPtr C, Expr src, Expr tgt);
    // x (x) y -> z with the given coefficient on the unique fusion tree.
    static Morphism elementary(CategoryPtr C, int x, int y, int z, const CycNumber& coeff);
    // Inclusion leaf(c) -> expr selecting one fusion-tree basis vector.
    static Morphism basis_column(CategoryPtr C, Expr expr, int total, const TreeVec& tree);
    // Projection expr -> leaf(c) onto one fusion-tree basis vector.
    static Morphism basis_row(CategoryPtr C, Expr expr, int total, const TreeVec& tree);

    const Expr& source() const { return src_; }
    const Expr& target() const { return tgt_; }
    const CategoryPtr& category() const { return C_; }

    // Structural move post-composed onto this morphism.
    Morphism moved(const Move& m) const;

    Morphism then(const Morphism& g) const;   // g o this
    Morphism scaled(const CycNumber& s) const;
    Morphism plus(const Morphism& g) const;

    bool equals(const Morphism& g) const;
    bool is_zero() const;

    // Block for a total label (zero matrix if absent).
    CMat block(int total) const;
    const std::map<int, CMat>& blocks() const { return blocks_; }

    // For endomorphisms: the scalar s with *this = s * Id, if one exists.
    std::optional<CycNumber> as_scalar() const;

    // A scalar morphism: source and target are the unit leaf.
    CycNumber scalar_value() const;

    std::string str() const;

private:
    CategoryPtr C_;
    Expr src_, tgt_;
    std::map<int, CMat> blocks_;  // total label -> dim Hom(tgt, c) x dim Hom(src, c)

    friend Morphism structural_move(const CategoryPtr& C, const Expr& e, const Move& m);
};

// The structural map itself, as a morphism from e to the moved expression.
Morphism structural_move(const CategoryPtr& C, const Expr& e, const Move& m);

inline Morphism compose(const Morphism& f, const Morphism& g) { return g.then(f); }
Morphism tensor(const Morphism& f, const Morphism& g);
inline bool equal(const Morphism& f, const Morphism& g) { return f.equals(g); }

inline Morphism apply_move(const Morphism& m, MoveKind kind, Pos pos) {
    return m.moved(Move{kind, std::move(pos)});
}

}  // namespace mirrorcat
