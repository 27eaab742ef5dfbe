#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "trinerve/abgrp.hpp"
#include "trinerve/cat.hpp"
#include "trinerve/simplicial.hpp"

namespace trinerve {

// Raw tables of a finite strict n-category, n in {1,2,3}.  Cells of each dimension are 0..cells[k]-1.
// source[k][x], target[k][x] are (k-1)-cells (k >= 1); identity[k][x] is the identity (k+1)-cell on x.
// comp[k][j] is the dense cells[k]^2 table of a ∘_j b (a after b), -1 where undefined.
struct StrictCatData {
    int dim = 3;
    std::vector<int> cells;
    std::vector<std::vector<int>> source, target, identity;
    std::vector<std::vector<std::vector<int>>> comp;
};

class StrictCat {
public:
    StrictCat() = default;
    explicit StrictCat(StrictCatData data);

    int dim() const { return d_.dim; }
    int count(int k) const { return d_.cells[k]; }
    int source(int k, int x) const { return d_.source[k][x]; }
    int target(int k, int x) const { return d_.target[k][x]; }
    int identity(int k, int x) const { return d_.identity[k][x]; }
    // iterated boundary down to dimension j < k
    int source_at(int k, int x, int j) const;
    int target_at(int k, int x, int j) const;
    // iterated identity from dimension k up to m >= k
    int lift(int k, int x, int m) const;
    bool composable(int k, int j, int a, int b) const { return source_at(k, a, j) == target_at(k, b, j); }
    int compose(int k, int j, int a, int b) const;
    // k-cells with the given (k-1)-dimensional source and target
    const std::vector<int>& between(int k, int s, int t) const;

    const StrictCatData& data() const { return d_; }
    bool operator==(const StrictCat& o) const;

protected:
    StrictCatData d_;
    std::vector<std::map<std::pair<int, int>, std::vector<int>>> between_;
};

class Strict2Cat : public StrictCat {
public:
    Strict2Cat() = default;
    explicit Strict2Cat(StrictCatData data);
};

class Strict3Cat : public StrictCat {
public:
    Strict3Cat() = default;
    explicit Strict3Cat(StrictCatData data);
};

// Fills the composition tables from a function (returns -1 when undefined is not expected).
StrictCatData tabulate(int dim, std::vector<int> cells, std::vector<std::vector<int>> source,
                       std::vector<std::vector<int>> target, std::vector<std::vector<int>> identity,
                       const std::function<int(int k, int j, int a, int b)>& compose);

Strict3Cat suspension_sigma2(const FgAbGroup& A);
Strict3Cat category_as_3cat(const FiniteCategory& C);
Strict2Cat category_as_2cat(const FiniteCategory& C);
Strict3Cat as_3cat(const Strict2Cat& B);
// 2-cells between parallel 1-cells f, g are pairs (f, g, a) with a in A2; 3-cells likewise over A3.
// Every composition adds the labels.
Strict2Cat decorated_2cat(const FiniteCategory& C, const FgAbGroup& A2);
Strict3Cat decorated_3cat(const FiniteCategory& C, const FgAbGroup& A2, const FgAbGroup& A3);
// One object, one 1-cell, 2-cells Z/2, identity 3-cells.
Strict3Cat two_cell_z2();

// Pasting terms: atomic cells, identities and n-ary compositions along a j-boundary.  Lower
// dimensional arguments of a composition are lifted by identities (whiskering).
struct Paste {
    enum class Kind { Cell, Identity, Compose };
    Kind kind = Kind::Cell;
    int dim = 0;
    int id = 0;
    int along = 0;
    std::vector<Paste> args;

    static Paste cell(int k, int id) { return {Kind::Cell, k, id, 0, {}}; }
    static Paste ident(Paste t) { return {Kind::Identity, 0, 0, 0, {std::move(t)}}; }
    static Paste compose(int j, std::vector<Paste> ts) { return {Kind::Compose, 0, 0, j, std::move(ts)}; }
};

struct CellRef {
    int dim = 0;
    int id = 0;
    bool operator==(const CellRef&) const = default;
};

// Throws StructuralError on ill-typed terms or when two bracketings of an n-ary composite differ.
CellRef pasting_eval(const StrictCat& T, const Paste& t);

// x_1 ⊗ (x_2 ⊗ (... ⊗ x_p)) along 0-cells, for k-cells.
int or_tensor(const StrictCat& T, int k, const std::vector<int>& cells);
int or_tensor_left(const StrictCat& T, int k, const std::vector<int>& cells);

struct GraphRep {
    std::shared_ptr<const Strict3Cat> target;
    std::vector<int> on_vertices;
    std::vector<int> on_edges;  // 1-cells; edge (s, t) goes to a 1-cell from F s to F t

    void check(const DiGraph& g) const;
    bool operator==(const GraphRep& o) const { return on_vertices == o.on_vertices && on_edges == o.on_edges; }
};

// Representation of a finite category in a strict 3-category.  Pair and triple data are keyed
// by composable arrows (a, b) with a∘b, and (a, b, c).
struct Rep3 {
    std::shared_ptr<const FiniteCategory> source;
    std::shared_ptr<const Strict3Cat> target;
    std::vector<int> on_objects;
    std::vector<int> on_arrows;                    // 1-cells
    std::vector<int> unit;                         // 2-cell F_i : 1 => F(1_i)
    std::map<std::pair<int, int>, int> pair;       // 2-cell F_{a,b} : Fa∘Fb => F(ab)
    std::map<std::array<int, 3>, int> triple;      // 3-cell F_{a,b,c}
    std::vector<int> left_unit;                    // 3-cell hat F_a : F_{1,a}·(F_i∘1) => 1
    std::vector<int> right_unit;                   // 3-cell tilde F_a : F_{a,1}·(1∘F_j) => 1
};

struct RepReport {
    std::uint64_t typing_checked = 0, cr1_checked = 0, cr2_checked = 0;
    bool unitary = false;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

RepReport validate_rep3(const Rep3& F, std::size_t max_violations = 20);
bool is_unitary(const Rep3& F);

Rep3 extend_rep_L(const GraphRep& f, const DiGraph& g);
// Restriction along the generating edges of the free category the representation lives on.
GraphRep restrict_rep_R(const Rep3& F, const FreeCategory& free);

// Trisimplicial set: axis 0 composes along 0-cells, axis 1 along 1-cells, axis 2 along 2-cells.
MultiSSet triple_nerve(std::shared_ptr<const Strict3Cat> T);

// Simplices of dimension p are listed by vertex data F_i, then F_ij (i<j), then F_ijk, then F_ijkl,
// each block in lexicographic order of indices.
ImplicitSSet duskin_nerve_implicit(std::shared_ptr<const Strict2Cat> B);
TruncSSet duskin_nerve(const Strict2Cat& B, int N);
ImplicitSSet geometric_nerve_implicit(std::shared_ptr<const Strict3Cat> T);
// Dimensions up to 4 are enumerated; dimension 5 comes from the coskeleton.
Materialized geometric_nerve_full(std::shared_ptr<const Strict3Cat> T, int N);
TruncSSet geometric_nerve_3(const Strict3Cat& T, int N);

// The unitary representation of [p] encoded by a p-simplex of the geometric nerve.
Rep3 simplex_as_rep(std::shared_ptr<const Strict3Cat> T, int p, const Element& x);

// Index of an increasing index tuple among the blocks described above.
struct SimplexLayout {
    int p = 0;
    int levels = 4;
    std::vector<std::vector<std::vector<int>>> subsets;  // subsets[m] = increasing (m+1)-tuples
    std::vector<int> offset;
    std::vector<int> index_of_mask;  // bitmask -> position in the element
    explicit SimplexLayout(int p, int levels);
    int size() const { return offset.back(); }
    int at(std::initializer_list<int> idx) const;
    int at_mask(unsigned mask) const { return index_of_mask[mask]; }
};
const SimplexLayout& simplex_layout(int p, int levels);

nlohmann::json strict_cat_to_json(const StrictCat& T);
StrictCatData strict_cat_data_from_json(const nlohmann::json& j);

}  // namespace trinerve
