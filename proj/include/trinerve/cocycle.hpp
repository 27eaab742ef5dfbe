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

// Composable n-tuples (x_1, ..., x_n), x_i∘x_{i+1} defined, in lexicographic order of morphism ids.
std::vector<std::vector<int>> composable_tuples(const FiniteCategory& C, int n);

// Dense value table over composable n-tuples.  A group G is the one-object category group_category(G).
class Cochain {
public:
    Cochain() = default;
    Cochain(std::shared_ptr<const FiniteCategory> base, FgAbGroup coeff, int degree);

    const std::shared_ptr<const FiniteCategory>& base() const { return base_; }
    const FgAbGroup& coeff() const { return coeff_; }
    int degree() const { return degree_; }
    const std::vector<std::vector<int>>& tuples() const { return table_->tuples; }
    std::size_t size() const { return values_.size(); }
    const std::vector<Element>& values() const { return values_; }

    std::size_t index_of(const std::vector<int>& tuple) const;
    const Element& at(const std::vector<int>& tuple) const { return values_[index_of(tuple)]; }
    void set(const std::vector<int>& tuple, const Element& v);
    const Element& at_index(std::size_t i) const { return values_[i]; }
    void set_index(std::size_t i, const Element& v);

    bool is_normalized() const;
    bool is_zero() const;

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator-() const;
    bool operator==(const Cochain& o) const;

private:
    void check_compatible(const Cochain& o) const;

    struct Table {
        std::vector<std::vector<int>> tuples;
        std::map<std::vector<int>, std::size_t> index;
    };
    std::shared_ptr<const FiniteCategory> base_;
    std::shared_ptr<const Table> table_;
    FgAbGroup coeff_;
    int degree_ = 0;
    std::vector<Element> values_;
};

// All normalized cochains of a degree, in mixed-radix order of the free values; fn returning false stops.
void for_each_normalized_cochain(std::shared_ptr<const FiniteCategory> base, const FgAbGroup& coeff, int degree,
                                 const std::function<bool(const Cochain&)>& fn);
std::vector<Cochain> normalized_cochains(std::shared_ptr<const FiniteCategory> base, const FgAbGroup& coeff, int degree);

// Standard coboundary δc(x_1..x_{n+1}) = c(x_2..) + Σ(-1)^i c(..x_i x_{i+1}..) + (-1)^{n+1} c(x_1..x_n); n in {1,2,3}.
Cochain coboundary(const Cochain& c);
// Twisted group coboundary with the leading term acted on by x_1; c lives on group_category(A.group()).
Cochain coboundary_twisted(const Cochain& c, const GModule& A);
// The boundary of the representation 2-groupoid: ∂ = -δ, so ∂M(a,b) = M(ab) - M(a) - M(b).
Cochain rep_boundary(const Cochain& c);

// F(b,c,d) + F(a,bc,d) + F(a,b,c) = F(ab,c,d) + F(a,b,cd) for all composable (a,b,c,d).
bool is_z3_category(const Cochain& F);
// n = 3 only; n = 4 throws InputError (four-dimensional twisted cocycles are checked on the twisted base).
bool is_z_group_twisted(const GModule& A, int n, const Cochain& c);
// Witness tuple of the first violated relation of the twisted condition, empty if none.
std::vector<int> twisted_violation(const GModule& A, const Cochain& c);

// Normalized n-cocycles on Δ[p]: values on increasing (n+1)-subsets of [p] (lexicographic) whose
// alternating sums over (n+2)-subsets vanish.
std::vector<Element> simplex_cocycles(const FgAbGroup& A, int n, int p);
std::uint64_t simplex_cocycle_count(const FgAbGroup& A, int n, int p);

// Cells of the 2-groupoid of representations of I in Σ²A.
struct Rep1Cell {
    Cochain source, target, phi;  // target = source + ∂phi
    bool operator==(const Rep1Cell& o) const { return source == o.source && target == o.target && phi == o.phi; }
};
struct Rep2Cell {
    Rep1Cell source, target;
    Cochain m;  // target.phi = source.phi + ∂m
    bool operator==(const Rep2Cell& o) const { return source == o.source && target == o.target && m == o.m; }
};

Rep1Cell rep1_cell(const Cochain& F, const Cochain& phi);
Rep1Cell rep1_identity(const Cochain& F);
// psi after phi
Rep1Cell rep1_compose(const Rep1Cell& psi, const Rep1Cell& phi);
Rep1Cell rep1_inverse(const Rep1Cell& phi);
Rep2Cell rep2_cell(const Rep1Cell& phi, const Cochain& m);
Rep2Cell rep2_identity(const Rep1Cell& phi);
// n after m, along 1-cells
Rep2Cell rep2_vertical(const Rep2Cell& n, const Rep2Cell& m);
// n after m, along objects
Rep2Cell rep2_horizontal(const Rep2Cell& n, const Rep2Cell& m);
Rep2Cell rep2_inverse(const Rep2Cell& m);

struct Rep2Report {
    std::uint64_t objects = 0, one_cells = 0, two_cells = 0, checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Exhaustive check of the 2-groupoid axioms on Rep(I, Σ²A).
Rep2Report rep2_validate(std::shared_ptr<const FiniteCategory> I, const FgAbGroup& A, std::size_t max_violations = 20);

// A strict braided monoidal category: a finite category with strict tensor tables on objects
// and morphisms, unit object, and braiding morphisms c_{X,Y} : X⊗Y -> Y⊗X.
struct BraidedStrict {
    FiniteCategory category;
    std::vector<std::vector<int>> tensor_objects;
    std::vector<std::vector<int>> tensor_morphisms;
    int unit = 0;
    std::vector<std::vector<int>> braiding;

    // Throws StructuralError naming the first failed law (associativity, units, functoriality, hexagons, naturality).
    void check() const;
};

// One object, morphisms A under addition, trivial braiding.
BraidedStrict braided_from_abelian(const FgAbGroup& A);
// Objects A, identity morphisms only, trivial braiding.
BraidedStrict braided_discrete(const FgAbGroup& A);

// p-simplices: objects F_ijk on increasing triples, then morphisms F_ijkl : F_jkl⊗F_ijl -> F_ijk⊗F_ikl
// on increasing quadruples, each block lexicographic.
std::vector<Element> z3_braided(const BraidedStrict& C, int p);
ImplicitSSet z3_braided_implicit(std::shared_ptr<const BraidedStrict> C);

nlohmann::json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const nlohmann::json& j, std::shared_ptr<const FiniteCategory> base);

}  // namespace trinerve
