#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace trinerve {

using Element = std::vector<std::int64_t>;

// Z^rank + Z/d_1 + ... + Z/d_s.  Elements are coordinate vectors, free part first.
class FgAbGroup {
public:
    FgAbGroup() = default;
    FgAbGroup(int rank, std::vector<std::int64_t> torsion);
    static FgAbGroup cyclic(std::int64_t n);
    static FgAbGroup trivial() { return {}; }

    int rank() const { return rank_; }
    const std::vector<std::int64_t>& torsion() const { return torsion_; }
    std::size_t length() const { return static_cast<std::size_t>(rank_) + torsion_.size(); }
    bool is_finite() const { return rank_ == 0; }
    std::uint64_t order() const;  // requires finite

    Element zero() const { return Element(length(), 0); }
    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element scale(const Element& a, std::int64_t k) const;
    Element reduce(Element a) const;
    bool is_zero(const Element& a) const;

    // Validity: right length and torsion coordinates already reduced.
    bool is_valid(const Element& a) const;
    void check(const Element& a) const;

    // Mixed-radix index of an element of a finite group, matching lexicographic order.
    std::uint64_t index_of(const Element& a) const;
    Element element_at(std::uint64_t index) const;

    std::string describe() const;
    bool operator==(const FgAbGroup&) const = default;

private:
    int rank_ = 0;
    std::vector<std::int64_t> torsion_;
};

std::vector<Element> enumerate_elements(const FgAbGroup& g);

// Multiplication table over 0..n-1 with identity 0.
class FiniteGroup {
public:
    FiniteGroup();  // trivial group
    explicit FiniteGroup(std::vector<std::vector<int>> table);
    static FiniteGroup cyclic(int n);
    static FiniteGroup from_abelian(const FgAbGroup& a);
    static FiniteGroup trivial() { return FiniteGroup(); }

    int order() const { return n_; }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    int identity() const { return 0; }
    bool is_abelian() const;
    int element_order(int a) const;
    std::vector<std::vector<int>> table() const;
    void check_index(int a) const;

    bool operator==(const FiniteGroup& o) const { return n_ == o.n_ && table_ == o.table_; }

private:
    int n_;
    std::vector<int> table_;
    std::vector<int> inverse_;
};

std::vector<int> enumerate_elements(const FiniteGroup& g);

// Invariant factors d_1 | d_2 | ... of a finite abelian group; empty for the trivial group.
std::vector<std::int64_t> abelian_invariants(const FiniteGroup& g);
std::vector<std::int64_t> abelian_invariants(const FgAbGroup& a);
bool are_isomorphic(const FiniteGroup& g, const FiniteGroup& h);

// A finitely generated abelian group with an action of a finite group by
// integer matrices (column convention: act(g, a) = M_g * a).
class GModule {
public:
    GModule() = default;
    GModule(FiniteGroup group, FgAbGroup coeff, std::vector<std::vector<std::vector<std::int64_t>>> action);
    static GModule trivial(FiniteGroup group, FgAbGroup coeff);

    const FiniteGroup& group() const { return group_; }
    const FgAbGroup& coeff() const { return coeff_; }
    const std::vector<std::vector<std::vector<std::int64_t>>>& action() const { return action_; }
    bool is_trivial_action() const;

    Element act(int g, const Element& a) const;

private:
    FiniteGroup group_;
    FgAbGroup coeff_;
    std::vector<std::vector<std::vector<std::int64_t>>> action_;
};

Element act(const GModule& m, int g, const Element& a);

// Dense arithmetic over the element indices of a finite module.  Index 0 is zero.
struct ModuleTable {
    int n_group = 1;
    std::uint32_t n = 1;
    std::vector<std::uint32_t> add_;  // n*n
    std::vector<std::uint32_t> neg_;
    std::vector<std::uint32_t> act_;  // n_group*n

    explicit ModuleTable(const GModule& m);
    ModuleTable() : add_{0}, neg_{0}, act_{0} {}

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * n + b]; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add_[a * n + neg_[b]]; }
    std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
    std::uint32_t act(int g, std::uint32_t a) const { return act_[static_cast<std::uint32_t>(g) * n + a]; }
};

// {"rank": r, "torsion": [...]}, {"table": [[...]]}, {"group": ..., "coeff": ..., "action": [...]}
nlohmann::json fgab_to_json(const FgAbGroup& a);
FgAbGroup fgab_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const nlohmann::json& j);
nlohmann::json module_to_json(const GModule& m);
GModule module_from_json(const nlohmann::json& j);

}  // namespace trinerve
