#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "trinerve/abgrp.hpp"
#include "trinerve/emac.hpp"
#include "trinerve/simplicial.hpp"

namespace trinerve {

// A 2-cell (σ, x, u): object σ ∈ G, endo 1-cell x ∈ A on σ, endo 2-cell u ∈ B on x.  Identities of
// lower cells use the zero of A or B.
struct Cell {
    int object = 0;
    std::uint32_t one = 0;
    std::uint32_t two = 0;
    bool operator==(const Cell&) const = default;
};

// The bicategorical group with one object per element of G built from Postnikov data.  Every
// structure constant is an expression in t and h; nothing is validated here (see realize).
class BicatGroup {
public:
    explicit BicatGroup(std::shared_ptr<const PostnikovData> data);

    const PostnikovData& data() const { return *data_; }
    std::shared_ptr<const PostnikovData> data_ptr() const { return data_; }
    const ModuleTable& a() const { return a_; }
    const ModuleTable& b() const { return b_; }

    // Cell operations; vertical and horizontal composites throw StructuralError on ill-typed input.
    Cell unit(int object) const { return {object, 0, 0}; }
    Cell vertical(const Cell& u, const Cell& v) const;
    Cell horizontal(const Cell& u, const Cell& v) const;
    Cell tensor(const Cell& u, const Cell& v) const;
    int quasi_inverse(int object) const { return data_->G.inv(object); }

    std::uint32_t t(std::uint32_t x1, std::uint32_t x2, std::uint32_t x3, std::uint32_t x4, std::uint32_t x5,
                    std::uint32_t x6, int s1, int s2, int s3, int s4) const;
    // (x∘y)∘z ⇒ x∘(y∘z) in the hom-category of σ
    std::uint32_t assoc(int s, std::uint32_t x, std::uint32_t y, std::uint32_t z) const;
    std::uint32_t chi(int s, int tau, std::uint32_t y, std::uint32_t y2) const;
    std::uint32_t interchange(int s, int tau, std::uint32_t x, std::uint32_t y) const;
    std::uint32_t chibar(int s, int tau, std::uint32_t x, std::uint32_t x2) const;
    // the associativity 1-cell (σ⊗τ)⊗γ → σ⊗(τ⊗γ)
    std::uint32_t assoc_cell(int s, int tau, int g) const { return data_->h_at(s, tau, g); }
    std::uint32_t Phi(int s, int tau, int g, std::uint32_t z) const;
    std::uint32_t Psi(int s, int tau, int g, std::uint32_t y) const;
    std::uint32_t Omega(int s, int tau, int g, std::uint32_t x) const;
    std::uint32_t pentagonator(int s, int tau, int g, int d) const;

    // Difference of the two pastings of a 4-simplex of the nerve from the boundary of its 3-cells.
    // x0 lists F_012, F_013, F_014, F_023, F_024, F_034.  A 4-simplex exists iff
    // F_0123 − F_0124 + F_0134 − F_0234 + σ1·F_1234 + cr1_cost = 0.
    std::uint32_t cr1_cost(const std::array<int, 4>& s, const std::array<std::uint32_t, 6>& x0) const;

    // Copy with one associator value replaced.
    BicatGroup with_assoc(int s, std::uint32_t x, std::uint32_t y, std::uint32_t z, std::uint32_t value) const;

private:
    std::shared_ptr<const PostnikovData> data_;
    ModuleTable a_, b_;
    std::map<std::array<std::uint32_t, 4>, std::uint32_t> assoc_override_;
};

// Throws VerificationError when h or t is not a valid cocycle.
BicatGroup realize(const PostnikovData& P);

struct CoherenceFamily {
    std::string name;
    std::uint64_t checked = 0;
    std::string witness;  // empty when every instance holds
};
struct CoherenceReport {
    std::vector<CoherenceFamily> families;
    bool ok() const;
    std::string summary() const;
};

// Exhaustive over all cell tuples: the pentagon for the hom-associator, monoidality of both
// whiskerings (χ̄ on the right, χ on the left), the two hexagons and naturality of the interchange,
// invertibility of structure cells and strict units.
CoherenceReport coherence_check(const BicatGroup& Bg);

// Entries of a p-simplex use simplex_layout(p, 4): vertices (all 0), F_ij ∈ G, F_ijk ∈ A, F_ijkl ∈ B.
ImplicitSSet bicatgroup_nerve_implicit(std::shared_ptr<const BicatGroup> Bg);
// Dimensions ≤ min(N, 4) enumerated, dimension 5 from the coskeleton.
Materialized nerve_of_bicatgroup(const BicatGroup& Bg, int N = 4);

// The coordinate change of a nerve simplex into M, p ≤ 4.
Element phi_element(const PostnikovData& P, int p, const Element& x);
// φ from the nerve to M = build_M(target), on dimensions ≤ N (N = 5 by boundary).
SimplicialMapData phi_map(const BicatGroup& Bg, const PostnikovData& target, int N = 4);
SimplicialMapData phi(const PostnikovData& P, int N = 4);

// The 4-cocycle cut out by the nerve: t'(φ(F)) = −cr1_cost(F).  φ is an isomorphism onto
// build_M of these data.
PostnikovData nerve_cocycle(const BicatGroup& Bg);

// π_1 = objects up to equivalence under ⊗, π_2 = autoequivalences of the unit object up to 2-cells
// under horizontal composition, π_3 = automorphisms of the unit 1-cell under vertical composition.
std::array<FiniteGroup, 3> bicatgroup_homotopy(const BicatGroup& Bg);

}  // namespace trinerve
