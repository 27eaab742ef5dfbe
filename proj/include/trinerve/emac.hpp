#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "trinerve/abgrp.hpp"
#include "trinerve/cocycle.hpp"
#include "trinerve/simplicial.hpp"

namespace trinerve {

// K(A,n), n in {1,2,3}: p-simplices are the normalized n-cocycles on Δ[p] (layout of simplex_cocycles),
// faces and degeneracies by precomposition.
ImplicitSSet k_complex_implicit(const FgAbGroup& A, int n);
TruncSSet k_complex(const FgAbGroup& A, int n, int N);

// The carrier identification of the geometric nerve of Σ²A with K(A,3) (a simplex goes to its 3-cell
// coordinates), on dimensions ≤ N ≤ 5.
SimplicialMapData suspension_nerve_to_k3(const FgAbGroup& A, int N);

// (G, A, B, h, t) with module elements stored as element indices of the underlying finite groups.
// h is indexed by (σ1, σ2, σ3), t by (x1, ..., x6, σ1, ..., σ4), both mixed radix with the first
// coordinate most significant.
struct PostnikovData {
    FiniteGroup G;
    GModule A, B;
    std::vector<std::uint32_t> h;
    std::vector<std::uint32_t> t;

    static PostnikovData zero(const FiniteGroup& G, const GModule& A, const GModule& B);

    std::uint32_t n_group() const { return static_cast<std::uint32_t>(G.order()); }
    std::uint32_t n_a() const { return static_cast<std::uint32_t>(A.coeff().order()); }
    std::uint32_t n_b() const { return static_cast<std::uint32_t>(B.coeff().order()); }
    std::size_t h_index(int s1, int s2, int s3) const;
    std::size_t t_index(const std::array<std::uint32_t, 6>& x, const std::array<int, 4>& s) const;
    std::array<std::uint32_t, 6> t_x(std::size_t index) const;
    std::array<int, 4> t_sigma(std::size_t index) const;
    std::uint32_t h_at(int s1, int s2, int s3) const { return h[h_index(s1, s2, s3)]; }
    std::uint32_t t_at(const std::array<std::uint32_t, 6>& x, const std::array<int, 4>& s) const {
        return t[t_index(x, s)];
    }
    // Throws InputError on mismatched groups or table sizes.
    void check_shape() const;
};

// h as an element-index table, from a 3-cochain on group_category(A.group()).
std::vector<std::uint32_t> h_table(const GModule& A, const Cochain& h);
Cochain h_cochain(const GModule& A, const std::vector<std::uint32_t>& h);

// Face and degeneracy formulas of M = K(B,3) ×_t (K(A,2) ×_h K(G,1)) in dimensions ≤ 4.
// Simplices are (σ1), (x1, σ1, σ2), (u1, x1, x2, x3, σ1, σ2, σ3), (u1..u4, x1..x6, σ1..σ4); with
// fibre = false the u coordinates are dropped, giving the base W = K(A,2) ×_h K(G,1).
class TwistedComplex {
public:
    TwistedComplex(std::shared_ptr<const PostnikovData> data, bool fibre);

    const PostnikovData& data() const { return *data_; }
    bool fibre() const { return fibre_; }
    std::size_t width(int dim) const;
    std::uint64_t carrier_size(int dim) const;
    std::vector<Element> carrier(int dim) const;
    Element face(int dim, const Element& x, int i) const;
    Element degeneracy(int dim, const Element& x, int j) const;
    ImplicitSSet implicit() const;

private:
    std::shared_ptr<const PostnikovData> data_;
    bool fibre_;
    ModuleTable a_, b_;
};

struct IdentityCheck {
    std::uint64_t checked = 0;
    std::string violation;  // empty when every identity holds
    bool ok() const { return violation.empty(); }
};

// All simplicial identities among the explicit formulas in dimensions ≤ top (top ≤ 4), checked
// directly on tuples.
IdentityCheck check_twisted_identities(const TwistedComplex& X, int top = 4);

// W up to dimension N ≤ 5.  Dimensions ≤ 4 come from the formulas (dimension 4 is checked against the
// identities, which is where the cocycle condition on h lives), dimension 5 from the coskeleton.
Materialized build_W(const GModule& A, const std::vector<std::uint32_t>& h, int N = 5);
bool validate_h(const GModule& A, const std::vector<std::uint32_t>& h);

// t vanishes on every degenerate 4-simplex of W.
bool is_normalized_t(const PostnikovData& P);
struct TCheck {
    std::uint64_t checked = 0;
    Element witness;  // the W tuples of the six faces of a 5-simplex with δt ≠ 0, concatenated
    std::string message;
    bool ok() const { return message.empty(); }
};
// σ1·t(d0 w) − t(d1 w) + t(d2 w) − t(d3 w) + t(d4 w) − t(d5 w) = 0 for all 5-simplices w of W.
TCheck check_t(const PostnikovData& P);
bool validate_t(const PostnikovData& P);

// M up to dimension N ≤ 5 (dimension 5 from the coskeleton).  Throws VerificationError naming the
// failed condition when (h, t) is not valid.
Materialized build_M(const PostnikovData& P, int N = 4);

// Homotopy groups π_1..π_max_n of a reduced minimal Kan complex (index n - 1).  Needs dimension
// max_n + 1.  Throws VerificationError with a witness when the complex is not reduced, not Kan on
// the horns used, or not minimal.
std::vector<FiniteGroup> minimal_homotopy_groups(const TruncSSet& X, int max_n, KanMode kan = KanMode::all());

// {"G": group, "A": module, "B": module, "h": cochain, "t": {"order": "x1..x6,s1..s4", "entries": [...]}}
nlohmann::json postnikov_to_json(const PostnikovData& P);
PostnikovData postnikov_from_json(const nlohmann::json& j);

}  // namespace trinerve
