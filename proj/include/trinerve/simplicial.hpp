#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trinerve/abgrp.hpp"

namespace trinerve {

// A simplicial operator X_n -> X_m, i.e. a monotone map [m] -> [n], kept in the
// normal form s_{i_k}...s_{i_1} d_{j_1}...d_{j_l} with i_k > ... > i_1 and j_1 < ... < j_l.
class OperatorWord {
public:
    OperatorWord(int input_dim, std::vector<int> degeneracies, std::vector<int> faces);
    static OperatorWord identity(int n);
    static OperatorWord face(int n, int i);
    static OperatorWord degeneracy(int n, int j);
    static OperatorWord from_map(int n, const std::vector<int>& theta);

    int input_dim() const { return input_dim_; }
    int output_dim() const { return input_dim_ - static_cast<int>(faces_.size()) + static_cast<int>(degens_.size()); }
    const std::vector<int>& degeneracies() const { return degens_; }  // decreasing
    const std::vector<int>& faces() const { return faces_; }           // increasing
    std::vector<int> map() const;                                      // [output_dim] -> [input_dim]
    std::string to_string() const;

    bool operator==(const OperatorWord&) const = default;

private:
    int input_dim_;
    std::vector<int> degens_;
    std::vector<int> faces_;
};

// w1 after w2.
OperatorWord compose_words(const OperatorWord& w1, const OperatorWord& w2);

// s_J(root): bit j of `degens` means s_j occurs in the degeneracy word.
struct SimplexRef {
    std::uint32_t degens = 0;
    std::uint32_t id = 0;
    int dim = 0;

    int root_dim() const { return dim - std::popcount(degens); }
    bool degenerate() const { return degens != 0; }
    std::vector<int> degeneracy_word() const;
    bool operator==(const SimplexRef&) const = default;
};

namespace surj {
// Helpers on degeneracy masks; a mask on n positions encodes a surjection [n] -> [n - popcount].
inline std::uint32_t remove_bit(std::uint32_t mask, int i) {
    std::uint32_t low = mask & ((1u << i) - 1u);
    return low | ((mask >> (i + 1)) << i);
}
inline std::uint32_t insert_bit(std::uint32_t mask, int j) {
    std::uint32_t low = mask & ((1u << j) - 1u);
    return low | (1u << j) | ((mask >> j) << (j + 1));
}
// mask of (outer surjection) after (inner surjection); `inner` lives on `inner_positions` positions.
std::uint32_t compose(std::uint32_t inner, int inner_positions, std::uint32_t outer);
}  // namespace surj

using Label = Element;

class TruncSSet {
public:
    TruncSSet() : TruncSSet(0) {}
    explicit TruncSSet(int trunc);

    int trunc() const { return trunc_; }
    std::uint32_t count(int d) const { return d <= trunc_ ? counts_[d] : 0; }
    std::vector<std::uint32_t> counts() const { return counts_; }

    std::uint32_t add_simplex(int d, std::span<const SimplexRef> faces, Label label = {});
    const SimplexRef& face_entry(int d, std::uint32_t id, int i) const {
        return faces_[d][static_cast<std::size_t>(id) * (d + 1) + i];
    }
    void set_face_entry(int d, std::uint32_t id, int i, SimplexRef r);

    bool has_labels(int d) const { return d <= trunc_ && !labels_[d].empty(); }
    const Label& label(int d, std::uint32_t id) const { return labels_[d][id]; }

    SimplexRef nondegenerate(int d, std::uint32_t id) const { return {0, id, d}; }
    SimplexRef face(const SimplexRef& x, int i) const;
    SimplexRef degeneracy(const SimplexRef& x, int j) const;
    SimplexRef apply(const OperatorWord& w, const SimplexRef& x) const;
    // s_J applied to x; J is a mask on positions of the result.
    SimplexRef degenerate_by(const SimplexRef& x, std::uint32_t mask, int result_dim) const;
    // The vertex-0 ... face data: all faces of x as refs.
    std::vector<SimplexRef> boundary(const SimplexRef& x) const;

    bool valid_ref(const SimplexRef& r) const;
    TruncSSet truncated(int n) const;
    // Extends the truncation bound without adding simplices.
    void raise_trunc(int n);

    // Number of all simplices, degenerate ones included.
    std::uint64_t total_count(int d) const;

    bool operator==(const TruncSSet& o) const {
        return trunc_ == o.trunc_ && counts_ == o.counts_ && faces_ == o.faces_ && labels_ == o.labels_;
    }

private:
    int trunc_;
    std::vector<std::uint32_t> counts_;
    std::vector<std::vector<SimplexRef>> faces_;
    std::vector<std::vector<Label>> labels_;
};

struct IdentityViolation {
    int dim;
    std::uint32_t id;
    int i, j;
    SimplexRef lhs, rhs;  // d_i d_j x and d_{j-1} d_i x
};

struct IdentityReport {
    std::uint64_t checked = 0;
    std::vector<IdentityViolation> violations;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

IdentityReport check_simplicial_identities(const TruncSSet& X);

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ e.size();
        for (auto v : e) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

// A simplicial set given by element enumerators and computed faces/degeneracies.
struct ImplicitSSet {
    std::function<std::vector<Element>(int)> carrier;
    std::function<std::uint64_t(int)> carrier_size;  // optional, used for early budget checks
    std::function<Element(int, const Element&, int)> face;        // (dim, x, i) -> d_i x
    std::function<Element(int, const Element&, int)> degeneracy;  // (dim, x, j) -> s_j x
    std::function<std::pair<std::uint32_t, Element>(int, const Element&)> normal_form;  // optional

    // (mask, root) with x = s_mask(root); falls back to testing x = s_j d_j x.
    std::pair<std::uint32_t, Element> nf(int n, const Element& x) const;
};

struct Materialized {
    TruncSSet sset;
    std::vector<std::unordered_map<Element, std::uint32_t, ElementHash>> ids;

    // Reference of an arbitrary carrier element.
    SimplexRef ref_of(const ImplicitSSet& I, int n, const Element& x) const;
    // Element of an arbitrary simplex.
    Element element_of(const ImplicitSSet& I, const SimplexRef& r) const;
};

Materialized materialize_full(const ImplicitSSet& I, int N);
TruncSSet materialize(const ImplicitSSet& I, int N);

// The implicit set whose simplices are all simplices of X (as dense indices).
ImplicitSSet as_implicit(std::shared_ptr<const TruncSSet> X);
// Levelwise product of two truncated sets.
ImplicitSSet product_implicit(std::shared_ptr<const TruncSSet> X, std::shared_ptr<const TruncSSet> Y);

// k-fold multisimplicial set: levels are k-vectors, faces/degeneracies act on one axis.
struct MultiSSet {
    int arity = 1;
    std::function<std::vector<Element>(const std::vector<int>&)> carrier;
    std::function<std::uint64_t(const std::vector<int>&)> carrier_size;
    std::function<Element(const std::vector<int>&, const Element&, int axis, int i)> face;
    std::function<Element(const std::vector<int>&, const Element&, int axis, int j)> degeneracy;
};

struct MultiReport {
    std::uint64_t checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Spot-checks all simplicial identities inside and across axes on sampled elements.
MultiReport check_multisimplicial_identities(const MultiSSet& X, int max_level, std::uint64_t samples_per_level,
                                             std::uint64_t seed);
ImplicitSSet diagonal_implicit(const MultiSSet& X);
TruncSSet diagonal(const MultiSSet& X, int N);
// External product X ⊠ Y as a bisimplicial set.
MultiSSet external_product(std::shared_ptr<const TruncSSet> X, std::shared_ptr<const TruncSSet> Y);

// Adds dimensions trunc+1..target as boundary-compatible families.
TruncSSet coskeletal_extend(const TruncSSet& X, int target);

struct KanReport {
    int n = 0, k = 0;
    std::uint64_t horns_tested = 0;
    std::uint64_t fillable = 0;
    std::uint64_t unique_fillers = 0;
    bool coskeletal = false;
    std::vector<SimplexRef> witness;  // an unfillable horn, if any (slot k left default)
    bool ok() const { return fillable == horns_tested; }
};

struct KanMode {
    bool exhaustive = true;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    static KanMode all() { return {}; }
    static KanMode sample(std::uint64_t count, std::uint64_t seed) { return {false, count, seed}; }
};

// n <= trunc searches X_n; n == trunc+1 treats X as coskeletal above its truncation.
KanReport kan_horn_check(const TruncSSet& X, int n, int k, KanMode mode = KanMode::all());

struct SimplicialMapData {
    std::shared_ptr<const TruncSSet> source, target;
    std::vector<std::vector<SimplexRef>> images;  // images[d][id] for nondegenerate ids

    SimplexRef apply(const SimplexRef& x) const;
    int depth() const { return static_cast<int>(images.size()) - 1; }
};

struct MapReport {
    std::uint64_t checked = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

MapReport verify_simplicial_map(const SimplicialMapData& f, int N = -1);
bool is_iso_up_to(const SimplicialMapData& f, int N);
SimplicialMapData identity_map(std::shared_ptr<const TruncSSet> X);
// Unique map to the one-point set of the same truncation.
SimplicialMapData map_to_point(std::shared_ptr<const TruncSSet> X);
TruncSSet point_set(int N);
// Defines f on dimension d (source and target must have it) via the boundary of each simplex.
void extend_map_by_boundary(SimplicialMapData& f, int d);

}  // namespace trinerve
