#pragma once

#include <memory>
#include <vector>

#include "json.hpp"
#include "trinerve/abgrp.hpp"
#include "trinerve/simplicial.hpp"

namespace trinerve {

struct DiGraph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;  // (source, target)

    void check() const;
    bool is_acyclic() const;
};

// The chain p -> p-1 -> ... -> 0; edge k goes from k+1 to k.
DiGraph chain_graph(int p);

// Morphisms 0..m-1; compose(f, g) = f∘g is defined when source(f) == target(g).
class FiniteCategory {
public:
    FiniteCategory() = default;
    FiniteCategory(int objects, std::vector<int> source, std::vector<int> target, std::vector<int> identity,
                   std::vector<std::vector<int>> composition);

    int objects() const { return n_obj_; }
    int morphisms() const { return static_cast<int>(src_.size()); }
    int source(int f) const { return src_[f]; }
    int target(int f) const { return tgt_[f]; }
    int identity(int c) const { return id_[c]; }
    bool is_identity(int f) const { return is_id_[f] != 0; }
    bool composable(int f, int g) const { return src_[f] == tgt_[g]; }
    int compose(int f, int g) const;
    // morphisms with the given target, in increasing id order
    const std::vector<int>& into(int c) const { return into_[c]; }
    int hom_size(int from, int to) const;
    const std::vector<int>& hom(int from, int to) const { return hom_[static_cast<std::size_t>(from) * n_obj_ + to]; }

    const std::vector<int>& sources() const { return src_; }
    const std::vector<int>& targets() const { return tgt_; }
    const std::vector<int>& identities() const { return id_; }
    const std::vector<int>& composition_table() const { return comp_; }

    bool operator==(const FiniteCategory& o) const {
        return n_obj_ == o.n_obj_ && src_ == o.src_ && tgt_ == o.tgt_ && id_ == o.id_ && comp_ == o.comp_;
    }

private:
    int n_obj_ = 0;
    std::vector<int> src_, tgt_, id_;
    std::vector<int> comp_;  // m*m, -1 where undefined
    std::vector<char> is_id_;
    std::vector<std::vector<int>> into_;
    std::vector<std::vector<int>> hom_;
};

FiniteCategory ordinal_category(int p);
// One object, morphisms the group elements.
FiniteCategory group_category(const FiniteGroup& g);

struct FreeCategory {
    FiniteCategory category;
    // paths[f] lists the edges e_1..e_k with f = e_1∘...∘e_k; identities have empty paths
    std::vector<std::vector<int>> paths;
    std::vector<int> edge_morphism;
};

FreeCategory free_category(const DiGraph& g);

// Composable p-tuples (x_1..x_p) with x_i : c_i -> c_{i-1}; 0-simplices are objects.
ImplicitSSet nerve_implicit(std::shared_ptr<const FiniteCategory> C);
Materialized nerve_full(std::shared_ptr<const FiniteCategory> C, int N);
TruncSSet nerve(const FiniteCategory& C, int N);

struct Functor {
    std::shared_ptr<const FiniteCategory> source, target;
    std::vector<int> on_objects;
    std::vector<int> on_morphisms;
};

// Throws StructuralError naming the first violated law.
void verify_functor(const Functor& F);
Functor identity_functor(std::shared_ptr<const FiniteCategory> C);
Functor constant_functor(std::shared_ptr<const FiniteCategory> C, std::shared_ptr<const FiniteCategory> D, int object);

struct NerveMap {
    std::shared_ptr<const TruncSSet> source_nerve, target_nerve;
    SimplicialMapData map;
};

NerveMap apply_functor(const Functor& F, int N);

nlohmann::json category_to_json(const FiniteCategory& C);
FiniteCategory category_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const DiGraph& g);
DiGraph graph_from_json(const nlohmann::json& j);

}  // namespace trinerve
