#include "doctest.h"
#include "oracles.hpp"
#include "trinerve/cat.hpp"
#include "trinerve/errors.hpp"

using namespace trinerve;

namespace {

std::shared_ptr<const FiniteCategory> share(FiniteCategory C) { return std::make_shared<const FiniteCategory>(std::move(C)); }

}  // namespace

TEST_CASE("ordinal_category") {
    CHECK(ordinal_category(0).morphisms() == 1);
    CHECK(ordinal_category(2).objects() == 3);
    CHECK(ordinal_category(2).morphisms() == 6);
    CHECK(ordinal_category(3).morphisms() == 10);
    auto C = ordinal_category(3);
    for (int f = 0; f < C.morphisms(); ++f) CHECK(C.target(f) <= C.source(f));
}

TEST_CASE("category validation") {
    // two objects, identities only, but a composite claimed for a non-composable pair
    CHECK_THROWS_AS(FiniteCategory(2, {0, 1}, {0, 1}, {0, 1}, {{0, 0}, {-1, 1}}), StructuralError);
    // 1∘id should be 1
    CHECK_THROWS_AS(FiniteCategory(1, {0, 0}, {0, 0}, {0}, {{0, 1}, {0, 1}}), StructuralError);
    CHECK_NOTHROW(group_category(FiniteGroup::cyclic(4)));
}

TEST_CASE("free_category") {
    auto F2 = free_category(chain_graph(2));
    CHECK(F2.category.morphisms() == 6);
    DiGraph single{1, {}};
    auto T = free_category(single).category;
    CHECK(T.objects() == 1);
    CHECK(T.morphisms() == 1);
    DiGraph loop{1, {{0, 0}}};
    CHECK_THROWS_WITH_AS(free_category(loop), doctest::Contains("infinite free category"), StructuralError);
    DiGraph cyc{2, {{0, 1}, {1, 0}}};
    CHECK_THROWS_AS(free_category(cyc), StructuralError);

    // a diamond has two distinct paths 3 -> 0
    DiGraph diamond{4, {{3, 1}, {3, 2}, {1, 0}, {2, 0}}};
    auto D = free_category(diamond).category;
    CHECK(D.hom_size(3, 0) == 2);
    CHECK(D.morphisms() == 4 + 4 + 2);
}

TEST_CASE("nerve counts") {
    CHECK(nerve(ordinal_category(2), 3).counts() == std::vector<std::uint32_t>{3, 3, 1, 0});
    auto z2 = nerve(group_category(FiniteGroup::cyclic(2)), 5);
    CHECK(z2.counts() == std::vector<std::uint32_t>{1, 1, 1, 1, 1, 1});
    auto z3 = nerve(group_category(FiniteGroup::cyclic(3)), 4);
    CHECK(z3.counts() == std::vector<std::uint32_t>{1, 2, 4, 8, 16});
}

TEST_CASE("nerve agrees with independent constructions") {
    // nerve of [p] against the standard simplex
    for (int p = 0; p <= 3; ++p) {
        auto X = nerve(ordinal_category(p), 4);
        auto Y = materialize(oracle::standard_simplex(p), 4);
        CHECK(X.counts() == Y.counts());
    }
    // nerve of Z/m against the tuple model: same face structure element by element
    for (int m = 2; m <= 4; ++m) {
        auto C = share(group_category(FiniteGroup::cyclic(m)));
        auto I = nerve_implicit(C);
        auto O = oracle::cyclic_nerve(m);
        for (int p = 1; p <= 4; ++p)
            for (const auto& x : O.carrier(p))
                for (int i = 0; i <= p; ++i) {
                    auto a = I.face(p, x, i);
                    auto b = O.face(p, x, i);
                    if (p == 1) CHECK(a == Element{0});
                    else CHECK(a == b);
                }
    }
}

TEST_CASE("nerves pass the identity check") {
    std::vector<FiniteCategory> cats = {ordinal_category(3), group_category(FiniteGroup::cyclic(3)),
                                        group_category(oracle::symmetric_group(3)),
                                        free_category(DiGraph{4, {{3, 1}, {3, 2}, {1, 0}, {2, 0}}}).category};
    for (const auto& C : cats) CHECK(check_simplicial_identities(nerve(C, 5)).ok());
}

TEST_CASE("free chain category is the ordinal") {
    for (int p = 0; p <= 5; ++p) {
        auto F = free_category(chain_graph(p));
        auto S = share(F.category);
        auto O = share(ordinal_category(p));
        Functor Phi{S, O, {}, {}};
        for (int c = 0; c <= p; ++c) Phi.on_objects.push_back(c);
        for (int f = 0; f < S->morphisms(); ++f) Phi.on_morphisms.push_back(O->hom(S->source(f), S->target(f)).at(0));
        auto nm = apply_functor(Phi, 5);
        CHECK(verify_simplicial_map(nm.map).ok());
        CHECK(is_iso_up_to(nm.map, 5));
    }
}

TEST_CASE("apply_functor") {
    auto Z4 = share(group_category(FiniteGroup::cyclic(4)));
    auto Z2 = share(group_category(FiniteGroup::cyclic(2)));
    auto id = apply_functor(identity_functor(Z4), 3);
    CHECK(is_iso_up_to(id.map, 3));
    for (int d = 0; d <= 3; ++d)
        for (std::uint32_t k = 0; k < id.source_nerve->count(d); ++k) CHECK(id.map.images[d][k] == SimplexRef{0, k, d});

    auto P = share(ordinal_category(0));
    auto c = apply_functor(constant_functor(Z4, P, 0), 3);
    CHECK(verify_simplicial_map(c.map).ok());
    for (int d = 1; d <= 3; ++d)
        for (auto& r : c.map.images[d]) CHECK(r.root_dim() == 0);

    Functor q{Z4, Z2, {0}, {0, 1, 0, 1}};
    auto nm = apply_functor(q, 3);
    CHECK(verify_simplicial_map(nm.map).ok());
    // brute force: image of a tuple is the tuple of residues; degenerate iff some entry is even
    auto S = nm.source_nerve;
    for (int d = 1; d <= 3; ++d)
        for (std::uint32_t k = 0; k < S->count(d); ++k) {
            const auto& x = S->label(d, k);
            std::uint32_t mask = 0;
            for (int i = 0; i < d; ++i)
                if (x[i] % 2 == 0) mask |= 1u << i;
            CHECK(nm.map.images[d][k].degens == mask);
        }
    // the generator 1 and 3 both hit the unique nondegenerate 1-simplex; 2 becomes degenerate
    CHECK(nm.map.images[1].size() == 3);
    int nondeg = 0;
    for (auto& r : nm.map.images[1]) nondeg += r.degens == 0;
    CHECK(nondeg == 2);

    Functor bad{Z4, Z2, {0}, {0, 1, 1, 1}};
    CHECK_THROWS_AS(apply_functor(bad, 2), StructuralError);
}

TEST_CASE("category and graph json round trip") {
    auto C = free_category(DiGraph{4, {{3, 1}, {3, 2}, {1, 0}, {2, 0}}}).category;
    CHECK(category_from_json(category_to_json(C)) == C);
    DiGraph g{3, {{2, 1}, {1, 0}}};
    auto g2 = graph_from_json(graph_to_json(g));
    CHECK(g2.vertices == 3);
    CHECK(g2.edges == g.edges);
    CHECK_THROWS_AS(category_from_json(nlohmann::json::parse(R"({"objects":1})")), InputError);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"vertices":1,"edges":[[0,2]]})")), InputError);
}
