#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "trinerve/errors.hpp"
#include "trinerve/highercat.hpp"
#include "trinerve/homology.hpp"

using namespace trinerve;

namespace {

std::shared_ptr<const Strict3Cat> share(Strict3Cat T) { return std::make_shared<const Strict3Cat>(std::move(T)); }

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// geometric nerve simplices of Σ²A restricted to their 3-cell coordinates
Element top_coords(int p, const Element& x) {
    const auto& lay = simplex_layout(p, 4);
    return Element(x.begin() + lay.offset[3], x.end());
}

}  // namespace

TEST_CASE("strict category fixtures validate") {
    CHECK_NOTHROW(suspension_sigma2(FgAbGroup::cyclic(4)));
    CHECK_NOTHROW(category_as_3cat(ordinal_category(2)));
    CHECK_NOTHROW(two_cell_z2());
    auto T = decorated_3cat(group_category(FiniteGroup::cyclic(2)), FgAbGroup::cyclic(2), FgAbGroup::cyclic(2));
    CHECK(T.count(0) == 1);
    CHECK(T.count(1) == 2);
    CHECK(T.count(2) == 8);
    CHECK(T.count(3) == 32);
    auto D = free_category(DiGraph{3, {{2, 1}, {2, 1}, {1, 0}}}).category;
    CHECK_NOTHROW(decorated_3cat(D, FgAbGroup::cyclic(3), FgAbGroup::cyclic(2)));
}

TEST_CASE("strict category validation rejects broken tables") {
    auto d = suspension_sigma2(FgAbGroup::cyclic(3)).data();
    auto bad = d;
    bad.comp[3][0][1 * 3 + 1] = 0;  // 1 + 1 claimed to be 0
    CHECK_THROWS_AS(Strict3Cat{bad}, StructuralError);
    bad = d;
    bad.comp[3][2][0 * 3 + 1] = 2;  // unit law
    CHECK_THROWS_AS(Strict3Cat{bad}, StructuralError);
    bad = d;
    bad.identity[2][0] = 1;
    CHECK_THROWS_AS(Strict3Cat{bad}, StructuralError);
    // ∘0 and ∘2 given by different group laws break the interchange law
    auto e = suspension_sigma2(FgAbGroup::cyclic(3)).data();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) e.comp[3][0][a * 3 + b] = (a + 2 * b) % 3;
    CHECK_THROWS_AS(Strict3Cat{e}, StructuralError);
    CHECK_THROWS_AS(Strict2Cat{d}, StructuralError);
}

TEST_CASE("strict category json round trip") {
    auto T = decorated_3cat(ordinal_category(1), FgAbGroup::cyclic(2), FgAbGroup::cyclic(2));
    auto back = Strict3Cat(strict_cat_data_from_json(strict_cat_to_json(T)));
    CHECK(back == T);
    CHECK_THROWS_AS(strict_cat_data_from_json(nlohmann::json::parse(R"({"dim":3})")), InputError);
    CHECK_THROWS_AS(strict_cat_data_from_json(nlohmann::json::parse(R"({"dim":7,"cells":[]})")), InputError);
}

TEST_CASE("pasting evaluation") {
    auto T = suspension_sigma2(FgAbGroup::cyclic(5));
    auto s = [](int x) { return Paste::cell(3, x); };
    CHECK(pasting_eval(T, Paste::compose(2, {s(2), s(4)})) == CellRef{3, 1});
    CHECK(pasting_eval(T, Paste::compose(0, {s(1), Paste::cell(1, 0), s(3)})) == CellRef{3, 4});
    CHECK(pasting_eval(T, Paste::ident(Paste::cell(1, 0))) == CellRef{2, 0});
    CHECK_THROWS_AS(pasting_eval(T, Paste::cell(3, 5)), StructuralError);
    CHECK_THROWS_AS(pasting_eval(T, Paste::ident(s(0))), StructuralError);
    CHECK_THROWS_AS(pasting_eval(T, Paste::compose(3, {s(0), s(1)})), StructuralError);
    // parallel but non-composable 1-cells in the ordinal
    auto O = category_as_3cat(ordinal_category(2));
    int a = ordinal_category(2).hom(1, 0)[0], b = ordinal_category(2).hom(2, 1)[0];
    CHECK_NOTHROW(pasting_eval(O, Paste::compose(0, {Paste::cell(1, a), Paste::cell(1, b)})));
    CHECK_THROWS_AS(pasting_eval(O, Paste::compose(0, {Paste::cell(1, b), Paste::cell(1, a)})), StructuralError);
    CHECK(or_tensor(T, 3, {2, 3, 4}) == 4);
    CHECK(or_tensor(T, 3, {2, 3, 4}) == or_tensor_left(T, 3, {2, 3, 4}));
    CHECK_THROWS_AS(or_tensor(T, 3, {}), StructuralError);
}

TEST_CASE("geometric nerve of the double suspension is K(A,3)") {
    for (int m : {2, 3}) {
        auto T = share(suspension_sigma2(FgAbGroup::cyclic(m)));
        auto I = geometric_nerve_implicit(T);
        for (int p = 0; p <= 4; ++p) {
            auto car = I.carrier(p);
            CHECK(car.size() == oracle::count_cocycles(m, 3, p));
            // coordinates form exactly the brute-force cocycle set
            for (const auto& x : car) {
                auto c = top_coords(p, x);
                auto cells = oracle::subsets(p, 4), rels = oracle::subsets(p, 5);
                std::map<std::vector<int>, std::int64_t> val;
                for (std::size_t i = 0; i < cells.size(); ++i) val[cells[i]] = c[i];
                for (const auto& r : rels) {
                    std::int64_t s = 0;
                    for (int i = 0; i < 5; ++i) {
                        auto f = r;
                        f.erase(f.begin() + i);
                        s += (i % 2 ? -1 : 1) * val[f];
                    }
                    CHECK(((s % m) + m) % m == 0);
                }
            }
        }
    }
    auto X = geometric_nerve_3(suspension_sigma2(FgAbGroup::cyclic(2)), 5);
    CHECK(X.truncated(4).counts() == std::vector<std::uint32_t>{1, 0, 0, 1, 11});
    CHECK(X.total_count(4) == 16);
    CHECK(X.total_count(5) == oracle::count_cocycles(2, 3, 5));
    CHECK(check_simplicial_identities(X).ok());
}

TEST_CASE("4-simplices of the geometric nerve are determined by their boundary") {
    for (auto T : {share(suspension_sigma2(FgAbGroup::cyclic(3))),
                   share(decorated_3cat(ordinal_category(1), FgAbGroup::cyclic(2), FgAbGroup::cyclic(2)))}) {
        auto I = geometric_nerve_implicit(T);
        std::set<std::vector<Element>> seen;
        for (const auto& x : I.carrier(4)) {
            std::vector<Element> bd;
            for (int i = 0; i <= 4; ++i) bd.push_back(I.face(4, x, i));
            CHECK(seen.insert(bd).second);
        }
    }
}

TEST_CASE("geometric nerve agrees with the nerve on categories and with Duskin on 2-categories") {
    for (const auto& C : {ordinal_category(2), group_category(FiniteGroup::cyclic(3))}) {
        auto G = geometric_nerve_3(category_as_3cat(C), 4);
        auto N = nerve(C, 4);
        CHECK(G.counts() == N.counts());
        CHECK(check_simplicial_identities(G).ok());
    }
    auto B = decorated_2cat(ordinal_category(0), FgAbGroup::cyclic(2));
    auto Dk = duskin_nerve(B, 4);
    auto Tp = two_cell_z2();
    auto Gm = geometric_nerve_full(share(Tp), 4);
    CHECK(Dk.counts() == Gm.sset.counts());
    // Duskin nerve of a one-object one-arrow 2-category is K(Z/2, 2)
    for (int p = 0; p <= 4; ++p) CHECK(Dk.total_count(p) == oracle::count_cocycles(2, 2, p));
    CHECK(Dk.count(3) == 4);
    CHECK(check_simplicial_identities(Dk).ok());

    // element-wise comparison: drop the (identity) 3-cell coordinates
    auto DI = duskin_nerve_implicit(std::make_shared<const Strict2Cat>(B));
    auto MD = materialize_full(DI, 4);
    auto GI = geometric_nerve_implicit(share(Tp));
    auto src = std::make_shared<const TruncSSet>(Gm.sset);
    auto dst = std::make_shared<const TruncSSet>(MD.sset);
    SimplicialMapData f{src, dst, {}};
    f.images.resize(5);
    for (int d = 0; d <= 4; ++d)
        for (std::uint32_t id = 0; id < src->count(d); ++id) {
            const auto& x = src->label(d, id);
            Element y(x.begin(), x.begin() + simplex_layout(d, 3).size());
            f.images[d].push_back(MD.ref_of(DI, d, y));
        }
    CHECK(verify_simplicial_map(f).ok());
    CHECK(is_iso_up_to(f, 4));
}

TEST_CASE("triple nerve level sizes and identities") {
    auto Tp = share(two_cell_z2());
    auto X = triple_nerve(Tp);
    auto S = triple_nerve(share(suspension_sigma2(FgAbGroup::cyclic(2))));
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q)
            for (int r = 0; r <= 2; ++r) {
                std::vector<int> L{p, q, r};
                auto expect_t = ipow(2, p * q);
                CHECK(X.carrier(L).size() == expect_t);
                CHECK(X.carrier_size(L) == expect_t);
                auto expect_s = ipow(2, p * q * r);
                CHECK(S.carrier(L).size() == expect_s);
                CHECK(S.carrier_size(L) == expect_s);
            }
    CHECK(check_multisimplicial_identities(X, 3, 40, 5).ok());
    CHECK(check_multisimplicial_identities(S, 2, 40, 6).ok());
    auto D = triple_nerve(share(decorated_3cat(ordinal_category(1), FgAbGroup::cyclic(2), FgAbGroup::cyclic(2))));
    auto rep = check_multisimplicial_identities(D, 2, 30, 7);
    INFO((rep.violations.empty() ? std::string() : rep.violations[0]));
    CHECK(rep.ok());
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q <= 2; ++q)
            for (int r = 0; r <= 1; ++r) CHECK(D.carrier({p, q, r}).size() == D.carrier_size({p, q, r}));
    auto diag = diagonal(X, 3);
    CHECK(check_simplicial_identities(diag).ok());
    CHECK(diag.total_count(2) == 16);
}

TEST_CASE("simplices of the geometric nerve are coherent representations") {
    auto T = share(suspension_sigma2(FgAbGroup::cyclic(3)));
    auto I = geometric_nerve_implicit(T);
    auto car = I.carrier(4);
    for (std::size_t n = 0; n < car.size(); n += 7) {
        auto rep = validate_rep3(simplex_as_rep(T, 4, car[n]));
        CHECK(rep.ok());
        CHECK(rep.unitary);
        CHECK(rep.cr1_checked > 0);
    }
    // perturbing one 3-cell coordinate breaks the associativity coherence
    auto x = car[1];
    auto& lay = simplex_layout(4, 4);
    x[lay.at({0, 1, 2, 3})] = (x[lay.at({0, 1, 2, 3})] + 1) % 3;
    auto rep = validate_rep3(simplex_as_rep(T, 4, x));
    CHECK_FALSE(rep.ok());
    // and a 3-simplex never sees that condition
    auto y = I.carrier(3)[0];
    y[simplex_layout(3, 4).at({0, 1, 2, 3})] = 1;
    CHECK(validate_rep3(simplex_as_rep(T, 3, y)).ok());
}

TEST_CASE("restriction after extension is the identity on graph representations") {
    std::mt19937_64 rng(2024);
    std::vector<std::shared_ptr<const Strict3Cat>> targets = {
        share(decorated_3cat(free_category(DiGraph{3, {{2, 1}, {2, 1}, {1, 0}}}).category, FgAbGroup::cyclic(2),
                             FgAbGroup::cyclic(2))),
        share(decorated_3cat(group_category(FiniteGroup::cyclic(3)), FgAbGroup::cyclic(2), FgAbGroup::trivial())),
        share(suspension_sigma2(FgAbGroup::cyclic(2))),
    };
    auto g = chain_graph(3);
    auto free = free_category(g);
    int done = 0;
    while (done < 100) {
        const auto& T = targets[rng() % targets.size()];
        GraphRep f{T, {}, {}};
        f.on_vertices.resize(4);
        f.on_vertices[3] = static_cast<int>(rng() % T->count(0));
        bool ok = true;
        for (int k = 2; k >= 0 && ok; --k) f.on_vertices[k] = static_cast<int>(rng() % T->count(0));
        f.on_edges.assign(3, -1);
        for (int e = 0; e < 3 && ok; ++e) {
            const auto& cand = T->between(1, f.on_vertices[e + 1], f.on_vertices[e]);
            if (cand.empty()) ok = false;
            else f.on_edges[e] = cand[rng() % cand.size()];
        }
        if (!ok) continue;
        auto F = extend_rep_L(f, g);
        CHECK(restrict_rep_R(F, free) == f);
        auto rep = validate_rep3(F);
        CHECK(rep.ok());
        CHECK(rep.unitary);
        ++done;
    }
    GraphRep bad{targets[2], {0, 0, 0, 0}, {0, 0, 5}};
    CHECK_THROWS_AS(extend_rep_L(bad, g), StructuralError);
}
