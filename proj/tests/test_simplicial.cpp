#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "trinerve/budget.hpp"
#include "trinerve/enumerate.hpp"
#include "trinerve/errors.hpp"
#include "trinerve/simplicial.hpp"
#include "trinerve/ssx.hpp"

using namespace trinerve;

namespace {

std::vector<std::uint32_t> counts(const TruncSSet& X) { return X.counts(); }

// a random composable word acting on dimension n
OperatorWord random_word(std::mt19937_64& rng, int n, int steps, int& out_dim) {
    OperatorWord w = OperatorWord::identity(n);
    int d = n;
    for (int s = 0; s < steps; ++s) {
        bool face = d > 0 && (rng() % 2 == 0 || d > 5);
        OperatorWord step = face ? OperatorWord::face(d, static_cast<int>(rng() % (d + 1)))
                                 : OperatorWord::degeneracy(d, static_cast<int>(rng() % (d + 1)));
        w = compose_words(step, w);
        d = step.output_dim();
    }
    out_dim = d;
    return w;
}

}  // namespace

TEST_CASE("compose_words: simplicial identities") {
    auto d1 = OperatorWord::face(3, 1);
    auto s0 = OperatorWord::degeneracy(2, 0);
    CHECK(compose_words(d1, s0) == OperatorWord::identity(2));

    auto d0 = OperatorWord::face(3, 0);
    auto s1 = OperatorWord::degeneracy(2, 1);
    // d0 s1 = s0 d0
    CHECK(compose_words(d0, s1) == compose_words(OperatorWord::degeneracy(1, 0), OperatorWord::face(2, 0)));
    CHECK(compose_words(d0, s1).to_string() == "s0d0[2]");

    // d_i d_j = d_{j-1} d_i for i < j
    for (int n = 2; n <= 6; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                CHECK(compose_words(OperatorWord::face(n - 1, i), OperatorWord::face(n, j)) ==
                      compose_words(OperatorWord::face(n - 1, j - 1), OperatorWord::face(n, i)));
    CHECK_THROWS_AS(compose_words(OperatorWord::face(3, 0), OperatorWord::face(3, 0)), StructuralError);
    CHECK_THROWS_AS(OperatorWord(3, {0, 1}, {}), StructuralError);
    CHECK_THROWS_AS(OperatorWord(3, {}, {2, 1}), StructuralError);
}

TEST_CASE("compose_words is associative and matches maps") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; ++t) {
        int n = static_cast<int>(rng() % 5), a, b, c;
        auto w1 = random_word(rng, n, 3, a);
        auto w2 = random_word(rng, a, 3, b);
        auto w3 = random_word(rng, b, 3, c);
        CHECK(compose_words(w3, compose_words(w2, w1)) == compose_words(compose_words(w3, w2), w1));
        CHECK(OperatorWord::from_map(w1.input_dim(), w1.map()) == w1);
    }
}

TEST_CASE("standard simplex materializes with the right counts") {
    auto X = materialize(oracle::standard_simplex(2), 3);
    CHECK(counts(X) == std::vector<std::uint32_t>{3, 3, 1, 0});
    CHECK(check_simplicial_identities(X).ok());
    auto Y = materialize(oracle::standard_simplex(3), 5);
    CHECK(counts(Y) == std::vector<std::uint32_t>{4, 6, 4, 1, 0, 0});
    auto rep = check_simplicial_identities(Y);
    CHECK(rep.ok());
    CHECK(rep.checked > 0);
}

TEST_CASE("face of degenerate simplices agrees with operator arithmetic") {
    auto I = oracle::standard_simplex(3);
    auto M = materialize_full(I, 6);
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 6; ++n) {
        auto els = I.carrier(n);
        for (int t = 0; t < 200; ++t) {
            const auto& x = els[rng() % els.size()];
            auto r = M.ref_of(I, n, x);
            CHECK(M.element_of(I, r) == x);
            for (int i = 0; i <= n; ++i) CHECK(M.sset.face(r, i) == M.ref_of(I, n - 1, I.face(n, x, i)));
            for (int j = 0; j <= n && n < 6; ++j)
                CHECK(M.sset.degeneracy(r, j) == M.ref_of(I, n + 1, I.degeneracy(n, x, j)));
        }
    }
}

TEST_CASE("materialize agrees with the implicit face function on random simplices") {
    auto I = oracle::cyclic_nerve(3);
    auto M = materialize_full(I, 5);
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        int n = 1 + static_cast<int>(rng() % 5);
        auto els = I.carrier(n);
        const auto& x = els[rng() % els.size()];
        int i = static_cast<int>(rng() % (n + 1));
        CHECK(M.sset.face(M.ref_of(I, n, x), i) == M.ref_of(I, n - 1, I.face(n, x, i)));
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("materialize examples") {
    ImplicitSSet point;
    point.carrier = [](int) { return std::vector<Element>{Element{}}; };
    point.face = [](int, const Element&, int) { return Element{}; };
    point.degeneracy = [](int, const Element&, int) { return Element{}; };
    auto P = materialize(point, 3);
    CHECK(counts(P) == std::vector<std::uint32_t>{1, 0, 0, 0});

    auto K = materialize(oracle::cyclic_nerve(2), 3);
    CHECK(counts(K) == std::vector<std::uint32_t>{1, 1, 1, 1});

    BudgetScope tight(10);
    try {
        materialize(oracle::cyclic_nerve(2), 5);
        FAIL("expected a budget error");
    } catch (const ResourceError& e) {
        CHECK(e.dimension() == 4);
    }
}

TEST_CASE("check_simplicial_identities reports exactly the corrupted entry") {
    auto X = materialize(oracle::standard_simplex(4), 3);
    REQUIRE(check_simplicial_identities(X).ok());
    // corrupt face 2 of 3-simplex 0 by pointing it at a different 2-simplex
    auto orig = X.face_entry(3, 0, 2);
    SimplexRef other{0, orig.id == 0 ? 1u : 0u, 2};
    X.set_face_entry(3, 0, 2, other);
    auto rep = check_simplicial_identities(X);
    REQUIRE_FALSE(rep.ok());
    for (const auto& v : rep.violations) {
        CHECK(v.dim == 3);
        CHECK(v.id == 0);
        CHECK((v.i == 2 || v.j == 2));
    }
}

TEST_CASE("coskeletal_extend") {
    auto P = point_set(0);
    auto P3 = coskeletal_extend(P, 3);
    CHECK(counts(P3) == std::vector<std::uint32_t>{1, 0, 0, 0});

    auto D1 = materialize(oracle::standard_simplex(1), 1);
    auto E = coskeletal_extend(D1, 2);
    // brute force: triples (y0,y1,y2) of 1-simplices of Δ[1] with d0y0... incidence, minus degenerate
    auto I = oracle::standard_simplex(1);
    auto edges = I.carrier(1);
    int compatible = 0;
    for (auto& y0 : edges)
        for (auto& y1 : edges)
            for (auto& y2 : edges) {
                // d_i y_j = d_{j-1} y_i, i<j ; d_i of an edge (a,b): d0 = b, d1 = a
                auto d = [](const Element& e, int i) { return i == 0 ? e[1] : e[0]; };
                if (d(y1, 0) == d(y0, 0) && d(y2, 0) == d(y0, 1) && d(y2, 1) == d(y1, 1)) ++compatible;
            }
    // compatible triples are the 2-simplices of cosk; Δ[1] has 4 monotone triples, 3 of them degenerate
    CHECK(compatible == 4);
    CHECK(E.count(2) == 0);
    CHECK(E.truncated(1) == D1);
    CHECK(check_simplicial_identities(E).ok());

    // the boundary of Δ[2] with the 2-simplex removed: extension restores exactly one 2-simplex
    auto D2 = materialize(oracle::standard_simplex(2), 1);
    auto E2 = coskeletal_extend(D2, 3);
    CHECK(counts(E2) == std::vector<std::uint32_t>{3, 3, 1, 0});
    CHECK(check_simplicial_identities(E2).ok());
}

TEST_CASE("diagonal") {
    auto X = std::make_shared<const TruncSSet>(materialize(oracle::standard_simplex(2), 3));
    MultiSSet one;
    one.arity = 1;
    auto I = as_implicit(X);
    one.carrier = [I](const std::vector<int>& L) { return I.carrier(L[0]); };
    one.face = [I](const std::vector<int>& L, const Element& e, int, int i) { return I.face(L[0], e, i); };
    one.degeneracy = [I](const std::vector<int>& L, const Element& e, int, int j) {
        return I.degeneracy(L[0], e, j);
    };
    auto D = diagonal(one, 3);
    CHECK(counts(D) == counts(*X));
    CHECK(check_simplicial_identities(D).ok());

    // constant in the second axis
    auto pt = std::make_shared<const TruncSSet>(point_set(4));
    auto Xe = std::make_shared<const TruncSSet>(materialize(oracle::cyclic_nerve(2), 4));
    auto prod = external_product(Xe, pt);
    CHECK(check_multisimplicial_identities(prod, 2, 20, 1).ok());
    auto Dc = diagonal(prod, 4);
    CHECK(counts(Dc) == counts(*Xe));

    // diagonal of an external product equals the levelwise product of the materialized factors
    auto A = std::make_shared<const TruncSSet>(materialize(oracle::standard_simplex(1), 3));
    auto B = std::make_shared<const TruncSSet>(materialize(oracle::cyclic_nerve(2), 3));
    auto viaDiag = diagonal(external_product(A, B), 3);
    auto viaProd = materialize(product_implicit(A, B), 3);
    CHECK(counts(viaDiag) == counts(viaProd));
    CHECK(check_simplicial_identities(viaDiag).ok());
}

TEST_CASE("kan_horn_check") {
    auto Z2 = materialize(oracle::cyclic_nerve(2), 3);
    for (int k = 0; k <= 2; ++k) {
        auto r = kan_horn_check(Z2, 2, k);
        CHECK(r.horns_tested == 4);
        CHECK(r.fillable == 4);
        CHECK(r.unique_fillers == 4);
    }
    auto D1 = materialize(oracle::standard_simplex(1), 3);
    auto r = kan_horn_check(D1, 2, 0);
    CHECK_FALSE(r.ok());
    CHECK(r.witness.size() == 3);
    auto inner = kan_horn_check(D1, 2, 1);
    CHECK(inner.ok());

    auto s = kan_horn_check(Z2, 3, 1, KanMode::sample(10, 42));
    CHECK(s.horns_tested == 10);
    CHECK(s.ok());
    auto s2 = kan_horn_check(Z2, 3, 1, KanMode::sample(10, 42));
    CHECK(s2.unique_fillers == s.unique_fillers);

    // coskeletal mode one above the truncation
    auto Z2t = materialize(oracle::cyclic_nerve(2), 2);
    auto c = kan_horn_check(Z2t, 3, 0);
    CHECK(c.coskeletal);
    CHECK(c.ok());
    CHECK(c.unique_fillers == c.horns_tested);
}

TEST_CASE("simplicial maps") {
    auto X = std::make_shared<const TruncSSet>(materialize(oracle::standard_simplex(2), 3));
    auto id = identity_map(X);
    CHECK(verify_simplicial_map(id).ok());
    CHECK(is_iso_up_to(id, 3));
    auto toP = map_to_point(X);
    CHECK(verify_simplicial_map(toP).ok());
    CHECK_FALSE(is_iso_up_to(toP, 3));
    auto P = std::make_shared<const TruncSSet>(point_set(3));
    CHECK(is_iso_up_to(map_to_point(P), 3));

    // a broken map is caught
    auto bad = id;
    std::swap(bad.images[0][0], bad.images[0][1]);
    CHECK_FALSE(verify_simplicial_map(bad).ok());

    // extension by boundary reproduces the identity in the top dimension
    auto partial = id;
    partial.images.pop_back();
    extend_map_by_boundary(partial, 3);
    CHECK(partial.images == id.images);
}

TEST_CASE("SSX round trip is bit exact") {
    auto X = materialize(oracle::cyclic_nerve(3), 3);
    auto text = write_ssx(X);
    auto Y = read_ssx(text);
    CHECK(Y == X);
    CHECK(write_ssx(Y) == text);
    auto D = materialize(oracle::standard_simplex(2), 2);
    CHECK(write_ssx(read_ssx(write_ssx(D))) == write_ssx(D));
    CHECK_THROWS_AS(read_ssx("{\"trunc\": 1}"), InputError);
    CHECK_THROWS_AS(read_ssx("not json"), InputError);
    CHECK_THROWS_AS(read_ssx(R"({"trunc":1,"dims":[[0],[0]],"faces":{"1/0/0":{"degens":[],"target":3},"1/0/1":{"degens":[],"target":0}}})"),
                    InputError);
}
