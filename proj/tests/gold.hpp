#pragma once

#include <cstdint>
#include <random>

#include "trinerve/emac.hpp"

namespace gold {

using namespace trinerve;

// The displayed face and degeneracy formulas, evaluated with element arithmetic.
struct Gold {
    const PostnikovData& P;
    // the h-terms of d4 are acted on by σ1; literal σ1⁻¹ breaks d0d4 = d3d0 once σ1² acts nontrivially
    bool literal = false;
    int hact(std::int64_t s1) const { return literal ? inv(s1) : static_cast<int>(s1); }
    Element ea(std::int64_t i) const { return P.A.coeff().element_at(static_cast<std::uint64_t>(i)); }
    Element eb(std::int64_t i) const { return P.B.coeff().element_at(static_cast<std::uint64_t>(i)); }
    std::int64_t ia(const Element& e) const { return static_cast<std::int64_t>(P.A.coeff().index_of(e)); }
    std::int64_t ib(const Element& e) const { return static_cast<std::int64_t>(P.B.coeff().index_of(e)); }
    std::int64_t addA(std::int64_t a, std::int64_t b) const { return ia(P.A.coeff().add(ea(a), ea(b))); }
    std::int64_t subA(std::int64_t a, std::int64_t b) const { return ia(P.A.coeff().sub(ea(a), ea(b))); }
    std::int64_t actA(int g, std::int64_t a) const { return ia(P.A.act(g, ea(a))); }
    std::int64_t addB(std::int64_t a, std::int64_t b) const { return ib(P.B.coeff().add(eb(a), eb(b))); }
    std::int64_t subB(std::int64_t a, std::int64_t b) const { return ib(P.B.coeff().sub(eb(a), eb(b))); }
    std::int64_t actB(int g, std::int64_t a) const { return ib(P.B.act(g, eb(a))); }
    int mul(std::int64_t a, std::int64_t b) const { return P.G.mul(static_cast<int>(a), static_cast<int>(b)); }
    int inv(std::int64_t a) const { return P.G.inv(static_cast<int>(a)); }
    std::int64_t h(std::int64_t a, std::int64_t b, std::int64_t c) const {
        return P.h[(static_cast<std::size_t>(a) * P.n_group() + b) * P.n_group() + c];
    }
    std::int64_t t(const Element& x) const {
        std::size_t idx = 0;
        for (int k = 0; k < 6; ++k) idx = idx * P.n_a() + static_cast<std::size_t>(x[4 + k]);
        for (int k = 0; k < 4; ++k) idx = idx * P.n_group() + static_cast<std::size_t>(x[10 + k]);
        return P.t[idx];
    }

    Element face2(const Element& x, int i) const {
        auto s1 = x[1], s2 = x[2];
        if (i == 0) return {s2};
        if (i == 1) return {mul(s1, s2)};
        return {s1};
    }
    // (u1, x1, x2, x3, σ1, σ2, σ3)
    Element face3(const Element& y, int i) const {
        auto x1 = y[1], x2 = y[2], x3 = y[3], s1 = y[4], s2 = y[5], s3 = y[6];
        switch (i) {
        case 0: return {actA(inv(s1), x3), s2, s3};
        case 1: return {addA(x2, x3), mul(s1, s2), s3};
        case 2: return {addA(x1, x2), s1, mul(s2, s3)};
        default: return {subA(x1, h(s1, s2, s3)), s1, s2};
        }
    }
    // (u1..u4, x1..x6, σ1..σ4)
    Element face4(const Element& y, int i) const {
        auto u1 = y[0], u2 = y[1], u3 = y[2], u4 = y[3];
        auto x1 = y[4], x2 = y[5], x3 = y[6], x4 = y[7], x5 = y[8], x6 = y[9];
        auto s1 = y[10], s2 = y[11], s3 = y[12], s4 = y[13];
        const int v = inv(s1);
        switch (i) {
        case 0: return {actB(v, u4), actA(v, x4), actA(v, x5), actA(v, x6), s2, s3, s4};
        case 1: return {addB(u3, u4), addA(x2, x4), addA(x3, x5), x6, mul(s1, s2), s3, s4};
        case 2: return {addB(u2, u3), addA(x1, x2), x3, addA(x5, x6), s1, mul(s2, s3), s4};
        case 3: return {addB(u1, u2), x1, addA(x2, x3), addA(x4, x5), s1, s2, mul(s3, s4)};
        default: {
            auto ub = subB(u1, t(y));
            auto xb1 = addA(subA(x1, h(s1, s2, mul(s3, s4))), h(s1, s2, s3));
            auto xb2 = addA(subA(x2, h(mul(s1, s2), s3, s4)), actA(hact(s1), h(s2, s3, s4)));
            auto xb3 = subA(x4, actA(hact(s1), h(s2, s3, s4)));
            return {ub, xb1, xb2, xb3, s1, s2, s3};
        }
        }
    }
    Element deg1(const Element& x, int i) const { return i == 0 ? Element{0, 0, x[0]} : Element{0, x[0], 0}; }
    Element deg2(const Element& y, int i) const {
        auto x1 = y[0], s1 = y[1], s2 = y[2];
        switch (i) {
        case 0: return {0, 0, 0, x1, 0, s1, s2};
        case 1: return {0, 0, x1, 0, s1, 0, s2};
        default: return {0, x1, 0, 0, s1, s2, 0};
        }
    }
    Element deg3(const Element& y, int i) const {
        auto u1 = y[0], x1 = y[1], x2 = y[2], x3 = y[3], s1 = y[4], s2 = y[5], s3 = y[6];
        switch (i) {
        case 0: return {0, 0, 0, u1, 0, 0, 0, x1, x2, x3, 0, s1, s2, s3};
        case 1: return {0, 0, u1, 0, 0, x1, x2, 0, 0, x3, s1, 0, s2, s3};
        case 2: return {0, u1, 0, 0, x1, 0, x2, 0, x3, 0, s1, s2, 0, s3};
        default: return {u1, 0, 0, 0, x1, x2, 0, x3, 0, 0, s1, s2, s3, 0};
        }
    }
};

inline Element random_tuple(std::mt19937_64& rng, const PostnikovData& P, int dim) {
    static const int nu[] = {0, 0, 0, 1, 4}, nx[] = {0, 0, 1, 3, 6}, ns[] = {0, 1, 2, 3, 4};
    Element e;
    for (int k = 0; k < nu[dim]; ++k) e.push_back(static_cast<std::int64_t>(rng() % P.n_b()));
    for (int k = 0; k < nx[dim]; ++k) e.push_back(static_cast<std::int64_t>(rng() % P.n_a()));
    for (int k = 0; k < ns[dim]; ++k) e.push_back(static_cast<std::int64_t>(rng() % P.n_group()));
    return e;
}

}  // namespace gold
