#pragma once
// Postnikov data generators shared by the unit tests and the acceptance run.

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "trinerve/emac.hpp"

namespace fixture {

using namespace trinerve;

// Z/n with the generator of the cyclic group G acting by multiplication by m.
inline GModule cyclic_module(const FiniteGroup& G, std::int64_t n, std::int64_t m) {
    std::vector<std::vector<std::vector<std::int64_t>>> act;
    std::int64_t f = 1;
    for (int g = 0; g < G.order(); ++g) {
        act.push_back({{n == 1 ? 0 : f}});
        f = f * m % n;
    }
    if (n == 1) return GModule::trivial(G, FgAbGroup::trivial());
    return GModule(G, FgAbGroup::cyclic(n), act);
}

inline std::vector<std::uint32_t> h_single(const GModule& A, std::uint32_t v) {
    auto P = PostnikovData::zero(A.group(), A, GModule::trivial(A.group(), FgAbGroup::trivial()));
    auto h = P.h;
    if (A.group().order() > 1) h[P.h_index(1, 1, 1)] = v;
    return h;
}

inline PostnikovData z2_data(bool twisted_h) {
    auto G = FiniteGroup::cyclic(2);
    auto A = GModule::trivial(G, FgAbGroup::cyclic(2));
    auto P = PostnikovData::zero(G, A, A);
    if (twisted_h) P.h = h_single(A, 1);
    return P;
}

inline std::size_t w4_index(const PostnikovData& P, const Element& y) {
    std::array<std::uint32_t, 6> x{};
    std::array<int, 4> s{};
    for (int k = 0; k < 6; ++k) x[k] = static_cast<std::uint32_t>(y[k]);
    for (int k = 0; k < 4; ++k) s[k] = static_cast<int>(y[6 + k]);
    return P.t_index(x, s);
}

inline std::shared_ptr<const PostnikovData> base_of(const PostnikovData& P) {
    auto Q = P;
    Q.t.clear();
    return std::make_shared<const PostnikovData>(Q);
}

// t indices of degenerate 4-simplices of W
inline std::set<std::size_t> degenerate_w4(const PostnikovData& P) {
    TwistedComplex W(base_of(P), false);
    std::set<std::size_t> out;
    for (const auto& y : W.carrier(3))
        for (int j = 0; j <= 3; ++j) out.insert(w4_index(P, W.degeneracy(3, y, j)));
    return out;
}

inline std::vector<std::uint32_t> random_normalized_t(const PostnikovData& P, std::mt19937_64& rng) {
    auto deg = degenerate_w4(P);
    std::vector<std::uint32_t> t(P.t.size(), 0);
    for (std::size_t i = 0; i < t.size(); ++i)
        if (!deg.count(i)) t[i] = static_cast<std::uint32_t>(rng() % P.n_b());
    return t;
}

// δs for a random normalized s on W_3
inline std::vector<std::uint32_t> random_coboundary_t(const PostnikovData& P, std::mt19937_64& rng) {
    TwistedComplex W(base_of(P), false);
    ModuleTable B(P.B);
    std::map<Element, std::uint32_t> s;
    std::set<Element> deg;
    for (const auto& y : W.carrier(2))
        for (int j = 0; j <= 2; ++j) deg.insert(W.degeneracy(2, y, j));
    for (const auto& y : W.carrier(3)) s[y] = deg.count(y) ? 0 : static_cast<std::uint32_t>(rng() % P.n_b());
    std::vector<std::uint32_t> t(P.t.size(), 0);
    for (const auto& y : W.carrier(4)) {
        auto v = B.act(static_cast<int>(y[6]), s.at(W.face(4, y, 0)));
        for (int i = 1; i <= 4; ++i) {
            auto f = s.at(W.face(4, y, i));
            v = i % 2 ? B.sub(v, f) : B.add(v, f);
        }
        t[w4_index(P, y)] = v;
    }
    return t;
}

// Normalized 4-cocycles of W with coefficients in B = Z/2 (trivial action), by elimination over F2.
// Vectors are bit-packed over the nondegenerate 4-simplices of W.
using Bits = std::vector<std::uint64_t>;

struct CocyclesZ2 {
    std::vector<std::size_t> cells;  // t index of each coordinate
    std::vector<Bits> basis;         // a basis of Z⁴
    std::vector<Bits> classes;       // complement of the coboundaries in Z⁴
    std::vector<Bits> coboundaries;

    std::vector<std::uint32_t> table(const PostnikovData& P, const Bits& v) const {
        std::vector<std::uint32_t> t(P.t.size(), 0);
        for (std::size_t k = 0; k < cells.size(); ++k) t[cells[k]] = static_cast<std::uint32_t>(v[k / 64] >> (k % 64) & 1);
        return t;
    }
    // the cocycle Σ classes[i] over the bits of `cls`, plus a random coboundary
    std::vector<std::uint32_t> sample(const PostnikovData& P, std::uint64_t cls, std::mt19937_64& rng) const {
        Bits v((cells.size() + 63) / 64, 0);
        auto add = [&](const Bits& b) {
            for (std::size_t k = 0; k < v.size(); ++k) v[k] ^= b[k];
        };
        for (std::size_t i = 0; i < classes.size(); ++i)
            if (cls >> i & 1) add(classes[i]);
        for (const auto& b : coboundaries)
            if (rng() & 1) add(b);
        return table(P, v);
    }
};

namespace detail {
inline bool bit(const Bits& v, std::size_t c) { return v[c / 64] >> (c % 64) & 1; }
inline void flip(Bits& v, std::size_t c) { v[c / 64] ^= std::uint64_t{1} << (c % 64); }
// Row-reduces `rows` in place; returns pivot columns.
inline std::vector<std::size_t> reduce(std::vector<Bits>& rows, std::size_t ncol) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncol && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && !bit(rows[p], c)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && bit(rows[i], c))
                for (std::size_t k = 0; k < rows[i].size(); ++k) rows[i][k] ^= rows[r][k];
        piv.push_back(c);
        ++r;
    }
    rows.resize(r);
    return piv;
}
}  // namespace detail

inline CocyclesZ2 cocycles_z2(const PostnikovData& P) {
    CocyclesZ2 out;
    auto deg = degenerate_w4(P);
    std::map<std::size_t, std::size_t> col;
    for (std::size_t i = 0; i < P.t.size(); ++i)
        if (!deg.count(i)) {
            col[i] = out.cells.size();
            out.cells.push_back(i);
        }
    const std::size_t n = out.cells.size(), words = (n + 63) / 64;
    auto W = build_W(P.A, P.h, 5);
    TwistedComplex Wc(base_of(P), false);
    auto WI = Wc.implicit();
    std::vector<Bits> eqs;
    for (std::uint32_t id = 0; id < W.sset.count(5); ++id) {
        Bits row(words, 0);
        for (int i = 0; i <= 5; ++i) {
            auto f = W.sset.face_entry(5, id, i);
            if (f.degenerate()) continue;
            detail::flip(row, col.at(w4_index(P, W.element_of(WI, f))));
        }
        eqs.push_back(std::move(row));
        if (eqs.size() >= 2 * n) detail::reduce(eqs, n);
    }
    auto piv = detail::reduce(eqs, n);
    std::vector<bool> is_piv(n, false);
    for (auto c : piv) is_piv[c] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        Bits v(words, 0);
        detail::flip(v, f);
        for (std::size_t r = 0; r < piv.size(); ++r)
            if (detail::bit(eqs[r], f)) detail::flip(v, piv[r]);
        out.basis.push_back(std::move(v));
    }
    // coboundaries of the nondegenerate 3-simplices
    std::set<Element> deg3;
    for (const auto& y : Wc.carrier(2))
        for (int j = 0; j <= 2; ++j) deg3.insert(Wc.degeneracy(2, y, j));
    std::map<Element, Bits> cob;
    for (const auto& y : Wc.carrier(4)) {
        auto it = col.find(w4_index(P, y));
        if (it == col.end()) continue;
        for (int i = 0; i <= 4; ++i) {
            auto f = Wc.face(4, y, i);
            if (deg3.count(f)) continue;
            auto& v = cob[f];
            if (v.empty()) v.assign(words, 0);
            detail::flip(v, it->second);
        }
    }
    std::vector<Bits> span;
    for (auto& [y, v] : cob) span.push_back(v);
    detail::reduce(span, n);
    out.coboundaries = span;
    for (const auto& z : out.basis) {
        auto trial = span;
        trial.push_back(z);
        if (detail::reduce(trial, n).size() > span.size()) {
            span = std::move(trial);
            out.classes.push_back(z);
        }
    }
    return out;
}

// Builds one Λ⁵_k horn of M over the W-simplex with the given faces and reports whether it fills.
inline bool horn_fills(const TwistedComplex& M, const std::vector<Element>& base, int k) {
    const std::uint32_t nb = M.data().n_b(), nu = nb * nb * nb * nb;
    std::array<Element, 6> y;
    std::array<std::array<Element, 5>, 6> faces;
    auto make = [&](int i, std::uint32_t code) {
        Element e(4);
        for (int q = 3; q >= 0; --q) {
            e[q] = code % nb;
            code /= nb;
        }
        e.insert(e.end(), base[i].begin(), base[i].end());
        y[i] = e;
        for (int a = 0; a <= 4; ++a) faces[i][a] = M.face(4, e, a);
    };
    auto compatible = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        return faces[b][a] == faces[a][b - 1];
    };
    std::vector<int> order;
    for (int i = 0; i <= 5; ++i)
        if (i != k) order.push_back(i);
    std::function<bool(std::size_t)> dfs = [&](std::size_t pos) {
        if (pos == order.size()) return true;
        const int i = order[pos];
        for (std::uint32_t c = 0; c < nu; ++c) {
            make(i, c);
            bool ok = true;
            for (std::size_t q = 0; q < pos && ok; ++q) ok = compatible(order[q], i);
            if (ok && dfs(pos + 1)) return true;
        }
        return false;
    };
    if (!dfs(0)) throw std::logic_error("the base simplex has no compatible horn");
    for (std::uint32_t c = 0; c < nu; ++c) {
        make(k, c);
        bool ok = true;
        for (int j : order) ok = ok && compatible(j, k);
        if (ok) return true;
    }
    return false;
}

// Every Λ⁵_k horn over every nondegenerate 5-simplex of W fills (one horn per base simplex and k;
// over a fixed base simplex the horns form a torsor, so one representative decides).
inline bool all_horns_fill(const PostnikovData& P) {
    auto W = build_W(P.A, P.h, 5);
    TwistedComplex Wc(base_of(P), false);
    auto WI = Wc.implicit();
    TwistedComplex M(std::make_shared<const PostnikovData>(P), true);
    for (std::uint32_t id = 0; id < W.sset.count(5); ++id) {
        std::vector<Element> base;
        for (int i = 0; i <= 5; ++i) base.push_back(W.element_of(WI, W.sset.face_entry(5, id, i)));
        for (int k = 0; k <= 5; ++k)
            if (!horn_fills(M, base, k)) return false;
    }
    return true;
}

// h = δk for a random normalized 2-cochain k on G with values in A
inline std::vector<std::uint32_t> random_coboundary_h(const GModule& A, std::mt19937_64& rng) {
    const auto& G = A.group();
    const int n = G.order();
    ModuleTable M(A);
    const auto na = static_cast<std::uint32_t>(A.coeff().order());
    std::vector<std::uint32_t> k(static_cast<std::size_t>(n) * n, 0);
    for (int a = 1; a < n; ++a)
        for (int b = 1; b < n; ++b) k[a * n + b] = static_cast<std::uint32_t>(rng() % na);
    auto K = [&](int a, int b) { return k[static_cast<std::size_t>(a) * n + b]; };
    std::vector<std::uint32_t> h(static_cast<std::size_t>(n) * n * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                auto v = M.sub(M.act(a, K(b, c)), K(G.mul(a, b), c));
                v = M.sub(M.add(v, K(a, G.mul(b, c))), K(a, b));
                h[(static_cast<std::size_t>(a) * n + b) * n + c] = v;
            }
    return h;
}

}  // namespace fixture
