#include "trinerve/postnikov.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>

#include "trinerve/budget.hpp"
#include "trinerve/errors.hpp"
#include "trinerve/highercat.hpp"

namespace trinerve {

namespace {

std::uint32_t u32(std::int64_t v) { return static_cast<std::uint32_t>(v); }

template <class... T>
std::string tuple_text(const T&... v) {
    std::ostringstream os;
    os << '(';
    const char* sep = "";
    ((os << sep << v, sep = ","), ...);
    os << ')';
    return os.str();
}

// Binary bracketings of 1-cells in one hom-category; leaves carry their A value.
struct Tree {
    std::uint32_t value = 0;
    std::vector<Tree> kids;
    bool leaf() const { return kids.empty(); }
};

Tree leaf(std::uint32_t v) { return {v, {}}; }
Tree node(Tree l, Tree r) { return {0, {std::move(l), std::move(r)}}; }
Tree right3(std::uint32_t a, std::uint32_t b, std::uint32_t c) { return node(leaf(a), node(leaf(b), leaf(c))); }

// Costs of rebracketing into right-nested form inside the hom-category of one object.
class Paster {
public:
    Paster(const BicatGroup& B, int object) : B_(B), r_(object) {}

    std::uint32_t value(const Tree& T) const {
        return T.leaf() ? T.value : B_.a().add(value(T.kids[0]), value(T.kids[1]));
    }
    void leaves(const Tree& T, std::vector<std::uint32_t>& out) const {
        if (T.leaf()) {
            out.push_back(T.value);
            return;
        }
        leaves(T.kids[0], out);
        leaves(T.kids[1], out);
    }
    std::pair<Tree, std::uint32_t> norm(const Tree& T) const {
        if (T.leaf()) return {T, 0};
        auto [L, c1] = norm(T.kids[0]);
        auto [R, c2] = norm(T.kids[1]);
        auto [M, c3] = merge(L, R);
        return {std::move(M), B_.b().add(B_.b().add(c1, c2), c3)};
    }
    std::pair<Tree, std::uint32_t> merge(const Tree& L, const Tree& R) const {
        if (L.leaf()) return {node(L, R), 0};
        const auto c = B_.assoc(r_, L.kids[0].value, value(L.kids[1]), value(R));
        auto [M, c2] = merge(L.kids[1], R);
        return {node(L.kids[0], std::move(M)), B_.b().add(c, c2)};
    }
    Tree context(const std::vector<std::uint32_t>& pre, const Tree& X, const std::vector<std::uint32_t>& suf) const {
        std::vector<Tree> items;
        for (auto v : pre) items.push_back(leaf(v));
        items.push_back(X);
        for (auto v : suf) items.push_back(leaf(v));
        Tree T = items.back();
        for (std::size_t k = items.size() - 1; k-- > 0;) T = node(items[k], std::move(T));
        return T;
    }
    // Replaces the subpath matching S at position i by T; `val` is the cost of the 2-cell S ⇒ T.
    std::uint32_t apply(std::vector<std::uint32_t>& path, std::size_t i, const Tree& S, const Tree& T,
                        std::uint32_t val) const {
        std::vector<std::uint32_t> ls, lt;
        leaves(S, ls);
        leaves(T, lt);
        if (i + ls.size() > path.size() || !std::equal(ls.begin(), ls.end(), path.begin() + static_cast<long>(i)))
            throw StructuralError("pasting step does not match the current composite");
        std::vector<std::uint32_t> pre(path.begin(), path.begin() + static_cast<long>(i));
        std::vector<std::uint32_t> suf(path.begin() + static_cast<long>(i + ls.size()), path.end());
        const auto cs = norm(context(pre, S, suf)).second;
        const auto ct = norm(context(pre, T, suf)).second;
        path = pre;
        path.insert(path.end(), lt.begin(), lt.end());
        path.insert(path.end(), suf.begin(), suf.end());
        return B_.b().sub(B_.b().add(val, ct), cs);
    }
    // −⊗1_τ applied to a composite in the hom-category of σ
    std::uint32_t split_right(const Tree& T, int s, int tau) const {
        if (T.leaf()) return 0;
        auto v = B_.b().neg(B_.chibar(s, tau, value(T.kids[0]), value(T.kids[1])));
        return B_.b().add(v, B_.b().add(split_right(T.kids[0], s, tau), split_right(T.kids[1], s, tau)));
    }
    // σ⊗− applied to a composite in the hom-category of τ
    std::uint32_t split_left(const Tree& T, int s, int tau) const {
        if (T.leaf()) return 0;
        auto v = B_.b().neg(B_.chi(s, tau, value(T.kids[0]), value(T.kids[1])));
        return B_.b().add(v, B_.b().add(split_left(T.kids[0], s, tau), split_left(T.kids[1], s, tau)));
    }

private:
    const BicatGroup& B_;
    int r_;
};

}  // namespace

BicatGroup::BicatGroup(std::shared_ptr<const PostnikovData> data)
    : data_(std::move(data)), a_(data_->A), b_(data_->B) {
    data_->check_shape();
    if (data_->h.empty() || data_->t.empty()) throw InputError("Postnikov data need both h and t tables");
}

Cell BicatGroup::vertical(const Cell& u, const Cell& v) const {
    if (u.object != v.object || u.one != v.one) throw StructuralError("vertical composite of non-matching 2-cells");
    return {u.object, u.one, b_.add(u.two, v.two)};
}

Cell BicatGroup::horizontal(const Cell& u, const Cell& v) const {
    if (u.object != v.object) throw StructuralError("horizontal composite across different objects");
    return {u.object, a_.add(u.one, v.one), b_.add(u.two, v.two)};
}

Cell BicatGroup::tensor(const Cell& u, const Cell& v) const {
    return {data_->G.mul(u.object, v.object), a_.add(u.one, a_.act(u.object, v.one)),
            b_.add(u.two, b_.act(u.object, v.two))};
}

std::uint32_t BicatGroup::t(std::uint32_t x1, std::uint32_t x2, std::uint32_t x3, std::uint32_t x4, std::uint32_t x5,
                            std::uint32_t x6, int s1, int s2, int s3, int s4) const {
    return data_->t_at({x1, x2, x3, x4, x5, x6}, {s1, s2, s3, s4});
}

std::uint32_t BicatGroup::assoc(int s, std::uint32_t x, std::uint32_t y, std::uint32_t z) const {
    if (!assoc_override_.empty()) {
        auto it = assoc_override_.find({static_cast<std::uint32_t>(s), x, y, z});
        if (it != assoc_override_.end()) return it->second;
    }
    return t(x, y, z, 0, 0, 0, s, 0, 0, 0);
}

std::uint32_t BicatGroup::chi(int s, int tau, std::uint32_t y, std::uint32_t y2) const {
    return b_.neg(t(0, 0, 0, a_.act(s, y), a_.act(s, y2), 0, s, tau, 0, 0));
}

std::uint32_t BicatGroup::interchange(int s, int tau, std::uint32_t x, std::uint32_t y) const {
    const auto sy = a_.act(s, y);
    auto v = b_.sub(t(0, x, 0, 0, sy, 0, s, tau, 0, 0), t(0, 0, x, sy, 0, 0, s, tau, 0, 0));
    return b_.sub(v, t(x, 0, 0, 0, 0, sy, s, 0, tau, 0));
}

std::uint32_t BicatGroup::chibar(int s, int tau, std::uint32_t x, std::uint32_t x2) const {
    auto v = b_.sub(t(x, 0, x2, 0, 0, 0, s, 0, tau, 0), t(0, x, x2, 0, 0, 0, s, tau, 0, 0));
    return b_.sub(v, t(x, x2, 0, 0, 0, 0, s, 0, 0, tau));
}

std::uint32_t BicatGroup::Phi(int s, int tau, int g, std::uint32_t z) const {
    const auto& G = data_->G;
    const auto h = assoc_cell(s, tau, g);
    const auto sz = a_.act(G.mul(s, tau), z);
    const int tg = G.mul(tau, g);
    auto v = b_.sub(t(0, h, 0, 0, sz, 0, s, tg, 0, 0), t(h, 0, 0, 0, 0, sz, s, tau, g, 0));
    return b_.sub(v, t(0, 0, h, sz, 0, 0, s, tg, 0, 0));
}

std::uint32_t BicatGroup::Psi(int s, int tau, int g, std::uint32_t y) const {
    const auto& G = data_->G;
    const auto h = assoc_cell(s, tau, g);
    const auto sy = a_.act(s, y);
    const int tg = G.mul(tau, g);
    auto v = b_.sub(t(h, 0, 0, sy, 0, 0, s, tau, 0, g), t(h, 0, 0, 0, sy, 0, s, tau, g, 0));
    v = b_.add(v, t(0, h, 0, 0, sy, 0, s, tg, 0, 0));
    return b_.sub(v, t(0, 0, h, sy, 0, 0, s, tg, 0, 0));
}

std::uint32_t BicatGroup::Omega(int s, int tau, int g, std::uint32_t x) const {
    const auto& G = data_->G;
    const auto h = assoc_cell(s, tau, g);
    const int tg = G.mul(tau, g);
    auto v = b_.sub(t(h, x, 0, 0, 0, 0, s, tau, 0, g), t(x, h, 0, 0, 0, 0, s, 0, tau, g));
    v = b_.sub(v, t(h, 0, x, 0, 0, 0, s, tau, g, 0));
    v = b_.add(v, t(x, 0, h, 0, 0, 0, s, 0, tg, 0));
    v = b_.add(v, t(0, h, x, 0, 0, 0, s, tg, 0, 0));
    return b_.sub(v, t(0, x, h, 0, 0, 0, s, tg, 0, 0));
}

std::uint32_t BicatGroup::pentagonator(int s, int tau, int g, int d) const {
    const auto& G = data_->G;
    const auto h0 = a_.act(s, assoc_cell(tau, g, d));
    const auto h1 = assoc_cell(G.mul(s, tau), g, d);
    const auto h2 = assoc_cell(s, G.mul(tau, g), d);
    const auto h3 = assoc_cell(s, tau, G.mul(g, d));
    const auto h4 = assoc_cell(s, tau, g);
    const auto h10 = a_.sub(h1, h0);
    const int tg = G.mul(tau, g), gd = G.mul(g, d), tgd = G.mul(tg, d);
    auto v = b_.sub(t(h3, h10, 0, h0, 0, 0, s, tau, g, d), t(h2, h4, 0, 0, 0, 0, s, tg, 0, d));
    v = b_.add(v, t(h2, 0, h4, 0, 0, 0, s, tg, d, 0));
    v = b_.sub(v, t(h3, 0, h10, 0, h0, 0, s, tau, gd, 0));
    v = b_.add(v, t(0, h3, h10, 0, h0, 0, s, tgd, 0, 0));
    v = b_.sub(v, t(0, 0, a_.add(h2, h4), h0, 0, 0, s, tgd, 0, 0));
    return b_.sub(v, t(0, h2, h4, 0, 0, 0, s, tgd, 0, 0));
}

BicatGroup BicatGroup::with_assoc(int s, std::uint32_t x, std::uint32_t y, std::uint32_t z, std::uint32_t value) const {
    BicatGroup out = *this;
    out.assoc_override_[{static_cast<std::uint32_t>(s), x, y, z}] = value;
    return out;
}

namespace {

// All F_ijk of a p-simplex from σ_1..σ_p and the F_0jk, using the 3-cell typing constraint
// F_ikl + F_ijk = F_ijl + σ_ij·F_jkl + h(σ_ij, σ_jk, σ_kl) at (0, i, k, l).
struct Skeleton {
    int p = 0;
    std::vector<std::vector<int>> F;                    // F[i][j], i < j
    std::map<std::array<int, 3>, std::uint32_t> x;      // F_ijk
};

Skeleton skeleton(const PostnikovData& P, const ModuleTable& A, const std::vector<int>& s,
                  const std::vector<std::uint32_t>& x0) {
    const auto& G = P.G;
    Skeleton S;
    S.p = static_cast<int>(s.size());
    const int p = S.p;
    S.F.assign(p + 1, std::vector<int>(p + 1, 0));
    for (int i = 0; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j) S.F[i][j] = G.mul(S.F[i][j - 1], s[j - 1]);
    std::size_t k = 0;
    for (int j = 1; j <= p; ++j)
        for (int l = j + 1; l <= p; ++l) S.x[{0, j, l}] = x0[k++];
    for (int i = 1; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j)
            for (int l = j + 1; l <= p; ++l) {
                auto v = A.sub(A.add(S.x[{0, j, l}], S.x[{0, i, j}]), S.x[{0, i, l}]);
                v = A.sub(v, P.h_at(S.F[0][i], S.F[i][j], S.F[j][l]));
                S.x[{i, j, l}] = A.act(G.inv(S.F[0][i]), v);
            }
    return S;
}

bool typing_holds(const PostnikovData& P, const ModuleTable& A, const Skeleton& S) {
    const int p = S.p;
    for (int i = 0; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j)
            for (int k = j + 1; k <= p; ++k)
                for (int l = k + 1; l <= p; ++l) {
                    auto lhs = A.add(S.x.at({i, k, l}), S.x.at({i, j, k}));
                    auto rhs = A.add(A.add(S.x.at({i, j, l}), A.act(S.F[i][j], S.x.at({j, k, l}))),
                                     P.h_at(S.F[i][j], S.F[j][k], S.F[k][l]));
                    if (lhs != rhs) return false;
                }
    return true;
}

}  // namespace

std::uint32_t BicatGroup::cr1_cost(const std::array<int, 4>& s, const std::array<std::uint32_t, 6>& x0) const {
    const auto& G = data_->G;
    const auto& A = a_;
    const auto& Bm = b_;
    auto S = skeleton(*data_, a_, {s[0], s[1], s[2], s[3]}, {x0.begin(), x0.end()});
    auto X = [&](int i, int j, int k) { return S.x.at({i, j, k}); };
    const int s1 = s[0], s2 = s[1], s3 = s[2], s4 = s[3];
    const int s12 = G.mul(s1, s2), s23 = G.mul(s2, s3), s34 = G.mul(s3, s4);
    const int r3 = G.mul(s12, s3), r4 = G.mul(r3, s4), rb = G.mul(s23, s4);
    const auto hb = assoc_cell(s2, s3, s4);
    const auto h0 = A.act(s1, hb);
    const auto h1 = assoc_cell(s12, s3, s4);
    const auto h2 = assoc_cell(s1, s23, s4);
    const auto h3 = assoc_cell(s1, s2, s34);
    const auto h4 = assoc_cell(s1, s2, s3);
    const auto x012 = X(0, 1, 2), x013 = X(0, 1, 3), x014 = X(0, 1, 4), x023 = X(0, 2, 3), x024 = X(0, 2, 4),
               x034 = X(0, 3, 4), x123 = X(1, 2, 3), x124 = X(1, 2, 4), x134 = X(1, 3, 4), x234 = X(2, 3, 4);
    const auto w123 = A.act(s1, x123), w124 = A.act(s1, x124), w134 = A.act(s1, x134);
    const auto w234 = A.act(s12, x234);
    Paster E(*this, r4);

    // F_abc,d ∘ (F_ab,c ⊗ 1) ∘ ((F_a,b ⊗ 1) ⊗ 1)  ⇛  ... through F_0123, F_0134, F_1234 and π
    std::uint32_t total_a = 0;
    {
        std::vector<std::uint32_t> path{x034, x023, x012};
        Tree S1 = node(leaf(x023), leaf(x012)), T1 = right3(x013, w123, h4);
        auto v = Bm.sub(E.split_right(T1, r3, s4), E.split_right(S1, r3, s4));
        total_a = Bm.add(total_a, E.apply(path, 1, S1, T1, v));
        total_a = Bm.add(total_a, E.apply(path, 0, node(leaf(x034), leaf(x013)), right3(x014, w134, h2), 0));
        total_a = Bm.add(total_a, E.apply(path, 2, node(leaf(h2), leaf(w123)), node(leaf(w123), leaf(h2)),
                                          Bm.neg(Psi(s1, s23, s4, x123))));
        Tree S4 = node(leaf(x134), leaf(x123)), T4 = right3(x124, A.act(s2, x234), hb);
        v = Bm.sub(E.split_left(T4, s1, rb), E.split_left(S4, s1, rb));
        total_a = Bm.add(total_a, E.apply(path, 1, node(leaf(w134), leaf(w123)), right3(w124, w234, h0), v));
        total_a = Bm.add(total_a, E.apply(path, 3, right3(h0, h2, h4), node(leaf(h3), leaf(h1)),
                                          pentagonator(s1, s2, s3, s4)));
    }
    // ... and through F_0234, Ω, the interchange, F_0124 and Φ
    std::uint32_t total_b = 0;
    {
        std::vector<std::uint32_t> path{x034, x023, x012};
        total_b = Bm.add(total_b, E.apply(path, 0, node(leaf(x034), leaf(x023)), right3(x024, w234, h1), 0));
        total_b = Bm.add(total_b, E.apply(path, 2, node(leaf(h1), leaf(x012)), node(leaf(x012), leaf(h1)),
                                          Bm.neg(Omega(s12, s3, s4, x012))));
        total_b = Bm.add(total_b, E.apply(path, 1, node(leaf(w234), leaf(x012)), node(leaf(x012), leaf(w234)),
                                          interchange(s12, s34, x012, x234)));
        total_b = Bm.add(total_b, E.apply(path, 0, node(leaf(x024), leaf(x012)), right3(x014, w124, h3), 0));
        total_b = Bm.add(total_b, E.apply(path, 2, node(leaf(h3), leaf(w234)), node(leaf(w234), leaf(h3)),
                                          Bm.neg(Phi(s1, s2, s34, x234))));
    }
    return Bm.sub(total_a, total_b);
}

BicatGroup realize(const PostnikovData& P) {
    P.check_shape();
    if (!validate_h(P.A, P.h)) throw VerificationError("h is not a twisted 3-cocycle");
    auto chk = check_t(P);
    if (!chk.ok()) throw VerificationError("t is not a 4-cocycle: " + chk.message);
    return BicatGroup(std::make_shared<const PostnikovData>(P));
}

bool CoherenceReport::ok() const {
    return std::all_of(families.begin(), families.end(), [](const auto& f) { return f.witness.empty(); });
}

std::string CoherenceReport::summary() const {
    std::ostringstream os;
    for (const auto& f : families) {
        os << f.name << ": " << f.checked << " checked";
        if (!f.witness.empty()) os << ", fails at " << f.witness;
        os << '\n';
    }
    return os.str();
}

CoherenceReport coherence_check(const BicatGroup& Bg) {
    const auto& P = Bg.data();
    const auto& G = P.G;
    const auto& A = Bg.a();
    const auto& B = Bg.b();
    const int ng = G.order();
    const auto na = P.n_a(), nb = P.n_b();
    CoherenceReport rep;
    rep.families.reserve(8);
    auto family = [&](const std::string& name) -> CoherenceFamily& {
        rep.families.push_back({name, 0, {}});
        return rep.families.back();
    };
    auto record = [](CoherenceFamily& f, bool ok, const std::string& where) {
        ++f.checked;
        if (!ok && f.witness.empty()) f.witness = where;
    };

    {
        auto& f = family("pentagon");
        for (int s = 0; s < ng; ++s)
            for (std::uint32_t x = 0; x < na; ++x)
                for (std::uint32_t y = 0; y < na; ++y)
                    for (std::uint32_t z = 0; z < na; ++z)
                        for (std::uint32_t w = 0; w < na; ++w) {
                            auto v = B.sub(Bg.assoc(s, y, z, w), Bg.assoc(s, A.add(x, y), z, w));
                            v = B.add(v, Bg.assoc(s, x, A.add(y, z), w));
                            v = B.sub(v, Bg.assoc(s, x, y, A.add(z, w)));
                            v = B.add(v, Bg.assoc(s, x, y, z));
                            record(f, v == 0, "σ,x,y,z,w = " + tuple_text(s, x, y, z, w));
                        }
    }
    {
        auto& right = family("right whiskering monoidal");
        auto& left = family("left whiskering monoidal");
        for (int s = 0; s < ng; ++s)
            for (int tau = 0; tau < ng; ++tau) {
                const int st = G.mul(s, tau);
                for (std::uint32_t x = 0; x < na; ++x)
                    for (std::uint32_t y = 0; y < na; ++y)
                        for (std::uint32_t z = 0; z < na; ++z) {
                            const auto where = "σ,τ,x,y,z = " + tuple_text(s, tau, x, y, z);
                            auto v = B.sub(Bg.assoc(st, x, y, z), Bg.assoc(s, x, y, z));
                            v = B.sub(B.sub(v, Bg.chibar(s, tau, x, y)), Bg.chibar(s, tau, A.add(x, y), z));
                            v = B.add(B.add(v, Bg.chibar(s, tau, y, z)), Bg.chibar(s, tau, x, A.add(y, z)));
                            record(right, v == 0, where);
                            auto w = B.sub(Bg.assoc(st, A.act(s, x), A.act(s, y), A.act(s, z)),
                                           B.act(s, Bg.assoc(tau, x, y, z)));
                            w = B.sub(B.sub(w, Bg.chi(s, tau, x, y)), Bg.chi(s, tau, A.add(x, y), z));
                            w = B.add(B.add(w, Bg.chi(s, tau, y, z)), Bg.chi(s, tau, x, A.add(y, z)));
                            record(left, w == 0, where);
                        }
            }
    }
    {
        auto& hx = family("interchange hexagon in the first variable");
        auto& hy = family("interchange hexagon in the second variable");
        for (int s = 0; s < ng; ++s)
            for (int tau = 0; tau < ng; ++tau) {
                const int st = G.mul(s, tau);
                for (std::uint32_t x = 0; x < na; ++x)
                    for (std::uint32_t x2 = 0; x2 < na; ++x2)
                        for (std::uint32_t y = 0; y < na; ++y) {
                            const auto where = "σ,τ,a,b,c = " + tuple_text(s, tau, x, x2, y);
                            const auto sy = A.act(s, y);
                            auto v = B.sub(Bg.interchange(s, tau, A.add(x, x2), y), Bg.interchange(s, tau, x, y));
                            v = B.sub(B.sub(v, Bg.interchange(s, tau, x2, y)), Bg.assoc(st, x, x2, sy));
                            v = B.add(B.add(v, Bg.assoc(st, x, sy, x2)), Bg.assoc(st, x2, x, sy));
                            record(hx, v == 0, where);
                            // second variable: (x, y, y2) = (x, x2, y)
                            const auto sa = A.act(s, x2), sb = A.act(s, y);
                            auto w = B.sub(Bg.interchange(s, tau, x, A.add(x2, y)), Bg.interchange(s, tau, x, x2));
                            w = B.add(B.sub(w, Bg.interchange(s, tau, x, y)), Bg.assoc(st, x, sa, sb));
                            w = B.sub(B.sub(w, Bg.assoc(st, x, sb, sa)), Bg.assoc(st, sa, x, sb));
                            record(hy, w == 0, where);
                        }
            }
    }
    {
        // (u ⊗ 1)(1 ⊗ v) and (1 ⊗ v)(u ⊗ 1) agree as 2-cells, so the interchange square commutes
        auto& f = family("interchange naturality");
        for (int s = 0; s < ng; ++s)
            for (int tau = 0; tau < ng; ++tau)
                for (std::uint32_t x = 0; x < na; ++x)
                    for (std::uint32_t y = 0; y < na; ++y)
                        for (std::uint32_t u = 0; u < nb; ++u)
                            for (std::uint32_t v = 0; v < nb; ++v) {
                                const auto c = Bg.interchange(s, tau, x, y);
                                const Cell lu = Bg.tensor({s, x, u}, Bg.unit(tau));
                                const Cell rv = Bg.tensor(Bg.unit(s), {tau, y, v});
                                const Cell before = Bg.horizontal(lu, rv), after = Bg.horizontal(rv, lu);
                                const Cell lhs = Bg.vertical({after.object, after.one, c}, before);
                                const Cell rhs = Bg.vertical(after, {before.object, before.one, c});
                                record(f, lhs == rhs, "σ,τ,x,y,u,v = " + tuple_text(s, tau, x, y, u, v));
                            }
    }
    {
        auto& f = family("invertibility");
        for (std::uint32_t u = 0; u < nb; ++u) record(f, B.add(u, B.neg(u)) == 0, "2-cell " + std::to_string(u));
        for (std::uint32_t x = 0; x < na; ++x) record(f, A.add(x, A.neg(x)) == 0, "1-cell " + std::to_string(x));
        for (int s = 0; s < ng; ++s) {
            const int q = Bg.quasi_inverse(s);
            record(f, G.mul(s, q) == 0 && G.mul(q, s) == 0, "object " + std::to_string(s));
        }
    }
    {
        auto& f = family("strict units");
        for (int s = 0; s < ng; ++s)
            for (int tau = 0; tau < ng; ++tau) {
                for (int g = 0; g < ng; ++g) {
                    for (int d = 0; d < ng; ++d)
                        if (s == 0 || tau == 0 || g == 0 || d == 0)
                            record(f, Bg.pentagonator(s, tau, g, d) == 0, "π" + tuple_text(s, tau, g, d));
                    if (s == 0 || tau == 0 || g == 0)
                        record(f, Bg.assoc_cell(s, tau, g) == 0, "h" + tuple_text(s, tau, g));
                    record(f, Bg.Phi(s, tau, g, 0) == 0 && Bg.Psi(s, tau, g, 0) == 0 && Bg.Omega(s, tau, g, 0) == 0,
                           "Φ, Ψ, Ω" + tuple_text(s, tau, g, 0));
                }
                for (std::uint32_t x = 0; x < na; ++x) {
                    for (std::uint32_t y = 0; y < na; ++y) {
                        const auto where = tuple_text(s, tau, x, y);
                        record(f, Bg.chibar(s, 0, x, y) == 0, "χ̄ with unit object " + where);
                        record(f, Bg.chi(0, tau, x, y) == 0, "χ with unit object " + where);
                        record(f, Bg.chibar(s, tau, 0, y) == 0 && Bg.chibar(s, tau, x, 0) == 0, "χ̄ " + where);
                        record(f, Bg.chi(s, tau, 0, y) == 0 && Bg.chi(s, tau, x, 0) == 0, "χ " + where);
                        record(f, Bg.interchange(s, tau, 0, y) == 0 && Bg.interchange(s, tau, x, 0) == 0, "c " + where);
                        if (tau == 0)
                            for (std::uint32_t z = 0; z < na; ++z)
                                if (x == 0 || y == 0 || z == 0)
                                    record(f, Bg.assoc(s, x, y, z) == 0, "a" + tuple_text(s, x, y, z));
                    }
                    for (std::uint32_t u = 0; u < nb; ++u) {
                        const Cell c{s, x, u};
                        record(f, Bg.tensor(c, Bg.unit(0)) == c && Bg.tensor(Bg.unit(0), c) == c,
                               "unit object ⊗ " + tuple_text(s, x, u));
                        record(f, Bg.horizontal(c, Bg.unit(s)) == c && Bg.vertical(c, {s, x, 0}) == c,
                               "unit cells " + tuple_text(s, x, u));
                    }
                }
            }
    }
    return rep;
}

ImplicitSSet bicatgroup_nerve_implicit(std::shared_ptr<const BicatGroup> Bg) {
    ImplicitSSet I;
    auto sizes = [Bg](int p) {
        const auto& P = Bg->data();
        auto c2 = static_cast<std::uint64_t>(p * (p - 1) / 2);
        auto c3 = static_cast<std::uint64_t>(p * (p - 1) * (p - 2) / 6);
        return mul_saturating(mul_saturating(pow_saturating(P.n_group(), p), pow_saturating(P.n_a(), c2)),
                              pow_saturating(P.n_b(), c3));
    };
    I.carrier_size = [sizes](int p) -> std::uint64_t {
        if (p < 0 || p > 4) throw InputError("the nerve is enumerated up to dimension 4");
        return sizes(p);
    };
    I.carrier = [Bg, sizes](int p) {
        if (p < 0 || p > 4) throw InputError("the nerve is enumerated up to dimension 4");
        const auto& P = Bg->data();
        const auto& lay = simplex_layout(p, 4);
        check_budget(mul_saturating(sizes(p), p == 4 ? P.n_b() : 1), p, "bicategorical group nerve");
        std::vector<Element> out;
        const int ng = static_cast<int>(P.n_group());
        const auto na = P.n_a(), nb = P.n_b();
        const int nx = p * (p - 1) / 2;
        std::vector<int> s(p, 0);
        std::vector<std::uint32_t> x0(nx, 0);
        auto bump = [](auto& v, auto n) {
            for (std::size_t k = v.size(); k-- > 0;) {
                if (++v[k] < n) return true;
                v[k] = 0;
            }
            return false;
        };
        do {
            do {
                auto S = skeleton(P, Bg->a(), s, x0);
                if (!typing_holds(P, Bg->a(), S)) continue;
                Element e(lay.size(), 0);
                for (int i = 0; i <= p; ++i)
                    for (int j = i + 1; j <= p; ++j) e[lay.at({i, j})] = S.F[i][j];
                for (const auto& [ijk, v] : S.x)
                    e[lay.at({ijk[0], ijk[1], ijk[2]})] = v;
                if (p < 3) {
                    out.push_back(std::move(e));
                    continue;
                }
                if (p == 3) {
                    for (std::uint32_t u = 0; u < nb; ++u) {
                        e[lay.at({0, 1, 2, 3})] = u;
                        out.push_back(e);
                    }
                    continue;
                }
                const auto cost = Bg->cr1_cost({s[0], s[1], s[2], s[3]},
                                               {x0[0], x0[1], x0[2], x0[3], x0[4], x0[5]});
                const auto& B = Bg->b();
                std::vector<std::uint32_t> F(5, 0);  // F_0123, F_0124, F_0134, F_0234, F_1234
                do {
                    auto d = B.sub(F[0], F[1]);
                    d = B.add(B.sub(B.add(d, F[2]), F[3]), B.act(s[0], F[4]));
                    if (B.add(d, cost) != 0) continue;
                    e[lay.at({0, 1, 2, 3})] = F[0];
                    e[lay.at({0, 1, 2, 4})] = F[1];
                    e[lay.at({0, 1, 3, 4})] = F[2];
                    e[lay.at({0, 2, 3, 4})] = F[3];
                    e[lay.at({1, 2, 3, 4})] = F[4];
                    out.push_back(e);
                } while (bump(F, nb));
            } while (bump(x0, na));
        } while (bump(s, ng));
        return out;
    };
    I.face = [](int p, const Element& x, int i) {
        const auto& from = simplex_layout(p, 4);
        const auto& to = simplex_layout(p - 1, 4);
        Element out(to.size(), 0);
        for (int m = 0; m < static_cast<int>(to.subsets.size()); ++m)
            for (const auto& sub : to.subsets[m]) {
                unsigned mask = 0, src = 0;
                for (int k : sub) {
                    mask |= 1u << k;
                    src |= 1u << (k < i ? k : k + 1);
                }
                out[to.at_mask(mask)] = x[from.at_mask(src)];
            }
        return out;
    };
    I.degeneracy = [](int p, const Element& x, int j) {
        const auto& from = simplex_layout(p, 4);
        const auto& to = simplex_layout(p + 1, 4);
        Element out(to.size(), 0);
        for (int m = 1; m < static_cast<int>(to.subsets.size()); ++m)
            for (const auto& sub : to.subsets[m]) {
                unsigned mask = 0, src = 0;
                for (int k : sub) {
                    mask |= 1u << k;
                    src |= 1u << (k <= j ? k : k - 1);
                }
                if (std::popcount(src) == static_cast<int>(sub.size())) out[to.at_mask(mask)] = x[from.at_mask(src)];
            }
        return out;
    };
    return I;
}

Materialized nerve_of_bicatgroup(const BicatGroup& Bg, int N) {
    if (N < 0 || N > 5) throw InputError("the nerve is available up to dimension 5");
    auto M = materialize_full(bicatgroup_nerve_implicit(std::make_shared<const BicatGroup>(Bg)), std::min(N, 4));
    if (N == 5) {
        M.sset = coskeletal_extend(M.sset, 5);
        M.ids.resize(6);
    }
    return M;
}

Element phi_element(const PostnikovData& P, int p, const Element& x) {
    if (p < 0 || p > 4) throw InputError("φ is explicit in dimensions 0..4");
    const auto& lay = simplex_layout(p, 4);
    ModuleTable A(P.A), B(P.B);
    auto F = [&](std::initializer_list<int> idx) { return x[lay.at(idx)]; };
    auto a = [&](std::initializer_list<int> idx) { return u32(F(idx)); };
    switch (p) {
    case 0:
        return {};
    case 1:
        return {F({0, 1})};
    case 2:
        return {A.neg(a({0, 1, 2})), F({0, 1}), F({1, 2})};
    case 3: {
        const int f01 = static_cast<int>(F({0, 1}));
        const auto w = A.act(f01, a({1, 2, 3}));
        return {B.neg(a({0, 1, 2, 3})), A.sub(A.sub(a({0, 2, 3}), w), a({0, 1, 3})), A.sub(w, a({0, 2, 3})),
                A.neg(w), F({0, 1}), F({1, 2}), F({2, 3})};
    }
    default: {
        const int f01 = static_cast<int>(F({0, 1})), f02 = static_cast<int>(F({0, 2}));
        const auto b1234 = B.act(f01, a({1, 2, 3, 4}));
        const auto b0124 = a({0, 1, 2, 4}), b0134 = a({0, 1, 3, 4}), b0234 = a({0, 2, 3, 4});
        const auto w124 = A.act(f01, a({1, 2, 4})), w134 = A.act(f01, a({1, 3, 4})), w234 = A.act(f02, a({2, 3, 4}));
        const auto x024 = a({0, 2, 4}), x014 = a({0, 1, 4}), x034 = a({0, 3, 4});
        return {B.sub(B.add(B.sub(b1234, b0124), b0134), b0234),
                B.sub(B.sub(b0234, b0134), b1234),
                B.sub(b1234, b0234),
                B.neg(b1234),
                A.sub(A.sub(x024, w124), x014),
                A.sub(A.add(A.sub(w124, w134), x034), x024),
                A.sub(w134, x034),
                A.sub(A.sub(w134, w124), w234),
                A.sub(w234, w134),
                A.neg(w234),
                F({0, 1}), F({1, 2}), F({2, 3}), F({3, 4})};
    }
    }
}

SimplicialMapData phi_map(const BicatGroup& Bg, const PostnikovData& target, int N) {
    if (N < 0 || N > 5) throw InputError("φ is available up to dimension 5");
    auto src = nerve_of_bicatgroup(Bg, N);
    auto data = std::make_shared<const PostnikovData>(target);
    TwistedComplex M(data, true);
    auto MI = M.implicit();
    auto dst = build_M(target, N);
    SimplicialMapData f{std::make_shared<const TruncSSet>(src.sset), std::make_shared<const TruncSSet>(dst.sset), {}};
    const int top = std::min(N, 4);
    f.images.resize(top + 1);
    for (int p = 0; p <= top; ++p)
        for (std::uint32_t id = 0; id < src.sset.count(p); ++id)
            f.images[p].push_back(dst.ref_of(MI, p, phi_element(target, p, src.sset.label(p, id))));
    if (N == 5) extend_map_by_boundary(f, 5);
    return f;
}

SimplicialMapData phi(const PostnikovData& P, int N) { return phi_map(realize(P), P, N); }

PostnikovData nerve_cocycle(const BicatGroup& Bg) {
    const auto& P = Bg.data();
    PostnikovData out = P;
    ModuleTable A(P.A);
    const auto na = P.n_a();
    const int ng = static_cast<int>(P.n_group());
    std::array<int, 4> s{};
    std::array<std::uint32_t, 6> x0{};
    const auto& lay = simplex_layout(4, 4);
    for (std::size_t c = 0; c < P.t.size(); ++c) {
        auto idx = c;
        for (int k = 3; k >= 0; --k) {
            s[k] = static_cast<int>(idx % ng);
            idx /= ng;
        }
        for (int k = 5; k >= 0; --k) {
            x0[k] = static_cast<std::uint32_t>(idx % na);
            idx /= na;
        }
        // read (σ, x0) as a 2-skeleton of Δ[4] and evaluate φ on it with zero 3-cells
        auto S = skeleton(P, A, {s.begin(), s.end()}, {x0.begin(), x0.end()});
        Element e(lay.size(), 0);
        for (int i = 0; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j) e[lay.at({i, j})] = S.F[i][j];
        for (const auto& [ijk, v] : S.x) e[lay.at({ijk[0], ijk[1], ijk[2]})] = v;
        auto y = phi_element(P, 4, e);
        std::array<std::uint32_t, 6> xs{};
        for (int k = 0; k < 6; ++k) xs[k] = u32(y[4 + k]);
        out.t[P.t_index(xs, s)] = Bg.b().neg(Bg.cr1_cost(s, x0));
    }
    return out;
}

std::array<FiniteGroup, 3> bicatgroup_homotopy(const BicatGroup& Bg) {
    const auto& P = Bg.data();
    const int ng = static_cast<int>(P.n_group());
    const int na = static_cast<int>(P.n_a()), nb = static_cast<int>(P.n_b());
    // classes of a relation generated by the given pairs, then the table of `op` on representatives
    auto quotient = [](int n, const std::vector<std::pair<int, int>>& rel, const std::function<int(int, int)>& op) {
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
        for (auto [a, b] : rel) parent[find(a)] = find(b);
        std::vector<int> cls(n, -1), reps;
        // the class of the unit gets index 0
        for (int v = 0; v < n; ++v) {
            const int r = find(v);
            if (cls[r] < 0) {
                cls[r] = static_cast<int>(reps.size());
                reps.push_back(v);
            }
            cls[v] = cls[r];
        }
        std::vector<std::vector<int>> table(reps.size(), std::vector<int>(reps.size()));
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = 0; j < reps.size(); ++j) table[i][j] = cls[op(reps[i], reps[j])];
        return FiniteGroup(table);
    };
    // 1-cells are endomorphisms, so an equivalence σ → τ exists only for σ = τ
    std::vector<std::pair<int, int>> objects;
    for (int s = 0; s < ng; ++s)
        for (int x = 0; x < na; ++x) {
            const Cell c{s, static_cast<std::uint32_t>(x), 0};
            objects.push_back({c.object, c.object});
        }
    auto pi1 = quotient(ng, objects, [&](int a, int b) { return Bg.tensor(Bg.unit(a), Bg.unit(b)).object; });
    std::vector<std::pair<int, int>> arrows;
    for (int x = 0; x < na; ++x)
        for (int u = 0; u < nb; ++u) {
            const Cell c{0, static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(u)};
            arrows.push_back({static_cast<int>(c.one), static_cast<int>(c.one)});
        }
    auto pi2 = quotient(na, arrows, [&](int a, int b) {
        return static_cast<int>(Bg.horizontal({0, static_cast<std::uint32_t>(a), 0}, {0, static_cast<std::uint32_t>(b), 0}).one);
    });
    auto pi3 = quotient(nb, {}, [&](int a, int b) {
        return static_cast<int>(Bg.vertical({0, 0, static_cast<std::uint32_t>(a)}, {0, 0, static_cast<std::uint32_t>(b)}).two);
    });
    return {pi1, pi2, pi3};
}

}  // namespace trinerve
