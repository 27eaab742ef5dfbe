#include "trinerve/emac.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "trinerve/budget.hpp"
#include "trinerve/cat.hpp"
#include "trinerve/errors.hpp"
#include "trinerve/highercat.hpp"

namespace trinerve {

using json = nlohmann::json;

namespace {

std::vector<std::vector<int>> increasing_subsets(int p, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int lo) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = lo; v <= p; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

struct SubsetIndex {
    std::vector<std::vector<int>> cells;
    std::map<std::vector<int>, std::size_t> pos;
};

const SubsetIndex& subset_index(int p, int k) {
    static std::map<std::pair<int, int>, SubsetIndex> cache;
    auto it = cache.find({p, k});
    if (it != cache.end()) return it->second;
    SubsetIndex s;
    s.cells = increasing_subsets(p, k);
    for (std::size_t i = 0; i < s.cells.size(); ++i) s.pos[s.cells[i]] = i;
    return cache.emplace(std::pair{p, k}, std::move(s)).first->second;
}

std::string show(const Element& x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
    return s + ")";
}

std::uint32_t u32(std::int64_t v) { return static_cast<std::uint32_t>(v); }

}  // namespace

ImplicitSSet k_complex_implicit(const FgAbGroup& A, int n) {
    if (n < 1 || n > 3) throw InputError("K(A,n) is provided for n = 1, 2, 3");
    if (!A.is_finite()) throw InputError("K(A,n) needs a finite group");
    const std::size_t len = A.length();
    ImplicitSSet I;
    I.carrier = [A, n](int p) { return simplex_cocycles(A, n, p); };
    I.carrier_size = [A, n](int p) { return simplex_cocycle_count(A, n, p); };
    I.face = [n, len](int p, const Element& x, int i) {
        if (p - 1 < n) return Element{};
        const auto& src = subset_index(p, n + 1);
        const auto& dst = subset_index(p - 1, n + 1);
        Element out(dst.cells.size() * len);
        for (std::size_t c = 0; c < dst.cells.size(); ++c) {
            auto S = dst.cells[c];
            for (int& v : S)
                if (v >= i) ++v;
            auto k = src.pos.at(S);
            std::copy(x.begin() + k * len, x.begin() + (k + 1) * len, out.begin() + c * len);
        }
        return out;
    };
    I.degeneracy = [n, len](int p, const Element& x, int j) {
        const auto& dst = subset_index(p + 1, n + 1);
        if (p + 1 < n) return Element{};
        Element out(dst.cells.size() * len, 0);
        if (p < n) return out;
        const auto& src = subset_index(p, n + 1);
        for (std::size_t c = 0; c < dst.cells.size(); ++c) {
            auto S = dst.cells[c];
            if (std::find(S.begin(), S.end(), j) != S.end() && std::find(S.begin(), S.end(), j + 1) != S.end()) continue;
            for (int& v : S)
                if (v > j) --v;
            auto k = src.pos.at(S);
            std::copy(x.begin() + k * len, x.begin() + (k + 1) * len, out.begin() + c * len);
        }
        return out;
    };
    return I;
}

TruncSSet k_complex(const FgAbGroup& A, int n, int N) { return materialize(k_complex_implicit(A, n), N); }

SimplicialMapData suspension_nerve_to_k3(const FgAbGroup& A, int N) {
    if (N < 0 || N > 5) throw InputError("comparison covers dimensions 0..5");
    auto T = std::make_shared<const Strict3Cat>(suspension_sigma2(A));
    auto src = geometric_nerve_full(T, N);
    auto KI = k_complex_implicit(A, 3);
    auto K = materialize_full(KI, N);
    SimplicialMapData f{std::make_shared<const TruncSSet>(src.sset), std::make_shared<const TruncSSet>(K.sset), {}};
    const int top = std::min(N, 4);
    f.images.resize(top + 1);
    for (int p = 0; p <= top; ++p) {
        const auto& lay = simplex_layout(p, 4);
        for (std::uint32_t id = 0; id < src.sset.count(p); ++id) {
            const auto& x = src.sset.label(p, id);
            f.images[p].push_back(K.ref_of(KI, p, Element(x.begin() + lay.offset[3], x.end())));
        }
    }
    if (N == 5) extend_map_by_boundary(f, 5);
    return f;
}

PostnikovData PostnikovData::zero(const FiniteGroup& G, const GModule& A, const GModule& B) {
    PostnikovData P{G, A, B, {}, {}};
    P.check_shape();
    const std::size_t g = G.order();
    P.h.assign(g * g * g, 0);
    P.t.assign(static_cast<std::size_t>(pow_saturating(P.n_a(), 6) * g * g * g * g), 0);
    return P;
}

std::size_t PostnikovData::h_index(int s1, int s2, int s3) const {
    const std::size_t g = n_group();
    return (static_cast<std::size_t>(s1) * g + s2) * g + s3;
}

std::size_t PostnikovData::t_index(const std::array<std::uint32_t, 6>& x, const std::array<int, 4>& s) const {
    std::size_t idx = 0;
    for (auto v : x) idx = idx * n_a() + v;
    for (auto v : s) idx = idx * n_group() + static_cast<std::size_t>(v);
    return idx;
}

std::array<std::uint32_t, 6> PostnikovData::t_x(std::size_t index) const {
    std::array<std::uint32_t, 6> x{};
    index /= static_cast<std::size_t>(n_group()) * n_group() * n_group() * n_group();
    for (int k = 5; k >= 0; --k) {
        x[k] = static_cast<std::uint32_t>(index % n_a());
        index /= n_a();
    }
    return x;
}

std::array<int, 4> PostnikovData::t_sigma(std::size_t index) const {
    std::array<int, 4> s{};
    for (int k = 3; k >= 0; --k) {
        s[k] = static_cast<int>(index % n_group());
        index /= n_group();
    }
    return s;
}

void PostnikovData::check_shape() const {
    if (!(A.group() == G) || !(B.group() == G)) throw InputError("A and B must be modules over G");
    if (!A.coeff().is_finite() || !B.coeff().is_finite()) throw InputError("A and B must be finite");
    const std::size_t g = G.order();
    if (!h.empty() && h.size() != g * g * g) throw InputError("h table has the wrong size");
    for (auto v : h)
        if (v >= n_a()) throw InputError("h value out of range");
    if (!t.empty() && t.size() != pow_saturating(n_a(), 6) * g * g * g * g) throw InputError("t table has the wrong size");
    for (auto v : t)
        if (v >= n_b()) throw InputError("t value out of range");
}

std::vector<std::uint32_t> h_table(const GModule& A, const Cochain& h) {
    if (h.degree() != 3) throw InputError("h must be a 3-cochain");
    const int g = A.group().order();
    if (h.base()->objects() != 1 || h.base()->morphisms() != g) throw InputError("h must live on the group");
    if (!(h.coeff() == A.coeff())) throw InputError("h takes values in A");
    std::vector<std::uint32_t> out(static_cast<std::size_t>(g) * g * g);
    for (std::size_t i = 0; i < h.size(); ++i) {
        const auto& tu = h.tuples()[i];
        out[(static_cast<std::size_t>(tu[0]) * g + tu[1]) * g + tu[2]] =
            static_cast<std::uint32_t>(A.coeff().index_of(h.at_index(i)));
    }
    return out;
}

Cochain h_cochain(const GModule& A, const std::vector<std::uint32_t>& h) {
    auto base = std::make_shared<const FiniteCategory>(group_category(A.group()));
    Cochain c(base, A.coeff(), 3);
    const std::size_t g = A.group().order();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto& tu = c.tuples()[i];
        c.set_index(i, A.coeff().element_at(h.at((static_cast<std::size_t>(tu[0]) * g + tu[1]) * g + tu[2])));
    }
    return c;
}

TwistedComplex::TwistedComplex(std::shared_ptr<const PostnikovData> data, bool fibre)
    : data_(std::move(data)), fibre_(fibre), a_(data_->A), b_(fibre ? ModuleTable(data_->B) : ModuleTable()) {
    data_->check_shape();
    if (data_->h.empty()) throw InputError("missing h table");
    if (fibre_ && data_->t.empty()) throw InputError("missing t table");
}

std::size_t TwistedComplex::width(int dim) const {
    static const int base[] = {0, 1, 3, 6, 10};
    static const int fib[] = {0, 0, 0, 1, 4};
    if (dim < 0 || dim > 4) throw InputError("explicit formulas cover dimensions 0..4");
    return base[dim] + (fibre_ ? fib[dim] : 0);
}

std::uint64_t TwistedComplex::carrier_size(int dim) const {
    static const int nx[] = {0, 0, 1, 3, 6}, ns[] = {0, 1, 2, 3, 4}, nu[] = {0, 0, 0, 1, 4};
    if (dim < 0 || dim > 4) throw InputError("explicit formulas cover dimensions 0..4");
    auto n = mul_saturating(pow_saturating(data_->n_a(), nx[dim]), pow_saturating(data_->n_group(), ns[dim]));
    if (fibre_) n = mul_saturating(n, pow_saturating(data_->n_b(), nu[dim]));
    return n;
}

std::vector<Element> TwistedComplex::carrier(int dim) const {
    static const int nx[] = {0, 0, 1, 3, 6}, ns[] = {0, 1, 2, 3, 4}, nu[] = {0, 0, 0, 1, 4};
    auto total = carrier_size(dim);
    check_budget(total, dim, "twisted complex");
    std::vector<std::int64_t> radix;
    if (fibre_)
        for (int k = 0; k < nu[dim]; ++k) radix.push_back(data_->n_b());
    for (int k = 0; k < nx[dim]; ++k) radix.push_back(data_->n_a());
    for (int k = 0; k < ns[dim]; ++k) radix.push_back(data_->n_group());
    std::vector<Element> out;
    out.reserve(total);
    Element x(radix.size(), 0);
    for (std::uint64_t c = 0; c < total; ++c) {
        out.push_back(x);
        for (std::size_t k = radix.size(); k-- > 0;) {
            if (++x[k] < radix[k]) break;
            x[k] = 0;
        }
    }
    return out;
}

Element TwistedComplex::face(int dim, const Element& x, int i) const {
    const auto& P = *data_;
    const auto& G = P.G;
    auto A = [&](int k) { return u32(x[k]); };
    switch (dim) {
    case 1:
        return {};
    case 2: {
        const int s1 = static_cast<int>(x[1]), s2 = static_cast<int>(x[2]);
        if (i == 0) return {s2};
        if (i == 1) return {G.mul(s1, s2)};
        return {s1};
    }
    case 3: {
        const int o = fibre_ ? 1 : 0;
        const auto x1 = A(o), x2 = A(o + 1), x3 = A(o + 2);
        const int s1 = static_cast<int>(x[o + 3]), s2 = static_cast<int>(x[o + 4]), s3 = static_cast<int>(x[o + 5]);
        switch (i) {
        case 0: return {a_.act(G.inv(s1), x3), s2, s3};
        case 1: return {a_.add(x2, x3), G.mul(s1, s2), s3};
        case 2: return {a_.add(x1, x2), s1, G.mul(s2, s3)};
        default: return {a_.sub(x1, P.h_at(s1, s2, s3)), s1, s2};
        }
    }
    case 4: {
        const int o = fibre_ ? 4 : 0;
        std::array<std::uint32_t, 6> xs{};
        for (int k = 0; k < 6; ++k) xs[k] = A(o + k);
        std::array<int, 4> s{};
        for (int k = 0; k < 4; ++k) s[k] = static_cast<int>(x[o + 6 + k]);
        const auto& [x1, x2, x3, x4, x5, x6] = xs;
        const int inv1 = G.inv(s[0]);
        Element out;
        if (fibre_) {
            const auto u1 = A(0), u2 = A(1), u3 = A(2), u4 = A(3);
            switch (i) {
            case 0: out.push_back(b_.act(inv1, u4)); break;
            case 1: out.push_back(b_.add(u3, u4)); break;
            case 2: out.push_back(b_.add(u2, u3)); break;
            case 3: out.push_back(b_.add(u1, u2)); break;
            default: out.push_back(b_.sub(u1, P.t_at(xs, s))); break;
            }
        }
        auto push = [&](std::initializer_list<std::int64_t> v) { out.insert(out.end(), v); };
        switch (i) {
        case 0: push({a_.act(inv1, x4), a_.act(inv1, x5), a_.act(inv1, x6), s[1], s[2], s[3]}); break;
        case 1: push({a_.add(x2, x4), a_.add(x3, x5), x6, G.mul(s[0], s[1]), s[2], s[3]}); break;
        case 2: push({a_.add(x1, x2), x3, a_.add(x5, x6), s[0], G.mul(s[1], s[2]), s[3]}); break;
        case 3: push({x1, a_.add(x2, x3), a_.add(x4, x5), s[0], s[1], G.mul(s[2], s[3])}); break;
        default: {
            const auto h0 = a_.act(s[0], P.h_at(s[1], s[2], s[3]));
            const auto b1 = a_.add(a_.sub(x1, P.h_at(s[0], s[1], G.mul(s[2], s[3]))), P.h_at(s[0], s[1], s[2]));
            const auto b2 = a_.add(a_.sub(x2, P.h_at(G.mul(s[0], s[1]), s[2], s[3])), h0);
            const auto b3 = a_.sub(x4, h0);
            push({b1, b2, b3, s[0], s[1], s[2]});
        }
        }
        return out;
    }
    default:
        throw InputError("explicit faces cover dimensions 1..4");
    }
}

Element TwistedComplex::degeneracy(int dim, const Element& x, int j) const {
    const std::int64_t e = 0;
    switch (dim) {
    case 0:
        return {e};
    case 1:
        return j == 0 ? Element{0, e, x[0]} : Element{0, x[0], e};
    case 2: {
        const auto x1 = x[0], s1 = x[1], s2 = x[2];
        Element out;
        switch (j) {
        case 0: out = {0, 0, x1, e, s1, s2}; break;
        case 1: out = {0, x1, 0, s1, e, s2}; break;
        default: out = {x1, 0, 0, s1, s2, e}; break;
        }
        if (fibre_) out.insert(out.begin(), 0);
        return out;
    }
    case 3: {
        const int o = fibre_ ? 1 : 0;
        const std::int64_t u1 = fibre_ ? x[0] : 0;
        const auto x1 = x[o], x2 = x[o + 1], x3 = x[o + 2], s1 = x[o + 3], s2 = x[o + 4], s3 = x[o + 5];
        Element u, rest;
        switch (j) {
        case 0: u = {0, 0, 0, u1}; rest = {0, 0, 0, x1, x2, x3, e, s1, s2, s3}; break;
        case 1: u = {0, 0, u1, 0}; rest = {0, x1, x2, 0, 0, x3, s1, e, s2, s3}; break;
        case 2: u = {0, u1, 0, 0}; rest = {x1, 0, x2, 0, x3, 0, s1, s2, e, s3}; break;
        default: u = {u1, 0, 0, 0}; rest = {x1, x2, 0, x3, 0, 0, s1, s2, s3, e}; break;
        }
        if (!fibre_) return rest;
        u.insert(u.end(), rest.begin(), rest.end());
        return u;
    }
    default:
        throw InputError("explicit degeneracies cover dimensions 0..3");
    }
}

ImplicitSSet TwistedComplex::implicit() const {
    auto self = std::make_shared<const TwistedComplex>(*this);
    ImplicitSSet I;
    I.carrier = [self](int d) { return self->carrier(d); };
    I.carrier_size = [self](int d) { return self->carrier_size(d); };
    I.face = [self](int d, const Element& x, int i) { return self->face(d, x, i); };
    I.degeneracy = [self](int d, const Element& x, int j) { return self->degeneracy(d, x, j); };
    return I;
}

IdentityCheck check_twisted_identities(const TwistedComplex& X, int top) {
    if (top < 1 || top > 4) throw InputError("identity check covers dimensions 1..4");
    IdentityCheck r;
    auto fail = [&](const std::string& what, int d, const Element& x) {
        r.violation = what + " fails at dimension " + std::to_string(d) + " on " + show(x);
    };
    for (int d = 0; d <= top && r.ok(); ++d) {
        for (const auto& x : X.carrier(d)) {
            for (int j = 1; j <= d && d >= 2; ++j)
                for (int i = 0; i < j; ++i) {
                    ++r.checked;
                    if (X.face(d - 1, X.face(d, x, j), i) != X.face(d - 1, X.face(d, x, i), j - 1)) {
                        fail("d" + std::to_string(i) + "d" + std::to_string(j) + " = d" + std::to_string(j - 1) + "d" +
                                 std::to_string(i),
                             d, x);
                        return r;
                    }
                }
            if (d >= top) continue;
            for (int j = 0; j <= d; ++j) {
                const Element y = X.degeneracy(d, x, j);
                for (int i = 0; i <= d + 1; ++i) {
                    ++r.checked;
                    Element want;
                    if (i == j || i == j + 1)
                        want = x;
                    else if (i < j)
                        want = X.degeneracy(d - 1, X.face(d, x, i), j - 1);
                    else
                        want = X.degeneracy(d - 1, X.face(d, x, i - 1), j);
                    if (X.face(d + 1, y, i) != want) {
                        fail("d" + std::to_string(i) + "s" + std::to_string(j), d, x);
                        return r;
                    }
                }
                if (d + 1 >= top) continue;
                for (int i = 0; i <= j; ++i) {
                    ++r.checked;
                    if (X.degeneracy(d + 1, X.degeneracy(d, x, j), i) != X.degeneracy(d + 1, X.degeneracy(d, x, i), j + 1)) {
                        fail("s" + std::to_string(i) + "s" + std::to_string(j), d, x);
                        return r;
                    }
                }
            }
        }
    }
    return r;
}

namespace {

std::shared_ptr<const PostnikovData> base_data(const GModule& A, const std::vector<std::uint32_t>& h) {
    auto B = GModule::trivial(A.group(), FgAbGroup::trivial());
    return std::make_shared<const PostnikovData>(PostnikovData{A.group(), A, B, h, {}});
}

}  // namespace

Materialized build_W(const GModule& A, const std::vector<std::uint32_t>& h, int N) {
    if (N < 0 || N > 5) throw InputError("W is built up to dimension 5");
    TwistedComplex W(base_data(A, h), false);
    const int top = std::min(N, 4);
    if (top >= 1) {
        auto chk = check_twisted_identities(W, top);
        if (!chk.ok()) throw VerificationError("h is not a twisted 3-cocycle: " + chk.violation);
    }
    auto M = materialize_full(W.implicit(), top);
    if (N == 5) {
        M.sset = coskeletal_extend(M.sset, 5);
        M.ids.resize(6);
    }
    return M;
}

bool validate_h(const GModule& A, const std::vector<std::uint32_t>& h) {
    TwistedComplex W(base_data(A, h), false);
    return check_twisted_identities(W, 4).ok();
}

bool is_normalized_t(const PostnikovData& P) {
    P.check_shape();
    TwistedComplex W(base_data(P.A, P.h), false);
    for (const auto& y : W.carrier(3))
        for (int j = 0; j <= 3; ++j) {
            auto z = W.degeneracy(3, y, j);
            std::array<std::uint32_t, 6> x{};
            std::array<int, 4> s{};
            for (int k = 0; k < 6; ++k) x[k] = u32(z[k]);
            for (int k = 0; k < 4; ++k) s[k] = static_cast<int>(z[6 + k]);
            if (P.t_at(x, s) != 0) return false;
        }
    return true;
}

TCheck check_t(const PostnikovData& P) {
    if (!is_normalized_t(P)) throw InputError("t does not vanish on degenerate 4-simplices");
    auto W = build_W(P.A, P.h, 5);
    const auto& X = W.sset;
    ModuleTable B(P.B);
    TCheck r;
    auto value = [&](const SimplexRef& f) -> std::uint32_t {
        if (f.degenerate()) return 0;
        const auto& y = X.label(4, f.id);
        std::array<std::uint32_t, 6> x{};
        std::array<int, 4> s{};
        for (int k = 0; k < 6; ++k) x[k] = u32(y[k]);
        for (int k = 0; k < 4; ++k) s[k] = static_cast<int>(y[6 + k]);
        return P.t_at(x, s);
    };
    const auto lead = OperatorWord::from_map(5, {0, 1});
    for (std::uint32_t id = 0; id < X.count(5); ++id) {
        ++r.checked;
        const SimplexRef w = X.nondegenerate(5, id);
        auto e = X.apply(lead, w);
        const int s1 = e.degenerate() ? 0 : static_cast<int>(X.label(1, e.id)[0]);
        std::uint32_t sum = B.act(s1, value(X.face_entry(5, id, 0)));
        for (int i = 1; i <= 5; ++i) {
            auto v = value(X.face_entry(5, id, i));
            sum = i % 2 ? B.sub(sum, v) : B.add(sum, v);
        }
        if (sum != 0) {
            for (int i = 0; i <= 5; ++i) {
                auto f = X.face_entry(5, id, i);
                Element y = f.degenerate() ? Element{-1} : X.label(4, f.id);
                r.witness.insert(r.witness.end(), y.begin(), y.end());
            }
            r.message = "δt ≠ 0 on the 5-simplex with faces " + show(r.witness);
            return r;
        }
    }
    return r;
}

bool validate_t(const PostnikovData& P) { return check_t(P).ok(); }

Materialized build_M(const PostnikovData& P, int N) {
    if (N < 0 || N > 5) throw InputError("M is built up to dimension 5");
    P.check_shape();
    if (!validate_h(P.A, P.h)) throw VerificationError("h is not a twisted 3-cocycle");
    auto chk = check_t(P);
    if (!chk.ok()) throw VerificationError("t is not a 4-cocycle: " + chk.message);
    auto data = std::make_shared<const PostnikovData>(P);
    TwistedComplex M(data, true);
    auto X = materialize_full(M.implicit(), std::min(N, 4));
    if (N == 5) {
        X.sset = coskeletal_extend(X.sset, 5);
        X.ids.resize(6);
    }
    return X;
}

std::vector<FiniteGroup> minimal_homotopy_groups(const TruncSSet& X, int max_n, KanMode kan) {
    if (max_n < 1) throw InputError("homotopy groups start at n = 1");
    if (X.trunc() < max_n + 1) throw InputError("π_n needs simplices of dimension n + 1");
    if (X.count(0) != 1) throw VerificationError("complex is not reduced: " + std::to_string(X.count(0)) + " vertices");
    auto base = [](int n) { return SimplexRef{n ? (1u << n) - 1u : 0u, 0, n}; };
    auto show_ref = [](const SimplexRef& r) {
        return "(dim " + std::to_string(r.dim) + ", id " + std::to_string(r.id) + ", degeneracies " +
               std::to_string(r.degens) + ")";
    };
    for (int m = 2; m <= max_n + 1; ++m)
        for (int k = 0; k <= m; ++k) {
            auto rep = kan_horn_check(X, m, k, kan);
            if (!rep.ok()) {
                std::string w;
                for (const auto& f : rep.witness) w += show_ref(f);
                throw VerificationError("not Kan: a Λ" + std::to_string(m) + "_" + std::to_string(k) +
                                        " horn has no filler: " + w);
            }
        }
    std::vector<FiniteGroup> out;
    for (int n = 1; n <= max_n; ++n) {
        // two simplices with one boundary, homotopic relative to it, must coincide
        for (std::uint32_t id = 0; id < X.count(n + 1); ++id) {
            const auto z = X.nondegenerate(n + 1, id);
            const auto a = X.face(z, n), b = X.face(z, n + 1);
            if (a == b) continue;
            bool rel = true;
            for (int i = 0; i < n && rel; ++i) rel = X.face(z, i) == X.degeneracy(X.face(a, i), n - 1);
            if (rel)
                throw VerificationError("not minimal: " + show_ref(a) + " and " + show_ref(b) +
                                        " are homotopic relative to their boundary via " + show_ref(z));
        }
        std::vector<SimplexRef> elems{base(n)};
        std::map<std::uint32_t, int> index;
        for (std::uint32_t id = 0; id < X.count(n); ++id) {
            const auto x = X.nondegenerate(n, id);
            bool sph = true;
            for (int i = 0; i <= n && sph; ++i) sph = X.face(x, i) == base(n - 1);
            if (!sph) continue;
            index[id] = static_cast<int>(elems.size());
            elems.push_back(x);
        }
        const int k = static_cast<int>(elems.size());
        std::vector<std::vector<int>> table(k, std::vector<int>(k, -1));
        for (int a = 0; a < k; ++a) table[0][a] = table[a][0] = a;
        auto pos = [&](const SimplexRef& r) -> int {
            if (r == base(n)) return 0;
            if (r.degenerate()) return -1;
            auto it = index.find(r.id);
            return it == index.end() ? -1 : it->second;
        };
        for (std::uint32_t id = 0; id < X.count(n + 1); ++id) {
            const auto z = X.nondegenerate(n + 1, id);
            bool ok = true;
            for (int i = 0; i < n - 1 && ok; ++i) ok = X.face(z, i) == base(n);
            if (!ok) continue;
            const int a = pos(X.face(z, n - 1)), b = pos(X.face(z, n + 1)), c = pos(X.face(z, n));
            if (a <= 0 || b <= 0) continue;
            if (c < 0) throw VerificationError("composite of two spheres is not a sphere at " + show_ref(z));
            if (table[a][b] >= 0 && table[a][b] != c)
                throw VerificationError("composition is not unique at " + show_ref(z));
            table[a][b] = c;
        }
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                if (table[a][b] < 0)
                    throw VerificationError("no composite for " + show_ref(elems[a]) + " and " + show_ref(elems[b]));
        try {
            FiniteGroup g(table);
            if (n >= 2 && !g.is_abelian()) throw VerificationError("π_" + std::to_string(n) + " is not abelian");
            out.push_back(std::move(g));
        } catch (const StructuralError& e) {
            throw VerificationError("π_" + std::to_string(n) + " composition is not a group: " + e.what());
        }
    }
    return out;
}

json postnikov_to_json(const PostnikovData& P) {
    P.check_shape();
    json entries = json::array();
    for (std::size_t i = 0; i < P.t.size(); ++i) {
        if (P.t[i] == 0) continue;
        auto x = P.t_x(i);
        json xs = json::array();
        for (auto v : x) xs.push_back(P.A.coeff().element_at(v));
        entries.push_back({{"x", xs}, {"sigma", P.t_sigma(i)}, {"value", P.B.coeff().element_at(P.t[i])}});
    }
    auto strip = [](json m) {
        m.erase("group");
        return m;
    };
    return {{"G", group_to_json(P.G)},
            {"A", strip(module_to_json(P.A))},
            {"B", strip(module_to_json(P.B))},
            {"h", cochain_to_json(h_cochain(P.A, P.h))},
            {"t", {{"order", "x1,x2,x3,x4,x5,x6,s1,s2,s3,s4"}, {"entries", entries}}}};
}

PostnikovData postnikov_from_json(const json& j) {
    try {
        PostnikovData P;
        P.G = group_from_json(j.at("G"));
        auto module = [&](const char* key) {
            json m = j.at(key);
            if (!m.is_object()) throw InputError(std::string(key) + " must be an object");
            if (!m.contains("group")) m["group"] = group_to_json(P.G);
            auto M = module_from_json(m);
            if (!(M.group() == P.G)) throw InputError(std::string(key) + " is a module over a different group");
            return M;
        };
        P.A = module("A");
        P.B = module("B");
        if (!P.A.coeff().is_finite() || !P.B.coeff().is_finite()) throw InputError("A and B must be finite");
        auto Z = PostnikovData::zero(P.G, P.A, P.B);
        P.h = Z.h;
        P.t = Z.t;
        if (j.contains("h")) {
            auto base = std::make_shared<const FiniteCategory>(group_category(P.G));
            P.h = h_table(P.A, cochain_from_json(j.at("h"), base));
        }
        if (j.contains("t")) {
            const auto& t = j.at("t");
            if (t.contains("order") && t.at("order").get<std::string>() != "x1,x2,x3,x4,x5,x6,s1,s2,s3,s4")
                throw InputError("unsupported t ordering");
            auto elem = [](const FgAbGroup& g, const json& v, const std::string& what) {
                auto e = v.get<Element>();
                if (!g.is_valid(e)) throw InputError(what + " is not a reduced element");
                return static_cast<std::uint32_t>(g.index_of(e));
            };
            if (t.contains("values")) {
                const auto& vs = t.at("values");
                if (vs.size() != P.t.size()) throw InputError("dense t table has the wrong length");
                for (std::size_t i = 0; i < vs.size(); ++i)
                    P.t[i] = elem(P.B.coeff(), vs[i], "t value " + std::to_string(i));
            }
            if (t.contains("entries")) {
                std::size_t n = 0;
                for (const auto& e : t.at("entries")) {
                    const std::string at = "t entry " + std::to_string(n++);
                    const auto& xs = e.at("x");
                    auto s = e.at("sigma").get<std::vector<int>>();
                    if (xs.size() != 6 || s.size() != 4) throw InputError(at + " needs 6 x and 4 sigma coordinates");
                    std::array<std::uint32_t, 6> x{};
                    std::array<int, 4> sg{};
                    for (int k = 0; k < 6; ++k) x[k] = elem(P.A.coeff(), xs[k], at);
                    for (int k = 0; k < 4; ++k) {
                        if (s[k] < 0 || s[k] >= P.G.order()) throw InputError(at + " names an unknown group element");
                        sg[k] = s[k];
                    }
                    P.t[P.t_index(x, sg)] = elem(P.B.coeff(), e.at("value"), at);
                }
            }
        }
        P.check_shape();
        return P;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed Postnikov data: ") + e.what());
    } catch (const StructuralError& e) {
        throw InputError(std::string("invalid Postnikov data: ") + e.what());
    }
}

}  // namespace trinerve
