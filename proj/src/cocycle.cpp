#include "trinerve/cocycle.hpp"

#include <functional>
#include <mutex>
#include <set>

#include "trinerve/budget.hpp"
#include "trinerve/errors.hpp"

namespace trinerve {

using json = nlohmann::json;

namespace {

std::string show(const std::vector<int>& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}

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

}  // namespace

std::vector<std::vector<int>> composable_tuples(const FiniteCategory& C, int n) {
    if (n < 1) throw InputError("cochain degree must be at least 1");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == n) {
            out.push_back(cur);
            return;
        }
        for (int f = 0; f < C.morphisms(); ++f) {
            if (!cur.empty() && !C.composable(cur.back(), f)) continue;
            cur.push_back(f);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

namespace {

std::mutex cache_mutex;

template <class V>
std::shared_ptr<const V> cached(std::map<std::pair<const FiniteCategory*, int>,
                                         std::pair<std::weak_ptr<const FiniteCategory>, std::shared_ptr<const V>>>& cache,
                                const std::shared_ptr<const FiniteCategory>& base, int n,
                                const std::function<std::shared_ptr<const V>()>& make) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(base.get(), n);
    auto it = cache.find(key);
    if (it != cache.end() && it->second.first.lock() == base) return it->second.second;
    auto v = make();
    cache[key] = {base, v};
    return v;
}

}  // namespace

Cochain::Cochain(std::shared_ptr<const FiniteCategory> base, FgAbGroup coeff, int degree)
    : base_(std::move(base)), coeff_(std::move(coeff)), degree_(degree) {
    if (!base_) throw InputError("cochain without a base category");
    static std::map<std::pair<const FiniteCategory*, int>,
                    std::pair<std::weak_ptr<const FiniteCategory>, std::shared_ptr<const Table>>>
        cache;
    table_ = cached<Table>(cache, base_, degree_, [&]() {
        auto t = std::make_shared<Table>();
        t->tuples = composable_tuples(*base_, degree_);
        for (std::size_t i = 0; i < t->tuples.size(); ++i) t->index[t->tuples[i]] = i;
        return std::shared_ptr<const Table>(t);
    });
    values_.assign(table_->tuples.size(), coeff_.zero());
}

std::size_t Cochain::index_of(const std::vector<int>& tuple) const {
    auto it = table_->index.find(tuple);
    if (it == table_->index.end()) throw StructuralError("not a composable tuple: " + show(tuple));
    return it->second;
}

void Cochain::set(const std::vector<int>& tuple, const Element& v) { set_index(index_of(tuple), v); }

void Cochain::set_index(std::size_t i, const Element& v) {
    coeff_.check(v);
    values_.at(i) = v;
}

bool Cochain::is_normalized() const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        bool has_id = false;
        for (int f : table_->tuples[i]) has_id = has_id || base_->is_identity(f);
        if (has_id && !coeff_.is_zero(values_[i])) return false;
    }
    return true;
}

bool Cochain::is_zero() const {
    for (const auto& v : values_)
        if (!coeff_.is_zero(v)) return false;
    return true;
}

void Cochain::check_compatible(const Cochain& o) const {
    if (!(*base_ == *o.base_) || !(coeff_ == o.coeff_) || degree_ != o.degree_)
        throw StructuralError("cochains over different bases, coefficients or degrees");
}

Cochain Cochain::operator+(const Cochain& o) const {
    check_compatible(o);
    Cochain r = *this;
    for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = coeff_.add(values_[i], o.values_[i]);
    return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::operator-() const {
    Cochain r = *this;
    for (auto& v : r.values_) v = coeff_.neg(v);
    return r;
}

bool Cochain::operator==(const Cochain& o) const {
    return degree_ == o.degree_ && coeff_ == o.coeff_ && *base_ == *o.base_ && values_ == o.values_;
}

void for_each_normalized_cochain(std::shared_ptr<const FiniteCategory> base, const FgAbGroup& coeff, int degree,
                                 const std::function<bool(const Cochain&)>& fn) {
    if (!coeff.is_finite()) throw InputError("enumeration needs finite coefficients");
    Cochain c(std::move(base), coeff, degree);
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < c.size(); ++i) {
        bool has_id = false;
        for (int f : c.tuples()[i]) has_id = has_id || c.base()->is_identity(f);
        if (!has_id) free.push_back(i);
    }
    const std::uint64_t n = coeff.order();
    check_budget(pow_saturating(n, free.size()), degree, "normalized cochains");
    auto elems = enumerate_elements(coeff);
    std::vector<std::uint64_t> digit(free.size(), 0);
    while (true) {
        if (!fn(c)) return;
        // odometer increment, last free tuple fastest
        std::size_t k = free.size();
        while (k > 0) {
            --k;
            if (++digit[k] < n) {
                c.set_index(free[k], elems[digit[k]]);
                break;
            }
            digit[k] = 0;
            c.set_index(free[k], elems[0]);
            if (k == 0) return;
        }
        if (free.empty()) return;
    }
}

std::vector<Cochain> normalized_cochains(std::shared_ptr<const FiniteCategory> base, const FgAbGroup& coeff,
                                         int degree) {
    std::vector<Cochain> out;
    for_each_normalized_cochain(std::move(base), coeff, degree, [&](const Cochain& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

namespace {

// For each (n+1)-tuple: indices of its n+2 faces among the n-tuples.
struct FaceIndex {
    std::vector<std::vector<std::size_t>> faces;
};

Cochain coboundary_impl(const Cochain& c, const GModule* A) {
    const int n = c.degree();
    if (n < 1 || n > 3) throw InputError("coboundary is implemented for degrees 1, 2 and 3");
    const auto& G = c.coeff();
    Cochain out(c.base(), G, n + 1);
    static std::map<std::pair<const FiniteCategory*, int>,
                    std::pair<std::weak_ptr<const FiniteCategory>, std::shared_ptr<const FaceIndex>>>
        cache;
    auto fi = cached<FaceIndex>(cache, c.base(), n, [&]() {
        const auto& C = *c.base();
        auto f = std::make_shared<FaceIndex>();
        for (const auto& x : out.tuples()) {
            std::vector<std::size_t> idx;
            idx.push_back(c.index_of(std::vector<int>(x.begin() + 1, x.end())));
            for (int i = 1; i <= n; ++i) {
                std::vector<int> y;
                for (int j = 0; j < n + 1; ++j) {
                    if (j == i - 1) {
                        y.push_back(C.compose(x[j], x[j + 1]));
                        ++j;
                    } else {
                        y.push_back(x[j]);
                    }
                }
                idx.push_back(c.index_of(y));
            }
            idx.push_back(c.index_of(std::vector<int>(x.begin(), x.end() - 1)));
            f->faces.push_back(std::move(idx));
        }
        return std::shared_ptr<const FaceIndex>(f);
    });
    for (std::size_t k = 0; k < out.size(); ++k) {
        const auto& idx = fi->faces[k];
        Element s = c.at_index(idx[0]);
        if (A) s = A->act(out.tuples()[k][0], s);
        for (int i = 1; i <= n + 1; ++i) s = i % 2 ? G.sub(s, c.at_index(idx[i])) : G.add(s, c.at_index(idx[i]));
        out.set_index(k, s);
    }
    return out;
}

void check_group_module(const Cochain& c, const GModule& A) {
    if (!(*c.base() == group_category(A.group())) || !(c.coeff() == A.coeff()))
        throw InputError("cochain does not live on the module's group with the module's coefficients");
}

}  // namespace

Cochain coboundary(const Cochain& c) { return coboundary_impl(c, nullptr); }

Cochain coboundary_twisted(const Cochain& c, const GModule& A) {
    check_group_module(c, A);
    return coboundary_impl(c, &A);
}

Cochain rep_boundary(const Cochain& c) { return -coboundary(c); }

bool is_z3_category(const Cochain& F) {
    if (F.degree() != 3) throw InputError("is_z3_category needs a 3-cochain");
    const auto& C = *F.base();
    const auto& G = F.coeff();
    for (const auto& x : composable_tuples(C, 4)) {
        int a = x[0], b = x[1], c = x[2], d = x[3];
        auto lhs = G.add(G.add(F.at({b, c, d}), F.at({a, C.compose(b, c), d})), F.at({a, b, c}));
        auto rhs = G.add(F.at({C.compose(a, b), c, d}), F.at({a, b, C.compose(c, d)}));
        if (lhs != rhs) return false;
    }
    return true;
}

std::vector<int> twisted_violation(const GModule& A, const Cochain& c) {
    check_group_module(c, A);
    if (c.degree() != 3) throw InputError("the twisted group condition is checked in degree 3");
    auto d = coboundary_twisted(c, A);
    for (std::size_t k = 0; k < d.size(); ++k)
        if (!A.coeff().is_zero(d.at_index(k))) return d.tuples()[k];
    return {};
}

bool is_z_group_twisted(const GModule& A, int n, const Cochain& c) {
    if (n == 4)
        throw InputError("degree-4 twisted cocycles live on the twisted base; use validate_t from the emac module");
    if (n != 3) throw InputError("is_z_group_twisted supports n = 3");
    return twisted_violation(A, c).empty();
}

std::uint64_t simplex_cocycle_count(const FgAbGroup& A, int n, int p) {
    if (!A.is_finite()) throw InputError("cocycle enumeration needs a finite group");
    if (n < 1) throw InputError("cocycle degree must be at least 1");
    if (p < n) return 1;
    std::uint64_t free = 1;
    for (int i = 0; i < n; ++i) free = free * static_cast<std::uint64_t>(p - i) / static_cast<std::uint64_t>(i + 1);
    return pow_saturating(A.order(), free);
}

std::vector<Element> simplex_cocycles(const FgAbGroup& A, int n, int p) {
    const std::uint64_t total = simplex_cocycle_count(A, n, p);
    check_budget(total, p, "simplex cocycles");
    auto cells = increasing_subsets(p, n + 1);
    std::map<std::vector<int>, std::size_t> pos;
    for (std::size_t i = 0; i < cells.size(); ++i) pos[cells[i]] = i;
    std::vector<std::size_t> free, bound;
    for (std::size_t i = 0; i < cells.size(); ++i) (cells[i][0] == 0 ? free : bound).push_back(i);
    const std::size_t len = A.length();
    const auto order = A.order();
    auto elems = enumerate_elements(A);
    std::vector<Element> out;
    out.reserve(total);
    for (std::uint64_t code = 0; code < total; ++code) {
        Element x(cells.size() * len, 0);
        auto put = [&](std::size_t i, const Element& v) { std::copy(v.begin(), v.end(), x.begin() + i * len); };
        auto get = [&](std::size_t i) { return Element(x.begin() + i * len, x.begin() + (i + 1) * len); };
        std::uint64_t r = code;
        for (auto it = free.rbegin(); it != free.rend(); ++it) {
            put(*it, elems[r % order]);
            r /= order;
        }
        // the cocycle relation on {0} ∪ S determines the value on S
        for (std::size_t i : bound) {
            const auto& S = cells[i];
            Element s = A.zero();
            for (std::size_t j = 0; j < S.size(); ++j) {
                std::vector<int> f{0};
                for (std::size_t k = 0; k < S.size(); ++k)
                    if (k != j) f.push_back(S[k]);
                auto v = get(pos[f]);
                s = j % 2 ? A.sub(s, v) : A.add(s, v);
            }
            put(i, s);
        }
        out.push_back(std::move(x));
    }
    return out;
}

Rep1Cell rep1_cell(const Cochain& F, const Cochain& phi) {
    if (F.degree() != 3 || phi.degree() != 2) throw StructuralError("a 1-cell is a 2-cochain on a 3-cocycle");
    return {F, F + rep_boundary(phi), phi};
}

Rep1Cell rep1_identity(const Cochain& F) { return {F, F, Cochain(F.base(), F.coeff(), 2)}; }

Rep1Cell rep1_compose(const Rep1Cell& psi, const Rep1Cell& phi) {
    if (!(phi.target == psi.source)) throw StructuralError("1-cells are not composable");
    return {phi.source, psi.target, phi.phi + psi.phi};
}

Rep1Cell rep1_inverse(const Rep1Cell& phi) { return {phi.target, phi.source, -phi.phi}; }

Rep2Cell rep2_cell(const Rep1Cell& phi, const Cochain& m) {
    if (m.degree() != 1) throw StructuralError("a 2-cell is a 1-cochain");
    Rep1Cell psi{phi.source, phi.target, phi.phi + rep_boundary(m)};
    return {phi, psi, m};
}

Rep2Cell rep2_identity(const Rep1Cell& phi) { return {phi, phi, Cochain(phi.phi.base(), phi.phi.coeff(), 1)}; }

Rep2Cell rep2_vertical(const Rep2Cell& n, const Rep2Cell& m) {
    if (!(m.target == n.source)) throw StructuralError("2-cells are not vertically composable");
    return {m.source, n.target, m.m + n.m};
}

Rep2Cell rep2_horizontal(const Rep2Cell& n, const Rep2Cell& m) {
    return {rep1_compose(n.source, m.source), rep1_compose(n.target, m.target), m.m + n.m};
}

Rep2Cell rep2_inverse(const Rep2Cell& m) { return {m.target, m.source, -m.m}; }

Rep2Report rep2_validate(std::shared_ptr<const FiniteCategory> I, const FgAbGroup& A, std::size_t max_violations) {
    Rep2Report rep;
    auto fail = [&](const std::string& s) {
        if (rep.violations.size() < max_violations) rep.violations.push_back(s);
    };
    auto check = [&](bool ok, const std::string& what) {
        ++rep.checked;
        if (!ok) fail(what);
    };
    std::vector<Cochain> objects;
    for (auto& F : normalized_cochains(I, A, 3))
        if (is_z3_category(F)) objects.push_back(F);
    auto phis = normalized_cochains(I, A, 2);
    auto ms = normalized_cochains(I, A, 1);
    auto is_object = [&](const Cochain& F) { return F.is_normalized() && is_z3_category(F); };

    std::vector<Rep1Cell> ones;
    for (const auto& F : objects)
        for (const auto& p : phis) {
            auto c = rep1_cell(F, p);
            check(is_object(c.target), "1-cell target is not a normalized 3-cocycle");
            ones.push_back(c);
        }
    std::vector<Rep2Cell> twos;
    for (const auto& c : ones)
        for (const auto& m : ms) {
            auto t = rep2_cell(c, m);
            check(t.target.target == c.target && t.target.phi.is_normalized(), "2-cell target changes the boundary");
            twos.push_back(t);
        }
    rep.objects = objects.size();
    rep.one_cells = ones.size();
    rep.two_cells = twos.size();

    for (const auto& f : ones) {
        check(rep1_compose(f, rep1_identity(f.source)) == f && rep1_compose(rep1_identity(f.target), f) == f,
              "1-cell unit law");
        auto inv = rep1_inverse(f);
        check(rep1_compose(inv, f) == rep1_identity(f.source) && rep1_compose(f, inv) == rep1_identity(f.target),
              "1-cell is not invertible");
        for (const auto& g : ones) {
            if (!(g.source == f.target)) continue;
            for (const auto& h : ones) {
                if (!(h.source == g.target)) continue;
                check(rep1_compose(h, rep1_compose(g, f)) == rep1_compose(rep1_compose(h, g), f),
                      "1-cell associativity");
            }
        }
    }
    for (const auto& m : twos) {
        check(rep2_vertical(m, rep2_identity(m.source)) == m && rep2_vertical(rep2_identity(m.target), m) == m,
              "2-cell vertical unit law");
        auto inv = rep2_inverse(m);
        check(rep2_vertical(inv, m) == rep2_identity(m.source) && rep2_vertical(m, inv) == rep2_identity(m.target),
              "2-cell is not invertible");
        auto idl = rep2_identity(rep1_identity(m.source.target));
        auto idr = rep2_identity(rep1_identity(m.source.source));
        check(rep2_horizontal(idl, m).m == m.m && rep2_horizontal(m, idr).m == m.m, "2-cell horizontal unit law");
        for (const auto& n : twos) {
            if (!(n.source == m.target)) continue;
            for (const auto& k : twos)
                if (k.source == n.target)
                    check(rep2_vertical(k, rep2_vertical(n, m)) == rep2_vertical(rep2_vertical(k, n), m),
                          "2-cell vertical associativity");
        }
    }
    // interchange: (n2·n1)∘(m2·m1) = (n2∘m2)·(n1∘m1)
    for (const auto& m1 : twos)
        for (const auto& m2 : twos) {
            if (!(m2.source == m1.target)) continue;
            for (const auto& n1 : twos) {
                if (!(n1.source.source == m1.source.target)) continue;
                for (const auto& n2 : twos) {
                    if (!(n2.source == n1.target)) continue;
                    auto lhs = rep2_horizontal(rep2_vertical(n2, n1), rep2_vertical(m2, m1));
                    auto rhs = rep2_vertical(rep2_horizontal(n2, m2), rep2_horizontal(n1, m1));
                    check(lhs == rhs, "interchange law");
                }
            }
        }
    return rep;
}

void BraidedStrict::check() const {
    const auto& C = category;
    const int n = C.objects(), m = C.morphisms();
    auto fail = [](const std::string& s) { throw StructuralError("braided monoidal category: " + s); };
    if (static_cast<int>(tensor_objects.size()) != n || static_cast<int>(tensor_morphisms.size()) != m ||
        static_cast<int>(braiding.size()) != n)
        fail("table sizes do not match the category");
    if (unit < 0 || unit >= n) fail("unit out of range");
    auto to = [&](int x, int y) { return tensor_objects[x][y]; };
    auto tm = [&](int f, int g) { return tensor_morphisms[f][g]; };
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(tensor_objects[x].size()) != n || static_cast<int>(braiding[x].size()) != n)
            fail("table sizes do not match the category");
        for (int y = 0; y < n; ++y)
            if (to(x, y) < 0 || to(x, y) >= n) fail("object tensor out of range");
    }
    for (int f = 0; f < m; ++f) {
        if (static_cast<int>(tensor_morphisms[f].size()) != m) fail("table sizes do not match the category");
        for (int g = 0; g < m; ++g)
            if (tm(f, g) < 0 || tm(f, g) >= m) fail("morphism tensor out of range");
    }
    for (int x = 0; x < n; ++x) {
        if (to(unit, x) != x || to(x, unit) != x) fail("unit law on objects fails (not strict)");
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (to(to(x, y), z) != to(x, to(y, z))) fail("tensor is not strictly associative on objects");
    }
    const int uid = C.identity(unit);
    for (int f = 0; f < m; ++f) {
        if (tm(uid, f) != f || tm(f, uid) != f) fail("unit law on morphisms fails");
        for (int g = 0; g < m; ++g) {
            int fg = tm(f, g);
            if (C.source(fg) != to(C.source(f), C.source(g)) || C.target(fg) != to(C.target(f), C.target(g)))
                fail("tensor of morphisms has wrong boundary");
            for (int h = 0; h < m; ++h)
                if (tm(fg, h) != tm(f, tm(g, h))) fail("tensor is not strictly associative on morphisms");
        }
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (tm(C.identity(x), C.identity(y)) != C.identity(to(x, y))) fail("tensor does not preserve identities");
    for (int f = 0; f < m; ++f)
        for (int f2 = 0; f2 < m; ++f2) {
            if (!C.composable(f, f2)) continue;
            for (int g = 0; g < m; ++g)
                for (int g2 = 0; g2 < m; ++g2) {
                    if (!C.composable(g, g2)) continue;
                    if (tm(C.compose(f, f2), C.compose(g, g2)) != C.compose(tm(f, g), tm(f2, g2)))
                        fail("tensor is not functorial");
                }
        }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int c = braiding[x][y];
            if (c < 0 || c >= m || C.source(c) != to(x, y) || C.target(c) != to(y, x)) fail("braiding has wrong boundary");
            bool inv = false;
            for (int d : C.hom(to(y, x), to(x, y)))
                inv = inv || (C.compose(d, c) == C.identity(to(x, y)) && C.compose(c, d) == C.identity(to(y, x)));
            if (!inv) fail("braiding is not invertible");
            for (int z = 0; z < n; ++z) {
                if (braiding[x][to(y, z)] != C.compose(tm(C.identity(y), braiding[x][z]), tm(c, C.identity(z))))
                    fail("first hexagon fails");
                if (braiding[to(x, y)][z] != C.compose(tm(braiding[x][z], C.identity(y)), tm(C.identity(x), braiding[y][z])))
                    fail("second hexagon fails");
            }
        }
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            int lhs = C.compose(tm(g, f), braiding[C.source(f)][C.source(g)]);
            int rhs = C.compose(braiding[C.target(f)][C.target(g)], tm(f, g));
            if (lhs != rhs) fail("braiding is not natural");
        }
}

BraidedStrict braided_from_abelian(const FgAbGroup& A) {
    auto elems = enumerate_elements(A);
    const int m = static_cast<int>(elems.size());
    std::vector<std::vector<int>> add(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) add[a][b] = static_cast<int>(A.index_of(A.add(elems[a], elems[b])));
    BraidedStrict B{FiniteCategory(1, std::vector<int>(m, 0), std::vector<int>(m, 0), {0}, add), {{0}}, add, 0, {{0}}};
    B.check();
    return B;
}

BraidedStrict braided_discrete(const FgAbGroup& A) {
    auto elems = enumerate_elements(A);
    const int m = static_cast<int>(elems.size());
    std::vector<std::vector<int>> add(m, std::vector<int>(m)), comp(m, std::vector<int>(m, -1));
    std::vector<int> ids(m);
    for (int a = 0; a < m; ++a) {
        ids[a] = a;
        comp[a][a] = a;
        for (int b = 0; b < m; ++b) add[a][b] = static_cast<int>(A.index_of(A.add(elems[a], elems[b])));
    }
    BraidedStrict B{FiniteCategory(m, ids, ids, ids, comp), add, add, 0, add};
    B.check();
    return B;
}

namespace {

struct BraidedLayout {
    std::vector<std::vector<int>> triples, quads;
    std::map<std::vector<int>, int> tpos, qpos;
    explicit BraidedLayout(int p) {
        triples = increasing_subsets(p, 3);
        quads = increasing_subsets(p, 4);
        for (std::size_t i = 0; i < triples.size(); ++i) tpos[triples[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < quads.size(); ++i) qpos[quads[i]] = static_cast<int>(triples.size() + i);
    }
};

const BraidedLayout& braided_layout(int p) {
    static std::map<int, std::unique_ptr<BraidedLayout>> cache;
    auto& slot = cache[p];
    if (!slot) slot = std::make_unique<BraidedLayout>(p);
    return *slot;
}

// Values on arbitrary (possibly repeating) index tuples of a simplex; repeats give units/identities.
struct BraidedView {
    const BraidedStrict& C;
    const BraidedLayout& L;
    const Element& x;
    int obj(int i, int j, int k) const {
        if (i == j || j == k) return C.unit;
        return static_cast<int>(x[L.tpos.at({i, j, k})]);
    }
    int mor(int i, int j, int k, int l) const {
        if (i == j || j == k || k == l) return C.category.identity(C.tensor_objects[obj(j, k, l)][obj(i, j, l)]);
        return static_cast<int>(x[L.qpos.at({i, j, k, l})]);
    }
    bool pentagon(int i, int j, int k, int l, int m) const {
        const auto& K = C.category;
        auto tm = [&](int f, int g) { return C.tensor_morphisms[f][g]; };
        auto id = [&](int o) { return K.identity(o); };
        int lhs = K.compose(tm(mor(i, j, k, l), id(obj(i, l, m))),
                            K.compose(tm(id(obj(j, k, l)), mor(i, j, l, m)), tm(mor(j, k, l, m), id(obj(i, j, m)))));
        int rhs = K.compose(tm(id(obj(i, j, k)), mor(i, k, l, m)),
                            K.compose(tm(C.braiding[obj(k, l, m)][obj(i, j, k)], id(obj(i, k, m))),
                                      tm(id(obj(k, l, m)), mor(i, j, k, m))));
        return lhs == rhs;
    }
};

}  // namespace

std::vector<Element> z3_braided(const BraidedStrict& C, int p) {
    C.check();
    if (p < 0) throw InputError("negative dimension");
    const auto& L = braided_layout(p);
    const auto& K = C.category;
    std::vector<Element> out;
    Element x(L.triples.size() + L.quads.size(), 0);
    std::uint64_t produced = 0;
    std::function<void(std::size_t)> quads = [&](std::size_t q) {
        if (q == L.quads.size()) {
            BraidedView v{C, L, x};
            for (const auto& s : increasing_subsets(p, 5))
                if (!v.pentagon(s[0], s[1], s[2], s[3], s[4])) return;
            check_budget(++produced, p, "braided 3-cocycles");
            out.push_back(x);
            return;
        }
        const auto& Q = L.quads[q];
        BraidedView v{C, L, x};
        int i = Q[0], j = Q[1], k = Q[2], l = Q[3];
        int src = C.tensor_objects[v.obj(j, k, l)][v.obj(i, j, l)];
        int tgt = C.tensor_objects[v.obj(i, j, k)][v.obj(i, k, l)];
        for (int f : K.hom(src, tgt)) {
            x[L.triples.size() + q] = f;
            quads(q + 1);
        }
    };
    std::function<void(std::size_t)> triples = [&](std::size_t t) {
        if (t == L.triples.size()) {
            quads(0);
            return;
        }
        for (int o = 0; o < K.objects(); ++o) {
            x[t] = o;
            triples(t + 1);
        }
    };
    triples(0);
    return out;
}

ImplicitSSet z3_braided_implicit(std::shared_ptr<const BraidedStrict> C) {
    C->check();
    ImplicitSSet I;
    I.carrier = [C](int p) { return z3_braided(*C, p); };
    I.face = [](int p, const Element& x, int r) {
        const auto& L = braided_layout(p);
        Element y;
        for (const auto& t : L.triples)
            if (std::find(t.begin(), t.end(), r) == t.end()) y.push_back(x[L.tpos.at(t)]);
        for (const auto& q : L.quads)
            if (std::find(q.begin(), q.end(), r) == q.end()) y.push_back(x[L.qpos.at(q)]);
        return y;
    };
    I.degeneracy = [C](int p, const Element& x, int r) {
        const auto& L = braided_layout(p);
        const auto& U = braided_layout(p + 1);
        BraidedView v{*C, L, x};
        auto th = [r](int a) { return a <= r ? a : a - 1; };
        Element y;
        for (const auto& t : U.triples) y.push_back(v.obj(th(t[0]), th(t[1]), th(t[2])));
        for (const auto& q : U.quads) y.push_back(v.mor(th(q[0]), th(q[1]), th(q[2]), th(q[3])));
        return y;
    };
    return I;
}

json cochain_to_json(const Cochain& c) {
    json tuples = json::array(), values = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.coeff().is_zero(c.at_index(i))) continue;
        tuples.push_back(c.tuples()[i]);
        values.push_back(c.at_index(i));
    }
    return {{"degree", c.degree()}, {"coeff", fgab_to_json(c.coeff())}, {"tuples", tuples}, {"values", values}};
}

Cochain cochain_from_json(const json& j, std::shared_ptr<const FiniteCategory> base) {
    try {
        Cochain c(std::move(base), fgab_from_json(j.at("coeff")), j.at("degree").get<int>());
        const auto& ts = j.at("tuples");
        const auto& vs = j.at("values");
        if (ts.size() != vs.size()) throw InputError("cochain tuples and values differ in length");
        for (std::size_t i = 0; i < ts.size(); ++i) {
            auto t = ts[i].get<std::vector<int>>();
            if (static_cast<int>(t.size()) != c.degree())
                throw InputError("cochain tuple " + std::to_string(i) + " has the wrong length");
            for (int f : t)
                if (f < 0 || f >= c.base()->morphisms())
                    throw InputError("cochain tuple " + std::to_string(i) + " names an unknown morphism");
            Element v = vs[i].get<Element>();
            if (!c.coeff().is_valid(v)) throw InputError("cochain value " + std::to_string(i) + " is not a reduced element");
            try {
                c.set(t, v);
            } catch (const StructuralError& e) {
                throw InputError("cochain tuple " + std::to_string(i) + ": " + e.what());
            }
        }
        return c;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed cochain: ") + e.what());
    }
}

}  // namespace trinerve
