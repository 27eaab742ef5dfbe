#include "trinerve/highercat.hpp"

#include <algorithm>
#include <array>

#include "trinerve/budget.hpp"
#include "trinerve/errors.hpp"

namespace trinerve {

namespace {

std::string cell_name(int k, int x) { return std::to_string(k) + "-cell " + std::to_string(x); }

}  // namespace

StrictCat::StrictCat(StrictCatData data) : d_(std::move(data)) {
    const int n = d_.dim;
    if (n < 1 || n > 3) throw StructuralError("strict category dimension must be 1, 2 or 3");
    if (static_cast<int>(d_.cells.size()) != n + 1) throw StructuralError("need a cell count per dimension");
    for (int c : d_.cells)
        if (c < 0) throw StructuralError("negative cell count");
    if (d_.cells[0] == 0) {
        for (int k = 1; k <= n; ++k)
            if (d_.cells[k] != 0) throw StructuralError("cells without objects");
    }
    d_.source.resize(n + 1);
    d_.target.resize(n + 1);
    if (static_cast<int>(d_.identity.size()) != n) throw StructuralError("need identity tables for dimensions below the top");
    if (static_cast<int>(d_.comp.size()) != n + 1) throw StructuralError("need composition tables per dimension");
    for (int k = 1; k <= n; ++k) {
        const int m = d_.cells[k];
        if (static_cast<int>(d_.source[k].size()) != m || static_cast<int>(d_.target[k].size()) != m)
            throw StructuralError("boundary tables of dimension " + std::to_string(k) + " have the wrong size");
        for (int x = 0; x < m; ++x) {
            int s = d_.source[k][x], t = d_.target[k][x];
            if (s < 0 || s >= d_.cells[k - 1] || t < 0 || t >= d_.cells[k - 1])
                throw StructuralError(cell_name(k, x) + " has a boundary out of range");
            if (k >= 2 && (d_.source[k - 1][s] != d_.source[k - 1][t] || d_.target[k - 1][s] != d_.target[k - 1][t]))
                throw StructuralError(cell_name(k, x) + " is not globular");
        }
    }
    for (int k = 0; k < n; ++k) {
        if (static_cast<int>(d_.identity[k].size()) != d_.cells[k])
            throw StructuralError("identity table of dimension " + std::to_string(k) + " has the wrong size");
        for (int x = 0; x < d_.cells[k]; ++x) {
            int e = d_.identity[k][x];
            if (e < 0 || e >= d_.cells[k + 1] || d_.source[k + 1][e] != x || d_.target[k + 1][e] != x)
                throw StructuralError("identity on " + cell_name(k, x) + " has the wrong boundary");
        }
    }
    between_.resize(n + 1);
    for (int k = 1; k <= n; ++k)
        for (int x = 0; x < d_.cells[k]; ++x) between_[k][{d_.source[k][x], d_.target[k][x]}].push_back(x);

    // composition tables, boundaries of composites, units, associativity, interchange
    for (int k = 1; k <= n; ++k) {
        const std::size_t m = static_cast<std::size_t>(d_.cells[k]);
        if (static_cast<int>(d_.comp[k].size()) != k)
            throw StructuralError("need one composition table per boundary dimension at dimension " + std::to_string(k));
        for (int j = 0; j < k; ++j) {
            auto& tab = d_.comp[k][j];
            if (tab.size() != m * m) throw StructuralError("composition table has the wrong size");
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) {
                    int c = tab[a * m + b];
                    bool ok = composable(k, j, static_cast<int>(a), static_cast<int>(b));
                    std::string what = cell_name(k, static_cast<int>(a)) + " ∘" + std::to_string(j) + " " +
                                       std::to_string(b);
                    if (!ok) {
                        if (c != -1) throw StructuralError("composite given for a non-composable pair: " + what);
                        continue;
                    }
                    if (c < 0 || c >= static_cast<int>(m)) throw StructuralError("composite missing: " + what);
                    int sa = source(k, static_cast<int>(a)), sb = source(k, static_cast<int>(b));
                    int ta = target(k, static_cast<int>(a)), tb = target(k, static_cast<int>(b));
                    bool bound = j == k - 1 ? (source(k, c) == sb && target(k, c) == ta)
                                            : (source(k, c) == compose(k - 1, j, sa, sb) &&
                                               target(k, c) == compose(k - 1, j, ta, tb));
                    if (!bound) throw StructuralError("composite has the wrong boundary: " + what);
                }
            for (int a = 0; a < static_cast<int>(m); ++a) {
                int lu = lift(j, target_at(k, a, j), k), ru = lift(j, source_at(k, a, j), k);
                if (compose(k, j, lu, a) != a || compose(k, j, a, ru) != a)
                    throw StructuralError("unit law fails for " + cell_name(k, a) + " along " + std::to_string(j));
            }
            std::vector<std::vector<int>> by_target(d_.cells[j]);
            for (int a = 0; a < static_cast<int>(m); ++a) by_target[target_at(k, a, j)].push_back(a);
            for (int b = 0; b < static_cast<int>(m); ++b) {
                std::vector<int> left;
                for (int a = 0; a < static_cast<int>(m); ++a)
                    if (composable(k, j, a, b)) left.push_back(a);
                for (int c : by_target[source_at(k, b, j)]) {
                    int bc = compose(k, j, b, c);
                    for (int a : left)
                        if (compose(k, j, compose(k, j, a, b), c) != compose(k, j, a, bc))
                            throw StructuralError("associativity fails along " + std::to_string(j) + " at dimension " +
                                                  std::to_string(k));
                }
            }
        }
        if (k < n)
            for (int j = 0; j < k; ++j)
                for (int a = 0; a < d_.cells[k]; ++a)
                    for (int b = 0; b < d_.cells[k]; ++b)
                        if (composable(k, j, a, b) &&
                            identity(k, compose(k, j, a, b)) != compose(k + 1, j, identity(k, a), identity(k, b)))
                            throw StructuralError("identities do not preserve composition at dimension " +
                                                  std::to_string(k));
        for (int hi = 1; hi < k; ++hi) {
            std::vector<std::pair<int, int>> pairs;
            for (int a = 0; a < d_.cells[k]; ++a)
                for (int b = 0; b < d_.cells[k]; ++b)
                    if (composable(k, hi, a, b)) pairs.push_back({a, b});
            for (int lo = 0; lo < hi; ++lo)
                for (auto [a, b] : pairs)
                    for (auto [c, e] : pairs) {
                        if (!composable(k, lo, a, c) || !composable(k, lo, b, e)) continue;
                        int lhs = compose(k, lo, compose(k, hi, a, b), compose(k, hi, c, e));
                        int rhs = compose(k, hi, compose(k, lo, a, c), compose(k, lo, b, e));
                        if (lhs != rhs)
                            throw StructuralError("interchange fails for " + std::to_string(lo) + " < " +
                                                  std::to_string(hi) + " at dimension " + std::to_string(k));
                    }
        }
    }
}

int StrictCat::source_at(int k, int x, int j) const {
    while (k > j) x = d_.source[k--][x];
    return x;
}

int StrictCat::target_at(int k, int x, int j) const {
    while (k > j) x = d_.target[k--][x];
    return x;
}

int StrictCat::lift(int k, int x, int m) const {
    while (k < m) x = d_.identity[k++][x];
    return x;
}

int StrictCat::compose(int k, int j, int a, int b) const {
    if (k < 1 || k > d_.dim || j < 0 || j >= k) throw StructuralError("no composition along " + std::to_string(j) +
                                                                       " at dimension " + std::to_string(k));
    const std::size_t m = static_cast<std::size_t>(d_.cells[k]);
    int c = d_.comp[k][j][static_cast<std::size_t>(a) * m + b];
    if (c < 0)
        throw StructuralError(cell_name(k, a) + " and " + std::to_string(b) + " are not composable along " +
                              std::to_string(j));
    return c;
}

const std::vector<int>& StrictCat::between(int k, int s, int t) const {
    static const std::vector<int> none;
    auto it = between_[k].find({s, t});
    return it == between_[k].end() ? none : it->second;
}

bool StrictCat::operator==(const StrictCat& o) const {
    return d_.dim == o.d_.dim && d_.cells == o.d_.cells && d_.source == o.d_.source && d_.target == o.d_.target &&
           d_.identity == o.d_.identity && d_.comp == o.d_.comp;
}

Strict2Cat::Strict2Cat(StrictCatData data) : StrictCat(std::move(data)) {
    if (dim() != 2) throw StructuralError("expected a strict 2-category");
}

Strict3Cat::Strict3Cat(StrictCatData data) : StrictCat(std::move(data)) {
    if (dim() != 3) throw StructuralError("expected a strict 3-category");
}

StrictCatData tabulate(int dim, std::vector<int> cells, std::vector<std::vector<int>> source,
                       std::vector<std::vector<int>> target, std::vector<std::vector<int>> identity,
                       const std::function<int(int, int, int, int)>& compose) {
    StrictCatData d;
    d.dim = dim;
    d.cells = std::move(cells);
    d.source = std::move(source);
    d.target = std::move(target);
    d.identity = std::move(identity);
    d.comp.resize(dim + 1);
    auto bound = [&](bool src, int k, int x, int j) {
        while (k > j) {
            x = src ? d.source[k][x] : d.target[k][x];
            --k;
        }
        return x;
    };
    for (int k = 1; k <= dim; ++k) {
        const int m = d.cells[k];
        d.comp[k].assign(k, std::vector<int>(static_cast<std::size_t>(m) * m, -1));
        for (int j = 0; j < k; ++j)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    if (bound(true, k, a, j) == bound(false, k, b, j))
                        d.comp[k][j][static_cast<std::size_t>(a) * m + b] = compose(k, j, a, b);
    }
    return d;
}

Strict3Cat suspension_sigma2(const FgAbGroup& A) {
    if (!A.is_finite()) throw InputError("suspension needs a finite group");
    const int n = static_cast<int>(A.order());
    return Strict3Cat(tabulate(3, {1, 1, 1, n}, {{}, {0}, {0}, std::vector<int>(n, 0)},
                               {{}, {0}, {0}, std::vector<int>(n, 0)}, {{0}, {0}, {0}},
                               [&](int k, int, int a, int b) {
                                   if (k < 3) return 0;
                                   return static_cast<int>(A.index_of(A.add(A.element_at(a), A.element_at(b))));
                               }));
}

Strict2Cat category_as_2cat(const FiniteCategory& C) {
    const int m = C.morphisms();
    std::vector<int> ids(m);
    for (int f = 0; f < m; ++f) ids[f] = f;
    return Strict2Cat(tabulate(2, {C.objects(), m, m}, {{}, C.sources(), ids}, {{}, C.targets(), ids},
                               {C.identities(), ids}, [&](int k, int j, int a, int b) {
                                   if (k == 2 && j == 1) return a;
                                   return C.compose(a, b);
                               }));
}

Strict3Cat as_3cat(const Strict2Cat& B) {
    const auto& d = B.data();
    const int m = d.cells[2];
    std::vector<int> ids(m);
    for (int f = 0; f < m; ++f) ids[f] = f;
    auto source = d.source, target = d.target;
    source.push_back(ids);
    target.push_back(ids);
    auto identity = d.identity;
    identity.push_back(ids);
    return Strict3Cat(tabulate(3, {d.cells[0], d.cells[1], m, m}, source, target, identity,
                               [&](int k, int j, int a, int b) {
                                   if (k == 3 && j == 2) return a;
                                   return B.compose(std::min(k, 2), j, a, b);
                               }));
}

Strict3Cat category_as_3cat(const FiniteCategory& C) { return as_3cat(category_as_2cat(C)); }

namespace {

// Cells of one dimension labelled by a parallel pair of lower cells and a group element.
struct Decoration {
    std::vector<std::array<int, 3>> cells;  // (source, target, element index)
    std::map<std::array<int, 3>, int> index;
};

Decoration decorate(const StrictCat& lower, int k, const FgAbGroup& A) {
    if (!A.is_finite()) throw InputError("decorations need a finite group");
    Decoration D;
    const int n = static_cast<int>(A.order());
    for (int f = 0; f < lower.count(k); ++f)
        for (int g = 0; g < lower.count(k); ++g) {
            if (k > 0 && (lower.source(k, f) != lower.source(k, g) || lower.target(k, f) != lower.target(k, g)))
                continue;
            for (int a = 0; a < n; ++a) {
                D.index[{f, g, a}] = static_cast<int>(D.cells.size());
                D.cells.push_back({f, g, a});
            }
        }
    return D;
}

int add_index(const FgAbGroup& A, int a, int b) {
    return static_cast<int>(A.index_of(A.add(A.element_at(a), A.element_at(b))));
}

}  // namespace

Strict2Cat decorated_2cat(const FiniteCategory& C, const FgAbGroup& A2) {
    Strict2Cat base = category_as_2cat(C);
    Decoration D = decorate(base, 1, A2);
    const int n2 = static_cast<int>(D.cells.size());
    std::vector<int> s2(n2), t2(n2), id1(C.morphisms());
    for (int x = 0; x < n2; ++x) {
        s2[x] = D.cells[x][0];
        t2[x] = D.cells[x][1];
    }
    for (int f = 0; f < C.morphisms(); ++f) id1[f] = D.index.at({f, f, 0});
    return Strict2Cat(tabulate(2, {C.objects(), C.morphisms(), n2}, {{}, C.sources(), s2}, {{}, C.targets(), t2},
                               {C.identities(), id1}, [&](int k, int j, int a, int b) {
                                   if (k == 1) return C.compose(a, b);
                                   auto [fa, ga, ea] = D.cells[a];
                                   auto [fb, gb, eb] = D.cells[b];
                                   int e = add_index(A2, ea, eb);
                                   if (j == 1) return D.index.at({fb, ga, e});
                                   return D.index.at({C.compose(fa, fb), C.compose(ga, gb), e});
                               }));
}

Strict3Cat decorated_3cat(const FiniteCategory& C, const FgAbGroup& A2, const FgAbGroup& A3) {
    Strict2Cat B = decorated_2cat(C, A2);
    Decoration D = decorate(B, 2, A3);
    const auto& d = B.data();
    const int n3 = static_cast<int>(D.cells.size());
    std::vector<int> s3(n3), t3(n3), id2(d.cells[2]);
    for (int x = 0; x < n3; ++x) {
        s3[x] = D.cells[x][0];
        t3[x] = D.cells[x][1];
    }
    for (int f = 0; f < d.cells[2]; ++f) id2[f] = D.index.at({f, f, 0});
    auto source = d.source, target = d.target;
    source.push_back(s3);
    target.push_back(t3);
    auto identity = d.identity;
    identity.push_back(id2);
    return Strict3Cat(tabulate(3, {d.cells[0], d.cells[1], d.cells[2], n3}, source, target, identity,
                               [&](int k, int j, int a, int b) {
                                   if (k < 3) return B.compose(k, j, a, b);
                                   auto [fa, ga, ea] = D.cells[a];
                                   auto [fb, gb, eb] = D.cells[b];
                                   int e = add_index(A3, ea, eb);
                                   if (j == 2) return D.index.at({fb, ga, e});
                                   return D.index.at({B.compose(2, j, fa, fb), B.compose(2, j, ga, gb), e});
                               }));
}

Strict3Cat two_cell_z2() { return as_3cat(decorated_2cat(ordinal_category(0), FgAbGroup::cyclic(2))); }

CellRef pasting_eval(const StrictCat& T, const Paste& t) {
    switch (t.kind) {
        case Paste::Kind::Cell:
            if (t.dim < 0 || t.dim > T.dim() || t.id < 0 || t.id >= T.count(t.dim))
                throw StructuralError("pasting term names a missing " + cell_name(t.dim, t.id));
            return {t.dim, t.id};
        case Paste::Kind::Identity: {
            if (t.args.size() != 1) throw StructuralError("identity term needs one argument");
            CellRef x = pasting_eval(T, t.args[0]);
            if (x.dim >= T.dim()) throw StructuralError("identity on a top-dimensional cell");
            return {x.dim + 1, T.identity(x.dim, x.id)};
        }
        case Paste::Kind::Compose: {
            if (t.args.empty()) throw StructuralError("empty composite");
            std::vector<CellRef> xs;
            int m = 0;
            for (const auto& a : t.args) {
                xs.push_back(pasting_eval(T, a));
                m = std::max(m, xs.back().dim);
            }
            if (t.along < 0 || t.along >= m) throw StructuralError("composite along " + std::to_string(t.along) +
                                                                   " of cells of dimension " + std::to_string(m));
            std::vector<int> ys;
            for (auto x : xs) ys.push_back(T.lift(x.dim, x.id, m));
            auto step = [&](int a, int b) {
                if (!T.composable(m, t.along, a, b))
                    throw StructuralError("ill-typed composite along " + std::to_string(t.along) + " of " +
                                          cell_name(m, a) + " and " + std::to_string(b));
                return T.compose(m, t.along, a, b);
            };
            int left = ys[0];
            for (std::size_t i = 1; i < ys.size(); ++i) left = step(left, ys[i]);
            int right = ys.back();
            for (std::size_t i = ys.size() - 1; i-- > 0;) right = step(ys[i], right);
            if (left != right) throw StructuralError("composite depends on the evaluation order");
            return {m, left};
        }
    }
    throw StructuralError("unknown pasting term");
}

int or_tensor(const StrictCat& T, int k, const std::vector<int>& cells) {
    if (cells.empty()) throw StructuralError("empty tensor");
    if (k < 1) throw StructuralError("tensor of 0-cells");
    int acc = cells.back();
    for (std::size_t i = cells.size() - 1; i-- > 0;) {
        if (!T.composable(k, 0, cells[i], acc)) throw StructuralError("tensor factors are not composable");
        acc = T.compose(k, 0, cells[i], acc);
    }
    return acc;
}

int or_tensor_left(const StrictCat& T, int k, const std::vector<int>& cells) {
    if (cells.empty()) throw StructuralError("empty tensor");
    if (k < 1) throw StructuralError("tensor of 0-cells");
    int acc = cells[0];
    for (std::size_t i = 1; i < cells.size(); ++i) {
        if (!T.composable(k, 0, acc, cells[i])) throw StructuralError("tensor factors are not composable");
        acc = T.compose(k, 0, acc, cells[i]);
    }
    return acc;
}

void GraphRep::check(const DiGraph& g) const {
    const auto& T = *target;
    if (static_cast<int>(on_vertices.size()) != g.vertices || on_edges.size() != g.edges.size())
        throw StructuralError("graph representation tables have the wrong size");
    for (int v : on_vertices)
        if (v < 0 || v >= T.count(0)) throw StructuralError("vertex sent to a missing object");
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        int f = on_edges[e];
        auto [s, t] = g.edges[e];
        if (f < 0 || f >= T.count(1) || T.source(1, f) != on_vertices[s] || T.target(1, f) != on_vertices[t])
            throw StructuralError("edge " + std::to_string(e) + " is not sent to a 1-cell between its endpoints");
    }
}

namespace {

Paste c1(int x) { return Paste::cell(1, x); }
Paste c2(int x) { return Paste::cell(2, x); }
Paste c3(int x) { return Paste::cell(3, x); }
Paste comp(int j, std::vector<Paste> ts) { return Paste::compose(j, std::move(ts)); }

struct RepView {
    const Rep3& F;
    const FiniteCategory& C;
    const StrictCat& T;

    int arrow(int a) const { return F.on_arrows.at(a); }
    int pair(int a, int b) const {
        auto it = F.pair.find({a, b});
        if (it == F.pair.end()) throw StructuralError("missing pair cell");
        return it->second;
    }
    int triple(int a, int b, int c) const {
        auto it = F.triple.find({a, b, c});
        if (it == F.triple.end()) throw StructuralError("missing triple cell");
        return it->second;
    }
    CellRef eval(const Paste& p) const { return pasting_eval(T, p); }
};

}  // namespace

RepReport validate_rep3(const Rep3& F, std::size_t max_violations) {
    RepReport rep;
    const auto& C = *F.source;
    const auto& T = *F.target;
    RepView V{F, C, T};
    auto fail = [&](const std::string& s) {
        if (rep.violations.size() < max_violations) rep.violations.push_back(s);
    };
    const int no = C.objects(), nm = C.morphisms();
    if (static_cast<int>(F.on_objects.size()) != no || static_cast<int>(F.on_arrows.size()) != nm ||
        static_cast<int>(F.unit.size()) != no || static_cast<int>(F.left_unit.size()) != nm ||
        static_cast<int>(F.right_unit.size()) != nm) {
        fail("representation tables have the wrong size");
        return rep;
    }
    auto in_range = [&](int k, int x) { return x >= 0 && x < T.count(k); };
    bool typed = true;
    auto expect = [&](bool ok, const std::string& what) {
        ++rep.typing_checked;
        if (!ok) {
            typed = false;
            fail(what);
        }
    };
    for (int i = 0; i < no; ++i) expect(in_range(0, F.on_objects[i]), "object " + std::to_string(i) + " out of range");
    if (!typed) return rep;
    for (int a = 0; a < nm; ++a) {
        int x = F.on_arrows[a];
        expect(in_range(1, x) && T.source(1, x) == F.on_objects[C.source(a)] &&
                   T.target(1, x) == F.on_objects[C.target(a)],
               "arrow " + std::to_string(a) + " is not sent to a 1-cell between the image objects");
    }
    if (!typed) return rep;
    for (int i = 0; i < no; ++i) {
        int u = F.unit[i];
        expect(in_range(2, u) && T.source(2, u) == T.identity(0, F.on_objects[i]) &&
                   T.target(2, u) == F.on_arrows[C.identity(i)],
               "unit cell of object " + std::to_string(i) + " has the wrong boundary");
    }
    for (int a = 0; a < nm; ++a)
        for (int b = 0; b < nm; ++b) {
            if (!C.composable(a, b)) continue;
            auto it = F.pair.find({a, b});
            if (it == F.pair.end()) {
                expect(false, "missing pair cell (" + std::to_string(a) + "," + std::to_string(b) + ")");
                continue;
            }
            int x = it->second;
            expect(in_range(2, x) && T.source(2, x) == T.compose(1, 0, F.on_arrows[a], F.on_arrows[b]) &&
                       T.target(2, x) == F.on_arrows[C.compose(a, b)],
                   "pair cell (" + std::to_string(a) + "," + std::to_string(b) + ") has the wrong boundary");
        }
    if (!typed) return rep;
    auto bound3 = [&](int x, const Paste& s, const Paste& t, const std::string& what) {
        try {
            CellRef cs = V.eval(s), ct = V.eval(t);
            expect(in_range(3, x) && cs.dim == 2 && ct.dim == 2 && T.source(3, x) == cs.id && T.target(3, x) == ct.id,
                   what + " has the wrong boundary");
        } catch (const StructuralError& e) {
            expect(false, what + ": " + e.what());
        }
    };
    for (int a = 0; a < nm; ++a)
        for (int b = 0; b < nm; ++b) {
            if (!C.composable(a, b)) continue;
            for (int c = 0; c < nm; ++c) {
                if (!C.composable(b, c)) continue;
                auto it = F.triple.find({a, b, c});
                std::string what = "triple cell (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                   std::to_string(c) + ")";
                if (it == F.triple.end()) {
                    expect(false, "missing " + what);
                    continue;
                }
                int ab = C.compose(a, b), bc = C.compose(b, c);
                bound3(it->second, comp(1, {c2(V.pair(ab, c)), comp(0, {c2(V.pair(a, b)), c1(V.arrow(c))})}),
                       comp(1, {c2(V.pair(a, bc)), comp(0, {c1(V.arrow(a)), c2(V.pair(b, c))})}), what);
            }
        }
    for (int a = 0; a < nm; ++a) {
        int i = C.target(a), j = C.source(a);
        Paste ida = Paste::ident(c1(V.arrow(a)));
        bound3(F.left_unit[a], comp(1, {c2(V.pair(C.identity(i), a)), comp(0, {c2(F.unit[i]), c1(V.arrow(a))})}), ida,
               "left unit cell of arrow " + std::to_string(a));
        bound3(F.right_unit[a], comp(1, {c2(V.pair(a, C.identity(j))), comp(0, {c1(V.arrow(a)), c2(F.unit[j])})}),
               ida, "right unit cell of arrow " + std::to_string(a));
    }
    if (!typed) return rep;

    auto equal = [&](const Paste& lhs, const Paste& rhs, const std::string& what) {
        try {
            if (!(V.eval(lhs) == V.eval(rhs))) fail(what + " fails");
        } catch (const StructuralError& e) {
            fail(what + ": " + e.what());
        }
    };
    for (int a = 0; a < nm; ++a)
        for (int b = 0; b < nm; ++b) {
            if (!C.composable(a, b)) continue;
            int ab = C.compose(a, b);
            for (int c = 0; c < nm; ++c) {
                if (!C.composable(b, c)) continue;
                int bc = C.compose(b, c), abc = C.compose(ab, c);
                for (int d = 0; d < nm; ++d) {
                    if (!C.composable(c, d)) continue;
                    int cd = C.compose(c, d), bcd = C.compose(bc, d);
                    int Fa = V.arrow(a), Fb = V.arrow(b), Fc = V.arrow(c), Fd = V.arrow(d);
                    Paste lhs = comp(2, {comp(1, {c2(V.pair(a, bcd)), comp(0, {c1(Fa), c3(V.triple(b, c, d))})}),
                                         comp(1, {c3(V.triple(a, bc, d)), comp(0, {c1(Fa), c2(V.pair(b, c)), c1(Fd)})}),
                                         comp(1, {c2(V.pair(abc, d)), comp(0, {c3(V.triple(a, b, c)), c1(Fd)})})});
                    Paste rhs = comp(2, {comp(1, {c3(V.triple(a, b, cd)), comp(0, {c1(Fa), c1(Fb), c2(V.pair(c, d))})}),
                                         comp(1, {c3(V.triple(ab, c, d)), comp(0, {c2(V.pair(a, b)), c1(Fc), c1(Fd)})})});
                    ++rep.cr1_checked;
                    equal(lhs, rhs,
                          "associativity coherence at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                              std::to_string(c) + "," + std::to_string(d) + ")");
                }
            }
        }
    for (int a = 0; a < nm; ++a)
        for (int b = 0; b < nm; ++b) {
            if (!C.composable(a, b)) continue;
            int i = C.target(a), j = C.source(a), k = C.source(b);
            int ab = C.compose(a, b);
            int Fa = V.arrow(a), Fb = V.arrow(b), Fab = V.pair(a, b);
            std::string at = " at (" + std::to_string(a) + "," + std::to_string(b) + ")";
            rep.cr2_checked += 3;
            equal(comp(1, {c2(Fab), comp(0, {c3(F.right_unit[a]), c1(Fb)})}),
                  comp(2, {comp(1, {c2(Fab), comp(0, {c1(Fa), c3(F.left_unit[b])})}),
                           comp(1, {c3(V.triple(a, C.identity(j), b)), comp(0, {c1(Fa), c2(F.unit[j]), c1(Fb)})})}),
                  "middle unit coherence" + at);
            equal(comp(1, {c2(Fab), comp(0, {c3(F.left_unit[a]), c1(Fb)})}),
                  comp(2, {comp(1, {c3(F.left_unit[ab]), c2(Fab)}),
                           comp(1, {c3(V.triple(C.identity(i), a, b)), comp(0, {c2(F.unit[i]), c1(Fa), c1(Fb)})})}),
                  "left unit coherence" + at);
            equal(comp(1, {c3(F.right_unit[ab]), c2(Fab)}),
                  comp(2, {comp(1, {c2(Fab), comp(0, {c1(Fa), c3(F.right_unit[b])})}),
                           comp(1, {c3(V.triple(a, b, C.identity(k))), comp(0, {c1(Fa), c1(Fb), c2(F.unit[k])})})}),
                  "right unit coherence" + at);
        }
    rep.unitary = is_unitary(F);
    return rep;
}

bool is_unitary(const Rep3& F) {
    const auto& C = *F.source;
    const auto& T = *F.target;
    for (int i = 0; i < C.objects(); ++i) {
        int one = T.identity(0, F.on_objects[i]);
        if (F.on_arrows[C.identity(i)] != one || F.unit[i] != T.identity(1, one)) return false;
    }
    for (int a = 0; a < C.morphisms(); ++a) {
        int id2 = T.identity(1, F.on_arrows[a]);
        int i = C.target(a), j = C.source(a);
        auto l = F.pair.find({C.identity(i), a}), r = F.pair.find({a, C.identity(j)});
        if (l == F.pair.end() || r == F.pair.end() || l->second != id2 || r->second != id2) return false;
        if (F.left_unit[a] != T.identity(2, id2) || F.right_unit[a] != T.identity(2, id2)) return false;
    }
    for (const auto& [key, x] : F.triple)
        if (C.is_identity(key[1]) && x != T.identity(2, T.source(3, x))) return false;
    return true;
}

Rep3 extend_rep_L(const GraphRep& f, const DiGraph& g) {
    f.check(g);
    auto free = free_category(g);
    const auto& T = *f.target;
    Rep3 F;
    F.source = std::make_shared<const FiniteCategory>(free.category);
    F.target = f.target;
    const auto& C = *F.source;
    F.on_objects = f.on_vertices;
    for (int m = 0; m < C.morphisms(); ++m) {
        const auto& path = free.paths[m];
        if (path.empty()) {
            F.on_arrows.push_back(T.identity(0, f.on_vertices[C.source(m)]));
            continue;
        }
        std::vector<int> cells;
        for (int e : path) cells.push_back(f.on_edges[e]);
        F.on_arrows.push_back(or_tensor(T, 1, cells));
    }
    for (int i = 0; i < C.objects(); ++i) F.unit.push_back(T.lift(0, F.on_objects[i], 2));
    for (int a = 0; a < C.morphisms(); ++a)
        for (int b = 0; b < C.morphisms(); ++b) {
            if (!C.composable(a, b)) continue;
            int ab = F.on_arrows[C.compose(a, b)];
            if (T.compose(1, 0, F.on_arrows[a], F.on_arrows[b]) != ab)
                throw StructuralError("tensor of a concatenated path differs from the tensor of its pieces");
            F.pair[{a, b}] = T.identity(1, ab);
            for (int c = 0; c < C.morphisms(); ++c)
                if (C.composable(b, c)) F.triple[{a, b, c}] = T.lift(1, F.on_arrows[C.compose(C.compose(a, b), c)], 3);
        }
    for (int a = 0; a < C.morphisms(); ++a) {
        F.left_unit.push_back(T.lift(1, F.on_arrows[a], 3));
        F.right_unit.push_back(T.lift(1, F.on_arrows[a], 3));
    }
    return F;
}

GraphRep restrict_rep_R(const Rep3& F, const FreeCategory& free) {
    GraphRep g;
    g.target = F.target;
    g.on_vertices = F.on_objects;
    for (int m : free.edge_morphism) g.on_edges.push_back(F.on_arrows.at(m));
    return g;
}

// ---------------------------------------------------------------------------------------------
// Triple nerve

namespace {

struct TripleIndex {
    std::shared_ptr<const Strict3Cat> T;
    // cells of dimension k whose iterated target at dimension j is a given cell
    std::vector<std::vector<std::vector<std::vector<int>>>> by_target;  // [k][j][cell]
    std::vector<std::vector<int>> objects_of;                            // [k][x] -> (source object, target object)

    explicit TripleIndex(std::shared_ptr<const Strict3Cat> t) : T(std::move(t)) {
        by_target.resize(4);
        for (int k = 1; k <= 3; ++k) {
            by_target[k].resize(k);
            for (int j = 0; j < k; ++j) {
                by_target[k][j].resize(T->count(j));
                for (int x = 0; x < T->count(k); ++x) by_target[k][j][T->target_at(k, x, j)].push_back(x);
            }
        }
    }

    int cell_dim(int q, int r) const { return q == 0 ? 1 : (r == 0 ? 2 : 3); }
    int block(int q, int r) const { return q == 0 ? 1 : (r == 0 ? q : q * r); }

    // all columns (grids in one hom 2-category) of shape (q, r), grouped by (source, target) object
    std::vector<Element> columns(int q, int r) const {
        std::vector<Element> out;
        const int k = cell_dim(q, r);
        if (k == 1) {
            for (int x = 0; x < T->count(1); ++x) out.push_back({x});
            return out;
        }
        const int rr = r == 0 ? 1 : r;
        Element cur(static_cast<std::size_t>(q) * rr);
        // row l chain of length rr; first entry of row l+1 must have 1-target = 1-source of row l
        std::function<void(int, int)> rec = [&](int l, int m) {
            if (l == q) {
                out.push_back(cur);
                return;
            }
            if (m == rr) {
                rec(l + 1, 0);
                return;
            }
            std::size_t pos = static_cast<std::size_t>(l) * rr + m;
            const std::vector<int>* cand;
            std::vector<int> all;
            if (m > 0) {
                cand = &by_target[3][2][T->source(3, static_cast<int>(cur[pos - 1]))];
            } else if (l > 0) {
                int u = T->source_at(k, static_cast<int>(cur[pos - rr]), 1);
                cand = &by_target[k][1][u];
            } else {
                for (int x = 0; x < T->count(k); ++x) all.push_back(x);
                cand = &all;
            }
            for (int x : *cand) {
                if (l > 0 && m == 0 && T->source_at(k, x, 0) != T->source_at(k, static_cast<int>(cur[0]), 0)) continue;
                cur[pos] = x;
                rec(l, m + 1);
            }
        };
        rec(0, 0);
        return out;
    }

    std::vector<Element> carrier(int p, int q, int r) const {
        std::vector<Element> out;
        if (p == 0) {
            for (int x = 0; x < T->count(0); ++x) out.push_back({x});
            return out;
        }
        const int k = cell_dim(q, r);
        auto cols = columns(q, r);
        std::map<int, std::vector<const Element*>> by_tgt;
        for (const auto& c : cols) by_tgt[T->target_at(k, static_cast<int>(c[0]), 0)].push_back(&c);
        Element cur;
        std::function<void(int, int)> rec = [&](int i, int obj) {
            if (i == p) {
                out.push_back(cur);
                return;
            }
            auto emit = [&](const Element& c) {
                auto n = cur.size();
                cur.insert(cur.end(), c.begin(), c.end());
                rec(i + 1, T->source_at(k, static_cast<int>(c[0]), 0));
                cur.resize(n);
            };
            if (i == 0) {
                for (const auto& c : cols) emit(c);
                return;
            }
            auto it = by_tgt.find(obj);
            if (it == by_tgt.end()) return;
            for (const auto* c : it->second) emit(*c);
        };
        rec(0, -1);
        return out;
    }

    std::uint64_t count(int p, int q, int r) const {
        if (p == 0) return static_cast<std::uint64_t>(T->count(0));
        const int k = cell_dim(q, r);
        // per (source object, target object) column counts, then chains of objects
        const int no = T->count(0);
        std::vector<std::uint64_t> cnt(static_cast<std::size_t>(no) * no, 0);
        if (k == 1) {
            for (int x = 0; x < T->count(1); ++x) ++cnt[static_cast<std::size_t>(T->source(1, x)) * no + T->target(1, x)];
        } else {
            // weight of a row between 1-cells: number of 3-cell chains of length r (or 1 for a single 2-cell)
            const int n1 = T->count(1);
            std::map<std::pair<int, int>, std::uint64_t> row;
            for (int x = 0; x < T->count(2); ++x) {
                if (r == 0) {
                    row[{T->source(2, x), T->target(2, x)}] += 1;
                    continue;
                }
                // chains of r 3-cells ending (first entry) at target x
                std::vector<std::uint64_t> ways(T->count(2), 0);
                ways[x] = 1;
                for (int m = 0; m < r; ++m) {
                    std::vector<std::uint64_t> next(T->count(2), 0);
                    for (int a = 0; a < T->count(2); ++a)
                        if (ways[a])
                            for (int th : by_target[3][2][a])
                                next[T->source(3, th)] = std::min(next[T->source(3, th)] + ways[a],
                                                                  std::numeric_limits<std::uint64_t>::max() / 2);
                    ways = std::move(next);
                }
                std::uint64_t total = 0;
                for (auto w : ways) total = std::min(total + w, std::numeric_limits<std::uint64_t>::max() / 2);
                row[{T->source(2, x), T->target(2, x)}] += total;
            }
            for (int u0 = 0; u0 < n1; ++u0) {
                std::vector<std::uint64_t> ways(n1, 0);
                ways[u0] = 1;
                for (int l = 0; l < q; ++l) {
                    std::vector<std::uint64_t> next(n1, 0);
                    for (const auto& [st, w] : row)
                        if (ways[st.second])
                            next[st.first] =
                                std::min(next[st.first] + mul_saturating(ways[st.second], w),
                                         std::numeric_limits<std::uint64_t>::max() / 2);
                    ways = std::move(next);
                }
                std::uint64_t total = 0;
                for (auto w : ways) total = std::min(total + w, std::numeric_limits<std::uint64_t>::max() / 2);
                cnt[static_cast<std::size_t>(T->source(1, u0)) * no + T->target(1, u0)] += total;
            }
        }
        std::vector<std::uint64_t> ways(no, 1);  // ways[t] = chains ending at object t
        for (int i = 0; i < p; ++i) {
            std::vector<std::uint64_t> next(no, 0);
            for (int s = 0; s < no; ++s)
                for (int t = 0; t < no; ++t)
                    next[s] = std::min(next[s] + mul_saturating(ways[t], cnt[static_cast<std::size_t>(s) * no + t]),
                                       std::numeric_limits<std::uint64_t>::max() / 2);
            ways = std::move(next);
        }
        std::uint64_t total = 0;
        for (auto w : ways) total = std::min(total + w, std::numeric_limits<std::uint64_t>::max() / 2);
        return total;
    }
};

}  // namespace

MultiSSet triple_nerve(std::shared_ptr<const Strict3Cat> T) {
    auto ix = std::make_shared<const TripleIndex>(T);
    MultiSSet X;
    X.arity = 3;
    X.carrier_size = [ix](const std::vector<int>& L) { return ix->count(L[0], L[1], L[2]); };
    X.carrier = [ix](const std::vector<int>& L) {
        check_budget(ix->count(L[0], L[1], L[2]), L[0] + L[1] + L[2], "triple nerve");
        return ix->carrier(L[0], L[1], L[2]);
    };
    X.face = [ix](const std::vector<int>& L, const Element& x, int axis, int i) -> Element {
        const auto& T = *ix->T;
        const int p = L[0], q = L[1], r = L[2];
        const int k = ix->cell_dim(q, r), b = ix->block(q, r);
        auto at = [&](std::size_t pos) { return static_cast<int>(x[pos]); };
        if (axis == 0) {
            if (p == 1) return {i == 0 ? T.source_at(k, at(0), 0) : T.target_at(k, at(0), 0)};
            Element y;
            for (int c = 0; c < p; ++c) {
                if ((i == 0 && c == 0) || (i == p && c == p - 1)) continue;
                if (i > 0 && i < p && c == i - 1) {
                    for (int e = 0; e < b; ++e)
                        y.push_back(T.compose(k, 0, at(static_cast<std::size_t>(c) * b + e),
                                              at(static_cast<std::size_t>(c + 1) * b + e)));
                    ++c;
                    continue;
                }
                y.insert(y.end(), x.begin() + static_cast<std::ptrdiff_t>(c) * b,
                         x.begin() + static_cast<std::ptrdiff_t>(c + 1) * b);
            }
            return y;
        }
        if (p == 0) return x;
        if (axis == 1) {
            const int rr = r == 0 ? 1 : r;
            Element y;
            for (int c = 0; c < p; ++c) {
                std::size_t base = static_cast<std::size_t>(c) * b;
                if (q == 1) {
                    y.push_back(i == 0 ? T.source_at(k, at(base), 1) : T.target_at(k, at(base), 1));
                    continue;
                }
                for (int l = 0; l < q; ++l) {
                    if ((i == 0 && l == 0) || (i == q && l == q - 1)) continue;
                    if (i > 0 && i < q && l == i - 1) {
                        for (int m = 0; m < rr; ++m)
                            y.push_back(T.compose(k, 1, at(base + static_cast<std::size_t>(l) * rr + m),
                                                  at(base + static_cast<std::size_t>(l + 1) * rr + m)));
                        ++l;
                        continue;
                    }
                    for (int m = 0; m < rr; ++m) y.push_back(x[base + static_cast<std::size_t>(l) * rr + m]);
                }
            }
            return y;
        }
        if (q == 0) return x;
        Element y;
        for (std::size_t g = 0; g < static_cast<std::size_t>(p) * q; ++g) {
            std::size_t base = g * r;
            if (r == 1) {
                y.push_back(i == 0 ? T.source(3, at(base)) : T.target(3, at(base)));
                continue;
            }
            for (int m = 0; m < r; ++m) {
                if ((i == 0 && m == 0) || (i == r && m == r - 1)) continue;
                if (i > 0 && i < r && m == i - 1) {
                    y.push_back(T.compose(3, 2, at(base + m), at(base + m + 1)));
                    ++m;
                    continue;
                }
                y.push_back(x[base + m]);
            }
        }
        return y;
    };
    X.degeneracy = [ix](const std::vector<int>& L, const Element& x, int axis, int j) -> Element {
        const auto& T = *ix->T;
        const int p = L[0], q = L[1], r = L[2];
        const int k = ix->cell_dim(q, r), b = ix->block(q, r);
        auto at = [&](std::size_t pos) { return static_cast<int>(x[pos]); };
        if (axis == 0) {
            int obj;
            if (p == 0) obj = at(0);
            else obj = j < p ? T.target_at(k, at(static_cast<std::size_t>(j) * b), 0)
                             : T.source_at(k, at(static_cast<std::size_t>(p - 1) * b), 0);
            Element col(b, T.lift(0, obj, k));
            if (p == 0) return col;
            Element y = x;
            y.insert(y.begin() + static_cast<std::ptrdiff_t>(j) * b, col.begin(), col.end());
            return y;
        }
        if (p == 0) return x;
        if (axis == 1) {
            const int nk = ix->cell_dim(q + 1, r), rr = r == 0 ? 1 : r;
            Element y;
            for (int c = 0; c < p; ++c) {
                std::size_t base = static_cast<std::size_t>(c) * b;
                if (q == 0) {
                    y.insert(y.end(), rr, T.lift(1, at(base), nk));
                    continue;
                }
                int u = j < q ? T.target_at(k, at(base + static_cast<std::size_t>(j) * rr), 1)
                              : T.source_at(k, at(base + static_cast<std::size_t>(q - 1) * rr), 1);
                for (int l = 0; l <= q; ++l) {
                    if (l == j) y.insert(y.end(), rr, T.lift(1, u, k));
                    if (l < q)
                        y.insert(y.end(), x.begin() + static_cast<std::ptrdiff_t>(base + static_cast<std::size_t>(l) * rr),
                                 x.begin() + static_cast<std::ptrdiff_t>(base + static_cast<std::size_t>(l + 1) * rr));
                }
            }
            return y;
        }
        if (q == 0) return x;
        Element y;
        const int rr = r == 0 ? 1 : r;
        for (std::size_t g = 0; g < static_cast<std::size_t>(p) * q; ++g) {
            std::size_t base = g * rr;
            if (r == 0) {
                y.push_back(T.identity(2, at(base)));
                continue;
            }
            int alpha = j < r ? T.target(3, at(base + j)) : T.source(3, at(base + r - 1));
            for (int m = 0; m <= r; ++m) {
                if (m == j) y.push_back(T.identity(2, alpha));
                if (m < r) y.push_back(x[base + m]);
            }
        }
        return y;
    };
    return X;
}

// ---------------------------------------------------------------------------------------------
// Duskin and geometric nerves

SimplexLayout::SimplexLayout(int p_, int levels_) : p(p_), levels(levels_) {
    subsets.resize(levels);
    offset.push_back(0);
    index_of_mask.assign(std::size_t{1} << (p + 1), -1);
    for (int m = 0; m < levels; ++m) {
        std::vector<std::vector<int>> list;
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int from) {
            if (static_cast<int>(cur.size()) == m + 1) {
                list.push_back(cur);
                return;
            }
            for (int v = from; v <= p; ++v) {
                cur.push_back(v);
                rec(v + 1);
                cur.pop_back();
            }
        };
        rec(0);
        for (std::size_t s = 0; s < list.size(); ++s) {
            unsigned mask = 0;
            for (int v : list[s]) mask |= 1u << v;
            index_of_mask[mask] = offset.back() + static_cast<int>(s);
        }
        offset.push_back(offset.back() + static_cast<int>(list.size()));
        subsets[m] = std::move(list);
    }
}

int SimplexLayout::at(std::initializer_list<int> idx) const {
    unsigned mask = 0;
    for (int v : idx) mask |= 1u << v;
    return index_of_mask[mask];
}

const SimplexLayout& simplex_layout(int p, int levels) {
    static std::map<std::pair<int, int>, std::unique_ptr<SimplexLayout>> cache;
    auto& slot = cache[{p, levels}];
    if (!slot) slot = std::make_unique<SimplexLayout>(p, levels);
    return *slot;
}

namespace {

// Accessors into an element laid out by SimplexLayout.
struct SimplexData {
    const StrictCat& T;
    const SimplexLayout& lay;
    const Element& x;

    int v(int i) const { return static_cast<int>(x[lay.at({i})]); }
    int f1(int i, int j) const { return static_cast<int>(x[lay.at({i, j})]); }
    int f2(int i, int j, int k) const { return static_cast<int>(x[lay.at({i, j, k})]); }
    int f3(int i, int j, int k, int l) const { return static_cast<int>(x[lay.at({i, j, k, l})]); }

    // F_ikl ∘1 (F_ijk ∘0 F_kl) and F_ijl ∘1 (F_ij ∘0 F_jkl)
    int lower(int i, int j, int k, int l) const {
        return T.compose(2, 1, f2(i, k, l), T.compose(2, 0, f2(i, j, k), T.identity(1, f1(k, l))));
    }
    int upper(int i, int j, int k, int l) const {
        return T.compose(2, 1, f2(i, j, l), T.compose(2, 0, T.identity(1, f1(i, j)), f2(j, k, l)));
    }
    bool coherent(int i0, int i1, int i2, int i3, int i4) const {
        auto w = [&](int x3, int y2) { return T.compose(3, 1, x3, T.identity(2, y2)); };
        auto v3 = [&](int x2, int y3) { return T.compose(3, 1, T.identity(2, x2), y3); };
        int a = f1(i0, i1), b = f1(i1, i2), c = f1(i2, i3), d = f1(i3, i4);
        int X = v3(f2(i0, i1, i4), T.compose(3, 0, T.lift(1, a, 3), f3(i1, i2, i3, i4)));
        int Y = w(f3(i0, i1, i3, i4), T.compose(2, 0, T.compose(2, 0, T.identity(1, a), f2(i1, i2, i3)),
                                                 T.identity(1, d)));
        int Z = v3(f2(i0, i3, i4), T.compose(3, 0, f3(i0, i1, i2, i3), T.lift(1, d, 3)));
        int U = w(f3(i0, i1, i2, i4),
                  T.compose(2, 0, T.identity(1, T.compose(1, 0, a, b)), f2(i2, i3, i4)));
        int V = w(f3(i0, i2, i3, i4),
                  T.compose(2, 0, f2(i0, i1, i2), T.identity(1, T.compose(1, 0, c, d))));
        int lhs = T.compose(3, 2, X, T.compose(3, 2, Y, Z));
        int rhs = T.compose(3, 2, U, V);
        return lhs == rhs;
    }
};

class GlobularNerve {
public:
    GlobularNerve(std::shared_ptr<const StrictCat> T, int levels) : T_(std::move(T)), levels_(levels) {}

    std::vector<Element> carrier(int p) const {
        std::vector<Element> level;
        for (int x = 0; x < T_->count(0); ++x) level.push_back({x});
        for (int d = 1; d <= p; ++d) {
            level = extend(level, d);
            check_budget(level.size(), d, levels_ == 3 ? "duskin nerve" : "geometric nerve");
        }
        return level;
    }

    Element face(int p, const Element& x, int k) const {
        const auto& from = simplex_layout(p, levels_);
        const auto& to = simplex_layout(p - 1, levels_);
        Element y(to.size());
        for (int m = 0; m < levels_; ++m)
            for (std::size_t s = 0; s < to.subsets[m].size(); ++s) {
                unsigned mask = 0;
                for (int v : to.subsets[m][s]) mask |= 1u << (v < k ? v : v + 1);
                y[to.offset[m] + s] = x[from.at_mask(mask)];
            }
        return y;
    }

    Element degeneracy(int p, const Element& x, int k) const {
        const auto& from = simplex_layout(p, levels_);
        const auto& to = simplex_layout(p + 1, levels_);
        const auto& T = *T_;
        Element y(to.size(), -1);
        SimplexData D{T, to, y};
        for (int m = 0; m < levels_; ++m)
            for (std::size_t s = 0; s < to.subsets[m].size(); ++s) {
                const auto& S = to.subsets[m][s];
                unsigned mask = 0;
                bool collide = false;
                for (int v : S) {
                    if (v == k + 1 && (mask >> k & 1u)) collide = true;
                    mask |= 1u << (v <= k ? v : v - 1);
                }
                std::int64_t val;
                if (!collide) val = x[from.at_mask(mask)];
                else if (m == 1) val = T.identity(0, D.v(S[0]));
                else if (m == 2) val = T.identity(1, D.f1(S[0], S[2]));
                else val = T.identity(2, D.lower(S[0], S[1], S[2], S[3]));
                y[to.offset[m] + s] = val;
            }
        return y;
    }

private:
    std::vector<Element> extend(const std::vector<Element>& prev, int p) const {
        const auto& T = *T_;
        const auto& lo = simplex_layout(p - 1, levels_);
        const auto& lay = simplex_layout(p, levels_);
        std::vector<Element> out;
        Element x(lay.size(), -1);
        SimplexData D{T, lay, x};
        std::vector<std::array<int, 2>> pairs;
        for (int i = 0; i < p; ++i) pairs.push_back({i, p});
        std::vector<std::array<int, 2>> triples;
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j) triples.push_back({i, j});
        std::vector<std::array<int, 3>> quads;
        if (levels_ == 4)
            for (int i = 0; i < p; ++i)
                for (int j = i + 1; j < p; ++j)
                    for (int k = j + 1; k < p; ++k) quads.push_back({i, j, k});

        std::function<void(std::size_t)> rec_quads = [&](std::size_t n) {
            if (n == quads.size()) {
                out.push_back(x);
                return;
            }
            auto [i, j, k] = quads[n];
            int s = D.lower(i, j, k, p), t = D.upper(i, j, k, p);
            for (int c : T.between(3, s, t)) {
                x[lay.at({i, j, k, p})] = c;
                bool ok = true;
                // coherence on (h, i, j, k, p) completes once (i, j, k, p) is set
                for (int h = 0; h < i && ok; ++h) ok = D.coherent(h, i, j, k, p);
                if (ok) rec_quads(n + 1);
            }
        };
        std::function<void(std::size_t)> rec_triples = [&](std::size_t n) {
            if (n == triples.size()) {
                if (levels_ == 4) rec_quads(0);
                else out.push_back(x);
                return;
            }
            auto [i, j] = triples[n];
            int s = T.compose(1, 0, D.f1(i, j), D.f1(j, p)), t = D.f1(i, p);
            for (int c : T.between(2, s, t)) {
                x[lay.at({i, j, p})] = c;
                bool ok = true;
                if (levels_ == 3)
                    for (int h = 0; h < i && ok; ++h) ok = D.lower(h, i, j, p) == D.upper(h, i, j, p);
                if (ok) rec_triples(n + 1);
            }
        };
        std::function<void(std::size_t)> rec_pairs = [&](std::size_t n) {
            if (n == pairs.size()) {
                rec_triples(0);
                return;
            }
            int i = pairs[n][0];
            for (int c : T.between(1, D.v(p), D.v(i))) {
                x[lay.at({i, p})] = c;
                rec_pairs(n + 1);
            }
        };
        for (const auto& y : prev) {
            for (int m = 0; m < levels_; ++m)
                for (std::size_t s = 0; s < lo.subsets[m].size(); ++s) {
                    unsigned mask = 0;
                    for (int v : lo.subsets[m][s]) mask |= 1u << v;
                    x[lay.at_mask(mask)] = y[lo.offset[m] + s];
                }
            for (int obj = 0; obj < T.count(0); ++obj) {
                x[lay.at({p})] = obj;
                rec_pairs(0);
            }
        }
        return out;
    }

    std::shared_ptr<const StrictCat> T_;
    int levels_;
};

ImplicitSSet globular_implicit(std::shared_ptr<const StrictCat> T, int levels) {
    auto G = std::make_shared<const GlobularNerve>(std::move(T), levels);
    ImplicitSSet I;
    I.carrier = [G](int p) { return G->carrier(p); };
    I.face = [G](int p, const Element& x, int i) { return G->face(p, x, i); };
    I.degeneracy = [G](int p, const Element& x, int j) { return G->degeneracy(p, x, j); };
    return I;
}

}  // namespace

ImplicitSSet duskin_nerve_implicit(std::shared_ptr<const Strict2Cat> B) { return globular_implicit(B, 3); }

TruncSSet duskin_nerve(const Strict2Cat& B, int N) {
    return materialize(duskin_nerve_implicit(std::make_shared<const Strict2Cat>(B)), N);
}

ImplicitSSet geometric_nerve_implicit(std::shared_ptr<const Strict3Cat> T) { return globular_implicit(T, 4); }

Materialized geometric_nerve_full(std::shared_ptr<const Strict3Cat> T, int N) {
    if (N < 0 || N > 5) throw InputError("the geometric nerve is available up to dimension 5");
    auto M = materialize_full(geometric_nerve_implicit(std::move(T)), std::min(N, 4));
    if (N == 5) M.sset = coskeletal_extend(M.sset, 5);
    return M;
}

TruncSSet geometric_nerve_3(const Strict3Cat& T, int N) {
    return geometric_nerve_full(std::make_shared<const Strict3Cat>(T), N).sset;
}

Rep3 simplex_as_rep(std::shared_ptr<const Strict3Cat> T, int p, const Element& x) {
    const auto& lay = simplex_layout(p, 4);
    if (static_cast<int>(x.size()) != lay.size()) throw StructuralError("simplex has the wrong length");
    Rep3 F;
    F.source = std::make_shared<const FiniteCategory>(ordinal_category(p));
    F.target = T;
    const auto& C = *F.source;
    std::vector<std::array<int, 2>> ends(C.morphisms());
    for (int i = 0; i <= p; ++i)
        for (int j = i; j <= p; ++j) ends[C.hom(j, i).at(0)] = {i, j};
    SimplexData D{*T, lay, x};
    auto f1 = [&](int i, int j) { return i == j ? T->identity(0, D.v(i)) : D.f1(i, j); };
    auto f2 = [&](int i, int j, int k) {
        return (i == j || j == k) ? T->identity(1, f1(i, k)) : D.f2(i, j, k);
    };
    for (int i = 0; i <= p; ++i) {
        F.on_objects.push_back(D.v(i));
        F.unit.push_back(T->lift(0, D.v(i), 2));
    }
    for (int a = 0; a < C.morphisms(); ++a) {
        F.on_arrows.push_back(f1(ends[a][0], ends[a][1]));
        int id2 = T->identity(1, F.on_arrows.back());
        F.left_unit.push_back(T->identity(2, id2));
        F.right_unit.push_back(T->identity(2, id2));
    }
    for (int a = 0; a < C.morphisms(); ++a)
        for (int b = 0; b < C.morphisms(); ++b) {
            if (!C.composable(a, b)) continue;
            int i = ends[a][0], j = ends[a][1], k = ends[b][1];
            F.pair[{a, b}] = f2(i, j, k);
            for (int c = 0; c < C.morphisms(); ++c) {
                if (!C.composable(b, c)) continue;
                int l = ends[c][1];
                if (i < j && j < k && k < l) {
                    F.triple[{a, b, c}] = D.f3(i, j, k, l);
                } else {
                    int low = T->compose(2, 1, f2(i, k, l), T->compose(2, 0, f2(i, j, k), T->identity(1, f1(k, l))));
                    F.triple[{a, b, c}] = T->identity(2, low);
                }
            }
        }
    return F;
}

// ---------------------------------------------------------------------------------------------
// JSON

nlohmann::json strict_cat_to_json(const StrictCat& T) {
    const auto& d = T.data();
    nlohmann::json j;
    j["dim"] = d.dim;
    j["cells"] = d.cells;
    j["source"] = d.source;
    j["target"] = d.target;
    j["identity"] = d.identity;
    nlohmann::json comps = nlohmann::json::array();
    for (int k = 1; k <= d.dim; ++k)
        for (int along = 0; along < k; ++along) {
            nlohmann::json table = nlohmann::json::array();
            const std::size_t m = static_cast<std::size_t>(d.cells[k]);
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b)
                    if (int c = d.comp[k][along][a * m + b]; c >= 0) table.push_back({a, b, c});
            comps.push_back({{"dim", k}, {"along", along}, {"table", std::move(table)}});
        }
    j["composition"] = std::move(comps);
    return j;
}

StrictCatData strict_cat_data_from_json(const nlohmann::json& j) {
    try {
        StrictCatData d;
        d.dim = j.at("dim").get<int>();
        if (d.dim < 1 || d.dim > 3) throw InputError("strict category dimension must be 1, 2 or 3");
        d.cells = j.at("cells").get<std::vector<int>>();
        d.source = j.at("source").get<std::vector<std::vector<int>>>();
        d.target = j.at("target").get<std::vector<std::vector<int>>>();
        d.identity = j.at("identity").get<std::vector<std::vector<int>>>();
        if (static_cast<int>(d.cells.size()) != d.dim + 1) throw InputError("need a cell count per dimension");
        for (int c : d.cells)
            if (c < 0) throw InputError("negative cell count");
        d.comp.resize(d.dim + 1);
        for (int k = 1; k <= d.dim; ++k)
            d.comp[k].assign(k, std::vector<int>(static_cast<std::size_t>(d.cells[k]) * d.cells[k], -1));
        for (const auto& c : j.at("composition")) {
            int k = c.at("dim").get<int>(), along = c.at("along").get<int>();
            if (k < 1 || k > d.dim || along < 0 || along >= k) throw InputError("composition table out of range");
            const std::size_t m = static_cast<std::size_t>(d.cells[k]);
            for (const auto& row : c.at("table")) {
                auto t = row.get<std::vector<int>>();
                if (t.size() != 3) throw InputError("composition entries are [a, b, a∘b]");
                if (t[0] < 0 || t[1] < 0 || static_cast<std::size_t>(t[0]) >= m || static_cast<std::size_t>(t[1]) >= m)
                    throw InputError("composition entry out of range");
                d.comp[k][along][static_cast<std::size_t>(t[0]) * m + t[1]] = t[2];
            }
        }
        return d;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed strict category: ") + e.what());
    }
}

}  // namespace trinerve
