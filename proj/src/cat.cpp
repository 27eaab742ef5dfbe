#include "trinerve/cat.hpp"

#include <map>
#include <queue>

#include "trinerve/budget.hpp"
#include "trinerve/errors.hpp"

namespace trinerve {

void DiGraph::check() const {
    if (vertices < 0) throw StructuralError("graph has a negative vertex count");
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [s, t] = edges[e];
        if (s < 0 || s >= vertices || t < 0 || t >= vertices)
            throw StructuralError("edge " + std::to_string(e) + " has an invalid endpoint");
    }
}

bool DiGraph::is_acyclic() const {
    std::vector<int> indeg(vertices, 0);
    for (auto [s, t] : edges) ++indeg[t];
    std::queue<int> q;
    for (int v = 0; v < vertices; ++v)
        if (indeg[v] == 0) q.push(v);
    int seen = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        ++seen;
        for (auto [s, t] : edges)
            if (s == v && --indeg[t] == 0) q.push(t);
    }
    return seen == vertices;
}

DiGraph chain_graph(int p) {
    if (p < 0) throw StructuralError("negative chain length");
    DiGraph g;
    g.vertices = p + 1;
    for (int k = 0; k < p; ++k) g.edges.push_back({k + 1, k});
    return g;
}

FiniteCategory::FiniteCategory(int objects, std::vector<int> source, std::vector<int> target,
                               std::vector<int> identity, std::vector<std::vector<int>> composition)
    : n_obj_(objects), src_(std::move(source)), tgt_(std::move(target)), id_(std::move(identity)) {
    const int m = static_cast<int>(src_.size());
    if (n_obj_ < 0) throw StructuralError("negative object count");
    if (static_cast<int>(tgt_.size()) != m) throw StructuralError("source and target lists differ in length");
    if (static_cast<int>(id_.size()) != n_obj_) throw StructuralError("need one identity per object");
    for (int f = 0; f < m; ++f)
        if (src_[f] < 0 || src_[f] >= n_obj_ || tgt_[f] < 0 || tgt_[f] >= n_obj_)
            throw StructuralError("morphism " + std::to_string(f) + " has an invalid endpoint");
    is_id_.assign(m, 0);
    for (int c = 0; c < n_obj_; ++c) {
        int f = id_[c];
        if (f < 0 || f >= m || src_[f] != c || tgt_[f] != c)
            throw StructuralError("identity of object " + std::to_string(c) + " is not an endomorphism of it");
        if (is_id_[f]) throw StructuralError("morphism " + std::to_string(f) + " is the identity of two objects");
        is_id_[f] = 1;
    }
    if (static_cast<int>(composition.size()) != m) throw StructuralError("composition table has the wrong size");
    comp_.assign(static_cast<std::size_t>(m) * m, -1);
    for (int f = 0; f < m; ++f) {
        if (static_cast<int>(composition[f].size()) != m) throw StructuralError("composition table has the wrong size");
        for (int g = 0; g < m; ++g) {
            int h = composition[f][g];
            bool ok = src_[f] == tgt_[g];
            if (!ok) {
                if (h != -1) throw StructuralError("composite given for a non-composable pair");
                continue;
            }
            if (h < 0 || h >= m) throw StructuralError("composite missing for a composable pair");
            if (src_[h] != src_[g] || tgt_[h] != tgt_[f])
                throw StructuralError("composite " + std::to_string(f) + "∘" + std::to_string(g) +
                                      " has the wrong endpoints");
            comp_[static_cast<std::size_t>(f) * m + g] = h;
        }
    }
    for (int f = 0; f < m; ++f) {
        if (compose(id_[tgt_[f]], f) != f || compose(f, id_[src_[f]]) != f)
            throw StructuralError("unit law fails at morphism " + std::to_string(f));
    }
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            if (!composable(f, g)) continue;
            int fg = compose(f, g);
            for (int h = 0; h < m; ++h)
                if (composable(g, h) && compose(fg, h) != compose(f, compose(g, h)))
                    throw StructuralError("associativity fails at (" + std::to_string(f) + "," + std::to_string(g) +
                                          "," + std::to_string(h) + ")");
        }
    into_.assign(n_obj_, {});
    hom_.assign(static_cast<std::size_t>(n_obj_) * n_obj_, {});
    for (int f = 0; f < m; ++f) {
        into_[tgt_[f]].push_back(f);
        hom_[static_cast<std::size_t>(src_[f]) * n_obj_ + tgt_[f]].push_back(f);
    }
}

int FiniteCategory::compose(int f, int g) const {
    int h = comp_[static_cast<std::size_t>(f) * morphisms() + g];
    if (h < 0) throw StructuralError("morphisms " + std::to_string(f) + " and " + std::to_string(g) + " do not compose");
    return h;
}

int FiniteCategory::hom_size(int from, int to) const { return static_cast<int>(hom(from, to).size()); }

FiniteCategory ordinal_category(int p) {
    if (p < 0) throw StructuralError("negative ordinal");
    std::map<std::pair<int, int>, int> idx;
    std::vector<int> src, tgt;
    // identities first, then (i,j) with i < j in lexicographic order
    for (int i = 0; i <= p; ++i) {
        idx[{i, i}] = static_cast<int>(src.size());
        src.push_back(i);
        tgt.push_back(i);
    }
    for (int i = 0; i <= p; ++i)
        for (int j = i + 1; j <= p; ++j) {
            idx[{i, j}] = static_cast<int>(src.size());
            src.push_back(j);
            tgt.push_back(i);
        }
    const int m = static_cast<int>(src.size());
    std::vector<int> id(p + 1);
    for (int i = 0; i <= p; ++i) id[i] = i;
    std::vector<std::vector<int>> comp(m, std::vector<int>(m, -1));
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g)
            if (src[f] == tgt[g]) comp[f][g] = idx[{tgt[f], src[g]}];
    return FiniteCategory(p + 1, src, tgt, id, comp);
}

FiniteCategory group_category(const FiniteGroup& g) {
    const int n = g.order();
    std::vector<std::vector<int>> comp(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) comp[a][b] = g.mul(a, b);
    return FiniteCategory(1, std::vector<int>(n, 0), std::vector<int>(n, 0), {0}, comp);
}

FreeCategory free_category(const DiGraph& g) {
    g.check();
    if (!g.is_acyclic()) throw StructuralError("infinite free category: the graph has a cycle");
    FreeCategory out;
    std::vector<int> src, tgt;
    std::map<std::vector<int>, int> index;
    auto add = [&](std::vector<int> path, int s, int t) {
        int id = static_cast<int>(src.size());
        index[path] = id;
        out.paths.push_back(std::move(path));
        src.push_back(s);
        tgt.push_back(t);
        return id;
    };
    std::vector<int> ids(g.vertices);
    for (int v = 0; v < g.vertices; ++v) ids[v] = add({}, v, v);
    // grow paths by length; a path e_1..e_k needs source(e_i) == target(e_{i+1})
    std::vector<std::vector<int>> frontier;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) frontier.push_back({e});
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (auto& p : frontier) {
            add(p, g.edges[p.back()].first, g.edges[p.front()].second);
            for (int e = 0; e < static_cast<int>(g.edges.size()); ++e)
                if (g.edges[e].second == g.edges[p.back()].first) {
                    auto q = p;
                    q.push_back(e);
                    next.push_back(std::move(q));
                }
        }
        check_budget(src.size() + next.size(), 1, "free category");
        frontier = std::move(next);
    }
    const int m = static_cast<int>(src.size());
    std::vector<std::vector<int>> comp(m, std::vector<int>(m, -1));
    for (int f = 0; f < m; ++f)
        for (int h = 0; h < m; ++h)
            if (src[f] == tgt[h]) {
                auto p = out.paths[f];
                p.insert(p.end(), out.paths[h].begin(), out.paths[h].end());
                comp[f][h] = p.empty() ? ids[src[h]] : index.at(p);
            }
    out.category = FiniteCategory(g.vertices, src, tgt, ids, comp);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) out.edge_morphism.push_back(index.at({e}));
    return out;
}

namespace {

std::uint64_t count_tuples(const FiniteCategory& C, int p) {
    if (p == 0) return static_cast<std::uint64_t>(C.objects());
    // ways[c] = number of tuples (x_1..x_k) with source(x_k) = c
    std::vector<std::uint64_t> ways(C.objects(), 0);
    for (int f = 0; f < C.morphisms(); ++f) ways[C.source(f)] += 1;
    for (int k = 2; k <= p; ++k) {
        std::vector<std::uint64_t> nxt(C.objects(), 0);
        for (int f = 0; f < C.morphisms(); ++f) nxt[C.source(f)] = nxt[C.source(f)] + ways[C.target(f)];
        ways = std::move(nxt);
    }
    std::uint64_t total = 0;
    for (auto w : ways) total += w;
    return total;
}

}  // namespace

ImplicitSSet nerve_implicit(std::shared_ptr<const FiniteCategory> C) {
    ImplicitSSet I;
    I.carrier_size = [C](int p) { return count_tuples(*C, p); };
    I.carrier = [C](int p) {
        check_budget(count_tuples(*C, p), p, "nerve");
        std::vector<Element> out;
        if (p == 0) {
            for (int c = 0; c < C->objects(); ++c) out.push_back({c});
            return out;
        }
        Element cur(p);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == p) {
                out.push_back(cur);
                return;
            }
            if (pos == 0) {
                for (int f = 0; f < C->morphisms(); ++f) {
                    cur[0] = f;
                    rec(1);
                }
                return;
            }
            for (int f : C->into(C->source(static_cast<int>(cur[pos - 1])))) {
                cur[pos] = f;
                rec(pos + 1);
            }
        };
        rec(0);
        return out;
    };
    I.face = [C](int p, const Element& x, int i) -> Element {
        if (p == 1) return {i == 0 ? C->source(static_cast<int>(x[0])) : C->target(static_cast<int>(x[0]))};
        Element y;
        y.reserve(p - 1);
        for (int k = 0; k < p; ++k) {
            if ((i == 0 && k == 0) || (i == p && k == p - 1)) continue;
            if (i > 0 && i < p && k == i - 1) {
                y.push_back(C->compose(static_cast<int>(x[k]), static_cast<int>(x[k + 1])));
                ++k;
                continue;
            }
            y.push_back(x[k]);
        }
        return y;
    };
    I.degeneracy = [C](int p, const Element& x, int j) -> Element {
        if (p == 0) return {C->identity(static_cast<int>(x[0]))};
        Element y = x;
        int c = j < p ? C->target(static_cast<int>(x[j])) : C->source(static_cast<int>(x[p - 1]));
        y.insert(y.begin() + j, C->identity(c));
        return y;
    };
    I.normal_form = [C](int p, const Element& x) -> std::pair<std::uint32_t, Element> {
        if (p == 0) return {0u, x};
        std::uint32_t mask = 0;
        Element root;
        for (int k = 0; k < p; ++k) {
            if (C->is_identity(static_cast<int>(x[k])))
                mask |= 1u << k;
            else
                root.push_back(x[k]);
        }
        if (root.empty()) return {mask, {C->source(static_cast<int>(x[0]))}};
        return {mask, root};
    };
    return I;
}

Materialized nerve_full(std::shared_ptr<const FiniteCategory> C, int N) { return materialize_full(nerve_implicit(C), N); }

TruncSSet nerve(const FiniteCategory& C, int N) {
    return nerve_full(std::make_shared<const FiniteCategory>(C), N).sset;
}

void verify_functor(const Functor& F) {
    const auto& C = *F.source;
    const auto& D = *F.target;
    if (static_cast<int>(F.on_objects.size()) != C.objects() || static_cast<int>(F.on_morphisms.size()) != C.morphisms())
        throw StructuralError("functor tables have the wrong size");
    for (int c = 0; c < C.objects(); ++c)
        if (F.on_objects[c] < 0 || F.on_objects[c] >= D.objects())
            throw StructuralError("functor sends object " + std::to_string(c) + " out of range");
    for (int f = 0; f < C.morphisms(); ++f) {
        int g = F.on_morphisms[f];
        if (g < 0 || g >= D.morphisms()) throw StructuralError("functor sends morphism " + std::to_string(f) + " out of range");
        if (D.source(g) != F.on_objects[C.source(f)] || D.target(g) != F.on_objects[C.target(f)])
            throw StructuralError("functor does not respect the endpoints of morphism " + std::to_string(f));
    }
    for (int c = 0; c < C.objects(); ++c)
        if (F.on_morphisms[C.identity(c)] != D.identity(F.on_objects[c]))
            throw StructuralError("functor does not preserve the identity of object " + std::to_string(c));
    for (int f = 0; f < C.morphisms(); ++f)
        for (int g = 0; g < C.morphisms(); ++g)
            if (C.composable(f, g) &&
                F.on_morphisms[C.compose(f, g)] != D.compose(F.on_morphisms[f], F.on_morphisms[g]))
                throw StructuralError("functor does not preserve the composite " + std::to_string(f) + "∘" +
                                      std::to_string(g));
}

Functor identity_functor(std::shared_ptr<const FiniteCategory> C) {
    Functor F{C, C, {}, {}};
    for (int c = 0; c < C->objects(); ++c) F.on_objects.push_back(c);
    for (int f = 0; f < C->morphisms(); ++f) F.on_morphisms.push_back(f);
    return F;
}

Functor constant_functor(std::shared_ptr<const FiniteCategory> C, std::shared_ptr<const FiniteCategory> D, int object) {
    Functor F{C, D, std::vector<int>(C->objects(), object), std::vector<int>(C->morphisms(), D->identity(object))};
    return F;
}

NerveMap apply_functor(const Functor& F, int N) {
    verify_functor(F);
    auto IS = nerve_implicit(F.source);
    auto IT = nerve_implicit(F.target);
    auto MS = materialize_full(IS, N);
    auto MT = materialize_full(IT, N);
    NerveMap out;
    out.source_nerve = std::make_shared<const TruncSSet>(MS.sset);
    out.target_nerve = std::make_shared<const TruncSSet>(MT.sset);
    out.map.source = out.source_nerve;
    out.map.target = out.target_nerve;
    out.map.images.resize(N + 1);
    for (int d = 0; d <= N; ++d)
        for (std::uint32_t id = 0; id < MS.sset.count(d); ++id) {
            const Element& x = MS.sset.label(d, id);
            Element y = x;
            if (d == 0)
                y[0] = F.on_objects[x[0]];
            else
                for (auto& v : y) v = F.on_morphisms[v];
            out.map.images[d].push_back(MT.ref_of(IT, d, y));
        }
    return out;
}

using nlohmann::json;

json category_to_json(const FiniteCategory& C) {
    json j;
    j["objects"] = C.objects();
    json mors = json::array();
    for (int f = 0; f < C.morphisms(); ++f) mors.push_back({{"source", C.source(f)}, {"target", C.target(f)}});
    j["morphisms"] = mors;
    j["identities"] = C.identities();
    json comp = json::array();
    for (int f = 0; f < C.morphisms(); ++f)
        for (int g = 0; g < C.morphisms(); ++g)
            if (C.composable(f, g)) comp.push_back({f, g, C.compose(f, g)});
    j["composition"] = comp;
    return j;
}

FiniteCategory category_from_json(const json& j) {
    try {
        int n = j.at("objects").get<int>();
        std::vector<int> src, tgt;
        for (const auto& m : j.at("morphisms")) {
            src.push_back(m.at("source").get<int>());
            tgt.push_back(m.at("target").get<int>());
        }
        auto ids = j.at("identities").get<std::vector<int>>();
        const int m = static_cast<int>(src.size());
        std::vector<std::vector<int>> comp(m, std::vector<int>(m, -1));
        std::size_t k = 0;
        for (const auto& e : j.at("composition")) {
            auto t = e.get<std::vector<int>>();
            if (t.size() != 3 || t[0] < 0 || t[0] >= m || t[1] < 0 || t[1] >= m)
                throw InputError("composition entry " + std::to_string(k) + " is malformed");
            if (comp[t[0]][t[1]] != -1) throw InputError("composition entry " + std::to_string(k) + " repeats a pair");
            comp[t[0]][t[1]] = t[2];
            ++k;
        }
        return FiniteCategory(n, src, tgt, ids, comp);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed category: ") + e.what());
    } catch (const StructuralError& e) {
        throw InputError(std::string("invalid category: ") + e.what());
    }
}

json graph_to_json(const DiGraph& g) {
    json edges = json::array();
    for (auto [s, t] : g.edges) edges.push_back({s, t});
    return {{"vertices", g.vertices}, {"edges", edges}};
}

DiGraph graph_from_json(const json& j) {
    try {
        DiGraph g;
        g.vertices = j.at("vertices").get<int>();
        for (const auto& e : j.at("edges")) {
            auto t = e.get<std::vector<int>>();
            if (t.size() != 2) throw InputError("edge must be a [source, target] pair");
            g.edges.push_back({t[0], t[1]});
        }
        g.check();
        return g;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed graph: ") + e.what());
    } catch (const StructuralError& e) {
        throw InputError(std::string("invalid graph: ") + e.what());
    }
}

}  // namespace trinerve
