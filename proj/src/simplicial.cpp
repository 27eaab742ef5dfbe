#include "trinerve/simplicial.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "trinerve/budget.hpp"
#include "trinerve/errors.hpp"

namespace trinerve {

OperatorWord::OperatorWord(int input_dim, std::vector<int> degeneracies, std::vector<int> faces)
    : input_dim_(input_dim), degens_(std::move(degeneracies)), faces_(std::move(faces)) {
    if (input_dim_ < 0) throw StructuralError("negative dimension");
    const int l = static_cast<int>(faces_.size());
    if (l > input_dim_) throw StructuralError("more faces than the dimension allows");
    for (int t = 0; t < l; ++t) {
        if (t > 0 && faces_[t] <= faces_[t - 1]) throw StructuralError("face word must be strictly increasing");
        if (faces_[t] < 0 || faces_[t] > input_dim_ - (l - 1 - t))
            throw StructuralError("face index out of range in operator word");
    }
    const int k = static_cast<int>(degens_.size());
    for (int t = 0; t < k; ++t) {
        if (t > 0 && degens_[t] >= degens_[t - 1])
            throw StructuralError("degeneracy word must be strictly decreasing");
        // s_{i_1} is the last entry and acts first
        int applied_at = input_dim_ - l + (k - 1 - t);
        if (degens_[t] < 0 || degens_[t] > applied_at)
            throw StructuralError("degeneracy index out of range in operator word");
    }
}

OperatorWord OperatorWord::identity(int n) { return OperatorWord(n, {}, {}); }
OperatorWord OperatorWord::face(int n, int i) { return OperatorWord(n, {}, {i}); }
OperatorWord OperatorWord::degeneracy(int n, int j) { return OperatorWord(n, {j}, {}); }

std::vector<int> OperatorWord::map() const {
    const int m = output_dim();
    const int mid = input_dim_ - static_cast<int>(faces_.size());
    std::vector<int> eta(m + 1);
    std::uint32_t mask = 0;
    for (int i : degens_) mask |= 1u << i;
    for (int p = 0, v = 0; p <= m; ++p) {
        eta[p] = v;
        if (p < m && !((mask >> p) & 1u)) ++v;
    }
    std::vector<int> delta;
    for (int v = 0, f = 0; v <= input_dim_; ++v) {
        if (f < static_cast<int>(faces_.size()) && faces_[f] == v) {
            ++f;
            continue;
        }
        delta.push_back(v);
    }
    (void)mid;
    for (auto& e : eta) e = delta[e];
    return eta;
}

OperatorWord OperatorWord::from_map(int n, const std::vector<int>& theta) {
    if (theta.empty()) throw StructuralError("empty simplicial map");
    std::vector<char> hit(n + 1, 0);
    for (std::size_t p = 0; p < theta.size(); ++p) {
        if (theta[p] < 0 || theta[p] > n) throw StructuralError("map value out of range");
        if (p > 0 && theta[p] < theta[p - 1]) throw StructuralError("map is not monotone");
        hit[theta[p]] = 1;
    }
    std::vector<int> faces, degens;
    for (int v = 0; v <= n; ++v)
        if (!hit[v]) faces.push_back(v);
    for (std::size_t p = theta.size() - 1; p-- > 0;)
        if (theta[p] == theta[p + 1]) degens.push_back(static_cast<int>(p));
    return OperatorWord(n, std::move(degens), std::move(faces));
}

std::string OperatorWord::to_string() const {
    std::ostringstream os;
    for (int i : degens_) os << "s" << i;
    for (int j : faces_) os << "d" << j;
    if (degens_.empty() && faces_.empty()) os << "id";
    os << "[" << input_dim_ << "]";
    return os.str();
}

OperatorWord compose_words(const OperatorWord& w1, const OperatorWord& w2) {
    if (w1.input_dim() != w2.output_dim())
        throw StructuralError("cannot compose " + w1.to_string() + " after " + w2.to_string());
    auto t1 = w1.map();
    auto t2 = w2.map();
    for (auto& v : t1) v = t2[v];
    return OperatorWord::from_map(w2.input_dim(), t1);
}

std::vector<int> SimplexRef::degeneracy_word() const {
    std::vector<int> w;
    for (int j = 31; j >= 0; --j)
        if ((degens >> j) & 1u) w.push_back(j);
    return w;
}

namespace surj {
std::uint32_t compose(std::uint32_t inner, int inner_positions, std::uint32_t outer) {
    std::uint32_t r = 0;
    int e = 0;
    for (int p = 0; p < inner_positions; ++p) {
        if ((inner >> p) & 1u) {
            r |= 1u << p;
        } else {
            if ((outer >> e) & 1u) r |= 1u << p;
            ++e;
        }
    }
    return r;
}
}  // namespace surj

TruncSSet::TruncSSet(int trunc) : trunc_(trunc) {
    if (trunc < 0 || trunc > 24) throw StructuralError("truncation out of range");
    counts_.assign(trunc + 1, 0);
    faces_.resize(trunc + 1);
    labels_.resize(trunc + 1);
}

bool TruncSSet::valid_ref(const SimplexRef& r) const {
    if (r.dim < 0 || r.dim > trunc_) return false;
    if (r.dim < 32 && (r.degens >> r.dim) != 0) return false;
    int m = r.root_dim();
    if (m < 0 || m > trunc_) return false;
    return r.id < counts_[m];
}

std::uint32_t TruncSSet::add_simplex(int d, std::span<const SimplexRef> faces, Label label) {
    if (d < 0 || d > trunc_) throw StructuralError("dimension " + std::to_string(d) + " beyond truncation");
    if (d == 0) {
        if (!faces.empty()) throw StructuralError("vertices have no faces");
    } else {
        if (static_cast<int>(faces.size()) != d + 1) throw StructuralError("wrong number of faces");
        for (const auto& f : faces)
            if (f.dim != d - 1 || !valid_ref(f))
                throw StructuralError("invalid face reference for a " + std::to_string(d) + "-simplex");
        faces_[d].insert(faces_[d].end(), faces.begin(), faces.end());
    }
    if (!label.empty() || !labels_[d].empty()) {
        if (labels_[d].size() != counts_[d]) throw StructuralError("labels must be given for every simplex");
        labels_[d].push_back(std::move(label));
    }
    return counts_[d]++;
}

void TruncSSet::set_face_entry(int d, std::uint32_t id, int i, SimplexRef r) {
    if (d < 1 || d > trunc_ || id >= counts_[d] || i < 0 || i > d) throw StructuralError("no such face entry");
    if (r.dim != d - 1 || !valid_ref(r)) throw StructuralError("invalid face reference");
    faces_[d][static_cast<std::size_t>(id) * (d + 1) + i] = r;
}

SimplexRef TruncSSet::face(const SimplexRef& x, int i) const {
    const int n = x.dim;
    if (n < 1 || i < 0 || i > n) throw StructuralError("face index out of range");
    const std::uint32_t J = x.degens;
    if (J == 0) return face_entry(n, x.id, i);
    if ((J >> i) & 1u) return {surj::remove_bit(J, i), x.id, n - 1};
    if (i > 0 && ((J >> (i - 1)) & 1u)) return {surj::remove_bit(J, i - 1), x.id, n - 1};
    const int v = i - std::popcount(J & ((1u << i) - 1u));
    const int m = n - std::popcount(J);
    const SimplexRef& y = face_entry(m, x.id, v);
    const std::uint32_t mu = surj::remove_bit(J, i);
    return {surj::compose(mu, n - 1, y.degens), y.id, n - 1};
}

SimplexRef TruncSSet::degeneracy(const SimplexRef& x, int j) const {
    if (j < 0 || j > x.dim) throw StructuralError("degeneracy index out of range");
    return {surj::insert_bit(x.degens, j), x.id, x.dim + 1};
}

SimplexRef TruncSSet::degenerate_by(const SimplexRef& x, std::uint32_t mask, int result_dim) const {
    if (result_dim - std::popcount(mask) != x.dim) throw StructuralError("degeneracy mask does not fit");
    return {surj::compose(mask, result_dim, x.degens), x.id, result_dim};
}

SimplexRef TruncSSet::apply(const OperatorWord& w, const SimplexRef& x) const {
    if (w.input_dim() != x.dim) throw StructuralError("operator word does not apply to this dimension");
    SimplexRef r = x;
    const auto& fs = w.faces();
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) r = face(r, *it);
    const auto& ds = w.degeneracies();
    for (auto it = ds.rbegin(); it != ds.rend(); ++it) r = degeneracy(r, *it);
    return r;
}

std::vector<SimplexRef> TruncSSet::boundary(const SimplexRef& x) const {
    std::vector<SimplexRef> b;
    for (int i = 0; i <= x.dim; ++i) b.push_back(face(x, i));
    return b;
}

TruncSSet TruncSSet::truncated(int n) const {
    if (n > trunc_) throw StructuralError("cannot truncate above the current bound");
    TruncSSet r(n);
    for (int d = 0; d <= n; ++d) {
        r.counts_[d] = counts_[d];
        r.faces_[d] = faces_[d];
        r.labels_[d] = labels_[d];
    }
    return r;
}

void TruncSSet::raise_trunc(int n) {
    if (n < trunc_) throw StructuralError("cannot lower the truncation bound");
    trunc_ = n;
    counts_.resize(n + 1, 0);
    faces_.resize(n + 1);
    labels_.resize(n + 1);
}

std::uint64_t TruncSSet::total_count(int d) const {
    if (d > trunc_) return 0;
    std::uint64_t t = 0;
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) t += counts_[d - std::popcount(mask)];
    return t;
}

std::string IdentityReport::summary() const {
    std::ostringstream os;
    os << checked << " identities checked, " << violations.size() << " violations";
    for (std::size_t k = 0; k < violations.size() && k < 5; ++k) {
        const auto& v = violations[k];
        os << "; d" << v.i << "d" << v.j << " != d" << v.j - 1 << "d" << v.i << " on (" << v.dim << "," << v.id << ")";
    }
    return os.str();
}

IdentityReport check_simplicial_identities(const TruncSSet& X) {
    IdentityReport rep;
    for (int d = 2; d <= X.trunc(); ++d)
        for (std::uint32_t id = 0; id < X.count(d); ++id) {
            SimplexRef x{0, id, d};
            std::vector<SimplexRef> f(d + 1);
            for (int i = 0; i <= d; ++i) f[i] = X.face(x, i);
            for (int j = 1; j <= d; ++j)
                for (int i = 0; i < j; ++i) {
                    ++rep.checked;
                    auto lhs = X.face(f[j], i);
                    auto rhs = X.face(f[i], j - 1);
                    if (!(lhs == rhs)) rep.violations.push_back({d, id, i, j, lhs, rhs});
                }
        }
    return rep;
}

std::pair<std::uint32_t, Element> ImplicitSSet::nf(int n, const Element& x) const {
    if (normal_form) return normal_form(n, x);
    std::uint32_t mask = 0;
    for (int j = 0; j < n; ++j)
        if (degeneracy(n - 1, face(n, x, j), j) == x) mask |= 1u << j;
    Element y = x;
    int d = n;
    for (int j = n - 1; j >= 0; --j)
        if ((mask >> j) & 1u) y = face(d--, y, j);
    return {mask, y};
}

SimplexRef Materialized::ref_of(const ImplicitSSet& I, int n, const Element& x) const {
    auto [mask, root] = I.nf(n, x);
    int m = n - std::popcount(mask);
    if (m > sset.trunc()) throw StructuralError("element beyond materialized truncation");
    auto it = ids[m].find(root);
    if (it == ids[m].end()) throw StructuralError("element root is not in the carrier");
    return {mask, it->second, n};
}

Element Materialized::element_of(const ImplicitSSet& I, const SimplexRef& r) const {
    int d = r.root_dim();
    Element e = sset.has_labels(d) ? sset.label(d, r.id) : Element{};
    for (int j = 0; j < 32; ++j)
        if ((r.degens >> j) & 1u) e = I.degeneracy(d++, e, j);
    return e;
}

Materialized materialize_full(const ImplicitSSet& I, int N) {
    Materialized out{TruncSSet(N), {}};
    out.ids.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        if (I.carrier_size) check_budget(I.carrier_size(n), n, "materialize");
        auto elems = I.carrier(n);
        check_budget(elems.size(), n, "materialize");
        std::vector<const Element*> nondeg;
        for (const auto& x : elems) {
            auto [mask, root] = I.nf(n, x);
            if (mask == 0) nondeg.push_back(&x);
        }
        std::vector<SimplexRef> faces(n > 0 ? n + 1 : 0);
        for (const Element* x : nondeg) {
            for (int i = 0; n > 0 && i <= n; ++i) {
                Element f = I.face(n, *x, i);
                faces[i] = out.ref_of(I, n - 1, f);
            }
            auto id = out.sset.add_simplex(n, faces, *x);
            if (!out.ids[n].emplace(*x, id).second)
                throw StructuralError("carrier of dimension " + std::to_string(n) + " lists an element twice");
        }
    }
    return out;
}

TruncSSet materialize(const ImplicitSSet& I, int N) { return materialize_full(I, N).sset; }

namespace {

std::vector<SimplexRef> all_refs(const TruncSSet& X, int n) {
    std::vector<SimplexRef> v;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int m = n - std::popcount(mask);
        for (std::uint32_t id = 0; id < X.count(m); ++id) v.push_back({mask, id, n});
    }
    return v;
}

Element enc(const SimplexRef& r) { return {static_cast<std::int64_t>(r.degens), static_cast<std::int64_t>(r.id)}; }
SimplexRef dec(const Element& e, std::size_t off, int dim) {
    return {static_cast<std::uint32_t>(e[off]), static_cast<std::uint32_t>(e[off + 1]), dim};
}

}  // namespace

ImplicitSSet as_implicit(std::shared_ptr<const TruncSSet> X) {
    ImplicitSSet I;
    I.carrier_size = [X](int n) { return X->total_count(n); };
    I.carrier = [X](int n) {
        std::vector<Element> out;
        for (auto& r : all_refs(*X, n)) out.push_back(enc(r));
        return out;
    };
    I.face = [X](int n, const Element& e, int i) { return enc(X->face(dec(e, 0, n), i)); };
    I.degeneracy = [X](int n, const Element& e, int j) { return enc(X->degeneracy(dec(e, 0, n), j)); };
    I.normal_form = [](int, const Element& e) {
        return std::pair<std::uint32_t, Element>{static_cast<std::uint32_t>(e[0]), Element{0, e[1]}};
    };
    return I;
}

ImplicitSSet product_implicit(std::shared_ptr<const TruncSSet> X, std::shared_ptr<const TruncSSet> Y) {
    ImplicitSSet I;
    I.carrier_size = [X, Y](int n) { return mul_saturating(X->total_count(n), Y->total_count(n)); };
    I.carrier = [X, Y](int n) {
        std::vector<Element> out;
        auto xs = all_refs(*X, n);
        auto ys = all_refs(*Y, n);
        for (auto& a : xs)
            for (auto& b : ys) {
                Element e = enc(a);
                auto eb = enc(b);
                e.insert(e.end(), eb.begin(), eb.end());
                out.push_back(std::move(e));
            }
        return out;
    };
    I.face = [X, Y](int n, const Element& e, int i) {
        Element r = enc(X->face(dec(e, 0, n), i));
        auto b = enc(Y->face(dec(e, 2, n), i));
        r.insert(r.end(), b.begin(), b.end());
        return r;
    };
    I.degeneracy = [X, Y](int n, const Element& e, int j) {
        Element r = enc(X->degeneracy(dec(e, 0, n), j));
        auto b = enc(Y->degeneracy(dec(e, 2, n), j));
        r.insert(r.end(), b.begin(), b.end());
        return r;
    };
    return I;
}

MultiSSet external_product(std::shared_ptr<const TruncSSet> X, std::shared_ptr<const TruncSSet> Y) {
    MultiSSet M;
    M.arity = 2;
    M.carrier_size = [X, Y](const std::vector<int>& L) {
        return mul_saturating(X->total_count(L[0]), Y->total_count(L[1]));
    };
    M.carrier = [X, Y](const std::vector<int>& L) {
        std::vector<Element> out;
        auto xs = all_refs(*X, L[0]);
        auto ys = all_refs(*Y, L[1]);
        for (auto& a : xs)
            for (auto& b : ys) {
                Element e = enc(a);
                auto eb = enc(b);
                e.insert(e.end(), eb.begin(), eb.end());
                out.push_back(std::move(e));
            }
        return out;
    };
    M.face = [X, Y](const std::vector<int>& L, const Element& e, int axis, int i) {
        Element r = e;
        if (axis == 0) {
            auto a = enc(X->face(dec(e, 0, L[0]), i));
            r[0] = a[0];
            r[1] = a[1];
        } else {
            auto b = enc(Y->face(dec(e, 2, L[1]), i));
            r[2] = b[0];
            r[3] = b[1];
        }
        return r;
    };
    M.degeneracy = [X, Y](const std::vector<int>& L, const Element& e, int axis, int j) {
        Element r = e;
        if (axis == 0) {
            auto a = enc(X->degeneracy(dec(e, 0, L[0]), j));
            r[0] = a[0];
            r[1] = a[1];
        } else {
            auto b = enc(Y->degeneracy(dec(e, 2, L[1]), j));
            r[2] = b[0];
            r[3] = b[1];
        }
        return r;
    };
    return M;
}

ImplicitSSet diagonal_implicit(const MultiSSet& X) {
    ImplicitSSet I;
    const int k = X.arity;
    I.carrier = [X, k](int n) { return X.carrier(std::vector<int>(k, n)); };
    if (X.carrier_size) I.carrier_size = [X, k](int n) { return X.carrier_size(std::vector<int>(k, n)); };
    I.face = [X, k](int n, const Element& e, int i) {
        std::vector<int> L(k, n);
        Element r = e;
        for (int a = 0; a < k; ++a) {
            r = X.face(L, r, a, i);
            L[a] = n - 1;
        }
        return r;
    };
    I.degeneracy = [X, k](int n, const Element& e, int j) {
        std::vector<int> L(k, n);
        Element r = e;
        for (int a = 0; a < k; ++a) {
            r = X.degeneracy(L, r, a, j);
            L[a] = n + 1;
        }
        return r;
    };
    return I;
}

TruncSSet diagonal(const MultiSSet& X, int N) { return materialize(diagonal_implicit(X), N); }

MultiReport check_multisimplicial_identities(const MultiSSet& X, int max_level, std::uint64_t samples_per_level,
                                             std::uint64_t seed) {
    MultiReport rep;
    std::mt19937_64 rng(seed);
    const int k = X.arity;
    std::vector<int> L(k, 0);
    auto fail = [&](const std::string& what, const std::vector<int>& lv) {
        std::ostringstream os;
        os << what << " at level (";
        for (int a = 0; a < k; ++a) os << (a ? "," : "") << lv[a];
        os << ")";
        rep.violations.push_back(os.str());
    };
    while (true) {
        auto elems = X.carrier(L);
        std::vector<std::size_t> pick;
        if (elems.size() <= samples_per_level) {
            for (std::size_t t = 0; t < elems.size(); ++t) pick.push_back(t);
        } else {
            std::uniform_int_distribution<std::size_t> dist(0, elems.size() - 1);
            for (std::uint64_t t = 0; t < samples_per_level; ++t) pick.push_back(dist(rng));
        }
        for (auto t : pick) {
            const Element& x = elems[t];
            for (int a = 0; a < k; ++a) {
                const int n = L[a];
                auto La = L;
                // d_i d_j = d_{j-1} d_i
                for (int j = 1; j <= n && n >= 2; ++j)
                    for (int i = 0; i < j; ++i) {
                        auto L1 = L;
                        L1[a] = n - 1;
                        auto lhs = X.face(L1, X.face(L, x, a, j), a, i);
                        auto rhs = X.face(L1, X.face(L, x, a, i), a, j - 1);
                        ++rep.checked;
                        if (lhs != rhs) fail("face-face identity", L);
                    }
                // d_i s_j
                for (int j = 0; j <= n; ++j) {
                    auto Lup = L;
                    Lup[a] = n + 1;
                    auto sx = X.degeneracy(L, x, a, j);
                    for (int i = 0; i <= n + 1; ++i) {
                        auto lhs = X.face(Lup, sx, a, i);
                        Element rhs;
                        if (i == j || i == j + 1) {
                            rhs = x;
                        } else if (i < j) {
                            auto Ld = L;
                            Ld[a] = n - 1;
                            rhs = X.degeneracy(Ld, X.face(L, x, a, i), a, j - 1);
                        } else {
                            auto Ld = L;
                            Ld[a] = n - 1;
                            rhs = X.degeneracy(Ld, X.face(L, x, a, i - 1), a, j);
                        }
                        ++rep.checked;
                        if (lhs != rhs) fail("face-degeneracy identity", L);
                    }
                    for (int i = 0; i <= j; ++i) {
                        auto lhs = X.degeneracy(Lup, sx, a, i);
                        auto rhs = X.degeneracy(Lup, X.degeneracy(L, x, a, i), a, j + 1);
                        ++rep.checked;
                        if (lhs != rhs) fail("degeneracy-degeneracy identity", L);
                    }
                }
                // cross-axis commutation
                for (int b = a + 1; b < k; ++b) {
                    const int m = L[b];
                    for (int i = 0; i <= n && n >= 1; ++i)
                        for (int j = 0; j <= m && m >= 1; ++j) {
                            auto La1 = L;
                            La1[a] = n - 1;
                            auto Lb1 = L;
                            Lb1[b] = m - 1;
                            auto lhs = X.face(La1, X.face(L, x, a, i), b, j);
                            auto rhs = X.face(Lb1, X.face(L, x, b, j), a, i);
                            ++rep.checked;
                            if (lhs != rhs) fail("cross-axis face commutation", L);
                        }
                    for (int i = 0; i <= n; ++i)
                        for (int j = 0; j <= m; ++j) {
                            auto La1 = L;
                            La1[a] = n + 1;
                            auto Lb1 = L;
                            Lb1[b] = m + 1;
                            auto lhs = X.degeneracy(La1, X.degeneracy(L, x, a, i), b, j);
                            auto rhs = X.degeneracy(Lb1, X.degeneracy(L, x, b, j), a, i);
                            ++rep.checked;
                            if (lhs != rhs) fail("cross-axis degeneracy commutation", L);
                            if (m >= 1) {
                                auto Lb0 = L;
                                Lb0[b] = m - 1;
                                auto l2 = X.face(La1, X.degeneracy(L, x, a, i), b, std::min(j, m));
                                auto r2 = X.degeneracy(Lb0, X.face(L, x, b, std::min(j, m)), a, i);
                                ++rep.checked;
                                if (l2 != r2) fail("cross-axis face-degeneracy commutation", L);
                            }
                        }
                }
                (void)La;
            }
        }
        int a = 0;
        while (a < k && L[a] == max_level) L[a++] = 0;
        if (a == k) break;
        ++L[a];
    }
    return rep;
}

}  // namespace trinerve
