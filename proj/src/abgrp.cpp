#include "trinerve/abgrp.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "trinerve/errors.hpp"

namespace trinerve {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("free coordinate overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("free coordinate overflow");
    return r;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t d) {
    std::int64_t r = a % d;
    return r < 0 ? r + d : r;
}

}  // namespace

FgAbGroup::FgAbGroup(int rank, std::vector<std::int64_t> torsion) : rank_(rank), torsion_(std::move(torsion)) {
    if (rank_ < 0) throw StructuralError("negative rank");
    for (auto d : torsion_)
        if (d < 2) throw StructuralError("torsion coefficient must be >= 2, got " + std::to_string(d));
}

FgAbGroup FgAbGroup::cyclic(std::int64_t n) {
    if (n == 0) return FgAbGroup(1, {});
    if (n == 1) return FgAbGroup();
    return FgAbGroup(0, {n});
}

std::uint64_t FgAbGroup::order() const {
    if (!is_finite()) throw StructuralError("infinite group");
    std::uint64_t n = 1;
    for (auto d : torsion_) n *= static_cast<std::uint64_t>(d);
    return n;
}

void FgAbGroup::check(const Element& a) const {
    if (a.size() != length())
        throw StructuralError("element of length " + std::to_string(a.size()) + " in group " + describe());
}

bool FgAbGroup::is_valid(const Element& a) const {
    if (a.size() != length()) return false;
    for (std::size_t j = 0; j < torsion_.size(); ++j) {
        auto v = a[rank_ + j];
        if (v < 0 || v >= torsion_[j]) return false;
    }
    return true;
}

Element FgAbGroup::reduce(Element a) const {
    check(a);
    for (std::size_t j = 0; j < torsion_.size(); ++j) a[rank_ + j] = mod_pos(a[rank_ + j], torsion_[j]);
    return a;
}

Element FgAbGroup::add(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Element r(length());
    for (int i = 0; i < rank_; ++i) r[i] = checked_add(a[i], b[i]);
    for (std::size_t j = 0; j < torsion_.size(); ++j) {
        auto k = rank_ + j;
        r[k] = mod_pos(a[k] + b[k], torsion_[j]);
    }
    return r;
}

Element FgAbGroup::neg(const Element& a) const {
    check(a);
    Element r(length());
    for (int i = 0; i < rank_; ++i) r[i] = checked_mul(a[i], -1);
    for (std::size_t j = 0; j < torsion_.size(); ++j) {
        auto k = rank_ + j;
        r[k] = mod_pos(-a[k], torsion_[j]);
    }
    return r;
}

Element FgAbGroup::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

Element FgAbGroup::scale(const Element& a, std::int64_t k) const {
    check(a);
    Element r(length());
    for (int i = 0; i < rank_; ++i) r[i] = checked_mul(a[i], k);
    for (std::size_t j = 0; j < torsion_.size(); ++j) {
        auto idx = rank_ + j;
        auto d = torsion_[j];
        r[idx] = mod_pos(static_cast<std::int64_t>((static_cast<__int128>(a[idx]) * mod_pos(k, d)) % d), d);
    }
    return r;
}

bool FgAbGroup::is_zero(const Element& a) const {
    return std::all_of(a.begin(), a.end(), [](auto v) { return v == 0; });
}

std::uint64_t FgAbGroup::index_of(const Element& a) const {
    if (!is_finite()) throw StructuralError("infinite group");
    if (!is_valid(a)) throw StructuralError("invalid element for " + describe());
    std::uint64_t idx = 0;
    for (std::size_t j = 0; j < torsion_.size(); ++j) idx = idx * torsion_[j] + a[j];
    return idx;
}

Element FgAbGroup::element_at(std::uint64_t index) const {
    if (!is_finite()) throw StructuralError("infinite group");
    Element a(torsion_.size());
    for (std::size_t j = torsion_.size(); j-- > 0;) {
        a[j] = static_cast<std::int64_t>(index % torsion_[j]);
        index /= torsion_[j];
    }
    return a;
}

std::string FgAbGroup::describe() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < rank_; ++i) {
        os << (first ? "" : "+") << "Z";
        first = false;
    }
    for (auto d : torsion_) {
        os << (first ? "" : "+") << "Z/" << d;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::vector<Element> enumerate_elements(const FgAbGroup& g) {
    if (!g.is_finite()) throw StructuralError("infinite group: cannot enumerate " + g.describe());
    std::vector<Element> out;
    auto n = g.order();
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(g.element_at(i));
    return out;
}

FiniteGroup::FiniteGroup() : n_(1), table_{0}, inverse_{0} {}

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table) {
    n_ = static_cast<int>(table.size());
    if (n_ == 0) throw StructuralError("empty group table");
    table_.reserve(static_cast<std::size_t>(n_) * n_);
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n_) throw StructuralError("group table is not square");
        for (int v : row) {
            if (v < 0 || v >= n_) throw StructuralError("group table entry out of range");
            table_.push_back(v);
        }
    }
    for (int a = 0; a < n_; ++a)
        if (mul(0, a) != a || mul(a, 0) != a) throw StructuralError("index 0 is not an identity");
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw StructuralError("group table not associative at (" + std::to_string(a) + "," +
                                          std::to_string(b) + "," + std::to_string(c) + ")");
    inverse_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b)
            if (mul(a, b) == 0 && mul(b, a) == 0) {
                inverse_[a] = b;
                break;
            }
        if (inverse_[a] < 0) throw StructuralError("element " + std::to_string(a) + " has no inverse");
    }
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) throw StructuralError("cyclic group order must be positive");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup(std::move(t));
}

FiniteGroup FiniteGroup::from_abelian(const FgAbGroup& a) {
    auto n = a.order();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    auto els = enumerate_elements(a);
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = 0; j < n; ++j) t[i][j] = static_cast<int>(a.index_of(a.add(els[i], els[j])));
    return FiniteGroup(std::move(t));
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

int FiniteGroup::element_order(int a) const {
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a)) ++k;
    return k;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
    return t;
}

void FiniteGroup::check_index(int a) const {
    if (a < 0 || a >= n_) throw StructuralError("group element index " + std::to_string(a) + " out of range");
}

std::vector<int> enumerate_elements(const FiniteGroup& g) {
    std::vector<int> v(g.order());
    std::iota(v.begin(), v.end(), 0);
    return v;
}

namespace {

std::vector<std::int64_t> invariants_from_prime_powers(std::map<std::int64_t, std::vector<int>> exps) {
    std::size_t len = 0;
    for (auto& [p, e] : exps) {
        std::sort(e.rbegin(), e.rend());
        len = std::max(len, e.size());
    }
    std::vector<std::int64_t> out(len, 1);
    for (auto& [p, e] : exps)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) out[len - 1 - i] *= p;
    return out;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> ps;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace

std::vector<std::int64_t> abelian_invariants(const FiniteGroup& g) {
    if (!g.is_abelian()) throw StructuralError("group is not abelian");
    std::map<std::int64_t, std::vector<int>> exps;
    std::vector<int> orders(g.order());
    for (int a = 0; a < g.order(); ++a) orders[a] = g.element_order(a);
    for (auto p : prime_factors(g.order())) {
        // counts[k] = #{a : a^(p^k) = 1}
        std::vector<std::int64_t> counts{1};
        for (std::int64_t pk = p;; pk *= p) {
            std::int64_t c = 0;
            for (int o : orders)
                if (pk % o == 0) ++c;
            if (c == counts.back()) break;
            counts.push_back(c);
        }
        // number of cyclic factors of order >= p^k is log_p(counts[k]/counts[k-1])
        std::vector<int> at_least;
        for (std::size_t k = 1; k < counts.size(); ++k) {
            std::int64_t q = counts[k] / counts[k - 1];
            int r = 0;
            while (q > 1) {
                q /= p;
                ++r;
            }
            at_least.push_back(r);
        }
        std::vector<int>& e = exps[p];
        for (std::size_t k = 0; k < at_least.size(); ++k) {
            int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
            for (int i = 0; i < at_least[k] - next; ++i) e.push_back(static_cast<int>(k + 1));
        }
    }
    return invariants_from_prime_powers(std::move(exps));
}

std::vector<std::int64_t> abelian_invariants(const FgAbGroup& a) {
    if (!a.is_finite()) throw StructuralError("infinite group");
    std::map<std::int64_t, std::vector<int>> exps;
    for (auto d : a.torsion())
        for (auto p : prime_factors(d)) {
            int e = 0;
            for (auto x = d; x % p == 0; x /= p) ++e;
            exps[p].push_back(e);
        }
    return invariants_from_prime_powers(std::move(exps));
}

bool are_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
    if (g.order() != h.order()) return false;
    if (g.is_abelian() != h.is_abelian()) return false;
    if (g.is_abelian()) return abelian_invariants(g) == abelian_invariants(h);
    // greedy generating set of g
    std::vector<int> gens;
    std::vector<char> in_sub(g.order(), 0);
    auto close = [&](std::vector<char>& sub, const std::vector<int>& gs) {
        sub.assign(g.order(), 0);
        sub[0] = 1;
        std::vector<int> stack{0};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int s : gs) {
                int y = g.mul(x, s);
                if (!sub[y]) {
                    sub[y] = 1;
                    stack.push_back(y);
                }
            }
        }
    };
    close(in_sub, gens);
    for (int a = 0; a < g.order(); ++a)
        if (!in_sub[a]) {
            gens.push_back(a);
            close(in_sub, gens);
        }
    std::vector<int> images(gens.size());
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == gens.size()) {
            std::vector<int> map(g.order(), -1);
            map[0] = 0;
            std::vector<int> stack{0};
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (std::size_t k = 0; k < gens.size(); ++k) {
                    int y = g.mul(x, gens[k]);
                    int fy = h.mul(map[x], images[k]);
                    if (map[y] < 0) {
                        map[y] = fy;
                        stack.push_back(y);
                    } else if (map[y] != fy) {
                        return false;
                    }
                }
            }
            std::vector<char> hit(h.order(), 0);
            for (int v : map) {
                if (hit[v]) return false;
                hit[v] = 1;
            }
            for (int a = 0; a < g.order(); ++a)
                for (int b = 0; b < g.order(); ++b)
                    if (map[g.mul(a, b)] != h.mul(map[a], map[b])) return false;
            return true;
        }
        int ord = g.element_order(gens[i]);
        for (int c = 0; c < h.order(); ++c) {
            if (h.element_order(c) != ord) continue;
            images[i] = c;
            if (rec(i + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

GModule::GModule(FiniteGroup group, FgAbGroup coeff, std::vector<std::vector<std::vector<std::int64_t>>> action)
    : group_(std::move(group)), coeff_(std::move(coeff)), action_(std::move(action)) {
    const auto len = coeff_.length();
    const int r = coeff_.rank();
    if (static_cast<int>(action_.size()) != group_.order())
        throw StructuralError("module action needs one matrix per group element");
    for (const auto& m : action_) {
        if (m.size() != len) throw StructuralError("action matrix has wrong number of rows");
        for (const auto& row : m)
            if (row.size() != len) throw StructuralError("action matrix has wrong number of columns");
    }
    // respects torsion relations: M * (d_j e_j) = 0
    for (std::size_t g = 0; g < action_.size(); ++g)
        for (std::size_t j = r; j < len; ++j) {
            auto dj = coeff_.torsion()[j - r];
            for (std::size_t i = 0; i < len; ++i) {
                auto v = action_[g][i][j];
                bool ok = static_cast<int>(i) < r ? v == 0 : ((static_cast<__int128>(v) * dj) % coeff_.torsion()[i - r]) == 0;
                if (!ok)
                    throw StructuralError("action matrix of element " + std::to_string(g) +
                                          " does not respect torsion of coordinate " + std::to_string(j));
            }
        }
    for (std::size_t j = 0; j < len; ++j) {
        Element e(len, 0);
        e[j] = 1;
        e = coeff_.reduce(e);
        if (act(0, e) != e) throw StructuralError("identity element does not act trivially");
        for (int g = 0; g < group_.order(); ++g)
            for (int h = 0; h < group_.order(); ++h)
                if (act(g, act(h, e)) != act(group_.mul(g, h), e))
                    throw StructuralError("action is not a homomorphism at (" + std::to_string(g) + "," +
                                          std::to_string(h) + ")");
    }
}

GModule GModule::trivial(FiniteGroup group, FgAbGroup coeff) {
    const auto len = coeff.length();
    std::vector<std::vector<std::int64_t>> id(len, std::vector<std::int64_t>(len, 0));
    for (std::size_t i = 0; i < len; ++i) id[i][i] = 1;
    std::vector<std::vector<std::vector<std::int64_t>>> action(group.order(), id);
    return GModule(std::move(group), std::move(coeff), std::move(action));
}

bool GModule::is_trivial_action() const {
    for (const auto& m : action_)
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) {
                auto v = m[i][j];
                auto want = i == j ? 1 : 0;
                if (static_cast<int>(i) >= coeff_.rank()) {
                    auto d = coeff_.torsion()[i - coeff_.rank()];
                    if (mod_pos(v - want, d) != 0) return false;
                } else if (v != want) {
                    return false;
                }
            }
    return true;
}

Element GModule::act(int g, const Element& a) const {
    group_.check_index(g);
    coeff_.check(a);
    const auto len = coeff_.length();
    const auto& m = action_[g];
    Element r(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        if (static_cast<int>(i) < coeff_.rank()) {
            std::int64_t s = 0;
            for (std::size_t j = 0; j < len; ++j) s = checked_add(s, checked_mul(m[i][j], a[j]));
            r[i] = s;
        } else {
            auto d = coeff_.torsion()[i - coeff_.rank()];
            __int128 s = 0;
            for (std::size_t j = 0; j < len; ++j) s += static_cast<__int128>(m[i][j]) * a[j];
            r[i] = mod_pos(static_cast<std::int64_t>(s % d), d);
        }
    }
    return r;
}

Element act(const GModule& m, int g, const Element& a) { return m.act(g, a); }

ModuleTable::ModuleTable(const GModule& m) {
    const auto& A = m.coeff();
    if (!A.is_finite()) throw StructuralError("module table needs a finite module");
    n_group = m.group().order();
    auto order = A.order();
    if (order > (1u << 14)) throw StructuralError("module too large for a dense table");
    n = static_cast<std::uint32_t>(order);
    auto els = enumerate_elements(A);
    add_.resize(static_cast<std::size_t>(n) * n);
    neg_.resize(n);
    act_.resize(static_cast<std::size_t>(n_group) * n);
    for (std::uint32_t a = 0; a < n; ++a) {
        neg_[a] = static_cast<std::uint32_t>(A.index_of(A.neg(els[a])));
        for (std::uint32_t b = 0; b < n; ++b)
            add_[a * n + b] = static_cast<std::uint32_t>(A.index_of(A.add(els[a], els[b])));
        for (int g = 0; g < n_group; ++g) act_[g * n + a] = static_cast<std::uint32_t>(A.index_of(m.act(g, els[a])));
    }
}

nlohmann::json fgab_to_json(const FgAbGroup& a) { return {{"rank", a.rank()}, {"torsion", a.torsion()}}; }

FgAbGroup fgab_from_json(const nlohmann::json& j) {
    try {
        return FgAbGroup(j.value("rank", 0), j.value("torsion", std::vector<std::int64_t>{}));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed abelian group: ") + e.what());
    } catch (const StructuralError& e) {
        throw InputError(std::string("invalid abelian group: ") + e.what());
    }
}

nlohmann::json group_to_json(const FiniteGroup& g) { return {{"table", g.table()}}; }

FiniteGroup group_from_json(const nlohmann::json& j) {
    try {
        return FiniteGroup(j.at("table").get<std::vector<std::vector<int>>>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed group: ") + e.what());
    } catch (const StructuralError& e) {
        throw InputError(std::string("invalid group: ") + e.what());
    }
}

nlohmann::json module_to_json(const GModule& m) {
    return {{"group", group_to_json(m.group())}, {"coeff", fgab_to_json(m.coeff())}, {"action", m.action()}};
}

GModule module_from_json(const nlohmann::json& j) {
    auto g = group_from_json(j.at("group"));
    auto a = fgab_from_json(j.at("coeff"));
    try {
        if (!j.contains("action")) return GModule::trivial(g, a);
        return GModule(g, a, j.at("action").get<std::vector<std::vector<std::vector<std::int64_t>>>>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed module: ") + e.what());
    } catch (const StructuralError& e) {
        throw InputError(std::string("invalid module: ") + e.what());
    }
}

}  // namespace trinerve
