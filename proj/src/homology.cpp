#include "trinerve/homology.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "trinerve/errors.hpp"

namespace trinerve {

Coefficients Coefficients::prime_field(std::int64_t p) {
    if (p < 2 || p > (std::int64_t{1} << 31)) throw InputError("prime out of range: " + std::to_string(p));
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw InputError(std::to_string(p) + " is not prime");
    return {Kind::PrimeField, p};
}

Coefficients Coefficients::parse(const std::string& tag) {
    if (tag == "z" || tag == "Z") return integers();
    if (tag == "q" || tag == "Q") return rationals();
    if (tag.rfind("zp:", 0) == 0) {
        try {
            std::size_t used = 0;
            auto p = std::stoll(tag.substr(3), &used);
            if (used != tag.size() - 3) throw InputError("bad prime in " + tag);
            return prime_field(p);
        } catch (const std::logic_error&) {
            throw InputError("bad prime in " + tag);
        }
    }
    throw InputError("unknown coefficient ring '" + tag + "' (expected z, q or zp:<p>)");
}

std::string Coefficients::tag() const {
    switch (kind) {
        case Kind::Integers: return "z";
        case Kind::Rationals: return "q";
        case Kind::PrimeField: return "zp:" + std::to_string(p);
    }
    return "z";
}

ChainComplex chain_complex(const TruncSSet& X) {
    ChainComplex C;
    C.top = X.trunc();
    for (int d = 0; d <= X.trunc(); ++d) C.ranks.push_back(X.count(d));
    C.boundary.resize(X.trunc() + 1);
    for (int d = 1; d <= X.trunc(); ++d) {
        auto& B = C.boundary[d];
        B.rows = X.count(d - 1);
        B.cols = X.count(d);
        B.columns.resize(B.cols);
        for (std::uint32_t id = 0; id < B.cols; ++id) {
            std::map<std::uint32_t, std::int64_t> acc;
            for (int i = 0; i <= d; ++i) {
                const auto& f = X.face_entry(d, id, i);
                if (f.degens) continue;
                acc[f.id] += (i % 2 ? -1 : 1);
            }
            for (auto [r, v] : acc)
                if (v) B.columns[id].push_back({r, v});
        }
    }
    return C;
}

std::vector<int> ChainComplex::square_defects() const {
    std::vector<int> bad;
    for (int n = 2; n <= top; ++n) {
        const auto& Bn = boundary[n];
        const auto& Bm = boundary[n - 1];
        for (const auto& col : Bn.columns) {
            std::unordered_map<std::uint32_t, std::int64_t> acc;
            for (auto [r, v] : col)
                for (auto [r2, w] : Bm.columns[r]) acc[r2] += v * w;
            bool ok = std::all_of(acc.begin(), acc.end(), [](const auto& e) { return e.second == 0; });
            if (!ok) {
                bad.push_back(n);
                break;
            }
        }
    }
    return bad;
}

namespace {

using Dense = std::vector<std::vector<mpz_class>>;

// pivot search: smallest nonzero absolute value in the lower-right block
bool min_entry(const Dense& m, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    mpz_class best;
    for (std::size_t i = t; i < m.size(); ++i)
        for (std::size_t j = t; j < m[i].size(); ++j) {
            if (m[i][j] == 0) continue;
            mpz_class a = abs(m[i][j]);
            if (!found || a < best) {
                best = a;
                pi = i;
                pj = j;
                found = true;
                if (best == 1) return true;
            }
        }
    return found;
}

}  // namespace

SmithForm smith_normal_form(Dense m) {
    SmithForm out;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (const auto& r : m)
        if (r.size() != cols) throw StructuralError("ragged matrix");
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        std::size_t pi = 0, pj = 0;
        if (!min_entry(m, t, pi, pj)) break;
        std::swap(m[t], m[pi]);
        for (auto& row : m) std::swap(row[t], row[pj]);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
                for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
                for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) clean = false;
            }
            if (!clean) {
                // move the smallest remainder in row/column t onto the diagonal
                std::size_t bi = t, bj = t;
                mpz_class best = abs(m[t][t]);
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (m[i][t] != 0 && abs(m[i][t]) < best) best = abs(m[i][t]), bi = i, bj = t;
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m[t][j] != 0 && abs(m[t][j]) < best) best = abs(m[t][j]), bi = t, bj = j;
                std::swap(m[t], m[bi]);
                for (auto& row : m) std::swap(row[t], row[bj]);
                continue;
            }
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m[i][j] != 0 && !mpz_divisible_p(m[i][j].get_mpz_t(), m[t][t].get_mpz_t())) {
                        for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        out.diag.push_back(abs(m[t][t]));
    }
    out.rank = out.diag.size();
    return out;
}

SmithForm smith_normal_form(const std::vector<std::vector<std::int64_t>>& m) {
    Dense d;
    for (const auto& r : m) {
        std::vector<mpz_class> row;
        for (auto v : r) row.emplace_back(static_cast<long>(v));
        d.push_back(std::move(row));
    }
    return smith_normal_form(std::move(d));
}

namespace {

template <class T>
using Col = std::vector<std::pair<std::uint32_t, T>>;

// a -= q * b
template <class T>
void axpy(Col<T>& a, const T& q, const Col<T>& b) {
    Col<T> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(std::move(a[i++]));
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back({b[j].first, T(-(q * b[j].second))});
            ++j;
        } else {
            T v = a[i].second - q * b[j].second;
            if (v != 0) out.push_back({a[i].first, std::move(v)});
            ++i;
            ++j;
        }
    }
    a = std::move(out);
}

struct UnitPhase {
    std::vector<Col<mpz_class>> units;    // low entry normalized to 1
    std::vector<Col<mpz_class>> residual; // no entries on unit pivot rows
    std::vector<std::int32_t> pivot_of;
};

UnitPhase unit_phase(const SparseMatrix& m) {
    UnitPhase ph;
    ph.pivot_of.assign(m.rows, -1);
    std::vector<Col<mpz_class>> pending;
    for (const auto& c : m.columns) {
        Col<mpz_class> col;
        for (auto [r, v] : c) col.push_back({r, mpz_class(static_cast<long>(v))});
        while (!col.empty()) {
            auto r = col.back().first;
            auto k = ph.pivot_of[r];
            if (k >= 0) {
                mpz_class q = col.back().second;
                axpy(col, q, ph.units[k]);
                continue;
            }
            if (abs(col.back().second) == 1) {
                if (col.back().second < 0)
                    for (auto& e : col) e.second = -e.second;
                ph.pivot_of[r] = static_cast<std::int32_t>(ph.units.size());
                ph.units.push_back(std::move(col));
                col.clear();
            }
            break;
        }
        if (!col.empty()) pending.push_back(std::move(col));
    }
    for (auto& col : pending) {
        std::uint32_t bound = m.rows;
        for (;;) {
            std::int64_t hit = -1;
            for (auto it = col.rbegin(); it != col.rend(); ++it)
                if (it->first < bound && ph.pivot_of[it->first] >= 0) {
                    hit = it->first;
                    break;
                }
            if (hit < 0) break;
            auto pos = std::lower_bound(col.begin(), col.end(), static_cast<std::uint32_t>(hit),
                                        [](const auto& e, std::uint32_t r) { return e.first < r; });
            mpz_class q = pos->second;
            axpy(col, q, ph.units[ph.pivot_of[hit]]);
            bound = static_cast<std::uint32_t>(hit);
        }
        if (!col.empty()) ph.residual.push_back(std::move(col));
    }
    return ph;
}

template <class T, class Inv>
std::size_t column_rank(std::vector<Col<T>> cols, std::uint32_t rows, Inv inverse) {
    std::vector<std::int32_t> pivot_of(rows, -1);
    std::vector<Col<T>> basis;
    for (auto& col : cols) {
        while (!col.empty()) {
            auto r = col.back().first;
            auto k = pivot_of[r];
            if (k < 0) {
                T s = inverse(col.back().second);
                for (auto& e : col) e.second = e.second * s;
                pivot_of[r] = static_cast<std::int32_t>(basis.size());
                basis.push_back(std::move(col));
                break;
            }
            T q = col.back().second;
            axpy(col, q, basis[k]);
        }
    }
    return basis.size();
}

struct ModP {
    std::uint64_t v = 0;
    static inline std::uint64_t p = 2;
    ModP() = default;
    ModP(std::uint64_t x) : v(x % p) {}
    friend ModP operator*(const ModP& a, const ModP& b) { return ModP(a.v * b.v); }
    friend ModP operator-(const ModP& a, const ModP& b) { return ModP(a.v + p - b.v); }
    ModP operator-() const { return ModP(p - v); }
    bool operator!=(int z) const { return v != static_cast<std::uint64_t>(z); }
};

ModP inverse_mod(ModP a) {
    std::uint64_t r = 1, b = a.v, e = ModP::p - 2;
    while (e) {
        if (e & 1) r = r * b % ModP::p;
        b = b * b % ModP::p;
        e >>= 1;
    }
    return ModP(r);
}

}  // namespace

SmithForm integer_invariants(const SparseMatrix& m, std::uint64_t dense_limit) {
    auto ph = unit_phase(m);
    SmithForm out;
    for (std::size_t i = 0; i < ph.units.size(); ++i) out.diag.push_back(1);
    if (!ph.residual.empty()) {
        std::map<std::uint32_t, std::size_t> row_index;
        for (const auto& c : ph.residual)
            for (const auto& e : c) row_index.emplace(e.first, 0);
        std::size_t k = 0;
        for (auto& [r, idx] : row_index) idx = k++;
        if (static_cast<std::uint64_t>(row_index.size()) * ph.residual.size() > dense_limit)
            throw ResourceError("integral Smith form residual of " + std::to_string(row_index.size()) + "x" +
                                    std::to_string(ph.residual.size()) +
                                    " exceeds the dense limit; request field coefficients instead",
                                -1, static_cast<std::uint64_t>(row_index.size()) * ph.residual.size());
        Dense d(row_index.size(), std::vector<mpz_class>(ph.residual.size()));
        for (std::size_t j = 0; j < ph.residual.size(); ++j)
            for (const auto& e : ph.residual[j]) d[row_index[e.first]][j] = e.second;
        auto s = smith_normal_form(std::move(d));
        for (auto& v : s.diag) out.diag.push_back(v);
    }
    out.rank = out.diag.size();
    return out;
}

std::size_t rank_mod_p(const SparseMatrix& m, std::int64_t p) {
    ModP::p = static_cast<std::uint64_t>(p);
    std::vector<Col<ModP>> cols;
    for (const auto& c : m.columns) {
        Col<ModP> col;
        for (auto [r, v] : c) {
            std::int64_t x = ((v % p) + p) % p;
            if (x) col.push_back({r, ModP(static_cast<std::uint64_t>(x))});
        }
        cols.push_back(std::move(col));
    }
    return column_rank(std::move(cols), m.rows, inverse_mod);
}

std::size_t rank_rational(const SparseMatrix& m) {
    auto ph = unit_phase(m);
    std::vector<Col<mpq_class>> cols;
    for (auto& c : ph.residual) {
        Col<mpq_class> col;
        for (auto& e : c) col.push_back({e.first, mpq_class(e.second)});
        cols.push_back(std::move(col));
    }
    return ph.units.size() + column_rank(std::move(cols), m.rows, [](const mpq_class& a) -> mpq_class { return 1 / a; });
}

std::string HomologyGroup::describe() const {
    std::string field = coeff.kind == Coefficients::Kind::Integers   ? "Z"
                        : coeff.kind == Coefficients::Kind::Rationals ? "Q"
                                                                      : "F" + std::to_string(coeff.p);
    std::vector<std::string> parts;
    if (betti == 1) parts.push_back(field);
    else if (betti > 1) parts.push_back(field + "^" + std::to_string(betti));
    for (const auto& t : torsion) parts.push_back("Z/" + t);
    if (parts.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
    return s;
}

HomologyResult homology(const ChainComplex& C, const std::vector<int>& degrees, Coefficients coeff) {
    for (int n : degrees)
        if (n < 0 || n + 1 > C.top)
            throw InputError("homology in degree " + std::to_string(n) + " needs simplices of dimension " +
                             std::to_string(n + 1) + " but the truncation is " + std::to_string(C.top));
    std::map<int, SmithForm> zforms;
    std::map<int, std::size_t> ranks;
    auto rank_of = [&](int d) -> std::size_t {
        if (d <= 0 || d > C.top) return 0;
        if (auto it = ranks.find(d); it != ranks.end()) return it->second;
        std::size_t r = 0;
        switch (coeff.kind) {
            case Coefficients::Kind::Integers: {
                auto s = integer_invariants(C.boundary[d]);
                r = s.rank;
                zforms[d] = std::move(s);
                break;
            }
            case Coefficients::Kind::Rationals: r = rank_rational(C.boundary[d]); break;
            case Coefficients::Kind::PrimeField: r = rank_mod_p(C.boundary[d], coeff.p); break;
        }
        ranks[d] = r;
        return r;
    };
    HomologyResult out;
    out.coeff = coeff;
    for (int n : degrees) {
        HomologyGroup g;
        g.degree = n;
        g.coeff = coeff;
        std::size_t rn = rank_of(n), rn1 = rank_of(n + 1);
        g.betti = C.ranks[n] - rn - rn1;
        if (coeff.kind == Coefficients::Kind::Integers)
            for (const auto& v : zforms[n + 1].diag)
                if (v > 1) g.torsion.push_back(v.get_str());
        out.groups.push_back(std::move(g));
    }
    return out;
}

HomologyResult homology(const TruncSSet& X, const std::vector<int>& degrees, Coefficients coeff) {
    for (int n : degrees)
        if (n < 0 || n + 1 > X.trunc())
            throw InputError("homology in degree " + std::to_string(n) + " needs simplices of dimension " +
                             std::to_string(n + 1) + " but the truncation is " + std::to_string(X.trunc()));
    return homology(chain_complex(X), degrees, coeff);
}

nlohmann::json homology_to_json(const HomologyResult& r) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& g : r.groups) {
        nlohmann::json tors = nlohmann::json::array();
        for (const auto& t : g.torsion) {
            mpz_class v(t);
            if (v.fits_slong_p())
                tors.push_back(v.get_si());
            else
                tors.push_back(t);
        }
        arr.push_back({{"degree", g.degree}, {"betti", g.betti}, {"torsion", tors}, {"coeff", r.coeff.tag()}});
    }
    return arr;
}

}  // namespace trinerve
