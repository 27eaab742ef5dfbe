#include <random>
#include <sstream>

#include "trinerve/enumerate.hpp"
#include "trinerve/errors.hpp"
#include "trinerve/simplicial.hpp"

namespace trinerve {

KanReport kan_horn_check(const TruncSSet& X, int n, int k, KanMode mode) {
    if (n < 1 || n > X.trunc() + 1) throw InputError("horn dimension out of range");
    if (k < 0 || k > n) throw InputError("horn index out of range");
    KanReport rep;
    rep.n = n;
    rep.k = k;
    rep.coskeletal = n == X.trunc() + 1;

    DenseLevel top(X, n - 1);
    const std::uint64_t below = n >= 2 ? X.total_count(n - 2) : 1;
    CompatibleTuples horns(top, below, n, k);

    std::function<std::uint32_t(const std::uint32_t*)> fillers;
    std::unique_ptr<DenseLevel> fill_level;
    std::unique_ptr<BoundaryIndex> index;
    std::vector<std::uint32_t> completion(n);
    if (!rep.coskeletal) {
        fill_level = std::make_unique<DenseLevel>(X, n);
        index = std::make_unique<BoundaryIndex>(*fill_level, top.size(), k);
        fillers = [&](const std::uint32_t* y) { return index->find(y).count; };
    } else if (n == 1) {
        const auto verts = static_cast<std::uint32_t>(X.count(0));
        fillers = [verts](const std::uint32_t*) { return verts; };
    } else {
        index = std::make_unique<BoundaryIndex>(top, below, -1);
        fillers = [&](const std::uint32_t* y) {
            for (int i = 0; i < n; ++i)
                completion[i] = i < k ? top.face(y[i], k - 1) : top.face(y[i + 1], k);
            return index->find(completion.data()).count;
        };
    }

    auto visit = [&](const std::uint32_t* y) {
        ++rep.horns_tested;
        auto c = fillers(y);
        if (c > 0) ++rep.fillable;
        if (c == 1) ++rep.unique_fillers;
        if (c == 0 && rep.witness.empty()) {
            rep.witness.resize(n + 1);
            for (int i = 0; i <= n; ++i)
                if (i != k) rep.witness[i] = top.at(y[i]);
        }
    };
    if (mode.exhaustive) {
        horns.for_each(visit);
    } else {
        std::mt19937_64 rng(mode.seed);
        std::vector<std::uint32_t> y;
        for (std::uint64_t t = 0; t < mode.count; ++t) {
            if (!horns.sample_one(rng, y)) break;
            visit(y.data());
        }
    }
    return rep;
}

SimplexRef SimplicialMapData::apply(const SimplexRef& x) const {
    const int m = x.root_dim();
    if (m > depth()) throw StructuralError("map not defined in dimension " + std::to_string(m));
    const SimplexRef& img = images[m][x.id];
    return target->degenerate_by(img, x.degens, x.dim);
}

namespace {

std::string ref_str(const SimplexRef& r) {
    std::ostringstream os;
    os << "(dim " << r.dim << ", id " << r.id << ", degens " << r.degens << ")";
    return os.str();
}

}  // namespace

MapReport verify_simplicial_map(const SimplicialMapData& f, int N) {
    MapReport rep;
    const TruncSSet& S = *f.source;
    const TruncSSet& T = *f.target;
    int top = std::min({f.depth(), S.trunc(), T.trunc()});
    if (N < 0) N = top;
    if (N > top) {
        rep.violations.push_back("map depth below requested dimension " + std::to_string(N));
        return rep;
    }
    for (int d = 0; d <= N; ++d) {
        if (f.images[d].size() != S.count(d)) {
            rep.violations.push_back("dimension " + std::to_string(d) + ": image table has wrong size");
            return rep;
        }
        for (const auto& img : f.images[d])
            if (img.dim != d || !T.valid_ref(img)) {
                rep.violations.push_back("dimension " + std::to_string(d) + ": invalid image " + ref_str(img));
                return rep;
            }
    }
    for (int d = 1; d <= N; ++d) {
        const bool all = S.total_count(d) <= (std::uint64_t{1} << 20);
        auto check = [&](const SimplexRef& x) {
            auto fx = f.apply(x);
            for (int i = 0; i <= d; ++i) {
                ++rep.checked;
                auto a = f.apply(S.face(x, i));
                auto b = T.face(fx, i);
                if (!(a == b) && rep.violations.size() < 32)
                    rep.violations.push_back("f d" + std::to_string(i) + " != d" + std::to_string(i) + " f on " +
                                             ref_str(x));
            }
        };
        if (all) {
            for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
                int m = d - std::popcount(mask);
                for (std::uint32_t id = 0; id < S.count(m); ++id) check({mask, id, d});
            }
        } else {
            for (std::uint32_t id = 0; id < S.count(d); ++id) check({0, id, d});
        }
    }
    for (int d = 0; d < N; ++d)
        for (std::uint32_t id = 0; id < S.count(d); ++id) {
            SimplexRef x{0, id, d};
            auto fx = f.apply(x);
            for (int j = 0; j <= d; ++j) {
                ++rep.checked;
                if (!(f.apply(S.degeneracy(x, j)) == T.degeneracy(fx, j)) && rep.violations.size() < 32)
                    rep.violations.push_back("f s" + std::to_string(j) + " != s" + std::to_string(j) + " f on " +
                                             ref_str(x));
            }
        }
    return rep;
}

bool is_iso_up_to(const SimplicialMapData& f, int N) {
    if (!verify_simplicial_map(f, N).ok()) return false;
    for (int d = 0; d <= N; ++d) {
        if (f.source->count(d) != f.target->count(d)) return false;
        std::vector<char> hit(f.target->count(d), 0);
        for (const auto& img : f.images[d]) {
            if (img.degenerate() || hit[img.id]) return false;
            hit[img.id] = 1;
        }
    }
    return true;
}

SimplicialMapData identity_map(std::shared_ptr<const TruncSSet> X) {
    SimplicialMapData f{X, X, {}};
    for (int d = 0; d <= X->trunc(); ++d) {
        f.images.emplace_back();
        for (std::uint32_t id = 0; id < X->count(d); ++id) f.images[d].push_back({0, id, d});
    }
    return f;
}

TruncSSet point_set(int N) {
    TruncSSet P(N);
    P.add_simplex(0, {});
    return P;
}

SimplicialMapData map_to_point(std::shared_ptr<const TruncSSet> X) {
    auto P = std::make_shared<const TruncSSet>(point_set(X->trunc()));
    SimplicialMapData f{X, P, {}};
    for (int d = 0; d <= X->trunc(); ++d) {
        f.images.emplace_back();
        std::uint32_t mask = d == 0 ? 0 : (1u << d) - 1u;
        for (std::uint32_t id = 0; id < X->count(d); ++id) f.images[d].push_back({mask, 0, d});
    }
    return f;
}

void extend_map_by_boundary(SimplicialMapData& f, int d) {
    if (f.depth() != d - 1) throw StructuralError("map must be defined exactly below the new dimension");
    if (d < 1 || d > f.source->trunc() || d > f.target->trunc())
        throw StructuralError("dimension missing from source or target");
    const TruncSSet& S = *f.source;
    const TruncSSet& T = *f.target;
    DenseLevel tlevel(T, d);
    DenseLevel tbelow(T, d - 1, false);
    BoundaryIndex index(tlevel, T.total_count(d - 1), -1);
    std::vector<std::uint32_t> faces(d + 1);
    std::vector<SimplexRef> imgs;
    imgs.reserve(S.count(d));
    for (std::uint32_t id = 0; id < S.count(d); ++id) {
        SimplexRef x{0, id, d};
        for (int i = 0; i <= d; ++i) faces[i] = static_cast<std::uint32_t>(tbelow.index(f.apply(S.face(x, i))));
        auto hit = index.find(faces.data());
        if (hit.count != 1)
            throw StructuralError("boundary of simplex " + std::to_string(id) + " in dimension " + std::to_string(d) +
                                  " has " + std::to_string(hit.count) + " fillers in the target");
        imgs.push_back(tlevel.at(hit.first));
    }
    f.images.push_back(std::move(imgs));
}

}  // namespace trinerve
