#include "trinerve/enumerate.hpp"

#include <numeric>

#include "trinerve/budget.hpp"
#include "trinerve/errors.hpp"

namespace trinerve {

DenseLevel::DenseLevel(const TruncSSet& X, int d, bool with_faces) : d_(d) {
    if (d < 0 || d > X.trunc()) throw StructuralError("dense level beyond truncation");
    if (d > 20) throw StructuralError("dense level dimension too large");
    offsets_.assign(std::size_t{1} << d, 0);
    std::uint64_t off = 0;
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
        offsets_[mask] = off;
        off += X.count(d - std::popcount(mask));
    }
    if (off >= kNoSimplex) throw ResourceError("dense level too large", d, off);
    all_.reserve(off);
    for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
        int m = d - std::popcount(mask);
        for (std::uint32_t id = 0; id < X.count(m); ++id) all_.push_back({mask, id, d});
    }
    if (with_faces && d > 0) {
        // indices into level d-1, computed without building that level
        std::vector<std::uint64_t> below(std::size_t{1} << (d - 1), 0);
        std::uint64_t b = 0;
        for (std::uint32_t mask = 0; mask < (1u << (d - 1)); ++mask) {
            below[mask] = b;
            b += X.count(d - 1 - std::popcount(mask));
        }
        faces_.resize(all_.size() * (d + 1));
        for (std::uint64_t s = 0; s < all_.size(); ++s)
            for (int i = 0; i <= d; ++i) {
                auto f = X.face(all_[s], i);
                faces_[s * (d + 1) + i] = static_cast<std::uint32_t>(below[f.degens] + f.id);
            }
    }
}

CompatibleTuples::CompatibleTuples(const DenseLevel& top, std::uint64_t below_size, int n, int omit)
    : top_(top), below_size_(below_size), n_(n), omit_(omit) {
    if (top.dim() != n - 1) throw StructuralError("compatible tuples need the level one below");
    all_ids_.resize(top.size());
    std::iota(all_ids_.begin(), all_ids_.end(), 0u);
    for (int b = 0; b <= n; ++b) {
        if (b == omit) continue;
        Slot s;
        s.pos = b;
        if (n >= 2)
            for (int a = 0; a < b; ++a)
                if (a != omit) s.earlier.push_back(a);
        // choose key faces so the direct table stays small
        std::uint64_t space = 1;
        for (int a : s.earlier) {
            if (s.key_faces.size() == 3) break;
            std::uint64_t next = mul_saturating(space, below_size_);
            if (next > (std::uint64_t{1} << 24)) break;
            space = next;
            s.key_faces.push_back(a);
        }
        if (s.key_faces.empty() && !s.earlier.empty()) {
            s.key_faces.push_back(s.earlier.front());
            s.hashed = true;
        }
        if (!s.key_faces.empty()) {
            auto key_of = [&](std::uint32_t y) {
                std::uint64_t k = 0;
                for (int a : s.key_faces) k = k * below_size_ + top.face(y, a);
                return k;
            };
            if (!s.hashed) {
                s.offsets.assign(space + 1, 0);
                for (std::uint32_t y = 0; y < top.size(); ++y) ++s.offsets[key_of(y) + 1];
                for (std::uint64_t k = 0; k < space; ++k) s.offsets[k + 1] += s.offsets[k];
                s.ids.resize(top.size());
                std::vector<std::uint32_t> fill(s.offsets.begin(), s.offsets.end() - 1);
                for (std::uint32_t y = 0; y < top.size(); ++y) s.ids[fill[key_of(y)]++] = y;
            } else {
                std::vector<std::pair<std::uint64_t, std::uint32_t>> keyed;
                keyed.reserve(top.size());
                for (std::uint32_t y = 0; y < top.size(); ++y) keyed.push_back({key_of(y), y});
                std::sort(keyed.begin(), keyed.end());
                s.ids.reserve(keyed.size());
                for (std::size_t t = 0; t < keyed.size(); ++t) {
                    auto& r = s.ranges[keyed[t].first];
                    if (r.second == 0) r.first = static_cast<std::uint32_t>(t);
                    ++r.second;
                    s.ids.push_back(keyed[t].second);
                }
            }
        }
        slots_.push_back(std::move(s));
    }
}

std::pair<const std::uint32_t*, const std::uint32_t*> CompatibleTuples::candidates(
    const Slot& s, const std::vector<std::uint32_t>& y) const {
    if (s.key_faces.empty()) return {all_ids_.data(), all_ids_.data() + all_ids_.size()};
    std::uint64_t k = 0;
    for (int a : s.key_faces) k = k * below_size_ + top_.face(y[a], s.pos - 1);
    if (!s.hashed) {
        const std::uint32_t* base = s.ids.data();
        return {base + s.offsets[k], base + s.offsets[k + 1]};
    }
    auto it = s.ranges.find(k);
    if (it == s.ranges.end()) return {nullptr, nullptr};
    const std::uint32_t* base = s.ids.data() + it->second.first;
    return {base, base + it->second.second};
}

bool CompatibleTuples::sample_one(std::mt19937_64& rng, std::vector<std::uint32_t>& out) const {
    std::vector<std::uint32_t> y(n_ + 1, kNoSimplex);
    std::function<bool(std::size_t)> rec = [&](std::size_t depth) -> bool {
        if (depth == slots_.size()) return true;
        const Slot& s = slots_[depth];
        auto [b, e] = candidates(s, y);
        std::vector<std::uint32_t> c(b, e);
        std::shuffle(c.begin(), c.end(), rng);
        for (auto cand : c) {
            if (!consistent(s, cand, y)) continue;
            y[s.pos] = cand;
            if (rec(depth + 1)) return true;
        }
        y[s.pos] = kNoSimplex;
        return false;
    };
    if (!rec(0)) return false;
    out = y;
    return true;
}

BoundaryIndex::BoundaryIndex(const DenseLevel& level, std::uint64_t below_size, int skip)
    : d_(level.dim()), skip_(skip), base_(below_size) {
    if (d_ < 1) throw StructuralError("boundary index needs dimension >= 1");
    int slots = d_ + 1 - (skip >= 0 ? 1 : 0);
    std::uint64_t space = 1;
    packed_ = true;
    for (int t = 0; t < slots; ++t) {
        if (base_ != 0 && space > std::numeric_limits<std::uint64_t>::max() / std::max<std::uint64_t>(base_, 1)) {
            packed_ = false;
            break;
        }
        space *= std::max<std::uint64_t>(base_, 1);
    }
    std::vector<std::uint32_t> f(d_ + 1);
    for (std::uint32_t s = 0; s < level.size(); ++s) {
        for (int i = 0; i <= d_; ++i) f[i] = level.face(s, i);
        Hit* h;
        if (packed_) {
            h = &map_[key(f.data())];
        } else {
            std::vector<std::uint32_t> k;
            for (int i = 0; i <= d_; ++i)
                if (i != skip_) k.push_back(f[i]);
            h = &wide_[k];
        }
        if (h->count == 0) h->first = s;
        ++h->count;
    }
}

std::uint64_t BoundaryIndex::key(const std::uint32_t* faces) const {
    std::uint64_t k = 0;
    for (int i = 0; i <= d_; ++i)
        if (i != skip_) k = k * base_ + faces[i];
    return k;
}

BoundaryIndex::Hit BoundaryIndex::find(const std::uint32_t* faces) const {
    if (packed_) {
        auto it = map_.find(key(faces));
        return it == map_.end() ? Hit{} : it->second;
    }
    std::vector<std::uint32_t> k;
    for (int i = 0; i <= d_; ++i)
        if (i != skip_) k.push_back(faces[i]);
    auto it = wide_.find(k);
    return it == wide_.end() ? Hit{} : it->second;
}

namespace {

// Is the compatible family y (dense indices into `top`) the boundary of s_j of some simplex?
bool family_is_degenerate(const TruncSSet& X, const DenseLevel& top, const std::uint32_t* y, int p) {
    for (int j = 0; j < p; ++j) {
        if (y[j] != y[j + 1]) continue;
        const SimplexRef& z = top.at(y[j]);
        auto sz = X.degeneracy(z, j);
        bool all = true;
        for (int i = 0; i <= p && all; ++i) {
            if (i == j || i == j + 1) continue;
            if (top.index(X.face(sz, i)) != y[i]) all = false;
        }
        if (all) return true;
    }
    return false;
}

}  // namespace

void for_each_coskeleton_simplex(const TruncSSet& X, const std::function<void(std::span<const SimplexRef>)>& fn) {
    const int p = X.trunc() + 1;
    DenseLevel top(X, p - 1);
    std::uint64_t below = p >= 2 ? X.total_count(p - 2) : 1;
    CompatibleTuples tuples(top, below, p, -1);
    std::vector<SimplexRef> faces(p + 1);
    tuples.for_each([&](const std::uint32_t* y) {
        if (family_is_degenerate(X, top, y, p)) return;
        for (int i = 0; i <= p; ++i) faces[i] = top.at(y[i]);
        fn(faces);
    });
}

TruncSSet coskeletal_extend(const TruncSSet& X, int target) {
    if (target <= X.trunc()) throw StructuralError("coskeletal extension target must exceed the truncation");
    TruncSSet Y = X;
    for (int p = X.trunc() + 1; p <= target; ++p) {
        TruncSSet next = Y;
        next.raise_trunc(p);
        std::uint64_t made = 0;
        for_each_coskeleton_simplex(Y, [&](std::span<const SimplexRef> faces) {
            ++made;
            if (made > size_budget()) check_budget(made, p, "coskeletal_extend");
            next.add_simplex(p, faces);
        });
        Y = std::move(next);
    }
    return Y;
}

}  // namespace trinerve
