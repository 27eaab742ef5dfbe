#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <limits>
#include <random>
#include <unordered_map>
#include <vector>

#include "trinerve/simplicial.hpp"

namespace trinerve {

// Every simplex of one dimension (degenerate ones included) with dense face indices.
class DenseLevel {
public:
    DenseLevel(const TruncSSet& X, int d, bool with_faces = true);

    int dim() const { return d_; }
    std::uint64_t size() const { return all_.size(); }
    const SimplexRef& at(std::uint64_t i) const { return all_[i]; }
    std::uint64_t index(const SimplexRef& r) const { return offsets_[r.degens] + r.id; }
    std::uint32_t face(std::uint64_t s, int i) const { return faces_[s * (d_ + 1) + i]; }
    bool has_faces() const { return !faces_.empty() || d_ == 0 || all_.empty(); }

private:
    int d_;
    std::vector<std::uint64_t> offsets_;
    std::vector<SimplexRef> all_;
    std::vector<std::uint32_t> faces_;
};

inline constexpr std::uint32_t kNoSimplex = std::numeric_limits<std::uint32_t>::max();

// Families (y_i), i in 0..n except `omit`, of (n-1)-simplices with d_a y_b = d_{b-1} y_a for a < b.
// omit = -1 gives full boundaries, omit = k gives Λ^n_k horns.
class CompatibleTuples {
public:
    CompatibleTuples(const DenseLevel& top, std::uint64_t below_size, int n, int omit = -1);

    int n() const { return n_; }

    template <class F>
    void for_each(F&& fn) const {
        std::vector<std::uint32_t> y(n_ + 1, kNoSimplex);
        auto wrapped = [&](const std::uint32_t* t) {
            fn(t);
            return true;
        };
        walk(0, y, wrapped);
    }

    // Stops as soon as fn returns false; returns false if stopped.
    template <class F>
    bool for_each_until(F&& fn) const {
        std::vector<std::uint32_t> y(n_ + 1, kNoSimplex);
        return walk(0, y, fn);
    }

    // Randomized depth-first search; finds some family if one exists.
    bool sample_one(std::mt19937_64& rng, std::vector<std::uint32_t>& out) const;

private:
    struct Slot {
        int pos = 0;
        std::vector<int> earlier;
        std::vector<int> key_faces;
        bool hashed = false;
        std::vector<std::uint32_t> offsets;
        std::vector<std::uint32_t> ids;
        std::unordered_map<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>> ranges;
    };

    std::pair<const std::uint32_t*, const std::uint32_t*> candidates(const Slot& s,
                                                                    const std::vector<std::uint32_t>& y) const;
    bool consistent(const Slot& s, std::uint32_t cand, const std::vector<std::uint32_t>& y) const {
        for (int a : s.earlier)
            if (top_.face(cand, a) != top_.face(y[a], s.pos - 1)) return false;
        return true;
    }

    template <class F>
    bool walk(std::size_t depth, std::vector<std::uint32_t>& y, F& fn) const {
        if (depth == slots_.size()) return fn(y.data());
        const Slot& s = slots_[depth];
        auto [b, e] = candidates(s, y);
        for (auto it = b; it != e; ++it) {
            if (!consistent(s, *it, y)) continue;
            y[s.pos] = *it;
            if (!walk(depth + 1, y, fn)) {
                y[s.pos] = kNoSimplex;
                return false;
            }
        }
        y[s.pos] = kNoSimplex;
        return true;
    }

    const DenseLevel& top_;
    std::uint64_t below_size_;
    int n_;
    int omit_;
    std::vector<Slot> slots_;
    std::vector<std::uint32_t> all_ids_;
};

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : v) h = (h ^ x) * 1099511628211ull;
        return static_cast<std::size_t>(h);
    }
};

// Lookup of simplices of one level by their faces, optionally ignoring one face.
class BoundaryIndex {
public:
    BoundaryIndex(const DenseLevel& level, std::uint64_t below_size, int skip = -1);

    struct Hit {
        std::uint32_t first = kNoSimplex;
        std::uint32_t count = 0;
    };
    // faces has dim+1 entries; the skipped one is ignored.
    Hit find(const std::uint32_t* faces) const;

private:
    std::uint64_t key(const std::uint32_t* faces) const;
    int d_;
    int skip_;
    std::uint64_t base_;
    bool packed_;
    std::unordered_map<std::uint64_t, Hit> map_;
    std::unordered_map<std::vector<std::uint32_t>, Hit, VecHash> wide_;
};

// Streams the nondegenerate simplices of the coskeleton one dimension above X's truncation,
// each given by its faces.
void for_each_coskeleton_simplex(const TruncSSet& X, const std::function<void(std::span<const SimplexRef>)>& fn);

}  // namespace trinerve
