#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "trinerve/simplicial.hpp"

namespace trinerve {

struct Coefficients {
    enum class Kind { Integers, Rationals, PrimeField };
    Kind kind = Kind::Integers;
    std::int64_t p = 0;

    static Coefficients integers() { return {}; }
    static Coefficients rationals() { return {Kind::Rationals, 0}; }
    static Coefficients prime_field(std::int64_t p);
    // "z", "q" or "zp:<p>"
    static Coefficients parse(const std::string& tag);
    std::string tag() const;
    bool operator==(const Coefficients&) const = default;
};

struct SparseMatrix {
    std::uint32_t rows = 0, cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns;  // sorted by row
};

// Normalized chains: basis of degree n = nondegenerate n-simplices.
struct ChainComplex {
    int top = 0;
    std::vector<std::uint32_t> ranks;
    std::vector<SparseMatrix> boundary;  // boundary[n]: C_n -> C_{n-1}; boundary[0] is empty

    // degrees where ∂_{n-1}∂_n fails
    std::vector<int> square_defects() const;
};

ChainComplex chain_complex(const TruncSSet& X);

struct SmithForm {
    std::vector<mpz_class> diag;  // nonzero invariant factors, each dividing the next
    std::size_t rank = 0;
};

SmithForm smith_normal_form(std::vector<std::vector<mpz_class>> m);
SmithForm smith_normal_form(const std::vector<std::vector<std::int64_t>>& m);

// Rank and invariant factors of a sparse integer matrix.  Unit pivots are eliminated
// sparsely; the rest goes through a dense Smith form limited to `dense_limit` entries.
SmithForm integer_invariants(const SparseMatrix& m, std::uint64_t dense_limit = 25'000'000);
std::size_t rank_mod_p(const SparseMatrix& m, std::int64_t p);
std::size_t rank_rational(const SparseMatrix& m);

struct HomologyGroup {
    int degree = 0;
    std::uint64_t betti = 0;
    std::vector<std::string> torsion;  // decimal invariant factors > 1
    Coefficients coeff;

    bool operator==(const HomologyGroup&) const = default;
    std::string describe() const;
};

struct HomologyResult {
    Coefficients coeff;
    std::vector<HomologyGroup> groups;
    bool operator==(const HomologyResult&) const = default;
};

// Degrees must lie in 0..trunc-1.
HomologyResult homology(const TruncSSet& X, const std::vector<int>& degrees, Coefficients coeff = {});
HomologyResult homology(const ChainComplex& C, const std::vector<int>& degrees, Coefficients coeff = {});

nlohmann::json homology_to_json(const HomologyResult& r);

}  // namespace trinerve
