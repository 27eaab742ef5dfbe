#pragma once

#include <cstdint>
#include <optional>

namespace trinerve {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;
inline constexpr const char* kBudgetEnvVar = "TRINERVE_BUDGET";

// Maximum number of simplices any single dimension may enumerate.
std::uint64_t size_budget();
void set_size_budget(std::uint64_t n);

// flag > environment > default
std::uint64_t resolve_budget(std::optional<std::uint64_t> flag);

// Throws ResourceError when `count` exceeds the active budget.
void check_budget(std::uint64_t count, int dimension, const char* what);

// Saturating product used for size estimates.
std::uint64_t mul_saturating(std::uint64_t a, std::uint64_t b);
std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t exp);

class BudgetScope {
public:
    explicit BudgetScope(std::uint64_t n);
    ~BudgetScope();
    BudgetScope(const BudgetScope&) = delete;
    BudgetScope& operator=(const BudgetScope&) = delete;

private:
    std::uint64_t saved_;
};

}  // namespace trinerve
