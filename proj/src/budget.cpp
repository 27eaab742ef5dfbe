#include "trinerve/budget.hpp"

#include <atomic>
#include <cstdlib>
#include <limits>
#include <string>

#include "trinerve/errors.hpp"

namespace trinerve {

namespace {
std::atomic<std::uint64_t> g_budget{0};
}

std::uint64_t resolve_budget(std::optional<std::uint64_t> flag) {
    if (flag) {
        if (*flag == 0) throw InputError("budget must be positive");
        return *flag;
    }
    if (const char* env = std::getenv(kBudgetEnvVar)) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            throw InputError(std::string(kBudgetEnvVar) + " is not a positive integer: " + env);
        return v;
    }
    return kDefaultBudget;
}

std::uint64_t size_budget() {
    std::uint64_t b = g_budget.load();
    if (b == 0) {
        b = resolve_budget(std::nullopt);
        g_budget.store(b);
    }
    return b;
}

void set_size_budget(std::uint64_t n) {
    if (n == 0) throw InputError("budget must be positive");
    g_budget.store(n);
}

void check_budget(std::uint64_t count, int dimension, const char* what) {
    std::uint64_t b = size_budget();
    if (count > b) {
        throw ResourceError(std::string(what) + ": dimension " + std::to_string(dimension) +
                                " needs " + std::to_string(count) + " simplices, budget is " +
                                std::to_string(b),
                            dimension, count);
    }
}

std::uint64_t mul_saturating(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<std::uint64_t>::max() / b)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::uint64_t pow_saturating(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) r = mul_saturating(r, base);
    return r;
}

BudgetScope::BudgetScope(std::uint64_t n) : saved_(size_budget()) { set_size_budget(n); }
BudgetScope::~BudgetScope() { g_budget.store(saved_); }

}  // namespace trinerve
