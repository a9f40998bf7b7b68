#pragma once

// Error categories shared across the library. The CLI maps them to exit
// codes: invalid_input -> 2, size_refusal -> 3, check failures -> 1.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace adg {

// Bad parameters, malformed input files, domain violations.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

// A job whose resource footprint exceeds the configured budget, or whose
// id space does not fit in 64 bits.
struct size_refusal : std::runtime_error {
    explicit size_refusal(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr std::uint64_t kDefaultMemBudget = 4ull << 30;  // 4 GiB

// Single reproducibility knob for every randomized policy.
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

inline void require_budget(std::uint64_t need_bytes, std::uint64_t budget_bytes,
                           const char* what) {
    if (need_bytes > budget_bytes) {
        throw size_refusal(std::string(what) + " needs " + std::to_string(need_bytes) +
                           " bytes, budget is " + std::to_string(budget_bytes));
    }
}

}  // namespace adg
