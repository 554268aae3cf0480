#pragma once

#include <atomic>
#include <stdexcept>
#include <string>

namespace ms {

// Bad input data: malformed JSON, broken invariants, mismatched n, etc.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Input exceeds a size guard (Bell-number growth makes large n infeasible).
struct size_guard_error : std::runtime_error {
    explicit size_guard_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Caller misuse at the interface level (CLI flags and the like).
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Internal consistency breach; indicates a bug, never bad user input.
struct defect_error : std::logic_error {
    explicit defect_error(const std::string &msg) : std::logic_error(msg) {}
};

// Process-wide override for all size guards; 0 means "use defaults".
// Set via the C API or the MULTISCALE_MAX_N environment variable.
std::atomic<int> &max_n_override();

// Throws size_guard_error unless n <= cap, where cap is default_cap or
// the active override.
void check_size_guard(int n, int default_cap, const char *what);

} // namespace ms
