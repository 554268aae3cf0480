#include "multiscale/errors.hpp"

namespace ms {

std::atomic<int> &max_n_override() {
    static std::atomic<int> value{0};
    return value;
}

void check_size_guard(int n, int default_cap, const char *what) {
    int cap = max_n_override().load();
    if (cap <= 0)
        cap = default_cap;
    if (n > cap)
        throw size_guard_error(std::string(what) + ": n = " + std::to_string(n) +
                               " exceeds the size guard " + std::to_string(cap));
}

} // namespace ms
