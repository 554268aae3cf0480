#pragma once

#include <map>
#include <optional>
#include <vector>

#include "multiscale/charts.hpp"
#include "multiscale/rational.hpp"

namespace ms {

// Sparse Laurent polynomial in one variable t over Q; no zero coefficients
// are stored.
struct Laurent {
    std::map<int, Rat> terms; // exponent -> coefficient

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Laurent &o) const { return terms == o.terms; }
};

Laurent laurent_from_terms(std::vector<std::pair<int, Rat>> terms); // merges, drops zeros
Laurent laurent_sub(const Laurent &a, const Laurent &b);
Laurent laurent_scale_exp(const Laurent &a, int k); // multiply by t^k

// Least exponent; nullopt for the zero polynomial.
std::optional<int> laurent_val(const Laurent &a);
Rat laurent_lc(const Laurent &a);           // coefficient at the valuation
Rat laurent_coeff(const Laurent &a, int k); // 0 if absent

// Value at t -> 0 on P^1: infinite iff val < 0, else the t^0 coefficient.
ExtendedValue laurent_limit_at_zero(const Laurent &a);

// One-parameter family of n points z_i(t) degenerating as t -> 0.
struct LaurentFamily {
    int n = 0;
    std::vector<Laurent> z;
};

// val(z_j - z_i) per pair, in pair_index order; nullopt means the two
// points agree identically (permanent collision).
std::vector<std::optional<int>> pair_valuations(const LaurentFamily &f);

// The combinatorial type of the limit: terminals are the classes where
// v_ij >= 0; each distinct negative valuation contributes one level, more
// negative meaning closer to the root.
LevelTree limit_tree(const LaurentFamily &f);

// The limit in the chart of limit_tree(f): all t = 0, default index pairs,
// z from leading-coefficient ratios (internal meets) and t^0 coefficients
// (terminal pairs). The result is validated before being returned.
ChartPoint limit_point(const LaurentFamily &f);

LaurentFamily rescale_family(const LaurentFamily &f, int k); // z_i -> t^k z_i

} // namespace ms
