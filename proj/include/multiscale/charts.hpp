#pragma once

#include <map>
#include <utility>
#include <vector>

#include "multiscale/leveltrees.hpp"
#include "multiscale/rational.hpp"

namespace ms {

// Flat index of the pair (i,j), 1 <= i < j <= n, in row-major order.
int pair_index(int n, int i, int j);
int num_pairs(int n);

// A point of the chart attached to a tree: one rational z per mark pair and
// one rational t per level, plus the defining index pairs (i_m, j_m) for
// levels m = 0..l-1 whose meet realizes level m. Invariants:
//   z at each index pair is 1; z_ij != 0 when i and j sit at different
//   terminals; per-vertex additive cocycle and node coincidence; t free.
struct ChartPoint {
    LevelTree tree;
    std::vector<std::pair<int, int>> indices; // size l
    std::vector<Rat> z;                       // size num_pairs(n), pair_index order
    std::vector<Rat> t;                       // size l

    bool operator==(const ChartPoint &o) const;
    bool operator!=(const ChartPoint &o) const { return !(*this == o); }
};

// z extended to arbitrary (i,j): antisymmetric, zero on the diagonal.
Rat z_value(const ChartPoint &p, int i, int j);

// Lexicographically least pair with meet on each level.
std::vector<std::pair<int, int>> default_indices(const LevelTree &t);

// Configuration of n points on a line, as the chart of the one-vertex tree.
ChartPoint from_configuration(const std::vector<Rat> &zs);

// Throws validation_error describing the first violated constraint.
void validate_point(const ChartPoint &p);

// Rewrites coordinates for a different choice of index pairs on the same
// tree. For a change (i_m,j_m) -> (k,l) on level m: z at level-m meets is
// divided by the old z_kl, t_m is multiplied by it and t_{m+1} divided by
// it (only t_1, divided, when m = 0). Changes at several levels commute.
ChartPoint change_indices(const ChartPoint &p, const std::vector<std::pair<int, int>> &new_pairs);

// Chart transition onto a contraction of the tree. target must equal
// contract_levels(tree, S) for some S, and every t_s, s in S, must be
// nonzero. Periods are preserved.
ChartPoint transition(const ChartPoint &p, const LevelTree &target);
ChartPoint transition_levels(const ChartPoint &p, const std::vector<int> &levels);

// z_ij / (t_{m+1} ... t_l) on P^1, where m is the meet level of (i,j);
// infinite exactly when a factor vanishes (the meet is then non-terminal).
ExtendedValue period(const ChartPoint &p, int i, int j);

// Chain of the point's own tree: contract the levels with t != 0.
PartitionChain stratum_of(const ChartPoint &p);

// Translation action: z_ij += a_j - a_i for pairs at a common terminal;
// everything else unchanged.
ChartPoint g_act(const std::vector<Rat> &a, const ChartPoint &p);

// Relabeling action: marking h o sigma^{-1}, z'_ij = z at
// (sigma^{-1}(i), sigma^{-1}(j)) with antisymmetry, index pairs mapped
// through sigma, t unchanged.
ChartPoint s_act(const std::vector<int> &sigma, const ChartPoint &p);

// The partition with i ~ j iff period(p,i,j) = 0.
Partition collision_partition(const ChartPoint &p);

// For p whose periods vanish on every rho-equivalent pair: restrict to the
// block minima and relabel them 1..|B(rho)| (blocks ordered by minimum).
ChartPoint kappa(const Partition &rho, const ChartPoint &p);

// Inverse of kappa: re-attach the collided marks of each block with zero
// relative position. q has |B(rho)| marks.
ChartPoint lambda_attach(const Partition &rho, const ChartPoint &q);

// Level-forgetting: the unleveled tree of the point's stratum plus the
// finite periods (exactly the pairs at a common terminal of that tree).
struct ScaledCurve {
    RootedTree tree;
    std::map<std::pair<int, int>, Rat> periods;

    bool operator==(const ScaledCurve &o) const { return tree == o.tree && periods == o.periods; }
};
ScaledCurve xi(const ChartPoint &p);

} // namespace ms
