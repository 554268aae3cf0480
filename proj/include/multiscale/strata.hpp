#pragma once

#include <utility>
#include <vector>

#include "multiscale/partitions.hpp"

namespace ms {

struct StratumRecord {
    PartitionChain chain;
    int codim = 0; // chain length
    int dim = 0;   // n - 1 - codim
};

// All strata of the level-tree stratification, one per chain, closure order
// = chain inclusion. Records sorted by (codim, chain order).
struct StratificationPoset {
    int n = 0;
    std::vector<StratumRecord> records;
};

StratificationPoset build_stratification(int n); // n <= 7

// Closure of the a-stratum contains the b-stratum iff a's chain is a subset
// of b's.
bool closure_contains(const PartitionChain &a, const PartitionChain &b);

// The corresponding boundary divisors have nonempty common intersection iff
// the partitions form a chain under refinement.
bool divisors_intersect(const std::vector<Partition> &rhos);

// Stage k in {0..n-2} lists the partitions of dimension k: the blowup
// centers handled at that stage, in partition_less order.
std::vector<std::pair<int, std::vector<Partition>>> blowup_schedule(int n); // n <= 7

// Collision strata: one per partition (bottom included), ordered by
// refinement; covers are the covering relations of that order as index
// pairs (coarser, finer) into strata.
struct CollisionPoset {
    int n = 0;
    std::vector<Partition> strata; // partition_less order, Bell(n) entries
    std::vector<std::pair<int, int>> covers;
};
CollisionPoset collision_poset(int n); // n <= 7
int collision_dim(const Partition &rho); // |B(rho)| - 1

// Boundary poset of the iterated blowup, built by simulating the stages:
// two centers stay incident through every stage iff comparable (separated
// once the stage of their meet has been blown up, or disjoint from the
// start when the meet is the bottom partition); incident families are the
// cliques of the end-state incidence graph. Families come out sorted, each
// family sorted by partition_less, smallest families first. Used as an
// independent cross-check of build_stratification.
std::vector<std::vector<Partition>> wn_incident_families(int n); // n <= 7

} // namespace ms
