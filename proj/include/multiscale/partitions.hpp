#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multiscale/errors.hpp"

namespace ms {

// Set partition of {1..n} in canonical form: each block sorted ascending,
// blocks sorted by their minimum. The lattice order is refinement with the
// one-block partition at the bottom and all-singletons at the top:
// leq(eta, pi) holds iff pi refines eta.
struct Partition {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    bool operator==(const Partition &o) const { return n == o.n && blocks == o.blocks; }
    bool operator!=(const Partition &o) const { return !(*this == o); }
};

// Validates and canonicalizes; throws validation_error on bad input.
Partition partition_from_blocks(int n, std::vector<std::vector<int>> blocks);

Partition bottom_partition(int n); // one block {1..n}
Partition top_partition(int n);    // all singletons

bool is_bottom(const Partition &p);
bool is_top(const Partition &p);

// Total order: by number of blocks, then lexicographic on the block lists.
// Refinement-compatible on comparable pairs since leq(a,b) forces
// |blocks(a)| <= |blocks(b)|.
bool partition_less(const Partition &a, const Partition &b);

// True iff pi refines eta (every block of pi lies inside a block of eta).
bool leq(const Partition &eta, const Partition &pi);

// Finest common coarsening: transitive closure of the union of relations.
Partition meet(const Partition &a, const Partition &b);
// Common refinement: intersection of relations.
Partition join(const Partition &a, const Partition &b);

int dim_partition(const Partition &p);   // |B(p)| - 2, so dim(bottom) = -1
int codim_partition(const Partition &p); // n + 1 - |B(p)|

// 1-based block index containing mark i.
int block_index_of(const Partition &p, int i);
bool same_block(const Partition &p, int i, int j);

// All partitions of {1..n}, canonical, sorted by partition_less. n <= 9.
std::vector<Partition> enumerate_partitions(int n);

// Pairs (min(b), min(b')) over blocks b != b' of pi lying in a common block
// B of rho with min(B) = min(b), sorted lexicographically. Requires
// leq(rho, pi); size is always |B(pi)| - |B(rho)|. When pi is the top
// partition and augment_top is set, the result additionally carries the
// marker slot for the scale coordinate t.
struct NSet {
    std::vector<std::pair<int, int>> pairs;
    bool t_marker = false;
};
NSet n_set(const Partition &rho, const Partition &pi, bool augment_top = false);

// Strictly increasing chain rho_1 < ... < rho_l of non-bottom partitions;
// the empty chain is allowed.
struct PartitionChain {
    int n = 0;
    std::vector<Partition> elements;

    int length() const { return static_cast<int>(elements.size()); }
    bool operator==(const PartitionChain &o) const { return n == o.n && elements == o.elements; }
    bool operator!=(const PartitionChain &o) const { return !(*this == o); }
};

// Validates: same n throughout, no bottom element, strictly increasing.
PartitionChain chain_from_elements(int n, std::vector<Partition> elements);

// All chains (including the empty one), optionally keeping only chains all
// of whose elements have dim <= max_dim. Deterministic order: by length,
// then lexicographically by elements under partition_less. n <= 7.
std::vector<PartitionChain> enumerate_chains(int n, std::optional<int> max_dim = std::nullopt);

std::string partition_to_string(const Partition &p); // "12|3" style, for messages

} // namespace ms
