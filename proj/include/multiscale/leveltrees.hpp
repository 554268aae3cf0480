#pragma once

#include <string>
#include <utility>
#include <vector>

#include "multiscale/partitions.hpp"

namespace ms {

// Canonical vertex id for a block: digits concatenated for n <= 9 ("123"),
// comma-separated otherwise ("1,2,3").
std::string block_id(const std::vector<int> &block, int n);

struct TreeVertex {
    std::vector<int> block; // marks at or above this vertex, sorted
    int level = 0;
    int parent = -1; // index into vertices; -1 for the root
    std::string id;
};

// Rooted leveled n-marked tree: root alone at level 0, marks exactly on the
// childless vertices which all sit at the top level, every other vertex has
// at least two children. Edges may skip levels. Vertices are kept sorted by
// (level, min of block), so the root is vertices[0]. Equal data means equal
// tree.
struct LevelTree {
    int n = 0;
    std::vector<TreeVertex> vertices;
    std::vector<int> mark_vertex; // mark i (1-based) -> vertex index, at [i-1]

    int levels() const; // top level l; 0 for the one-vertex tree
    bool operator==(const LevelTree &o) const;
    bool operator!=(const LevelTree &o) const { return !(*this == o); }
};

// Same data without levels; the image of level-forgetting.
struct RootedTreeVertex {
    std::vector<int> block;
    int parent = -1;
    std::string id;
};
struct RootedTree {
    int n = 0;
    std::vector<RootedTreeVertex> vertices; // sorted by (-|block|, block)
    std::vector<int> mark_vertex;

    bool operator==(const RootedTree &o) const;
    bool operator!=(const RootedTree &o) const { return !(*this == o); }
};

// Throws validation_error naming the violated constraint.
void validate_tree(const LevelTree &t);
void validate_rooted_tree(const RootedTree &t);

// Mutually inverse: level-k vertices are the blocks of the k-th chain
// element; vertices with a single child are elided in favor of a longer
// edge. The empty chain maps to the one-vertex tree.
LevelTree chain_to_tree(const PartitionChain &chain);
PartitionChain tree_to_chain(const LevelTree &t);

// Deletes the chain elements at the given positions (1-based, within
// {1..levels}). Empty set is the identity.
LevelTree contract_levels(const LevelTree &t, const std::vector<int> &levels);

struct MeetVertex {
    int vertex = 0; // index into vertices
    int level = 0;
};
// Deepest common ancestor of the terminal vertices carrying marks i and j.
MeetVertex meet_vertex(const LevelTree &t, int i, int j);

// All dual level trees on n marks, in enumerate_chains order. n <= 7.
std::vector<LevelTree> enumerate_trees(int n);

// Relabels marks by sigma (h'(i) = h(sigma^{-1}(i))); sigma is given as the
// image list sigma[i-1] = sigma(i). Tree shape and levels are unchanged up
// to canonical re-sorting of vertices.
LevelTree apply_permutation(const std::vector<int> &sigma, const LevelTree &t);
RootedTree apply_permutation(const std::vector<int> &sigma, const RootedTree &t);

RootedTree unlevel(const LevelTree &t);

// All ways to assign levels to the internal vertices of an unleveled tree
// (terminals forced to the common top level), i.e. the fiber of
// level-forgetting over t. Deterministic order.
std::vector<LevelTree> enumerate_level_structures(const RootedTree &t);

} // namespace ms
