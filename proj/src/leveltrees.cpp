#include "multiscale/leveltrees.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "multiscale/errors.hpp"

namespace ms {

std::string block_id(const std::vector<int> &block, int n) {
    std::string s;
    for (size_t k = 0; k < block.size(); ++k) {
        if (n > 9 && k)
            s += ',';
        s += std::to_string(block[k]);
    }
    return s;
}

int LevelTree::levels() const {
    return vertices.empty() ? 0 : vertices.back().level;
}

bool LevelTree::operator==(const LevelTree &o) const {
    if (n != o.n || vertices.size() != o.vertices.size() || mark_vertex != o.mark_vertex)
        return false;
    for (size_t k = 0; k < vertices.size(); ++k) {
        const TreeVertex &a = vertices[k], &b = o.vertices[k];
        if (a.block != b.block || a.level != b.level || a.parent != b.parent || a.id != b.id)
            return false;
    }
    return true;
}

bool RootedTree::operator==(const RootedTree &o) const {
    if (n != o.n || vertices.size() != o.vertices.size() || mark_vertex != o.mark_vertex)
        return false;
    for (size_t k = 0; k < vertices.size(); ++k) {
        const RootedTreeVertex &a = vertices[k], &b = o.vertices[k];
        if (a.block != b.block || a.parent != b.parent || a.id != b.id)
            return false;
    }
    return true;
}

namespace {

void check_block(const std::vector<int> &block, int n, const char *where) {
    if (block.empty())
        throw validation_error(std::string(where) + ": empty block");
    if (!std::is_sorted(block.begin(), block.end()) ||
        std::adjacent_find(block.begin(), block.end()) != block.end())
        throw validation_error(std::string(where) + ": block not sorted or has repeats");
    if (block.front() < 1 || block.back() > n)
        throw validation_error(std::string(where) + ": mark out of range");
}

bool subset_of(const std::vector<int> &a, const std::vector<int> &b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace

void validate_tree(const LevelTree &t) {
    if (t.n < 1)
        throw validation_error("tree: n must be at least 1");
    if (t.vertices.empty())
        throw validation_error("tree: no vertices");
    if (static_cast<int>(t.mark_vertex.size()) != t.n)
        throw validation_error("tree: mark table size differs from n");

    size_t count = t.vertices.size();
    for (size_t k = 0; k < count; ++k) {
        const TreeVertex &v = t.vertices[k];
        check_block(v.block, t.n, "tree");
        if (v.id != block_id(v.block, t.n))
            throw validation_error("tree: vertex id does not match its block");
        if (k) {
            const TreeVertex &prev = t.vertices[k - 1];
            if (std::pair(prev.level, prev.block[0]) >= std::pair(v.level, v.block[0]))
                throw validation_error("tree: vertices not sorted by (level, least mark)");
        }
    }

    const TreeVertex &root = t.vertices[0];
    if (root.level != 0 || root.parent != -1)
        throw validation_error("tree: first vertex is not a root at level 0");
    if (static_cast<int>(root.block.size()) != t.n)
        throw validation_error("tree: root block must carry every mark");
    if (count > 1 && t.vertices[1].level == 0)
        throw validation_error("tree: root is not alone at level 0");

    int top = t.vertices.back().level;
    std::vector<int> nchildren(count, 0);
    std::vector<char> level_seen(top + 1, 0);
    for (size_t k = 0; k < count; ++k) {
        const TreeVertex &v = t.vertices[k];
        level_seen[v.level] = 1;
        if (k == 0)
            continue;
        if (v.parent < 0 || v.parent >= static_cast<int>(count))
            throw validation_error("tree: parent index out of range");
        const TreeVertex &p = t.vertices[v.parent];
        if (p.level >= v.level)
            throw validation_error("tree: parent level must be below child level");
        if (!subset_of(v.block, p.block))
            throw validation_error("tree: child block not contained in parent block");
        ++nchildren[v.parent];
    }
    for (int lv = 0; lv <= top; ++lv)
        if (!level_seen[lv])
            throw validation_error("tree: level " + std::to_string(lv) + " is empty");

    std::set<std::string> ids;
    for (const TreeVertex &v : t.vertices)
        if (!ids.insert(v.id).second)
            throw validation_error("tree: duplicate vertex " + v.id);

    std::vector<int> owner(t.n + 1, -1);
    for (size_t k = 0; k < count; ++k) {
        if (nchildren[k] == 0) {
            if (t.vertices[k].level != top)
                throw validation_error("tree: childless vertex below the top level");
            for (int m : t.vertices[k].block) {
                if (owner[m] != -1)
                    throw validation_error("tree: mark " + std::to_string(m) +
                                           " carried by two childless vertices");
                owner[m] = static_cast<int>(k);
            }
        } else if (nchildren[k] == 1) {
            throw validation_error("tree: vertex " + t.vertices[k].id + " has a single child");
        } else {
            std::size_t sz = 0;
            for (size_t c = 1; c < count; ++c)
                if (t.vertices[c].parent == static_cast<int>(k)) {
                    if (!subset_of(t.vertices[c].block, t.vertices[k].block))
                        throw validation_error("tree: child block escapes parent");
                    sz += t.vertices[c].block.size();
                }
            if (sz != t.vertices[k].block.size())
                throw validation_error("tree: children do not cover vertex " + t.vertices[k].id);
        }
    }
    for (int m = 1; m <= t.n; ++m) {
        if (owner[m] < 0)
            throw validation_error("tree: mark " + std::to_string(m) + " not on any vertex");
        if (t.mark_vertex[m - 1] != owner[m])
            throw validation_error("tree: mark table disagrees with blocks for mark " +
                                   std::to_string(m));
    }
}

void validate_rooted_tree(const RootedTree &t) {
    if (t.n < 1)
        throw validation_error("rooted tree: n must be at least 1");
    if (t.vertices.empty())
        throw validation_error("rooted tree: no vertices");
    if (static_cast<int>(t.mark_vertex.size()) != t.n)
        throw validation_error("rooted tree: mark table size differs from n");

    size_t count = t.vertices.size();
    for (size_t k = 0; k < count; ++k) {
        const RootedTreeVertex &v = t.vertices[k];
        check_block(v.block, t.n, "rooted tree");
        if (v.id != block_id(v.block, t.n))
            throw validation_error("rooted tree: vertex id does not match its block");
        if (k) {
            const RootedTreeVertex &prev = t.vertices[k - 1];
            auto key = [](const RootedTreeVertex &w) {
                return std::pair(-static_cast<int>(w.block.size()), w.block);
            };
            if (key(prev) >= key(v))
                throw validation_error("rooted tree: vertices not sorted by size then block");
        }
    }

    if (t.vertices[0].parent != -1 || static_cast<int>(t.vertices[0].block.size()) != t.n)
        throw validation_error("rooted tree: first vertex is not a full-block root");

    std::vector<int> nchildren(count, 0);
    for (size_t k = 1; k < count; ++k) {
        const RootedTreeVertex &v = t.vertices[k];
        if (v.parent < 0 || v.parent >= static_cast<int>(k))
            throw validation_error("rooted tree: parent must come earlier in the order");
        if (!subset_of(v.block, t.vertices[v.parent].block) ||
            v.block.size() == t.vertices[v.parent].block.size())
            throw validation_error("rooted tree: child block must shrink strictly");
        ++nchildren[v.parent];
    }

    std::vector<int> owner(t.n + 1, -1);
    for (size_t k = 0; k < count; ++k) {
        if (nchildren[k] == 0) {
            for (int m : t.vertices[k].block) {
                if (owner[m] != -1)
                    throw validation_error("rooted tree: mark " + std::to_string(m) +
                                           " carried by two childless vertices");
                owner[m] = static_cast<int>(k);
            }
        } else if (nchildren[k] == 1) {
            throw validation_error("rooted tree: vertex " + t.vertices[k].id +
                                   " has a single child");
        } else {
            std::size_t sz = 0;
            for (size_t c = 1; c < count; ++c)
                if (t.vertices[c].parent == static_cast<int>(k))
                    sz += t.vertices[c].block.size();
            if (sz != t.vertices[k].block.size())
                throw validation_error("rooted tree: children do not cover vertex " +
                                       t.vertices[k].id);
        }
    }
    for (int m = 1; m <= t.n; ++m) {
        if (owner[m] < 0)
            throw validation_error("rooted tree: mark " + std::to_string(m) + " not on any vertex");
        if (t.mark_vertex[m - 1] != owner[m])
            throw validation_error("rooted tree: mark table disagrees with blocks for mark " +
                                   std::to_string(m));
    }
}

namespace {

struct RawVertex {
    std::vector<int> block;
    int level;
    int parent; // into the raw array
};

// Canonical assembly shared by the construction paths. Input parents may
// point anywhere in the raw array; output is sorted with remapped parents.
LevelTree assemble_tree(int n, const std::vector<RawVertex> &raw) {
    std::vector<int> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(raw[a].level, raw[a].block[0]) < std::pair(raw[b].level, raw[b].block[0]);
    });
    std::vector<int> where(raw.size());
    for (size_t k = 0; k < order.size(); ++k)
        where[order[k]] = static_cast<int>(k);

    LevelTree t;
    t.n = n;
    t.vertices.resize(raw.size());
    for (size_t k = 0; k < order.size(); ++k) {
        const RawVertex &rv = raw[order[k]];
        TreeVertex v;
        v.block = rv.block;
        v.level = rv.level;
        v.parent = rv.parent < 0 ? -1 : where[rv.parent];
        v.id = block_id(v.block, n);
        t.vertices[k] = std::move(v);
    }
    int top = t.vertices.back().level;
    t.mark_vertex.assign(n, -1);
    for (size_t k = 0; k < t.vertices.size(); ++k)
        if (t.vertices[k].level == top)
            for (int m : t.vertices[k].block)
                t.mark_vertex[m - 1] = static_cast<int>(k);
    return t;
}

} // namespace

LevelTree chain_to_tree(const PartitionChain &chain) {
    int n = chain.n;
    int l = chain.length();

    // full picture first: one vertex per block per level, then single-child
    // vertices dissolve into longer edges
    std::vector<RawVertex> raw;
    std::vector<std::vector<int>> at_level(l + 1); // level -> raw indices
    std::vector<int> root_block(n);
    std::iota(root_block.begin(), root_block.end(), 1);
    raw.push_back({root_block, 0, -1});
    at_level[0] = {0};
    for (int k = 1; k <= l; ++k)
        for (const auto &b : chain.elements[k - 1].blocks) {
            int parent = -1;
            for (int idx : at_level[k - 1])
                if (subset_of(b, raw[idx].block)) {
                    parent = idx;
                    break;
                }
            at_level[k].push_back(static_cast<int>(raw.size()));
            raw.push_back({b, k, parent});
        }

    std::vector<int> nchildren(raw.size(), 0);
    for (size_t k = 1; k < raw.size(); ++k)
        ++nchildren[raw[k].parent];
    std::vector<char> keep(raw.size(), 0);
    for (size_t k = 0; k < raw.size(); ++k)
        keep[k] = raw[k].level == l || nchildren[k] >= 2 || raw[k].parent < 0;

    std::vector<RawVertex> kept;
    std::vector<int> new_index(raw.size(), -1);
    for (size_t k = 0; k < raw.size(); ++k)
        if (keep[k]) {
            new_index[k] = static_cast<int>(kept.size());
            kept.push_back(raw[k]);
        }
    for (RawVertex &v : kept)
        if (v.parent >= 0) {
            int p = v.parent;
            while (!keep[p])
                p = raw[p].parent;
            v.parent = new_index[p];
        }
    return assemble_tree(n, kept);
}

PartitionChain tree_to_chain(const LevelTree &t) {
    int l = t.levels();
    std::vector<Partition> elems;
    for (int k = 1; k <= l; ++k) {
        std::vector<int> owner(t.n + 1, 0);
        for (int i = 1; i <= t.n; ++i)
            owner[i] = i;
        for (int i = 1; i <= t.n; ++i)
            for (int j = i + 1; j <= t.n; ++j)
                if (meet_vertex(t, i, j).level >= k) {
                    int a = owner[i];
                    for (int m = 1; m <= t.n; ++m)
                        if (owner[m] == a)
                            owner[m] = owner[j];
                }
        std::map<int, std::vector<int>> blocks;
        for (int i = 1; i <= t.n; ++i)
            blocks[owner[i]].push_back(i);
        std::vector<std::vector<int>> bl;
        for (auto &[rep, b] : blocks)
            bl.push_back(b);
        elems.push_back(partition_from_blocks(t.n, bl));
    }
    return chain_from_elements(t.n, elems);
}

LevelTree contract_levels(const LevelTree &t, const std::vector<int> &levels) {
    int l = t.levels();
    std::set<int> drop(levels.begin(), levels.end());
    if (drop.size() != levels.size())
        throw validation_error("contract: repeated level");
    for (int s : drop)
        if (s < 1 || s > l)
            throw validation_error("contract: level " + std::to_string(s) +
                                   " outside 1.." + std::to_string(l));
    PartitionChain chain = tree_to_chain(t);
    std::vector<Partition> kept;
    for (int k = 1; k <= l; ++k)
        if (!drop.count(k))
            kept.push_back(chain.elements[k - 1]);
    return chain_to_tree(chain_from_elements(t.n, kept));
}

MeetVertex meet_vertex(const LevelTree &t, int i, int j) {
    if (i < 1 || i > t.n || j < 1 || j > t.n)
        throw validation_error("meet: mark out of range");
    int a = t.mark_vertex[i - 1], b = t.mark_vertex[j - 1];
    while (a != b) {
        if (t.vertices[a].level >= t.vertices[b].level)
            a = t.vertices[a].parent;
        else
            b = t.vertices[b].parent;
    }
    return {a, t.vertices[a].level};
}

std::vector<LevelTree> enumerate_trees(int n) {
    check_size_guard(n, 7, "trees");
    std::vector<LevelTree> out;
    for (const PartitionChain &c : enumerate_chains(n))
        out.push_back(chain_to_tree(c));
    return out;
}

namespace {

std::vector<int> inverse_permutation(const std::vector<int> &sigma, int n) {
    if (static_cast<int>(sigma.size()) != n)
        throw validation_error("permutation: wrong length");
    std::vector<int> inv(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        int s = sigma[i - 1];
        if (s < 1 || s > n || inv[s])
            throw validation_error("permutation: not a bijection on 1.." + std::to_string(n));
        inv[s] = i;
    }
    return inv;
}

} // namespace

LevelTree apply_permutation(const std::vector<int> &sigma, const LevelTree &t) {
    inverse_permutation(sigma, t.n); // validation only
    std::vector<RawVertex> raw;
    raw.reserve(t.vertices.size());
    for (const TreeVertex &v : t.vertices) {
        std::vector<int> block;
        for (int m : v.block)
            block.push_back(sigma[m - 1]);
        std::sort(block.begin(), block.end());
        raw.push_back({std::move(block), v.level, v.parent});
    }
    return assemble_tree(t.n, raw);
}

RootedTree apply_permutation(const std::vector<int> &sigma, const RootedTree &t) {
    inverse_permutation(sigma, t.n);
    struct Renamed {
        std::vector<int> block;
        int parent;
    };
    std::vector<Renamed> raw;
    for (const RootedTreeVertex &v : t.vertices) {
        std::vector<int> block;
        for (int m : v.block)
            block.push_back(sigma[m - 1]);
        std::sort(block.begin(), block.end());
        raw.push_back({std::move(block), v.parent});
    }
    std::vector<int> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(-static_cast<int>(raw[a].block.size()), raw[a].block) <
               std::pair(-static_cast<int>(raw[b].block.size()), raw[b].block);
    });
    std::vector<int> where(raw.size());
    for (size_t k = 0; k < order.size(); ++k)
        where[order[k]] = static_cast<int>(k);

    RootedTree out;
    out.n = t.n;
    out.vertices.resize(raw.size());
    std::vector<int> nchildren(raw.size(), 0);
    for (size_t k = 0; k < order.size(); ++k) {
        Renamed &rv = raw[order[k]];
        RootedTreeVertex v;
        v.block = rv.block;
        v.parent = rv.parent < 0 ? -1 : where[rv.parent];
        v.id = block_id(v.block, t.n);
        out.vertices[k] = std::move(v);
    }
    for (const RootedTreeVertex &v : out.vertices)
        if (v.parent >= 0)
            ++nchildren[v.parent];
    out.mark_vertex.assign(t.n, -1);
    for (size_t k = 0; k < out.vertices.size(); ++k)
        if (nchildren[k] == 0)
            for (int m : out.vertices[k].block)
                out.mark_vertex[m - 1] = static_cast<int>(k);
    return out;
}

RootedTree unlevel(const LevelTree &t) {
    std::vector<int> order(t.vertices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const TreeVertex &va = t.vertices[a], &vb = t.vertices[b];
        return std::pair(-static_cast<int>(va.block.size()), va.block) <
               std::pair(-static_cast<int>(vb.block.size()), vb.block);
    });
    std::vector<int> where(t.vertices.size());
    for (size_t k = 0; k < order.size(); ++k)
        where[order[k]] = static_cast<int>(k);

    RootedTree out;
    out.n = t.n;
    out.vertices.resize(t.vertices.size());
    for (size_t k = 0; k < order.size(); ++k) {
        const TreeVertex &src = t.vertices[order[k]];
        RootedTreeVertex v;
        v.block = src.block;
        v.parent = src.parent < 0 ? -1 : where[src.parent];
        v.id = src.id;
        out.vertices[k] = std::move(v);
    }
    out.mark_vertex.resize(t.n);
    for (int m = 1; m <= t.n; ++m)
        out.mark_vertex[m - 1] = where[t.mark_vertex[m - 1]];
    return out;
}

std::vector<LevelTree> enumerate_level_structures(const RootedTree &t) {
    validate_rooted_tree(t);
    size_t count = t.vertices.size();
    std::vector<char> has_child(count, 0);
    for (const RootedTreeVertex &v : t.vertices)
        if (v.parent >= 0)
            has_child[v.parent] = 1;
    std::vector<int> internal;
    for (size_t k = 1; k < count; ++k)
        if (has_child[k])
            internal.push_back(static_cast<int>(k));

    std::vector<LevelTree> out;
    std::vector<int> level_of(count, -1);
    level_of[0] = 0;

    auto emit = [&](int final_level) {
        std::vector<RawVertex> raw;
        for (size_t k = 0; k < count; ++k) {
            int lv = has_child[k] ? level_of[k] : final_level;
            if (k == 0)
                lv = 0;
            raw.push_back({t.vertices[k].block, lv, t.vertices[k].parent});
        }
        out.push_back(assemble_tree(t.n, raw));
    };

    if (internal.empty()) {
        emit(count == 1 ? 0 : 1);
        return out;
    }

    int d = static_cast<int>(internal.size());
    auto step = [&](auto &&self, int placed, int next_level) -> void {
        if (placed == d) {
            emit(next_level);
            return;
        }
        std::vector<int> avail;
        for (int v : internal)
            if (level_of[v] < 0) {
                int p = t.vertices[v].parent;
                if (p == 0 || level_of[p] >= 0)
                    avail.push_back(v);
            }
        int m = static_cast<int>(avail.size());
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            int taken = 0;
            for (int b = 0; b < m; ++b)
                if (mask & (1u << b)) {
                    level_of[avail[b]] = next_level;
                    ++taken;
                }
            self(self, placed + taken, next_level + 1);
            for (int b = 0; b < m; ++b)
                if (mask & (1u << b))
                    level_of[avail[b]] = -1;
        }
    };
    step(step, 0, 1);
    return out;
}

} // namespace ms
