#include "multiscale/partitions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ms {

Partition partition_from_blocks(int n, std::vector<std::vector<int>> blocks) {
    if (n < 1)
        throw validation_error("partition: n must be positive");
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    int count = 0;
    for (auto &b : blocks) {
        if (b.empty())
            throw validation_error("partition: empty block");
        for (int x : b) {
            if (x < 1 || x > n)
                throw validation_error("partition: element " + std::to_string(x) +
                                       " outside 1.." + std::to_string(n));
            if (seen[x])
                throw validation_error("partition: element " + std::to_string(x) + " repeated");
            seen[x] = 1;
            ++count;
        }
        std::sort(b.begin(), b.end());
    }
    if (count != n)
        throw validation_error("partition: blocks do not cover 1.." + std::to_string(n));
    std::sort(blocks.begin(), blocks.end(),
              [](const std::vector<int> &a, const std::vector<int> &b) { return a[0] < b[0]; });
    return Partition{n, std::move(blocks)};
}

Partition bottom_partition(int n) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 1);
    return Partition{n, {all}};
}

Partition top_partition(int n) {
    std::vector<std::vector<int>> blocks;
    blocks.reserve(n);
    for (int i = 1; i <= n; ++i)
        blocks.push_back({i});
    return Partition{n, std::move(blocks)};
}

bool is_bottom(const Partition &p) { return p.blocks.size() == 1; }
bool is_top(const Partition &p) { return static_cast<int>(p.blocks.size()) == p.n; }

bool partition_less(const Partition &a, const Partition &b) {
    if (a.blocks.size() != b.blocks.size())
        return a.blocks.size() < b.blocks.size();
    return a.blocks < b.blocks;
}

static void require_same_n(const Partition &a, const Partition &b, const char *op) {
    if (a.n != b.n)
        throw validation_error(std::string(op) + ": mismatched ground sets (" +
                               std::to_string(a.n) + " vs " + std::to_string(b.n) + ")");
}

int block_index_of(const Partition &p, int i) {
    for (size_t k = 0; k < p.blocks.size(); ++k)
        if (std::binary_search(p.blocks[k].begin(), p.blocks[k].end(), i))
            return static_cast<int>(k) + 1;
    throw validation_error("mark " + std::to_string(i) + " outside 1.." + std::to_string(p.n));
}

bool same_block(const Partition &p, int i, int j) {
    return block_index_of(p, i) == block_index_of(p, j);
}

bool leq(const Partition &eta, const Partition &pi) {
    require_same_n(eta, pi, "leq");
    std::vector<int> owner(static_cast<size_t>(eta.n) + 1, 0);
    for (size_t k = 0; k < eta.blocks.size(); ++k)
        for (int x : eta.blocks[k])
            owner[x] = static_cast<int>(k);
    for (const auto &b : pi.blocks)
        for (int x : b)
            if (owner[x] != owner[b[0]])
                return false;
    return true;
}

Partition meet(const Partition &a, const Partition &b) {
    require_same_n(a, b, "meet");
    std::vector<int> parent(static_cast<size_t>(a.n) + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    for (const Partition *p : {&a, &b})
        for (const auto &blk : p->blocks)
            for (size_t k = 1; k < blk.size(); ++k)
                unite(blk[0], blk[k]);
    std::map<int, std::vector<int>> comps;
    for (int x = 1; x <= a.n; ++x)
        comps[find(x)].push_back(x);
    std::vector<std::vector<int>> blocks;
    for (auto &[root, blk] : comps)
        blocks.push_back(std::move(blk));
    return partition_from_blocks(a.n, std::move(blocks));
}

Partition join(const Partition &a, const Partition &b) {
    require_same_n(a, b, "join");
    std::map<std::pair<int, int>, std::vector<int>> groups;
    for (int x = 1; x <= a.n; ++x)
        groups[{block_index_of(a, x), block_index_of(b, x)}].push_back(x);
    std::vector<std::vector<int>> blocks;
    for (auto &[key, blk] : groups)
        blocks.push_back(std::move(blk));
    return partition_from_blocks(a.n, std::move(blocks));
}

int dim_partition(const Partition &p) { return static_cast<int>(p.blocks.size()) - 2; }
int codim_partition(const Partition &p) { return p.n + 1 - static_cast<int>(p.blocks.size()); }

static std::vector<Partition> all_partitions(int n) {
    std::vector<Partition> out;
    std::vector<int> rgs(n, 0); // restricted growth string
    while (true) {
        int nblocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<int>> blocks(nblocks);
        for (int i = 0; i < n; ++i)
            blocks[rgs[i]].push_back(i + 1);
        out.push_back(Partition{n, std::move(blocks)});
        // next restricted growth string
        int i = n - 1;
        for (; i > 0; --i) {
            int cap = *std::max_element(rgs.begin(), rgs.begin() + i) + 1;
            if (rgs[i] < cap) {
                ++rgs[i];
                std::fill(rgs.begin() + i + 1, rgs.end(), 0);
                break;
            }
            rgs[i] = 0;
        }
        if (i == 0)
            break;
    }
    std::sort(out.begin(), out.end(), partition_less);
    return out;
}

std::vector<Partition> enumerate_partitions(int n) {
    if (n < 1)
        throw validation_error("enumerate_partitions: n must be positive");
    check_size_guard(n, 9, "enumerate_partitions");
    return all_partitions(n);
}

NSet n_set(const Partition &rho, const Partition &pi, bool augment_top) {
    require_same_n(rho, pi, "n_set");
    if (!leq(rho, pi))
        throw validation_error("n_set: " + partition_to_string(pi) + " does not refine " +
                               partition_to_string(rho));
    NSet result;
    for (const auto &big : rho.blocks) {
        int base = big[0];
        for (const auto &b : pi.blocks) {
            if (b[0] == base)
                continue;
            if (std::binary_search(big.begin(), big.end(), b[0]))
                result.pairs.emplace_back(base, b[0]);
        }
    }
    std::sort(result.pairs.begin(), result.pairs.end());
    result.t_marker = augment_top && is_top(pi);
    return result;
}

PartitionChain chain_from_elements(int n, std::vector<Partition> elements) {
    for (const auto &e : elements) {
        if (e.n != n)
            throw validation_error("chain: element over wrong ground set");
        if (is_bottom(e))
            throw validation_error("chain: the one-block partition cannot appear");
    }
    for (size_t k = 1; k < elements.size(); ++k) {
        if (!leq(elements[k - 1], elements[k]) || elements[k - 1] == elements[k])
            throw validation_error("chain: elements not strictly increasing at position " +
                                   std::to_string(k));
    }
    return PartitionChain{n, std::move(elements)};
}

std::vector<PartitionChain> enumerate_chains(int n, std::optional<int> max_dim) {
    if (n < 1)
        throw validation_error("enumerate_chains: n must be positive");
    check_size_guard(n, 7, "enumerate_chains");
    std::vector<Partition> pool;
    for (auto &p : all_partitions(n))
        if (!is_bottom(p) && (!max_dim || dim_partition(p) <= *max_dim))
            pool.push_back(std::move(p));
    std::vector<PartitionChain> out;
    std::vector<Partition> cur;
    auto dfs = [&](auto &&self, size_t from) -> void {
        out.push_back(PartitionChain{n, cur});
        for (size_t k = from; k < pool.size(); ++k) {
            if (cur.empty() || (leq(cur.back(), pool[k]) && cur.back() != pool[k])) {
                cur.push_back(pool[k]);
                self(self, k + 1);
                cur.pop_back();
            }
        }
    };
    dfs(dfs, 0);
    std::sort(out.begin(), out.end(), [](const PartitionChain &a, const PartitionChain &b) {
        if (a.elements.size() != b.elements.size())
            return a.elements.size() < b.elements.size();
        return std::lexicographical_compare(a.elements.begin(), a.elements.end(),
                                            b.elements.begin(), b.elements.end(), partition_less);
    });
    return out;
}

std::string partition_to_string(const Partition &p) {
    std::string s;
    for (size_t k = 0; k < p.blocks.size(); ++k) {
        if (k)
            s += '|';
        for (size_t i = 0; i < p.blocks[k].size(); ++i) {
            if (i && p.n > 9)
                s += ',';
            s += std::to_string(p.blocks[k][i]);
        }
    }
    return s;
}

} // namespace ms
