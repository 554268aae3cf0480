#include "multiscale/charts.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "multiscale/errors.hpp"

namespace ms {

int num_pairs(int n) {
    return n * (n - 1) / 2;
}

int pair_index(int n, int i, int j) {
    if (i < 1 || j <= i || j > n)
        throw validation_error("pair index: need 1 <= i < j <= n");
    // pairs in lexicographic order: (1,2), (1,3), ..., (n-1,n)
    return (i - 1) * n - i * (i - 1) / 2 + (j - i) - 1;
}

bool ChartPoint::operator==(const ChartPoint &o) const {
    return tree == o.tree && indices == o.indices && z == o.z && t == o.t;
}

Rat z_value(const ChartPoint &p, int i, int j) {
    if (i == j)
        return 0;
    if (i < j)
        return p.z[pair_index(p.tree.n, i, j)];
    Rat v = -p.z[pair_index(p.tree.n, j, i)];
    return v;
}

std::vector<std::pair<int, int>> default_indices(const LevelTree &t) {
    int l = t.levels();
    std::vector<std::pair<int, int>> out(l, {0, 0});
    for (int i = 1; i <= t.n && l; ++i)
        for (int j = i + 1; j <= t.n; ++j) {
            int m = meet_vertex(t, i, j).level;
            if (m < l && out[m] == std::pair(0, 0))
                out[m] = {i, j};
        }
    return out;
}

ChartPoint from_configuration(const std::vector<Rat> &zs) {
    int n = static_cast<int>(zs.size());
    if (n < 1)
        throw validation_error("configuration: need at least one point");
    ChartPoint p;
    p.tree = chain_to_tree(chain_from_elements(n, {}));
    p.z.resize(num_pairs(n));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            p.z[pair_index(n, i, j)] = zs[j - 1] - zs[i - 1];
    return p;
}

namespace {

// Product t_{m+1} * ... * t_{m2} (1-based levels), empty when m2 <= m.
Rat t_run(const ChartPoint &p, int m, int m2) {
    Rat f(1);
    for (int x = m + 1; x <= m2; ++x)
        f = f * p.t[x - 1];
    return f;
}

} // namespace

void validate_point(const ChartPoint &p) {
    validate_tree(p.tree);
    int n = p.tree.n;
    int l = p.tree.levels();
    if (static_cast<int>(p.indices.size()) != l)
        throw validation_error("point: expected " + std::to_string(l) + " index pairs, got " +
                               std::to_string(p.indices.size()));
    if (static_cast<int>(p.t.size()) != l)
        throw validation_error("point: expected " + std::to_string(l) + " scale ratios, got " +
                               std::to_string(p.t.size()));
    if (static_cast<int>(p.z.size()) != num_pairs(n))
        throw validation_error("point: expected " + std::to_string(num_pairs(n)) +
                               " z coordinates, got " + std::to_string(p.z.size()));

    for (int m = 0; m < l; ++m) {
        auto [i, j] = p.indices[m];
        if (i < 1 || i > n || j < 1 || j > n || i == j)
            throw validation_error("point: index pair at level " + std::to_string(m) +
                                   " is not a pair of distinct marks");
        int mv = meet_vertex(p.tree, i, j).level;
        if (mv != m)
            throw validation_error("point: index pair at level " + std::to_string(m) +
                                   " meets at level " + std::to_string(mv));
        Rat v = z_value(p, i, j);
        if (v != 1)
            throw validation_error("point: z is not 1 at the index pair of level " +
                                   std::to_string(m));
    }

    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (p.tree.mark_vertex[i - 1] != p.tree.mark_vertex[j - 1] &&
                z_value(p, i, j) == 0)
                throw validation_error("point: z vanishes at (" + std::to_string(i) + "," +
                                       std::to_string(j) + ") across distinct terminals");

    // On every triple, the two pairs meeting lowest share a mark i and a
    // vertex v, and the third pair (j,k) meets at level m2 >= m. Measured at
    // v's scale the third pair contributes through the ratios in between:
    //   z_ik = z_ij + z_jk * t_{m+1} ... t_{m2}.
    // With m2 = m this is the plain cocycle at v; when a ratio in the run
    // vanishes the deeper offset is invisible and z_ik = z_ij.
    std::vector<int> meet(num_pairs(n));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            meet[pair_index(n, i, j)] = meet_vertex(p.tree, i, j).level;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c) {
                int mab = meet[pair_index(n, a, b)];
                int mac = meet[pair_index(n, a, c)];
                int mbc = meet[pair_index(n, b, c)];
                int mmin = std::min({mab, mac, mbc});
                if ((mab > mmin) + (mac > mmin) + (mbc > mmin) > 1)
                    throw defect_error("point: meets on a triple are not ultrametric");
                // (j,k) is the pair meeting strictly above the other two
                int i = a, j = b, k = c, m = mmin, m2 = mbc;
                if (mab > mmin) {
                    i = c, j = a, k = b, m2 = mab;
                } else if (mac > mmin) {
                    i = b, j = a, k = c, m2 = mac;
                }
                Rat want = z_value(p, i, j) + z_value(p, j, k) * t_run(p, m, m2);
                if (z_value(p, i, k) != want)
                    throw validation_error("point: z on (" + std::to_string(a) + "," +
                                           std::to_string(b) + "," + std::to_string(c) +
                                           ") breaks the scaled additive relation at vertex " +
                                           p.tree.vertices[meet_vertex(p.tree, i, j).vertex].id);
            }
}

ChartPoint change_indices(const ChartPoint &p, const std::vector<std::pair<int, int>> &new_pairs) {
    int n = p.tree.n;
    int l = p.tree.levels();
    if (static_cast<int>(new_pairs.size()) != l)
        throw validation_error("change: expected " + std::to_string(l) + " index pairs");

    std::vector<Rat> factor(l, Rat(1));
    for (int m = 0; m < l; ++m) {
        auto [i, j] = new_pairs[m];
        if (i < 1 || i > n || j < 1 || j > n || i == j)
            throw validation_error("change: bad pair at level " + std::to_string(m));
        if (meet_vertex(p.tree, i, j).level != m)
            throw validation_error("change: pair at level " + std::to_string(m) +
                                   " does not meet there");
        factor[m] = z_value(p, i, j);
        if (factor[m] == 0)
            throw validation_error("change: z vanishes at the new pair of level " +
                                   std::to_string(m));
    }

    ChartPoint q = p;
    q.indices = new_pairs;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            int m = meet_vertex(p.tree, i, j).level;
            if (m < l && factor[m] != 1)
                q.z[pair_index(n, i, j)] = p.z[pair_index(n, i, j)] / factor[m];
        }
    for (int m = 0; m < l; ++m) {
        if (factor[m] == 1)
            continue;
        if (m >= 1)
            q.t[m - 1] = q.t[m - 1] * factor[m];
        q.t[m] = q.t[m] / factor[m];
    }
    return q;
}

ChartPoint transition_levels(const ChartPoint &p, const std::vector<int> &levels) {
    int n = p.tree.n;
    int l = p.tree.levels();
    std::set<int> drop(levels.begin(), levels.end());
    if (drop.size() != levels.size())
        throw validation_error("transition: repeated level");
    for (int s : drop) {
        if (s < 1 || s > l)
            throw validation_error("transition: level " + std::to_string(s) + " outside 1.." +
                                   std::to_string(l));
        if (p.t[s - 1] == 0)
            throw validation_error("transition: t vanishes at level " + std::to_string(s) +
                                   ", the charts do not overlap there");
    }
    if (drop.empty())
        return p;

    auto alpha = [&](int x) {
        int c = 0;
        for (int s : drop)
            if (s <= x)
                ++c;
        return x - c;
    };
    int nl = l - static_cast<int>(drop.size());

    ChartPoint q;
    q.tree = contract_levels(p.tree, levels);

    // the surviving scale of a merged band is the deepest one
    q.indices.assign(nl, {0, 0});
    for (int x = 0; x < l; ++x) {
        int m = alpha(x);
        if (m < nl)
            q.indices[m] = p.indices[x];
    }

    q.z.resize(num_pairs(n));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            int m = meet_vertex(p.tree, i, j).level;
            Rat v = p.z[pair_index(n, i, j)];
            for (int x = m + 1; x <= l && drop.count(x); ++x)
                v = v / p.t[x - 1];
            q.z[pair_index(n, i, j)] = v;
        }

    q.t.assign(nl, Rat(1));
    for (int x = 1; x <= l; ++x) {
        int j = alpha(x);
        // an initial run of dropped levels is absorbed by the z's instead
        if (j >= 1)
            q.t[j - 1] = q.t[j - 1] * p.t[x - 1];
    }
    return q;
}

ChartPoint transition(const ChartPoint &p, const LevelTree &target) {
    validate_tree(target);
    if (target.n != p.tree.n)
        throw validation_error("transition: target tree has different n");
    PartitionChain src = tree_to_chain(p.tree);
    PartitionChain dst = tree_to_chain(target);
    std::vector<int> levels;
    size_t at = 0;
    for (int k = 0; k < src.length(); ++k) {
        if (at < dst.elements.size() && dst.elements[at] == src.elements[k])
            ++at;
        else
            levels.push_back(k + 1);
    }
    if (at != dst.elements.size())
        throw validation_error("transition: target is not a contraction of the point's tree");
    return transition_levels(p, levels);
}

ExtendedValue period(const ChartPoint &p, int i, int j) {
    int n = p.tree.n;
    if (i < 1 || i > n || j < 1 || j > n)
        throw validation_error("period: mark out of range");
    if (i == j)
        return ExtendedValue::finite(0);
    int l = p.tree.levels();
    int m = meet_vertex(p.tree, i, j).level;
    Rat v = z_value(p, i, j);
    if (m == l)
        return ExtendedValue::finite(v);
    Rat prod(1);
    for (int x = m + 1; x <= l; ++x)
        prod = prod * p.t[x - 1];
    if (prod == 0) {
        if (v == 0)
            throw defect_error("period: z and the scale both vanish");
        return ExtendedValue::infinity();
    }
    Rat out = v / prod;
    return ExtendedValue::finite(out);
}

PartitionChain stratum_of(const ChartPoint &p) {
    PartitionChain ch = tree_to_chain(p.tree);
    std::vector<Partition> kept;
    for (int k = 1; k <= ch.length(); ++k)
        if (p.t[k - 1] == 0)
            kept.push_back(ch.elements[k - 1]);
    return chain_from_elements(p.tree.n, kept);
}

ChartPoint g_act(const std::vector<Rat> &a, const ChartPoint &p) {
    int n = p.tree.n;
    if (static_cast<int>(a.size()) != n)
        throw validation_error("translate: expected " + std::to_string(n) + " values");
    ChartPoint q = p;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (p.tree.mark_vertex[i - 1] == p.tree.mark_vertex[j - 1]) {
                Rat v = q.z[pair_index(n, i, j)] + a[j - 1] - a[i - 1];
                q.z[pair_index(n, i, j)] = v;
            }
    return q;
}

ChartPoint s_act(const std::vector<int> &sigma, const ChartPoint &p) {
    int n = p.tree.n;
    if (static_cast<int>(sigma.size()) != n)
        throw validation_error("permutation: wrong length");
    std::vector<int> inv(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        int s = sigma[i - 1];
        if (s < 1 || s > n || inv[s])
            throw validation_error("permutation: not a bijection on 1.." + std::to_string(n));
        inv[s] = i;
    }
    ChartPoint q;
    q.tree = apply_permutation(sigma, p.tree);
    q.t = p.t;
    for (auto [i, j] : p.indices)
        q.indices.push_back({sigma[i - 1], sigma[j - 1]});
    q.z.resize(num_pairs(n));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            q.z[pair_index(n, i, j)] = z_value(p, inv[i], inv[j]);
    return q;
}

Partition collision_partition(const ChartPoint &p) {
    int n = p.tree.n;
    std::vector<int> owner(n + 1);
    for (int i = 1; i <= n; ++i)
        owner[i] = i;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            ExtendedValue v = period(p, i, j);
            if (!v.is_infinity() && v.value() == 0) {
                int a = owner[i], b = owner[j];
                if (a != b)
                    for (int m = 1; m <= n; ++m)
                        if (owner[m] == a)
                            owner[m] = b;
            }
        }
    std::map<int, std::vector<int>> blocks;
    for (int i = 1; i <= n; ++i)
        blocks[owner[i]].push_back(i);
    std::vector<std::vector<int>> bl;
    for (auto &[rep, b] : blocks)
        bl.push_back(b);
    return partition_from_blocks(n, bl);
}

ChartPoint kappa(const Partition &rho, const ChartPoint &p) {
    int n = p.tree.n;
    if (rho.n != n)
        throw validation_error("collapse: partition is on a different mark set");
    for (const auto &b : rho.blocks)
        for (size_t x = 0; x < b.size(); ++x)
            for (size_t y = x + 1; y < b.size(); ++y) {
                ExtendedValue v = period(p, b[x], b[y]);
                if (v.is_infinity() || v.value() != 0)
                    throw validation_error("collapse: period at (" + std::to_string(b[x]) + "," +
                                           std::to_string(b[y]) + ") is not zero");
            }

    int r = static_cast<int>(rho.blocks.size());
    std::vector<int> mins(r);
    for (int a = 0; a < r; ++a)
        mins[a] = rho.blocks[a][0];
    std::vector<int> blk(n + 1, 0); // mark -> 1-based block index
    for (int a = 0; a < r; ++a)
        for (int m : rho.blocks[a])
            blk[m] = a + 1;

    PartitionChain ch = tree_to_chain(p.tree);
    std::vector<Partition> induced;
    for (const Partition &pi : ch.elements) {
        std::vector<int> owner(r + 1);
        for (int a = 1; a <= r; ++a)
            owner[a] = a;
        for (int a = 1; a <= r; ++a)
            for (int b = a + 1; b <= r; ++b)
                if (same_block(pi, mins[a - 1], mins[b - 1])) {
                    int x = owner[a], y = owner[b];
                    if (x != y)
                        for (int c = 1; c <= r; ++c)
                            if (owner[c] == x)
                                owner[c] = y;
                }
        std::map<int, std::vector<int>> blocks;
        for (int a = 1; a <= r; ++a)
            blocks[owner[a]].push_back(a);
        std::vector<std::vector<int>> bl;
        for (auto &[rep, b] : blocks)
            bl.push_back(b);
        induced.push_back(partition_from_blocks(r, bl));
    }

    ChartPoint q;
    q.tree = chain_to_tree(chain_from_elements(r, induced));
    q.t = p.t;
    for (auto [i, j] : p.indices)
        q.indices.push_back({blk[i], blk[j]});
    q.z.resize(num_pairs(r));
    for (int a = 1; a <= r; ++a)
        for (int b = a + 1; b <= r; ++b)
            q.z[pair_index(r, a, b)] = z_value(p, mins[a - 1], mins[b - 1]);
    return q;
}

ChartPoint lambda_attach(const Partition &rho, const ChartPoint &q) {
    int r = q.tree.n;
    if (static_cast<int>(rho.blocks.size()) != r)
        throw validation_error("attach: point has " + std::to_string(r) + " marks but the partition has " +
                               std::to_string(rho.blocks.size()) + " blocks");
    int n = rho.n;
    std::vector<int> blk(n + 1, 0);
    for (size_t a = 0; a < rho.blocks.size(); ++a)
        for (int m : rho.blocks[a])
            blk[m] = static_cast<int>(a) + 1;

    PartitionChain ch = tree_to_chain(q.tree);
    std::vector<Partition> blown;
    for (const Partition &pi : ch.elements) {
        std::vector<std::vector<int>> bl;
        for (const auto &piblock : pi.blocks) {
            std::vector<int> big;
            for (int a : piblock)
                big.insert(big.end(), rho.blocks[a - 1].begin(), rho.blocks[a - 1].end());
            std::sort(big.begin(), big.end());
            bl.push_back(big);
        }
        blown.push_back(partition_from_blocks(n, bl));
    }

    ChartPoint p;
    p.tree = chain_to_tree(chain_from_elements(n, blown));
    p.t = q.t;
    for (auto [a, b] : q.indices)
        p.indices.push_back({rho.blocks[a - 1][0], rho.blocks[b - 1][0]});
    p.z.resize(num_pairs(n));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            p.z[pair_index(n, i, j)] = blk[i] == blk[j] ? Rat(0) : z_value(q, blk[i], blk[j]);
    return p;
}

ScaledCurve xi(const ChartPoint &p) {
    LevelTree st = chain_to_tree(stratum_of(p));
    ScaledCurve c;
    c.tree = unlevel(st);
    for (int i = 1; i <= p.tree.n; ++i)
        for (int j = i + 1; j <= p.tree.n; ++j)
            if (st.mark_vertex[i - 1] == st.mark_vertex[j - 1])
                c.periods[{i, j}] = period(p, i, j).value();
    return c;
}

} // namespace ms
