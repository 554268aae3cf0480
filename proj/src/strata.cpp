#include "multiscale/strata.hpp"

#include <algorithm>
#include <map>

#include "multiscale/errors.hpp"

namespace ms {

StratificationPoset build_stratification(int n) {
    check_size_guard(n, 7, "build_stratification");
    StratificationPoset poset;
    poset.n = n;
    for (PartitionChain &c : enumerate_chains(n)) {
        StratumRecord r;
        r.codim = c.length();
        r.dim = n - 1 - r.codim;
        r.chain = std::move(c);
        poset.records.push_back(std::move(r));
    }
    return poset;
}

bool closure_contains(const PartitionChain &a, const PartitionChain &b) {
    if (a.n != b.n)
        throw validation_error("closure_contains: chains over different ground sets");
    return std::includes(b.elements.begin(), b.elements.end(),
                         a.elements.begin(), a.elements.end(), partition_less);
}

bool divisors_intersect(const std::vector<Partition> &rhos) {
    for (size_t i = 0; i < rhos.size(); ++i)
        for (size_t j = i + 1; j < rhos.size(); ++j)
            if (!leq(rhos[i], rhos[j]) && !leq(rhos[j], rhos[i]))
                return false;
    return true;
}

std::vector<std::pair<int, std::vector<Partition>>> blowup_schedule(int n) {
    check_size_guard(n, 7, "blowup_schedule");
    std::vector<std::pair<int, std::vector<Partition>>> stages;
    for (int k = 0; k <= n - 2; ++k)
        stages.push_back({k, {}});
    for (Partition &p : enumerate_partitions(n)) {
        if (is_bottom(p))
            continue;
        stages[dim_partition(p)].second.push_back(std::move(p));
    }
    return stages;
}

CollisionPoset collision_poset(int n) {
    check_size_guard(n, 7, "collision_poset");
    CollisionPoset poset;
    poset.n = n;
    poset.strata = enumerate_partitions(n);

    std::map<std::vector<std::vector<int>>, int> where;
    for (size_t k = 0; k < poset.strata.size(); ++k)
        where[poset.strata[k].blocks] = static_cast<int>(k);

    // covering = merging exactly two blocks of the finer partition
    for (size_t k = 0; k < poset.strata.size(); ++k) {
        const Partition &fine = poset.strata[k];
        int nb = static_cast<int>(fine.blocks.size());
        for (int a = 0; a < nb; ++a)
            for (int b = a + 1; b < nb; ++b) {
                std::vector<std::vector<int>> blocks;
                for (int x = 0; x < nb; ++x)
                    if (x != a && x != b)
                        blocks.push_back(fine.blocks[x]);
                std::vector<int> merged = fine.blocks[a];
                merged.insert(merged.end(), fine.blocks[b].begin(), fine.blocks[b].end());
                std::sort(merged.begin(), merged.end());
                blocks.push_back(std::move(merged));
                std::sort(blocks.begin(), blocks.end(),
                          [](const auto &x, const auto &y) { return x[0] < y[0]; });
                poset.covers.push_back({where.at(blocks), static_cast<int>(k)});
            }
    }
    std::sort(poset.covers.begin(), poset.covers.end());
    return poset;
}

int collision_dim(const Partition &rho) {
    return static_cast<int>(rho.blocks.size()) - 1;
}

std::vector<std::vector<Partition>> wn_incident_families(int n) {
    check_size_guard(n, 7, "wn_incident_families");
    std::vector<Partition> centers;
    for (Partition &p : enumerate_partitions(n))
        if (!is_bottom(p))
            centers.push_back(std::move(p));
    int m = static_cast<int>(centers.size());

    // centers meeting at the bottom partition are disjoint in the
    // projectivized arrangement before any blowup happens
    std::vector<std::vector<char>> adj(m, std::vector<char>(m, 0));
    std::vector<std::vector<int>> meet_dim(m, std::vector<int>(m, -1));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Partition mu = meet(centers[i], centers[j]);
            if (is_bottom(mu))
                continue;
            adj[i][j] = adj[j][i] = 1;
            meet_dim[i][j] = meet_dim[j][i] = dim_partition(mu);
        }

    // stage k blows up the dimension-k centers; that separates every
    // still-incident incomparable pair whose intersection was just removed
    for (int k = 0; k <= n - 2; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (adj[i][j] && meet_dim[i][j] == k &&
                    !leq(centers[i], centers[j]) && !leq(centers[j], centers[i]))
                    adj[i][j] = adj[j][i] = 0;

    // families of divisors with nonempty common intersection = cliques
    std::vector<std::vector<Partition>> families;
    std::vector<int> current;
    auto grow = [&](auto &&self, int start) -> void {
        std::vector<Partition> fam;
        for (int x : current)
            fam.push_back(centers[x]);
        families.push_back(std::move(fam));
        for (int i = start; i < m; ++i) {
            bool ok = true;
            for (int x : current)
                if (!adj[x][i]) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            current.push_back(i);
            self(self, i + 1);
            current.pop_back();
        }
    };
    grow(grow, 0);
    std::stable_sort(families.begin(), families.end(),
                     [](const auto &x, const auto &y) { return x.size() < y.size(); });
    return families;
}

} // namespace ms
