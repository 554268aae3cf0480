#include "multiscale/chow.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <optional>
#include <set>

#include "multiscale/errors.hpp"

namespace ms {

int monomial_degree(const Monomial &m) {
    int d = 0;
    for (int e : m)
        d += e;
    return d;
}

// degrevlex with variable 0 largest: lower degree first, ties broken by the
// sign of the last nonzero exponent difference
bool monomial_less(const Monomial &a, const Monomial &b) {
    int da = monomial_degree(a), db = monomial_degree(b);
    if (da != db)
        return da < db;
    for (size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i])
            return a[i] > b[i];
    return false;
}

ChowElement chow_zero() { return {}; }

ChowElement chow_one(int ngens) {
    ChowElement e;
    e[Monomial(ngens, 0)] = 1;
    return e;
}

ChowElement chow_var(int ngens, int idx) {
    if (idx < 0 || idx >= ngens)
        throw validation_error("chow: generator index out of range");
    Monomial m(ngens, 0);
    m[idx] = 1;
    ChowElement e;
    e[m] = 1;
    return e;
}

ChowElement chow_add(const ChowElement &a, const ChowElement &b) {
    ChowElement e = a;
    for (const auto &[m, c] : b) {
        Rat q = e[m] + c;
        if (q == 0)
            e.erase(m);
        else
            e[m] = q;
    }
    return e;
}

ChowElement chow_sub(const ChowElement &a, const ChowElement &b) {
    ChowElement e = a;
    for (const auto &[m, c] : b) {
        Rat q = e[m] - c;
        if (q == 0)
            e.erase(m);
        else
            e[m] = q;
    }
    return e;
}

ChowElement chow_mul(const ChowElement &a, const ChowElement &b) {
    ChowElement e;
    for (const auto &[ma, ca] : a)
        for (const auto &[mb, cb] : b) {
            Monomial m(ma.size());
            for (size_t i = 0; i < m.size(); ++i)
                m[i] = ma[i] + mb[i];
            Rat q = e[m] + ca * cb;
            if (q == 0)
                e.erase(m);
            else
                e[m] = q;
        }
    return e;
}

ChowElement chow_scale(const Rat &c, const ChowElement &a) {
    ChowElement e;
    if (c == 0)
        return e;
    for (const auto &[m, q] : a)
        e[m] = c * q;
    return e;
}

bool chow_is_zero(const ChowElement &a) { return a.empty(); }

FlatDictionary flats(int n) {
    check_size_guard(n, 7, "flats");
    FlatDictionary d;
    d.n = n;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            d.edges.push_back({i, j});
    d.flats = enumerate_partitions(n);
    return d;
}

int flat_rank(const Partition &rho) {
    return rho.n - static_cast<int>(rho.blocks.size());
}

int flat_corank(const Partition &rho) {
    return static_cast<int>(rho.blocks.size()) - 1;
}

Partition flat_closure(int n, const std::vector<std::pair<int, int>> &edge_set) {
    if (n < 1)
        throw validation_error("flat_closure: need at least one vertex");
    std::vector<int> parent(n + 1);
    for (int i = 0; i <= n; ++i)
        parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [i, j] : edge_set) {
        if (i < 1 || i > n || j < 1 || j > n || i == j)
            throw validation_error("flat_closure: bad edge");
        parent[find(i)] = find(j);
    }
    std::vector<std::vector<int>> blocks;
    std::vector<int> where(n + 1, -1);
    for (int i = 1; i <= n; ++i) {
        int r = find(i);
        if (where[r] < 0) {
            where[r] = static_cast<int>(blocks.size());
            blocks.push_back({});
        }
        blocks[where[r]].push_back(i);
    }
    return partition_from_blocks(n, blocks);
}

namespace {

std::vector<Partition> generator_list(int n) {
    std::vector<Partition> gens;
    for (Partition &p : enumerate_partitions(n))
        if (!is_bottom(p))
            gens.push_back(std::move(p));
    return gens;
}

} // namespace

ChowPresentation presentation(int n) {
    check_size_guard(n, 5, "presentation");
    ChowPresentation pr;
    pr.n = n;
    pr.generators = generator_list(n);
    int m = static_cast<int>(pr.generators.size());

    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            if (leq(pr.generators[a], pr.generators[b]) ||
                leq(pr.generators[b], pr.generators[a]))
                continue;
            Monomial mono(m, 0);
            mono[a] = mono[b] = 1;
            ChowElement r;
            r[mono] = 1;
            pr.relations.push_back(std::move(r));
        }

    for (int a = 0; a < m; ++a)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                if (same_block(pr.generators[a], i, j))
                    continue;
                pr.relations.push_back(
                    chow_mul(chow_var(m, a), y_generator(n, i, j)));
            }
    return pr;
}

ChowElement y_generator(int n, int i, int j) {
    if (i > j)
        std::swap(i, j);
    if (i < 1 || j > n || i == j)
        throw validation_error("y generator: marks must be distinct and in range");
    std::vector<Partition> gens = generator_list(n);
    int m = static_cast<int>(gens.size());
    ChowElement e;
    for (int a = 0; a < m; ++a)
        if (!same_block(gens[a], i, j))
            e = chow_add(e, chow_var(m, a));
    return e;
}

namespace {

struct GBData {
    int ngens = 0;
    std::vector<ChowElement> basis; // monic, tails reduced, sorted by lead
    // lead degree -> sorted var multiset of the lead -> basis index
    std::map<int, std::map<std::vector<int>, int>> leads;
    std::vector<long> hilb;
};

const Monomial &lead_monomial(const ChowElement &g) {
    return std::prev(g.end())->first;
}

std::vector<int> var_multiset(const Monomial &m) {
    std::vector<int> vars;
    for (size_t i = 0; i < m.size(); ++i)
        for (int x = 0; x < m[i]; ++x)
            vars.push_back(static_cast<int>(i));
    return vars;
}

// some basis element whose lead divides m, if any
std::optional<int> find_divisor(const GBData &gb, const Monomial &m) {
    std::vector<int> vars = var_multiset(m);
    int d = static_cast<int>(vars.size());
    for (const auto &[k, table] : gb.leads) {
        if (k > d)
            break;
        // size-k sub-multisets of vars, lexicographic, duplicates skipped
        std::vector<int> sub(k);
        auto rec = [&](auto &&self, int pos, int start) -> std::optional<int> {
            if (pos == k) {
                auto it = table.find(sub);
                if (it != table.end())
                    return it->second;
                return std::nullopt;
            }
            for (int x = start; x <= d - (k - pos); ++x) {
                if (x > start && vars[x] == vars[x - 1])
                    continue;
                sub[pos] = vars[x];
                if (auto hit = self(self, pos + 1, x + 1))
                    return hit;
            }
            return std::nullopt;
        };
        if (auto hit = rec(rec, 0, 0))
            return hit;
    }
    return std::nullopt;
}

ChowElement reduce_full(ChowElement f, const GBData &gb) {
    ChowElement rem;
    while (!f.empty()) {
        auto it = std::prev(f.end());
        Monomial m = it->first;
        auto hit = find_divisor(gb, m);
        if (!hit) {
            rem[m] = it->second;
            f.erase(it);
            continue;
        }
        const ChowElement &g = gb.basis[*hit];
        const Monomial &lg = lead_monomial(g);
        Rat c = it->second; // g is monic
        for (const auto &[mg, cg] : g) {
            Monomial shifted(m.size());
            for (size_t x = 0; x < m.size(); ++x)
                shifted[x] = m[x] - lg[x] + mg[x];
            Rat q = f[shifted] - c * cg;
            if (q == 0)
                f.erase(shifted);
            else
                f[shifted] = q;
        }
    }
    return rem;
}

void make_monic(ChowElement &g) {
    Rat lc = std::prev(g.end())->second;
    for (auto &[m, c] : g)
        c = c / lc;
}

GBData build_groebner(int n) {
    GBData gb;
    std::vector<Partition> gens = generator_list(n);
    gb.ngens = static_cast<int>(gens.size());

    // queue of s-pairs keyed by lcm degree; coprime leads and lcm degree
    // beyond n are dropped (degree n and above dies in the quotient, checked
    // against the staircase below)
    std::set<std::array<int, 3>> pairs;
    auto register_element = [&](ChowElement h) {
        make_monic(h);
        int idx = static_cast<int>(gb.basis.size());
        const Monomial lh = lead_monomial(h);
        int dh = monomial_degree(lh);
        for (int k = 0; k < idx; ++k) {
            const Monomial &lk = lead_monomial(gb.basis[k]);
            int shared = 0, lcm_deg = 0;
            for (size_t x = 0; x < lh.size(); ++x) {
                shared += std::min(lh[x], lk[x]);
                lcm_deg += std::max(lh[x], lk[x]);
            }
            if (shared == 0 || lcm_deg > n)
                continue;
            pairs.insert({lcm_deg, k, idx});
        }
        gb.basis.push_back(std::move(h));
        gb.leads[dh][var_multiset(lh)] = idx;
    };

    for (const ChowElement &r : presentation(n).relations) {
        ChowElement h = reduce_full(r, gb);
        if (!h.empty())
            register_element(std::move(h));
    }
    while (!pairs.empty()) {
        auto [d, i, j] = *pairs.begin();
        pairs.erase(pairs.begin());
        const ChowElement &f = gb.basis[i], &g = gb.basis[j];
        const Monomial &lf = lead_monomial(f), &lg = lead_monomial(g);
        Monomial lcm(lf.size());
        for (size_t x = 0; x < lf.size(); ++x)
            lcm[x] = std::max(lf[x], lg[x]);
        ChowElement s;
        for (const auto &[m, c] : f) {
            Monomial t(lcm);
            for (size_t x = 0; x < t.size(); ++x)
                t[x] += m[x] - lf[x];
            s[t] = c;
        }
        for (const auto &[m, c] : g) {
            Monomial t(lcm);
            for (size_t x = 0; x < t.size(); ++x)
                t[x] += m[x] - lg[x];
            Rat q = s[t] - c;
            if (q == 0)
                s.erase(t);
            else
                s[t] = q;
        }
        ChowElement h = reduce_full(std::move(s), gb);
        if (!h.empty())
            register_element(std::move(h));
    }

    // leads are pairwise indivisible already; reduce the tails
    for (ChowElement &g : gb.basis) {
        auto it = std::prev(g.end());
        ChowElement tail(g.begin(), it);
        ChowElement head;
        head[it->first] = it->second;
        g = chow_add(head, reduce_full(std::move(tail), gb));
    }
    std::sort(gb.basis.begin(), gb.basis.end(),
              [](const ChowElement &a, const ChowElement &b) {
                  return monomial_less(lead_monomial(a), lead_monomial(b));
              });
    gb.leads.clear();
    for (size_t k = 0; k < gb.basis.size(); ++k) {
        const Monomial &l = lead_monomial(gb.basis[k]);
        gb.leads[monomial_degree(l)][var_multiset(l)] = static_cast<int>(k);
    }

    // standard monomials degree by degree; the quotient must die at degree n
    std::set<Monomial> layer;
    layer.insert(Monomial(gb.ngens, 0));
    for (int d = 0; d <= n; ++d) {
        if (d == n) {
            if (!layer.empty())
                throw defect_error("groebner: standard monomials survive past the top degree");
            break;
        }
        gb.hilb.push_back(static_cast<long>(layer.size()));
        std::set<Monomial> next;
        for (const Monomial &m : layer)
            for (int v = 0; v < gb.ngens; ++v) {
                Monomial t = m;
                ++t[v];
                if (!find_divisor(gb, t))
                    next.insert(std::move(t));
            }
        layer = std::move(next);
    }
    if (gb.ngens == 0)
        gb.hilb.assign(1, 1); // no generators: the ring is just Q
    return gb;
}

std::mutex gb_mutex;
std::map<int, GBData> gb_cache;

const GBData &gb_for(int n) {
    check_size_guard(n, 5, "groebner");
    std::lock_guard<std::mutex> lock(gb_mutex);
    auto it = gb_cache.find(n);
    if (it == gb_cache.end())
        it = gb_cache.emplace(n, build_groebner(n)).first;
    return it->second;
}

} // namespace

const std::vector<ChowElement> &groebner_basis(int n) { return gb_for(n).basis; }

ChowElement normal_form(const ChowElement &e, int n) {
    const GBData &gb = gb_for(n);
    ChowElement keep;
    for (const auto &[m, c] : e) {
        if (static_cast<int>(m.size()) != gb.ngens)
            throw validation_error("normal_form: monomial over wrong generator count");
        if (c != 0 && monomial_degree(m) < n)
            keep[m] = c; // degree n and beyond is zero in the quotient
    }
    return reduce_full(std::move(keep), gb);
}

std::vector<long> hilbert(int n) { return gb_for(n).hilb; }

ChowElement stratum_class(const PartitionChain &chain) {
    std::vector<Partition> gens = generator_list(chain.n);
    int m = static_cast<int>(gens.size());
    Monomial mono(m, 0);
    for (const Partition &p : chain.elements) {
        auto it = std::lower_bound(gens.begin(), gens.end(), p, partition_less);
        ++mono[it - gens.begin()];
    }
    ChowElement e;
    e[std::move(mono)] = 1;
    return e;
}

} // namespace ms
