#include "multiscale/degeneration.hpp"

#include <algorithm>
#include <set>

#include "multiscale/errors.hpp"

namespace ms {

Laurent laurent_from_terms(std::vector<std::pair<int, Rat>> terms) {
    Laurent f;
    for (const auto &[e, c] : terms) {
        Rat q = f.terms[e] + c;
        if (q == 0)
            f.terms.erase(e);
        else
            f.terms[e] = q;
    }
    return f;
}

Laurent laurent_sub(const Laurent &a, const Laurent &b) {
    Laurent f = a;
    for (const auto &[e, c] : b.terms) {
        Rat q = f.terms[e] - c;
        if (q == 0)
            f.terms.erase(e);
        else
            f.terms[e] = q;
    }
    return f;
}

Laurent laurent_scale_exp(const Laurent &a, int k) {
    Laurent f;
    for (const auto &[e, c] : a.terms)
        f.terms.emplace(e + k, c);
    return f;
}

std::optional<int> laurent_val(const Laurent &a) {
    if (a.is_zero())
        return std::nullopt;
    return a.terms.begin()->first;
}

Rat laurent_lc(const Laurent &a) {
    if (a.is_zero())
        throw defect_error("laurent: leading coefficient of 0");
    return a.terms.begin()->second;
}

Rat laurent_coeff(const Laurent &a, int k) {
    auto it = a.terms.find(k);
    return it == a.terms.end() ? Rat(0) : it->second;
}

ExtendedValue laurent_limit_at_zero(const Laurent &a) {
    auto v = laurent_val(a);
    if (v && *v < 0)
        return ExtendedValue::infinity();
    return ExtendedValue::finite(laurent_coeff(a, 0));
}

namespace {

void check_family(const LaurentFamily &f) {
    if (f.n < 1)
        throw validation_error("family: need at least one point");
    if (static_cast<int>(f.z.size()) != f.n)
        throw validation_error("family: expected " + std::to_string(f.n) +
                               " polynomials, got " + std::to_string(f.z.size()));
}

// nullopt = +infinity
bool val_geq(const std::optional<int> &v, int bound) {
    return !v || *v >= bound;
}

} // namespace

std::vector<std::optional<int>> pair_valuations(const LaurentFamily &f) {
    check_family(f);
    int n = f.n;
    std::vector<std::optional<int>> v(num_pairs(n));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            v[pair_index(n, i, j)] = laurent_val(laurent_sub(f.z[j - 1], f.z[i - 1]));

    auto at = [&](int i, int j) { return v[pair_index(n, std::min(i, j), std::max(i, j))]; };
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                auto a = at(i, j), b = at(j, k), c = at(i, k);
                std::optional<int> lo = !a ? b : !b ? a : std::optional(std::min(*a, *b));
                if (lo && !val_geq(c, *lo))
                    throw defect_error("valuations are not non-archimedean");
            }
    return v;
}

LevelTree limit_tree(const LaurentFamily &f) {
    auto v = pair_valuations(f);
    int n = f.n;

    // one level per distinct negative valuation, deepest first
    std::set<int> negs;
    for (const auto &x : v)
        if (x && *x < 0)
            negs.insert(*x);
    std::vector<int> w(negs.begin(), negs.end());

    std::vector<Partition> elems;
    for (size_t k = 1; k <= w.size(); ++k) {
        int bound = k < w.size() ? w[k] : 0;
        std::vector<int> cls(n + 1, 0);
        std::vector<std::vector<int>> blocks;
        for (int i = 1; i <= n; ++i) {
            if (cls[i])
                continue;
            blocks.push_back({i});
            cls[i] = static_cast<int>(blocks.size());
            for (int j = i + 1; j <= n; ++j)
                if (!cls[j] && val_geq(v[pair_index(n, i, j)], bound)) {
                    blocks.back().push_back(j);
                    cls[j] = cls[i];
                }
        }
        elems.push_back(partition_from_blocks(n, blocks));
    }
    return chain_to_tree(chain_from_elements(n, elems));
}

ChartPoint limit_point(const LaurentFamily &f) {
    LevelTree tree = limit_tree(f);
    auto v = pair_valuations(f);
    int n = f.n;
    int l = tree.levels();

    ChartPoint p;
    p.tree = tree;
    p.indices = default_indices(tree);
    p.t.assign(l, Rat(0));
    p.z.resize(num_pairs(n));

    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            Laurent diff = laurent_sub(f.z[j - 1], f.z[i - 1]);
            int m = meet_vertex(tree, i, j).level;
            if (m == l) {
                p.z[pair_index(n, i, j)] = laurent_coeff(diff, 0);
                continue;
            }
            auto [im, jm] = p.indices[m];
            Laurent ref = laurent_sub(f.z[jm - 1], f.z[im - 1]);
            if (laurent_val(diff) != laurent_val(ref))
                throw defect_error("limit: valuation disagrees with the tree at (" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
            p.z[pair_index(n, i, j)] = laurent_lc(diff) / laurent_lc(ref);
        }

    validate_point(p);
    return p;
}

LaurentFamily rescale_family(const LaurentFamily &f, int k) {
    check_family(f);
    LaurentFamily g;
    g.n = f.n;
    for (const Laurent &z : f.z)
        g.z.push_back(laurent_scale_exp(z, k));
    return g;
}

} // namespace ms
