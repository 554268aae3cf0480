#include "multiscale/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "multiscale/errors.hpp"

namespace ms {

namespace {

[[noreturn]] void fail(const std::string &path, const std::string &msg) {
    throw validation_error((path.empty() ? std::string("/") : path) + ": " + msg);
}

const ojson &need(const ojson &j, const char *key, const std::string &path) {
    if (!j.is_object())
        fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        fail(path, std::string("missing key \"") + key + "\"");
    return *it;
}

int need_int(const ojson &j, const std::string &path) {
    if (!j.is_number_integer())
        fail(path, "expected an integer");
    return j.get<int>();
}

std::string need_string(const ojson &j, const std::string &path) {
    if (!j.is_string())
        fail(path, "expected a string");
    return j.get<std::string>();
}

Rat need_rat(const ojson &j, const std::string &path) {
    if (!j.is_string())
        fail(path, "expected a rational \"p/q\" string");
    try {
        return rat_from_string(j.get<std::string>());
    } catch (const validation_error &e) {
        fail(path, e.what());
    }
}

const ojson &need_array(const ojson &j, const std::string &path) {
    if (!j.is_array())
        fail(path, "expected an array");
    return j;
}

std::string at(const std::string &path, const std::string &key) {
    return path + "/" + key;
}

std::string at(const std::string &path, size_t i) {
    return path + "/" + std::to_string(i);
}

std::vector<std::vector<int>> need_blocks(const ojson &j, const std::string &path) {
    std::vector<std::vector<int>> blocks;
    for (size_t b = 0; b < need_array(j, path).size(); ++b) {
        const ojson &jb = j[b];
        need_array(jb, at(path, b));
        std::vector<int> block;
        for (size_t x = 0; x < jb.size(); ++x)
            block.push_back(need_int(jb[x], at(at(path, b), x)));
        blocks.push_back(std::move(block));
    }
    return blocks;
}

} // namespace

ojson partition_to_json(const Partition &p) {
    ojson j = ojson::array();
    for (const auto &b : p.blocks)
        j.push_back(b);
    return j;
}

Partition partition_from_json(const ojson &j, const std::string &path) {
    auto blocks = need_blocks(j, path);
    int n = 0;
    for (const auto &b : blocks)
        n += static_cast<int>(b.size());
    try {
        return partition_from_blocks(n, std::move(blocks));
    } catch (const validation_error &e) {
        fail(path, e.what());
    }
}

ojson chain_to_json(const PartitionChain &c) {
    ojson j;
    j["n"] = c.n;
    ojson elems = ojson::array();
    for (const Partition &p : c.elements)
        elems.push_back(partition_to_json(p));
    j["chain"] = std::move(elems);
    return j;
}

PartitionChain chain_from_json(const ojson &j, const std::string &path) {
    int n = need_int(need(j, "n", path), at(path, "n"));
    const ojson &arr = need_array(need(j, "chain", path), at(path, "chain"));
    std::vector<Partition> elems;
    for (size_t k = 0; k < arr.size(); ++k)
        elems.push_back(partition_from_json(arr[k], at(at(path, "chain"), k)));
    try {
        return chain_from_elements(n, std::move(elems));
    } catch (const validation_error &e) {
        fail(path, e.what());
    }
}

namespace {

// Common tree scaffolding: opaque vertex labels, one parent per non-root
// label, blocks recovered by walking each mark to the root.
struct RawTree {
    int n = 0;
    std::vector<std::string> labels;            // input order
    std::map<std::string, int> index;           // label -> position
    std::vector<int> level;                     // -1 when absent
    std::vector<int> parent;                    // -1 for the root
    std::vector<std::vector<int>> blocks;       // derived, sorted
    std::vector<int> mark_pos;                  // mark i at [i-1]
};

RawTree parse_raw_tree(const ojson &j, const std::string &path, bool need_levels) {
    RawTree r;
    r.n = need_int(need(j, "n", path), at(path, "n"));
    if (r.n < 1)
        fail(at(path, "n"), "need at least one mark");

    const ojson &verts = need_array(need(j, "vertices", path), at(path, "vertices"));
    for (size_t k = 0; k < verts.size(); ++k) {
        const std::string vpath = at(at(path, "vertices"), k);
        std::string id = need_string(need(verts[k], "id", vpath), at(vpath, "id"));
        if (!r.index.emplace(id, static_cast<int>(r.labels.size())).second)
            fail(vpath, "duplicate vertex id \"" + id + "\"");
        r.labels.push_back(id);
        if (verts[k].contains("level"))
            r.level.push_back(need_int(verts[k]["level"], at(vpath, "level")));
        else if (need_levels)
            fail(vpath, "missing key \"level\"");
        else
            r.level.push_back(-1);
    }
    if (r.labels.empty())
        fail(at(path, "vertices"), "need at least one vertex");

    std::string root = need_string(need(j, "root", path), at(path, "root"));
    if (!r.index.count(root))
        fail(at(path, "root"), "unknown vertex \"" + root + "\"");

    r.parent.assign(r.labels.size(), -1);
    std::vector<char> has_parent(r.labels.size(), 0);
    const ojson &edges = need_array(need(j, "edges", path), at(path, "edges"));
    for (size_t k = 0; k < edges.size(); ++k) {
        const std::string epath = at(at(path, "edges"), k);
        const ojson &e = need_array(edges[k], epath);
        if (e.size() != 2)
            fail(epath, "expected [parent, child]");
        std::string pa = need_string(e[0], at(epath, size_t(0)));
        std::string ch = need_string(e[1], at(epath, size_t(1)));
        if (!r.index.count(pa))
            fail(epath, "unknown vertex \"" + pa + "\"");
        if (!r.index.count(ch))
            fail(epath, "unknown vertex \"" + ch + "\"");
        int ci = r.index[ch];
        if (ch == root)
            fail(epath, "the root cannot be a child");
        if (has_parent[ci])
            fail(epath, "vertex \"" + ch + "\" has two parents");
        has_parent[ci] = 1;
        r.parent[ci] = r.index[pa];
    }
    for (size_t k = 0; k < r.labels.size(); ++k)
        if (r.labels[k] != root && !has_parent[k])
            fail(at(path, "edges"), "vertex \"" + r.labels[k] + "\" is not connected");

    const ojson &marking = need(j, "marking", path);
    if (!marking.is_object())
        fail(at(path, "marking"), "expected an object");
    r.mark_pos.assign(r.n, -1);
    r.blocks.assign(r.labels.size(), {});
    for (auto it = marking.begin(); it != marking.end(); ++it) {
        const std::string mpath = at(at(path, "marking"), it.key());
        int mark = 0;
        try {
            size_t used = 0;
            mark = std::stoi(it.key(), &used);
            if (used != it.key().size())
                mark = 0;
        } catch (...) {
            mark = 0;
        }
        if (mark < 1 || mark > r.n)
            fail(mpath, "marks run from 1 to " + std::to_string(r.n));
        std::string id = need_string(it.value(), mpath);
        if (!r.index.count(id))
            fail(mpath, "unknown vertex \"" + id + "\"");
        if (r.mark_pos[mark - 1] >= 0)
            fail(mpath, "mark listed twice");
        r.mark_pos[mark - 1] = r.index[id];

        int v = r.index[id];
        for (size_t steps = 0; v >= 0; v = r.parent[v]) {
            r.blocks[v].push_back(mark);
            if (++steps > r.labels.size())
                fail(at(path, "edges"), "edges form a cycle");
        }
    }
    for (int m = 1; m <= r.n; ++m)
        if (r.mark_pos[m - 1] < 0)
            fail(at(path, "marking"), "mark " + std::to_string(m) + " is missing");
    for (auto &b : r.blocks)
        std::sort(b.begin(), b.end());
    return r;
}

} // namespace

ojson tree_to_json(const LevelTree &t) {
    ojson j;
    j["n"] = t.n;
    ojson verts = ojson::array();
    for (const TreeVertex &v : t.vertices)
        verts.push_back({{"id", v.id}, {"level", v.level}});
    j["vertices"] = std::move(verts);
    ojson edges = ojson::array();
    for (const TreeVertex &v : t.vertices)
        if (v.parent >= 0)
            edges.push_back({t.vertices[v.parent].id, v.id});
    j["edges"] = std::move(edges);
    j["root"] = t.vertices.empty() ? "" : t.vertices[0].id;
    ojson marking = ojson::object();
    for (int m = 1; m <= t.n; ++m)
        marking[std::to_string(m)] = t.vertices[t.mark_vertex[m - 1]].id;
    j["marking"] = std::move(marking);
    return j;
}

LevelTree tree_from_json(const ojson &j, const std::string &path) {
    RawTree r = parse_raw_tree(j, path, true);

    std::vector<int> order(r.labels.size());
    for (size_t k = 0; k < order.size(); ++k)
        order[k] = static_cast<int>(k);
    for (size_t k = 0; k < order.size(); ++k)
        if (r.blocks[k].empty())
            fail(path, "vertex \"" + r.labels[k] + "\" carries no marks");
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(r.level[a], r.blocks[a][0]) < std::pair(r.level[b], r.blocks[b][0]);
    });
    std::vector<int> where(order.size());
    for (size_t k = 0; k < order.size(); ++k)
        where[order[k]] = static_cast<int>(k);

    LevelTree t;
    t.n = r.n;
    for (size_t k = 0; k < order.size(); ++k) {
        int src = order[k];
        TreeVertex v;
        v.block = r.blocks[src];
        v.level = r.level[src];
        v.parent = r.parent[src] < 0 ? -1 : where[r.parent[src]];
        v.id = block_id(v.block, t.n);
        t.vertices.push_back(std::move(v));
    }
    t.mark_vertex.resize(r.n);
    for (int m = 1; m <= r.n; ++m)
        t.mark_vertex[m - 1] = where[r.mark_pos[m - 1]];
    try {
        validate_tree(t);
    } catch (const validation_error &e) {
        fail(path, e.what());
    }
    return t;
}

ojson rooted_tree_to_json(const RootedTree &t) {
    ojson j;
    j["n"] = t.n;
    ojson verts = ojson::array();
    for (const RootedTreeVertex &v : t.vertices)
        verts.push_back({{"id", v.id}});
    j["vertices"] = std::move(verts);
    ojson edges = ojson::array();
    for (const RootedTreeVertex &v : t.vertices)
        if (v.parent >= 0)
            edges.push_back({t.vertices[v.parent].id, v.id});
    j["edges"] = std::move(edges);
    j["root"] = t.vertices.empty() ? "" : t.vertices[0].id;
    ojson marking = ojson::object();
    for (int m = 1; m <= t.n; ++m)
        marking[std::to_string(m)] = t.vertices[t.mark_vertex[m - 1]].id;
    j["marking"] = std::move(marking);
    return j;
}

RootedTree rooted_tree_from_json(const ojson &j, const std::string &path) {
    RawTree r = parse_raw_tree(j, path, false);
    for (size_t k = 0; k < r.labels.size(); ++k)
        if (r.blocks[k].empty())
            fail(path, "vertex \"" + r.labels[k] + "\" carries no marks");

    std::vector<int> order(r.labels.size());
    for (size_t k = 0; k < order.size(); ++k)
        order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::pair(-static_cast<int>(r.blocks[a].size()), r.blocks[a]) <
               std::pair(-static_cast<int>(r.blocks[b].size()), r.blocks[b]);
    });
    std::vector<int> where(order.size());
    for (size_t k = 0; k < order.size(); ++k)
        where[order[k]] = static_cast<int>(k);

    RootedTree t;
    t.n = r.n;
    for (size_t k = 0; k < order.size(); ++k) {
        int src = order[k];
        RootedTreeVertex v;
        v.block = r.blocks[src];
        v.parent = r.parent[src] < 0 ? -1 : where[r.parent[src]];
        v.id = block_id(v.block, t.n);
        t.vertices.push_back(std::move(v));
    }
    t.mark_vertex.resize(r.n);
    for (int m = 1; m <= r.n; ++m)
        t.mark_vertex[m - 1] = where[r.mark_pos[m - 1]];
    try {
        validate_rooted_tree(t);
    } catch (const validation_error &e) {
        fail(path, e.what());
    }
    return t;
}

namespace {

std::string pair_key(int i, int j) {
    return std::to_string(i) + "," + std::to_string(j);
}

} // namespace

ojson point_to_json(const ChartPoint &p) {
    ojson j;
    j["tree"] = tree_to_json(p.tree);
    ojson idx = ojson::array();
    for (auto [i, k] : p.indices)
        idx.push_back({i, k});
    j["indices"] = std::move(idx);
    ojson z = ojson::object();
    int n = p.tree.n;
    for (int i = 1; i <= n; ++i)
        for (int k = i + 1; k <= n; ++k)
            z[pair_key(i, k)] = rat_to_string(p.z[pair_index(n, i, k)]);
    j["z"] = std::move(z);
    ojson t = ojson::array();
    for (const Rat &x : p.t)
        t.push_back(rat_to_string(x));
    j["t"] = std::move(t);
    return j;
}

ChartPoint point_from_json(const ojson &j, const std::string &path) {
    ChartPoint p;
    p.tree = tree_from_json(need(j, "tree", path), at(path, "tree"));
    int n = p.tree.n;
    int l = p.tree.levels();

    const ojson &idx = need_array(need(j, "indices", path), at(path, "indices"));
    if (static_cast<int>(idx.size()) != l)
        fail(at(path, "indices"),
             "expected " + std::to_string(l) + " index pairs, one per level");
    for (size_t k = 0; k < idx.size(); ++k) {
        const std::string ipath = at(at(path, "indices"), k);
        const ojson &pr = need_array(idx[k], ipath);
        if (pr.size() != 2)
            fail(ipath, "expected [i, j]");
        int i = need_int(pr[0], at(ipath, size_t(0)));
        int m = need_int(pr[1], at(ipath, size_t(1)));
        if (i < 1 || i > n || m < 1 || m > n || i == m)
            fail(ipath, "marks must be distinct and in range");
        p.indices.push_back({i, m});
    }

    const ojson &z = need(j, "z", path);
    if (!z.is_object())
        fail(at(path, "z"), "expected an object keyed \"i,j\"");
    p.z.assign(num_pairs(n), Rat(0));
    std::vector<char> seen(num_pairs(n), 0);
    for (auto it = z.begin(); it != z.end(); ++it) {
        const std::string zpath = at(at(path, "z"), it.key());
        int i = 0, k = 0, used = -1;
        if (std::sscanf(it.key().c_str(), "%d,%d%n", &i, &k, &used) != 2 ||
            used != static_cast<int>(it.key().size()) || i < 1 || k <= i || k > n)
            fail(zpath, "key must be \"i,j\" with 1 <= i < j <= " + std::to_string(n));
        int slot = pair_index(n, i, k);
        if (seen[slot])
            fail(zpath, "pair listed twice");
        seen[slot] = 1;
        p.z[slot] = need_rat(it.value(), zpath);
    }
    for (int i = 1; i <= n; ++i)
        for (int k = i + 1; k <= n; ++k)
            if (!seen[pair_index(n, i, k)])
                fail(at(path, "z"), "missing pair \"" + pair_key(i, k) + "\"");

    const ojson &t = need_array(need(j, "t", path), at(path, "t"));
    if (static_cast<int>(t.size()) != l)
        fail(at(path, "t"), "expected " + std::to_string(l) + " scales, one per level");
    for (size_t k = 0; k < t.size(); ++k)
        p.t.push_back(need_rat(t[k], at(at(path, "t"), k)));
    return p;
}

ojson family_to_json(const LaurentFamily &f) {
    ojson j;
    j["n"] = f.n;
    ojson zs = ojson::array();
    for (const Laurent &z : f.z) {
        ojson poly = ojson::array();
        for (const auto &[e, c] : z.terms)
            poly.push_back({e, rat_to_string(c)});
        zs.push_back(std::move(poly));
    }
    j["z"] = std::move(zs);
    return j;
}

LaurentFamily family_from_json(const ojson &j, const std::string &path) {
    LaurentFamily f;
    f.n = need_int(need(j, "n", path), at(path, "n"));
    if (f.n < 1)
        fail(at(path, "n"), "need at least one mark");
    const ojson &zs = need_array(need(j, "z", path), at(path, "z"));
    if (static_cast<int>(zs.size()) != f.n)
        fail(at(path, "z"), "expected " + std::to_string(f.n) + " polynomials");
    for (size_t k = 0; k < zs.size(); ++k) {
        const std::string zpath = at(at(path, "z"), k);
        const ojson &poly = need_array(zs[k], zpath);
        std::vector<std::pair<int, Rat>> terms;
        for (size_t x = 0; x < poly.size(); ++x) {
            const std::string tpath = at(zpath, x);
            const ojson &term = need_array(poly[x], tpath);
            if (term.size() != 2)
                fail(tpath, "expected [exponent, \"p/q\"]");
            int e = need_int(term[0], at(tpath, size_t(0)));
            terms.push_back({e, need_rat(term[1], at(tpath, size_t(1)))});
        }
        f.z.push_back(laurent_from_terms(std::move(terms)));
    }
    return f;
}

ojson scaled_curve_to_json(const ScaledCurve &s) {
    ojson j;
    j["tree"] = rooted_tree_to_json(s.tree);
    ojson periods = ojson::object();
    for (const auto &[pr, v] : s.periods)
        periods[pair_key(pr.first, pr.second)] = rat_to_string(v);
    j["periods"] = std::move(periods);
    return j;
}

ojson stratification_to_json(const StratificationPoset &s) {
    ojson j;
    j["n"] = s.n;
    ojson strata = ojson::array();
    std::map<std::vector<Partition>, int, bool (*)(const std::vector<Partition> &,
                                                   const std::vector<Partition> &)>
        where([](const std::vector<Partition> &a, const std::vector<Partition> &b) {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                                partition_less);
        });
    for (size_t k = 0; k < s.records.size(); ++k) {
        const StratumRecord &r = s.records[k];
        ojson chain = ojson::array();
        for (const Partition &p : r.chain.elements)
            chain.push_back(partition_to_json(p));
        strata.push_back({{"chain", std::move(chain)}, {"codim", r.codim}, {"dim", r.dim}});
        where[r.chain.elements] = static_cast<int>(k);
    }
    j["strata"] = std::move(strata);

    // covers of the inclusion order: drop one element from a chain
    ojson covers = ojson::array();
    for (size_t k = 0; k < s.records.size(); ++k) {
        const auto &elems = s.records[k].chain.elements;
        std::set<int> below;
        for (size_t drop = 0; drop < elems.size(); ++drop) {
            std::vector<Partition> sub;
            for (size_t x = 0; x < elems.size(); ++x)
                if (x != drop)
                    sub.push_back(elems[x]);
            below.insert(where.at(sub));
        }
        for (int b : below)
            covers.push_back({b, static_cast<int>(k)});
    }
    std::sort(covers.begin(), covers.end());
    j["covers"] = std::move(covers);
    return j;
}

ojson schedule_to_json(int n, const std::vector<std::pair<int, std::vector<Partition>>> &stages) {
    ojson j;
    j["n"] = n;
    ojson arr = ojson::array();
    for (const auto &[k, centers] : stages) {
        ojson cs = ojson::array();
        for (const Partition &p : centers)
            cs.push_back(partition_to_json(p));
        arr.push_back({{"stage", k}, {"centers", std::move(cs)}});
    }
    j["stages"] = std::move(arr);
    return j;
}

namespace {

ojson element_to_json(const ChowElement &e) {
    ojson j = ojson::array();
    for (const auto &[m, c] : e)
        j.push_back({m, rat_to_string(c)});
    return j;
}

} // namespace

ojson chow_to_json(int n, bool want_hilbert, bool want_relations) {
    if (want_hilbert && !want_relations) {
        ojson j;
        j["hilbert"] = hilbert(n);
        return j;
    }
    ChowPresentation pr = presentation(n);
    ojson j;
    j["n"] = n;
    ojson gens = ojson::array();
    for (const Partition &p : pr.generators)
        gens.push_back(partition_to_json(p));
    j["generators"] = std::move(gens);
    if (want_relations) {
        ojson rels = ojson::array();
        for (const ChowElement &r : pr.relations)
            rels.push_back(element_to_json(r));
        j["relations"] = std::move(rels);
    }
    if (want_hilbert)
        j["hilbert"] = hilbert(n);
    return j;
}

std::string dump_json(const ojson &j) { return j.dump(2) + "\n"; }

} // namespace ms
