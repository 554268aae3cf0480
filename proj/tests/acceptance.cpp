// Acceptance runner: ten end-to-end checks, one PASS/FAIL line each.
// Usage: acceptance --cli path/to/multiscale_cli --golden path/to/tests/golden

#include "multiscale/charts.hpp"
#include "multiscale/chow.hpp"
#include "multiscale/degeneration.hpp"
#include "multiscale/json_io.hpp"
#include "multiscale/leveltrees.hpp"
#include "multiscale/partitions.hpp"
#include "multiscale/strata.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

using namespace ms;

namespace {

struct Failure {
    std::string detail;
};

void require(bool ok, const std::string &detail) {
    if (!ok)
        throw Failure{detail};
}

std::vector<std::pair<int, int>> all_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            out.emplace_back(i, j);
    return out;
}

std::vector<ExtendedValue> period_profile(const ChartPoint &p) {
    std::vector<ExtendedValue> out;
    for (auto [i, j] : all_pairs(p.tree.n))
        out.push_back(period(p, i, j));
    return out;
}

// 1. Trees and chains are the same count and round-trip exactly, n = 2..6.
void criterion_bijection() {
    for (int n = 2; n <= 6; ++n) {
        auto chains = enumerate_chains(n);
        auto trees = enumerate_trees(n);
        require(trees.size() == chains.size(),
                "tree and chain counts differ at n = " + std::to_string(n));
        require(chains.size() == oracle::count_chains(n),
                "chain count disagrees with the brute-forced lattice at n = " + std::to_string(n));
        for (const auto &c : chains)
            require(tree_to_chain(chain_to_tree(c)) == c,
                    "chain -> tree -> chain is not the identity at n = " + std::to_string(n));
        for (const auto &t : trees)
            require(chain_to_tree(tree_to_chain(t)) == t,
                    "tree -> chain -> tree is not the identity at n = " + std::to_string(n));
    }
}

// 2. Composite single-level contractions match the combined contraction and
//    plain chain deletion, exhaustively for n = 2..5.
void criterion_contraction() {
    for (int n = 2; n <= 5; ++n) {
        for (const auto &t : enumerate_trees(n)) {
            int l = t.levels();
            PartitionChain chain = tree_to_chain(t);
            for (int mask = 1; mask < (1 << l); ++mask) {
                std::vector<int> S;
                for (int s = 1; s <= l; ++s)
                    if (mask & (1 << (s - 1)))
                        S.push_back(s);

                LevelTree combined = contract_levels(t, S);

                LevelTree stepped = t;
                for (auto it = S.rbegin(); it != S.rend(); ++it)
                    stepped = contract_levels(stepped, {*it});
                require(stepped == combined, "sequential contraction disagrees at n = " +
                                                 std::to_string(n));

                std::vector<Partition> kept;
                for (int s = 1; s <= l; ++s)
                    if (!(mask & (1 << (s - 1))))
                        kept.push_back(chain.elements[s - 1]);
                require(tree_to_chain(combined).elements == kept,
                        "contraction is not chain deletion at n = " + std::to_string(n));
            }
        }
    }
}

// 3. Periods are invariant under chart transitions and index changes; the
//    transition cocycle holds exactly on triple overlaps.
void criterion_transition() {
    gen::Rng rng(490301);
    long points = 0;
    for (int round = 0; round < 10 && points < 1000; ++round) {
        for (int n = 2; n <= 5; ++n) {
            for (const auto &tree : enumerate_trees(n)) {
                int l = tree.levels();

                ChartPoint p = gen::random_point(rng, tree, std::nullopt, true);
                ++points;
                auto before = period_profile(p);

                std::vector<int> S, S1, S2;
                for (int s = 1; s <= l; ++s)
                    if (gen::pick(rng, 0, 1)) {
                        S.push_back(s);
                        (gen::pick(rng, 0, 1) ? S1 : S2).push_back(s);
                    }
                ChartPoint q = transition_levels(p, S);
                require(period_profile(q) == before, "transition changed a period");

                // via S1 first, with S2 relabeled to the contracted tree
                std::vector<int> slid = S2;
                for (int &x : slid) {
                    int below = 0;
                    for (int s : S1)
                        if (s < x)
                            ++below;
                    x -= below;
                }
                ChartPoint via = transition_levels(transition_levels(p, S1), slid);
                require(via == q, "transition cocycle broke");

                ChartPoint r = change_indices(p, gen::random_indices(rng, tree));
                require(period_profile(r) == before, "index change moved a period");

                ChartPoint m = gen::random_point(rng, tree);
                ++points;
                require(period_profile(change_indices(m, gen::random_indices(rng, tree))) ==
                            period_profile(m),
                        "index change moved a period at the boundary");
            }
        }
    }
    require(points >= 1000, "only " + std::to_string(points) + " sample points");
}

// 4. Limits of Laurent families: the limit point realizes every symbolic
//    t -> 0 period; the limit tree matches the transcription oracle;
//    periods are infinite exactly across levels.
void criterion_limits() {
    gen::Rng rng(490402);
    long families = 0;
    for (int n = 2; n <= 5; ++n) {
        for (int rep = 0; rep < 300; ++rep) {
            LaurentFamily f = gen::random_family(rng, n);
            ++families;

            LevelTree lt = limit_tree(f);
            require(lt == oracle::literal_limit_tree(n, pair_valuations(f)),
                    "limit tree disagrees with the transcription oracle");

            ChartPoint p = limit_point(f);
            require(p.tree == lt, "limit point lives on the wrong tree");
            for (auto [i, j] : all_pairs(n)) {
                ExtendedValue got = period(p, i, j);
                ExtendedValue want = laurent_limit_at_zero(laurent_sub(f.z[j - 1], f.z[i - 1]));
                require(got == want, "period of the limit point is not the symbolic limit");
                bool split = lt.mark_vertex[i - 1] != lt.mark_vertex[j - 1];
                require(got.is_infinity() == split,
                        "infinite period does not match a terminal split");
            }
        }
    }
    require(families >= 1000, "only " + std::to_string(families) + " families");
}

// 5. The chain poset is order-isomorphic to the blowup-incidence poset, and
//    divisor collections intersect exactly when totally ordered.
void criterion_stratification() {
    for (int n = 1; n <= 5; ++n) {
        StratificationPoset s = build_stratification(n);
        auto families = wn_incident_families(n);
        require(families.size() == s.records.size(),
                "stratum counts differ at n = " + std::to_string(n));
        for (size_t k = 0; k < families.size(); ++k)
            require(families[k] == s.records[k].chain.elements,
                    "stratum " + std::to_string(k) + " differs at n = " + std::to_string(n));
        // the index bijection is an order isomorphism: closure order on one
        // side, family inclusion on the other
        for (size_t a = 0; a < families.size(); ++a)
            for (size_t b = 0; b < families.size(); ++b) {
                bool chain_side = closure_contains(s.records[a].chain, s.records[b].chain);
                bool family_side =
                    std::includes(families[b].begin(), families[b].end(),
                                  families[a].begin(), families[a].end(), partition_less);
                require(chain_side == family_side,
                        "orders disagree at n = " + std::to_string(n));
            }
    }

    gen::Rng rng(490503);
    for (int n = 2; n <= 5; ++n) {
        auto parts = enumerate_partitions(n);
        parts.erase(parts.begin()); // drop the bottom element; divisors live above it
        auto totally_ordered = [&](const std::vector<Partition> &rhos) {
            for (size_t a = 0; a < rhos.size(); ++a)
                for (size_t b = a + 1; b < rhos.size(); ++b)
                    if (!leq(rhos[a], rhos[b]) && !leq(rhos[b], rhos[a]))
                        return false;
            return true;
        };
        for (size_t a = 0; a < parts.size(); ++a)
            for (size_t b = a; b < parts.size(); ++b) {
                std::vector<Partition> d{parts[a], parts[b]};
                require(divisors_intersect(d) == totally_ordered(d),
                        "pairwise divisor intersection is wrong");
            }
        for (int rep = 0; rep < 400; ++rep) {
            std::vector<Partition> d;
            int k = gen::pick(rng, 1, 4);
            for (int x = 0; x < k; ++x)
                d.push_back(parts[gen::pick(rng, 0, static_cast<int>(parts.size()) - 1)]);
            require(divisors_intersect(d) == totally_ordered(d),
                    "divisor intersection is wrong on a sample");
        }
    }
}

// 6. Exact group laws and period equivariance for relabelings and
//    translations; single-mark-terminal points have translation-fixed
//    period profiles.
void criterion_actions() {
    gen::Rng rng(490604);
    for (int n = 2; n <= 5; ++n) {
        auto trees = enumerate_trees(n);
        for (int rep = 0; rep < 40; ++rep) {
            const LevelTree &tree = trees[gen::pick(rng, 0, static_cast<int>(trees.size()) - 1)];
            ChartPoint p = gen::random_point(rng, tree);

            auto sigma = gen::random_permutation(rng, n);
            auto tau = gen::random_permutation(rng, n);
            std::vector<int> comp(n), id(n);
            for (int i = 1; i <= n; ++i) {
                comp[i - 1] = sigma[tau[i - 1] - 1];
                id[i - 1] = i;
            }
            require(s_act(sigma, s_act(tau, p)) == s_act(comp, p), "relabeling law broke");
            require(s_act(id, p) == p, "identity relabeling moved a point");
            ChartPoint sp = s_act(sigma, p);
            for (auto [i, j] : all_pairs(n)) {
                ExtendedValue moved = sigma[i - 1] < sigma[j - 1]
                                          ? period(sp, sigma[i - 1], sigma[j - 1])
                                          : period(sp, sigma[j - 1], sigma[i - 1]).negated();
                require(moved == period(p, i, j), "relabeling is not period-equivariant");
            }

            std::vector<Rat> a, b, sum, zero(n, Rat(0));
            for (int i = 0; i < n; ++i) {
                a.push_back(gen::random_rat(rng));
                b.push_back(gen::random_rat(rng));
                sum.push_back(a.back() + b.back());
            }
            require(g_act(a, g_act(b, p)) == g_act(sum, p), "translation law broke");
            require(g_act(zero, p) == p, "zero translation moved a point");
            ChartPoint gp = g_act(sum, p);
            for (auto [i, j] : all_pairs(n)) {
                ExtendedValue before = period(p, i, j), after = period(gp, i, j);
                if (tree.mark_vertex[i - 1] == tree.mark_vertex[j - 1])
                    require(after == ExtendedValue::finite(before.value() + sum[j - 1] -
                                                           sum[i - 1]),
                            "translation misses the period shift");
                else
                    require(after == before, "translation moved a split period");
            }
        }

        // trees whose terminals carry one mark each: profile fixed under G
        int found = 0;
        for (const auto &tree : trees) {
            PartitionChain c = tree_to_chain(tree);
            if (c.length() == 0 || !(c.elements.back() == top_partition(n)))
                continue;
            ++found;
            ChartPoint p = gen::random_point(rng, tree);
            std::vector<Rat> a;
            for (int i = 0; i < n; ++i)
                a.push_back(gen::random_rat(rng));
            require(period_profile(g_act(a, p)) == period_profile(p),
                    "translation moved the profile of a single-mark point");
        }
        require(found > 0, "no single-mark trees found");
    }
}

// 7. kappa and lambda are mutually inverse over every collision partition,
//    and the collision poset has Bell(n) strata.
void criterion_recursive() {
    gen::Rng rng(490705);
    for (int n = 2; n <= 5; ++n) {
        auto big_trees = enumerate_trees(n);
        for (const Partition &rho : enumerate_partitions(n)) {
            int r = static_cast<int>(rho.blocks.size());
            auto small_trees = enumerate_trees(r);
            for (int rep = 0; rep < 3; ++rep) {
                const LevelTree &qt =
                    small_trees[gen::pick(rng, 0, static_cast<int>(small_trees.size()) - 1)];
                ChartPoint q = gen::random_point(rng, qt);
                ChartPoint p = lambda_attach(rho, q);
                require(kappa(rho, p) == q, "kappa does not undo lambda");

                const LevelTree &big =
                    big_trees[gen::pick(rng, 0, static_cast<int>(big_trees.size()) - 1)];
                PartitionChain bch = tree_to_chain(big);
                Partition terminal =
                    bch.length() ? bch.elements.back() : bottom_partition(n);
                Partition fine = join(rho, terminal);
                ChartPoint direct = gen::random_point(rng, big, fine);
                require(lambda_attach(fine, kappa(fine, direct)) == direct,
                        "lambda does not undo kappa");
            }
        }
    }
    for (int n = 1; n <= 6; ++n)
        require(collision_poset(n).strata.size() == oracle::bell_number(n),
                "collision stratum count is not Bell(" + std::to_string(n) + ")");
}

// 8. Chow ring: expected Hilbert functions, relations reduce to zero, and
//    normal forms are idempotent.
void criterion_chow() {
    require(hilbert(2) == std::vector<long>({1, 1}), "n = 2 Hilbert function is wrong");
    require(chow_is_zero(normal_form(chow_mul(chow_var(1, 0), chow_var(1, 0)), 2)),
            "x_top^2 does not vanish at n = 2");

    for (int n = 3; n <= 4; ++n) {
        std::vector<long> h = hilbert(n);
        require(static_cast<int>(h.size()) == n, "Hilbert function has the wrong length");
        require(h[0] == 1, "degree 0 is not one-dimensional");
        require(h[1] == static_cast<long>(oracle::bell_number(n)) - 1,
                "degree 1 dimension is not Bell(n) - 1");
        require(h[n - 1] == 1, "top degree is not one-dimensional");
        for (int d = 0; d < n; ++d)
            require(h[d] == h[n - 1 - d], "Hilbert function is not palindromic");
    }

    for (int n = 2; n <= 4; ++n)
        for (const ChowElement &rel : presentation(n).relations)
            require(chow_is_zero(normal_form(rel, n)), "a defining relation does not reduce to 0");

    gen::Rng rng(490806);
    for (int n = 3; n <= 4; ++n) {
        int ngens = static_cast<int>(presentation(n).generators.size());
        for (int rep = 0; rep < 250; ++rep) {
            ChowElement e = chow_zero();
            int terms = gen::pick(rng, 1, 4);
            for (int x = 0; x < terms; ++x) {
                ChowElement m = chow_one(ngens);
                int deg = gen::pick(rng, 0, n - 1);
                for (int d = 0; d < deg; ++d)
                    m = chow_mul(m, chow_var(ngens, gen::pick(rng, 0, ngens - 1)));
                e = chow_add(e, chow_scale(gen::random_rat(rng), m));
            }
            ChowElement once = normal_form(e, n);
            require(normal_form(once, n) == once, "normal form is not idempotent");
        }
    }
}

// 9. Level-forgetting fibers: grouping the leveled trees by shape matches
//    enumerate_level_structures and the brute-force count, n = 2..5.
void criterion_fibers() {
    for (int n = 2; n <= 5; ++n) {
        std::map<std::string, std::pair<RootedTree, long>> shapes;
        for (const auto &t : enumerate_trees(n)) {
            RootedTree shape = unlevel(t);
            auto [it, fresh] =
                shapes.try_emplace(dump_json(rooted_tree_to_json(shape)), shape, 0L);
            ++it->second.second;
        }
        for (const auto &[key, entry] : shapes) {
            unsigned long got = enumerate_level_structures(entry.first).size();
            require(got == static_cast<unsigned long>(entry.second),
                    "fiber size disagrees with the leveled enumeration at n = " +
                        std::to_string(n));
            require(got == oracle::brute_force_level_structures(entry.first),
                    "fiber size disagrees with the brute-force count at n = " +
                        std::to_string(n));
        }
    }

    // the two-cherry shape carries exactly three level structures
    Partition cherries = partition_from_json(ojson::parse("[[1,2],[3,4]]"));
    LevelTree leveled =
        chain_to_tree(chain_from_elements(4, {cherries, top_partition(4)}));
    require(enumerate_level_structures(unlevel(leveled)).size() == 3,
            "the two-cherry tree does not have three level structures");
}

// 10. Golden corpus: every CLI command reproduces its recorded output and
//     exit code byte for byte.
void criterion_golden(const std::string &cli, const std::string &golden) {
    std::ifstream manifest(golden + "/commands.txt");
    require(manifest.good(), "cannot open " + golden + "/commands.txt");

    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };

    int cases = 0;
    std::set<std::string> subcommands;
    std::string line;
    while (std::getline(manifest, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        size_t p1 = line.find('|');
        size_t p2 = line.find('|', p1 + 1);
        require(p1 != std::string::npos && p2 != std::string::npos,
                "malformed manifest line: " + line);
        std::string id = trim(line.substr(0, p1));
        int want_code = std::stoi(trim(line.substr(p1 + 1, p2 - p1 - 1)));
        std::string args = trim(line.substr(p2 + 1));

        for (size_t at = args.find("{IN}"); at != std::string::npos;
             at = args.find("{IN}"))
            args.replace(at, 4, golden + "/inputs");
        subcommands.insert(args.substr(0, args.find(' ')));

        std::string cmd =
            "env -u MULTISCALE_MAX_N '" + cli + "' " + args + " 2>/dev/null";
        FILE *pipe = popen(cmd.c_str(), "r");
        require(pipe != nullptr, id + ": popen failed");
        std::string got;
        char buf[4096];
        size_t nread;
        while ((nread = fread(buf, 1, sizeof buf, pipe)) > 0)
            got.append(buf, nread);
        int status = pclose(pipe);
        require(WIFEXITED(status), id + ": command did not exit normally");
        int code = WEXITSTATUS(status);
        require(code == want_code, id + ": exit " + std::to_string(code) + ", wanted " +
                                       std::to_string(want_code));

        std::ifstream exp(golden + "/expected/" + id + ".out", std::ios::binary);
        require(exp.good(), id + ": missing expected output");
        std::ostringstream want;
        want << exp.rdbuf();
        require(got == want.str(), id + ": output differs");
        ++cases;
    }
    require(cases >= 20, "corpus has only " + std::to_string(cases) + " commands");
    require(subcommands.size() == 13,
            "corpus spans " + std::to_string(subcommands.size()) + " of 13 subcommands");
}

} // namespace

int main(int argc, char **argv) {
    std::string cli, golden;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        if (flag == "--cli")
            cli = argv[i + 1];
        else if (flag == "--golden")
            golden = argv[i + 1];
    }
    if (cli.empty() || golden.empty()) {
        std::fprintf(stderr, "usage: acceptance --cli PATH --golden DIR\n");
        return 2;
    }

    struct Item {
        const char *label;
        std::function<void()> run;
    };
    const Item items[] = {
        {"1. trees and chains biject and round-trip (n <= 6)", criterion_bijection},
        {"2. contractions compose and match chain deletion (n <= 5)", criterion_contraction},
        {"3. periods survive transitions, index changes, and the cocycle", criterion_transition},
        {"4. limit points realize symbolic t -> 0 limits", criterion_limits},
        {"5. chain poset matches the blowup incidence poset", criterion_stratification},
        {"6. group laws and period equivariance hold exactly", criterion_actions},
        {"7. kappa/lambda invert; collision strata count Bell(n)", criterion_recursive},
        {"8. Chow ring has the expected Hilbert data and normal forms", criterion_chow},
        {"9. level-forgetting fibers match the level-structure counts", criterion_fibers},
        {"10. golden CLI corpus reproduces byte for byte",
         [&] { criterion_golden(cli, golden); }},
    };

    bool all_ok = true;
    for (const Item &item : items) {
        std::string detail;
        try {
            item.run();
        } catch (const Failure &f) {
            detail = f.detail;
        } catch (const std::exception &e) {
            detail = e.what();
        }
        if (detail.empty()) {
            std::printf("PASS  %s\n", item.label);
        } else {
            std::printf("FAIL  %s  [%s]\n", item.label, detail.c_str());
            all_ok = false;
        }
        std::fflush(stdout);
    }
    return all_ok ? 0 : 1;
}
