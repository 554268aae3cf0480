#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "multiscale/chow.hpp"
#include "multiscale/errors.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace ms;

static Partition P(int n, std::vector<std::vector<int>> blocks) {
    return partition_from_blocks(n, blocks);
}

static std::vector<Partition> gens_of(int n) {
    auto all = enumerate_partitions(n);
    all.erase(all.begin());
    return all;
}

static ChowElement random_element(gen::Rng &rng, int ngens, int maxdeg) {
    ChowElement e = chow_zero();
    for (int terms = gen::pick(rng, 0, 5); terms > 0; --terms) {
        Monomial m(ngens, 0);
        for (int d = gen::pick(rng, 0, maxdeg); d > 0; --d)
            ++m[gen::pick(rng, 0, ngens - 1)];
        ChowElement t;
        t[m] = gen::random_rat(rng);
        e = chow_add(e, t);
    }
    return e;
}

TEST_CASE("monomial order is degrevlex") {
    Monomial one(3, 0);
    Monomial x0 = {1, 0, 0}, x1 = {0, 1, 0}, x2 = {0, 0, 1};
    CHECK(monomial_less(one, x0));
    CHECK(monomial_less(x1, x0));
    CHECK(monomial_less(x2, x1));
    // x0*x2 < x1^2 is the classical degrevlex signature
    CHECK(monomial_less({1, 0, 1}, {0, 2, 0}));
    CHECK(!monomial_less(x0, x0));
    CHECK(monomial_degree({2, 1, 3}) == 6);
}

TEST_CASE("element arithmetic") {
    int m = 4;
    ChowElement a = chow_add(chow_var(m, 0), chow_scale(Rat(3), chow_var(m, 2)));
    CHECK(a.size() == 2);
    CHECK(chow_is_zero(chow_sub(a, a)));
    CHECK(chow_mul(chow_one(m), a) == a);
    CHECK(chow_is_zero(chow_mul(chow_zero(), a)));
    CHECK(chow_is_zero(chow_scale(Rat(0), a)));
    CHECK_THROWS_AS(chow_var(m, 4), validation_error);

    // (x0 + x1)(x0 - x1) = x0^2 - x1^2
    ChowElement s = chow_add(chow_var(m, 0), chow_var(m, 1));
    ChowElement d = chow_sub(chow_var(m, 0), chow_var(m, 1));
    ChowElement sq = chow_sub(chow_mul(chow_var(m, 0), chow_var(m, 0)),
                              chow_mul(chow_var(m, 1), chow_var(m, 1)));
    CHECK(chow_mul(s, d) == sq);
}

TEST_CASE("flats of the complete graph are partitions") {
    FlatDictionary d = flats(3);
    CHECK(d.flats.size() == 5);
    CHECK(d.edges == std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}});
    CHECK_THROWS_AS(flats(8), size_guard_error);

    for (int n = 2; n <= 5; ++n) {
        FlatDictionary dict = flats(n);
        CHECK(dict.flats.size() == oracle::bell_number(n));
        CHECK(dict.edges.size() == static_cast<size_t>(n * (n - 1) / 2));
        for (const Partition &f : dict.flats) {
            CHECK(flat_rank(f) + flat_corank(f) == n - 1);
            CHECK(flat_rank(f) == n - static_cast<int>(f.blocks.size()));
        }
        CHECK(flat_rank(top_partition(n)) == 0);
        CHECK(flat_rank(bottom_partition(n)) == n - 1);
    }
}

TEST_CASE("flat closure completes connected components") {
    CHECK(flat_closure(4, {}) == top_partition(4));
    CHECK(flat_closure(4, {{1, 2}, {2, 3}}) == P(4, {{1, 2, 3}, {4}}));
    CHECK(flat_closure(3, {{1, 2}, {2, 3}}) == bottom_partition(3));
    CHECK_THROWS_AS(flat_closure(3, {{1, 1}}), validation_error);
    CHECK_THROWS_AS(flat_closure(3, {{0, 2}}), validation_error);

    // closure is idempotent and its rank is the graph rank v - #components
    gen::Rng rng(6101);
    for (int iter = 0; iter < 300; ++iter) {
        int n = gen::pick(rng, 2, 5);
        std::vector<std::pair<int, int>> edges;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (gen::pick(rng, 0, 2) == 0)
                    edges.push_back({i, j});
        Partition cl = flat_closure(n, edges);

        std::vector<std::pair<int, int>> inside;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (same_block(cl, i, j))
                    inside.push_back({i, j});
        CHECK(flat_closure(n, inside) == cl);
        for (auto [i, j] : edges)
            CHECK(same_block(cl, i, j));
    }

    // flat inclusion is the reverse of the partition order
    auto parts = enumerate_partitions(4);
    auto edges_of = [&](const Partition &p) {
        std::vector<std::pair<int, int>> es;
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j)
                if (same_block(p, i, j))
                    es.push_back({i, j});
        return es;
    };
    for (const Partition &a : parts)
        for (const Partition &b : parts) {
            auto ea = edges_of(a), eb = edges_of(b);
            bool contained = std::includes(ea.begin(), ea.end(), eb.begin(), eb.end());
            CHECK(contained == leq(a, b));
        }
}

TEST_CASE("presentation shape") {
    ChowPresentation p2 = presentation(2);
    REQUIRE(p2.generators.size() == 1);
    CHECK(p2.generators[0] == top_partition(2));
    REQUIRE(p2.relations.size() == 1);
    CHECK(p2.relations[0] == chow_mul(chow_var(1, 0), chow_var(1, 0)));

    ChowPresentation p3 = presentation(3);
    CHECK(p3.generators.size() == 4);
    // three incomparable products plus nine separation quadrics
    CHECK(p3.relations.size() == 12);
    for (const ChowElement &r : p3.relations)
        for (const auto &[m, c] : r)
            CHECK(monomial_degree(m) == 2);

    CHECK_THROWS_AS(presentation(6), size_guard_error);
}

TEST_CASE("normal form kills exactly the ideal") {
    for (int n = 2; n <= 4; ++n) {
        int m = static_cast<int>(gens_of(n).size());
        for (const ChowElement &r : presentation(n).relations)
            CHECK(chow_is_zero(normal_form(r, n)));
        CHECK(normal_form(chow_one(m), n) == chow_one(m));
        CHECK(chow_is_zero(normal_form(chow_zero(), n)));

        // generators survive: no linear relations
        for (int a = 0; a < m; ++a)
            CHECK(normal_form(chow_var(m, a), n) == chow_var(m, a));
    }

    // x_top^2 = 0 for n = 2
    CHECK(chow_is_zero(normal_form(chow_mul(chow_var(1, 0), chow_var(1, 0)), 2)));

    // incomparable products die, comparable ones survive in degree 2
    int n = 4;
    auto gens = gens_of(n);
    int m = static_cast<int>(gens.size());
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            ChowElement prod = chow_mul(chow_var(m, a), chow_var(m, b));
            bool comparable = leq(gens[a], gens[b]) || leq(gens[b], gens[a]);
            CHECK(chow_is_zero(normal_form(prod, n)) == !comparable);
        }
}

TEST_CASE("normal form is an idempotent linear projection") {
    gen::Rng rng(6102);
    for (int n = 2; n <= 4; ++n) {
        int m = static_cast<int>(gens_of(n).size());
        for (int iter = 0; iter < 60; ++iter) {
            ChowElement a = random_element(rng, m, n);
            ChowElement b = random_element(rng, m, n);
            ChowElement na = normal_form(a, n);
            CHECK(normal_form(na, n) == na);
            CHECK(normal_form(chow_add(a, b), n) == chow_add(na, normal_form(b, n)));
            Rat c = gen::random_rat(rng);
            CHECK(normal_form(chow_scale(c, a), n) == chow_scale(c, na));
            // multiplication descends to normal forms
            CHECK(normal_form(chow_mul(a, b), n) ==
                  normal_form(chow_mul(na, normal_form(b, n)), n));
        }
    }
}

TEST_CASE("ring axioms hold on normal forms") {
    gen::Rng rng(6103);
    int n = 3;
    int m = static_cast<int>(gens_of(n).size());
    for (int iter = 0; iter < 80; ++iter) {
        ChowElement a = random_element(rng, m, n);
        ChowElement b = random_element(rng, m, n);
        ChowElement c = random_element(rng, m, n);
        CHECK(normal_form(chow_mul(a, b), n) == normal_form(chow_mul(b, a), n));
        CHECK(normal_form(chow_mul(chow_mul(a, b), c), n) ==
              normal_form(chow_mul(a, chow_mul(b, c)), n));
        CHECK(normal_form(chow_mul(a, chow_add(b, c)), n) ==
              normal_form(chow_add(chow_mul(a, b), chow_mul(a, c)), n));
    }
}

TEST_CASE("groebner basis is reduced") {
    for (int n = 2; n <= 4; ++n) {
        const auto &basis = groebner_basis(n);
        CHECK(!basis.empty());
        for (size_t i = 0; i < basis.size(); ++i) {
            const Monomial &li = std::prev(basis[i].end())->first;
            CHECK(std::prev(basis[i].end())->second == 1);
            for (size_t j = 0; j < basis.size(); ++j) {
                if (i == j)
                    continue;
                // no lead divides any monomial of another element
                const Monomial &lj = std::prev(basis[j].end())->first;
                for (const auto &[mono, coeff] : basis[i]) {
                    bool divides = true;
                    for (size_t x = 0; x < mono.size(); ++x)
                        if (lj[x] > mono[x]) {
                            divides = false;
                            break;
                        }
                    CHECK(!divides);
                }
                (void)li;
            }
        }
    }
}

TEST_CASE("hilbert series") {
    CHECK(hilbert(1) == std::vector<long>{1});
    CHECK(hilbert(2) == std::vector<long>{1, 1});
    CHECK(hilbert(3) == std::vector<long>{1, 4, 1});
    CHECK(hilbert(4) == std::vector<long>{1, 14, 14, 1});
    CHECK_THROWS_AS(hilbert(6), size_guard_error);

    for (int n = 1; n <= 4; ++n) {
        std::vector<long> h = hilbert(n);
        REQUIRE(h.size() == static_cast<size_t>(n));
        CHECK(h.front() == 1);
        CHECK(h.back() == 1);
        if (n >= 2)
            CHECK(h[1] == static_cast<long>(oracle::bell_number(n)) - 1);
        for (size_t k = 0; k < h.size(); ++k)
            CHECK(h[k] == h[h.size() - 1 - k]);
    }
}

TEST_CASE("separation generators annihilate separating divisors") {
    for (int n = 2; n <= 4; ++n) {
        auto gens = gens_of(n);
        int m = static_cast<int>(gens.size());
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                ChowElement y = y_generator(n, i, j);
                for (int a = 0; a < m; ++a) {
                    if (same_block(gens[a], i, j))
                        continue;
                    ChowElement prod = chow_mul(y, chow_var(m, a));
                    CHECK(chow_is_zero(normal_form(prod, n)));
                }
            }
    }
    CHECK_THROWS_AS(y_generator(3, 2, 2), validation_error);
    CHECK_THROWS_AS(y_generator(3, 0, 2), validation_error);
}

TEST_CASE("stratum classes") {
    CHECK(stratum_class(chain_from_elements(3, {})) == chow_one(4));
    CHECK(stratum_class(chain_from_elements(2, {top_partition(2)})) == chow_var(1, 0));

    Partition a = P(3, {{1, 2}, {3}});
    ChowElement cl = stratum_class(chain_from_elements(3, {a, top_partition(3)}));
    REQUIRE(cl.size() == 1);
    CHECK(monomial_degree(cl.begin()->first) == 2);
    CHECK(!chow_is_zero(normal_form(cl, 3)));

    CHECK_THROWS_AS(chain_from_elements(3, {a, P(3, {{1, 3}, {2}})}), validation_error);
}
