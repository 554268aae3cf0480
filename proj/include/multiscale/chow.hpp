#pragma once

#include <map>
#include <utility>
#include <vector>

#include "multiscale/partitions.hpp"
#include "multiscale/rational.hpp"

namespace ms {

// Monomial in the generators x_rho, rho over the non-bottom partitions of
// {1..n} in partition_less order: exponent vector indexed like that list.
using Monomial = std::vector<int>;

int monomial_degree(const Monomial &m);

// Degree-reverse-lexicographic order (variable order = generator order).
bool monomial_less(const Monomial &a, const Monomial &b);
struct MonomialLess {
    bool operator()(const Monomial &a, const Monomial &b) const { return monomial_less(a, b); }
};

// Q-linear combination of monomials; no zero coefficients stored.
using ChowElement = std::map<Monomial, Rat, MonomialLess>;

ChowElement chow_zero();
ChowElement chow_one(int ngens);
ChowElement chow_var(int ngens, int idx);
ChowElement chow_add(const ChowElement &a, const ChowElement &b);
ChowElement chow_sub(const ChowElement &a, const ChowElement &b);
ChowElement chow_mul(const ChowElement &a, const ChowElement &b);
ChowElement chow_scale(const Rat &c, const ChowElement &a);
bool chow_is_zero(const ChowElement &a);

// Flats of the cycle matroid of the complete graph on n vertices are the
// partitions: the flat of rho is the set of edges inside blocks. Flat
// inclusion runs opposite to leq.
struct FlatDictionary {
    int n = 0;
    std::vector<std::pair<int, int>> edges; // edges of K_n, lex order
    std::vector<Partition> flats;           // partition_less order
};
FlatDictionary flats(int n); // n <= 7

int flat_rank(const Partition &rho);   // n - |B(rho)|
int flat_corank(const Partition &rho); // |B(rho)| - 1

// Closure of an edge set: complete each connected component.
Partition flat_closure(int n, const std::vector<std::pair<int, int>> &edge_set);

// Generators x_rho for non-bottom rho; quadratic relations: x_rho x_pi for
// incomparable pairs, and x_pi * sum_{rho separating i,j} x_rho for every pi
// and every pair i < j separated by pi.
struct ChowPresentation {
    int n = 0;
    std::vector<Partition> generators;
    std::vector<ChowElement> relations;
};
ChowPresentation presentation(int n); // n <= 5

// sum of x_rho over rho separating i and j.
ChowElement y_generator(int n, int i, int j);

// Reduced Groebner basis of the relation ideal (degrevlex), memoized per n.
const std::vector<ChowElement> &groebner_basis(int n); // n <= 5

// Remainder modulo the Groebner basis; idempotent, linear, kills relations.
ChowElement normal_form(const ChowElement &e, int n);

// Graded dimensions of the quotient in degrees 0..n-1.
std::vector<long> hilbert(int n); // n <= 5

// Product of the x_rho over the chain; the class of the corresponding
// closed stratum. Empty chain gives 1.
ChowElement stratum_class(const PartitionChain &chain);

} // namespace ms
