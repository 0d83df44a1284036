#pragma once

#include <cstdint>

#include "bcc/assign.hpp"
#include "bcc/bitvec.hpp"
#include "bcc/relation.hpp"

namespace bcc {

struct ExhaustiveResult {
    CenterSet centers;
    std::uint64_t cost = 0;
    Partition assignment;
};

/// Exact optimum by enumerating all k^n assignments of vectors to clusters and
/// taking relation-feasible partition-optimal centers for each. Guarded:
/// throws BudgetError when k^n exceeds `state_guard`.
ExhaustiveResult oracle_optimum(const Dataset& x, std::uint32_t k, const RelationFamily& f,
                                std::uint64_t state_guard = 10'000'000);

/// Deterministic (1+eps)-approximation: enumerates sample-set/weight
/// candidates for the best-response center map and returns the cheapest
/// result. The enumeration ranges over k-tuples of r-multisets from X with
/// pairwise disjoint supports and weight compositions of n dominating the
/// support sizes, which contains every witness realizing the approximation
/// bound (cluster samples come from disjoint optimal clusters of sizes equal
/// to the weights). r = sample_size(k, eps, c). Guarded by `eval_guard` on the
/// number of candidate evaluations.
ExhaustiveResult ptas_solve(const Dataset& x, std::uint32_t k, const RelationFamily& f,
                            double eps, double c = 2.0,
                            std::uint64_t eval_guard = 400'000'000);

}  // namespace bcc
