#pragma once

#include <cstdint>
#include <vector>

#include "bcc/assign.hpp"
#include "bcc/bitvec.hpp"
#include "bcc/relation.hpp"
#include "bcc/rng.hpp"
#include "bcc/sampler.hpp"
#include "bcc/weights.hpp"

namespace bcc {

/// Derived constants of the randomized solver for a k-center instance solved
/// to accuracy eps against a reference count k_star >= k.
struct ParameterSchedule {
    std::uint32_t k = 0;
    std::uint32_t k_star = 0;
    double eps = 0;
    Rational eps_exact;
    Rational delta_prime_exact;  // eps / (40 k*)
    Rational alpha_exact;        // delta' / (5^k - 1)
    Rational delta_hat_exact;    // alpha / 7; also the sampling accuracy eps_hat
    double delta_prime = 0;
    double alpha = 0;
    double beta = 0;      // (alpha/k)^(k-1) * delta' / (2k(1+delta')); reporting only
    double eps_hat = 0;   // alpha / 7
    double delta_hat = 0; // alpha / 7
    double c = 2.0;       // sampling-size constant
    std::uint64_t r = 0;  // sample_size(k, eps_hat, c)

    /// Natural log of the weight-grid bound h(k') = (k/alpha)^(k'-1).
    double log_h(std::uint32_t k_prime) const;
};

ParameterSchedule make_schedule(std::uint32_t k, std::uint32_t k_star, Rational eps, double c);

/// Top exponent of the weight grid {(1+delta)^0 .. (1+delta)^ceil(log_{1+delta} h)}.
std::uint64_t grid_top_exponent(const Rational& delta, double log_h);

/// Grid exponents 0, stride, 2*stride, ... plus the top exponent. stride 1
/// yields the full grid.
std::vector<std::uint64_t> weight_grid_exponents(const Rational& delta, double log_h,
                                                 std::uint64_t stride);

/// The ceil(|S|/2) vectors of S farthest from the centers, under ascending
/// (distance, original index) order; the survivors are returned sorted by
/// index. Callers skip this step for empty center sets.
std::vector<std::uint32_t> halve(const Dataset& x, const std::vector<std::uint32_t>& s,
                                 const CenterSet& c1);

/// Natural log of the per-trial success probability bound p(k_star, k, eps),
/// clamped to <= 0. Used for trial sizing and reporting only.
double success_log_prob(std::uint32_t k_star, std::uint32_t k, double eps, double c_prime);

struct Budget {
    std::uint64_t max_trials = 50;        // per driver subset
    std::uint64_t max_wall_ms = 0;        // 0 = unlimited; binding it costs reproducibility
    std::uint64_t max_worklist_nodes = 1500;  // pops per worklist run
    // Cap on the per-set sample count inside a worklist run (0 = the derived
    // formula value). The derived size at the inner accuracy is so large that
    // sampled counts freeze at their expectations and independent trials stop
    // producing distinct candidates; a small cap keeps the trial budget
    // meaningful.
    std::uint64_t max_sample_size = 8;
};

struct WorklistStats {
    std::uint64_t pops = 0;
    std::uint64_t pushes = 0;
    std::uint64_t candidates = 0;
    std::uint32_t max_gamma_steps = 0;
    bool truncated = false;
};

struct SubSolution {
    CenterSet centers;  // full size-k solution of the (sub-)instance
    std::uint64_t cost = 0;
    WorklistStats stats;
};

/// Worklist search for one fixed-arity instance: breadth-first expansion of
/// partial solutions by the halving step and by sampled center extensions over
/// every consistent index set, cluster count, position subset and weight
/// tuple; every partial solution is completed and scored, and the cheapest
/// completion wins. grid_stride 0 picks a stride automatically.
SubSolution worklist_solve(const Dataset& x, std::uint32_t k, const RelationFamily& f,
                           Rational eps, std::uint32_t k_star, double c,
                           std::uint64_t grid_stride, Rng rng, const Budget& budget,
                           std::uint64_t wall_deadline_ms = 0);

struct Solution {
    CenterSet centers;
    std::uint64_t cost = 0;
    Partition assignment;
    IndexSet index_set;  // driver subset that produced the winner
    std::uint64_t seed = 0;
    std::uint64_t trials_used = 0;
    std::uint32_t trial_index = 0;
    bool truncated = false;
    std::uint32_t max_gamma_steps = 0;
    double delta_prime = 0;  // gamma bound the runs stayed under
};

/// Full randomized solver: for every nonempty subset I of cluster positions,
/// runs min(budget.max_trials, ceil(1/p)) independent worklist searches on the
/// projected instance with accuracy eps/4, completes each answer to k centers,
/// and returns the global minimum with the deterministic tie-break
/// (cost, |I|, I lexicographic, trial index). Deterministic for a fixed seed
/// regardless of the worker count.
Solution solve(const Dataset& x, std::uint32_t k, const RelationFamily& f, Rational eps,
               double c, double c_prime, std::uint64_t grid_stride, std::uint64_t seed,
               const Budget& budget, std::uint32_t threads = 1);

/// All size-q subsets of {1..k} in lexicographic member order.
std::vector<IndexSet> subsets_of_size(std::uint32_t k, std::uint32_t q);

}  // namespace bcc
