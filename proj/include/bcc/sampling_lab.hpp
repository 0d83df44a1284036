#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcc/relation.hpp"
#include "bcc/rng.hpp"

namespace bcc {

/// A Monte Carlo check instance: estimate how well a tuple chosen against
/// empirical Bernoulli frequencies tracks the true weighted minimum distance.
struct SamplingProblem {
    std::string name;
    Relation relation;             // arity k
    std::vector<double> p;         // k Bernoulli means in [0,1]
    std::vector<double> w;         // k nonnegative weights
    double eps = 0.3;
    std::uint64_t r = 0;           // samples per coordinate; 0 = derive from (k, eps, c)
    double c = 2.0;
};

struct TrialStats {
    std::uint64_t trials = 0;
    double mean_d = 0;
    double std_error = 0;
    double d_min = 0;
    double threshold = 0;  // (1+eps)*d_min + 3*SE
    std::uint64_t r = 0;
    bool pass = false;
};

/// Weighted L1 distance sum_i w_i |u_i - v_i|.
double weighted_distance(const std::vector<double>& u, const std::vector<double>& v,
                         const std::vector<double>& w);

/// Brute-force minimum weighted distance from p to a relation tuple, with the
/// canonical-order argmin.
std::pair<double, RelationTuple> dmin(const Relation& rel, const std::vector<double>& p,
                                      const std::vector<double>& w);

/// One trial: draw r Bernoulli samples per coordinate, form the empirical
/// frequency tuple Q, pick the relation tuple nearest to Q, and return its
/// weighted distance back to p.
double sampling_trial(const SamplingProblem& prob, std::uint64_t r, Rng& rng);

/// T independent trials; passes when mean(D) <= (1+eps)*d_min + 3*SE. The
/// 3*SE slack reflects that only the expectation is bounded.
TrialStats sampling_experiment(const SamplingProblem& prob, std::uint64_t trials, Rng rng);

}  // namespace bcc
