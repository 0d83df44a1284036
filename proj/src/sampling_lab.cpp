#include "bcc/sampling_lab.hpp"

#include <cmath>
#include <stdexcept>

#include "bcc/sampler.hpp"

namespace bcc {

double weighted_distance(const std::vector<double>& u, const std::vector<double>& v,
                         const std::vector<double>& w) {
    if (u.size() != v.size() || u.size() != w.size())
        throw std::invalid_argument("weighted_distance: length mismatch");
    double d = 0;
    for (std::size_t i = 0; i < u.size(); ++i) d += w[i] * std::fabs(u[i] - v[i]);
    return d;
}

namespace {

std::vector<double> tuple_entries(const RelationTuple& t) {
    std::vector<double> e(t.arity());
    for (std::uint32_t j = 1; j <= t.arity(); ++j) e[j - 1] = t.entry(j) ? 1.0 : 0.0;
    return e;
}

}  // namespace

std::pair<double, RelationTuple> dmin(const Relation& rel, const std::vector<double>& p,
                                      const std::vector<double>& w) {
    if (rel.empty())
        throw std::invalid_argument("dmin: empty relation");
    double best = 0;
    RelationTuple arg;
    bool first = true;
    for (std::size_t t = 0; t < rel.size(); ++t) {
        RelationTuple tup = rel.tuple(t);
        double d = weighted_distance(tuple_entries(tup), p, w);
        if (first || d < best) {  // strict: canonical order keeps the first argmin
            best = d;
            arg = tup;
            first = false;
        }
    }
    return {best, arg};
}

double sampling_trial(const SamplingProblem& prob, std::uint64_t r, Rng& rng) {
    std::uint32_t k = prob.relation.arity();
    std::vector<double> q(k, 0.0);
    for (std::uint32_t i = 0; i < k; ++i) {
        std::uint64_t ones = 0;
        for (std::uint64_t j = 0; j < r; ++j)
            if (rng.next_double() < prob.p[i]) ++ones;
        q[i] = static_cast<double>(ones) / static_cast<double>(r);
    }
    auto [dq, rho] = dmin(prob.relation, q, prob.w);
    (void)dq;
    return weighted_distance(tuple_entries(rho), prob.p, prob.w);
}

TrialStats sampling_experiment(const SamplingProblem& prob, std::uint64_t trials, Rng rng) {
    if (trials < 1)
        throw std::invalid_argument("sampling_experiment: need at least one trial");
    std::uint32_t k = prob.relation.arity();
    if (prob.p.size() != k || prob.w.size() != k)
        throw std::invalid_argument("sampling_experiment: p/w length mismatch");
    for (double pi : prob.p)
        if (pi < 0.0 || pi > 1.0)
            throw std::invalid_argument("sampling_experiment: probabilities out of range");

    std::uint64_t r = prob.r != 0 ? prob.r : sample_size(k, prob.eps, prob.c);

    // Welford accumulation; merging order does not affect a serial pass.
    double mean = 0, m2 = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rng trial_rng = rng.derive(t);
        double d = sampling_trial(prob, r, trial_rng);
        double delta = d - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (d - mean);
    }
    TrialStats stats;
    stats.trials = trials;
    stats.r = r;
    stats.mean_d = mean;
    double variance = trials > 1 ? m2 / static_cast<double>(trials - 1) : 0.0;
    stats.std_error = std::sqrt(variance / static_cast<double>(trials));
    stats.d_min = dmin(prob.relation, prob.p, prob.w).first;
    stats.threshold = (1.0 + prob.eps) * stats.d_min + 3.0 * stats.std_error;
    stats.pass = stats.mean_d <= stats.threshold;
    return stats;
}

}  // namespace bcc
