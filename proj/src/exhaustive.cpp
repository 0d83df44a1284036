#include "bcc/exhaustive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bcc/errors.hpp"
#include "bcc/sampler.hpp"

namespace bcc {

namespace {

// Unit-weight best response: per coordinate the canonical-first tuple
// minimizing sum_{j in I_b} zeros[j][i] + sum_{j not in I_b} ones[j][i].
// Returns the chosen masks and the total minimum, which equals
// sum_j cost(P_j, {c_j}) when the counts come from a partition.
std::uint64_t unit_weight_best(const std::vector<std::vector<std::uint64_t>>& zeros,
                               const std::vector<std::vector<std::uint64_t>>& ones,
                               const RelationFamily& f,
                               std::vector<std::uint32_t>& masks_out) {
    std::uint32_t k = f.arity();
    std::uint32_t m = f.coord_count();
    std::uint64_t total = 0;
    masks_out.resize(m);
    for (std::uint32_t i = 0; i < m; ++i) {
        const Relation& rel = f.at(i);
        std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
        std::uint32_t best_mask = 0;
        for (std::uint32_t mask : rel.masks()) {
            std::uint64_t v = 0;
            for (std::uint32_t j = 0; j < k; ++j)
                v += ((mask >> (k - 1 - j)) & 1u) ? zeros[j][i] : ones[j][i];
            if (v < best) {
                best = v;
                best_mask = mask;
            }
        }
        total += best;
        masks_out[i] = best_mask;
    }
    return total;
}

CenterSet centers_from_masks(std::uint32_t k, std::uint32_t m,
                             const std::vector<std::uint32_t>& masks) {
    std::vector<BinaryVector> centers(k, BinaryVector(m));
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = 0; j < k; ++j)
            if ((masks[i] >> (k - 1 - j)) & 1u) centers[j].set(i, true);
    return CenterSet(std::move(centers));
}

}  // namespace

ExhaustiveResult oracle_optimum(const Dataset& x, std::uint32_t k, const RelationFamily& f,
                                std::uint64_t state_guard) {
    if (k != f.arity())
        throw std::invalid_argument("oracle_optimum: k must equal the family arity");
    if (!x.empty() && x.dim() != f.coord_count())
        throw std::invalid_argument("oracle_optimum: dimension mismatch");
    std::uint32_t n = static_cast<std::uint32_t>(x.size());
    std::uint32_t m = f.coord_count();

    long double states = powl(static_cast<long double>(k), static_cast<long double>(n));
    if (states > static_cast<long double>(state_guard))
        throw BudgetError("oracle_optimum: k^n exceeds the state guard; use a smaller instance");

    std::vector<std::vector<std::uint64_t>> zeros(k, std::vector<std::uint64_t>(m, 0));
    std::vector<std::vector<std::uint64_t>> ones(k, std::vector<std::uint64_t>(m, 0));
    std::vector<std::uint32_t> label(n, 0);
    for (std::uint32_t v = 0; v < n; ++v)
        for (std::uint32_t i = 0; i < m; ++i)
            (x[v].get(i) ? ones : zeros)[0][i] += 1;

    std::vector<std::uint32_t> masks, best_masks;
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (;;) {
        std::uint64_t total = unit_weight_best(zeros, ones, f, masks);
        if (total < best) {
            best = total;
            best_masks = masks;
        }
        // Advance the base-k odometer over labels, digit 0 fastest.
        std::uint32_t pos = 0;
        for (; pos < n; ++pos) {
            std::uint32_t from = label[pos];
            std::uint32_t to = (from + 1 == k) ? 0 : from + 1;
            label[pos] = to;
            for (std::uint32_t i = 0; i < m; ++i) {
                auto& bucket = x[pos].get(i) ? ones : zeros;
                bucket[from][i] -= 1;
                bucket[to][i] += 1;
            }
            if (to != 0) break;  // no carry
        }
        if (pos == n) break;  // wrapped around: all assignments visited
    }

    ExhaustiveResult res;
    res.centers = centers_from_masks(k, m, best_masks);
    // Reassignment can only shrink the cost, and the minimum over assignments
    // is already the optimum, so this recomputation equals `best`.
    res.cost = x.empty() ? 0 : clustering_cost(x, res.centers);
    res.assignment = x.empty() ? Partition{k, {}} : induced_partition(x, res.centers);
    return res;
}

namespace {

struct MultisetInfo {
    std::uint64_t support = 0;                // bitmask over dataset indices
    std::uint32_t support_size = 0;
    std::vector<std::uint64_t> ones;          // per-coordinate one-count
};

// Nondecreasing index tuples of length r over [0, n): all r-multisets.
void enumerate_multisets(const Dataset& x, std::uint32_t r,
                         std::vector<MultisetInfo>& out, std::uint64_t guard) {
    std::uint32_t n = static_cast<std::uint32_t>(x.size());
    std::uint32_t m = x.dim();
    std::vector<std::uint32_t> pick(r, 0);
    for (;;) {
        MultisetInfo info;
        info.ones.assign(m, 0);
        for (std::uint32_t t = 0; t < r; ++t) {
            info.support |= std::uint64_t{1} << pick[t];
            for (std::uint32_t i = 0; i < m; ++i)
                if (x[pick[t]].get(i)) ++info.ones[i];
        }
        info.support_size = static_cast<std::uint32_t>(std::popcount(info.support));
        out.push_back(std::move(info));
        if (out.size() > guard)
            throw BudgetError("ptas_solve: multiset enumeration exceeds the guard");
        // next nondecreasing tuple
        std::int32_t pos = static_cast<std::int32_t>(r) - 1;
        while (pos >= 0 && pick[pos] == n - 1) --pos;
        if (pos < 0) break;
        std::uint32_t v = pick[pos] + 1;
        for (std::uint32_t t = static_cast<std::uint32_t>(pos); t < r; ++t) pick[t] = v;
    }
}

struct PtasSearch {
    const Dataset& x;
    std::uint32_t k, m, n;
    std::uint64_t r;
    const RelationFamily& f;
    const std::vector<MultisetInfo>& multisets;
    std::uint64_t eval_guard;
    bool counting;  // first pass only counts candidate evaluations

    std::uint64_t evals = 0;
    std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint32_t> best_masks;

    // per-active-position choice during DFS
    std::vector<std::uint32_t> chosen;      // multiset indices
    std::vector<std::uint32_t> active_pos;  // 0-based cluster positions with w > 0

    std::vector<std::vector<std::uint64_t>> zeros, ones;  // [k][m] scaled counts
    std::vector<std::uint64_t> weights;                   // [k]
    std::vector<std::uint32_t> masks_scratch;

    void run(std::uint32_t zero_mask) {
        active_pos.clear();
        for (std::uint32_t j = 0; j < k; ++j)
            if (!((zero_mask >> j) & 1u)) active_pos.push_back(j);
        if (active_pos.empty()) {
            if (n == 0) evaluate_all_zero();
            return;
        }
        if (n == 0) return;  // positive weights cannot sum to 0
        chosen.assign(active_pos.size(), 0);
        dfs(0, 0, 0);
    }

    void dfs(std::uint32_t depth, std::uint64_t used_support, std::uint32_t support_total) {
        if (depth == active_pos.size()) {
            compositions(support_total);
            return;
        }
        for (std::uint32_t s = 0; s < multisets.size(); ++s) {
            const MultisetInfo& info = multisets[s];
            if (info.support & used_support) continue;
            if (support_total + info.support_size > n) continue;
            chosen[depth] = s;
            dfs(depth + 1, used_support | info.support, support_total + info.support_size);
        }
    }

    // Distribute n among the active positions with w_j >= support size of the
    // chosen multiset at position j.
    void compositions(std::uint32_t support_total) {
        std::uint32_t slack = n - support_total;
        comp_rec(0, slack);
    }

    void comp_rec(std::uint32_t depth, std::uint32_t slack) {
        if (depth + 1 == active_pos.size()) {
            evaluate(slack);
            return;
        }
        for (std::uint32_t extra = 0; extra <= slack; ++extra) {
            comp_extra_.push_back(extra);
            comp_rec(depth + 1, slack - extra);
            comp_extra_.pop_back();
        }
    }

    std::vector<std::uint32_t> comp_extra_;

    void evaluate(std::uint32_t last_extra) {
        ++evals;
        if (counting) {
            if (evals > eval_guard)
                throw BudgetError("ptas_solve: enumeration exceeds the evaluation guard");
            return;
        }
        std::fill(weights.begin(), weights.end(), 0);
        for (std::uint32_t d = 0; d < active_pos.size(); ++d) {
            std::uint32_t j = active_pos[d];
            const MultisetInfo& info = multisets[chosen[d]];
            std::uint32_t extra =
                d + 1 == active_pos.size() ? last_extra : comp_extra_[d];
            std::uint64_t w = info.support_size + extra;
            weights[j] = w;
            for (std::uint32_t i = 0; i < m; ++i) {
                ones[j][i] = w * info.ones[i];
                zeros[j][i] = w * (r - info.ones[i]);
            }
        }
        score();
    }

    void evaluate_all_zero() {
        ++evals;
        if (counting) return;
        for (std::uint32_t j = 0; j < k; ++j) {
            std::fill(zeros[j].begin(), zeros[j].end(), 0);
            std::fill(ones[j].begin(), ones[j].end(), 0);
        }
        std::fill(weights.begin(), weights.end(), 0);
        score();
    }

    // Weighted counts were pre-multiplied into zeros/ones, so the unit-weight
    // argmin below is exactly the weighted argmin with canonical ties.
    void score() {
        for (std::uint32_t j = 0; j < k; ++j) {
            if (weights[j] == 0) {
                std::fill(zeros[j].begin(), zeros[j].end(), 0);
                std::fill(ones[j].begin(), ones[j].end(), 0);
            }
        }
        unit_weight_best(zeros, ones, f, masks_scratch);
        CenterSet c = centers_from_masks(k, m, masks_scratch);
        std::uint64_t cost = x.empty() ? 0 : clustering_cost(x, c);
        if (cost < best_cost) {
            best_cost = cost;
            best_masks = masks_scratch;
        }
    }
};

}  // namespace

ExhaustiveResult ptas_solve(const Dataset& x, std::uint32_t k, const RelationFamily& f,
                            double eps, double c, std::uint64_t eval_guard) {
    if (k != f.arity())
        throw std::invalid_argument("ptas_solve: k must equal the family arity");
    if (!x.empty() && x.dim() != f.coord_count())
        throw std::invalid_argument("ptas_solve: dimension mismatch");
    if (x.size() > 64)
        throw BudgetError("ptas_solve: supports n <= 64 (support masks are one word)");

    std::uint32_t n = static_cast<std::uint32_t>(x.size());
    std::uint32_t m = f.coord_count();
    std::uint64_t r = sample_size(k, eps, c);

    std::vector<MultisetInfo> multisets;
    if (n > 0) {
        if (r > 64)
            throw BudgetError("ptas_solve: derived sample size too large to enumerate");
        enumerate_multisets(x, static_cast<std::uint32_t>(r), multisets, 200'000);
    }

    PtasSearch search{x, k, m, n, r, f, multisets, eval_guard, true};
    search.zeros.assign(k, std::vector<std::uint64_t>(m, 0));
    search.ones.assign(k, std::vector<std::uint64_t>(m, 0));
    search.weights.assign(k, 0);

    // Counting pass enforces the guard before any real work happens.
    for (std::uint32_t zero_mask = 0; zero_mask < (1u << k); ++zero_mask)
        search.run(zero_mask);

    search.counting = false;
    search.evals = 0;
    for (std::uint32_t zero_mask = 0; zero_mask < (1u << k); ++zero_mask)
        search.run(zero_mask);

    ExhaustiveResult res;
    res.centers = centers_from_masks(k, m, search.best_masks);
    res.cost = x.empty() ? 0 : clustering_cost(x, res.centers);
    res.assignment = x.empty() ? Partition{k, {}} : induced_partition(x, res.centers);
    return res;
}

}  // namespace bcc
