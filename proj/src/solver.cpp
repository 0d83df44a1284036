#include "bcc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <deque>
#include <thread>
#include <unordered_set>

#include "bcc/errors.hpp"

namespace bcc {

namespace {

std::uint64_t pow5(std::uint32_t k) {
    std::uint64_t v = 1;
    for (std::uint32_t i = 0; i < k; ++i) v *= 5;
    return v;
}

std::uint64_t now_ms() {
    using namespace std::chrono;
    return static_cast<std::uint64_t>(
        duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count());
}

}  // namespace

double ParameterSchedule::log_h(std::uint32_t k_prime) const {
    if (k_prime <= 1) return 0.0;
    return (k_prime - 1) * (std::log(static_cast<double>(k)) - std::log(alpha));
}

ParameterSchedule make_schedule(std::uint32_t k, std::uint32_t k_star, Rational eps, double c) {
    if (k < 1 || k_star < k || eps.num == 0 || c <= 0.0)
        throw std::invalid_argument("make_schedule: need k >= 1, k_star >= k, eps > 0, c > 0");
    if (k > kMaxArity)
        throw std::invalid_argument("make_schedule: k exceeds the arity cap");
    ParameterSchedule s;
    s.k = k;
    s.k_star = k_star;
    s.eps_exact = eps;
    s.eps = eps.value();
    s.c = c;
    s.delta_prime_exact = eps.divided_by(40ull * k_star);
    s.alpha_exact = s.delta_prime_exact.divided_by(pow5(k) - 1);
    s.delta_hat_exact = s.alpha_exact.divided_by(7);
    s.delta_prime = s.delta_prime_exact.value();
    s.alpha = s.alpha_exact.value();
    s.delta_hat = s.delta_hat_exact.value();
    s.eps_hat = s.delta_hat;
    double dp = s.delta_prime;
    s.beta = std::pow(s.alpha / k, static_cast<double>(k - 1)) * dp / (2.0 * k * (1.0 + dp));
    s.r = sample_size(k, s.eps_hat, c);
    return s;
}

std::uint64_t grid_top_exponent(const Rational& delta, double log_h) {
    if (log_h <= 0.0) return 0;
    long double base_log =
        log1pl(static_cast<long double>(delta.num) / static_cast<long double>(delta.den));
    long double e = static_cast<long double>(log_h) / base_log;
    long double rounded = roundl(e);
    if (fabsl(e - rounded) < 1e-9L * std::max(1.0L, fabsl(e)))
        return static_cast<std::uint64_t>(rounded);
    return static_cast<std::uint64_t>(ceill(e));
}

std::vector<std::uint64_t> weight_grid_exponents(const Rational& delta, double log_h,
                                                 std::uint64_t stride) {
    std::uint64_t top = grid_top_exponent(delta, log_h);
    if (stride == 0) stride = 1;
    std::vector<std::uint64_t> exps;
    for (std::uint64_t e = 0; e < top; e += stride) exps.push_back(e);
    exps.push_back(top);
    return exps;
}

std::vector<std::uint32_t> halve(const Dataset& x, const std::vector<std::uint32_t>& s,
                                 const CenterSet& c1) {
    if (c1.empty())
        throw std::invalid_argument("halve: distances to an empty center set are undefined");
    std::size_t keep = (s.size() + 1) / 2;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> order;
    order.reserve(s.size());
    for (std::uint32_t idx : s)
        order.emplace_back(distance_to_set(x[idx], c1).first, idx);
    std::nth_element(order.begin(), order.begin() + (order.size() - keep), order.end());
    std::vector<std::uint32_t> out;
    out.reserve(keep);
    for (std::size_t t = order.size() - keep; t < order.size(); ++t)
        out.push_back(order[t].second);
    std::sort(out.begin(), out.end());
    return out;
}

double success_log_prob(std::uint32_t k_star, std::uint32_t k, double eps, double c_prime) {
    if (k < 1 || k_star < 1 || eps <= 0.0)
        throw std::invalid_argument("success_log_prob: invalid inputs");
    double first = k * (std::log(eps) - std::log1p(eps));
    double ln_denom = (k - 1) * std::log(40.0 * k * k_star * (pow5(k) - 1)) +
                      std::log(2.0 * k) + std::log(40.0 * k_star + eps);
    double ln_base = k * std::log(eps) - ln_denom;
    double exponent = c_prime * k * static_cast<double>(k) / (eps * eps) * std::log2(1.0 / eps);
    double lp = first + exponent * ln_base;
    return std::min(lp, 0.0);
}

std::vector<IndexSet> subsets_of_size(std::uint32_t k, std::uint32_t q) {
    std::vector<IndexSet> out;
    if (q > k) return out;
    std::vector<std::uint32_t> pick(q);
    for (std::uint32_t j = 0; j < q; ++j) pick[j] = j + 1;
    for (;;) {
        out.push_back(IndexSet(pick));
        // next combination in lexicographic order
        std::int32_t pos = static_cast<std::int32_t>(q) - 1;
        while (pos >= 0 && pick[pos] == k - (q - 1 - static_cast<std::uint32_t>(pos))) --pos;
        if (pos < 0) break;
        ++pick[pos];
        for (std::uint32_t j = static_cast<std::uint32_t>(pos) + 1; j < q; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return out;
}

namespace {

struct Node {
    CenterSet centers;
    std::shared_ptr<const std::vector<std::uint32_t>> active;
    std::uint32_t gamma_steps = 0;
};

struct BestTracker {
    std::uint64_t cost = UINT64_MAX;
    CenterSet centers;
    bool valid = false;

    void offer(std::uint64_t c, CenterSet&& cs) {
        if (!valid || c < cost) {
            cost = c;
            centers = std::move(cs);
            valid = true;
        }
    }
};

std::string center_key(const CenterSet& c) {
    std::string key;
    key.reserve(c.size() * (c.dim() / 8 + 5));
    for (std::size_t j = 0; j < c.size(); ++j) {
        key += static_cast<char>(c.indices()[j]);
        key += c[j].to_string();
        key += '|';
    }
    return key;
}

}  // namespace

SubSolution worklist_solve(const Dataset& x, std::uint32_t k, const RelationFamily& f,
                           Rational eps, std::uint32_t k_star, double c,
                           std::uint64_t grid_stride, Rng rng, const Budget& budget,
                           std::uint64_t wall_deadline_ms) {
    if (f.arity() != k)
        throw std::invalid_argument("worklist_solve: k must equal the family arity");
    ParameterSchedule sched = make_schedule(k, k_star, eps, c);

    // Precompute strided weight grids per extension size.
    std::vector<std::vector<std::uint64_t>> grids(k + 1);
    constexpr std::uint64_t kAutoGridPoints = 4;
    for (std::uint32_t kp = 1; kp <= k; ++kp) {
        std::uint64_t stride = grid_stride;
        if (stride == 0) {
            std::uint64_t top = grid_top_exponent(sched.delta_hat_exact, sched.log_h(kp));
            stride = std::max<std::uint64_t>(1, (top + kAutoGridPoints - 2) / (kAutoGridPoints - 1));
        }
        grids[kp] = weight_grid_exponents(sched.delta_hat_exact, sched.log_h(kp), stride);
    }

    auto all_indices = std::make_shared<const std::vector<std::uint32_t>>([&] {
        std::vector<std::uint32_t> v(x.size());
        for (std::uint32_t i = 0; i < v.size(); ++i) v[i] = i;
        return v;
    }());

    WorklistStats stats;
    BestTracker best;
    std::uint64_t rng_counter = 0;

    auto evaluate = [&](const CenterSet& partial) {
        CenterSet full = extend_solution(x, f, partial, IndexSet(partial.indices()));
        std::uint64_t cost = clustering_cost(x, full);
        ++stats.candidates;
        best.offer(cost, std::move(full));
    };

    std::deque<Node> queue;
    queue.push_back(Node{CenterSet{}, all_indices, 0});
    evaluate(queue.front().centers);

    while (!queue.empty()) {
        if (stats.pops >= budget.max_worklist_nodes ||
            (wall_deadline_ms != 0 && now_ms() >= wall_deadline_ms)) {
            stats.truncated = true;
            break;
        }
        Node node = std::move(queue.front());
        queue.pop_front();
        ++stats.pops;

        std::uint32_t have = static_cast<std::uint32_t>(node.centers.size());
        if (have == k || node.active->empty()) continue;

        // Halving child: drop the near half of the active vectors. Skipped for
        // empty center sets (no distances) and when it would not shrink.
        if (have > 0) {
            auto kept = halve(x, *node.active, node.centers);
            if (kept.size() < node.active->size()) {
                queue.push_back(Node{node.centers,
                                     std::make_shared<const std::vector<std::uint32_t>>(std::move(kept)),
                                     node.gamma_steps});
                ++stats.pushes;
            }
        }

        std::unordered_set<std::string> seen_children;
        std::uint32_t next_steps = node.gamma_steps + 1;
        if (next_steps > k)
            throw std::logic_error("worklist_solve: gamma step budget exceeded");
        stats.max_gamma_steps = std::max(stats.max_gamma_steps, next_steps);

        for (const IndexSet& I : subsets_of_size(k, have)) {
            if (!satisfies(node.centers, f.project_family(I))) continue;
            RelationFamily reduced = reduce_family(f, I, node.centers);
            IndexSet comp = I.complement(k);
            std::uint32_t ell = k - have;
            for (std::uint32_t kp = 1; kp <= ell; ++kp) {
                const auto& exps = grids[kp];
                for (const IndexSet& Ip : subsets_of_size(ell, kp)) {
                    RelationFamily sub = reduced.project_family(Ip);
                    // Odometer over weight tuples, last position fastest.
                    std::vector<std::uint32_t> pos(kp, 0);
                    for (;;) {
                        std::vector<std::uint64_t> tuple(kp);
                        for (std::uint32_t t = 0; t < kp; ++t) tuple[t] = exps[pos[t]];
                        WeightVector w = WeightVector::geometric(sched.delta_hat_exact, tuple);
                        Rng child_rng = rng.derive(rng_counter++);
                        std::uint64_t r_eff = budget.max_sample_size != 0
                                                  ? std::min(sched.r, budget.max_sample_size)
                                                  : sched.r;
                        CenterSet grown =
                            sample_candidate_centers(x, *node.active, kp, sub,
                                                     sched.delta_hat_exact, sched.eps_hat,
                                                     sched.c, w, child_rng, r_eff);
                        // Merge: existing centers keep the binding I, new ones
                        // land on the complement positions selected by Ip.
                        std::vector<std::pair<std::uint32_t, BinaryVector>> merged;
                        merged.reserve(k);
                        for (std::uint32_t j = 0; j < have; ++j)
                            merged.emplace_back(I[j], node.centers[j]);
                        for (std::uint32_t t = 0; t < kp; ++t)
                            merged.emplace_back(comp[Ip[t] - 1], grown[t]);
                        std::sort(merged.begin(), merged.end(),
                                  [](const auto& a, const auto& b) { return a.first < b.first; });
                        std::vector<BinaryVector> vecs;
                        std::vector<std::uint32_t> idx;
                        vecs.reserve(k);
                        idx.reserve(k);
                        for (auto& pr : merged) {
                            idx.push_back(pr.first);
                            vecs.push_back(std::move(pr.second));
                        }
                        CenterSet child(std::move(vecs), std::move(idx));
                        if (seen_children.insert(center_key(child)).second) {
                            evaluate(child);
                            if (child.size() < k) {
                                queue.push_back(Node{std::move(child), node.active, next_steps});
                                ++stats.pushes;
                            }
                        }
                        // advance odometer
                        std::int32_t t = static_cast<std::int32_t>(kp) - 1;
                        while (t >= 0 && ++pos[t] == exps.size()) {
                            pos[t] = 0;
                            --t;
                        }
                        if (t < 0) break;
                    }
                }
            }
        }
    }

    SubSolution out;
    out.centers = std::move(best.centers);
    out.cost = best.cost;
    out.stats = stats;
    return out;
}

Solution solve(const Dataset& x, std::uint32_t k, const RelationFamily& f, Rational eps,
               double c, double c_prime, std::uint64_t grid_stride, std::uint64_t seed,
               const Budget& budget, std::uint32_t threads) {
    if (f.arity() != k)
        throw std::invalid_argument("solve: k must equal the family arity");
    if (!x.empty() && x.dim() != f.coord_count())
        throw std::invalid_argument("solve: dimension mismatch");

    Rational eps_quarter = eps.divided_by(4);
    double eps_quarter_d = eps_quarter.value();

    struct Task {
        std::uint32_t subset_rank;
        std::uint32_t trial;
    };
    std::vector<IndexSet> subsets;
    std::vector<Task> tasks;
    std::uint32_t rank = 0;
    for (std::uint32_t q = 1; q <= k; ++q) {
        for (IndexSet& I : subsets_of_size(k, q)) {
            double lp = success_log_prob(k, q, eps_quarter_d, c_prime);
            std::uint64_t want;
            if (-lp > 60.0) {
                want = budget.max_trials;
            } else {
                want = static_cast<std::uint64_t>(std::ceil(std::exp(-lp)));
                want = std::max<std::uint64_t>(1, std::min(want, budget.max_trials));
            }
            for (std::uint64_t t = 0; t < want; ++t)
                tasks.push_back(Task{rank, static_cast<std::uint32_t>(t)});
            subsets.push_back(std::move(I));
            ++rank;
        }
    }

    std::uint64_t deadline = 0;
    if (budget.max_wall_ms != 0) deadline = now_ms() + budget.max_wall_ms;

    struct TaskResult {
        std::uint64_t cost = UINT64_MAX;
        CenterSet centers;
        bool truncated = false;
        std::uint32_t max_gamma_steps = 0;
    };
    std::vector<TaskResult> results(tasks.size());
    Rng master(seed);

    auto run_task = [&](std::size_t t) {
        const Task& task = tasks[t];
        const IndexSet& I = subsets[task.subset_rank];
        RelationFamily sub_family = f.project_family(I);
        Rng task_rng = master.derive(task.subset_rank).derive(task.trial);
        SubSolution sub = worklist_solve(x, static_cast<std::uint32_t>(I.size()), sub_family,
                                         eps_quarter, k, c, grid_stride, task_rng, budget,
                                         deadline);
        CenterSet placed(sub.centers.vectors(), I.members());
        CenterSet full = extend_solution(x, f, placed, I);
        TaskResult res;
        res.cost = clustering_cost(x, full);
        res.centers = std::move(full);
        res.truncated = sub.stats.truncated;
        res.max_gamma_steps = sub.stats.max_gamma_steps;
        results[t] = std::move(res);
    };

    std::uint32_t workers = std::max<std::uint32_t>(1, threads);
    if (workers == 1 || tasks.size() <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::uint32_t spawn = static_cast<std::uint32_t>(
            std::min<std::size_t>(workers, tasks.size()));
        for (std::uint32_t w = 0; w < spawn; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t t = next.fetch_add(1);
                    if (t >= tasks.size()) return;
                    run_task(t);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // Deterministic min-reduction: tasks are ordered by (|I|, I lexicographic,
    // trial), so a strict-less scan realizes the documented tie-break.
    std::size_t winner = 0;
    for (std::size_t t = 1; t < tasks.size(); ++t)
        if (results[t].cost < results[winner].cost) winner = t;

    Solution sol;
    sol.centers = results[winner].centers;
    sol.cost = results[winner].cost;
    sol.assignment = x.empty() ? Partition{k, {}} : induced_partition(x, sol.centers);
    sol.index_set = subsets[tasks[winner].subset_rank];
    sol.seed = seed;
    sol.trials_used = tasks.size();
    sol.trial_index = tasks[winner].trial;
    sol.delta_prime = eps_quarter_d / (40.0 * k);
    for (const auto& r : results) {
        sol.truncated = sol.truncated || r.truncated;
        sol.max_gamma_steps = std::max(sol.max_gamma_steps, r.max_gamma_steps);
    }
    return sol;
}

}  // namespace bcc
