#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "bcc/errors.hpp"
#include "bcc/exhaustive.hpp"
#include "bcc/io.hpp"
#include "bcc/reductions.hpp"
#include "bcc/sampling_lab.hpp"
#include "bcc/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

bcc::Rational parse_decimal_rational(const std::string& text) {
    std::string s = text;
    std::size_t dot = s.find('.');
    std::string int_part = dot == std::string::npos ? s : s.substr(0, dot);
    std::string frac_part = dot == std::string::npos ? "" : s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
        throw bcc::InputError("invalid decimal number: " + text);
    for (char ch : int_part + frac_part)
        if (ch < '0' || ch > '9') throw bcc::InputError("invalid decimal number: " + text);
    if (frac_part.size() > 18) throw bcc::InputError("too many decimal places: " + text);
    std::uint64_t num = 0;
    for (char ch : int_part + frac_part) {
        if (num > (UINT64_MAX - 9) / 10) throw bcc::InputError("number too large: " + text);
        num = num * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    return bcc::Rational(num, den);
}

struct SolveFlags {
    std::string dataset_path;
    std::string relations_path;
    std::uint32_t k = 0;  // 0 = take from the relation file
    std::string epsilon = "0.5";
    std::uint64_t seed = 1;
    std::uint64_t trials = 50;
    std::uint64_t time_budget_ms = 0;
    std::uint64_t max_nodes = 1500;
    std::uint64_t max_samples = 8;
    std::uint64_t grid_stride = 0;
    std::string mode = "randomized";
    double c = 2.0;
    double c_prime = 1.0;
    std::uint32_t threads = 1;
    std::uint64_t guard = 0;  // 0 = mode default (oracle 1e7 states, ptas 4e8 evals)
};

void add_solver_flags(CLI::App* cmd, SolveFlags& fl, bool with_mode) {
    cmd->add_option("--epsilon", fl.epsilon, "approximation accuracy (decimal)");
    cmd->add_option("--seed", fl.seed, "master random seed");
    cmd->add_option("--trials", fl.trials, "trial cap per driver subset");
    cmd->add_option("--time-budget-ms", fl.time_budget_ms,
                    "wall-clock budget (0 = unlimited; binding it forfeits determinism)");
    cmd->add_option("--max-nodes", fl.max_nodes, "worklist node budget per run")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-samples", fl.max_samples,
                    "per-set sample cap inside a run (0 = derived formula value)");
    cmd->add_option("--grid-stride", fl.grid_stride,
                    "weight-grid exponent stride (0 = automatic)");
    cmd->add_option("--c", fl.c, "sample-size constant")->check(CLI::PositiveNumber);
    cmd->add_option("--cprime", fl.c_prime, "success-probability exponent constant")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", fl.threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--guard", fl.guard, "enumeration guard for exhaustive modes");
    if (with_mode)
        cmd->add_option("--mode", fl.mode, "randomized | ptas | oracle")
            ->check(CLI::IsMember({"randomized", "ptas", "oracle"}));
}

bcc::Solution run_mode(const bcc::Dataset& x, std::uint32_t k, const bcc::RelationFamily& f,
                       const SolveFlags& fl, const std::string& mode) {
    bcc::Solution sol;
    if (mode == "randomized") {
        bcc::Budget budget{fl.trials, fl.time_budget_ms, fl.max_nodes, fl.max_samples};
        sol = bcc::solve(x, k, f, parse_decimal_rational(fl.epsilon), fl.c, fl.c_prime,
                         fl.grid_stride, fl.seed, budget, fl.threads);
        return sol;
    }
    bcc::ExhaustiveResult res;
    if (mode == "oracle") {
        res = bcc::oracle_optimum(x, k, f, fl.guard ? fl.guard : 10'000'000);
    } else {
        res = bcc::ptas_solve(x, k, f, parse_decimal_rational(fl.epsilon).value(), fl.c,
                              fl.guard ? fl.guard : 400'000'000);
    }
    sol.centers = std::move(res.centers);
    sol.cost = res.cost;
    sol.assignment = std::move(res.assignment);
    sol.index_set = bcc::IndexSet::full(k);
    sol.seed = fl.seed;
    sol.trials_used = 1;
    sol.truncated = false;
    return sol;
}

int run_solve_like(const SolveFlags& fl, const bcc::RelationFamily& parsed_family,
                   const bcc::Dataset& x) {
    bcc::RelationFamily family = parsed_family.with_coords(x.dim());
    std::uint32_t k = family.arity();
    if (fl.k != 0 && fl.k != k)
        throw bcc::InputError("--k (" + std::to_string(fl.k) +
                              ") disagrees with the relation arity (" + std::to_string(k) + ")");
    bcc::Solution sol = run_mode(x, k, family, fl, fl.mode);
    std::cout << bcc::emit_solution(sol, fl.mode);
    return kExitOk;
}

int run_lemma_lab(const std::string& config_path, const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) throw bcc::InputError("cannot open file: " + config_path);
    nlohmann::json cfg;
    try {
        in >> cfg;
    } catch (const nlohmann::json::exception& e) {
        throw bcc::InputError(std::string("invalid JSON config: ") + e.what());
    }

    std::uint64_t trials = cfg.value("trials", std::uint64_t{20000});
    std::uint64_t seed = cfg.value("seed", std::uint64_t{1});
    std::vector<double> c_sweep = cfg.value("c_sweep", std::vector<double>{});

    std::ostringstream csv;
    csv << "problem,k,relation_size,eps,c,r,trials,d_min,mean_d,std_error,threshold,pass\n";
    std::uint64_t problem_index = 0;
    for (const auto& item : cfg.at("problems")) {
        bcc::SamplingProblem prob;
        prob.name = item.value("name", "p" + std::to_string(problem_index));
        std::uint32_t k = item.at("k").get<std::uint32_t>();
        std::vector<std::vector<int>> tuples;
        for (const auto& t : item.at("tuples")) {
            std::string s = t.get<std::string>();
            std::vector<int> entries;
            for (char ch : s) entries.push_back(ch == '1' ? 1 : 0);
            tuples.push_back(std::move(entries));
        }
        prob.relation = bcc::Relation::from_tuples(k, tuples);
        prob.p = item.at("p").get<std::vector<double>>();
        prob.w = item.at("w").get<std::vector<double>>();
        prob.eps = item.value("epsilon", 0.3);
        prob.r = item.value("r", std::uint64_t{0});
        prob.c = item.value("c", 2.0);

        std::vector<double> cs = c_sweep.empty() ? std::vector<double>{prob.c} : c_sweep;
        for (double c : cs) {
            bcc::SamplingProblem variant = prob;
            variant.c = c;
            variant.r = prob.r;  // explicit r wins over the sweep
            bcc::TrialStats st = bcc::sampling_experiment(
                variant, trials, bcc::Rng(seed).derive(problem_index));
            csv << prob.name << ',' << k << ',' << prob.relation.size() << ',' << prob.eps
                << ',' << c << ',' << st.r << ',' << st.trials << ',' << st.d_min << ','
                << st.mean_d << ',' << st.std_error << ',' << st.threshold << ','
                << (st.pass ? "1" : "0") << '\n';
        }
        ++problem_index;
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw bcc::InputError("cannot write file: " + out_path);
        out << csv.str();
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary constrained clustering solver"};
    app.require_subcommand(1);

    SolveFlags solve_fl, kmeans_fl, lowrank_fl, oracle_fl, ptas_fl;

    auto* solve_cmd = app.add_subcommand("solve", "solve a dataset against a relation family");
    solve_cmd->add_option("dataset", solve_fl.dataset_path)->required();
    solve_cmd->add_option("relations", solve_fl.relations_path)->required();
    solve_cmd->add_option("--k", solve_fl.k, "cluster count (checked against the relation file)");
    add_solver_flags(solve_cmd, solve_fl, true);

    auto* kmeans_cmd = app.add_subcommand("kmeans", "cluster with unconstrained centers");
    kmeans_cmd->add_option("dataset", kmeans_fl.dataset_path)->required();
    kmeans_cmd->add_option("--k", kmeans_fl.k, "cluster count")->required();
    add_solver_flags(kmeans_cmd, kmeans_fl, true);

    auto* lowrank_cmd = app.add_subcommand("lowrank", "low-rank binary matrix approximation");
    std::string lowrank_field = "gf2";
    std::uint32_t lowrank_rank = 1;
    lowrank_cmd->add_option("matrix", lowrank_fl.dataset_path)->required();
    lowrank_cmd->add_option("--rank", lowrank_rank, "target rank")->required();
    lowrank_cmd->add_option("--field", lowrank_field, "gf2 | boolean")
        ->check(CLI::IsMember({"gf2", "boolean"}));
    add_solver_flags(lowrank_cmd, lowrank_fl, true);

    auto* baseline_cmd = app.add_subcommand("baseline", "rank-1 best-column baseline");
    std::string baseline_path;
    baseline_cmd->add_option("matrix", baseline_path)->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum by assignment enumeration");
    oracle_cmd->add_option("dataset", oracle_fl.dataset_path)->required();
    oracle_cmd->add_option("relations", oracle_fl.relations_path)->required();
    oracle_cmd->add_option("--k", oracle_fl.k);
    add_solver_flags(oracle_cmd, oracle_fl, false);
    oracle_fl.mode = "oracle";

    auto* ptas_cmd = app.add_subcommand("ptas", "deterministic enumeration scheme");
    ptas_cmd->add_option("dataset", ptas_fl.dataset_path)->required();
    ptas_cmd->add_option("relations", ptas_fl.relations_path)->required();
    ptas_cmd->add_option("--k", ptas_fl.k);
    add_solver_flags(ptas_cmd, ptas_fl, false);
    ptas_fl.mode = "ptas";

    auto* lab_cmd = app.add_subcommand("lemma-lab", "sampling-estimate statistics");
    std::string lab_config, lab_out;
    lab_cmd->add_option("config", lab_config)->required();
    lab_cmd->add_option("--output", lab_out, "CSV output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed()) {
            return run_solve_like(solve_fl, bcc::parse_relations_file(solve_fl.relations_path),
                                  bcc::parse_dataset_file(solve_fl.dataset_path));
        }
        if (kmeans_cmd->parsed()) {
            bcc::Dataset x = bcc::parse_dataset_file(kmeans_fl.dataset_path);
            if (kmeans_fl.k < 1 || kmeans_fl.k > bcc::kMaxArity)
                throw bcc::InputError("--k must be between 1 and " +
                                      std::to_string(bcc::kMaxArity));
            auto family = bcc::RelationFamily::shared(x.dim(),
                                                      bcc::kmeans_relation(kmeans_fl.k));
            bcc::Solution sol = run_mode(x, kmeans_fl.k, family, kmeans_fl, kmeans_fl.mode);
            std::cout << bcc::emit_solution(sol, kmeans_fl.mode);
            return kExitOk;
        }
        if (lowrank_cmd->parsed()) {
            bcc::LowRankInstance inst;
            inst.a = bcc::parse_matrix_file(lowrank_fl.dataset_path);
            inst.rank = lowrank_rank;
            inst.field = lowrank_field == "gf2" ? bcc::RankField::GF2 : bcc::RankField::Boolean;
            bcc::ClusteringInstance reduced = bcc::matrix_to_instance(inst);
            bcc::Solution sol =
                run_mode(reduced.x, reduced.k, reduced.family, lowrank_fl, lowrank_fl.mode);
            auto [b, cost] = bcc::centers_to_matrix(inst, sol.centers);
            std::cout << bcc::emit_solution_with_matrix(sol, lowrank_fl.mode, b, cost);
            return kExitOk;
        }
        if (baseline_cmd->parsed()) {
            bcc::BaselineResult res = bcc::best_column_baseline(bcc::parse_matrix_file(baseline_path));
            std::cout << bcc::emit_matrix_result(res.b, res.cost, res.column);
            return kExitOk;
        }
        if (oracle_cmd->parsed()) {
            oracle_fl.mode = "oracle";
            return run_solve_like(oracle_fl, bcc::parse_relations_file(oracle_fl.relations_path),
                                  bcc::parse_dataset_file(oracle_fl.dataset_path));
        }
        if (ptas_cmd->parsed()) {
            ptas_fl.mode = "ptas";
            return run_solve_like(ptas_fl, bcc::parse_relations_file(ptas_fl.relations_path),
                                  bcc::parse_dataset_file(ptas_fl.dataset_path));
        }
        if (lab_cmd->parsed()) {
            return run_lemma_lab(lab_config, lab_out);
        }
    } catch (const bcc::BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitBudget;
    } catch (const bcc::InputError& e) {
        std::cerr << "input: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitInput;
}
