// phipart: command-line front end for the equal-mass partition divergence
// estimator, the sample-size planner and the bound verification suites.

#include "phipart/bounds.hpp"
#include "phipart/error.hpp"
#include "phipart/estimator.hpp"
#include "phipart/harness.hpp"
#include "phipart/partitioner.hpp"
#include "phipart/samples.hpp"
#include "phipart/serialize.hpp"
#include "phipart/synthdata.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitViolation = 3;

void emit(const std::string& out_path, const nlohmann::json& report) {
    if (out_path.empty() || out_path == "-") {
        std::cout << phipart::format_report(report);
    } else {
        phipart::write_report(out_path, report);
        std::cerr << "wrote " << out_path << "\n";
    }
}

phipart::PartitionOptions partition_options(const std::optional<double>& jitter, std::uint64_t seed) {
    phipart::PartitionOptions opts;
    opts.jitter_sigma = jitter;
    opts.jitter_seed = seed;
    return opts;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equal-mass partition estimator of phi-divergences"};
    app.require_subcommand(1);

    std::string out;
    std::uint64_t seed = 0;
    std::size_t threads = 0;

    // partition
    auto* part = app.add_subcommand("partition", "Build the equal-mass partition of a sample file");
    std::string part_samples;
    std::size_t part_m0 = 2;
    std::optional<double> part_jitter;
    part->add_option("--samples", part_samples, "CSV of Q samples")->required()->check(CLI::ExistingFile);
    part->add_option("--m0", part_m0, "cells per axis")->required()->check(CLI::PositiveNumber);
    part->add_option("--jitter", part_jitter, "break ties with Uniform(-sigma, sigma) noise");
    part->add_option("--seed", seed, "jitter seed");
    part->add_option("--out", out, "output JSON (default stdout)");

    // estimate
    auto* est = app.add_subcommand("estimate", "Estimate D_phi(P || Q) from two sample files");
    std::string est_p, est_q, est_phi = "kl", est_partition_out;
    std::size_t est_m0 = 2;
    std::optional<double> est_jitter;
    bool est_unweighted = false;
    est->add_option("--p", est_p, "CSV of P samples")->required()->check(CLI::ExistingFile);
    est->add_option("--q", est_q, "CSV of Q samples")->required()->check(CLI::ExistingFile);
    est->add_option("--m0", est_m0, "cells per axis")->required()->check(CLI::PositiveNumber);
    est->add_option("--phi", est_phi, "kl|hellinger|tv|chi2")
        ->check(CLI::IsMember({"kl", "hellinger", "tv", "chi2"}));
    est->add_option("--jitter", est_jitter, "break ties in Q with Uniform(-sigma, sigma) noise");
    est->add_option("--seed", seed, "jitter seed");
    est->add_flag("--unweighted", est_unweighted, "debug: omit the Q_n(I) cell weight");
    est->add_option("--partition-out", est_partition_out, "also write the partition JSON here");
    est->add_option("--out", out, "output JSON (default stdout)");

    // sample
    auto* smp = app.add_subcommand("sample", "Draw samples from a distribution spec");
    std::string smp_spec;
    std::size_t smp_n = 0;
    smp->add_option("--spec", smp_spec, "distribution JSON")->required()->check(CLI::ExistingFile);
    smp->add_option("--n", smp_n, "number of points")->required()->check(CLI::PositiveNumber);
    smp->add_option("--seed", seed, "RNG seed");
    smp->add_option("--out", out, "output CSV (default stdout)");

    // plan
    auto* plan = app.add_subcommand("plan", "Sample-size and cell-count planner");
    std::size_t plan_m = 0, plan_d = 1;
    double plan_eps = 0.1, plan_delta = 0.05;
    std::optional<std::string> plan_phi;
    phipart::RegularityParams params;
    phipart::PlannerConstants constants;
    plan->add_option("--m", plan_m, "number of cells")->required();
    plan->add_option("--d", plan_d, "dimension")->required();
    plan->add_option("--eps", plan_eps, "accuracy")->required();
    plan->add_option("--delta", plan_delta, "failure probability")->required();
    plan->add_option("--phi", plan_phi, "family for the m-selection rule")
        ->check(CLI::IsMember({"kl", "hellinger", "tv", "chi2"}));
    plan->add_option("--c", params.c, "tail constant c");
    plan->add_option("--alpha", params.alpha, "tail exponent alpha");
    plan->add_option("--L1", params.L1, "density Lipschitz constant");
    plan->add_option("--L2", params.L2, "density ratio bound");
    plan->add_option("--C", constants.C, "leading constant of the m rule");
    plan->add_option("--K3", constants.K3, "K3 constant of the m rule");
    plan->add_option("--out", out, "output JSON (default stdout)");

    // verify-bounds
    auto* vb = app.add_subcommand("verify-bounds", "Run a bound verification suite");
    std::string vb_suite = "gamma";
    std::size_t vb_seeds = 100;
    vb->add_option("--suite", vb_suite, "gamma|partition_error|growth|chernoff")
        ->check(CLI::IsMember({"gamma", "partition_error", "partition-error", "growth", "chernoff"}));
    vb->add_option("--seeds", vb_seeds, "number of seeds")->check(CLI::PositiveNumber);
    vb->add_option("--seed", seed, "base seed");
    vb->add_option("--out", out, "output JSON (default stdout)");

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "Convergence study over (n, m0) schedules");
    std::string bench_config, bench_csv;
    std::optional<std::uint64_t> bench_seed;
    bench->add_option("--config", bench_config, "experiment JSON")->required()->check(CLI::ExistingFile);
    bench->add_option("--seed", bench_seed, "override base_seed");
    bench->add_option("--threads", threads, "worker threads (0: all cores)");
    bench->add_option("--csv", bench_csv, "also write the rows as CSV");
    bench->add_option("--out", out, "output JSON (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    }

    try {
        if (*part) {
            const auto samples = phipart::load_samples(part_samples);
            const auto partition = phipart::build_partition(samples, part_m0, partition_options(part_jitter, seed));
            emit(out, phipart::to_json(partition));
        } else if (*est) {
            const auto p = phipart::load_samples(est_p);
            const auto q = phipart::load_samples(est_q);
            const auto family = phipart::PhiFamily::from_name(est_phi);
            phipart::EstimateOptions opts;
            opts.partition = partition_options(est_jitter, seed);
            opts.unweighted = est_unweighted;
            if (!est_partition_out.empty()) {
                const auto partition = phipart::build_partition(q, est_m0, opts.partition);
                phipart::write_report(est_partition_out, phipart::to_json(partition));
            }
            const auto result = phipart::estimate_divergence(p, q, est_m0, family, opts);
            auto j = phipart::to_json(result);
            if (est_unweighted) j["unweighted"] = true;
            emit(out, j);
        } else if (*smp) {
            const auto spec = phipart::distribution_from_json(phipart::read_json(smp_spec));
            const auto samples = phipart::draw(spec, smp_n, seed);
            if (out.empty() || out == "-") {
                std::cout << phipart::format_samples_csv(samples);
            } else {
                phipart::write_samples(out, samples);
                std::cerr << "wrote " << samples.rows() << " rows to " << out << "\n";
            }
        } else if (*plan) {
            auto report = phipart::n_star(plan_m, plan_d, plan_eps, plan_delta);
            report.constants_used = constants;
            auto j = phipart::to_json(report);
            j["log_growth_bound_at_n_star"] =
                phipart::log_growth_bound(std::ceil(report.n_star), static_cast<double>(plan_m), plan_d);
            const double R = phipart::tail_radius(params, plan_eps);
            const auto gb = phipart::gamma_bounds(static_cast<double>(plan_m), plan_d, R);
            j["gamma_bounds"] = {{"R", R}, {"g1", gb.g1}, {"g3", gb.g3},
                                 {"n_for_gamma2", phipart::n_for_gamma2(plan_eps, plan_delta)}};
            if (plan_phi) {
                const auto family = phipart::PhiFamily::from_name(*plan_phi);
                j["m_required"] = phipart::required_m(params, family, plan_d, plan_eps, constants);
                j["regularity"] = {{"c", params.c}, {"alpha", params.alpha}, {"L1", params.L1}, {"L2", params.L2}};
                j["family"] = *plan_phi;
            }
            emit(out, j);
        } else if (*vb) {
            const auto suite = phipart::parse_bound_suite(vb_suite);
            std::cerr << "running " << phipart::to_string(suite) << " suite with " << vb_seeds << " seeds\n";
            const auto report = phipart::run_bound_suite(suite, vb_seeds, seed);
            emit(out, phipart::to_json(report));
            if (!report.passed()) {
                std::cerr << report.violations() << " bound violation(s)\n";
                return kExitViolation;
            }
        } else if (*bench) {
            auto config = phipart::experiment_from_json(phipart::read_json(bench_config));
            if (bench_seed) config.base_seed = *bench_seed;
            if (threads != 0) config.threads = threads;
            std::cerr << "benchmark: " << config.n_schedule.size() * config.m0_schedule.size() << " cells x "
                      << config.replications << " replications\n";
            const auto rows = phipart::run_convergence(config);
            emit(out, phipart::to_json(rows, config));
            if (!bench_csv.empty()) {
                std::ofstream csv(bench_csv);
                csv.precision(17);
                csv << "n,m0,m,mean_estimate,std_estimate,mean_abs_error,mean_T1,mean_T2,oracle_value\n";
                for (const auto& r : rows) {
                    csv << r.n << ',' << r.m0 << ',' << r.m << ',' << r.mean_estimate << ',' << r.std_estimate << ','
                        << r.mean_abs_error << ',' << r.mean_t1 << ',' << r.mean_t2 << ',' << r.oracle_value << '\n';
                }
            }
        }
    } catch (const phipart::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "fatal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
