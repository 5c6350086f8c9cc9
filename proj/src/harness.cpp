#include "phipart/harness.hpp"

#include "phipart/bounds.hpp"
#include "phipart/error.hpp"
#include "phipart/estimator.hpp"
#include "phipart/partitioner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace phipart {

void ExperimentConfig::validate() const {
    p_spec.validate();
    q_spec.validate();
    if (p_spec.dim() != q_spec.dim()) throw ConfigError("p_spec and q_spec differ in dimension");
    if (n_schedule.empty() || m0_schedule.empty()) throw ConfigError("n and m0 schedules must be nonempty");
    if (replications == 0) throw ConfigError("replications must be at least 1");
    parse_phi_kind(family);
    const std::size_t d = q_spec.dim();
    for (std::size_t n : n_schedule) {
        for (std::size_t m0 : m0_schedule) {
            if (m0 == 0) throw ConfigError("m0 must be positive");
            const std::size_t m = int_pow(m0, d);
            if (n < m || n % m != 0) {
                throw ConfigError("m0^d = " + std::to_string(m) + " does not divide n = " + std::to_string(n));
            }
        }
    }
}

std::uint64_t replication_p_seed(std::uint64_t base_seed, std::size_t k) { return 2 * (base_seed + k); }
std::uint64_t replication_q_seed(std::uint64_t base_seed, std::size_t k) { return 2 * (base_seed + k) + 1; }

std::pair<double, double> mean_and_std(const std::vector<double>& values) {
    if (values.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

namespace {

std::size_t resolve_threads(std::size_t requested, std::size_t jobs) {
    std::size_t t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return std::max<std::size_t>(1, std::min(t, jobs));
}

/// Runs job(i) for i in [0, count) on `threads` workers; rethrows the first failure.
template <typename Job>
void parallel_for(std::size_t count, std::size_t threads, Job&& job) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    const std::size_t nthreads = resolve_threads(threads, count);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace

std::vector<ConvergenceRow> run_convergence(const ExperimentConfig& config) {
    config.validate();
    const PhiFamily family = PhiFamily::from_name(config.family);
    const double oracle = oracle_divergence(config.p_spec, config.q_spec, family);
    const std::size_t d = config.q_spec.dim();

    std::vector<ConvergenceRow> rows;
    for (std::size_t n : config.n_schedule) {
        for (std::size_t m0 : config.m0_schedule) {
            ConvergenceRow row;
            row.n = n;
            row.m0 = m0;
            row.m = int_pow(m0, d);
            row.oracle_value = oracle;
            row.replications.resize(config.replications);
            rows.push_back(std::move(row));
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ConvergenceRow& a, const ConvergenceRow& b) {
        return a.n != b.n ? a.n < b.n : a.m < b.m;
    });

    const std::size_t reps = config.replications;
    parallel_for(rows.size() * reps, config.threads, [&](std::size_t job) {
        auto& row = rows[job / reps];
        const std::size_t k = job % reps;
        const auto xp = draw(config.p_spec, row.n, replication_p_seed(config.base_seed, k));
        const auto xq = draw(config.q_spec, row.n, replication_q_seed(config.base_seed, k));
        const Partition partition = build_partition(xq, row.m0);
        ReplicationRecord rec{config.base_seed + k, 0.0, std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
        rec.estimate = estimate_on_partition(partition, xp, xq.rows(), family).value;
        if (config.decompose) {
            const auto pm = partition_masses(config.p_spec, partition);
            const auto qm = partition_masses(config.q_spec, partition);
            rec.discretized = discretized_divergence(pm, qm, family);
            rec.t1 = std::abs(rec.discretized - oracle);
            rec.t2 = std::abs(rec.estimate - rec.discretized);
        }
        row.replications[k] = rec;
    });

    for (auto& row : rows) {
        std::vector<double> est, err, t1, t2;
        for (const auto& r : row.replications) {
            est.push_back(r.estimate);
            err.push_back(std::abs(r.estimate - oracle));
            t1.push_back(r.t1);
            t2.push_back(r.t2);
        }
        std::tie(row.mean_estimate, row.std_estimate) = mean_and_std(est);
        row.mean_abs_error = mean_and_std(err).first;
        row.mean_t1 = mean_and_std(t1).first;
        row.mean_t2 = mean_and_std(t2).first;
    }
    return rows;
}

std::string_view to_string(BoundSuite suite) {
    switch (suite) {
    case BoundSuite::Gamma: return "gamma";
    case BoundSuite::PartitionError: return "partition_error";
    case BoundSuite::Growth: return "growth";
    case BoundSuite::Chernoff: return "chernoff";
    }
    return "gamma";
}

BoundSuite parse_bound_suite(std::string_view name) {
    if (name == "gamma") return BoundSuite::Gamma;
    if (name == "partition_error" || name == "partition-error") return BoundSuite::PartitionError;
    if (name == "growth") return BoundSuite::Growth;
    if (name == "chernoff") return BoundSuite::Chernoff;
    throw BadParams("unknown bound suite '" + std::string(name) + "' (expected gamma|partition_error|growth|chernoff)");
}

std::size_t BoundSuiteReport::violations() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const BoundCheck& c) { return !c.pass; }));
}

namespace {

std::string label(std::initializer_list<std::pair<const char*, double>> fields) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : fields) {
        os << (first ? "" : ",") << k << '=' << v;
        first = false;
    }
    return os.str();
}

DistributionSpec standard_gaussian(std::size_t d) {
    return DistributionSpec::gaussian(std::vector<double>(d, 0.0), std::vector<double>(d, 1.0));
}

} // namespace

BoundSuiteReport verify_gamma_deterministic(std::size_t seeds, std::uint64_t base_seed) {
    BoundSuiteReport report{"gamma", seeds, {}};
    const std::vector<double> radii{1.0, 3.0, 10.0};
    constexpr std::size_t per_cell = 10;
    for (std::size_t d : {1u, 2u}) {
        for (std::size_t m0 = 2; m0 <= 8; ++m0) {
            const std::size_t m = int_pow(m0, d);
            const double md = static_cast<double>(m);
            std::size_t max_inf = 0;
            std::vector<std::size_t> max_g1(radii.size(), 0), max_g3(radii.size(), 0);
            for (std::size_t s = 0; s < seeds; ++s) {
                const auto xq = draw(standard_gaussian(d), m * per_cell, base_seed + s);
                const auto part = build_partition(xq, m0);
                max_inf = std::max(max_inf, count_infinitely_large(part));
                for (std::size_t r = 0; r < radii.size(); ++r) {
                    const auto cls = classify_cells(part, radii[r]);
                    max_g1[r] = std::max(max_g1[r], cls.boundary.size());
                    max_g3[r] = std::max(max_g3[r], cls.oversized.size());
                }
            }
            const double g1 = gamma_bounds(md, d, 1.0).g1;
            report.checks.push_back({"infinitely_large_cells", static_cast<double>(max_inf), g1,
                                     static_cast<double>(max_inf) <= g1,
                                     label({{"d", double(d)}, {"m0", double(m0)}})});
            for (std::size_t r = 0; r < radii.size(); ++r) {
                const auto gb = gamma_bounds(md, d, radii[r]);
                const auto tag = label({{"d", double(d)}, {"m0", double(m0)}, {"R", radii[r]}});
                report.checks.push_back({"gamma1", static_cast<double>(max_g1[r]), gb.g1,
                                         static_cast<double>(max_g1[r]) <= gb.g1, tag});
                report.checks.push_back({"gamma3", static_cast<double>(max_g3[r]), gb.g3,
                                         static_cast<double>(max_g3[r]) <= gb.g3, tag});
            }
        }
    }
    return report;
}

BoundSuiteReport verify_gamma2(std::size_t seeds, double eps2, double delta, std::uint64_t base_seed) {
    BoundSuiteReport report{"gamma", seeds, {}};
    // (d, m0); standard Gaussians satisfy the tail condition with c = d, alpha = 2 (Chebyshev)
    const std::vector<std::pair<std::size_t, std::size_t>> cases{{1, 16}, {2, 4}};
    for (const auto& [d, m0] : cases) {
        const RegularityParams params{static_cast<double>(d), 2.0, 1.0, 1.0};
        const double R = tail_radius(params, eps2);
        const std::size_t m = int_pow(m0, d);
        const double n_min = n_for_gamma2(eps2, delta);
        const std::size_t n = (static_cast<std::size_t>(std::floor(n_min / static_cast<double>(m))) + 1) * m;
        std::size_t bad = 0;
        for (std::size_t s = 0; s < seeds; ++s) {
            const auto part = build_partition(draw(standard_gaussian(d), n, base_seed + s), m0);
            const auto cls = classify_cells(part, R);
            if (static_cast<double>(cls.outside.size()) >= eps2 * static_cast<double>(m)) ++bad;
        }
        const double frac = seeds > 0 ? static_cast<double>(bad) / static_cast<double>(seeds) : 0.0;
        report.checks.push_back({"gamma2_fraction", frac, delta, frac < delta,
                                 label({{"d", double(d)}, {"m0", double(m0)}, {"R", R}, {"n", double(n)},
                                        {"eps2", eps2}})});
    }
    return report;
}

BoundSuiteReport verify_partition_error(std::size_t seeds, std::uint64_t base_seed) {
    BoundSuiteReport report{"partition_error", seeds, {}};
    constexpr double eps = 0.95;
    constexpr double delta = 0.05;
    constexpr std::size_t m0 = 4;
    const auto plan = n_star(m0, 1, eps, delta);
    const std::size_t n = (static_cast<std::size_t>(std::floor(plan.n_star / m0)) + 1) * m0;
    const auto mu = standard_gaussian(1);
    std::size_t exceed = 0;
    double worst = 0.0;
    for (std::size_t s = 0; s < seeds; ++s) {
        const auto xs = draw(mu, n, base_seed + s);
        const auto part = build_partition(xs, m0);
        const double err = partition_l1_error(part, xs, [&](const HyperRectangle& c) { return cell_mass(mu, c); });
        worst = std::max(worst, err);
        if (err > eps) ++exceed;
    }
    const double frac = seeds > 0 ? static_cast<double>(exceed) / static_cast<double>(seeds) : 0.0;
    report.checks.push_back({"exceed_fraction", frac, delta, frac < delta,
                             label({{"m", double(m0)}, {"eps", eps}, {"n", double(n)}, {"n_star", plan.n_star}})});
    report.checks.push_back({"max_l1_error", worst, eps, worst <= eps, label({{"n", double(n)}})});
    return report;
}

namespace {

using Labelling = std::vector<unsigned char>;

// every labelling of points 1..N by m0-1 cuts, each cut in one of the N+1 gaps
std::set<Labelling> induced_labellings(std::size_t points, std::size_t m0) {
    std::set<Labelling> out;
    std::vector<std::size_t> gaps(m0 > 0 ? m0 - 1 : 0, 0);
    while (true) {
        Labelling lab(points);
        for (std::size_t i = 0; i < points; ++i) {
            // point i+1 sits right of gap i; slab = number of cuts left of it
            lab[i] = static_cast<unsigned char>(std::count_if(gaps.begin(), gaps.end(), [i](std::size_t g) { return g <= i; }));
        }
        out.insert(std::move(lab));
        // next nondecreasing gap sequence
        std::size_t k = gaps.size();
        while (k > 0 && gaps[k - 1] == points) --k;
        if (k == 0) break;
        const std::size_t v = gaps[k - 1] + 1;
        for (std::size_t j = k - 1; j < gaps.size(); ++j) gaps[j] = v;
    }
    return out;
}

} // namespace

std::size_t enumerate_induced_partitions_1d(std::size_t points, std::size_t m0) {
    if (m0 == 0) throw BadParams("m0 must be positive");
    return induced_labellings(points, m0).size();
}

BoundSuiteReport verify_growth(std::size_t seeds, std::uint64_t base_seed) {
    BoundSuiteReport report{"growth", seeds, {}};
    for (std::size_t n = 1; n <= 5; ++n) {
        for (std::size_t m0 = 1; m0 <= 3; ++m0) {
            const auto family = induced_labellings(2 * n, m0);
            const double log_count = std::log(static_cast<double>(family.size()));
            const double bound = log_growth_bound(static_cast<double>(n), static_cast<double>(m0), 1);
            const auto tag = label({{"d", 1}, {"n", double(n)}, {"m0", double(m0)}});
            report.checks.push_back({"log_induced_partitions", log_count, bound, log_count <= bound + 1e-12, tag});

            if (m0 < 2 || n % m0 != 0) continue;
            // partitions the splitter actually produces, read off on the probe points 1..2n
            std::size_t outside = 0;
            std::mt19937_64 rng(base_seed + 1000 * n + m0);
            std::uniform_real_distribution<double> where(0.0, static_cast<double>(2 * n + 1));
            for (std::size_t s = 0; s < std::max<std::size_t>(seeds, 1); ++s) {
                std::vector<double> xs(n);
                for (double& x : xs) x = where(rng);
                const auto part = build_partition(SampleMatrix(1, xs), m0);
                Labelling lab(2 * n);
                for (std::size_t i = 0; i < 2 * n; ++i) {
                    const double probe = static_cast<double>(i + 1);
                    lab[i] = static_cast<unsigned char>(part.locate(std::span<const double>(&probe, 1)));
                }
                if (!family.contains(lab)) ++outside;
            }
            report.checks.push_back({"splitter_outputs_outside_family", static_cast<double>(outside), 0.0, outside == 0, tag});
        }
    }
    return report;
}

BoundSuiteReport verify_chernoff(std::size_t seeds, std::uint64_t base_seed) {
    BoundSuiteReport report{"chernoff", seeds, {}};
    const std::size_t reps = 100 * std::max<std::size_t>(seeds, 1);
    const std::vector<std::pair<int, double>> cases{{100, 0.1}, {50, 0.5}, {200, 0.05}};
    for (const auto& [trials, prob] : cases) {
        std::mt19937_64 rng(base_seed + static_cast<std::uint64_t>(trials));
        std::binomial_distribution<int> binom(trials, prob);
        std::vector<int> draws(reps);
        for (auto& x : draws) x = binom(rng);
        const double n = static_cast<double>(trials);
        const double mu = n * prob;
        double worst_excess = -1.0;
        double worst_t = mu, worst_emp = 0.0, worst_bound = 1.0;
        for (double t = std::ceil(mu); t <= mu + 4.0 * std::sqrt(n); t += 1.0) {
            const auto hits = std::count_if(draws.begin(), draws.end(), [t](int x) { return x >= t; });
            const double emp = static_cast<double>(hits) / static_cast<double>(reps);
            const double bound = chernoff_tail(n, mu, t);
            const double slack = 3.0 * std::sqrt(bound * (1.0 - bound) / static_cast<double>(reps));
            const double excess = emp - (bound + slack);
            if (excess > worst_excess) {
                worst_excess = excess;
                worst_t = t;
                worst_emp = emp;
                worst_bound = bound;
            }
        }
        report.checks.push_back({"binomial_tail", worst_emp, worst_bound, worst_excess <= 0.0,
                                 label({{"n", n}, {"p", prob}, {"t", worst_t}, {"reps", double(reps)}})});
    }
    return report;
}

BoundSuiteReport run_bound_suite(BoundSuite suite, std::size_t seeds, std::uint64_t base_seed) {
    switch (suite) {
    case BoundSuite::Gamma: {
        auto report = verify_gamma_deterministic(seeds, base_seed);
        auto prob = verify_gamma2(seeds, 0.2, 0.2, base_seed);
        report.checks.insert(report.checks.end(), prob.checks.begin(), prob.checks.end());
        return report;
    }
    case BoundSuite::PartitionError: return verify_partition_error(seeds, base_seed);
    case BoundSuite::Growth: return verify_growth(seeds, base_seed);
    case BoundSuite::Chernoff: return verify_chernoff(seeds, base_seed);
    }
    throw BadParams("unknown bound suite");
}

} // namespace phipart
