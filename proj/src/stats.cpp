#include "qwc/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

#include "qwc/errors.hpp"

namespace qwc {

namespace {

// Maps values to tie-group ids: cluster sorted values by adjacent gap > tol.
// Group ids are monotone in the value, so pair comparisons below reduce to
// integer comparisons with exact tie detection.
std::vector<int> tie_group_ids(const Eigen::VectorXd& v, double tol) {
    const int n = static_cast<int>(v.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return v(a) < v(b); });
    std::vector<int> group(n, 0);
    int gid = 0;
    for (int i = 0; i < n; ++i) {
        if (i > 0 && v(order[i]) - v(order[i - 1]) > tol) ++gid;
        group[order[i]] = gid;
    }
    return group;
}

} // namespace

double kendall_tau(const Eigen::VectorXd& scores_a, const Eigen::VectorXd& scores_b,
                   double tie_tol) {
    const int n = static_cast<int>(scores_a.size());
    if (scores_b.size() != n) throw InputError("kendall_tau: length mismatch");
    if (n < 2) throw InputError("kendall_tau: need at least two entries");
    const std::vector<int> ga = tie_group_ids(scores_a, tie_tol);
    const std::vector<int> gb = tie_group_ids(scores_b, tie_tol);
    long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int da = ga[i] - ga[j];
            const int db = gb[i] - gb[j];
            if (da == 0) ++ties_a;
            if (db == 0) ++ties_b;
            if (da == 0 || db == 0) continue;
            if ((da > 0) == (db > 0))
                ++concordant;
            else
                ++discordant;
        }
    }
    const long long n0 = static_cast<long long>(n) * (n - 1) / 2;
    if (ties_a == n0 || ties_b == n0)
        throw UndefinedMeasureError("kendall_tau undefined: an input is entirely tied");
    const double denom = std::sqrt(static_cast<double>(n0 - ties_a)) *
                         std::sqrt(static_cast<double>(n0 - ties_b));
    return static_cast<double>(concordant - discordant) / denom;
}

std::string measure_name(Measure m) {
    switch (m) {
        case Measure::Degree: return "degree";
        case Measure::DtrwLimit: return "dtrw-limit";
        case Measure::CtrwLimit: return "ctrw-limit";
        case Measure::Eigenvector: return "eigenvector";
        case Measure::PageRank: return "pagerank";
        case Measure::Rwc: return "rwc";
        case Measure::Ctqw: return "ctqw";
    }
    throw InputError("unknown measure");
}

Measure measure_from_name(const std::string& name) {
    if (name == "degree") return Measure::Degree;
    if (name == "dtrw-limit" || name == "dtrw") return Measure::DtrwLimit;
    if (name == "ctrw-limit" || name == "ctrw") return Measure::CtrwLimit;
    if (name == "eigenvector") return Measure::Eigenvector;
    if (name == "pagerank") return Measure::PageRank;
    if (name == "rwc") return Measure::Rwc;
    if (name == "ctqw") return Measure::Ctqw;
    throw InputError("unknown measure name: " + name);
}

CentralityResult compute_measure(const Graph& g, Measure m, const MeasureParams& params) {
    switch (m) {
        case Measure::Degree: return degree_centrality(g);
        case Measure::DtrwLimit: return dtrw_limit(g);
        case Measure::CtrwLimit: return ctrw_limit(g);
        case Measure::Eigenvector: return eigenvector_centrality(g);
        case Measure::PageRank: return pagerank(g, params.alpha);
        case Measure::Rwc: return rwc(g, params.epsilon);
        case Measure::Ctqw: return ctqw_centrality(g);
    }
    throw InputError("unknown measure");
}

RankCorrelationMatrix correlation_table(const Graph& g, const std::vector<Measure>& measures,
                                        const MeasureParams& params) {
    const int m = static_cast<int>(measures.size());
    std::vector<CentralityResult> results;
    results.reserve(m);
    RankCorrelationMatrix table;
    for (Measure mm : measures) {
        table.measures.push_back(measure_name(mm));
        results.push_back(compute_measure(g, mm, params));
    }
    table.tau = Eigen::MatrixXd::Identity(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double t = (i == j) ? 1.0 : kendall_tau(results[i].scores, results[j].scores);
            table.tau(i, j) = t;
            table.tau(j, i) = t;
        }
    return table;
}

double agreement_factor(const CentralityResult& a, const CentralityResult& b, int n) {
    const int size = static_cast<int>(a.ranking.size());
    if (n < 1 || n > size) throw InputError("agreement_factor: n out of range");
    std::vector<char> in_a(size, 0);
    for (int i = 0; i < n; ++i) in_a[a.ranking[i]] = 1;
    int matched = 0;
    for (int i = 0; i < n; ++i) matched += in_a[b.ranking[i]];
    return static_cast<double>(matched) / static_cast<double>(n);
}

ConfidenceInterval agresti_coull_ci(long long successes, long long trials, double z) {
    if (trials < 1) throw InputError("agresti_coull_ci: trials must be >= 1");
    if (successes < 0 || successes > trials)
        throw InputError("agresti_coull_ci: successes out of range");
    const double z2 = z * z;
    const double n_tilde = static_cast<double>(trials) + z2;
    const double p_tilde = (static_cast<double>(successes) + z2 / 2.0) / n_tilde;
    const double half = z * std::sqrt(p_tilde * (1.0 - p_tilde) / n_tilde);
    return ConfidenceInterval{std::max(0.0, p_tilde - half), std::min(1.0, p_tilde + half)};
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QC_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

namespace {

struct PerGraphStats {
    // tau for pair (i,j) packed upper-triangular, NaN when undefined
    std::vector<double> tau;
    // matched counts per (pair, n_value)
    std::vector<long long> matches;
    // per measure, scores sorted descending
    std::vector<Eigen::VectorXd> sorted_scores;
};

} // namespace

EnsembleReport run_ensemble(const GraphEnsembleSpec& spec, const std::vector<Measure>& measures,
                            const std::vector<int>& n_values,
                            std::optional<std::uint64_t> seed_override,
                            const MeasureParams& params, int threads) {
    spec.validate();
    if (measures.size() < 1) throw InputError("run_ensemble: need at least one measure");
    for (int nv : n_values)
        if (nv < 1 || nv > spec.n) throw InputError("run_ensemble: top-n value out of range");

    const std::uint64_t seed = seed_override.value_or(spec.seed);
    const int m = static_cast<int>(measures.size());
    const int npairs = m * (m - 1) / 2;
    const int count = spec.count;

    std::vector<PerGraphStats> stats(count);
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= count) return;
            try {
                Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(idx));
                const Graph g = ensure_connected(spec, rng);
                std::vector<CentralityResult> results;
                results.reserve(m);
                for (Measure mm : measures) results.push_back(compute_measure(g, mm, params));
                PerGraphStats& s = stats[idx];
                s.tau.resize(npairs);
                int pair = 0;
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j, ++pair) {
                        try {
                            s.tau[pair] = kendall_tau(results[i].scores, results[j].scores);
                        } catch (const UndefinedMeasureError&) {
                            s.tau[pair] = std::nan("");
                        }
                    }
                s.matches.resize(static_cast<std::size_t>(npairs) * n_values.size());
                pair = 0;
                for (int i = 0; i < m; ++i)
                    for (int j = i + 1; j < m; ++j, ++pair)
                        for (std::size_t k = 0; k < n_values.size(); ++k) {
                            const double f = agreement_factor(results[i], results[j], n_values[k]);
                            s.matches[pair * n_values.size() + k] =
                                std::llround(f * n_values[k]);
                        }
                s.sorted_scores.reserve(m);
                for (const auto& r : results) {
                    Eigen::VectorXd sorted = r.scores;
                    std::sort(sorted.data(), sorted.data() + sorted.size(),
                              std::greater<double>());
                    s.sorted_scores.push_back(std::move(sorted));
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const int nworkers = std::min(resolve_threads(threads), count);
    if (nworkers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (int i = 0; i < nworkers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    // ordered reduction by graph index: results are independent of scheduling
    EnsembleReport report;
    report.spec = spec;
    report.spec.seed = seed;
    for (Measure mm : measures) report.mean_tau.measures.push_back(measure_name(mm));
    report.mean_tau.tau = Eigen::MatrixXd::Identity(m, m);
    report.tau_defined_count = Eigen::MatrixXi::Constant(m, m, count);
    {
        int pair = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j, ++pair) {
                double sum = 0.0;
                int defined = 0;
                for (int g = 0; g < count; ++g) {
                    const double t = stats[g].tau[pair];
                    if (!std::isnan(t)) {
                        sum += t;
                        ++defined;
                    }
                }
                const double mean = defined > 0 ? sum / defined : std::nan("");
                report.mean_tau.tau(i, j) = mean;
                report.mean_tau.tau(j, i) = mean;
                report.tau_defined_count(i, j) = defined;
                report.tau_defined_count(j, i) = defined;
            }
    }

    report.agreement.n_values = n_values;
    report.agreement.ensemble_size = count;
    {
        int pair = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j, ++pair)
                for (std::size_t k = 0; k < n_values.size(); ++k) {
                    AgreementEntry e;
                    e.measure_a = measure_name(measures[i]);
                    e.measure_b = measure_name(measures[j]);
                    e.top_n = n_values[k];
                    for (int g = 0; g < count; ++g)
                        e.successes += stats[g].matches[pair * n_values.size() + k];
                    e.trials = static_cast<long long>(n_values[k]) * count;
                    e.factor = static_cast<double>(e.successes) / static_cast<double>(e.trials);
                    e.ci = agresti_coull_ci(e.successes, e.trials);
                    report.agreement.entries.push_back(std::move(e));
                }
    }

    report.profile.measures = report.mean_tau.measures;
    report.profile.mean = Eigen::MatrixXd::Zero(spec.n, m);
    report.profile.stddev = Eigen::MatrixXd::Zero(spec.n, m);
    for (int mi = 0; mi < m; ++mi) {
        for (int r = 0; r < spec.n; ++r) {
            double sum = 0.0, sumsq = 0.0;
            for (int g = 0; g < count; ++g) {
                const double v = stats[g].sorted_scores[mi](r);
                sum += v;
                sumsq += v * v;
            }
            const double mean = sum / count;
            report.profile.mean(r, mi) = mean;
            report.profile.stddev(r, mi) =
                std::sqrt(std::max(0.0, sumsq / count - mean * mean));
        }
    }
    return report;
}

} // namespace qwc
