#include "qwc/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qwc/errors.hpp"

namespace qwc {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open " + path + " for writing");
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json to_json(const CentralityResult& r) {
    nlohmann::json j;
    j["measure"] = r.measure_name;
    j["scores"] = std::vector<double>(r.scores.data(), r.scores.data() + r.scores.size());
    j["ranking"] = r.ranking;
    return j;
}

CentralityResult centrality_from_json(const nlohmann::json& j) {
    const auto scores = j.at("scores").get<std::vector<double>>();
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(scores.data(), scores.size());
    return make_result(j.at("measure").get<std::string>(), std::move(v));
}

std::string to_csv(const CentralityResult& r) {
    std::string out = "vertex,score\n";
    for (int i = 0; i < r.scores.size(); ++i)
        out += std::to_string(i) + "," + format_double(r.scores(i)) + "\n";
    return out;
}

nlohmann::json to_json(const RankCorrelationMatrix& t) {
    nlohmann::json j;
    j["measures"] = t.measures;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < t.tau.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < t.tau.cols(); ++k) row.push_back(t.tau(i, k));
        rows.push_back(row);
    }
    j["tau"] = rows;
    return j;
}

std::string to_csv(const RankCorrelationMatrix& t) {
    std::string out = "measure_a,measure_b,tau\n";
    for (std::size_t i = 0; i < t.measures.size(); ++i)
        for (std::size_t k = 0; k < t.measures.size(); ++k)
            out += t.measures[i] + "," + t.measures[k] + "," +
                   format_double(t.tau(static_cast<int>(i), static_cast<int>(k))) + "\n";
    return out;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw InputError("matrix JSON must be a non-empty array");
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[i].size()) != cols)
            throw InputError("matrix JSON rows have inconsistent lengths");
        for (int k = 0; k < cols; ++k) {
            const auto& cell = j[i][k];
            if (cell.is_number()) {
                m(i, k) = cell.get<double>();
            } else if (cell.is_array() && cell.size() == 2) {
                m(i, k) = std::complex<double>(cell[0].get<double>(), cell[1].get<double>());
            } else {
                throw InputError("matrix JSON entries must be numbers or [re,im] pairs");
            }
        }
    }
    return m;
}

nlohmann::json to_json(const CsdFactorization& f) {
    nlohmann::json j;
    j["dimension"] = f.dimension;
    j["thetas"] = std::vector<double>(f.thetas.data(), f.thetas.data() + f.thetas.size());
    j["blocks"]["L"] = matrix_to_json(f.L);
    j["blocks"]["L'"] = matrix_to_json(f.L_prime);
    j["blocks"]["R"] = matrix_to_json(f.R);
    j["blocks"]["R'"] = matrix_to_json(f.R_prime);
    return j;
}

CsdFactorization csd_from_json(const nlohmann::json& j) {
    CsdFactorization f;
    f.dimension = j.at("dimension").get<int>();
    const auto thetas = j.at("thetas").get<std::vector<double>>();
    f.thetas = Eigen::Map<const Eigen::VectorXd>(thetas.data(), thetas.size());
    f.L = matrix_from_json(j.at("blocks").at("L"));
    f.L_prime = matrix_from_json(j.at("blocks").at("L'"));
    f.R = matrix_from_json(j.at("blocks").at("R"));
    f.R_prime = matrix_from_json(j.at("blocks").at("R'"));
    return f;
}

nlohmann::json to_json(const GraphEnsembleSpec& spec) {
    nlohmann::json j;
    j["kind"] = spec.kind == EnsembleKind::ErdosRenyi ? "erdos-renyi" : "barabasi-albert";
    j["n"] = spec.n;
    if (spec.kind == EnsembleKind::ErdosRenyi)
        j["p"] = spec.p;
    else
        j["m"] = spec.m;
    j["count"] = spec.count;
    j["seed"] = spec.seed;
    j["require_connected"] = spec.require_connected;
    return j;
}

nlohmann::json to_json(const EnsembleReport& r) {
    nlohmann::json j;
    j["spec"] = to_json(r.spec);
    j["mean_tau"] = to_json(r.mean_tau);
    nlohmann::json counts = nlohmann::json::array();
    for (int i = 0; i < r.tau_defined_count.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < r.tau_defined_count.cols(); ++k)
            row.push_back(r.tau_defined_count(i, k));
        counts.push_back(row);
    }
    j["tau_defined_count"] = counts;
    nlohmann::json agreements = nlohmann::json::array();
    for (const auto& e : r.agreement.entries) {
        nlohmann::json a;
        a["measure_a"] = e.measure_a;
        a["measure_b"] = e.measure_b;
        a["n"] = e.top_n;
        a["factor"] = e.factor;
        a["ci_low"] = e.ci.low;
        a["ci_high"] = e.ci.high;
        a["successes"] = e.successes;
        a["trials"] = e.trials;
        agreements.push_back(a);
    }
    j["agreement"] = {{"n_values", r.agreement.n_values},
                      {"ensemble_size", r.agreement.ensemble_size},
                      {"entries", agreements}};
    nlohmann::json profile;
    profile["measures"] = r.profile.measures;
    nlohmann::json means = nlohmann::json::array(), stds = nlohmann::json::array();
    for (int rank = 0; rank < r.profile.mean.rows(); ++rank) {
        nlohmann::json mrow = nlohmann::json::array(), srow = nlohmann::json::array();
        for (int mi = 0; mi < r.profile.mean.cols(); ++mi) {
            mrow.push_back(r.profile.mean(rank, mi));
            srow.push_back(r.profile.stddev(rank, mi));
        }
        means.push_back(mrow);
        stds.push_back(srow);
    }
    profile["mean"] = means;
    profile["stddev"] = stds;
    j["profile"] = profile;
    return j;
}

std::string agreement_csv(const AgreementReport& r, const std::string& family) {
    std::string out = family.empty() ? "pair,n,factor,ci_low,ci_high\n"
                                     : "family,pair,n,factor,ci_low,ci_high\n";
    for (const auto& e : r.entries) {
        if (!family.empty()) out += family + ",";
        out += e.measure_a + "|" + e.measure_b + "," + std::to_string(e.top_n) + "," +
               format_double(e.factor) + "," + format_double(e.ci.low) + "," +
               format_double(e.ci.high) + "\n";
    }
    return out;
}

std::string profile_csv(const EnsembleProfile& p, const std::string& family) {
    std::string out = family.empty() ? "rank,measure,mean,std\n"
                                     : "family,rank,measure,mean,std\n";
    for (int rank = 0; rank < p.mean.rows(); ++rank)
        for (std::size_t mi = 0; mi < p.measures.size(); ++mi) {
            if (!family.empty()) out += family + ",";
            out += std::to_string(rank) + "," + p.measures[mi] + "," +
                   format_double(p.mean(rank, static_cast<int>(mi))) + "," +
                   format_double(p.stddev(rank, static_cast<int>(mi))) + "\n";
        }
    return out;
}

nlohmann::json to_json(const MeasurementRecord& r) {
    nlohmann::json j;
    j["k"] = r.k;
    j["shots"] = r.shots;
    j["counts"] = r.counts;
    j["p_hat"] = std::vector<double>(r.p_hat.data(), r.p_hat.data() + r.p_hat.size());
    j["p_theory"] =
        std::vector<double>(r.p_theory.data(), r.p_theory.data() + r.p_theory.size());
    j["std_errors"] =
        std::vector<double>(r.std_errors.data(), r.std_errors.data() + r.std_errors.size());
    return j;
}

nlohmann::json to_json(const ExperimentResult& r) {
    nlohmann::json j;
    j["config"] = {{"steps", r.config.steps},
                   {"delta_t", r.config.delta_t},
                   {"shots_per_step", r.config.shots_per_step},
                   {"seed", r.config.seed},
                   {"analytic", r.config.analytic},
                   {"route_csd", r.config.route_csd}};
    nlohmann::json records = nlohmann::json::array();
    for (const auto& rec : r.records) {
        nlohmann::json rj = to_json(rec);
        rj["d"] = r.distances[rec.k - 1];
        records.push_back(rj);
    }
    j["records"] = records;
    j["distances"] = r.distances;
    return j;
}

std::string to_csv(const ExperimentResult& r) {
    std::string out = "k,outcome,count,p_hat,p_theory,std_err\n";
    for (const auto& rec : r.records)
        for (int i = 0; i < rec.p_hat.size(); ++i)
            out += std::to_string(rec.k) + "," + std::to_string(i) + "," +
                   std::to_string(rec.counts[i]) + "," + format_double(rec.p_hat(i)) + "," +
                   format_double(rec.p_theory(i)) + "," + format_double(rec.std_errors(i)) +
                   "\n";
    return out;
}

std::string trace_csv(const ProbabilityTrace& trace) {
    if (trace.probabilities.empty()) return "t\n";
    const int n = static_cast<int>(trace.probabilities[0].size());
    std::string out = "t";
    for (int j = 0; j < n; ++j) out += ",P_" + std::to_string(j);
    out += "\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        out += format_double(trace.times[i]);
        for (int j = 0; j < n; ++j) out += "," + format_double(trace.probabilities[i](j));
        out += "\n";
    }
    return out;
}

std::string circuit_listing(const CsdFactorization& f) {
    // application order right to left: R first, then S, then L
    std::ostringstream ss;
    auto block = [&](const std::string& name, const Eigen::MatrixXcd& m) {
        ss << name << " =\n";
        for (int i = 0; i < m.rows(); ++i) {
            ss << "  [";
            for (int j = 0; j < m.cols(); ++j) {
                char buf[64];
                std::snprintf(buf, sizeof(buf), "%+.6f%+.6fi", m(i, j).real(), m(i, j).imag());
                ss << (j ? ", " : "") << buf;
            }
            ss << "]\n";
        }
    };
    ss << "circuit (right-to-left application): L * S * R, dimension " << f.dimension << "\n";
    ss << "step 1: block-diagonal R ladder\n";
    block("  R", f.R);
    block("  R'", f.R_prime);
    ss << "step 2: cosine-sine rotation, thetas =";
    for (int i = 0; i < f.thetas.size(); ++i) ss << " " << format_double(f.thetas(i));
    ss << "\n";
    ss << "step 3: block-diagonal L ladder\n";
    block("  L", f.L);
    block("  L'", f.L_prime);
    return ss.str();
}

} // namespace qwc
