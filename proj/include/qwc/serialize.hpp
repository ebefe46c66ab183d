#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qwc/centrality.hpp"
#include "qwc/csd.hpp"
#include "qwc/ctqw.hpp"
#include "qwc/experiment.hpp"
#include "qwc/stats.hpp"

namespace qwc {

nlohmann::json to_json(const CentralityResult& r);
CentralityResult centrality_from_json(const nlohmann::json& j);
std::string to_csv(const CentralityResult& r); // header "vertex,score"

nlohmann::json to_json(const RankCorrelationMatrix& t);
std::string to_csv(const RankCorrelationMatrix& t); // measure_a,measure_b,tau

nlohmann::json to_json(const CsdFactorization& f);
CsdFactorization csd_from_json(const nlohmann::json& j);

/// Complex matrix as nested [re,im] pairs.
nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GraphEnsembleSpec& spec);
nlohmann::json to_json(const EnsembleReport& r);
std::string agreement_csv(const AgreementReport& r, const std::string& family = "");
std::string profile_csv(const EnsembleProfile& p, const std::string& family = "");

nlohmann::json to_json(const MeasurementRecord& r);
nlohmann::json to_json(const ExperimentResult& r);
std::string to_csv(const ExperimentResult& r); // k,outcome,count,p_hat,p_theory,std_err

std::string trace_csv(const ProbabilityTrace& trace); // t,P_0,...,P_{n-1}

/// Human-readable circuit listing in application order (right to left).
std::string circuit_listing(const CsdFactorization& f);

/// Full-precision decimal formatting (round-trips to the same double).
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace qwc
