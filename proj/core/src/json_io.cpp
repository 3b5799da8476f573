#include "tsketch/json_io.hpp"

#include <fstream>

namespace tsketch {

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  Eigen::VectorXd v(static_cast<int>(j.size()));
  int i = 0;
  for (const auto& x : j) v[i++] = x.get<double>();
  return v;
}

}  // namespace

nlohmann::json toeplitz_to_json(const SymToeplitz& T) {
  return {{"d", T.d}, {"first_column", vector_to_json(T.first_column)}};
}

SymToeplitz toeplitz_from_json(const nlohmann::json& j) {
  return SymToeplitz(j.at("d").get<int>(), vector_from_json(j.at("first_column")));
}

nlohmann::json factor_to_json(const FourierFactor& factor) {
  return {{"d", factor.d},
          {"frequencies", nlohmann::json(factor.freqs.values())},
          {"weights", vector_to_json(factor.weights)}};
}

FourierFactor factor_from_json(const nlohmann::json& j) {
  return FourierFactor(j.at("d").get<int>(),
                       FrequencySet(j.at("frequencies").get<std::vector<double>>()),
                       vector_from_json(j.at("weights")));
}

nlohmann::json plan_to_json(const SamplingPlan& plan) {
  return {{"d", plan.d},
          {"m", plan.m},
          {"seed", plan.seed},
          {"indices", nlohmann::json(plan.indices)},
          {"probabilities", vector_to_json(plan.probabilities)}};
}

SamplingPlan plan_from_json(const nlohmann::json& j) {
  SamplingPlan plan;
  plan.d = j.at("d").get<int>();
  plan.m = j.at("m").get<int>();
  plan.seed = j.at("seed").get<std::uint64_t>();
  plan.indices = j.at("indices").get<std::vector<int>>();
  plan.probabilities = vector_from_json(j.at("probabilities"));
  return plan;
}

nlohmann::json bounds_to_json(const LevBounds& bounds) {
  return {{"d", bounds.d},
          {"r", bounds.r},
          {"tau", vector_to_json(bounds.tau)},
          {"total", bounds.total}};
}

nlohmann::json spec_to_json(const InstanceSpec& spec) {
  return {{"family", family_to_string(spec.family)},
          {"d", spec.d},
          {"k", spec.k},
          {"sigma", spec.sigma},
          {"seed", spec.seed}};
}

InstanceSpec spec_from_json(const nlohmann::json& j) {
  InstanceSpec spec;
  spec.family = family_from_string(j.at("family").get<std::string>());
  spec.d = j.at("d").get<int>();
  spec.k = j.at("k").get<int>();
  spec.sigma = j.at("sigma").get<double>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

nlohmann::json instance_to_json(const GeneratedInstance& inst) {
  return {{"spec", spec_to_json(inst.spec)},
          {"matrix", toeplitz_to_json(inst.matrix)},
          {"truth", factor_to_json(inst.truth)}};
}

GeneratedInstance instance_from_json(const nlohmann::json& j) {
  return GeneratedInstance{spec_from_json(j.at("spec")), toeplitz_from_json(j.at("matrix")),
                           factor_from_json(j.at("truth"))};
}

nlohmann::json recovered_to_json(const RecoveredFactor& rec) {
  const RecoveryConfig& c = rec.config;
  return {{"factor", factor_to_json(rec.factor)},
          {"ledger",
           {{"distinct_lags", rec.ledger.distinct_lags()},
            {"total_reads", rec.ledger.total_reads}}},
          {"stage_errors", {rec.stage_errors[0], rec.stage_errors[1]}},
          {"config",
           {{"k", c.k},
            {"eps", c.eps},
            {"delta", c.delta},
            {"mode", c.mode == RecoveryMode::kGreedy ? "greedy" : "exhaustive"},
            {"m1", c.m1},
            {"m2", c.m2},
            {"r1", c.r1},
            {"r2", c.r2},
            {"gamma", c.gamma},
            {"seed", c.seed},
            {"sv_cutoff", c.sv_cutoff},
            {"project_psd", c.project_psd}}}};
}

SymToeplitz matrix_from_any_json(const nlohmann::json& j) {
  if (j.contains("matrix")) return toeplitz_from_json(j.at("matrix"));
  return toeplitz_from_json(j);
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_json_file: cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("load_json_file: parse failure in '" + path + "': " + e.what());
  }
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw Error("save_json_file: cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) throw Error("save_json_file: write failure on '" + path + "'");
}

}  // namespace tsketch
