#include "swarm_svr/serialize.hpp"

#include <cmath>
#include <fstream>

#include "swarm_svr/errors.hpp"

namespace swarm_svr {

using nlohmann::json;

double round_to(double v, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(v * scale) / scale;
}

json to_json(const MissingReport& report) {
  json params = json::object();
  for (const auto& e : report.entries) {
    params[std::string(parameter_name(e.parameter))] = {
        {"count", e.count}, {"fraction", e.fraction}, {"fraction_display", round_to(e.fraction, 6)}};
  }
  return {{"year", report.year}, {"total_rows", report.total_rows}, {"parameters", params}};
}

json to_json(const ScalerParams& s) {
  return {{"feature_mean", s.feature_mean},
          {"feature_std", s.feature_std},
          {"target_mean", s.target_mean},
          {"target_std", s.target_std}};
}

ScalerParams scaler_from_json(const json& j) {
  ScalerParams s;
  j.at("feature_mean").get_to(s.feature_mean);
  j.at("feature_std").get_to(s.feature_std);
  j.at("target_mean").get_to(s.target_mean);
  j.at("target_std").get_to(s.target_std);
  return s;
}

json to_json(const EvalReport& r) {
  json exact = {{"rmse", r.rmse}, {"mae", r.mae}};
  json out = {{"rmse", round_to(r.rmse, 4)}, {"mae", round_to(r.mae, 4)}, {"n", r.n}};
  if (r.r2) {
    out["r2"] = round_to(*r.r2, 4);
    exact["r2"] = *r.r2;
  } else {
    out["r2"] = nullptr;
    exact["r2"] = nullptr;
  }
  out["exact"] = exact;
  return out;
}

json to_json(const KernelSpec& spec) {
  return {{"family", kernel_family_name(spec.family())},
          {"gamma", spec.gamma()},
          {"degree", spec.degree()},
          {"offset", spec.offset()}};
}

KernelSpec kernel_from_json(const json& j) {
  switch (parse_kernel_family(j.at("family").get<std::string>())) {
    case KernelFamily::kLinear: return KernelSpec::linear();
    case KernelFamily::kPolynomial:
      return KernelSpec::polynomial(j.at("gamma").get<double>(), j.at("degree").get<int>());
    case KernelFamily::kRbf: return KernelSpec::rbf(j.at("gamma").get<double>());
    case KernelFamily::kSigmoid:
      return KernelSpec::sigmoid(j.at("gamma").get<double>(), j.at("offset").get<double>());
  }
  throw InvalidArgument("bad kernel");
}

json to_json(const SvrModel& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.support_vectors.rows(); ++r) {
    auto row = m.support_vectors.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  json training = {{"n_train", m.info.n_train}, {"iterations", m.info.iterations},
                   {"c", m.info.c},             {"epsilon", m.info.epsilon},
                   {"tol", m.info.tol}};
  training["seed"] = m.info.seed ? json(*m.info.seed) : json(nullptr);
  return {{"kernel", to_json(m.kernel)},
          {"n_features", m.support_vectors.cols()},
          {"support_vectors", rows},
          {"beta", m.beta},
          {"sv_indices", m.sv_indices},
          {"bias", m.bias},
          {"scaler", m.scaler ? to_json(*m.scaler) : json(nullptr)},
          {"training", training}};
}

SvrModel model_from_json(const json& j) {
  SvrModel m;
  m.kernel = kernel_from_json(j.at("kernel"));
  const auto cols = j.at("n_features").get<std::size_t>();
  m.support_vectors = Matrix(0, cols);
  for (const auto& row : j.at("support_vectors")) m.support_vectors.append_row(row.get<std::vector<double>>());
  j.at("beta").get_to(m.beta);
  j.at("sv_indices").get_to(m.sv_indices);
  m.bias = j.at("bias").get<double>();
  if (!j.at("scaler").is_null()) m.scaler = scaler_from_json(j.at("scaler"));
  const auto& t = j.at("training");
  m.info.n_train = t.at("n_train").get<std::size_t>();
  m.info.iterations = t.at("iterations").get<std::size_t>();
  m.info.c = t.at("c").get<double>();
  m.info.epsilon = t.at("epsilon").get<double>();
  m.info.tol = t.at("tol").get<double>();
  if (!t.at("seed").is_null()) m.info.seed = t.at("seed").get<std::uint64_t>();
  if (m.beta.size() != m.support_vectors.rows() || m.sv_indices.size() != m.beta.size()) {
    throw InvalidArgument("model JSON: support vectors, beta and sv_indices differ in length");
  }
  return m;
}

json to_json(const tuning::TuneResult& r) {
  return {{"optimizer", tuning::optimizer_tag(r.optimizer)},
          {"seed", r.seed},
          {"best_c", r.best_c},
          {"best_gamma", r.best_gamma},
          {"best_fitness", r.best_fitness},
          {"history", r.history}};
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
}

}  // namespace swarm_svr
