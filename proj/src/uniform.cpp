// Apache License, Version 2.0, refer to LICENSE.txt

#include "ebbr/uniform.hpp"

#include <cmath>

#include "json.hpp"

namespace ebbr {

namespace {
void validate_vertices(const std::vector<std::vector<double>>& vertices) {
  if (vertices.empty()) throw Error(ErrorCode::kEmptySupport, "vertex prior needs vertices");
  const std::size_t actions = vertices.front().size();
  if (actions == 0) throw Error(ErrorCode::kInvalidArgument, "vertices must be non-empty vectors");
  for (const auto& v : vertices) {
    if (v.size() != actions)
      throw Error(ErrorCode::kDimensionMismatch, "vertices have mixed lengths");
    double s = 0.0;
    for (double p : v) {
      if (!(p >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "vertex entries must be >= 0");
      s += p;
    }
    if (std::abs(s - 1.0) > 1e-9)
      throw Error(ErrorCode::kInvalidArgument, "vertices must be probability vectors");
  }
}
}  // namespace

VertexPrior make_vertex_prior(std::vector<std::vector<double>> vertices,
                              std::optional<std::vector<double>> weights) {
  validate_vertices(vertices);
  VertexPrior vp;
  vp.vertices = std::move(vertices);
  if (weights) {
    if (weights->size() != vp.vertices.size())
      throw Error(ErrorCode::kDimensionMismatch, "weight count does not match vertex count");
    double s = 0.0;
    for (double w : *weights) {
      if (!(w >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "weights must be >= 0");
      s += w;
    }
    if (!(s > 0.0)) throw Error(ErrorCode::kInvalidArgument, "weights must have positive mass");
    vp.weights = std::move(*weights);
    for (auto& w : vp.weights) w /= s;
  } else {
    vp.weights.assign(vp.vertices.size(), 1.0 / vp.vertices.size());
  }
  return vp;
}

VertexPrior vertex_posterior_update(const VertexPrior& vp, int observed_action) {
  if (vp.vertices.empty()) throw Error(ErrorCode::kEmptySupport, "empty vertex prior");
  if (observed_action < 0 || observed_action >= static_cast<int>(vp.vertices.front().size()))
    throw Error(ErrorCode::kInvalidArgument, "observed action out of range");
  VertexPrior out = vp;
  double mass = 0.0;
  for (std::size_t v = 0; v < out.vertices.size(); ++v) {
    out.weights[v] *= out.vertices[v][observed_action];
    mass += out.weights[v];
  }
  if (!(mass > 0.0))
    throw Error(ErrorCode::kImpossibleObservation,
                "observed action has zero probability under every vertex");
  for (auto& w : out.weights) w /= mass;
  return out;
}

std::vector<double> vertex_mean(const VertexPrior& vp) {
  if (vp.vertices.empty()) throw Error(ErrorCode::kEmptySupport, "empty vertex prior");
  std::vector<double> mean(vp.vertices.front().size(), 0.0);
  for (std::size_t v = 0; v < vp.vertices.size(); ++v)
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += vp.weights[v] * vp.vertices[v][j];
  return mean;
}

VertexPrior vertex_prior_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad vertex prior JSON: ") + e.what());
  }
  try {
    auto vertices = j.at("vertices").get<std::vector<std::vector<double>>>();
    std::optional<std::vector<double>> weights;
    if (j.contains("weights")) weights = j["weights"].get<std::vector<double>>();
    return make_vertex_prior(std::move(vertices), std::move(weights));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("bad vertex prior JSON: ") + e.what());
  }
}

std::string vertex_prior_to_json(const VertexPrior& vp) {
  nlohmann::json j;
  j["vertices"] = vp.vertices;
  j["weights"] = vp.weights;
  return j.dump(2);
}

LatentVertexPrior latent_vertex_update(const LatentVertexPrior& vp, std::span<const double> pi,
                                       int observed_action) {
  if (vp.vertices.empty()) throw Error(ErrorCode::kEmptySupport, "empty vertex prior");
  LatentVertexPrior out = vp;
  double mass = 0.0;
  for (std::size_t v = 0; v < out.vertices.size(); ++v) {
    const Matrix& q = out.vertices[v].q;
    if (observed_action < 0 || observed_action >= q.cols())
      throw Error(ErrorCode::kInvalidArgument, "observed action out of range");
    double marginal = 0.0;
    for (int i = 0; i < q.rows(); ++i) marginal += pi[i] * q(i, observed_action);
    out.weights[v] *= marginal;
    mass += out.weights[v];
  }
  if (!(mass > 0.0))
    throw Error(ErrorCode::kImpossibleObservation,
                "observed action has zero probability under every vertex");
  for (auto& w : out.weights) w /= mass;
  return out;
}

OpponentStrategy latent_vertex_mean(const LatentVertexPrior& vp) {
  if (vp.vertices.empty()) throw Error(ErrorCode::kEmptySupport, "empty vertex prior");
  const Matrix& first = vp.vertices.front().q;
  OpponentStrategy mean;
  mean.q = Matrix(first.rows(), first.cols(), 0.0);
  for (std::size_t v = 0; v < vp.vertices.size(); ++v) {
    const Matrix& q = vp.vertices[v].q;
    for (int i = 0; i < q.rows(); ++i)
      for (int j = 0; j < q.cols(); ++j) mean.q(i, j) += vp.weights[v] * q(i, j);
  }
  return mean;
}

}  // namespace ebbr
