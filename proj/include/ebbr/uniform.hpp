// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef EBBR_UNIFORM_HPP
#define EBBR_UNIFORM_HPP

#include <optional>
#include <string>
#include <vector>

#include "ebbr/types.hpp"

namespace ebbr {

/// Uniform-over-polyhedron opponent model represented by the polyhedron's
/// vertices (mixed strategies over the opponent's actions) with one weight
/// per vertex.
struct VertexPrior {
  std::vector<std::vector<double>> vertices;
  std::vector<double> weights;
};

/// Weights default to 1/V when not given.
VertexPrior make_vertex_prior(std::vector<std::vector<double>> vertices,
                              std::optional<std::vector<double>> weights = std::nullopt);

/// Multiplies each weight by the vertex's probability of the observed action
/// and renormalizes. Throws when no vertex assigns the action positive
/// probability.
VertexPrior vertex_posterior_update(const VertexPrior& vp, int observed_action);

/// Weight-averaged mixed strategy.
std::vector<double> vertex_mean(const VertexPrior& vp);

/// JSON: {"vertices": [[...], ...], "weights": [...](optional)}.
VertexPrior vertex_prior_from_json(const std::string& text);
std::string vertex_prior_to_json(const VertexPrior& vp);

/// Extension beyond the plain vertex model: vertices are full conditional
/// strategies over hidden private states, and the update likelihood is the
/// marginal action probability sum_i pi_i v(j|i).
struct LatentVertexPrior {
  std::vector<OpponentStrategy> vertices;
  std::vector<double> weights;
};

LatentVertexPrior latent_vertex_update(const LatentVertexPrior& vp, std::span<const double> pi,
                                       int observed_action);
OpponentStrategy latent_vertex_mean(const LatentVertexPrior& vp);

}  // namespace ebbr

#endif  // EBBR_UNIFORM_HPP
