#pragma once

#include <cstdint>

#include "dcop/model.hpp"

namespace dcop {

enum class GraphKind { Random, ScaleFree };

struct GenConfig {
  GraphKind kind = GraphKind::Random;
  int n = 0;
  double density = 0.0;  // random graphs only
  int m0 = 0;            // scale-free: seed node count
  int m1 = 0;            // scale-free: edges per new node
  int domainSize = 3;
  int costMax = 100;     // costs uniform in [0, costMax)
  std::uint64_t seed = 0;
};

/// Connected random graph with round(density*n*(n-1)/2) edges: a random
/// spanning tree first, then uniformly chosen extra edges. Deterministic per
/// seed.
Problem genRandom(const GenConfig& cfg);

/// Barabasi-Albert preferential attachment: m0 seed nodes connected as a
/// random spanning tree, then each new node attaches to m1 distinct existing
/// nodes sampled proportionally to degree without replacement.
Problem genScaleFree(const GenConfig& cfg);

Problem generate(const GenConfig& cfg);

}  // namespace dcop
