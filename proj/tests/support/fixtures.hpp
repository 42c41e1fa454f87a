#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "prefsom/inclusion_checker.hpp"
#include "prefsom/semantic_model.hpp"
#include "prefsom/som.hpp"

namespace prefsom::testing {

/// Three Gaussian clusters in the plane labeled A, B, C (sd 0.35 around (0,0), (3,0), (1.5,2.6)).
std::vector<Stimulus> three_clusters(std::uint64_t seed = 42, std::size_t per_cluster = 20);

/// A hand-made category: rd value per domain element plus members as (stimulus, bmu) positions.
struct TableSpec {
  std::string name;
  std::vector<double> rd;
  std::vector<std::pair<std::size_t, std::size_t>> members;
};

/// Model over `n` one-dimensional elements (feature = position) named e0, e1, ... unless
/// `ids` is given.
SemanticModel hand_model(std::size_t n, const std::vector<TableSpec>& tables,
                         std::vector<std::string> ids = {});

struct RandomModelOptions {
  std::size_t max_elements = 40;
  std::size_t max_categories = 5;
};

/// Random model with coarse rd values so that ties are frequent. Every category has at least
/// one member with rd 1 and a BMU with rd 0, so rd_max is 1.
SemanticModel random_model(std::mt19937_64& rng, RandomModelOptions opts = {});

/// Random strict partial order over `n` categories: a random DAG, closed transitively.
Specificity random_specificity(std::mt19937_64& rng, std::size_t n);

/// The bob/mary model: bob beats mary on Employee while they tie elsewhere, and Student is
/// more specific than Employee.
struct BobMary {
  SemanticModel model;
  Specificity specificity;
  std::size_t bob = 0;
  std::size_t mary = 0;
};
BobMary bob_mary();

/// Fresh empty directory under the test build tree.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace prefsom::testing
