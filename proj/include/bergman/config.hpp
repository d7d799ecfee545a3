#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergman/quadrature.hpp"

namespace bergman {

/// One dimension-specific configuration (basis, rule, directions and sets).
struct CaseConfig {
  std::string name = "flagship";
  int dimension = 1;
  int degree = 12;
  std::vector<int> degree_sweep{6, 8, 10, 12};
  RuleSpec quadrature{1, 24, 96, 0};
  CVector zeta;                 ///< sequence direction for the sequence/unitary suites
  std::vector<CVector> F1;
  std::vector<CVector> F2;
  int probe_degree = 3;         ///< block used for unitarity and conjugation defects
  double unitary_radius = 0.5;  ///< |z| for the unitary d-sweep (z along zeta)
  double gram_tolerance = 1e-10;
};

struct SampleCounts {
  int triangle_triples = 100000;
  int involution_pairs = 10000;
  int disjoint_pairs = 20;
  int points_per_ball = 1000;
  int membership_points = 10000;
  int inclusion_directions = 100;
  int weak_pairing_configs = 10000;
  int trace_samples = 1000;
  int region_samples = 2000;
  int delta_pairs = 10000;
};

struct Tolerances {
  double geometry = 1e-12;
  double membership_band = 1e-9;
  double kernel_norm = 1e-9;
  double fast_path = 1e-8;
  double norm_contraction = 1e-8;
  double diagonal = 1e-10;
  double weak_exact = 1e-12;
  double positivity = 1e-10;
  double pairing_slope = 0.05;
  double decay_target = 0.05;
  double prop1_slope = 0.10;
  double separation_factor = 10.0;
};

struct ExperimentConfig {
  double r = 0.5;
  int M = 5;
  int prop1_M = 10;
  int sequence_length = 10;
  double eps = 0.5;
  double approach = 0.999;
  std::vector<double> inclusion_radii{0.3, 0.5, 0.7};
  std::vector<double> inclusion_eps{0.2, 0.1, 0.05};
  std::uint64_t seed = 20240601;
  SampleCounts samples;
  Tolerances tol;
  std::vector<CaseConfig> cases;
  bool sweep = false;

  // Execution settings; excluded from the serialized form and the hash.
  std::string output_dir = "out";
  int jobs = 1;
};

/// Flagship n = 1 case and the n = 2 companion.
ExperimentConfig default_config();

/// Throws DomainError listing every invalid field.
void validate(const ExperimentConfig& cfg);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
/// Missing keys take their default values; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// FNV-1a 64 of the compact serialized form, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace bergman
