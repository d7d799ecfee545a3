#include "bergman/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace bergman {

using nlohmann::json;

namespace {

json vec_to_json(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
  return a;
}

CVector vec_from_json(const json& a, const std::string& where) {
  if (!a.is_array()) throw DomainError(where + ": expected a list of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const json& c = a[i];
    if (c.is_number())
      v(static_cast<Eigen::Index>(i)) = c.get<double>();
    else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number())
      v(static_cast<Eigen::Index>(i)) = cplx(c[0].get<double>(), c[1].get<double>());
    else
      throw DomainError(where + ": entry " + std::to_string(i) + " is not a number or [re, im]");
  }
  return v;
}

json set_to_json(const std::vector<CVector>& s) {
  json a = json::array();
  for (const CVector& v : s) a.push_back(vec_to_json(v));
  return a;
}

std::vector<CVector> set_from_json(const json& a, const std::string& where) {
  if (!a.is_array()) throw DomainError(where + ": expected a list of points");
  std::vector<CVector> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(vec_from_json(a[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw DomainError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw DomainError(where + ": unknown key '" + it.key() + "'");
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(where + "." + key + ": " + e.what());
  }
}

json rule_to_json(const RuleSpec& q) {
  return {{"radial_points", q.radial_points}, {"angular_points", q.angular_points}, {"seed", q.seed}};
}

json case_to_json(const CaseConfig& c) {
  return {{"name", c.name},
          {"dimension", c.dimension},
          {"degree", c.degree},
          {"degree_sweep", c.degree_sweep},
          {"quadrature", rule_to_json(c.quadrature)},
          {"zeta", vec_to_json(c.zeta)},
          {"F1", set_to_json(c.F1)},
          {"F2", set_to_json(c.F2)},
          {"probe_degree", c.probe_degree},
          {"unitary_radius", c.unitary_radius},
          {"gram_tolerance", c.gram_tolerance}};
}

CaseConfig case_from_json(const json& j, const std::string& where) {
  check_keys(j, {"name", "dimension", "degree", "degree_sweep", "quadrature", "zeta", "F1", "F2", "probe_degree",
                 "unitary_radius", "gram_tolerance"},
             where);
  CaseConfig c;
  read(j, "name", c.name, where);
  read(j, "dimension", c.dimension, where);
  read(j, "degree", c.degree, where);
  read(j, "degree_sweep", c.degree_sweep, where);
  read(j, "probe_degree", c.probe_degree, where);
  read(j, "unitary_radius", c.unitary_radius, where);
  read(j, "gram_tolerance", c.gram_tolerance, where);
  if (j.contains("quadrature")) {
    const json& q = j.at("quadrature");
    check_keys(q, {"radial_points", "angular_points", "seed"}, where + ".quadrature");
    read(q, "radial_points", c.quadrature.radial_points, where + ".quadrature");
    read(q, "angular_points", c.quadrature.angular_points, where + ".quadrature");
    read(q, "seed", c.quadrature.seed, where + ".quadrature");
  }
  c.quadrature.dim = c.dimension;
  c.zeta = j.contains("zeta") ? vec_from_json(j.at("zeta"), where + ".zeta") : CVector();
  if (c.zeta.size() == 0 && c.dimension >= 1) {
    c.zeta = CVector::Zero(c.dimension);
    c.zeta(0) = 1.0;
  }
  if (j.contains("F1")) c.F1 = set_from_json(j.at("F1"), where + ".F1");
  if (j.contains("F2")) c.F2 = set_from_json(j.at("F2"), where + ".F2");
  return c;
}

CVector axis(int n, int j) {
  CVector v = CVector::Zero(n);
  v(j) = 1.0;
  return v;
}

}  // namespace

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  CaseConfig flagship;
  flagship.zeta = axis(1, 0);
  flagship.F2 = {axis(1, 0)};
  CaseConfig pair;
  pair.name = "pair";
  pair.dimension = 2;
  pair.degree = 8;
  pair.degree_sweep = {4, 6, 8};
  pair.quadrature = {2, 8, 24, 0};
  pair.zeta = axis(2, 0);
  pair.F1 = {axis(2, 1)};
  pair.F2 = {axis(2, 0), axis(2, 1)};
  pair.probe_degree = 1;
  pair.unitary_radius = 0.3;
  pair.gram_tolerance = 1e-6;
  cfg.cases = {flagship, pair};
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  std::vector<std::string> errs;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) errs.push_back(msg);
  };
  need(cfg.r > 0.0 && cfg.r < 1.0, "r must lie in (0,1)");
  need(cfg.M >= 1 && cfg.M <= 30, "M must lie in [1,30]");
  need(cfg.prop1_M >= 2 && cfg.prop1_M <= 30, "prop1_M must lie in [2,30]");
  need(cfg.sequence_length >= 1 && cfg.sequence_length <= 30, "sequence_length must lie in [1,30]");
  need(cfg.eps > 0.0 && cfg.eps < 2.0, "eps must lie in (0,2)");
  need(cfg.approach > 0.0 && cfg.approach < 1.0, "approach must lie in (0,1)");
  need(cfg.approach > cfg.r, "approach must exceed r");
  for (double r : cfg.inclusion_radii) need(r > 0.0 && r < 1.0, "inclusion_radii entries must lie in (0,1)");
  for (double e : cfg.inclusion_eps) need(e > 0.0, "inclusion_eps entries must be positive");
  const SampleCounts& s = cfg.samples;
  for (int v : {s.triangle_triples, s.involution_pairs, s.disjoint_pairs, s.points_per_ball, s.membership_points,
                s.inclusion_directions, s.weak_pairing_configs, s.trace_samples, s.region_samples, s.delta_pairs})
    need(v >= 1, "sample counts must be >= 1");
  need(cfg.tol.separation_factor > 0.0, "separation_factor must be positive");
  need(cfg.tol.decay_target > 0.0 && cfg.tol.decay_target < 1.0, "decay_target must lie in (0,1)");
  need(!cfg.cases.empty(), "at least one case is required");
  std::set<std::string> names;
  for (const CaseConfig& c : cfg.cases) {
    const std::string w = "case '" + c.name + "': ";
    need(names.insert(c.name).second, w + "duplicate case name");
    need(!c.name.empty() && c.name.find_first_of("/\\ ") == std::string::npos, w + "name must be a plain token");
    need(c.dimension >= 1 && c.dimension <= 4, w + "dimension must lie in [1,4]");
    need(c.degree >= 1 && c.degree <= 40, w + "degree must lie in [1,40]");
    need(c.degree_sweep.size() >= 2, w + "degree_sweep needs at least two degrees");
    for (std::size_t i = 0; i < c.degree_sweep.size(); ++i) {
      need(c.degree_sweep[i] >= 1 && c.degree_sweep[i] <= 40, w + "degree_sweep entries must lie in [1,40]");
      if (i > 0) need(c.degree_sweep[i] > c.degree_sweep[i - 1], w + "degree_sweep must increase");
    }
    need(c.quadrature.radial_points >= 1 && c.quadrature.radial_points <= 200, w + "radial_points must lie in [1,200]");
    need(c.quadrature.angular_points >= 1 && c.quadrature.angular_points <= 400,
         w + "angular_points must lie in [1,400]");
    need(c.probe_degree >= 0 && c.probe_degree < c.degree_sweep.front(),
         w + "probe_degree must be below the smallest sweep degree");
    need(c.unitary_radius >= 0.0 && c.unitary_radius < 1.0, w + "unitary_radius must lie in [0,1)");
    need(c.gram_tolerance > 0.0, w + "gram_tolerance must be positive");
    auto unit = [&](const CVector& v, const std::string& what) {
      need(v.size() == c.dimension, w + what + " has the wrong dimension");
      need(v.allFinite() && std::abs(v.norm() - 1.0) <= 1e-12, w + what + " must be a unit vector");
    };
    unit(c.zeta, "zeta");
    for (const CVector& v : c.F1) unit(v, "F1 point");
    for (const CVector& v : c.F2) unit(v, "F2 point");
    need(!c.F2.empty(), w + "F2 must not be empty");
  }
  if (!errs.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw DomainError(msg);
  }
}

json config_to_json(const ExperimentConfig& cfg) {
  const SampleCounts& s = cfg.samples;
  const Tolerances& t = cfg.tol;
  json cases = json::array();
  for (const CaseConfig& c : cfg.cases) cases.push_back(case_to_json(c));
  return {{"r", cfg.r},
          {"M", cfg.M},
          {"prop1_M", cfg.prop1_M},
          {"sequence_length", cfg.sequence_length},
          {"eps", cfg.eps},
          {"approach", cfg.approach},
          {"inclusion_radii", cfg.inclusion_radii},
          {"inclusion_eps", cfg.inclusion_eps},
          {"seed", cfg.seed},
          {"sweep", cfg.sweep},
          {"samples",
           {{"triangle_triples", s.triangle_triples},
            {"involution_pairs", s.involution_pairs},
            {"disjoint_pairs", s.disjoint_pairs},
            {"points_per_ball", s.points_per_ball},
            {"membership_points", s.membership_points},
            {"inclusion_directions", s.inclusion_directions},
            {"weak_pairing_configs", s.weak_pairing_configs},
            {"trace_samples", s.trace_samples},
            {"region_samples", s.region_samples},
            {"delta_pairs", s.delta_pairs}}},
          {"tolerances",
           {{"geometry", t.geometry},
            {"membership_band", t.membership_band},
            {"kernel_norm", t.kernel_norm},
            {"fast_path", t.fast_path},
            {"norm_contraction", t.norm_contraction},
            {"diagonal", t.diagonal},
            {"weak_exact", t.weak_exact},
            {"positivity", t.positivity},
            {"pairing_slope", t.pairing_slope},
            {"decay_target", t.decay_target},
            {"prop1_slope", t.prop1_slope},
            {"separation_factor", t.separation_factor}}},
          {"cases", cases}};
}

ExperimentConfig config_from_json(const json& j) {
  const std::string top = "config";
  check_keys(j, {"r", "M", "prop1_M", "sequence_length", "eps", "approach", "inclusion_radii", "inclusion_eps", "seed",
                 "sweep", "samples", "tolerances", "cases"},
             top);
  ExperimentConfig cfg = default_config();
  read(j, "r", cfg.r, top);
  read(j, "M", cfg.M, top);
  read(j, "prop1_M", cfg.prop1_M, top);
  read(j, "sequence_length", cfg.sequence_length, top);
  read(j, "eps", cfg.eps, top);
  read(j, "approach", cfg.approach, top);
  read(j, "inclusion_radii", cfg.inclusion_radii, top);
  read(j, "inclusion_eps", cfg.inclusion_eps, top);
  read(j, "seed", cfg.seed, top);
  read(j, "sweep", cfg.sweep, top);
  if (j.contains("samples")) {
    const json& s = j.at("samples");
    const std::string w = top + ".samples";
    check_keys(s, {"triangle_triples", "involution_pairs", "disjoint_pairs", "points_per_ball", "membership_points",
                   "inclusion_directions", "weak_pairing_configs", "trace_samples", "region_samples", "delta_pairs"},
               w);
    SampleCounts& c = cfg.samples;
    read(s, "triangle_triples", c.triangle_triples, w);
    read(s, "involution_pairs", c.involution_pairs, w);
    read(s, "disjoint_pairs", c.disjoint_pairs, w);
    read(s, "points_per_ball", c.points_per_ball, w);
    read(s, "membership_points", c.membership_points, w);
    read(s, "inclusion_directions", c.inclusion_directions, w);
    read(s, "weak_pairing_configs", c.weak_pairing_configs, w);
    read(s, "trace_samples", c.trace_samples, w);
    read(s, "region_samples", c.region_samples, w);
    read(s, "delta_pairs", c.delta_pairs, w);
  }
  if (j.contains("tolerances")) {
    const json& s = j.at("tolerances");
    const std::string w = top + ".tolerances";
    check_keys(s, {"geometry", "membership_band", "kernel_norm", "fast_path", "norm_contraction", "diagonal",
                   "weak_exact", "positivity", "pairing_slope", "decay_target", "prop1_slope", "separation_factor"},
               w);
    Tolerances& t = cfg.tol;
    read(s, "geometry", t.geometry, w);
    read(s, "membership_band", t.membership_band, w);
    read(s, "kernel_norm", t.kernel_norm, w);
    read(s, "fast_path", t.fast_path, w);
    read(s, "norm_contraction", t.norm_contraction, w);
    read(s, "diagonal", t.diagonal, w);
    read(s, "weak_exact", t.weak_exact, w);
    read(s, "positivity", t.positivity, w);
    read(s, "pairing_slope", t.pairing_slope, w);
    read(s, "decay_target", t.decay_target, w);
    read(s, "prop1_slope", t.prop1_slope, w);
    read(s, "separation_factor", t.separation_factor, w);
  }
  if (j.contains("cases")) {
    const json& cs = j.at("cases");
    if (!cs.is_array()) throw DomainError("config.cases: expected a list");
    cfg.cases.clear();
    for (std::size_t i = 0; i < cs.size(); ++i)
      cfg.cases.push_back(case_from_json(cs[i], top + ".cases[" + std::to_string(i) + "]"));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = config_to_json(cfg).dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace bergman
