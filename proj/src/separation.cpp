#include <cmath>
#include <limits>

#include "bergman/ideal_witness.hpp"

namespace bergman {

std::pair<SpherePoint, double> select_zeta(const SphereSet& F1, const SphereSet& F2, double eps) {
  if (F1.dim != F2.dim) throw DomainError("F1 and F2 have different dimensions");
  const SpherePoint* best = nullptr;
  double best_dist = -1.0;
  for (const SpherePoint& p : F2.points) {
    const double d = distance_to_set(F1, p.coords());
    if (d > 0.0 && d > best_dist) {
      best = &p;
      best_dist = d;
    }
  }
  if (!best) throw DomainError("F2 minus F1 is empty");
  if (best_dist < 2.0 * eps)
    throw DomainError("no point of F2 lies at distance >= 2 eps from F1 (best " + std::to_string(best_dist) + ")");
  return {*best, best_dist};
}

SeparationReport separation_experiment(const SphereSet& F1, const SphereSet& F2, const SeparationOptions& opt,
                                       const BasisPtr& basis, const QuadratureRule& rule) {
  SeparationReport rep;
  std::tie(rep.zeta, rep.zeta_distance) = select_zeta(F1, F2, opt.eps);

  const WitnessOperator w = witness_operator(rep.zeta, opt.r, opt.M, basis);
  rep.lemma3 = lemma3_lower_bound(w, basis);
  rep.S_norm = op_norm(w.S);

  rep.prop1_config = make_prop1_config(F1, opt.eps, rule, opt.seed, opt.delta_pairs);
  const IdealPanel panel = ideal_panel(F1, opt.r);
  Expansion h{basis, CVector::Zero(basis->size())};
  h.coeffs(0) = 1.0;
  rep.prop1 = prop1_decay(panel, w.seq, h, rep.prop1_config, basis, rule);

  rep.witness_floor = rep.lemma3.floor_c / (opt.M * rep.S_norm);
  for (const DecayCurve& c : rep.prop1.curves)
    if (c.op_norm > 0.0) rep.ideal_ceiling = std::max(rep.ideal_ceiling, c.norms.back() / c.op_norm);
  rep.ratio = rep.ideal_ceiling > 0.0 ? rep.witness_floor / rep.ideal_ceiling
                                      : std::numeric_limits<double>::infinity();

  const int n = basis->dim();
  Rng rng(opt.seed + 1);
  for (int i = 0; i < opt.region_samples; ++i) {
    const CVector z = sample_ball(rng, n);
    if (in_region_W_raw(F1, opt.r, z)) continue;
    ++rep.panel_points;
    for (const Symbol& g : panel.symbols)
      if (g(z) != 0.0) {
        ++rep.panel_violations;
        break;
      }
  }

  std::vector<SpherePoint> anchors = F1.points;
  anchors.insert(anchors.end(), F2.points.begin(), F2.points.end());
  for (int i = 0; i < opt.region_samples; ++i) {
    CVector z;
    if (i % 2 == 0 || anchors.empty())
      z = sample_ball(rng, n);
    else
      z = sample_near(rng, anchors[static_cast<std::size_t>(i / 2) % anchors.size()].coords(), 0.3).coords();
    ++rep.monotone_points;
    if (in_region_W_raw(F1, opt.r, z) && !in_region_W_raw(F2, opt.r, z)) ++rep.monotone_violations;
  }

  rep.trace_F1 = boundary_trace_check(F1, opt.r, opt.trace_samples, opt.approach, opt.seed + 2);
  rep.trace_F2 = boundary_trace_check(F2, opt.r, opt.trace_samples, opt.approach, opt.seed + 3);

  if (!(rep.lemma3.floor_c > 0.0)) rep.failures.push_back("witness floor c is not positive");
  if (!(rep.ratio >= opt.factor))
    rep.failures.push_back("witness floor / ideal ceiling = " + std::to_string(rep.ratio) + " below " +
                           std::to_string(opt.factor));
  if (rep.panel_violations > 0) rep.failures.push_back("panel symbol nonzero outside W_F1");
  if (rep.monotone_violations > 0) rep.failures.push_back("monotone region property violated");
  if (rep.trace_F1.violations() + rep.trace_F2.violations() > 0) rep.failures.push_back("boundary trace violations");
  rep.pass = rep.failures.empty();
  return rep;
}

}  // namespace bergman
