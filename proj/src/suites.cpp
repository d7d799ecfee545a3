#include <cmath>
#include <limits>
#include <sstream>

#include "bergman/cli_runner.hpp"
#include "bergman/ideal_witness.hpp"

namespace bergman {

using nlohmann::json;

namespace {

// Records named comparisons; a failed one becomes a failure line.
class Checks {
 public:
  explicit Checks(SuiteResult& s, std::string prefix = "") : s_(s), prefix_(std::move(prefix)) {}

  bool le(const std::string& name, double value, double limit) { return add(name, value, limit, "<=", value <= limit); }
  bool ge(const std::string& name, double value, double limit) { return add(name, value, limit, ">=", value >= limit); }
  bool truth(const std::string& name, bool ok, const std::string& detail = "") {
    json c{{"check", prefix_ + name}, {"pass", ok}};
    if (!detail.empty()) c["detail"] = detail;
    s_.results["checks"].push_back(c);
    if (!ok) s_.failures.push_back(prefix_ + name + (detail.empty() ? "" : ": " + detail));
    return ok;
  }

 private:
  bool add(const std::string& name, double value, double limit, const char* op, bool ok) {
    s_.results["checks"].push_back({{"check", prefix_ + name}, {"value", value}, {"op", op}, {"limit", limit}, {"pass", ok}});
    if (!ok) {
      std::ostringstream os;
      os.precision(6);
      os << prefix_ << name << ": " << value << " not " << op << " " << limit;
      s_.failures.push_back(os.str());
    }
    return ok;
  }
  SuiteResult& s_;
  std::string prefix_;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

SphereSet sphere_set(int n, const std::vector<CVector>& pts) {
  SphereSet s{n, {}};
  for (const CVector& v : pts) s.points.push_back(SpherePoint::from(v));
  return s;
}

std::vector<int> degrees_for(const CaseConfig& c, bool sweep) {
  if (sweep) return c.degree_sweep;
  return {c.degree};
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

RadialProfile profile(std::function<double(double)> g, double support, std::vector<double> breaks, double sup) {
  RadialProfile p;
  p.value = std::move(g);
  p.support = support;
  p.breakpoints = std::move(breaks);
  p.sup = sup;
  return p;
}

std::vector<std::pair<std::string, RadialProfile>> radial_panel(double r) {
  return {{"|z|^2", profile([](double x) { return x * x; }, 1.0, {}, 1.0)},
          {"indicator(|z|<r)", profile([](double) { return 1.0; }, r, {}, 1.0)},
          {"(1-|z|^2/r^2)+", witness_profile(r)},
          {"cos(3|z|)", profile([](double x) { return std::cos(3.0 * x); }, 1.0, {}, 1.0)}};
}

double slope_of(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  const double N = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / N;
    my += std::log(y[i]) / N;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

// ------------------------------------------------------------------ geometry

void geometry_suite(const ExperimentConfig& cfg, SuiteResult& s) {
  Checks chk(s);
  const SampleCounts& N = cfg.samples;
  Rng rng(cfg.seed);
  json per_dim = json::array();
  for (int n : {1, 2, 3}) {
    double triangle = -1.0, invol = 0.0, invariance = 0.0;
    for (int i = 0; i < N.triangle_triples; ++i) {
      const BallPoint z = BallPoint::from(sample_ball(rng, n));
      const BallPoint w = BallPoint::from(sample_ball(rng, n));
      const BallPoint u = BallPoint::from(sample_ball(rng, n));
      const CombinedBound b = metric_combined_bound(z, w, u);
      triangle = std::max(triangle, b.lhs - b.rhs);
    }
    // Both identities lose about eps / (1 - |a|^2) in double precision, so the gated
    // samples keep |a|, |z|, |w| <= kGatedRadius; full-ball errors are reported alongside.
    constexpr double kGatedRadius = 0.99;
    double invol_full = 0.0, invariance_full = 0.0;
    for (int i = 0; i < N.involution_pairs; ++i) {
      for (const double radius : {kGatedRadius, 1.0}) {
        const BallPoint a = BallPoint::from(sample_ball(rng, n, radius));
        const BallPoint z = BallPoint::from(sample_ball(rng, n, radius));
        const BallPoint w = BallPoint::from(sample_ball(rng, n, radius));
        const double e1 = (moebius(a, moebius(a, z)).coords() - z.coords()).norm();
        const double e2 = std::abs(pseudo_metric(moebius(a, z), moebius(a, w)) - pseudo_metric(z, w));
        double& i1 = radius < 1.0 ? invol : invol_full;
        double& i2 = radius < 1.0 ? invariance : invariance_full;
        i1 = std::max(i1, e1);
        i2 = std::max(i2, e2);
      }
    }
    per_dim.push_back({{"n", n}, {"triangle_max_excess", triangle}, {"gated_radius", kGatedRadius},
                       {"involution_max_error", invol}, {"invariance_max_error", invariance},
                       {"involution_max_error_full_ball", invol_full},
                       {"invariance_max_error_full_ball", invariance_full}});
    const std::string p = "n=" + std::to_string(n) + " ";
    chk.le(p + "combined-metric inequality excess", std::max(triangle, 0.0), cfg.tol.geometry);
    chk.le(p + "involution error", invol, cfg.tol.geometry);
    chk.le(p + "rho invariance error", invariance, cfg.tol.geometry);

    // Membership agreement between the metric and ellipsoid descriptions.
    int agree = 0, disagree = 0, banded = 0;
    std::uniform_real_distribution<double> ur(0.05, 0.95);
    for (int i = 0; i < N.membership_points; ++i) {
      const BallPoint a = BallPoint::from(sample_ball(rng, n));
      const double r = ur(rng);
      const BallPoint z = (i % 2 == 0) ? BallPoint::from(sample_ball(rng, n))
                                       : sample_metric_ball(rng, a, std::min(0.99, 1.3 * r));
      const double rho = pseudo_metric(z, a);
      if (std::abs(rho - r) <= cfg.tol.membership_band) {
        ++banded;
        continue;
      }
      (in_metric_ball(a, r, z) == in_ellipsoid(ellipsoid_params(a, r), r, z) ? agree : disagree) += 1;
    }
    per_dim.back()["membership"] = {{"agree", agree}, {"disagree", disagree}, {"in_band", banded}};
    chk.truth(p + "membership agreement", disagree == 0, std::to_string(disagree) + " disagreements");
  }
  s.results["dimensions"] = per_dim;

  // Disjointness at the threshold.
  json disj = json::array();
  for (int n : {1, 2}) {
    int overlaps = 0, tested = 0;
    for (int pair = 0; pair < N.disjoint_pairs; ++pair) {
      const double r1 = (pair % 2 == 0) ? cfg.r : 0.3, r2 = cfg.r;
      const double thr = disjoint_threshold(r1, r2);
      const BallPoint z = BallPoint::from(sample_ball(rng, n, 0.9));
      std::uniform_real_distribution<double> rad(thr, 0.999);
      const BallPoint v = BallPoint::from(rad(rng) * sample_sphere(rng, n));
      const BallPoint w = moebius(z, v);  // rho(z, w) = |v| >= thr
      for (int i = 0; i < N.points_per_ball; ++i) {
        ++tested;
        if (in_metric_ball(w, r2, sample_metric_ball(rng, z, r1))) ++overlaps;
      }
    }
    disj.push_back({{"n", n}, {"tested", tested}, {"overlaps", overlaps}});
    chk.truth("n=" + std::to_string(n) + " disjointness at threshold", overlaps == 0,
              std::to_string(overlaps) + " shared points");
  }
  s.results["disjointness"] = disj;

  // Inclusion of E(a, r) in B(zeta, eps) for |a - zeta| < delta_for(r, eps).
  json inclusion = json::array();
  std::string csv = "n,r,eps,delta,points,eps_violations,chain_violations,max_distance\n";
  int total_viol = 0;
  for (int n : {1, 2}) {
    for (double r : cfg.inclusion_radii) {
      for (double eps : cfg.inclusion_eps) {
        const double delta = delta_for(r, eps);
        int viol = 0, chain = 0, pts = 0;
        double worst = 0.0;
        for (int k = 0; k < N.inclusion_directions; ++k) {
          const CVector zeta = sample_sphere(rng, n);
          const BallPoint a = sample_near(rng, zeta, delta);
          const double bound = 2.0 * r * std::sqrt(ellipsoid_params(a, r).s);
          for (int i = 0; i < N.points_per_ball; ++i) {
            const BallPoint z = sample_metric_ball(rng, a, r);
            const double dist = (z.coords() - zeta).norm();
            worst = std::max(worst, dist);
            ++pts;
            if (!(dist < eps)) ++viol;
            if (!((z.coords() - a.coords()).norm() < bound)) ++chain;
          }
        }
        total_viol += viol + chain;
        inclusion.push_back({{"n", n}, {"r", r}, {"eps", eps}, {"delta", delta}, {"points", pts},
                          {"eps_violations", viol}, {"chain_violations", chain}, {"max_distance", worst}});
        csv += std::to_string(n) + "," + fmt(r) + "," + fmt(eps) + "," + fmt(delta) + "," + std::to_string(pts) +
               "," + std::to_string(viol) + "," + std::to_string(chain) + "," + fmt(worst) + "\n";
      }
    }
  }
  s.results["inclusion"] = inclusion;
  s.csv.push_back({"geometry_inclusion.csv", csv});
  chk.truth("inclusion violations", total_viol == 0, std::to_string(total_viol) + " violations");
}

// ------------------------------------------------------------------ sequence

void sequence_suite(const ExperimentConfig& cfg, SuiteResult& s) {
  Rng rng(cfg.seed + 11);
  for (const CaseConfig& c : cfg.cases) {
    Checks chk(s, c.name + ": ");
    const SpherePoint zeta = SpherePoint::from(c.zeta);
    const SeparatedSequence seq = build_sequence(zeta, cfg.r, cfg.sequence_length);
    const int M = seq.size();
    const double thr = disjoint_threshold(cfg.r, cfg.r);
    double min_rho = 1.0;
    std::string rho_csv = "m";
    for (int l = 0; l < M; ++l) rho_csv += ",m" + std::to_string(l + 1);
    rho_csv += "\n";
    for (int k = 0; k < M; ++k) {
      rho_csv += std::to_string(k + 1);
      for (int l = 0; l < M; ++l) {
        const double rho = pseudo_metric(seq.point(k), seq.point(l));
        if (k != l) min_rho = std::min(min_rho, rho);
        rho_csv += "," + fmt(rho);
      }
      rho_csv += "\n";
    }
    bool schedule = true;
    std::string radii_csv = "m,t,one_minus_t\n";
    for (int m = 0; m < M; ++m) {
      if (!(seq.radii[m] > 1.0 - 1.0 / (m + 1)) || (m > 0 && !(seq.radii[m] > seq.radii[m - 1]))) schedule = false;
      radii_csv += std::to_string(m + 1) + "," + fmt(seq.radii[m]) + "," + fmt(seq.gaps[m]) + "\n";
    }
    int overlaps = 0, tested = 0;
    for (int k = 0; k < M; ++k)
      for (int i = 0; i < cfg.samples.points_per_ball; ++i) {
        const BallPoint p = sample_metric_ball(rng, seq.point(k), cfg.r);
        ++tested;
        for (int l = 0; l < M; ++l)
          if (l != k && in_metric_ball(seq.point(l), cfg.r, p)) {
            ++overlaps;
            break;
          }
      }
    const SeparatedSequence shorter = build_sequence(zeta, cfg.r, std::max(1, M - 1));
    bool prefix = true;
    for (int m = 0; m < shorter.size(); ++m) prefix = prefix && shorter.radii[m] == seq.radii[m];

    s.results["cases"].push_back({{"case", c.name}, {"radii", seq.radii}, {"one_minus_t", seq.gaps},
                                  {"min_pairwise_rho", min_rho}, {"threshold", thr}, {"overlap_tested", tested},
                                  {"overlaps", overlaps}});
    chk.truth("pairwise rho above threshold", min_rho > thr, "min " + fmt(min_rho));
    chk.truth("schedule 1-1/m < t_m, increasing", schedule);
    chk.truth("membership overlap", overlaps == 0, std::to_string(overlaps) + " shared points");
    chk.truth("prefix stable under extension", prefix);
    s.csv.push_back({"sequence_" + c.name + "_radii.csv", radii_csv});
    s.csv.push_back({"sequence_" + c.name + "_rho.csv", rho_csv});
  }
}

// ------------------------------------------------------------------ basis

void basis_suite(const ExperimentConfig& cfg, SuiteResult& s) {
  Rng rng(cfg.seed + 21);
  for (const CaseConfig& c : cfg.cases) {
    Checks chk(s, c.name + ": ");
    const QuadratureRule rule = build_rule(c.quadrature);
    const int n = c.dimension;
    json jc{{"case", c.name}, {"quadrature", rule_metadata(rule)}};
    chk.le("weight sum error", std::abs(rule.weights.sum() - 1.0), 1e-13);
    chk.truth("weights positive", (rule.weights.array() > 0.0).all());

    CVector zc = CVector::Zero(n);
    zc(0) = 0.6;
    const BallPoint z = BallPoint::from(zc);
    const cplx kk = integrate([&](const CVector& w) { return cplx(std::norm(kernel_raw(zc, w))); }, rule);
    jc["kernel_norm_0.6"] = std::sqrt(kk.real());
    // The tensor rule for n >= 2 is too coarse for this non-polynomial integrand; reported only.
    if (n == 1) chk.le("|‖k_0.6‖ - 1|", std::abs(std::sqrt(kk.real()) - 1.0), cfg.tol.kernel_norm);
    CVector zr = CVector::Zero(n);
    zr(0) = 0.2;

    std::string csv = "degree,count,gram_defect,reproducing_error,kernel_partial_sum\n";
    double prev_sum = 0.0;
    bool increasing = true;
    const double limit = std::pow(1.0 - z.norm2(), -(n + 1.0));
    for (int d : degrees_for(c, true)) {
      const BasisPtr basis = TruncatedBasis::make(n, d);
      const double gram = gram_defect(basis, rule);
      const CVector e = basis->evaluate(zc);
      const double partial = e.squaredNorm();
      if (!(partial > prev_sum && partial < limit)) increasing = false;
      prev_sum = partial;
      // Reproducing identity on a random polynomial of degree <= d.
      Expansion g{basis, CVector(basis->size())};
      std::normal_distribution<double> gauss;
      for (Eigen::Index k = 0; k < basis->size(); ++k) g.coeffs(k) = cplx(gauss(rng), gauss(rng)) / (1.0 + k);
      const Expansion gk = project([&](const CVector& w) { return eval_expansion(g, w) * std::conj(kernel_raw(zr, w)); },
                                   TruncatedBasis::make(n, 0), rule);
      const cplx expect = std::pow(1.0 - zr.squaredNorm(), 0.5 * (n + 1)) * eval_expansion(g, zr);
      const double repro = std::abs(gk.coeffs(0) - expect);
      csv += std::to_string(d) + "," + std::to_string(basis->size()) + "," + fmt(gram) + "," + fmt(repro) + "," +
             fmt(partial) + "\n";
      jc["degrees"].push_back({{"degree", d}, {"count", basis->size()}, {"gram_defect", gram},
                               {"reproducing_error", repro}, {"kernel_partial_sum", partial}});
      chk.le("d=" + std::to_string(d) + " Gram defect", gram, c.gram_tolerance);
      chk.le("d=" + std::to_string(d) + " reproducing identity", repro, 1e-9);
    }
    chk.truth("kernel partial sums increase below the limit", increasing);
    s.results["cases"].push_back(jc);
    s.csv.push_back({"basis_" + c.name + ".csv", csv});
  }
}

// ------------------------------------------------------------------ toeplitz

void toeplitz_suite(const ExperimentConfig& cfg, SuiteResult& s) {
  for (const CaseConfig& c : cfg.cases) {
    Checks chk(s, c.name + ": ");
    const int n = c.dimension;
    const QuadratureRule rule = build_rule(c.quadrature);
    json jc{{"case", c.name}};
    for (int d : degrees_for(c, cfg.sweep)) {
      const BasisPtr basis = TruncatedBasis::make(n, d);
      const std::string p = "d=" + std::to_string(d) + " ";
      json jd{{"degree", d}};

      const OperatorMatrix one = toeplitz_generic(Symbol::constant(1.0), basis, rule);
      const double id_err = (one.m - CMatrix::Identity(basis->size(), basis->size())).cwiseAbs().maxCoeff();
      jd["identity_error"] = id_err;
      chk.le(p + "T_1 - I", id_err, 1e-12);

      double fast = 0.0;
      for (const auto& [name, g] : radial_panel(cfg.r)) {
        const Symbol f = Symbol::radial(g, name);
        const double diff = (toeplitz_radial(g, basis).m - toeplitz_generic(f, basis, rule).m).cwiseAbs().maxCoeff();
        jd["fast_path"][name] = diff;
        fast = std::max(fast, diff);
      }
      chk.le(p + "radial fast path vs quadrature", fast, cfg.tol.fast_path);
      {
        const Symbol w = witness_symbol(cfg.r);
        const double diff = (toeplitz_matrix(w, basis, rule).m - toeplitz_generic(w, basis, rule).m).cwiseAbs().maxCoeff();
        jd["fast_path"]["z1*eta(|z|/r)"] = diff;
        chk.le(p + "monomial band vs quadrature", diff, cfg.tol.fast_path);
      }

      // diag of T_{|z|^2} = (n+k)/(n+k+1).
      const OperatorMatrix t2 = toeplitz_radial(radial_panel(cfg.r)[0].second, basis);
      double diag = 0.0;
      for (Eigen::Index k = 0; k < basis->size(); ++k) {
        const double deg = basis->degree_of(k);
        diag = std::max(diag, std::abs(t2.m(k, k).real() - (n + deg) / (n + deg + 1.0)));
      }
      jd["diag_abs2_error"] = diag;
      chk.le(p + "diag T_{|z|^2}", diag, cfg.tol.diagonal);

      // Norm contraction over the shipped symbol panel.
      std::vector<Symbol> panel;
      for (const auto& [name, g] : radial_panel(cfg.r)) panel.push_back(Symbol::radial(g, name));
      panel.push_back(witness_symbol(cfg.r));
      panel.push_back(witness_symbol(cfg.r).conj());
      panel.push_back(Symbol::sampled([](const CVector& z) { return cplx(z(0).real(), 0.5 * z(0).imag()); }, 1.0,
                                      "Re z1 + i Im z1 / 2"));
      CVector a = c.zeta * 0.5;
      panel.push_back(witness_symbol(cfg.r).composed_with(BallPoint::from(a)));
      const SphereSet F = sphere_set(n, c.F1.empty() ? c.F2 : c.F1);
      panel.push_back(Symbol::region([F, r = cfg.r](const CVector& z) { return in_region_W_raw(F, r, z); }, "indicator(W_F)"));
      double excess = -1.0;
      for (const Symbol& f : panel) {
        const OperatorMatrix t = toeplitz_matrix(f, basis, rule);
        const double nrm = op_norm(t);
        jd["norms"].push_back({{"symbol", f.name()}, {"op_norm", nrm}, {"sup_bound", f.sup_norm_bound()}});
        excess = std::max(excess, nrm - f.sup_norm_bound());
      }
      chk.le(p + "op_norm - sup bound", excess, cfg.tol.norm_contraction);

      // Adjoint symmetry and self-adjointness of real symbols.
      double adj = 0.0;
      for (const Symbol& f : {panel[4], panel[6], panel[7]}) {
        const OperatorMatrix t = toeplitz_matrix(f, basis, rule);
        const OperatorMatrix tc = toeplitz_matrix(f.conj(), basis, rule);
        adj = std::max(adj, (tc.m - t.m.adjoint()).cwiseAbs().maxCoeff());
      }
      for (const Symbol& f : {panel[1], panel[8]}) {
        const OperatorMatrix t = toeplitz_matrix(f, basis, rule);
        adj = std::max(adj, (t.m - t.m.adjoint()).cwiseAbs().maxCoeff());
      }
      jd["adjoint_error"] = adj;
      chk.le(p + "adjoint symmetry", adj, 1e-12);

      const double comm = op_norm(commutator(toeplitz_radial(radial_panel(cfg.r)[0].second, basis),
                                             toeplitz_radial(radial_panel(cfg.r)[2].second, basis)));
      chk.le(p + "radial commutator", comm, 1e-15);

      // Entry decay for a compactly supported radial symbol.
      const OperatorMatrix ind = toeplitz_radial(radial_panel(cfg.r)[1].second, basis);
      const double ratio = std::abs(ind.m(basis->size() - 1, basis->size() - 1)) / std::abs(ind.m(0, 0));
      jd["compact_support_diag_ratio"] = ratio;
      chk.le(p + "compact-support diagonal decay", ratio, std::pow(cfg.r, 2.0 * d) * (n + d));

      // Witness commutator and positivity of S.
      const WitnessOperator w = witness_operator(SpherePoint::from(c.zeta), cfg.r, 1, basis);
      const double cnorm = op_norm(w.commutator);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(w.S.m);
      jd["commutator_norm"] = cnorm;
      jd["S_min_eigenvalue"] = es.eigenvalues().minCoeff();
      chk.ge(p + "‖[T_f, T_conj f]‖", cnorm, 1e-300);
      chk.ge(p + "min eigenvalue of S", es.eigenvalues().minCoeff(), -cfg.tol.positivity);
      if (d == c.degree) {
        s.csv.push_back({"toeplitz_" + c.name + "_witness.csv",
                         to_csv(toeplitz_matrix(witness_symbol(cfg.r), basis, rule))});
      }
      jc["degrees"].push_back(jd);
    }
    s.results["cases"].push_back(jc);
  }
}

// ------------------------------------------------------------------ unitary

void unitary_suite(const ExperimentConfig& cfg, SuiteResult& s) {
  Rng rng(cfg.seed + 31);
  for (const CaseConfig& c : cfg.cases) {
    Checks chk(s, c.name + ": ");
    const int n = c.dimension;
    const QuadratureRule rule = build_rule(c.quadrature);
    const SpherePoint zeta = SpherePoint::from(c.zeta);
    const BallPoint z = zeta.scaled(c.unitary_radius);
    const Symbol f = Symbol::radial(radial_panel(cfg.r)[0].second, "|z|^2");
    json jc{{"case", c.name}, {"point_radius", c.unitary_radius}, {"probe_degree", c.probe_degree}};

    std::vector<double> udef, cdef, e0def;
    std::string csv = "degree,unitarity_defect,conjugation_defect,e0_norm_defect,series_vs_quadrature,pairing_error\n";
    const BallPoint pz = BallPoint::from(0.2 * sample_sphere(rng, n));
    const BallPoint pw = BallPoint::from(0.25 * sample_sphere(rng, n));
    const WeakPairing exact_small = weak_pairing_exact(z, pz, pw);
    std::vector<double> pair_err;
    for (int d : c.degree_sweep) {
      const BasisPtr basis = TruncatedBasis::make(n, d);
      const OperatorMatrix u = unitary_matrix(z, basis, rule);
      const ConjugationCheck cc = conjugate_toeplitz(z, f, basis, rule, c.probe_degree);
      udef.push_back(unitarity_defect(u, c.probe_degree));
      cdef.push_back(cc.defect);
      e0def.push_back(std::abs(u.m.col(0).norm() - 1.0));
      const double series = (u.m - unitary_matrix_series(z, basis).m).cwiseAbs().maxCoeff();
      pair_err.push_back(std::abs(weak_pairing_truncated(u, pz, pw) - exact_small.value));
      csv += std::to_string(d) + "," + fmt(udef.back()) + "," + fmt(cdef.back()) + "," + fmt(e0def.back()) + "," +
             fmt(series) + "," + fmt(pair_err.back()) + "\n";
      jc["sweep"].push_back({{"degree", d}, {"unitarity_defect", udef.back()}, {"conjugation_defect", cdef.back()},
                             {"e0_norm_defect", e0def.back()}, {"series_vs_quadrature", series},
                             {"pairing_error", pair_err.back()}});
    }
    chk.truth("unitarity defect strictly decreasing", strictly_decreasing(udef));
    chk.truth("conjugation defect strictly decreasing", strictly_decreasing(cdef));
    chk.truth("‖U_z e_0‖ - 1 decreasing", strictly_decreasing(e0def));
    chk.truth("truncated pairing converging", pair_err.back() < pair_err.front());
    s.csv.push_back({"unitary_" + c.name + "_sweep.csv", csv});

    {
      const BasisPtr basis = TruncatedBasis::make(n, c.degree);
      const double u0 = (unitary_matrix(BallPoint::origin(n), basis, rule).m - reflection(basis).m).cwiseAbs().maxCoeff();
      jc["U0_error"] = u0;
      chk.le("U_0 = diag((-1)^|alpha|)", u0, 1e-12);
      // Conjugation at the origin with a radial symbol holds to rule accuracy.
      const double c0 = conjugate_toeplitz(BallPoint::origin(n), f, basis, rule, c.degree).defect;
      jc["conjugation_at_origin"] = c0;
      chk.le("conjugation at z=0, radial f", c0, 1e-12);
    }

    // Closed-form pairing.
    const BallPoint zero = BallPoint::origin(n);
    const WeakPairing wp = weak_pairing_exact(zeta.scaled(0.9), zero, zero);
    const double expect = std::pow(0.19, 0.5 * (n + 1));
    jc["pairing_at_origin"] = {{"value", wp.value.real()}, {"imag", wp.value.imag()}, {"expected", expect}};
    chk.le("pairing z=w=0, |z_m|=0.9", std::abs(wp.value - expect), cfg.tol.weak_exact);
    int bound_viol = 0;
    for (int i = 0; i < cfg.samples.weak_pairing_configs; ++i) {
      const WeakPairing p = weak_pairing_exact(BallPoint::from(sample_ball(rng, n)), BallPoint::from(sample_ball(rng, n)),
                                               BallPoint::from(sample_ball(rng, n)));
      if (std::abs(p.value) > p.bound * (1.0 + 1e-12)) ++bound_viol;
    }
    jc["pairing_bound_violations"] = bound_viol;
    chk.truth("pairing bound on random configurations", bound_viol == 0, std::to_string(bound_viol) + " violations");

    // Decay along a separated sequence.
    const SeparatedSequence seq = build_sequence(zeta, cfg.r, cfg.sequence_length);
    std::vector<double> omn, bounds, values;
    std::string dcsv = "m,t,one_minus_norm2,abs_value,bound\n";
    for (int m = 0; m < seq.size(); ++m) {
      const WeakPairing p = weak_pairing_exact(seq.point(m), pz, pw);
      omn.push_back(seq.gaps[m] * (2.0 - seq.gaps[m]));
      bounds.push_back(p.bound);
      values.push_back(std::abs(p.value));
      dcsv += std::to_string(m + 1) + "," + fmt(seq.radii[m]) + "," + fmt(omn.back()) + "," + fmt(values.back()) + "," +
              fmt(bounds.back()) + "\n";
    }
    const double slope = slope_of(omn, bounds);
    const double target = 0.5 * (n + 1);
    jc["pairing_decay"] = {{"slope", slope}, {"target", target}, {"first", values.front()}, {"last", values.back()}};
    chk.le("pairing bound slope error", std::abs(slope - target), cfg.tol.pairing_slope * target);
    chk.truth("pairing decays along the sequence", values.back() < 1e-3 * values.front());
    s.csv.push_back({"unitary_" + c.name + "_decay.csv", dcsv});
    s.results["cases"].push_back(jc);
  }
}

// ------------------------------------------------------------------ witness

void witness_suite(const ExperimentConfig& cfg, SuiteResult& s) {
  for (const CaseConfig& c : cfg.cases) {
    Checks chk(s, c.name + ": ");
    const int n = c.dimension;
    const SpherePoint zeta = select_zeta(sphere_set(n, c.F1), sphere_set(n, c.F2), cfg.eps).first;
    const Lemma3Sweep sw = lemma3_sweep(zeta, cfg.r, cfg.M, c.degree_sweep);
    json jc{{"case", c.name}, {"zeta", json::array()}};
    for (Eigen::Index i = 0; i < zeta.coords().size(); ++i)
      jc["zeta"].push_back({zeta.coords()(i).real(), zeta.coords()(i).imag()});
    std::string csv = "degree,m,value,margin,norm,captured_mass,compressed_value,tol\n";
    for (std::size_t i = 0; i < sw.reports.size(); ++i) {
      const Lemma3Report& r = sw.reports[i];
      json jd{{"degree", r.degree}, {"top_eigenvalue", r.top_eigenvalue}, {"floor_c", r.floor_c}, {"tol", sw.tol[i]}};
      for (const auto& row : r.rows) {
        jd["rows"].push_back({{"m", row.m}, {"value", row.value}, {"margin", row.margin}, {"norm", row.norm},
                              {"captured_mass", row.captured_mass}, {"compressed_value", row.compressed_value}});
        csv += std::to_string(r.degree) + "," + std::to_string(row.m) + "," + fmt(row.value) + "," + fmt(row.margin) +
               "," + fmt(row.norm) + "," + fmt(row.captured_mass) + "," + fmt(row.compressed_value) + "," +
               fmt(sw.tol[i]) + "\n";
      }
      jc["sweep"].push_back(jd);
    }
    s.csv.push_back({"witness_" + c.name + "_lower_bound.csv", csv});
    chk.truth("value_m >= <Sf,f> - tol(d)", sw.values_ok);
    chk.truth("norm_m >= c", sw.norms_ok);
    chk.truth("margin improving across the sweep", sw.margin_improving);
    chk.ge("floor c", sw.reports.back().floor_c, 1e-300);
    for (const auto& f : sw.failures) s.failures.push_back(c.name + ": " + f);

    // Two routes to U_m S U_m^*, across the sweep.
    const QuadratureRule rule = build_rule(c.quadrature);
    std::string tcsv = "degree,m,defect,magnitude\n";
    std::vector<std::vector<double>> by_m(static_cast<std::size_t>(cfg.M));
    for (int d : c.degree_sweep) {
      const BasisPtr basis = TruncatedBasis::make(n, d);
      const WitnessOperator w = witness_operator(zeta, cfg.r, cfg.M, basis);
      for (const auto& row : witness_two_routes(w, cfg.r, basis, rule)) {
        by_m[static_cast<std::size_t>(row.m - 1)].push_back(row.defect);
        tcsv += std::to_string(d) + "," + std::to_string(row.m) + "," + fmt(row.defect) + "," + fmt(row.magnitude) + "\n";
      }
      for (const auto& wmsg : w.warnings) jc["warnings"].push_back(wmsg);
    }
    for (int m = 0; m < cfg.M; ++m)
      jc["two_routes"].push_back({{"m", m + 1}, {"defects", by_m[m]}, {"decreasing", strictly_decreasing(by_m[m])}});
    s.csv.push_back({"witness_" + c.name + "_two_routes.csv", tcsv});
    // Only the m=1 term is gated: for m >= 2 the commutator-of-compressions route
    // misses mass carried past degree d near the sphere, so its defect is a diagnostic.
    jc["two_routes_gated"] = json::array({1});
    chk.truth("two-route defect decreasing for m=1", strictly_decreasing(by_m[0]));
    s.results["cases"].push_back(jc);
  }
}

// ------------------------------------------------------------------ prop1

void prop1_suite(const ExperimentConfig& cfg, SuiteResult& s) {
  for (const CaseConfig& c : cfg.cases) {
    Checks chk(s, c.name + ": ");
    const int n = c.dimension;
    const SphereSet F1 = sphere_set(n, c.F1);
    const SpherePoint zeta = select_zeta(F1, sphere_set(n, c.F2), cfg.eps).first;
    const QuadratureRule rule = build_rule(c.quadrature);
    const BasisPtr basis = TruncatedBasis::make(n, c.degree);
    const SeparatedSequence seq = build_sequence(zeta, cfg.r, cfg.prop1_M);
    const Prop1Config p1 = make_prop1_config(F1, cfg.eps, rule, cfg.seed + 41, cfg.samples.delta_pairs);
    Expansion h{basis, CVector::Zero(basis->size())};
    h.coeffs(0) = 1.0;
    const Prop1Report rep = prop1_decay(ideal_panel(F1, cfg.r), seq, h, p1, basis, rule, cfg.tol.decay_target,
                                        cfg.tol.prop1_slope);
    json jc{{"case", c.name}, {"eps", p1.eps}, {"delta", p1.delta}, {"delta_floor", p1.delta_floor},
            {"nu_V2", p1.nu_V2}, {"h_sup", rep.h_sup}, {"slope", rep.slope}, {"slope_target", rep.slope_target},
            {"one_minus_norm2", rep.one_minus_norm2}, {"cutoff_norms", rep.cutoff_norms},
            {"cutoff_bounds", rep.cutoff_bounds}};
    std::string csv = "m,one_minus_norm2,cutoff_norm,cutoff_bound";
    for (std::size_t k = 0; k < rep.curves.size(); ++k) csv += ",A" + std::to_string(k + 1);
    csv += "\n";
    for (std::size_t m = 0; m < rep.one_minus_norm2.size(); ++m) {
      csv += std::to_string(m + 1) + "," + fmt(rep.one_minus_norm2[m]) + "," + fmt(rep.cutoff_norms[m]) + "," +
             fmt(rep.cutoff_bounds[m]);
      for (const auto& cv : rep.curves) csv += "," + fmt(cv.norms[m]);
      csv += "\n";
    }
    for (std::size_t k = 0; k < rep.curves.size(); ++k) {
      const auto& cv = rep.curves[k];
      jc["curves"].push_back({{"column", "A" + std::to_string(k + 1)}, {"product", cv.label}, {"norms", cv.norms},
                              {"op_norm", cv.op_norm}, {"final_ratio", cv.final_ratio}, {"decays", cv.decays}});
    }
    s.csv.push_back({"prop1_" + c.name + ".csv", csv});
    chk.truth("decay below target by the last m", rep.decay_ok);
    chk.truth("cutoff bound holds", rep.bound_ok);
    chk.le("bound slope error", std::abs(rep.slope - rep.slope_target), cfg.tol.prop1_slope * rep.slope_target);
    s.results["cases"].push_back(jc);
  }
}

// ------------------------------------------------------------------ separate

json trace_json(const BoundaryTraceReport& t) {
  return {{"approach", t.approach}, {"tolerance_eps", t.tolerance_eps}, {"inside_confirmed", t.inside_confirmed},
          {"inside_violations", t.inside_violations}, {"outside_confirmed", t.outside_confirmed},
          {"outside_violations", t.outside_violations}, {"skipped", t.skipped}};
}

void separate_suite(const ExperimentConfig& cfg, SuiteResult& s) {
  for (const CaseConfig& c : cfg.cases) {
    Checks chk(s, c.name + ": ");
    const int n = c.dimension;
    const QuadratureRule rule = build_rule(c.quadrature);
    const BasisPtr basis = TruncatedBasis::make(n, c.degree);
    SeparationOptions opt;
    opt.r = cfg.r;
    opt.M = cfg.M;
    opt.eps = cfg.eps;
    opt.factor = cfg.tol.separation_factor;
    opt.approach = cfg.approach;
    opt.trace_samples = cfg.samples.trace_samples;
    opt.region_samples = cfg.samples.region_samples;
    opt.delta_pairs = cfg.samples.delta_pairs;
    opt.seed = cfg.seed + 51;
    const SeparationReport rep = separation_experiment(sphere_set(n, c.F1), sphere_set(n, c.F2), opt, basis, rule);
    json jc{{"case", c.name},
            {"zeta_distance_to_F1", rep.zeta_distance},
            {"S_norm", rep.S_norm},
            {"floor_c", rep.lemma3.floor_c},
            {"witness_floor", rep.witness_floor},
            {"ideal_ceiling", rep.ideal_ceiling},
            {"ratio", rep.ratio},
            {"panel_points", rep.panel_points},
            {"panel_violations", rep.panel_violations},
            {"monotone_points", rep.monotone_points},
            {"monotone_violations", rep.monotone_violations},
            {"trace_F1", trace_json(rep.trace_F1)},
            {"trace_F2", trace_json(rep.trace_F2)},
            {"delta", rep.prop1_config.delta},
            {"nu_V2", rep.prop1_config.nu_V2}};
    std::string csv = "m,one_minus_norm2,witness_value,witness_norm";
    for (std::size_t k = 0; k < rep.prop1.curves.size(); ++k) csv += ",A" + std::to_string(k + 1) + "_normalized";
    csv += "\n";
    for (int m = 0; m < opt.M; ++m) {
      const auto& row = rep.lemma3.rows[static_cast<std::size_t>(m)];
      csv += std::to_string(m + 1) + "," + fmt(rep.prop1.one_minus_norm2[m]) + "," + fmt(row.value) + "," + fmt(row.norm);
      for (const auto& cv : rep.prop1.curves) csv += "," + fmt(cv.op_norm > 0 ? cv.norms[m] / cv.op_norm : 0.0);
      csv += "\n";
    }
    for (std::size_t k = 0; k < rep.prop1.curves.size(); ++k)
      jc["products"].push_back({{"column", "A" + std::to_string(k + 1)}, {"product", rep.prop1.curves[k].label}});
    s.csv.push_back({"separate_" + c.name + ".csv", csv});
    chk.ge("witness floor / ideal ceiling", rep.ratio, cfg.tol.separation_factor);
    chk.truth("panel vanishes outside W_F1", rep.panel_violations == 0);
    chk.truth("monotone region property", rep.monotone_violations == 0);
    chk.truth("boundary trace", rep.trace_F1.violations() + rep.trace_F2.violations() == 0);
    chk.ge("floor c", rep.lemma3.floor_c, 1e-300);
    s.results["cases"].push_back(jc);
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"geometry", "sequence", "basis", "toeplitz",
                                              "unitary",  "witness",  "prop1", "separate"};
  return names;
}

SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg) {
  SuiteResult s;
  s.name = name;
  s.results["checks"] = json::array();
  try {
    if (name == "geometry") geometry_suite(cfg, s);
    else if (name == "sequence") sequence_suite(cfg, s);
    else if (name == "basis") basis_suite(cfg, s);
    else if (name == "toeplitz") toeplitz_suite(cfg, s);
    else if (name == "unitary") unitary_suite(cfg, s);
    else if (name == "witness") witness_suite(cfg, s);
    else if (name == "prop1") prop1_suite(cfg, s);
    else if (name == "separate") separate_suite(cfg, s);
    else throw DomainError("unknown suite '" + name + "'");
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception& e) {
    s.failures.push_back(std::string("aborted: ") + e.what());
  }
  return s;
}

}  // namespace bergman
