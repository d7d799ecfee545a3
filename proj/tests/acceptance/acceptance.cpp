// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any fails.
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <thread>

#include "bergman/cli_runner.hpp"
#include "bergman/parallel.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << std::endl;
  if (!ok) ++failures;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

const json& case_of(const json& results, const std::string& name) {
  for (const json& c : results["cases"])
    if (c["case"] == name) return c;
  throw std::runtime_error("case " + name + " missing");
}

const json& degree_of(const json& c, int d, const char* key = "degrees") {
  for (const json& x : c[key])
    if (x["degree"] == d) return x;
  throw std::runtime_error("degree " + std::to_string(d) + " missing");
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    out[e.path().filename().string()] = std::string(std::istreambuf_iterator<char>(in), {});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to bergman-lab>\n";
    return 2;
  }
  const std::string lab = argv[1];
  bergman::set_worker_count(static_cast<int>(std::max(1u, std::min(8u, std::thread::hardware_concurrency()))));
  const bergman::ExperimentConfig cfg = bergman::default_config();

  std::map<std::string, bergman::SuiteResult> suites;
  for (const auto& name : bergman::suite_names()) suites.emplace(name, bergman::run_suite(name, cfg));
  auto res = [&](const std::string& n) -> const json& { return suites.at(n).results; };

  // 1
  try {
    double triangle = -1, inv = 0, iso = 0;
    for (const json& d : res("geometry")["dimensions"]) {
      triangle = std::max(triangle, d["triangle_max_excess"].get<double>());
      inv = std::max(inv, d["involution_max_error"].get<double>());
      iso = std::max(iso, d["invariance_max_error"].get<double>());
    }
    const bool counts = cfg.samples.triangle_triples >= 100000 && cfg.samples.involution_pairs >= 10000;
    report(1, counts && triangle <= 1e-12 && inv <= 1e-12 && iso <= 1e-12,
           "max combined-metric excess " + num(triangle) + ", involution " + num(inv) + ", invariance " + num(iso) +
               " (n=1,2,3; |a|,|z| <= " + num(res("geometry")["dimensions"][0]["gated_radius"]) + ")");
  } catch (const std::exception& e) { report(1, false, e.what()); }

  // 2
  try {
    int configs = 0, viol = 0;
    bool counts = true;
    for (const json& c : res("geometry")["inclusion"]) {
      ++configs;
      viol += c["eps_violations"].get<int>() + c["chain_violations"].get<int>();
      counts = counts && c["points"].get<int>() >= 100000;
    }
    report(2, configs == 18 && counts && viol == 0,
           std::to_string(configs) + " (n,r,eps) configurations x 100 zeta x 1000 points, " + std::to_string(viol) +
               " inclusion violations");
  } catch (const std::exception& e) { report(2, false, e.what()); }

  // 3
  try {
    const json& c = case_of(res("sequence"), "flagship");
    const double rho = c["min_pairwise_rho"];
    const int overlaps = c["overlaps"];
    report(3, c["radii"].size() == 10 && rho >= 0.8 && overlaps == 0 && cfg.samples.points_per_ball >= 1000,
           "10 radii, min pairwise rho " + num(rho) + ", " + std::to_string(overlaps) + " overlaps in " +
               std::to_string(c["overlap_tested"].get<int>()) + " samples");
  } catch (const std::exception& e) { report(3, false, e.what()); }

  // 4
  try {
    const double g1 = degree_of(case_of(res("basis"), "flagship"), 12)["gram_defect"];
    const double g2 = degree_of(case_of(res("basis"), "pair"), 8)["gram_defect"];
    const double kn = case_of(res("basis"), "flagship")["kernel_norm_0.6"];
    report(4, g1 <= 1e-10 && g2 <= 1e-6 && std::abs(kn - 1.0) <= 1e-9,
           "Gram defect " + num(g1) + " (n=1,d=12), " + num(g2) + " (n=2,d=8); |‖k_0.6‖-1| = " + num(std::abs(kn - 1.0)));
  } catch (const std::exception& e) { report(4, false, e.what()); }

  // 5
  try {
    const json& d = degree_of(case_of(res("toeplitz"), "flagship"), 12);
    double fast = 0, excess = -1;
    for (const auto& [k, v] : d["fast_path"].items()) fast = std::max(fast, v.get<double>());
    for (const json& s : d["norms"]) excess = std::max(excess, s["op_norm"].get<double>() - s["sup_bound"].get<double>());
    const double id = d["identity_error"], diag = d["diag_abs2_error"];
    report(5, id <= 1e-12 && fast <= 1e-8 && excess <= 1e-8 && diag <= 1e-10,
           "T_1-I " + num(id) + ", fast path " + num(fast) + ", max(op_norm - sup) " + num(excess) + " over " +
               std::to_string(d["norms"].size()) + " symbols, diag error " + num(diag));
  } catch (const std::exception& e) { report(5, false, e.what()); }

  // 6
  try {
    const json& c = case_of(res("unitary"), "flagship");
    std::vector<double> u, k;
    std::vector<int> degs;
    for (const json& row : c["sweep"]) {
      degs.push_back(row["degree"]);
      u.push_back(row["unitarity_defect"]);
      k.push_back(row["conjugation_defect"]);
    }
    const double pair = std::abs(c["pairing_at_origin"]["value"].get<double>() - 0.19);
    const int bound_viol = c["pairing_bound_violations"];
    report(6, degs == std::vector<int>{6, 8, 10, 12} && c["point_radius"] == 0.5 && strictly_decreasing(u) &&
                  strictly_decreasing(k) && pair <= 1e-12 && bound_viol == 0 && cfg.samples.weak_pairing_configs >= 10000,
           "unitarity " + num(u.front()) + " -> " + num(u.back()) + ", conjugation " + num(k.front()) + " -> " +
               num(k.back()) + ", |pairing-0.19| " + num(pair) + ", " + std::to_string(bound_viol) + " bound violations");
  } catch (const std::exception& e) { report(6, false, e.what()); }

  // 7
  try {
    const json& c = case_of(res("witness"), "flagship");
    bool values = true;
    std::vector<double> min_margin;
    double floor_c = 0, top = 0;
    for (const json& d : c["sweep"]) {
      const double tol = d["tol"];
      top = d["top_eigenvalue"];
      double mm = 1e300;
      for (const json& row : d["rows"]) {
        values = values && row["value"].get<double>() >= top - tol;
        mm = std::min(mm, row["margin"].get<double>());
      }
      min_margin.push_back(mm);
      floor_c = d["floor_c"];
    }
    bool improving = true;
    for (std::size_t i = 1; i < min_margin.size(); ++i)
      improving = improving && (min_margin[i] >= min_margin[i - 1] || min_margin[i] >= -1e-12 * top);
    report(7, values && improving && floor_c > 0,
           "value_m >= <Sf,f> - tol(d) for all m and d; min margin at d=12 " + num(min_margin.back()) + " vs <Sf,f> " +
               num(top) + "; floor c " + num(floor_c));
  } catch (const std::exception& e) { report(7, false, e.what()); }

  // 8
  try {
    double worst = 0, slope_err = 0;
    std::string slopes;
    for (const json& c : res("prop1")["cases"]) {
      for (const json& cv : c["curves"]) worst = std::max(worst, cv["final_ratio"].get<double>());
      const double s = c["slope"], t = c["slope_target"];
      slope_err = std::max(slope_err, std::abs(s - t) / t);
      slopes += " " + num(s) + "/" + num(t);
    }
    report(8, worst < 0.05 && slope_err <= 0.10 && cfg.prop1_M >= 10,
           "worst final/initial ratio at m=" + std::to_string(cfg.prop1_M) + ": " + num(worst) +
               "; slope/target (n=1,2):" + slopes);
  } catch (const std::exception& e) { report(8, false, e.what()); }

  // 9
  try {
    const json& c = case_of(res("separate"), "flagship");
    const double ratio = c["ratio"];
    const int mono = c["monotone_violations"];
    const int trace = c["trace_F1"]["inside_violations"].get<int>() + c["trace_F1"]["outside_violations"].get<int>() +
                      c["trace_F2"]["inside_violations"].get<int>() + c["trace_F2"]["outside_violations"].get<int>();
    report(9, ratio >= 10 && mono == 0 && trace == 0,
           "witness floor / ideal ceiling " + num(ratio) + ", monotone violations " + std::to_string(mono) +
               ", boundary-trace violations " + std::to_string(trace));
  } catch (const std::exception& e) { report(9, false, e.what()); }

  // 10
  try {
    const fs::path base = fs::temp_directory_path() / "bergman_acceptance";
    fs::remove_all(base);
    auto run_all = [&](const std::string& dir, int jobs) {
      const std::string cmd = "\"" + lab + "\" all --out \"" + (base / dir).string() + "\" --jobs " + std::to_string(jobs) +
                              " > \"" + (base / (dir + ".log")).string() + "\" 2>&1";
      fs::create_directories(base);
      return std::system(cmd.c_str());
    };
    const int a = run_all("first", 1), b = run_all("second", 1), c = run_all("jobs3", 3);
    const auto ta = read_tree(base / "first"), tb = read_tree(base / "second"), tc = read_tree(base / "jobs3");
    report(10, a == 0 && b == 0 && c == 0 && !ta.empty() && ta == tb && ta == tc,
           std::to_string(ta.size()) + " report files; repeat run " + (ta == tb ? "identical" : "DIFFERENT") +
               ", --jobs 3 run " + (ta == tc ? "identical" : "DIFFERENT"));
  } catch (const std::exception& e) { report(10, false, e.what()); }

  for (const auto& [name, s] : suites)
    for (const auto& f : s.failures) std::cout << "  note: suite " << name << ": " << f << "\n";
  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
