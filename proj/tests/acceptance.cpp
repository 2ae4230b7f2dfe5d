#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>

#include "bouquet/address.hpp"
#include "bouquet/brush.hpp"
#include "bouquet/cli.hpp"
#include "bouquet/error.hpp"
#include "bouquet/rays.hpp"
#include "sha256.hpp"

using namespace bouquet;
using cd = std::complex<double>;
namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kLn4 = std::log(4.0);

int g_failed = 0;

void report(int n, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] AC%d %s: %s\n", pass ? "PASS" : "FAIL", n, what.c_str(), detail.c_str());
  if (!pass) ++g_failed;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

LogModel quarter() { return LogModel::exp(0.25, 2.0); }
ExternalAddress ext(const char* s) { return ExternalAddress::parse(s); }

// q = e^q / 4 by Newton
double q_oracle() {
  double q = 2.0;
  for (int i = 0; i < 100; ++i) q -= (std::exp(q) / 4.0 - q) / (std::exp(q) / 4.0 - 1.0);
  return q;
}

void ac1() {
  auto t0 = std::chrono::steady_clock::now();
  Endpoint ep = endpoint_estimate(quarter(), ext("0"));
  double dt = seconds_since(t0);
  double q = q_oracle();
  double d_f = std::abs(std::exp(ep.z) - cd(q, 0.0));
  double d_log = std::abs(ep.z - cd(std::log(q), 0.0));
  bool pass = d_f <= 1e-6 && d_log <= 1e-6 && dt < 1.0;
  report(1, pass, "endpoint oracle",
         "q=" + num(q) + " |exp(z*)-q|=" + num(d_f) + " |z*-ln q|=" + num(d_log) + " (tol 1e-6) time=" + num(dt) +
             "s (limit 1s)");
}

void ac2() {
  auto t0 = std::chrono::steady_clock::now();
  ExpansionReport rep = expansion_verify(quarter(), 10000, 1);
  double dt = seconds_since(t0);
  bool pass = rep.samples == 10000 && rep.violations.empty() && dt < 1.0;
  report(2, pass, "expansion lemma",
         "samples=" + std::to_string(rep.samples) + " violations=" + std::to_string(rep.violations.size()) +
             " min |F'|/bound=" + num(rep.min_ratio) + " time=" + num(dt) + "s (limit 1s)");
}

void ac3() {
  LogModel m = quarter();
  HeadStartReport rep = head_start_verify(m, {2.0, 1.0}, 10000, 1);
  HeadStartReport vac = head_start_verify(m, {1e6, 1.0}, 10000, 1);
  bool pass = rep.applicable >= 10000 && rep.violations.empty() && rep.passed() && !vac.passed() &&
              vac.applicable < vac.min_applicable;
  report(3, pass, "head-start",
         "M=2,K=1 applicable=" + std::to_string(rep.applicable) + " violations=" + std::to_string(rep.violations.size()) +
             "; M=1e6 applicable=" + std::to_string(vac.applicable) + " (needs >= " +
             std::to_string(vac.min_applicable) + ") passed=" + (vac.passed() ? "true" : "false"));
}

void ac4() {
  LogModel m = quarter();
  HeadStartParams phi{2.0, 1.0};
  auto s = ext("0");
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> pick(kTFloor, 6.0);
  auto verdict = [&](cd a, cd b) {
    try {
      return speed_compare(m, phi, a, b).verdict;
    } catch (const Error&) {
      return SpeedVerdict::kUndecided;
    }
  };
  std::size_t decided = 0;
  std::size_t anti = 0;
  std::size_t trans = 0;
  for (int i = 0; i < 1000; ++i) {
    cd z[3];
    for (auto& p : z) p = point_at_potential(m, s, pick(gen)).z;
    SpeedVerdict v[3][3];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) v[a][b] = a == b ? SpeedVerdict::kUndecided : verdict(z[a], z[b]);
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        if (a == b || v[a][b] == SpeedVerdict::kUndecided) continue;
        ++decided;
        SpeedVerdict mirror = v[a][b] == SpeedVerdict::kGT ? SpeedVerdict::kLT : SpeedVerdict::kGT;
        if (v[b][a] != mirror) ++anti;
        for (int c = 0; c < 3; ++c) {
          if (c == a || c == b) continue;
          if (v[a][b] == v[b][c] && v[a][c] != v[a][b]) ++trans;
        }
      }
    }
  }
  std::vector<double> grid;
  for (int i = 0; i < 20; ++i) grid.push_back(0.1 + 4.9 * i / 19.0);
  std::size_t pairs = 0;
  std::size_t not_gt = 0;
  for (double t : grid) {
    for (double u : grid) {
      if (u < t + 1.0) continue;
      ++pairs;
      if (verdict(point_at_potential(m, s, t).z, point_at_potential(m, s, u).z) != SpeedVerdict::kGT) ++not_gt;
    }
  }
  bool pass = anti == 0 && trans == 0 && not_gt == 0 && decided > 0 && pairs > 0;
  report(4, pass, "speed ordering",
         "1000 triples: decided ordered pairs=" + std::to_string(decided) + " antisymmetry violations=" +
             std::to_string(anti) + " transitivity violations=" + std::to_string(trans) + "; grid pairs t'>=t+1: " +
             std::to_string(pairs) + " not GT=" + std::to_string(not_gt));
}

void ac5() {
  LogModel m = quarter();
  auto s = ext("0");
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    double t = 0.1 + 4.9 * i / 19.0;
    cd lhs = m.eval_F(point_at_potential(m, s, t).z);
    cd rhs = point_at_potential(m, s.shift(), std::exp(t)).z;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  report(5, worst <= 1e-6, "functional equation", "max |F(g(t)) - g(e^t)| over 20 points = " + num(worst) +
                                                      " (tol 1e-6)");
}

void ac6() {
  LogModel m = quarter();
  auto s = ext("0");
  Endpoint ep = endpoint_estimate(m, s);
  bool straddle = true;
  bool decreasing = true;
  bool ratio = true;
  double prev[2] = {0.0, 0.0};
  double worst_ratio = 0.0;
  std::string dists;
  for (std::size_t n = 1; n <= 8; ++n) {
    AccumulationPair p = accumulation_neighbors(m, ep.z, s, n);
    straddle = straddle && lex_compare(p.address_minus, s) < 0 && lex_compare(s, p.address_plus) < 0;
    double d[2] = {std::abs(p.minus - ep.z), std::abs(p.plus - ep.z)};
    for (int k = 0; k < 2; ++k) {
      if (n > 1) decreasing = decreasing && d[k] < prev[k];
      if (n > 1) {
        worst_ratio = std::max(worst_ratio, d[k] / prev[k]);
        ratio = ratio && d[k] / prev[k] <= 0.9;
      }
      prev[k] = d[k];
    }
    dists += (n > 1 ? "," : "") + num(d[1]);
  }
  // Log(z0 + ln 4 + 2 pi i), z0 from Newton
  cd oracle = std::log(cd(q_oracle(), kTwoPi));
  cd z1 = accumulation_neighbors(m, ep.z, s, 1).plus;
  double err = std::abs(z1 - oracle);
  double printed = std::abs(z1 - cd(1.89363, 1.24073));
  bool pass = straddle && decreasing && ratio && err <= 1e-5;
  report(6, pass, "accumulation",
         std::string("straddle=") + (straddle ? "ok" : "bad") + " |z_n^+ - z0|=" + dists +
             " max ratio(n>=2)=" + num(worst_ratio) + " (limit 0.9); z_1^+=" + num(z1.real()) + "+" +
             num(z1.imag()) + "i vs oracle " + num(oracle.real()) + "+" + num(oracle.imag()) + "i err=" + num(err) +
             " (tol 1e-5); |z_1^+ - (1.89363+1.24073i)| = " + num(printed));
}

void ac7() {
  double half = embed_ordinate(ext("0"));
  double cut = embed_ordinate(IntermediateAddress::parse("cut(0)"));
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> sym(-4, 4);
  std::uniform_int_distribution<int> len(0, 3);
  auto random_address = [&] {
    std::vector<TractId> pre;
    std::vector<TractId> per;
    for (int i = len(gen); i > 0; --i) pre.emplace_back(sym(gen));
    for (int i = len(gen) + 1; i > 0; --i) per.emplace_back(sym(gen));
    return ExternalAddress(pre, per);
  };
  int violations = 0;
  for (int i = 0; i < 100; ++i) {
    auto a = random_address();
    auto b = random_address();
    auto c = lex_compare(a, b);
    double d = embed_ordinate(a) - embed_ordinate(b);
    if ((c < 0 && !(d < 0)) || (c > 0 && !(d > 0)) || (c == 0 && d != 0)) ++violations;
  }
  bool pass = half == 0.5 && std::abs(cut - 2.0 / 3.0) <= 1e-12 && violations == 0;
  report(7, pass, "order embedding",
         "Phi(0)=" + num(half) + " Phi(cut(0))-2/3=" + num(cut - 2.0 / 3.0) + " order violations in 100 pairs=" +
             std::to_string(violations));
}

void ac8() {
  LogModel m = quarter();
  auto t0 = std::chrono::steady_clock::now();
  auto family = periodic_family({TractId(-1), TractId(0), TractId(1)}, 2);
  std::vector<double> grid;
  for (int i = 1; i <= 50; ++i) grid.push_back(0.1 * i);
  BrushEmbedding b = build_brush(m, family, grid);
  CheckOptions opts;
  opts.depth = 4;
  opts.tol = 1e-2;
  CombCheckReport rep = check_brush_axioms(b, m, opts);
  BrushEmbedding bad = b;
  bad.hairs[2].endpoint_t += 1.0;
  std::string culprit = "hair " + bad.hairs[2].address.to_string() + ":";
  CombCheckReport bad_rep = check_brush_axioms(bad, m, opts);
  double dt = seconds_since(t0);
  const AxiomCheck* shape = bad_rep.find("hair-shape");
  bool witness_ok = shape && shape->status == CheckStatus::kFail && !shape->witnesses.empty();
  if (witness_ok) {
    for (const auto& w : shape->witnesses) witness_ok = witness_ok && w.rfind(culprit, 0) == 0;
  }
  std::string statuses;
  for (const auto& c : rep.checks) statuses += c.name + "=" + std::string(status_name(c.status)) + " ";
  bool pass = rep.passed() && !bad_rep.passed() && witness_ok && dt < 30.0;
  report(8, pass, "brush axioms",
         std::to_string(b.hairs.size()) + " hairs; " + statuses + "; corrupted " + culprit + " " +
             (witness_ok ? "caught" : "missed") + "; time=" + num(dt) + "s (limit 30s)");
}

void ac9() {
  fs::path dir = fs::temp_directory_path() / ("bouquet_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  struct Cmd {
    std::string name;
    std::vector<std::string> args;
  };
  std::vector<Cmd> cmds = {
      {"trace", {"trace", "--address", "1 -1;0", "--t", "0.1:8:0.1"}},
      {"brush", {"brush", "--symbols", "-1,0,1", "--max-period", "2"}},
      {"render", {"render", "--viewport", "-2:6:-3:3", "--size", "200x150"}},
  };
  bool pass = true;
  std::string detail;
  for (const auto& c : cmds) {
    std::string hashes[2];
    for (int run = 0; run < 2; ++run) {
      auto path = (dir / (c.name + std::to_string(run))).string();
      auto args = c.args;
      args.push_back("--out");
      args.push_back(path);
      int code = run_cli(args);
      hashes[run] = code == 0 ? sha256_hex(read_bytes(path)) : "exit " + std::to_string(code);
    }
    bool same = hashes[0] == hashes[1] && hashes[0].rfind("exit", 0) != 0;
    pass = pass && same;
    detail += c.name + " " + hashes[0].substr(0, 16) + (same ? " identical; " : " DIFFERS; ");
  }
  fs::remove_all(dir);
  report(9, pass, "determinism", detail);
}

void ac10() {
  bool all_false = true;
  for (double rf = 0.91; rf <= 100.0; rf *= 1.05) {
    all_false = all_false && !LogModel::exp(0.9, rf, {false}).validate_disjoint_type() &&
                !LogModel::exp_disjoint_type(0.9, rf);
  }
  LogModel m = quarter();
  auto same = speed_compare(m, {2.0, 1.0}, 2.0, 2.0).verdict;
  int empty_exit = run_cli({"brush", "--symbols", ""});
  bool pass = all_false && same == SpeedVerdict::kUndecided && empty_exit == 2;
  report(10, pass, "negative controls",
         std::string("lambda=0.9 disjoint for some R_f: ") + (all_false ? "never" : "yes") +
             "; speed_compare(z,z)=" + std::string(verdict_name(same)) + "; empty brush exit=" +
             std::to_string(empty_exit));
}

}  // namespace

int main() {
  for (auto* ac : {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10}) {
    try {
      ac();
    } catch (const std::exception& e) {
      std::printf("[FAIL] unexpected exception: %s\n", e.what());
      ++g_failed;
    }
  }
  std::printf("%d acceptance criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
