// Command line front end: estimate a decreasing step density from a sample
// file, run seeded simulation experiments, or verify the analytic identities.

#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grenfun/analytic.hpp"
#include "grenfun/estimator.hpp"
#include "grenfun/functionals.hpp"
#include "grenfun/harness.hpp"
#include "grenfun/saddlepoint.hpp"

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  return os;
}

int run_estimate(const std::string& input, const std::string& out) {
  grenfun::Sample sample = grenfun::Sample::read_file(input);
  grenfun::StepDensity density = grenfun::grenander(sample);
  if (out.empty()) {
    density.write_csv(std::cout);
  } else {
    std::ofstream os = open_output(out);
    density.write_csv(os);
  }
  std::cerr << "n=" << sample.n() << " pieces=" << density.piece_count()
            << " jumps=" << density.jump_count() << "\n";
  return 0;
}

int run_simulate(const grenfun::ExperimentConfig& cfg, const std::string& out,
                 const std::string& csv, int hist_bins) {
  grenfun::ExperimentResult res = grenfun::run_experiment(cfg);
  nlohmann::json summary = res.to_json(hist_bins);
  if (out.empty()) {
    std::cout << summary.dump(2) << "\n";
  } else {
    std::ofstream os = open_output(out);
    os << summary.dump(2) << "\n";
  }
  if (!csv.empty()) {
    std::ofstream os = open_output(csv);
    res.write_csv(os);
  }
  return 0;
}

int verify_charfun(std::ostream& os, std::ostream* csv) {
  const long n_finite = 100000;
  if (csv) *csv << "t,u,abs_finite_minus_closed,abs_quad_minus_closed\n";
  double worst = 0.0;
  double worst_mod = 0.0;
  for (int ti = -5; ti <= 5; ++ti) {
    for (int ui = -5; ui <= 5; ++ui) {
      if (ti == 0 && ui == 0) continue;
      double t = ti, u = ui;
      std::complex<double> closed = grenfun::charfun_VW_closed_form(t, u);
      std::complex<double> quad = grenfun::charfun_VW_limit_quadrature(t, u);
      double gap = std::abs(closed - quad);
      worst = std::max(worst, gap);
      worst_mod = std::max(worst_mod, std::abs(closed));
      if (csv)
        *csv << t << ',' << u << ','
             << std::abs(grenfun::charfun_VW_finite(n_finite, t, u) - closed) << ',' << gap
             << '\n';
    }
  }
  bool ok = worst < 1e-8 && worst_mod <= 1.0 + 1e-12;
  os << "charfun: max |closed - quadrature| = " << worst
     << ", max modulus = " << worst_mod << " -> " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int verify_saddle(std::ostream& os, std::ostream* csv) {
  grenfun::FunctionalSpec spec = grenfun::l2_spec();
  grenfun::PhaseContext ctx;
  ctx.n = 1000000;
  ctx.s = 1.0;
  ctx.t = 1.0;
  ctx.functional = &spec;
  if (csv) *csv << "j,s,t,n,abs_quad,abs_saddle,rel_error\n";
  double prev = -1.0;
  bool decreasing = true;
  double last = 0.0;
  for (long j : {10L, 100L, 1000L}) {
    std::complex<double> approx = grenfun::phi_saddle(ctx, j);
    std::complex<double> exact = grenfun::phi_quadrature(ctx, j);
    double err = std::abs(approx / exact - 1.0);
    os << "saddle: j=" << j << " relative error " << err << "\n";
    if (csv)
      *csv << j << ',' << ctx.s << ',' << ctx.t << ',' << ctx.n << ','
           << std::abs(exact) << ',' << std::abs(approx) << ',' << err << '\n';
    if (prev >= 0.0 && err >= prev) decreasing = false;
    prev = err;
    last = err;
  }
  bool ok = decreasing && last < 0.05;
  os << "saddle: errors decreasing and final < 0.05 -> " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int verify_cauchy(std::ostream& os, std::ostream* csv) {
  grenfun::ExperimentConfig cfg;
  cfg.kind = grenfun::ExperimentKind::cauchy;
  cfg.n = 1000;
  grenfun::ExperimentResult res = grenfun::run_experiment(cfg);
  if (csv) {
    *csv << "delta_re,delta_im,order,max_rel_error\n";
    for (const auto& row : res.details["rows"])
      *csv << row["delta_re"].get<double>() << ',' << row["delta_im"].get<double>() << ','
           << res.details["order"].get<int>() << ',' << row["max_relative_error"].get<double>()
           << '\n';
  }
  bool ok = res.max_cross_check_error < 1e-10;
  os << "cauchy: max relative identity error over n <= 1000: "
     << res.max_cross_check_error << " -> " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int verify_levy(std::ostream& os, std::ostream* csv) {
  struct Pt {
    double t, u;
  };
  if (csv) *csv << "t,u,exponent_gap\n";
  bool ok = true;
  for (Pt p : std::vector<Pt>{{1.0, 0.0}, {1.0, 1.0}, {2.0, -1.0}}) {
    double err = grenfun::lk_exponent_check(p.t, p.u);
    bool pass = err < 1e-6;
    ok = ok && pass;
    if (csv) *csv << p.t << ',' << p.u << ',' << err << '\n';
    os << "levy: (t=" << p.t << ", u=" << p.u << ") two-route exponent gap " << err
       << " -> " << (pass ? "pass" : "FAIL") << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decreasing-density estimation and characteristic function toolkit"};
  app.require_subcommand(1);

  auto* est = app.add_subcommand("estimate", "fit the decreasing step density to a sample file");
  std::string est_input;
  std::string est_out;
  est->add_option("file", est_input, "text file, one observation in (0,1] per line")->required();
  est->add_option("--out", est_out, "write the fitted pieces as CSV to this path");

  auto* sim = app.add_subcommand("simulate", "run a seeded simulation experiment");
  std::string sim_kind = "l2";
  std::string sim_out;
  std::string sim_csv;
  int sim_hist = 0;
  grenfun::ExperimentConfig cfg;
  sim->add_option("--kind", sim_kind,
                  "jumps | l2 | entropy | representation-l2 | representation-entropy | "
                  "charfun | saddle | cauchy | repr-profile")
      ->required();
  sim->add_option("--n", cfg.n, "sample / representation size");
  sim->add_option("--reps", cfg.reps, "number of replications");
  sim->add_option("--seed", cfg.seed, "base seed; replication r uses substream(seed, r)");
  sim->add_option("--workers", cfg.workers, "worker threads (results independent of this)");
  sim->add_option("--out", sim_out, "write the JSON report to this path instead of stdout");
  sim->add_option("--csv", sim_csv, "also write per-replication values as CSV");
  sim->add_option("--hist", sim_hist, "include a histogram with this many bins in the report");

  auto* ver = app.add_subcommand("verify", "check the analytic identities numerically");
  std::string ver_what;
  std::string ver_out;
  ver->add_option("check", ver_what, "charfun | saddle | cauchy | levy")->required();
  ver->add_option("--out", ver_out, "write the error grid as CSV to this path");

  auto* self = app.add_subcommand("selftest", "quick end-to-end exercise of every module");

  CLI11_PARSE(app, argc, argv);

  try {
    if (est->parsed()) return run_estimate(est_input, est_out);
    if (sim->parsed()) {
      cfg.kind = grenfun::parse_kind(sim_kind);
      return run_simulate(cfg, sim_out, sim_csv, sim_hist);
    }
    if (ver->parsed()) {
      std::ofstream file;
      std::ostream* csv = nullptr;
      if (!ver_out.empty()) {
        file = open_output(ver_out);
        csv = &file;
      }
      if (ver_what == "charfun") return verify_charfun(std::cout, csv);
      if (ver_what == "saddle") return verify_saddle(std::cout, csv);
      if (ver_what == "cauchy") return verify_cauchy(std::cout, csv);
      if (ver_what == "levy") return verify_levy(std::cout, csv);
      throw std::invalid_argument("unknown verify check: " + ver_what);
    }
    if (self->parsed()) return grenfun::run_selftest(std::cout);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
