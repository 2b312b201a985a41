#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shiftsum/circle.hpp"
#include "shiftsum/correlation.hpp"
#include "shiftsum/error.hpp"
#include "shiftsum/harness.hpp"
#include "shiftsum/lfunc.hpp"
#include "shiftsum/singular_series.hpp"
#include "shiftsum/value_table.hpp"

using namespace shiftsum;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("range must look like a:b");
  try {
    return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError("range must look like a:b, got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shifted convolution sums of divisor-type functions"};
  app.require_subcommand(1);
  std::string cache_dir;
  app.add_option("--cache-dir", cache_dir, "directory for sieved value tables");

  std::string family_text = "kronecker:-4";
  std::int64_t x = 10000, big_h = 100, lo = 1, hi = 100, qmax = 50, qb = 400, qtrunc = 0;
  double eps = 0.01;
  std::optional<std::int64_t> q_override;
  bool verbose = false;
  std::string method = "fft", h_range = "1:10", config_path, input, out_dir;
  std::vector<std::int64_t> qs{1, 3, 5};
  std::vector<double> alphas;
  std::optional<int> workers;

  auto add_family = [&](CLI::App* c) {
    c->add_option("--family", family_text, "unit | kronecker:<D> | delta")->capture_default_str();
  };

  auto* sieve = app.add_subcommand("sieve", "print g(n), f(n) over [lo, hi)");
  add_family(sieve);
  sieve->add_option("--lo", lo)->capture_default_str();
  sieve->add_option("--hi", hi)->capture_default_str();

  auto* corr = app.add_subcommand("correlate", "sum of f(n) f(n+h) over X <= n <= 2X");
  add_family(corr);
  corr->add_option("--X", x)->capture_default_str();
  corr->add_option("--H", big_h)->capture_default_str();
  corr->add_option("--method", method, "fft | naive")->capture_default_str();

  auto* dq = app.add_subcommand("dq-table", "coefficients D_q of the singular series");
  add_family(dq);
  dq->add_option("--qmax", qmax)->capture_default_str();
  dq->add_flag("--verbose", verbose, "add (q0, q1, w) component rows");

  auto* ss = app.add_subcommand("singular-series", "B_h with tail bounds for h = 1..H");
  add_family(ss);
  ss->add_option("--H", big_h)->capture_default_str();
  ss->add_option("--qb", qb)->capture_default_str();
  ss->add_option("--qtrunc", qtrunc, "D_q table size (default: Q_B)");

  auto* arcs = app.add_subcommand("arcs", "summary of the major/minor arc dissection");
  arcs->add_option("--X", x)->capture_default_str();
  arcs->add_option("--eps", eps)->capture_default_str();
  arcs->add_option("--H", big_h)->capture_default_str();
  arcs->add_option("--Q", q_override, "override Q");

  auto* ai = app.add_subcommand("arc-integrals", "integrals of |S_f|^2 e(h a) over the major arcs");
  add_family(ai);
  ai->add_option("--X", x)->capture_default_str();
  ai->add_option("--eps", eps)->capture_default_str();
  ai->add_option("--Q", q_override, "override Q");
  ai->add_option("--h-range", h_range, "a:b")->capture_default_str();

  auto* es = app.add_subcommand("expsum-check", "twisted sums of g against their bound");
  add_family(es);
  es->add_option("--X", x)->capture_default_str();
  es->add_option("--eps", eps)->capture_default_str();
  es->add_option("--q", qs, "denominators")->capture_default_str();
  es->add_option("--alpha", alphas, "offsets (default: 2^-j down to X^(-5/6-2eps))");

  auto* run = app.add_subcommand("run", "full experiment from a key=value config");
  run->add_option("--config", config_path)->required();
  run->add_option("--workers", workers);
  run->add_option("--output-dir", out_dir);

  auto* report = app.add_subcommand("report", "re-render CSV files from report.json");
  report->add_option("--input", input)->required();
  report->add_option("--output-dir", out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*sieve) {
      const auto fam = FamilySpec::parse(family_text);
      const auto t = load_or_build(fam, lo, hi, cache_dir);
      std::cout << "n,g,f\n";
      for (std::int64_t n = lo; n < hi; ++n)
        std::cout << n << "," << num(t.g(n)) << "," << num(t.f(n)) << "\n";
    } else if (*corr) {
      const auto fam = FamilySpec::parse(family_text);
      const auto t = load_or_build(fam, 1, 2 * x + big_h + 1, cache_dir);
      const auto r = correlate(t, x, big_h, parse_correlation_method(method));
      std::cout << "h,sum\n";
      for (std::int64_t h = 1; h <= big_h; ++h)
        std::cout << h << "," << num(r.sums[static_cast<std::size_t>(h)]) << "\n";
    } else if (*dq) {
      const auto t = compute_dq_table(FamilySpec::parse(family_text), qmax);
      std::cout << (verbose ? "q,D_q,q0,q1,w\n" : "q,D_q\n");
      for (std::int64_t q = 1; q <= qmax; ++q) {
        std::cout << q << "," << num(t.at(q)) << (verbose ? ",,,\n" : "\n");
        if (!verbose) continue;
        for (const auto& c : t.components)
          if (c.q == q)
            std::cout << q << ",," << c.factor.q0 << "," << c.factor.q1 << ","
                      << num(c.factor.w_value) << "\n";
      }
    } else if (*ss) {
      auto t = compute_dq_table(FamilySpec::parse(family_text), qtrunc > 0 ? qtrunc : qb);
      const SingularSeriesTable series(std::move(t), qb);
      std::cout << "h,B_h,tail_bound\n";
      for (const auto& row : b_h_sweep(series, big_h))
        std::cout << row.h << "," << num(row.value) << "," << num(row.tail_bound) << "\n";
    } else if (*arcs) {
      std::cout << describe(farey_centers(ArcParams::make(x, eps, big_h, q_override)));
    } else if (*ai) {
      const auto [a, b] = parse_range(h_range);
      const auto fam = FamilySpec::parse(family_text);
      const auto t = load_or_build(fam, 1, 2 * x + 1, cache_dir);
      const auto dec = farey_centers(ArcParams::make(x, eps, 1, q_override));
      if (dec.overlapping) std::cerr << "warning: major arcs overlap; using their union\n";
      std::cout << "h,major_integral,imag_diagnostic\n";
      for (const auto& r : major_arc_integrals(t, dec, a, b))
        std::cout << r.h << "," << num(r.value) << "," << num(r.imag_diagnostic) << "\n";
    } else if (*es) {
      const auto fam = FamilySpec::parse(family_text);
      const auto t = load_or_build(fam, 1, x + 1, cache_dir);
      if (alphas.empty()) {
        const double floor_alpha = std::pow(static_cast<double>(x), -5.0 / 6.0 - 2.0 * eps);
        for (int j = 1; std::ldexp(1.0, -j) >= floor_alpha; ++j) alphas.push_back(std::ldexp(1.0, -j));
      }
      std::cout << "q,a,alpha,observed,bound,ratio,precondition_ok\n";
      for (auto q : qs) {
        const std::int64_t a = q == 1 ? 0 : 1;
        for (double al : alphas) {
          const auto r = exp_sum_g_check(t, a, q, al, x, eps);
          std::cout << q << "," << a << "," << num(al) << "," << num(r.observed) << ","
                    << num(r.bound) << "," << num(r.ratio()) << ","
                    << (r.precondition_ok ? "true" : "false") << "\n";
        }
      }
    } else if (*run) {
      auto cfg = load_config(config_path);
      if (workers) cfg.workers = *workers;
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
      const auto rep = run_theorem_experiment(cfg);
      write_report(rep);
      for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << (cfg.output_dir / "report.json").string() << "\n";
    } else if (*report) {
      const auto dir = out_dir.empty() ? std::filesystem::path(input).parent_path()
                                       : std::filesystem::path(out_dir);
      for (const auto& p : render_report_csv(input, dir.empty() ? "." : dir))
        std::cout << p.string() << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
