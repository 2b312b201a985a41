#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shiftsum/circle.hpp"
#include "shiftsum/family.hpp"
#include "shiftsum/fit.hpp"
#include "shiftsum/lfunc.hpp"

namespace shiftsum {

inline constexpr const char* kVersion = "0.1.0";

enum class RunMode { Theorem, Exploratory };

struct HRule {
  enum class Kind { Power, Fixed } kind = Kind::Power;
  double theta = 0.96;
  std::int64_t fixed = 0;

  std::int64_t apply(std::int64_t x) const;
  std::string to_string() const;  // "power:0.96" or "fixed:500"
  static HRule parse(const std::string& text);
};

struct ExperimentConfig {
  FamilySpec family = FamilySpec::real_character(-4);
  std::vector<std::int64_t> x_list{10'000, 100'000, 1'000'000};
  double eps = 0.01;
  HRule h_rule;
  std::int64_t q_b = 400;
  std::int64_t q_trunc = 0;          // 0: use Q_B
  std::optional<std::int64_t> q_override;
  RunMode mode = RunMode::Theorem;
  std::uint64_t seed = 1;
  int theta_samples = 32;
  int arc_h_max = 10;                // major-arc integrals for h = 1..arc_h_max (0 disables)
  bool per_h_in_json = true;

  // Not part of the report body.
  std::filesystem::path output_dir = "report";
  std::filesystem::path cache_dir;
  int workers = 1;

  std::int64_t effective_q_trunc() const { return q_trunc > 0 ? q_trunc : q_b; }
  // key=value lines of every field that affects results, in fixed order.
  std::string canonical() const;
  std::uint64_t hash() const;  // FNV-1a 64 of canonical()
};

// Flat key=value text; '#' starts a comment; blank lines ignored.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ParsevalBudget {
  double total = 0.0;        // Σ f(n)², exact
  double major_share = 0.0;  // ∫ over the major arcs of |S_f|²
  double minor_share = 0.0;  // total - major_share
};

ParsevalBudget parseval_budget(const ValueTable& table, const ArcDecomposition& dec);
ParsevalBudget parseval_budget(const ExperimentConfig& config, std::int64_t x);

struct ExceptionalStats {
  double threshold = 0.0;  // X^{1 - ε²/4}
  double budget = 0.0;     // H X^{-ε²/3}
  std::int64_t count = 0;  // #{h : |residual| > threshold}
  bool within_budget = false;
  // count / budget: the constant in front of the budget that the count needs
  double budget_constant = 0.0;
  // smallest c with #{h : |residual| > c threshold} <= budget
  double threshold_constant = 0.0;
};

ExceptionalStats exceptional_stats(const std::vector<double>& residuals, std::int64_t x,
                                   std::int64_t big_h, double eps);

struct ScaleResult {
  std::int64_t x = 0;
  std::int64_t h = 0;
  bool in_theorem_range = false;
  ArcParams arcs;
  std::vector<double> lhs;  // index h - 1
  std::vector<double> b_h;
  std::vector<double> tail_bound;
  std::vector<double> residual;
  double median_abs_residual = 0.0;
  double max_abs_normalized = 0.0;
  ExceptionalStats exceptional;
  std::optional<bool> naive_agrees;  // checked at the smallest X
  ParsevalBudget parseval;
  std::vector<double> thetas;
  std::vector<double> minor_energy;
  double minor_energy_sup_over_x = 0.0;
  std::vector<ArcIntegral> arc_integrals;
  double shiu_k1 = 0.0;
  double shiu_k2 = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  double l_value = 0.0;
  double tail_constant = 0.0;
  DqDecayFit dq_decay;
  std::vector<ScaleResult> scales;
  std::optional<LinearFit> residual_fit;  // log median |residual| against log X
  std::optional<LinearFit> minor_fit;     // log sup minor energy / X against log X
  std::vector<std::string> warnings;
  std::string timestamp;
  double elapsed_seconds = 0.0;
};

ExperimentReport run_theorem_experiment(const ExperimentConfig& config);

// JSON text with top-level keys config, per_h, exceptional, fits, diagnostics.
// Everything outside diagnostics.run is a pure function of the config.
std::string report_json(const ExperimentReport& report);

// report.json plus CSV side files in config.output_dir.
void write_report(const ExperimentReport& report);

// Rewrites the CSV side files from an existing report.json; returns files written.
std::vector<std::filesystem::path> render_report_csv(const std::filesystem::path& report_json,
                                                     const std::filesystem::path& out_dir);

// The report JSON with diagnostics.run removed, serialized.
std::string report_body(const std::string& report_json_text);

}  // namespace shiftsum
