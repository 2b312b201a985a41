#include "shiftsum/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "shiftsum/correlation.hpp"
#include "shiftsum/error.hpp"
#include "shiftsum/expsum.hpp"
#include "shiftsum/lfunc.hpp"
#include "shiftsum/singular_series.hpp"

namespace shiftsum {

using json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " expects a number, got '" + v + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  if (d != std::floor(d) || std::abs(d) > 9.0e15)
    throw ConfigError("config: " + key + " expects an integer, got '" + v + "'");
  return static_cast<std::int64_t>(d);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: " + key + " expects true or false, got '" + v + "'");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Uniform doubles in [0, 1) from the top 53 bits of a splitmix64 stream.
class ThetaStream {
 public:
  explicit ThetaStream(std::uint64_t seed) : state_(seed) {}
  double next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

template <class F>
void parallel_for(std::size_t n, int workers, F&& body) {
  const auto w = static_cast<std::size_t>(std::max(1, workers));
  if (w == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(w, n); ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += w) body(i);
    });
  for (auto& th : pool) th.join();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

std::string mode_name(RunMode m) { return m == RunMode::Theorem ? "theorem" : "exploratory"; }

}  // namespace

std::int64_t HRule::apply(std::int64_t x) const {
  if (kind == Kind::Fixed) return fixed;
  const double h = std::floor(std::pow(static_cast<double>(x), theta) * (1.0 + 1e-12));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(h));
}

std::string HRule::to_string() const {
  return kind == Kind::Power ? "power:" + fmt(theta) : "fixed:" + std::to_string(fixed);
}

HRule HRule::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("H_rule must be power:<theta> or fixed:<H>");
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  HRule r;
  if (kind == "power") {
    r.kind = Kind::Power;
    r.theta = parse_double("H_rule", arg);
    if (!(r.theta > 0.0) || r.theta > 1.5) throw ConfigError("H_rule: theta out of range");
  } else if (kind == "fixed") {
    r.kind = Kind::Fixed;
    r.fixed = parse_int("H_rule", arg);
    if (r.fixed < 1) throw ConfigError("H_rule: fixed H must be >= 1");
  } else {
    throw ConfigError("H_rule must be power:<theta> or fixed:<H>");
  }
  return r;
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  os << "family=" << family.to_string() << "\nX_list=";
  for (std::size_t i = 0; i < x_list.size(); ++i) os << (i ? "," : "") << x_list[i];
  os << "\neps=" << fmt(eps) << "\nH_rule=" << h_rule.to_string() << "\nQ_B=" << q_b
     << "\nQ_trunc=" << effective_q_trunc()
     << "\nQ_override=" << (q_override ? std::to_string(*q_override) : "none")
     << "\nmode=" << mode_name(mode) << "\nseed=" << seed << "\ntheta_samples=" << theta_samples
     << "\narc_h_max=" << arc_h_max << "\nper_h_in_json=" << (per_h_in_json ? "true" : "false")
     << "\n";
  return os.str();
}

std::uint64_t ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (key == "family") {
      c.family = FamilySpec::parse(v);
    } else if (key == "X_list") {
      c.x_list.clear();
      std::istringstream items(v);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto x = parse_int(key, item);
        if (x < 1) throw ConfigError("config: X_list entries must be >= 1");
        c.x_list.push_back(x);
      }
    } else if (key == "eps") {
      c.eps = parse_double(key, v);
    } else if (key == "H_rule") {
      c.h_rule = HRule::parse(v);
    } else if (key == "Q_B") {
      c.q_b = parse_int(key, v);
    } else if (key == "Q_trunc") {
      c.q_trunc = parse_int(key, v);
    } else if (key == "Q_override") {
      if (v == "none" || v.empty())
        c.q_override.reset();
      else
        c.q_override = parse_int(key, v);
    } else if (key == "mode") {
      if (v == "theorem")
        c.mode = RunMode::Theorem;
      else if (v == "exploratory")
        c.mode = RunMode::Exploratory;
      else
        throw ConfigError("config: mode must be theorem or exploratory");
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(parse_int(key, v));
    } else if (key == "theta_samples") {
      c.theta_samples = static_cast<int>(parse_int(key, v));
    } else if (key == "arc_h_max") {
      c.arc_h_max = static_cast<int>(parse_int(key, v));
    } else if (key == "per_h_in_json") {
      c.per_h_in_json = parse_bool(key, v);
    } else if (key == "output_dir") {
      c.output_dir = v;
    } else if (key == "cache_dir") {
      c.cache_dir = v;
    } else if (key == "workers") {
      c.workers = static_cast<int>(parse_int(key, v));
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (c.x_list.empty()) throw ConfigError("config: X_list is empty");
  if (!(c.eps > 0.0) || c.eps >= 0.5) throw ConfigError("config: eps must be in (0, 0.5)");
  if (c.q_b < 1) throw ConfigError("config: Q_B must be >= 1");
  if (c.q_trunc != 0 && c.q_trunc < c.q_b) throw ConfigError("config: Q_trunc must be >= Q_B");
  if (c.theta_samples < 0) throw ConfigError("config: theta_samples must be >= 0");
  if (c.arc_h_max < 0) throw ConfigError("config: arc_h_max must be >= 0");
  if (c.workers < 1) throw ConfigError("config: workers must be >= 1");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ParsevalBudget parseval_budget(const ValueTable& table, const ArcDecomposition& dec) {
  const std::int64_t x = dec.params.x;
  const auto f = exponential_sum_window(table, x).coeffs;
  std::vector<double> sq(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
  ParsevalBudget b;
  b.total = pairwise_sum(sq);
  b.major_share = ArcQuadrature(table, x, dec.major, major_arc_spacing(dec.params)).energy();
  b.minor_share = b.total - b.major_share;
  return b;
}

ParsevalBudget parseval_budget(const ExperimentConfig& config, std::int64_t x) {
  const auto table = load_or_build(config.family, 1, 2 * x + 1, config.cache_dir);
  const auto params = ArcParams::make(x, config.eps, config.h_rule.apply(x), config.q_override);
  return parseval_budget(table, farey_centers(params));
}

ExceptionalStats exceptional_stats(const std::vector<double>& residuals, std::int64_t x,
                                   std::int64_t big_h, double eps) {
  ExceptionalStats s;
  const double xd = static_cast<double>(x);
  s.threshold = std::pow(xd, 1.0 - eps * eps / 4.0);
  s.budget = static_cast<double>(big_h) * std::pow(xd, -eps * eps / 3.0);
  std::vector<double> scaled;
  scaled.reserve(residuals.size());
  for (double r : residuals) {
    if (std::abs(r) > s.threshold) ++s.count;
    scaled.push_back(std::abs(r) / s.threshold);
  }
  s.within_budget = static_cast<double>(s.count) <= s.budget;
  s.budget_constant = static_cast<double>(s.count) / s.budget;
  std::sort(scaled.begin(), scaled.end(), std::greater<>());
  const auto allowed = static_cast<std::size_t>(std::floor(s.budget));
  s.threshold_constant = allowed < scaled.size() ? scaled[allowed] : 0.0;
  return s;
}

ExperimentReport run_theorem_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (config.family.has_pole_at_one)
    throw ConfigError("family " + config.family.to_string() +
                      " has a pole at s = 1; the singular series stage needs a pole-free family");
  ExperimentReport rep;
  rep.config = config;
  rep.timestamp = utc_timestamp();

  auto xs = config.x_list;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<std::int64_t> hs;
  std::int64_t h_max = 1;
  for (auto x : xs) {
    const auto h = config.h_rule.apply(x);
    const auto params = ArcParams::make(x, config.eps, h, config.q_override);
    if (!params.in_theorem_range()) {
      std::ostringstream msg;
      msg << "X = " << x << ": H = " << h << " lies outside the theorem range ["
          << fmt(params.theorem_h_min()) << ", " << fmt(params.theorem_h_max()) << "]";
      if (config.mode == RunMode::Theorem)
        throw ConfigError(msg.str() + " (use mode=exploratory to run anyway)");
      rep.warnings.push_back(msg.str());
    }
    if (config.q_override && config.mode == RunMode::Theorem)
      throw ConfigError("Q_override is only allowed in exploratory mode");
    hs.push_back(h);
    h_max = std::max(h_max, h);
  }

  auto dq = compute_dq_table(config.family, config.effective_q_trunc());
  rep.l_value = dq.l_value;
  rep.dq_decay = fit_dq_decay(dq, std::min<std::int64_t>(dq.q_trunc, 500));
  const SingularSeriesTable series(std::move(dq), config.q_b);
  rep.tail_constant = series.tail_constant();
  const auto b_rows = b_h_sweep(series, h_max, config.workers);

  for (std::size_t si = 0; si < xs.size(); ++si) {
    const std::int64_t x = xs[si];
    const std::int64_t h = hs[si];
    ScaleResult sc;
    sc.x = x;
    sc.h = h;
    sc.arcs = ArcParams::make(x, config.eps, h, config.q_override);
    sc.in_theorem_range = sc.arcs.in_theorem_range();

    const auto table = load_or_build(config.family, 1, 2 * x + h + 1, config.cache_dir);
    const auto corr = correlate_fft(table, x, h);
    if (si == 0) {
      if (static_cast<double>(x + 1) * static_cast<double>(h + 1) <= 5.0e8) {
        const auto naive = correlate_naive(table, x, h);
        bool same = true;
        for (std::size_t i = 0; i < naive.sums.size(); ++i) {
          const double diff = std::abs(naive.sums[i] - corr.sums[i]);
          const double tol = config.family.integer_valued()
                                 ? 0.0
                                 : 1e-9 * std::max(1.0, std::abs(naive.sums[i]));
          if (diff > tol) same = false;
        }
        sc.naive_agrees = same;
        if (!same)
          throw InvariantViolation("FFT and naive correlation disagree at X = " +
                                   std::to_string(x));
      } else {
        rep.warnings.push_back("naive cross-check skipped at X = " + std::to_string(x) +
                               " (too large)");
      }
    }

    const double xd = static_cast<double>(x);
    std::vector<double> abs_res;
    for (std::int64_t k = 1; k <= h; ++k) {
      const auto& row = b_rows[static_cast<std::size_t>(k - 1)];
      const double lhs = corr.sums[static_cast<std::size_t>(k)];
      const double res = lhs - row.value * xd;
      sc.lhs.push_back(lhs);
      sc.b_h.push_back(row.value);
      sc.tail_bound.push_back(row.tail_bound);
      sc.residual.push_back(res);
      abs_res.push_back(std::abs(res));
      sc.max_abs_normalized = std::max(sc.max_abs_normalized, std::abs(res) / xd);
    }
    sc.median_abs_residual = median(abs_res);
    sc.exceptional = exceptional_stats(sc.residual, x, h, config.eps);

    const auto dec = farey_centers(sc.arcs);
    if (dec.overlapping)
      rep.warnings.push_back("X = " + std::to_string(x) + ": major arcs overlap");
    sc.parseval = parseval_budget(table, dec);

    ThetaStream stream(config.seed ^ (static_cast<std::uint64_t>(x) * 0x9e3779b97f4a7c15ULL));
    for (int i = 0; i < config.theta_samples; ++i) sc.thetas.push_back(stream.next());
    sc.minor_energy.assign(sc.thetas.size(), 0.0);
    parallel_for(sc.thetas.size(), config.workers, [&](std::size_t i) {
      sc.minor_energy[i] = minor_arc_energy(table, dec, sc.thetas[i]);
    });
    for (double e : sc.minor_energy)
      sc.minor_energy_sup_over_x = std::max(sc.minor_energy_sup_over_x, e / xd);

    if (config.arc_h_max > 0)
      sc.arc_integrals =
          major_arc_integrals(table, dec, 1, std::min<std::int64_t>(config.arc_h_max, h));
    sc.shiu_k1 = shiu_ratio(1, x);
    sc.shiu_k2 = shiu_ratio(2, x);
    rep.scales.push_back(std::move(sc));
  }

  if (rep.scales.size() >= 3) {
    std::vector<std::pair<double, double>> med, minor;
    for (const auto& sc : rep.scales) {
      med.emplace_back(static_cast<double>(sc.x), sc.median_abs_residual);
      minor.emplace_back(static_cast<double>(sc.x), sc.minor_energy_sup_over_x);
    }
    try {
      rep.residual_fit = fit_exponent(med);
    } catch (const ConfigError& e) {
      rep.warnings.push_back(std::string("residual fit skipped: ") + e.what());
    }
    if (config.theta_samples > 0) {
      try {
        rep.minor_fit = fit_exponent(minor);
      } catch (const ConfigError& e) {
        rep.warnings.push_back(std::string("minor-arc fit skipped: ") + e.what());
      }
    }
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

json fit_json(const std::optional<LinearFit>& f) {
  if (!f) return nullptr;
  return {{"slope", f->slope},
          {"intercept", f->intercept},
          {"slope_stderr", f->slope_stderr},
          {"points", f->points}};
}

std::string per_h_csv_name(std::int64_t x) { return "per_h_X" + std::to_string(x) + ".csv"; }

std::string per_h_csv(const ScaleResult& sc) {
  std::string out = "h,lhs,B_h,tail_bound,residual,normalized\n";
  const double xd = static_cast<double>(sc.x);
  for (std::size_t i = 0; i < sc.lhs.size(); ++i) {
    out += std::to_string(i + 1) + "," + fmt(sc.lhs[i]) + "," + fmt(sc.b_h[i]) + "," +
           fmt(sc.tail_bound[i]) + "," + fmt(sc.residual[i]) + "," + fmt(sc.residual[i] / xd) +
           "\n";
  }
  return out;
}

}  // namespace

std::string report_json(const ExperimentReport& rep) {
  const auto& c = rep.config;
  json config = {{"family", c.family.to_string()},
                 {"X_list", c.x_list},
                 {"eps", c.eps},
                 {"H_rule", c.h_rule.to_string()},
                 {"Q_B", c.q_b},
                 {"Q_trunc", c.effective_q_trunc()},
                 {"Q_override", c.q_override ? json(*c.q_override) : json(nullptr)},
                 {"mode", mode_name(c.mode)},
                 {"seed", c.seed},
                 {"theta_samples", c.theta_samples},
                 {"arc_h_max", c.arc_h_max},
                 {"per_h_in_json", c.per_h_in_json}};

  json per_h = json::array();
  json exceptional = json::array();
  json scales = json::array();
  json medians = json::array();
  json minors = json::array();
  for (const auto& sc : rep.scales) {
    const double xd = static_cast<double>(sc.x);
    json rows = {{"X", sc.x}, {"H", sc.h}, {"csv", per_h_csv_name(sc.x)}};
    if (c.per_h_in_json) {
      std::vector<std::int64_t> hcol;
      std::vector<double> norm;
      for (std::size_t i = 0; i < sc.lhs.size(); ++i) {
        hcol.push_back(static_cast<std::int64_t>(i + 1));
        norm.push_back(sc.residual[i] / xd);
      }
      rows["h"] = hcol;
      rows["lhs"] = sc.lhs;
      rows["B_h"] = sc.b_h;
      rows["tail_bound"] = sc.tail_bound;
      rows["residual"] = sc.residual;
      rows["normalized"] = norm;
    }
    per_h.push_back(std::move(rows));

    const auto& e = sc.exceptional;
    exceptional.push_back({{"X", sc.x},
                           {"H", sc.h},
                           {"threshold", e.threshold},
                           {"budget", e.budget},
                           {"count", e.count},
                           {"fraction", static_cast<double>(e.count) / static_cast<double>(sc.h)},
                           {"within_budget", e.within_budget},
                           {"budget_constant", e.budget_constant},
                           {"threshold_constant", e.threshold_constant}});
    medians.push_back({{"X", sc.x}, {"value", sc.median_abs_residual}});
    minors.push_back({{"X", sc.x}, {"value", sc.minor_energy_sup_over_x}});

    json arcs = json::array();
    for (const auto& a : sc.arc_integrals) {
      const double bh = sc.b_h[static_cast<std::size_t>(a.h - 1)];
      arcs.push_back({{"h", a.h},
                      {"major_integral", a.value},
                      {"imag_diagnostic", a.imag_diagnostic},
                      {"over_X", a.value / xd},
                      {"B_h", bh}});
    }
    const auto& p = sc.arcs;
    scales.push_back(
        {{"X", sc.x},
         {"H", sc.h},
         {"in_theorem_range", sc.in_theorem_range},
         {"theorem_H_min", p.theorem_h_min()},
         {"theorem_H_max", p.theorem_h_max()},
         {"Q", p.q},
         {"delta", p.delta},
         {"arcs_disjoint", p.arcs_disjoint()},
         {"median_abs_residual", sc.median_abs_residual},
         {"max_abs_normalized", sc.max_abs_normalized},
         {"naive_agrees", sc.naive_agrees ? json(*sc.naive_agrees) : json(nullptr)},
         {"parseval",
          {{"total", sc.parseval.total},
           {"major_share", sc.parseval.major_share},
           {"minor_share", sc.parseval.minor_share}}},
         {"minor_energy", {{"theta", sc.thetas}, {"energy", sc.minor_energy}}},
         {"minor_energy_sup_over_X", sc.minor_energy_sup_over_x},
         {"major_arc_integrals", std::move(arcs)},
         {"shiu_ratio", {{"k1", sc.shiu_k1}, {"k2", sc.shiu_k2}}}});
  }

  json fits = {{"residual_exponent", fit_json(rep.residual_fit)},
               {"minor_energy_exponent", fit_json(rep.minor_fit)},
               {"median_abs_residual", std::move(medians)},
               {"minor_energy_sup_over_X", std::move(minors)},
               {"dq_decay",
                {{"slope", rep.dq_decay.slope},
                 {"envelope_c", rep.dq_decay.envelope_c},
                 {"envelope_a", rep.dq_decay.envelope_a},
                 {"points", rep.dq_decay.points}}}};

  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(c.hash()));
  json diagnostics = {
      {"version", kVersion},
      {"config_hash", hash},
      {"L_value", rep.l_value},
      {"tail_constant", rep.tail_constant},
      {"scales", std::move(scales)},
      {"warnings", rep.warnings},
      {"assumptions",
       {"the moment hypotheses on g are assumed, not verified",
        "exceptional threshold and budget use implicit constant 1"}},
      {"run",
       {{"timestamp", rep.timestamp},
        {"elapsed_seconds", rep.elapsed_seconds},
        {"workers", c.workers},
        {"output_dir", c.output_dir.string()},
        {"cache_dir", c.cache_dir.string()}}}};

  json doc = {{"config", std::move(config)},
              {"per_h", std::move(per_h)},
              {"exceptional", std::move(exceptional)},
              {"fits", std::move(fits)},
              {"diagnostics", std::move(diagnostics)}};
  return doc.dump(1) + "\n";
}

namespace {

std::string summary_csv(const json& doc) {
  std::string out =
      "X,H,median_abs_residual,exceptional_count,exceptional_budget,within_budget,"
      "budget_constant,threshold_constant,minor_energy_sup_over_X\n";
  const auto& ex = doc.at("exceptional");
  const auto& med = doc.at("fits").at("median_abs_residual");
  const auto& minor = doc.at("fits").at("minor_energy_sup_over_X");
  for (std::size_t i = 0; i < ex.size(); ++i) {
    const auto& e = ex[i];
    out += std::to_string(e.at("X").get<std::int64_t>()) + "," +
           std::to_string(e.at("H").get<std::int64_t>()) + "," +
           fmt(med[i].at("value").get<double>()) + "," +
           std::to_string(e.at("count").get<std::int64_t>()) + "," +
           fmt(e.at("budget").get<double>()) + "," +
           (e.at("within_budget").get<bool>() ? "true" : "false") + "," +
           fmt(e.at("budget_constant").get<double>()) + "," +
           fmt(e.at("threshold_constant").get<double>()) + "," +
           fmt(minor[i].at("value").get<double>()) + "\n";
  }
  return out;
}

std::string minor_csv(const ScaleResult& sc) {
  std::string out = "theta,energy,energy_over_X\n";
  for (std::size_t i = 0; i < sc.thetas.size(); ++i)
    out += fmt(sc.thetas[i]) + "," + fmt(sc.minor_energy[i]) + "," +
           fmt(sc.minor_energy[i] / static_cast<double>(sc.x)) + "\n";
  return out;
}

}  // namespace

void write_report(const ExperimentReport& rep) {
  const auto& dir = rep.config.output_dir;
  std::filesystem::create_directories(dir);
  const std::string text = report_json(rep);
  write_text(dir / "report.json", text);
  write_text(dir / "summary.csv", summary_csv(json::parse(text)));
  for (const auto& sc : rep.scales) {
    write_text(dir / per_h_csv_name(sc.x), per_h_csv(sc));
    write_text(dir / ("minor_arc_X" + std::to_string(sc.x) + ".csv"), minor_csv(sc));
  }
}

std::vector<std::filesystem::path> render_report_csv(const std::filesystem::path& report_path,
                                                     const std::filesystem::path& out_dir) {
  std::ifstream in(report_path);
  if (!in) throw ConfigError("cannot read report " + report_path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("report " + report_path.string() + " is not valid JSON: " + e.what());
  }
  for (const char* key : {"config", "per_h", "exceptional", "fits", "diagnostics"})
    if (!doc.contains(key)) throw ConfigError(std::string("report is missing key '") + key + "'");
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  const auto summary = out_dir / "summary.csv";
  write_text(summary, summary_csv(doc));
  written.push_back(summary);
  for (const auto& rows : doc.at("per_h")) {
    if (!rows.contains("h")) continue;  // per-h columns were kept out of the JSON
    ScaleResult sc;
    sc.x = rows.at("X").get<std::int64_t>();
    sc.lhs = rows.at("lhs").get<std::vector<double>>();
    sc.b_h = rows.at("B_h").get<std::vector<double>>();
    sc.tail_bound = rows.at("tail_bound").get<std::vector<double>>();
    sc.residual = rows.at("residual").get<std::vector<double>>();
    const auto path = out_dir / per_h_csv_name(sc.x);
    write_text(path, per_h_csv(sc));
    written.push_back(path);
  }
  return written;
}

std::string report_body(const std::string& text) {
  auto doc = json::parse(text);
  doc.at("diagnostics").erase("run");
  return doc.dump();
}

}  // namespace shiftsum
