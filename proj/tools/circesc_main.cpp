// Command-line front end: exact survival constants, transform evaluations,
// residue reports, zeta zeros, Monte Carlo estimates, and the width-scaling
// probes, emitted as CSV or JSON.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "circesc/billiard.hpp"
#include "circesc/io_format.hpp"
#include "circesc/mellin.hpp"
#include "circesc/monte_carlo.hpp"
#include "circesc/numeric_util.hpp"
#include "circesc/rh_probe.hpp"
#include "circesc/survival.hpp"
#include "circesc/zeta.hpp"

namespace {

using namespace circesc;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct OutputOptions {
  std::string format = "csv";
  std::string path;  // empty = stdout
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", out.path, "Output file (default: stdout)");
  cmd->configurable();
}

void emit(const RecordTable& table, const OutputOptions& out) {
  if (out.path.empty()) {
    if (out.format == "json")
      table.write_json(std::cout);
    else
      table.write_csv(std::cout);
    return;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out.path);
  if (out.format == "json")
    table.write_json(f);
  else
    table.write_csv(f);
  if (!f.good()) throw std::runtime_error("write failed: " + out.path);
}

struct HoleFlags {
  double delta = 0.0;
  double theta = 0.0;
  long long r = -1, q = -1;
  int equal_holes = 0;

  void add_to(CLI::App* cmd, bool with_qholes = true) {
    cmd->add_option("--delta", delta, "Hole arc length (radians)");
    cmd->add_option("--theta", theta, "Second hole position (radians; 0 = one hole)");
    cmd->add_option("--r", r, "Numerator of theta = 2*pi*r/q (exact rational angle)");
    cmd->add_option("--q", q, "Denominator of theta = 2*pi*r/q");
    if (with_qholes)
      cmd->add_option("--holes", equal_holes, "q >= 2 equally spaced holes");
  }

  HoleConfiguration build() const {
    if (delta <= 0.0) throw CLI::ValidationError("--delta is required and must be > 0");
    if (equal_holes > 0) {
      if (r >= 0 || q >= 0 || theta != 0.0)
        throw CLI::ValidationError("--holes is mutually exclusive with --theta/--r/--q");
      return HoleConfiguration::equally_spaced(equal_holes, delta);
    }
    if ((r >= 0) != (q >= 0))
      throw CLI::ValidationError("--r and --q must be given together");
    if (r >= 0) return HoleConfiguration::two_holes_rational(r, q, delta);
    if (theta == 0.0) return HoleConfiguration::one_hole(delta);
    return HoleConfiguration::two_holes(theta, delta);
  }
};

struct GridFlags {
  double delta_min = 0.0, delta_max = 0.0;
  int count = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--delta-min", delta_min, "Smallest width of a log-spaced sweep");
    cmd->add_option("--delta-max", delta_max, "Largest width of a log-spaced sweep");
    cmd->add_option("--delta-count", count, "Number of sweep points");
  }

  bool active() const { return count > 0; }
  std::vector<double> build() const { return log_spaced_grid(delta_min, delta_max, count); }
};

std::string describe(const HoleConfiguration& h) {
  char buf[96];
  if (h.num_equal_holes()) {
    std::snprintf(buf, sizeof(buf), "%d equal holes", *h.num_equal_holes());
  } else if (auto rat = h.rational(); rat && rat->num > 0) {
    std::snprintf(buf, sizeof(buf), "theta=2*pi*%lld/%lld", rat->num, rat->den);
  } else if (h.theta() != 0.0) {
    std::snprintf(buf, sizeof(buf), "theta=%s", format_g17(h.theta()).c_str());
  } else {
    std::snprintf(buf, sizeof(buf), "one hole");
  }
  return buf;
}

int run_exact(const HoleFlags& holes, const GridFlags& grid, const OutputOptions& out) {
  if (!grid.active() && holes.delta <= 0.0)
    throw CLI::ValidationError("give --delta or a --delta-min/--delta-max/--delta-count sweep");
  RecordTable table({"delta", "theta", "value", "terms"});
  auto row = [&](double delta) {
    HoleFlags hf = holes;
    hf.delta = delta;
    const auto config = hf.build();
    const auto p = p_infinity(config);
    table.add_row({delta, config.theta(), p.value, static_cast<long long>(p.terms_used)});
  };
  if (grid.active())
    for (double d : grid.build()) row(d);
  else
    row(holes.delta);
  emit(table, out);
  return kExitOk;
}

int run_qholes(int q, const HoleFlags& holes, const GridFlags& grid, const OutputOptions& out) {
  if (!grid.active() && holes.delta <= 0.0)
    throw CLI::ValidationError("give --delta or a --delta-min/--delta-max/--delta-count sweep");
  RecordTable table({"delta", "holes", "value", "terms"});
  auto row = [&](double delta) {
    const auto p = p_infinity_q_holes(q, delta);
    table.add_row({delta, static_cast<long long>(q), p.value,
                   static_cast<long long>(p.terms_used)});
  };
  if (grid.active())
    for (double d : grid.build()) row(d);
  else
    row(holes.delta);
  emit(table, out);
  return kExitOk;
}

MellinModel model_from_flags(const std::string& source, int r, int q) {
  if (source == "closed") return closed_form_model(q);
  if (source == "series") return character_series_model(q == 1 ? 0 : r, q);
  if (source == "qholes") return q_hole_model(q);
  throw CLI::ValidationError("unknown --source");
}

int run_mellin(const std::string& source, int r, int q, double re, double im,
               std::optional<double> pole_re, std::optional<double> pole_im, double delta,
               const OutputOptions& out) {
  const auto model = model_from_flags(source, r, q);
  if (pole_re) {
    RecordTable table({"source", "q", "r", "pole_re", "pole_im", "coefficient_re",
                       "coefficient_im", "log_coefficient_re", "log_coefficient_im"});
    const Complex s0{*pole_re, pole_im.value_or(0.0)};
    const auto res = residue_numeric(model, s0, delta);
    table.add_row({source, static_cast<long long>(q), static_cast<long long>(model.r),
                   s0.real(), s0.imag(), res.coefficient.real(), res.coefficient.imag(),
                   res.log_coefficient.real(), res.log_coefficient.imag()});
    emit(table, out);
    return kExitOk;
  }
  RecordTable table({"source", "q", "r", "s_re", "s_im", "value_re", "value_im", "flagged"});
  const Complex s{re, im};
  const Complex v = model.evaluator(s);
  table.add_row({source, static_cast<long long>(q), static_cast<long long>(model.r), re, im,
                 v.real(), v.imag(),
                 static_cast<long long>(zeta_box_contains(s) ? 0 : 1)});
  emit(table, out);
  return kExitOk;
}

int run_residues(int q, const OutputOptions& out) {
  const auto model = closed_form_model(q);
  RecordTable table({"q", "s", "measured", "measured_log", "expected", "expected_log",
                     "abs_error", "status"});
  for (int s : {1, -1, -2, -3}) {
    const auto ref = reference_residue(q, s);
    const auto res = residue_numeric(model, Complex{static_cast<double>(s), 0.0}, 0.5);
    const double err = std::abs(res.coefficient.real() - ref->coefficient) +
                       std::abs(res.log_coefficient.real() - ref->log_coefficient);
    table.add_row({static_cast<long long>(q), static_cast<long long>(s),
                   res.coefficient.real(), res.log_coefficient.real(), ref->coefficient,
                   ref->log_coefficient, err,
                   std::string(err < 1e-6 ? "ok" : "MISMATCH")});
  }
  emit(table, out);
  return kExitOk;
}

int run_zeros(double t_max, const OutputOptions& out) {
  const auto zeros = find_zeros(t_max);
  RecordTable table({"index", "ordinate", "multiplicity"});
  for (std::size_t i = 0; i < zeros.ordinates.size(); ++i)
    table.add_row({static_cast<long long>(i + 1), zeros.ordinates[i],
                   static_cast<long long>(zeros.multiplicities[i])});
  emit(table, out);
  return kExitOk;
}

int run_simulate(const HoleFlags& holes, double t, std::uint64_t samples, std::uint64_t seed,
                 int streams, int threads, const OutputOptions& out) {
  const auto config = holes.build();  // rejects a missing or nonpositive --delta
  const auto est = estimate_survival(config, t, samples, seed, streams, threads);
  RecordTable table({"t", "delta", "config", "samples", "survivors", "p_hat", "std_error",
                     "tp_hat", "seed", "streams", "regime_warning"});
  table.add_row({est.t, config.delta(), describe(config),
                 static_cast<long long>(est.samples), static_cast<long long>(est.survivors),
                 est.p_hat, est.std_error, est.tp_hat, static_cast<long long>(est.seed),
                 static_cast<long long>(est.streams),
                 static_cast<long long>(est.regime_warning ? 1 : 0)});
  emit(table, out);
  return kExitOk;
}

int run_probe(const std::string& mode, int q, int r, const GridFlags& grid, int cutoff,
              int zero_pairs, const OutputOptions& out) {
  if (!grid.active())
    throw CLI::ValidationError("probe needs --delta-min/--delta-max/--delta-count");
  const auto deltas = grid.build();
  FluctuationSeries series;
  if (mode == "fluctuation")
    series = fluctuation(q, r, deltas, cutoff, zero_pairs);
  else if (mode == "compare12")
    series = comparator_one_two(deltas);
  else if (mode == "qcompare")
    series = q_hole_comparator(q, deltas);
  else
    throw CLI::ValidationError("unknown --mode");
  RecordTable table(
      {"delta", "residual", "envelope_exponent", "envelope_half_width", "mode"});
  for (std::size_t i = 0; i < series.deltas.size(); ++i)
    table.add_row({series.deltas[i], series.residuals[i], series.envelope_exponent,
                   series.envelope_half_width, mode});
  emit(table, out);
  return kExitOk;
}

int run_reproduce_tables(const OutputOptions& out) {
  RecordTable table({"check", "q", "where", "measured", "expected", "abs_error", "status"});
  auto add = [&](const std::string& check, int q, const std::string& where, double measured,
                 double expected, double tol) {
    const double err = std::abs(measured - expected);
    table.add_row({check, static_cast<long long>(q), where, measured, expected, err,
                   std::string(err <= tol ? "ok" : "MISMATCH")});
  };

  for (int q : {1, 2, 3, 4, 6}) {
    const auto model = closed_form_model(q);
    for (int s : {1, -1, -2, -3}) {
      const auto ref = reference_residue(q, s);
      const auto res = residue_numeric(model, Complex{static_cast<double>(s), 0.0}, 0.5);
      add("residue", q, "s=" + std::to_string(s), res.coefficient.real(), ref->coefficient,
          1e-6);
      if (ref->log_coefficient != 0.0 || std::abs(res.log_coefficient.real()) > 1e-8)
        add("residue_log", q, "s=" + std::to_string(s), res.log_coefficient.real(),
            ref->log_coefficient, 1e-6);
    }
    // closed form vs character series, off the real axis as well
    for (double sr : {1.5, 3.0}) {
      const Complex s{sr, 0.7};
      const Complex a = p_tilde_closed(q, s);
      const Complex b = p_tilde_general(q == 1 ? 0 : 1, q, s);
      add("series_vs_closed", q, "s=" + format_g17(sr) + "+0.7i", std::abs(a - b), 0.0, 1e-9);
    }
  }
  for (int q : {1, 2}) {
    for (double sr : {2.0, 3.5, 5.0}) {
      const double quad = mellin_quadrature_two_holes(q == 1 ? 0 : 1, q, sr);
      const double closed = p_tilde_closed(q, Complex{sr, 0.0}).real();
      add("transform_vs_quadrature", q, "s=" + format_g17(sr), quad / closed - 1.0, 0.0, 1e-6);
    }
  }
  for (int q : {2, 3, 4, 6}) {
    const double quad = mellin_quadrature_q_holes(q, 3.0);
    const double closed = p_tilde_q_holes(q, Complex{3.0, 0.0}).real();
    add("qholes_vs_quadrature", q, "s=3", quad / closed - 1.0, 0.0, 1e-6);
  }
  emit(table, out);
  for (const auto& row : table.rows())
    if (std::get<std::string>(row.back()) != "ok") return kExitRuntime;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::string invocation;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) invocation += ' ';
    invocation += argv[i];
  }
  CLI::App app{"Escape statistics of the open circular billiard: exact survival constants,"
               " their width-transform, residue expansions, zeta-zero scaling probes, and"
               " Monte Carlo cross-checks"};
  app.require_subcommand(1);
  // key = value files with a [subcommand] section; command-line flags win
  app.set_config("--config", "", "Read options from a config file");
  app.get_config_formatter_base()->comment('#');

  OutputOptions out;
  HoleFlags holes;
  GridFlags grid;

  auto* c_exact = app.add_subcommand(
      "exact", "Exact survival constant over widths\n"
               "columns: delta, theta, value, terms");
  holes.add_to(c_exact, false);
  grid.add_to(c_exact);
  add_output_options(c_exact, out);

  int qh = 2;
  auto* c_qholes = app.add_subcommand(
      "qholes", "Equally spaced q-hole survival constant\n"
                "columns: delta, holes, value, terms");
  c_qholes->add_option("--holes", qh, "Number of holes (q >= 2)")->required();
  c_qholes->add_option("--delta", holes.delta, "Hole arc length (radians)");
  grid.add_to(c_qholes);
  add_output_options(c_qholes, out);

  std::string source = "closed";
  int mq = 1, mr = 1;
  double sre = 3.0, sim = 0.0, probe_delta = 0.5;
  std::optional<double> pole_re, pole_im;
  auto* c_mellin = app.add_subcommand(
      "mellin", "Width-transform values and pole probes\n"
                "columns: source, q, r, s_re, s_im, value_re, value_im, flagged\n"
                "probe columns: source, q, r, pole_re, pole_im, coefficient_re,\n"
                "  coefficient_im, log_coefficient_re, log_coefficient_im");
  c_mellin->add_option("--source", source, "closed | series | qholes")
      ->check(CLI::IsMember({"closed", "series", "qholes"}))
      ->capture_default_str();
  c_mellin->add_option("--q", mq, "Angle denominator (or hole count for qholes)")->required();
  c_mellin->add_option("--r", mr, "Angle numerator (series source)");
  c_mellin->add_option("--re", sre, "Re s")->capture_default_str();
  c_mellin->add_option("--im", sim, "Im s")->capture_default_str();
  c_mellin->add_option("--pole-re", pole_re, "Probe the pole at this Re s0 instead");
  c_mellin->add_option("--pole-im", pole_im, "Im s0 of the probed pole");
  c_mellin->add_option("--probe-width", probe_delta, "Width used in the residue probe")
      ->capture_default_str();
  add_output_options(c_mellin, out);

  int rq = 1;
  auto* c_residues = app.add_subcommand(
      "residues", "Residue report at s = 1, -1, -2, -3\n"
                  "columns: q, s, measured, measured_log, expected, expected_log,\n"
                  "  abs_error, status");
  c_residues->add_option("--q", rq, "Closed-form family member {1,2,3,4,6}")->required();
  add_output_options(c_residues, out);

  double t_max = 50.0;
  auto* c_zeros = app.add_subcommand(
      "zeros", "Critical-line zeta zeros up to t-max\n"
               "columns: index, ordinate, multiplicity");
  c_zeros->add_option("--t-max", t_max, "Upper ordinate (<= 150)")->capture_default_str();
  add_output_options(c_zeros, out);

  double sim_t = 1000.0;
  std::uint64_t samples = 1000000, seed = 1;
  int streams = 64, threads = 0;
  auto* c_sim = app.add_subcommand(
      "simulate", "Monte Carlo survival estimate\n"
                  "columns: t, delta, config, samples, survivors, p_hat, std_error,\n"
                  "  tp_hat, seed, streams, regime_warning");
  holes.add_to(c_sim, true);
  c_sim->add_option("--t", sim_t, "Time horizon")->capture_default_str();
  c_sim->add_option("--samples", samples, "Sample count")->capture_default_str();
  c_sim->add_option("--seed", seed, "RNG seed")->capture_default_str();
  c_sim->add_option("--streams", streams, "Independent RNG streams")->capture_default_str();
  c_sim->add_option("--threads", threads, "Worker cap (0 = hardware)")->capture_default_str();
  add_output_options(c_sim, out);

  std::string mode = "fluctuation";
  int pq = 1, pr = 0, cutoff = 3, zero_pairs = 0;
  auto* c_probe = app.add_subcommand(
      "probe", "Width-scaling fluctuation probes\n"
               "columns: delta, residual, envelope_exponent, envelope_half_width, mode");
  c_probe->add_option("--mode", mode, "fluctuation | compare12 | qcompare")
      ->check(CLI::IsMember({"fluctuation", "compare12", "qcompare"}))
      ->capture_default_str();
  c_probe->add_option("--q", pq, "Angle denominator / hole count")->capture_default_str();
  c_probe->add_option("--r", pr, "Angle numerator")->capture_default_str();
  c_probe->add_option("--cutoff", cutoff, "Real-pole truncation order")->capture_default_str();
  c_probe->add_option("--zeros", zero_pairs, "Critical-line zero pairs to subtract")
      ->capture_default_str();
  grid.add_to(c_probe);
  add_output_options(c_probe, out);

  auto* c_tables = app.add_subcommand("reproduce-tables",
                                      "Verify residues, cross-source agreement, and the"
                                      " transform-vs-quadrature identities");
  add_output_options(c_tables, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;  // help/version exit clean
  }

  try {
    if (c_exact->parsed()) return run_exact(holes, grid, out);
    if (c_qholes->parsed()) return run_qholes(qh, holes, grid, out);
    if (c_mellin->parsed())
      return run_mellin(source, mr, mq, sre, sim, pole_re, pole_im, probe_delta, out);
    if (c_residues->parsed()) return run_residues(rq, out);
    if (c_zeros->parsed()) return run_zeros(t_max, out);
    if (c_sim->parsed())
      return run_simulate(holes, sim_t, samples, seed, streams, threads, out);
    if (c_probe->parsed())
      return run_probe(mode, pq, pr, grid, cutoff, zero_pairs, out);
    if (c_tables->parsed()) return run_reproduce_tables(out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n             while running: " << invocation
              << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n       while running: " << invocation << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
