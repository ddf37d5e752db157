// bellkcc command-line tool. Talks to the library only through bellkcc.h.
//
// Exit codes: 0 success, 1 usage, 2 numeric failure, 3 invalid input state.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellkcc/bellkcc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitInvalidState = 3;

struct Failure {
  int exit_code;
  std::string message;
};

bool is_state_error(bk_status s) {
  return s == BK_ERR_NON_HERMITIAN || s == BK_ERR_TRACE_NOT_ONE || s == BK_ERR_NOT_POSITIVE || s == BK_ERR_PARSE ||
         s == BK_ERR_IO;
}

bool is_numeric_error(bk_status s) {
  return s == BK_ERR_MAX_DEPTH_EXCEEDED || s == BK_ERR_NON_FINITE_SAMPLE || s == BK_ERR_DIVERGENT_AT_CRITICAL ||
         s == BK_ERR_NO_INTERIOR_PEAK || s == BK_ERR_INTERNAL || s == BK_ERR_NOT_POSITIVE;
}

// Outside state loading, a violated density-matrix invariant means the
// numerics went wrong, not the input.
void check(bk_status s) {
  if (s == BK_OK) return;
  const std::string msg = std::string(bk_status_name(s)) + ": " + bk_last_error();
  throw Failure{is_numeric_error(s) ? kExitNumeric : kExitUsage, msg};
}

void check_state_load(bk_status s) {
  if (s == BK_OK) return;
  const std::string msg = std::string(bk_status_name(s)) + ": " + bk_last_error();
  throw Failure{is_state_error(s) ? kExitInvalidState : kExitUsage, msg};
}

struct StringDeleter {
  void operator()(char* p) const { bk_string_free(p); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct StateDeleter {
  void operator()(bk_state* p) const { bk_state_free(p); }
};
using State = std::unique_ptr<bk_state, StateDeleter>;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Same 12 significant digits as the text output.
nlohmann::json jnum(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(num(x).c_str(), nullptr);
}

std::string vec(const double* v) { return num(v[0]) + " " + num(v[1]) + " " + num(v[2]); }

void write_or_print(const std::optional<std::string>& path, const char* text) {
  if (path) {
    check(bk_write_text_file(path->c_str(), text));
  } else {
    std::fputs(text, stdout);
  }
}

std::vector<int> parse_int_list(const std::string& text, std::size_t expected = 0) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{kExitUsage, "expected comma-separated integers, got '" + text + "'"};
    }
  }
  if (out.empty() || (expected != 0 && out.size() != expected))
    throw Failure{kExitUsage, "malformed integer list '" + text + "'"};
  return out;
}

// ---- bfv ---------------------------------------------------------------

struct BfvOptions {
  std::string path;
  int random = 0;
  std::uint64_t seed = 0;
  bool settings = false;
  bool verify = false;
  bool json = false;
};

int run_bfv(const BfvOptions& o) {
  if (o.path.empty() == (o.random == 0)) throw Failure{kExitUsage, "give either a state file or --random N"};

  bk_optimizer_config opt;
  bk_optimizer_config_default(&opt);
  opt.seed = o.seed;

  std::vector<State> states;
  if (!o.path.empty()) {
    bk_state* s = nullptr;
    check_state_load(bk_state_load(o.path.c_str(), &s));
    states.emplace_back(s);
  } else {
    if (o.random < 1) throw Failure{kExitUsage, "--random needs N >= 1"};
    for (int i = 0; i < o.random; ++i) {
      bk_state* s = nullptr;
      check(bk_state_random(o.seed + static_cast<std::uint64_t>(i), &s));
      states.emplace_back(s);
    }
  }

  nlohmann::json rows = nlohmann::json::array();
  double max_dev = 0.0;
  const bool many = states.size() > 1;
  if (many && !o.json) std::printf(o.verify ? "index,value,upsilon1,upsilon2,maximized,deviation\n"
                                            : "index,value,upsilon1,upsilon2\n");
  for (std::size_t i = 0; i < states.size(); ++i) {
    bk_bfv h;
    check(bk_horodecki_bfv(states[i].get(), &h));
    nlohmann::json row{{"value", jnum(h.value)}, {"upsilon1", jnum(h.upsilon1)}, {"upsilon2", jnum(h.upsilon2)}};
    std::string line = many ? std::to_string(i) + "," + num(h.value) + "," + num(h.upsilon1) + "," + num(h.upsilon2)
                            : "value " + num(h.value) + "\nupsilon1 " + num(h.upsilon1) + "\nupsilon2 " +
                                  num(h.upsilon2);

    if (o.settings) {
      bk_settings s;
      check(bk_optimal_settings(states[i].get(), &s));
      double achieved = 0.0;
      check(bk_chsh_value(states[i].get(), &s, &achieved));
      row["settings"] = {{"a1", {jnum(s.a1[0]), jnum(s.a1[1]), jnum(s.a1[2])}},
                         {"a2", {jnum(s.a2[0]), jnum(s.a2[1]), jnum(s.a2[2])}},
                         {"b1", {jnum(s.b1[0]), jnum(s.b1[1]), jnum(s.b1[2])}},
                         {"b2", {jnum(s.b2[0]), jnum(s.b2[1]), jnum(s.b2[2])}}};
      if (!many)
        line += "\na1 " + vec(s.a1) + "\na2 " + vec(s.a2) + "\nb1 " + vec(s.b1) + "\nb2 " + vec(s.b2) +
                "\nchsh_at_settings " + num(achieved);
    }
    if (o.verify) {
      bk_bfv m;
      check(bk_maximize_chsh(states[i].get(), &opt, &m));
      const double dev = std::abs(m.value - h.value);
      max_dev = std::max(max_dev, dev);
      row["maximized"] = jnum(m.value);
      row["deviation"] = jnum(dev);
      line += many ? "," + num(m.value) + "," + num(dev)
                   : "\nmaximized " + num(m.value) + "\ndeviation " + num(dev);
    }
    rows.push_back(row);
    if (!o.json) std::printf("%s\n", line.c_str());
  }

  if (o.json) {
    nlohmann::json doc{{"states", rows}};
    if (o.verify) doc["max_deviation"] = jnum(max_dev);
    std::printf("%s\n", doc.dump(2).c_str());
  } else if (o.verify) {
    std::printf("max_deviation %s\n", num(max_dev).c_str());
  }
  if (o.verify && max_dev > 1e-3) {
    std::fprintf(stderr, "optimizer disagrees with the closed form by %s\n", num(max_dev).c_str());
    return kExitNumeric;
  }
  return kExitOk;
}

// ---- kcc ---------------------------------------------------------------

struct KccOptions {
  double beta_min = 0.40;
  double beta_max = 0.50;
  int steps = 100;
  double delta = 1e-3;
  std::string pair = "nearest";
  std::string method = "fd";
  std::optional<std::string> csv;
  std::optional<std::string> svg;
  bool json = false;
  double beta = 0.0;
  int threads = 1;
};

bk_sweep_config sweep_config(const KccOptions& o) {
  bk_sweep_config c;
  bk_sweep_config_default(&c);
  c.beta_min = o.beta_min;
  c.beta_max = o.beta_max;
  c.steps = o.steps;
  c.delta_beta = o.delta;
  c.kind = o.pair == "next" ? BK_PAIR_NEXT_TO_NEAREST : BK_PAIR_NEAREST;
  c.method = o.method == "analytic" ? BK_METHOD_ANALYTIC : BK_METHOD_FINITE_DIFFERENCE;
  c.threads = o.threads;
  return c;
}

int run_kcc_sweep(const KccOptions& o) {
  const auto config = sweep_config(o);
  bk_series* raw = nullptr;
  check(bk_bfv_curve(&config, &raw));
  std::unique_ptr<bk_series, void (*)(bk_series*)> series(raw, bk_series_free);

  char* text = nullptr;
  check(bk_series_csv(series.get(), &text));
  OwnedString csv(text);
  if (o.csv) write_or_print(o.csv, csv.get());

  if (o.svg) {
    check(bk_series_svg(series.get(), &text));
    OwnedString svg(text);
    write_or_print(o.svg, svg.get());
  }
  if (o.json) {
    check(bk_series_json(series.get(), &text));
    OwnedString json(text);
    std::fputs(json.get(), stdout);
  } else if (!o.csv) {
    std::fputs(csv.get(), stdout);
  }
  return kExitOk;
}

int run_kcc_critical(const KccOptions& o) {
  const auto config = sweep_config(o);
  bk_critical_estimate est;
  check(bk_estimate_critical(&config, &est));
  const double error = std::abs(est.beta_hat - bk_critical_beta());
  if (o.json) {
    nlohmann::json doc{{"beta_hat", jnum(est.beta_hat)},
                       {"abs_error", jnum(error)},
                       {"peak_value", jnum(est.peak_value)},
                       {"delta_beta", jnum(est.delta_beta)},
                       {"method", o.method}};
    std::printf("%s\n", doc.dump(2).c_str());
  } else {
    std::printf("beta_hat %s\nabs_error %s\npeak_value %s\n", num(est.beta_hat).c_str(), num(error).c_str(),
                num(est.peak_value).c_str());
  }
  return kExitOk;
}

int run_kcc_correlators(const KccOptions& o) {
  bk_kcc_point p;
  bk_dual_params d;
  check(bk_correlators(o.beta, &p));
  check(bk_kcc_dual_params(o.beta, &d));
  if (o.json) {
    nlohmann::json doc{{"beta", jnum(o.beta)}, {"m", jnum(p.m)},       {"c_nn", jnum(p.c_nn)},
                       {"c_nnn", jnum(p.c_nnn)}, {"chi", jnum(d.chi)}, {"beta_star", jnum(d.beta_star)},
                       {"gamma", jnum(d.gamma)}, {"xi", jnum(d.xi)}};
    std::printf("%s\n", doc.dump(2).c_str());
  } else {
    std::printf("beta %s\nm %s\nc_nn %s\nc_nnn %s\nchi %s\nbeta_star %s\ngamma %s\nxi %s\n", num(o.beta).c_str(),
                num(p.m).c_str(), num(p.c_nn).c_str(), num(p.c_nnn).c_str(), num(d.chi).c_str(),
                num(d.beta_star).c_str(), num(d.gamma).c_str(), num(d.xi).c_str());
  }
  return kExitOk;
}

// ---- oracle ------------------------------------------------------------

struct OracleOptions {
  int side = 0;
  double beta = 0.0;
  std::string pair;
  std::string displacement;
  std::string sites;
  std::string sides = "3,4,5";
  std::optional<std::string> csv;
  int threads = 1;
};

void check_side(int side, int lo, int hi) {
  if (side < lo || side > hi)
    throw Failure{kExitUsage, "--side must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"};
}

int run_oracle_ising(const OracleOptions& o) {
  check_side(o.side, 2, 5);
  double value = 0.0;
  if (!o.displacement.empty()) {
    const auto d = parse_int_list(o.displacement, 2);
    check(bk_ising_displacement(o.side, o.beta, d[0], d[1], o.threads, &value));
  } else if (!o.sites.empty()) {
    const auto xy = parse_int_list(o.sites);
    if (xy.size() % 2 != 0) throw Failure{kExitUsage, "--sites needs x,y pairs"};
    check(bk_ising_expectation(o.side, o.beta, xy.data(), xy.size() / 2, o.threads, &value));
  } else {
    throw Failure{kExitUsage, "give --pair-displacement DX,DY or --sites X,Y[,X,Y...]"};
  }
  std::printf("%s\n", num(value).c_str());
  return kExitOk;
}

int run_oracle_kcc(const OracleOptions& o) {
  check_side(o.side, 2, 3);
  const auto ij = parse_int_list(o.pair.empty() ? "0,1" : o.pair, 2);
  bk_ground_state* gs_raw = nullptr;
  check(bk_kcc_ground_state(o.side, o.beta, &gs_raw));
  std::unique_ptr<bk_ground_state, void (*)(bk_ground_state*)> gs(gs_raw, bk_ground_state_free);
  bk_state* rho_raw = nullptr;
  check(bk_ground_state_reduce_pair(gs.get(), ij[0], ij[1], &rho_raw));
  State rho(rho_raw);

  double e[32];
  check(bk_state_entries(rho.get(), e));
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const double re = e[2 * (r * 4 + c)], im = e[2 * (r * 4 + c) + 1];
      std::printf("%s%s%+.12gi", c ? "  " : "", num(re).c_str(), im);
    }
    std::printf("\n");
  }
  bk_bfv h;
  check(bk_horodecki_bfv(rho.get(), &h));
  std::printf("bfv %s\n", num(h.value).c_str());
  return kExitOk;
}

int run_oracle_compare(const OracleOptions& o) {
  const auto sides = parse_int_list(o.sides);
  for (int s : sides) check_side(s, 2, 5);
  if (!(o.beta >= 0.0)) throw Failure{kExitUsage, "--beta must be non-negative"};
  bk_comparison* raw = nullptr;
  check(bk_compare_formulas(o.beta, sides.data(), sides.size(), o.threads, &raw));
  std::unique_ptr<bk_comparison, void (*)(bk_comparison*)> report(raw, bk_comparison_free);
  char* text = nullptr;
  check(bk_comparison_csv(report.get(), &text));
  OwnedString csv(text);
  write_or_print(o.csv, csv.get());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell function values of two-qubit states and the KCC topological transition"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bk_version()));

  BfvOptions bfv;
  auto* bfv_cmd = app.add_subcommand("bfv", "BFV of a state file or of seeded random states");
  bfv_cmd->add_option("path", bfv.path, "StateFile JSON");
  bfv_cmd->add_option("--random", bfv.random, "evaluate N seeded random states")->check(CLI::PositiveNumber);
  bfv_cmd->add_option("--seed", bfv.seed, "base seed (default 0)");
  bfv_cmd->add_flag("--settings", bfv.settings, "print optimal measurement directions");
  bfv_cmd->add_flag("--verify", bfv.verify, "cross-check against direct maximization");
  bfv_cmd->add_flag("--json", bfv.json, "JSON output");

  KccOptions kcc;
  auto* kcc_cmd = app.add_subcommand("kcc", "thermodynamic-limit KCC quantities");
  kcc_cmd->require_subcommand(1);
  auto add_sweep_flags = [&](CLI::App* c) {
    c->add_option("--beta-min", kcc.beta_min, "grid start")->check(CLI::PositiveNumber);
    c->add_option("--beta-max", kcc.beta_max, "grid end")->check(CLI::PositiveNumber);
    c->add_option("--steps", kcc.steps, "grid intervals (points = steps + 1)")->check(CLI::Range(8, 10000000));
    c->add_option("--delta", kcc.delta, "finite-difference step")->check(CLI::PositiveNumber);
    c->add_option("--pair", kcc.pair, "nearest|next")->check(CLI::IsMember({"nearest", "next"}));
    c->add_option("--method", kcc.method, "fd|analytic")->check(CLI::IsMember({"fd", "analytic"}));
    c->add_option("--threads", kcc.threads, "worker cap")->check(CLI::Range(1, 1024));
    c->add_flag("--json", kcc.json, "JSON output");
  };
  auto* sweep_cmd = kcc_cmd->add_subcommand("sweep", "BFV and derivative on a beta grid");
  add_sweep_flags(sweep_cmd);
  sweep_cmd->add_option("--csv", kcc.csv, "write the series CSV here");
  sweep_cmd->add_option("--svg", kcc.svg, "write a dB/dbeta line plot here");
  auto* critical_cmd = kcc_cmd->add_subcommand("critical", "locate the derivative peak");
  add_sweep_flags(critical_cmd);
  auto* corr_cmd = kcc_cmd->add_subcommand("correlators", "m, c_nn, c_nnn and dual parameters");
  corr_cmd->add_option("--beta", kcc.beta, "coupling")->required()->check(CLI::PositiveNumber);
  corr_cmd->add_flag("--json", kcc.json, "JSON output");

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "exact small-lattice oracles");
  oracle_cmd->require_subcommand(1);
  auto* ising_cmd = oracle_cmd->add_subcommand("ising", "enumerated Ising correlators");
  ising_cmd->add_option("--side", oracle.side, "torus side 2..5")->required();
  ising_cmd->add_option("--beta", oracle.beta, "coupling")->required()->check(CLI::NonNegativeNumber);
  ising_cmd->add_option("--pair-displacement", oracle.displacement, "DX,DY");
  ising_cmd->add_option("--sites", oracle.sites, "X,Y[,X,Y...]");
  ising_cmd->add_option("--threads", oracle.threads, "worker cap")->check(CLI::Range(1, 1024));
  auto* okcc_cmd = oracle_cmd->add_subcommand("kcc", "exact KCC ground state, reduced pair");
  okcc_cmd->add_option("--side", oracle.side, "torus side 2..3")->required();
  okcc_cmd->add_option("--beta", oracle.beta, "coupling")->required()->check(CLI::NonNegativeNumber);
  okcc_cmd->add_option("--pair", oracle.pair, "edge indices I,J");
  auto* compare_cmd = oracle_cmd->add_subcommand("compare", "enumeration vs closed formulas (CSV)");
  compare_cmd->add_option("--beta", oracle.beta, "coupling")->required()->check(CLI::NonNegativeNumber);
  compare_cmd->add_option("--sides", oracle.sides, "comma-separated sides (default 3,4,5)");
  compare_cmd->add_option("--csv", oracle.csv, "write the report here");
  compare_cmd->add_option("--threads", oracle.threads, "worker cap")->check(CLI::Range(1, 1024));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (bfv_cmd->parsed()) return run_bfv(bfv);
    if (sweep_cmd->parsed()) return run_kcc_sweep(kcc);
    if (critical_cmd->parsed()) return run_kcc_critical(kcc);
    if (corr_cmd->parsed()) return run_kcc_correlators(kcc);
    if (ising_cmd->parsed()) return run_oracle_ising(oracle);
    if (okcc_cmd->parsed()) return run_oracle_kcc(oracle);
    if (compare_cmd->parsed()) return run_oracle_compare(oracle);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.exit_code;
  }
  return kExitUsage;
}
