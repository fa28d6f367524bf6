#include "lkllt/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include "lkllt/curie_weiss.hpp"
#include "lkllt/er.hpp"
#include "lkllt/lk.hpp"
#include "lkllt/rgg.hpp"
#include "lkllt/tp.hpp"

namespace lkllt {
namespace {

using Json = nlohmann::ordered_json;

struct Output {
  std::string format = "csv";
  std::string path;
};

void add_output_flags(CLI::App* cmd, Output& o) {
  cmd->add_option("--out,--format", o.format, "report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", o.path, "write the report here instead of stdout");
}

void emit(const std::string& text, const Output& o, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.path, std::ios::binary);
  if (!file) fail(ErrorKind::InvalidParameter, "cannot open " + o.path + " for writing");
  file << text;
}

void emit_table(RateTable table, const std::vector<std::pair<std::string, std::string>>& config,
                const Output& o, std::ostream& out) {
  table.metadata.insert(table.metadata.begin(), {"version", kVersion});
  for (const auto& kv : config) table.metadata.push_back(kv);
  emit(o.format == "json" ? table.to_json() : table.to_csv(), o, out);
}

Json number(double x) {
  // Round-trip through the shared formatter so JSON and CSV agree.
  if (!std::isfinite(x)) return format_number(x);
  return Json::parse(format_number(x));
}

LatticeDist read_dist(const std::string& path) {
  std::ifstream file(path);
  if (!file) fail(ErrorKind::InvalidParameter, "cannot read " + path);
  Json doc;
  try {
    doc = Json::parse(file);
  } catch (const Json::exception& e) {
    fail(ErrorKind::InvalidDistribution, path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("offset") || !doc.contains("pmf") ||
      !doc["offset"].is_number_integer() || !doc["pmf"].is_array()) {
    fail(ErrorKind::InvalidDistribution, path + ": expected {\"offset\": int, \"pmf\": [...]}");
  }
  const auto& pmf = doc["pmf"];
  Eigen::ArrayXd masses(static_cast<Eigen::Index>(pmf.size()));
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (!pmf[i].is_number()) fail(ErrorKind::InvalidDistribution, path + ": non-numeric mass");
    masses(static_cast<Eigen::Index>(i)) = pmf[i].get<double>();
  }
  return LatticeDist::from_pmf(doc["offset"].get<long>(), masses);
}

Json dist_json(const LatticeDist& d) {
  Json j;
  j["offset"] = d.offset();
  j["pmf"] = Json::array();
  for (long i = 0; i < d.size(); ++i) j["pmf"].push_back(number(d.pmf()(i)));
  return j;
}

Json stats_json(const PairChainStats& s) {
  Json j;
  j["m"] = s.m;
  j["replicates"] = s.replicates;
  j["q_m"] = number(s.q_m);
  j["mean_q_plus"] = number(s.mean_q_plus);
  j["mean_q_minus"] = number(s.mean_q_minus);
  j["var_q_plus"] = number(s.var_q_plus);
  j["var_q_minus"] = number(s.var_q_minus);
  if (s.has_ediff) {
    j["ediff_plus"] = number(s.ediff_plus);
    j["ediff_minus"] = number(s.ediff_minus);
  }
  j["std_errors"] = {{"q_m", number(s.se_q_m)},
                     {"var_q_plus", number(s.se_var_q_plus)},
                     {"var_q_minus", number(s.se_var_q_minus)},
                     {"ediff_plus", number(s.se_ediff_plus)},
                     {"ediff_minus", number(s.se_ediff_minus)},
                     {"thm3_bound", number(s.se_thm3)},
                     {"thm4_bound", number(s.se_thm4)}};
  return j;
}

std::vector<double> split_doubles(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidParameter, "bad number '" + item + "'");
    }
  }
  require(!out.empty(), ErrorKind::InvalidParameter, "empty list");
  return out;
}

std::string seed_text(std::uint64_t seed) { return std::to_string(seed); }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice metrics, smoothing bounds and local limit experiments", "lkllt"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::function<void()> action;

  // metrics
  std::string f_path, g_path;
  int metric_m = 1;
  auto* metrics = app.add_subcommand("metrics", "distances and smoothing terms of two laws");
  metrics->add_option("--f", f_path, "first distribution (JSON)")->required();
  metrics->add_option("--g", g_path, "second distribution (JSON)")->required();
  metrics->add_option("--m", metric_m, "span of the smoothed local metric")->capture_default_str();
  metrics->callback([&] {
    action = [&] {
      const LatticeDist f = read_dist(f_path);
      const LatticeDist g = read_dist(g_path);
      Json j;
      j["kolmogorov"] = number(kolmogorov_distance(f, g));
      j["wasserstein"] = number(wasserstein_distance(f, g));
      j["total_variation"] = number(total_variation_distance(f, g));
      j["local"] = number(local_distance(f, g, 1));
      j["local_m"] = {{"m", metric_m}, {"value", number(local_distance(f, g, metric_m))}};
      for (const auto& [name, d] : {std::pair{"f", &f}, std::pair{"g", &g}}) {
        j["smoothing"][name] = {{"D1", number(smoothing_term(*d, 1, metric_m))},
                                {"D2", number(smoothing_term(*d, 2, metric_m))},
                                {"D3", number(smoothing_term(*d, 3, metric_m))}};
      }
      out << j.dump(2) << '\n';
    };
  });

  // tp
  double tp_mu = 0.0;
  std::string tp_sigma2 = "100";
  Output tp_out;
  auto* tp = app.add_subcommand("tp", "translated Poisson against the normal law");
  tp->add_option("--mu", tp_mu, "mean")->capture_default_str();
  tp->add_option("--sigma2", tp_sigma2, "comma-separated variances")->capture_default_str();
  add_output_flags(tp, tp_out);
  tp->callback([&] {
    action = [&] {
      RateTable t;
      t.columns = {"mu", "sigma2", "local_gap", "dk", "dw"};
      for (double s2 : split_doubles(tp_sigma2)) {
        const NormalGaps gaps = tp_normal_gaps(tp_params(tp_mu, s2));
        t.add_row({tp_mu, s2, gaps.local_gap, gaps.kolmogorov, gaps.wasserstein});
      }
      t.sort_rows();
      emit_table(std::move(t), {{"experiment", "tp"}}, tp_out, out);
    };
  });

  // verify lk
  long lk_trials = 10000;
  std::uint64_t lk_seed = 1;
  std::string lk_case = "both";
  std::string lk_csv;
  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  auto* verify_lk = verify->add_subcommand("lk", "fuzz the inequalities with known constant");
  verify_lk->add_option("--trials", lk_trials)->capture_default_str();
  verify_lk->add_option("--seed", lk_seed)->capture_default_str();
  verify_lk->add_option("--case", lk_case)
      ->check(CLI::IsMember({"both", "n2_p1_q1_r1", "n3_pinf_qinf_r1"}))
      ->capture_default_str();
  verify_lk->add_option("--csv", lk_csv, "write every trial (trial, combo, lhs, rhs_core, ratio)");
  int verify_status = kExitOk;
  verify_lk->callback([&] {
    action = [&] {
      std::vector<KnownConstantCase> cases;
      if (lk_case != "n3_pinf_qinf_r1") cases.push_back(KnownConstantCase::N2_P1_Q1_R1);
      if (lk_case != "n2_p1_q1_r1") cases.push_back(KnownConstantCase::N3_Pinf_Qinf_R1);
      const double c = std::sqrt(2.0);
      std::string csv = "trial,combo,lhs,rhs_core,ratio\n";
      for (KnownConstantCase kc : cases) {
        const LKFuzzResult r = lk_fuzz(lk_trials, lk_seed, kc);
        const bool ok = r.worst_ratio <= c;
        out << to_string(kc) << " trials=" << lk_trials << " seed=" << lk_seed
            << " worst_ratio=" << format_number(r.worst_ratio) << " constant=" << format_number(c)
            << (ok ? " ok" : " VIOLATED") << '\n';
        if (!ok) verify_status = kExitCheckFailed;
        for (const LKTrial& t : r.trials) {
          csv += std::to_string(t.trial) + ',' + t.combo + ',' + format_number(t.lhs) + ',' +
                 format_number(t.rhs_core) + ',' + format_number(t.ratio) + '\n';
        }
      }
      if (!lk_csv.empty()) emit(csv, Output{"csv", lk_csv}, out);
    };
  });

  // bounds
  std::string model = "cw";
  long b_n = 50;
  double b_beta = 0.5, b_h = 0.0, b_p = 0.5;
  int b_m = 2;
  long b_reps = 10000;
  std::uint64_t b_seed = 1;
  auto* bounds = app.add_subcommand("bounds", "exchangeable-pair smoothing bounds");
  bounds->set_help_flag("--help", "print this help and exit");
  bounds->add_option("--model", model)
      ->check(CLI::IsMember({"cw", "er-iso", "er-tri"}))
      ->capture_default_str();
  bounds->add_option("--n", b_n)->capture_default_str();
  bounds->add_option("--beta", b_beta)->capture_default_str();
  bounds->add_option("--h", b_h)->capture_default_str();
  bounds->add_option("--p", b_p)->capture_default_str();
  bounds->add_option("--m", b_m)->capture_default_str();
  bounds->add_option("--reps", b_reps)->capture_default_str();
  bounds->add_option("--seed", b_seed)->capture_default_str();
  bounds->callback([&] {
    action = [&] {
      PairChainStats s;
      Json j;
      j["version"] = kVersion;
      j["model"] = model;
      j["n"] = b_n;
      if (model == "cw") {
        const CWParams params{b_n, b_beta, b_h};
        j["beta"] = number(b_beta);
        j["h"] = number(b_h);
        s = pair_stats(CurieWeissPairModel(params), b_m, b_reps, b_seed);
      } else {
        require(b_n >= 2 && b_n <= 4096, ErrorKind::InvalidParameter, "n must lie in [2, 4096]");
        j["p"] = number(b_p);
        const ErStatistic stat = model == "er-iso" ? ErStatistic::Isolated : ErStatistic::Triangles;
        s = pair_stats(ErdosRenyiPairModel(static_cast<int>(b_n), b_p, stat), b_m, b_reps, b_seed);
      }
      j["seed"] = seed_text(b_seed);
      j["stats"] = stats_json(s);
      j["thm3_bound"] = number(bound_thm3(s));
      j["thm4_bound"] = number(bound_thm4(s));
      out << j.dump(2) << '\n';
    };
  });

  // cw rate
  double cw_beta = 0.5, cw_h = 0.0;
  std::string cw_grid = "64:4096:x2";
  Output cw_out;
  auto* cw = app.add_subcommand("cw", "Curie-Weiss experiments");
  cw->require_subcommand(1);
  auto* cw_rate = cw->add_subcommand("rate", "exact laws against translated Poisson");
  cw_rate->set_help_flag("--help", "print this help and exit");
  cw_rate->add_option("--beta", cw_beta)->capture_default_str();
  cw_rate->add_option("--h", cw_h)->capture_default_str();
  cw_rate->add_option("--n-grid", cw_grid)->capture_default_str();
  add_output_flags(cw_rate, cw_out);
  cw_rate->callback([&] {
    action = [&] {
      const std::vector<long> grid = parse_grid(cw_grid);
      emit_table(cw_rate_experiment(cw_beta, cw_h, grid), {{"n_grid", cw_grid}}, cw_out, out);
    };
  });

  // er iso | tri | oracle
  auto* er = app.add_subcommand("er", "Erdos-Renyi experiments");
  er->require_subcommand(1);
  std::string er_grid = "64:256:x2";
  double er_c = 1.0, er_alpha = 1.0;
  double er_p = -1.0;
  long er_reps = 10000;
  std::uint64_t er_seed = 1;
  Output er_out;
  ErStatistic er_stat = ErStatistic::Isolated;
  const auto er_rate = [&](const char* name, ErStatistic stat, double alpha_default) {
    auto* cmd = er->add_subcommand(name, std::string("rate experiment for ") + to_string(stat));
    cmd->add_option("--n,--n-grid", er_grid, "sizes: a:b:xk or a comma list")->capture_default_str();
    cmd->add_option("--c", er_c, "p = c n^-alpha")->capture_default_str();
    cmd->add_option("--alpha", er_alpha)->default_str(format_number(alpha_default));
    cmd->add_option("--p", er_p, "fixed edge probability (overrides c, alpha)");
    cmd->add_option("--reps", er_reps)->capture_default_str();
    cmd->add_option("--seed", er_seed)->capture_default_str();
    add_output_flags(cmd, er_out);
    cmd->preparse_callback([&, stat, alpha_default](std::size_t) {
      er_stat = stat;
      er_alpha = alpha_default;
    });
    cmd->callback([&] {
      action = [&] {
        ErRegime regime{er_stat, er_c, er_alpha};
        if (er_p >= 0.0) regime = {er_stat, er_p, 0.0};
        const std::vector<long> grid = parse_grid(er_grid);
        emit_table(er_rate_experiment(regime, grid, er_reps, er_seed), {{"n_grid", er_grid}},
                   er_out, out);
      };
    });
  };
  er_rate("iso", ErStatistic::Isolated, 1.0);
  er_rate("tri", ErStatistic::Triangles, 0.5);

  int oracle_n = 5;
  double oracle_p = 0.5;
  std::string oracle_stat = "isolated";
  auto* oracle = er->add_subcommand("oracle", "exact law by enumerating every graph");
  oracle->add_option("--n", oracle_n)->capture_default_str();
  oracle->add_option("--p", oracle_p)->capture_default_str();
  oracle->add_option("--stat", oracle_stat)
      ->check(CLI::IsMember({"isolated", "triangles"}))
      ->capture_default_str();
  oracle->callback([&] {
    action = [&] {
      const EnumeratedLaw law = enumerate_graphs_oracle(oracle_n, oracle_p, parse_statistic(oracle_stat));
      Json j;
      j["version"] = kVersion;
      j["n"] = oracle_n;
      j["p"] = number(oracle_p);
      j["stat"] = oracle_stat;
      j["law"] = dist_json(law.law);
      j["moments"] = Json::array();
      for (double m : law.moments) j["moments"].push_back(number(m));
      out << j.dump(2) << '\n';
    };
  });

  // rgg
  double rgg_b = 0.2;
  int rgg_d = 1;
  std::string rgg_grid = "50:200:x2";
  long rgg_reps = 10000;
  std::uint64_t rgg_seed = 1;
  Output rgg_out;
  auto* rgg = app.add_subcommand("rgg", "independence number of random geometric graphs");
  rgg->add_option("--b", rgg_b)->capture_default_str();
  rgg->add_option("--d", rgg_d)->capture_default_str();
  rgg->add_option("--lambda-grid", rgg_grid)->capture_default_str();
  rgg->add_option("--reps", rgg_reps)->capture_default_str();
  rgg->add_option("--seed", rgg_seed)->capture_default_str();
  add_output_flags(rgg, rgg_out);
  rgg->callback([&] {
    action = [&] {
      const std::vector<long> grid = parse_grid(rgg_grid);
      emit_table(rgg_experiment(rgg_b, rgg_d, grid, rgg_reps, rgg_seed),
                 {{"lambda_grid", rgg_grid}}, rgg_out, out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (action) action();
  } catch (const Error& e) {
    err << "lkllt: " << to_string(e.kind()) << ": " << e.what() << '\n';
    const bool numerical =
        e.kind() == ErrorKind::NumericalFailure || e.kind() == ErrorKind::DegenerateChain;
    return numerical ? kExitNumerical : kExitUsage;
  } catch (const std::exception& e) {
    err << "lkllt: " << e.what() << '\n';
    return kExitNumerical;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  err << "lkllt: wall time " << elapsed.count() << " s\n";
  return verify_status;
}

}  // namespace lkllt
