// cutsparse: command-line front end.
//
// Exit codes: 0 ok, 1 unreadable or malformed input, 2 bad configuration or
// usage, 3 internal guard tripped.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cutsparse/graph_io.hpp"
#include "cutsparse/msf_packing.hpp"
#include "cutsparse/sampling.hpp"
#include "cutsparse/sparsifier.hpp"
#include "cutsparse/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace cutsparse;

namespace {

constexpr double kPracticalRho = 8.0;

struct RunFlags {
  std::string input;
  std::string output;
  std::string report;
  double epsilon = 0.5;
  double c = 1.0;
  std::uint64_t seed = 0;
  std::string mode = "theory";
  std::optional<double> rho_scale;
  double rho = kPracticalRho;
  std::string method = "msf";
  std::string regime = "auto";
  std::optional<std::uint32_t> max_levels;
  bool no_timing = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--epsilon", f.epsilon, "accuracy in (0, 1)");
  cmd->add_option("--c", f.c, "confidence exponent (>= 1)");
  cmd->add_option("--seed", f.seed, "root RNG seed");
  cmd->add_option("--mode", f.mode, "theory | practical")->check(CLI::IsMember({"theory", "practical"}));
  cmd->add_option("--rho-scale", f.rho_scale, "multiplier on the theoretical rho");
  cmd->add_option("--rho", f.rho, "pinned rho in practical mode (default 8)");
  cmd->add_option("--method", f.method, "msf | ni | pipeline")->check(CLI::IsMember({"msf", "ni", "pipeline"}));
  cmd->add_option("--regime", f.regime, "auto | polynomial | unbounded")
      ->check(CLI::IsMember({"auto", "polynomial", "unbounded"}));
  cmd->add_option("--max-levels", f.max_levels, "level guard (default n)");
}

SparsifyConfig make_config(const RunFlags& f) {
  SparsifyConfig cfg;
  cfg.epsilon = f.epsilon;
  cfg.c = f.c;
  cfg.seed = f.seed;
  cfg.regime = parse_regime(f.regime);
  cfg.max_levels_guard = f.max_levels;
  if (f.rho_scale) cfg.rho_scale = *f.rho_scale;
  if (f.mode == "practical" && !f.rho_scale) cfg.rho_target = f.rho;
  cfg.validate();
  return cfg;
}

class Stopwatch {
 public:
  explicit Stopwatch(bool enabled) : enabled_(enabled), start_(std::chrono::steady_clock::now()) {}
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - start_).count();
    start_ = now;
    return enabled_ ? ms : 0.0;
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

json config_json(const RunFlags& f, const SparsifyConfig& cfg) {
  json j;
  j["epsilon"] = cfg.epsilon;
  j["c"] = cfg.c;
  j["seed"] = cfg.seed;
  j["mode"] = f.mode;
  j["method"] = f.method;
  j["regime"] = f.regime;
  j["rho_scale"] = cfg.rho_scale;
  j["rho_target"] = cfg.rho_target ? json(*cfg.rho_target) : json(nullptr);
  j["max_levels_guard"] = cfg.max_levels_guard ? json(*cfg.max_levels_guard) : json(nullptr);
  j["generator"] = std::string(RngStream::kGenerator);
  return j;
}

json trace_json(const RunTrace& trace) {
  json rounds = json::array();
  for (const auto& r : trace.rounds) {
    json levels = json::array();
    for (const auto& l : r.levels)
      levels.push_back({{"level", l.level}, {"k", l.packing_size}, {"x", l.x_size}, {"f", l.f_size}, {"y", l.y_size}});
    rounds.push_back({{"epsilon", r.epsilon},
                      {"rho", r.rho},
                      {"unbounded", r.unbounded},
                      {"early_out", r.early_out},
                      {"gamma", r.gamma},
                      {"scale_exponent", r.scale_exponent},
                      {"input_edges", r.input_edges},
                      {"output_edges", r.output_edges},
                      {"set_aside", r.set_aside},
                      {"levels", levels}});
  }
  return rounds;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

int cmd_sparsify(const RunFlags& f) {
  const SparsifyConfig cfg = make_config(f);
  const Method method = parse_method(f.method);
  Stopwatch clock(!f.no_timing);
  const WeightedGraph g = load_graph_file(f.input);
  const double t_load = clock.lap_ms();
  RunTrace trace;
  const SparseGraph h = run_method(method, g, cfg, &trace);
  const double t_run = clock.lap_ms();
  save_graph_file(f.output, h);
  const double t_write = clock.lap_ms();

  if (!f.report.empty()) {
    json j;
    j["input"] = {{"path", fs::path(f.input).filename().string()},
                  {"n", g.num_vertices()},
                  {"m", g.num_edges()},
                  {"w_max", g.max_weight()}};
    j["config"] = config_json(f, cfg);
    j["rounds"] = trace_json(trace);
    j["gamma"] = trace.rounds.empty() ? 0 : trace.rounds.back().gamma;
    j["output_edges"] = h.num_edges();
    j["seed"] = cfg.seed;
    j["mode"] = f.mode;
    j["time_ms"] = {{"load", t_load}, {"sparsify", t_run}, {"write", t_write}};
    write_json(f.report, j);
  }
  return 0;
}

json cut_report_json(const CutReport& r) {
  json j;
  j["max_rel_error"] = std::isfinite(r.max_rel_error) ? json(r.max_rel_error) : json("inf");
  j["worst_cut"] = r.worst_cut ? json(r.worst_cut->members()) : json(nullptr);
  j["num_cuts"] = r.num_cuts;
  j["min_cut_value"] = r.min_cut_value;
  return j;
}

int cmd_verify(const std::string& original, const std::string& sparsifier, std::uint32_t n_limit,
               const std::string& output) {
  const SparseGraph g = load_sparse_graph_file(original);
  const SparseGraph h = load_sparse_graph_file(sparsifier);
  if (g.num_vertices() > n_limit)
    throw ConfigError("n = " + std::to_string(g.num_vertices()) + " exceeds --n-limit " + std::to_string(n_limit));
  const std::string text = cut_report_json(check_sparsifier(g, h, n_limit)).dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write '" + output + "'");
    out << text;
  }
  return 0;
}

int cmd_mincut(const RunFlags& f, bool exact) {
  const WeightedGraph g = load_graph_file(f.input);
  const MinCut cut = exact ? exact_min_cut(g) : approx_min_cut(g, make_config(f), parse_method(f.method));
  std::cout << "value " << format_weight(cut.value) << "\nside";
  for (Vertex v : cut.cut.members()) std::cout << ' ' << v;
  std::cout << '\n';
  return 0;
}

int cmd_msf(const std::string& input, std::uint32_t levels, const std::string& algorithm) {
  const WeightedGraph g = load_graph_file(input);
  auto show = [](const MsfLevel& l) { return l.is_over() ? std::string("over") : std::to_string(l.index()); };
  std::vector<std::string> column(g.num_edges());
  if (algorithm == "windowed") {
    const auto est = msf_packing_windowed(g, levels);
    for (EdgeId id = 0; id < g.num_edges(); ++id)
      column[id] = est.covered(id) ? show(*est.level[id]) : std::string("uncovered");
  } else {
    const auto packing = algorithm == "bounded"   ? msf_packing_bounded(g, levels)
                         : algorithm == "general" ? msf_packing_general(g, levels)
                                                  : oracle_msf_packing(g, levels);
    for (EdgeId id = 0; id < g.num_edges(); ++id) column[id] = show(packing.level[id]);
  }
  std::cout << "edge u v w level\n";
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    std::cout << id << ' ' << e.u << ' ' << e.v << ' ' << e.w << ' ' << column[id] << '\n';
  }
  return 0;
}

bool is_graph_file(const fs::path& p) {
  static const std::vector<std::string> kExt = {".txt", ".el", ".edges", ".gr", ".dimacs", ".col"};
  return fs::is_regular_file(p) && std::find(kExt.begin(), kExt.end(), p.extension().string()) != kExt.end();
}

int cmd_bench(const RunFlags& f, const std::string& corpus, const std::vector<std::uint64_t>& seeds,
              const std::vector<std::string>& methods, const std::string& output) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus))
    if (is_graph_file(entry.path())) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InvalidInput("no graph files in '" + corpus + "'");
  if (seeds.empty()) throw ConfigError("bench needs at least one seed");

  std::vector<WeightedGraph> graphs;
  for (const auto& p : files) graphs.push_back(load_graph_file(p));
  std::vector<Method> parsed;
  for (const auto& m : methods) parsed.push_back(parse_method(m));
  const SparsifyConfig base = make_config(f);

  struct Task {
    std::size_t graph, method, seed;
    std::size_t size_out = 0;
    double error = 0.0;
    double ms = 0.0;
    std::string failure;
  };
  std::vector<Task> tasks;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi)
    for (std::size_t mi = 0; mi < parsed.size(); ++mi)
      for (std::size_t si = 0; si < seeds.size(); ++si) tasks.push_back({gi, mi, si});

  // One task per (graph, method, seed); each owns its RNG streams, so the
  // results do not depend on the schedule.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks.size()); ++t) {
    Task& task = tasks[t];
    try {
      SparsifyConfig cfg = base;
      cfg.seed = seeds[task.seed];
      const auto& g = graphs[task.graph];
      const auto start = std::chrono::steady_clock::now();
      const SparseGraph h = run_method(parsed[task.method], g, cfg);
      task.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      task.size_out = h.num_edges();
      task.error = g.num_vertices() >= 2 && g.num_vertices() <= kEnumerationLimit
                       ? check_sparsifier(g, h).max_rel_error
                       : std::numeric_limits<double>::quiet_NaN();
    } catch (const std::exception& e) {
      task.failure = e.what();
    }
  }
  for (const auto& t : tasks)
    if (!t.failure.empty()) throw GuardError(files[t.graph].filename().string() + ": " + t.failure);

  std::ostringstream csv;
  csv << "graph,method,mode,size_out,max_rel_error,time_ms\n";
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    for (std::size_t mi = 0; mi < parsed.size(); ++mi) {
      double size = 0, err = 0, ms = 0;
      for (const auto& t : tasks) {
        if (t.graph != gi || t.method != mi) continue;
        size += static_cast<double>(t.size_out);
        err = std::isnan(t.error) || std::isnan(err) ? std::numeric_limits<double>::quiet_NaN() : std::max(err, t.error);
        ms += t.ms;
      }
      const double k = static_cast<double>(seeds.size());
      csv << files[gi].filename().string() << ',' << to_string(parsed[mi]) << ',' << f.mode << ','
          << format_weight(size / k) << ',' << (std::isnan(err) ? std::string() : format_weight(err)) << ','
          << (f.no_timing ? std::string("0") : format_weight(std::round(ms / k * 1000) / 1000)) << '\n';
    }
  }
  if (output.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(output, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write '" + output + "'");
    out << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut sparsification via maximum spanning forest packings"};
  app.require_subcommand(1);
  app.fallthrough();
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "write 0 for every wall-clock field");

  RunFlags sf;
  auto* sparsify_cmd = app.add_subcommand("sparsify", "sparsify a graph");
  sparsify_cmd->add_option("--input", sf.input, "input graph")->required();
  sparsify_cmd->add_option("--output", sf.output, "output graph")->required();
  sparsify_cmd->add_option("--report", sf.report, "JSON run report");
  add_run_flags(sparsify_cmd, sf);

  std::string v_original, v_sparsifier, v_output;
  std::uint32_t v_limit = kEnumerationLimit;
  auto* verify_cmd = app.add_subcommand("verify", "compare every cut of two graphs");
  verify_cmd->add_option("original", v_original, "reference graph")->required();
  verify_cmd->add_option("sparsifier", v_sparsifier, "candidate graph")->required();
  verify_cmd->add_option("--n-limit", v_limit, "enumeration limit on n");
  verify_cmd->add_option("--output", v_output, "write the report here instead of stdout");

  RunFlags mf;
  bool mc_exact = false;
  auto* mincut_cmd = app.add_subcommand("mincut", "approximate global minimum cut");
  mincut_cmd->add_option("--input", mf.input, "input graph")->required();
  mincut_cmd->add_flag("--exact", mc_exact, "skip sparsification");
  add_run_flags(mincut_cmd, mf);

  std::string msf_input, msf_algorithm = "bounded";
  std::uint32_t msf_levels = 1;
  auto* msf_cmd = app.add_subcommand("msf", "print MSF packing indices");
  msf_cmd->add_option("--input", msf_input, "input graph")->required();
  msf_cmd->add_option("--levels", msf_levels, "number of forests M")->check(CLI::PositiveNumber);
  msf_cmd->add_option("--algorithm", msf_algorithm, "bounded | general | windowed | oracle")
      ->check(CLI::IsMember({"bounded", "general", "windowed", "oracle"}));

  RunFlags bf;
  bf.mode = "practical";
  std::string b_corpus, b_output;
  std::vector<std::uint64_t> b_seeds{1, 2, 3};
  std::vector<std::string> b_methods{"msf", "ni"};
  auto* bench_cmd = app.add_subcommand("bench", "run methods over a corpus directory");
  bench_cmd->add_option("--corpus", b_corpus, "directory of graph files")->required();
  bench_cmd->add_option("--seeds", b_seeds, "seed list")->delimiter(',');
  bench_cmd->add_option("--methods", b_methods, "method list")->delimiter(',');
  bench_cmd->add_option("--output", b_output, "CSV path (default stdout)");
  add_run_flags(bench_cmd, bf);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sparsify_cmd) {
      sf.no_timing = no_timing;
      return cmd_sparsify(sf);
    }
    if (*verify_cmd) return cmd_verify(v_original, v_sparsifier, v_limit, v_output);
    if (*mincut_cmd) return cmd_mincut(mf, mc_exact);
    if (*msf_cmd) return cmd_msf(msf_input, msf_levels, msf_algorithm);
    if (*bench_cmd) {
      bf.no_timing = no_timing;
      return cmd_bench(bf, b_corpus, b_seeds, b_methods, b_output);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << '\n';
    return 3;
  } catch (const InvalidInput& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
