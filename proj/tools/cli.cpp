#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include "qst/analytic.hpp"
#include "qst/csv.hpp"
#include "qst/error.hpp"
#include "qst/graph.hpp"
#include "qst/hamiltonian.hpp"
#include "qst/noise.hpp"
#include "qst/search.hpp"
#include "qst/spectral.hpp"
#include "qst/verify.hpp"

namespace qst::cli {
namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every flag is also a config-file key with the same name.
enum class Kind { Count, Real, Text, Size, TextList, Flag };

struct Key {
  const char* name;
  Kind kind;
  const char* help;
};

constexpr Key kKeys[] = {
    {"graph", Kind::Text, "kn, knm, path, theta or file"},
    {"n", Kind::Size, "vertex count (path length for theta); verify also takes a range A..B"},
    {"l", Kind::Count, "number of parallel paths in a theta graph"},
    {"edge-file", Kind::Text, "edge list for --graph file"},
    {"io", Kind::Text, "I/O vertex pair I,J"},
    {"shift-io", Kind::Real, "energy shift on both I/O vertices"},
    {"shift", Kind::TextList, "per-vertex shift V:X, repeatable"},
    {"tmax", Kind::Real, "end of the time grid"},
    {"steps", Kind::Count, "time grid intervals; samples at k*tmax/steps"},
    {"window", Kind::Text, "search window A,B"},
    {"pst-threshold", Kind::Real, "fidelity that counts as transfer"},
    {"mode", Kind::Text, "noise on vertex frequencies (vertex) or edge couplings (edge)"},
    {"sigma2", Kind::Text, "variance grid start:stop:count"},
    {"samples", Kind::Count, "realizations per variance"},
    {"seed", Kind::Count, "master seed"},
    {"out", Kind::Text, "CSV path; a JSON sidecar is written next to it"},
    {"threads", Kind::Count, "worker threads, 0 = all, 1 = serial reference"},
    {"shifts", Kind::Text, "table shift values, comma separated"},
    {"sizes", Kind::Text, "table sizes, comma separated"},
    {"paths", Kind::Text, "theta table path counts, comma separated"},
    {"families", Kind::Text, "verify families, comma separated (kn, knm)"},
    {"window-cap", Kind::Real, "fixed search window [0, cap] for every table cell"},
    {"grid-points", Kind::Count, "search grid size, 0 = resolve from the spectrum"},
    {"t-eval", Kind::Real, "evaluation time for a noise sweep"},
    {"random-times", Kind::Count, "random times per verify case"},
    {"compare", Kind::Flag, "noise: sweep with optimal shift and without"},
    {"hamiltonian-out", Kind::Text, "also write the Hamiltonian matrix as CSV"},
};

const Key* find_key(std::string_view name) {
  for (const Key& k : kKeys)
    if (name == k.name) return &k;
  return nullptr;
}

constexpr const char* kCommands[] = {"fidelity", "pst", "table chains", "table theta", "noise", "verify"};

// ---- scalar parsing ----

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(const std::string& s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError(fmt::format("{}: '{}' is not a number", what, s));
  }
  return v;
}

std::uint64_t parse_count(const std::string& s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw UsageError(fmt::format("{}: '{}' is not a non-negative integer", what, s));
  }
  return v;
}

std::vector<double> parse_real_list(const std::string& s, std::string_view what) {
  std::vector<double> out;
  for (const auto& p : split(s, ',')) out.push_back(parse_real(p, what));
  return out;
}

std::vector<std::size_t> parse_count_list(const std::string& s, std::string_view what) {
  std::vector<std::size_t> out;
  for (const auto& p : split(s, ',')) out.push_back(parse_count(p, what));
  return out;
}

// ---- config assembly ----

json flag_value(const Key& key, const std::string& raw) {
  switch (key.kind) {
    case Kind::Count: return parse_count(raw, key.name);
    case Kind::Real: return parse_real(raw, key.name);
    case Kind::Size:
      if (raw.find("..") == std::string::npos) return parse_count(raw, key.name);
      return raw;
    default: return raw;
  }
}

void check_value(const Key& key, const json& v) {
  bool ok = false;
  switch (key.kind) {
    case Kind::Count: ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); break;
    case Kind::Real: ok = v.is_number(); break;
    case Kind::Text: ok = v.is_string(); break;
    case Kind::Size: ok = v.is_string() || v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); break;
    case Kind::TextList: ok = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_string(); }); break;
    case Kind::Flag: ok = v.is_boolean(); break;
  }
  if (!ok) throw UsageError(fmt::format("config key '{}' has the wrong type", key.name));
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(fmt::format("cannot open config '{}'", path));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(fmt::format("config '{}': {}", path, e.what()));
  }
  // a metadata sidecar carries the run config under "config"
  if (doc.is_object() && doc.contains("config")) doc = doc["config"];
  if (!doc.is_object()) throw UsageError(fmt::format("config '{}' must be a JSON object", path));
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() == "command") {
      if (!it->is_string()) throw UsageError("config key 'command' must be a string");
      continue;
    }
    const Key* key = find_key(it.key());
    if (!key) throw UsageError(fmt::format("unknown config key '{}'", it.key()));
    check_value(*key, *it);
  }
  return doc;
}

json defaults_for(const std::string& command) {
  json d = {{"threads", 0}, {"seed", 1}};
  if (command == "fidelity") {
    d.update({{"tmax", 10.0}, {"steps", 1000}});
  } else if (command == "pst") {
    d.update({{"tmax", 10.0}, {"pst-threshold", kCertificateThreshold}, {"grid-points", 0}});
  } else if (command == "table chains") {
    d.update({{"shifts", "10,20,30,40,50"}, {"sizes", "2,3,4,5"}, {"pst-threshold", kTablePstThreshold},
              {"grid-points", 0}});
  } else if (command == "table theta") {
    d.update({{"paths", "1,2,3,4"}, {"sizes", "3,4,5"}, {"shift-io", 10.0}, {"pst-threshold", kTablePstThreshold},
              {"grid-points", 0}});
  } else if (command == "noise") {
    d.update({{"mode", "vertex"}, {"sigma2", "0:2:21"}, {"samples", kDefaultSamples}, {"compare", false}});
  } else if (command == "verify") {
    d.update({{"families", "kn,knm"}, {"n", "4..12"}, {"random-times", 500}});
  }
  return d;
}

// ---- typed access to the effective config ----

class Config {
 public:
  explicit Config(json j) : j_(std::move(j)) {}
  const json& doc() const { return j_; }
  bool has(const char* key) const { return j_.contains(key); }

  std::optional<std::uint64_t> count(const char* key) const {
    if (!has(key)) return std::nullopt;
    return j_[key].get<std::uint64_t>();
  }
  std::optional<double> real(const char* key) const {
    if (!has(key)) return std::nullopt;
    return j_[key].get<double>();
  }
  std::optional<std::string> text(const char* key) const {
    if (!has(key)) return std::nullopt;
    if (j_[key].is_number()) return std::to_string(j_[key].get<std::uint64_t>());
    return j_[key].get<std::string>();
  }
  std::vector<std::string> list(const char* key) const {
    if (!has(key)) return {};
    return j_[key].get<std::vector<std::string>>();
  }
  bool flag(const char* key) const { return has(key) && j_[key].get<bool>(); }

  template <class T>
  T required(std::optional<T> v, const char* key) const {
    if (!v) throw UsageError(fmt::format("--{} is required", key));
    return *v;
  }

 private:
  json j_;
};

std::size_t single_size(const Config& c) {
  const std::string s = c.required(c.text("n"), "n");
  return parse_count(s, "n");
}

std::pair<Vertex, Vertex> parse_pair(const std::string& s, std::string_view what) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw UsageError(fmt::format("{} expects two values A,B, got '{}'", what, s));
  return {parse_count(parts[0], what), parse_count(parts[1], what)};
}

// ---- experiment target: graph, I/O pair and shifts ----

struct Target {
  std::string family;
  Graph graph = path(1);
  Vertex i = 0;
  Vertex j = 0;
  ShiftSpec shifts;
};

Target resolve_target(const Config& c) {
  Target t;
  t.family = c.required(c.text("graph"), "graph");
  const auto io = c.text("io");
  std::optional<std::pair<Vertex, Vertex>> pair;
  if (io) pair = parse_pair(*io, "io");

  try {
    if (t.family == "kn" || t.family == "path") {
      const std::size_t n = single_size(c);
      t.graph = t.family == "kn" ? complete(n) : path(n);
      if (!pair) pair = {0, n - 1};
    } else if (t.family == "knm") {
      const std::size_t n = single_size(c);
      if (!pair) pair = {0, n - 1};
      t.graph = complete_minus_edge(n, pair->first, pair->second);
    } else if (t.family == "theta") {
      const std::size_t n = single_size(c);
      const std::size_t l = c.required(c.count("l"), "l");
      t.graph = theta(l, n);
      if (!pair) pair = {0, theta_antipode(l, n)};
    } else if (t.family == "file") {
      t.graph = read_edge_list_file(c.required(c.text("edge-file"), "edge-file"));
      if (!pair) throw UsageError("--graph file needs --io");
    } else {
      throw UsageError(fmt::format("unknown graph family '{}'", t.family));
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  const std::size_t n = t.graph.vertex_count();
  std::tie(t.i, t.j) = *pair;
  if (t.i >= n || t.j >= n) throw UsageError(fmt::format("I/O pair {},{} outside a graph of {} vertices", t.i, t.j, n));
  if (const auto x = c.real("shift-io")) t.shifts = io_shift(t.i, t.j, *x);
  for (const auto& spec : c.list("shift")) {
    const auto parts = split(spec, ':');
    if (parts.size() != 2) throw UsageError(fmt::format("--shift expects V:X, got '{}'", spec));
    const Vertex v = parse_count(parts[0], "shift");
    if (v >= n) throw UsageError(fmt::format("--shift vertex {} outside a graph of {} vertices", v, n));
    t.shifts[v] = parse_real(parts[1], "shift");
  }
  return t;
}

Parallelism parallelism(const Config& c) { return {static_cast<int>(c.count("threads").value_or(0))}; }

// ---- commands ----

void run_fidelity(const Config& c, std::ostream& out) {
  const Target t = resolve_target(c);
  const double tmax = *c.real("tmax");
  const auto steps = *c.count("steps");
  if (!(tmax > 0.0) || steps < 1) throw UsageError("need tmax > 0 and steps >= 1");
  const auto h = build(t.graph, t.shifts);
  if (const auto path = c.text("hamiltonian-out")) {
    std::ofstream m(*path);
    if (!m) throw Error(ErrorCode::InvalidParameter, fmt::format("cannot write '{}'", *path));
    write_matrix_csv(m, h);
  }
  const auto grid = uniform_grid(tmax, steps);
  auto trace = fidelity_trace(eigendecompose(h), t.i, t.j, grid, parallelism(c));
  trace.graph = t.family;
  trace.shifts = t.shifts;
  write_trace_csv(out, trace);
}

void run_pst(const Config& c, std::ostream& out) {
  const Target t = resolve_target(c);
  TimeWindow w{0.0, *c.real("tmax")};
  if (const auto s = c.text("window")) {
    const auto parts = split(*s, ',');
    if (parts.size() != 2) throw UsageError(fmt::format("--window expects A,B, got '{}'", *s));
    w = {parse_real(parts[0], "window"), parse_real(parts[1], "window")};
  }
  const auto es = eigendecompose(build(t.graph, t.shifts));
  std::size_t points = *c.count("grid-points");
  if (points == 0) points = resolved_grid_points(es, w, kTableMinGridPoints);
  const auto r = maximize_fidelity(es, t.i, t.j, w, points, *c.real("pst-threshold"), parallelism(c));
  out << "tStar,fMax,isPst,threshold,gridResolution,gridPoints,windowBegin,windowEnd\n";
  out << format_real(r.t_star) << ',' << format_real(r.f_max) << ',' << (r.is_pst ? 1 : 0) << ','
      << format_real(r.threshold) << ',' << format_real(r.grid_resolution) << ',' << r.grid_points << ','
      << format_real(r.window.begin) << ',' << format_real(r.window.end) << '\n';
}

void run_table(const Config& c, bool chains, std::ostream& out) {
  const auto sizes = parse_count_list(*c.text("sizes"), "sizes");
  const double thr = *c.real("pst-threshold");
  const auto cap = c.real("window-cap");
  const std::size_t points = *c.count("grid-points");
  std::vector<TableCell> cells;
  if (chains) {
    const auto shifts = parse_real_list(*c.text("shifts"), "shifts");
    cells = chain_table(shifts, sizes, thr, cap, points, parallelism(c));
  } else {
    const auto paths = parse_count_list(*c.text("paths"), "paths");
    cells = theta_table(paths, sizes, *c.real("shift-io"), thr, cap, points, parallelism(c));
  }
  write_table_csv(out, cells);
}

std::vector<double> parse_sigma2(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw UsageError(fmt::format("--sigma2 expects start:stop:count, got '{}'", s));
  return linear_sigma2_grid(parse_real(parts[0], "sigma2"), parse_real(parts[1], "sigma2"),
                            parse_count(parts[2], "sigma2"));
}

void run_noise(const Config& c, std::ostream& out) {
  NoiseMode mode;
  try {
    mode = noise_mode_from_string(*c.text("mode"));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const auto grid = parse_sigma2(*c.text("sigma2"));
  const std::size_t samples = *c.count("samples");
  const std::uint64_t seed = *c.count("seed");
  const Target t = resolve_target(c);

  std::vector<SweepResult> sweeps;
  if (c.flag("compare")) {
    if (!t.shifts.empty()) throw UsageError("--compare picks its own shifts; drop --shift-io/--shift");
    auto [shifted, unshifted] =
        shifted_vs_unshifted_comparison(t.graph, t.i, t.j, mode, grid, samples, seed, kDefaultUnshiftedWindow,
                                        parallelism(c));
    sweeps = {std::move(shifted), std::move(unshifted)};
  } else {
    SweepRequest req;
    req.graph = &t.graph;
    req.shifts = t.shifts;
    req.i = t.i;
    req.j = t.j;
    req.mode = mode;
    req.sigma2_grid = grid;
    req.samples = samples;
    req.t_eval = c.required(c.real("t-eval"), "t-eval");
    req.seed = seed;
    sweeps.push_back(average_fidelity_sweep(req, parallelism(c)));
  }
  write_sweep_csv(out, sweeps);
}

void run_verify(const Config& c, std::ostream& out, std::ostream& err) {
  VerifyOptions opts;
  opts.families.clear();
  for (const auto& f : split(*c.text("families"), ',')) {
    try {
      opts.families.push_back(analytic::family_from_string(f));
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  const std::string range = *c.text("n");
  if (const auto dots = range.find(".."); dots != std::string::npos) {
    opts.n_min = parse_count(range.substr(0, dots), "n");
    opts.n_max = parse_count(range.substr(dots + 2), "n");
  } else {
    opts.n_min = opts.n_max = parse_count(range, "n");
  }
  if (opts.n_min > opts.n_max) throw UsageError(fmt::format("empty size range '{}'", range));
  opts.random_times = *c.count("random-times");
  opts.seed = *c.count("seed");
  const auto report = verify_analytic(opts, parallelism(c));
  write_discrepancy_csv(out, report.discrepancies);
  err << fmt::format("{} checks, {} discrepancies\n", report.checks, report.discrepancies.size());
}

void dispatch(const Config& c, std::ostream& out, std::ostream& err) {
  const std::string command = c.doc()["command"].get<std::string>();
  if (command == "fidelity") return run_fidelity(c, out);
  if (command == "pst") return run_pst(c, out);
  if (command == "table chains") return run_table(c, true, out);
  if (command == "table theta") return run_table(c, false, out);
  if (command == "noise") return run_noise(c, out);
  if (command == "verify") return run_verify(c, out, err);
  throw UsageError(fmt::format("unknown command '{}'", command));
}

// ---- argv ----

struct FlagStore {
  std::map<std::string, std::string> scalar;
  std::map<std::string, std::vector<std::string>> repeated;
  std::map<std::string, bool> flags;
  std::string config;
};

void add_flags(CLI::App* app, FlagStore& store) {
  app->add_option("--config", store.config, "JSON config (or a previous run's sidecar); flags override it");
  for (const Key& k : kKeys) {
    const std::string name = std::string("--") + k.name;
    if (k.kind == Kind::TextList) {
      app->add_option(name, store.repeated[k.name], k.help);
    } else if (k.kind == Kind::Flag) {
      app->add_flag(name, store.flags[k.name], k.help);
    } else {
      app->add_option(name, store.scalar[k.name], k.help);
    }
  }
}

json given_flags(const CLI::App* leaf, const FlagStore& store) {
  json j = json::object();
  for (const Key& k : kKeys) {
    const std::string name = std::string("--") + k.name;
    if (leaf->get_option(name)->count() == 0) continue;
    if (k.kind == Kind::TextList) {
      j[k.name] = store.repeated.at(k.name);
    } else if (k.kind == Kind::Flag) {
      j[k.name] = store.flags.at(k.name);
    } else {
      j[k.name] = flag_value(k, store.scalar.at(k.name));
    }
  }
  return j;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-excitation state transfer on qubit networks under the XY model", "qst"};
  app.set_version_flag("--version", QST_VERSION);
  app.require_subcommand(0, 1);

  // one store per leaf so flags of different subcommands never alias
  std::map<std::string, FlagStore> stores;
  std::map<std::string, CLI::App*> leaves;
  FlagStore root;
  app.add_option("--config", root.config, "run the command stored in a JSON config or sidecar");

  for (const char* name : {"fidelity", "pst", "noise", "verify"}) {
    leaves[name] = app.add_subcommand(name);
  }
  leaves["fidelity"]->description("fidelity trace f(i,j;t) on a uniform time grid");
  leaves["pst"]->description("best transfer time in a window");
  leaves["noise"]->description("mean fidelity under Gaussian disorder");
  leaves["verify"]->description("check the complete-graph closed forms against the numeric propagator");
  CLI::App* table = app.add_subcommand("table", "transfer-time tables");
  table->require_subcommand(1);
  leaves["table chains"] = table->add_subcommand("chains", "shifted chains");
  leaves["table theta"] = table->add_subcommand("theta", "multi-path graphs between antipodal vertices");
  for (auto& [name, leaf] : leaves) add_flags(leaf, stores[name]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::string command;
  CLI::App* leaf = nullptr;
  for (auto& [name, l] : leaves) {
    if (l->parsed()) {
      command = name;
      leaf = l;
    }
  }

  json effective;
  try {
    const std::string config_path = leaf && !stores[command].config.empty() ? stores[command].config : root.config;
    json file = json::object();
    if (!config_path.empty()) file = load_config_file(config_path);
    if (command.empty()) {
      if (!file.contains("command")) throw UsageError("no command given");
      command = file["command"].get<std::string>();
      if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands)) {
        throw UsageError(fmt::format("unknown command '{}'", command));
      }
    }
    effective = defaults_for(command);
    file.erase("command");
    effective.update(file);
    if (leaf) effective.update(given_flags(leaf, stores[command]));
    effective["command"] = command;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  const std::string started_at = utc_now();
  const Config config(effective);
  const auto out_path = config.text("out");
  try {
    std::ostringstream csv;
    dispatch(config, csv, err);
    if (!out_path) {
      out << csv.str();
      return kExitOk;
    }
    std::ofstream file(*out_path, std::ios::binary);
    if (!file) throw Error(ErrorCode::InvalidParameter, fmt::format("cannot write '{}'", *out_path));
    file << csv.str();

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const json sidecar = {{"config", effective},
                          {"tool", "qst"},
                          {"version", QST_VERSION},
                          {"started_at", started_at},
                          {"wall_clock_seconds", seconds}};
    std::ofstream meta(*out_path + ".json");
    if (!meta) throw Error(ErrorCode::InvalidParameter, fmt::format("cannot write '{}.json'", *out_path));
    meta << sidecar.dump(2) << '\n';
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace qst::cli
