#pragma once

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vegraph/bench.hpp"
#include "vegraph/encoders.hpp"
#include "vegraph/io.hpp"
#include "vegraph/minisolver.hpp"
#include "vegraph/oracle.hpp"

// vegraph command-line front end. Exit codes: 10 SAT, 20 UNSAT, 0 success or
// unknown, 1 error, 2 usage error, 3 verification failure.

namespace vegraph::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_verify_failed = 3;
inline constexpr int exit_sat = 10;
inline constexpr int exit_unsat = 20;

class cli_error : public std::runtime_error {
 public:
  cli_error(const std::string& what, int code = exit_error)
      : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

/// Fields of the stats document. Encoding and solving fields stay null when
/// the command does not run that stage.
struct RunStats {
  int nodes = 0;
  std::size_t arcs = 0;
  std::vector<std::string> constraints;
  std::string ordering;
  GraphProfile profile;
  std::optional<int> aux_vars;
  std::optional<std::size_t> added_clauses;
  std::optional<double> encode_ms;
  std::optional<std::string> solver_status;
  std::optional<double> solve_ms;
};

inline nlohmann::json to_json(const RunStats& s) {
  auto opt = [](const auto& v) -> nlohmann::json {
    if (v) return *v;
    return nullptr;
  };
  return {{"nodes", s.nodes},
          {"arcs", s.arcs},
          {"constraints", s.constraints},
          {"ordering", s.ordering},
          {"width", s.profile.width},
          {"estar", s.profile.estar},
          {"delta", s.profile.delta},
          {"aux_vars", opt(s.aux_vars)},
          {"added_clauses", opt(s.added_clauses)},
          {"encode_ms", opt(s.encode_ms)},
          {"solver_status", opt(s.solver_status)},
          {"solve_ms", opt(s.solve_ms)}};
}

inline RunStats graph_stats(const GraphInstance& inst, const OrderingSpec& ordering) {
  RunStats s;
  s.nodes = inst.graph.node_count();
  s.arcs = inst.graph.arc_count();
  for (const Constraint& c : inst.constraints) s.constraints.push_back(describe(c));
  s.ordering = to_string(ordering);
  s.profile = elimination_profile(inst, ordering);
  return s;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

inline GraphInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli_error("cannot open '" + path + "'");
  try {
    auto inst = parse_gcnf(in);
    inst.validate();
    return inst;
  } catch (const format_error& e) {
    throw cli_error(path + ": " + e.what());
  } catch (const graph_error& e) {
    throw cli_error(path + ": " + e.what());
  }
}

/// Runs fn on the named file, or on `fallback` when the path is empty or "-".
template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream out(path);
  if (!out) throw cli_error("cannot write '" + path + "'");
  fn(out);
  if (!out) throw cli_error("write to '" + path + "' failed");
}

inline OrderingSpec parse_order_flag(const std::string& flag) {
  if (flag == "mindegree") return OrderingSpec::min_degree();
  if (flag == "minfill") return OrderingSpec::min_fill();
  constexpr std::string_view given = "given:";
  if (flag.starts_with(given)) {
    std::string path = flag.substr(given.size());
    std::ifstream in(path);
    if (!in) throw cli_error("cannot open ordering file '" + path + "'");
    try {
      return OrderingSpec::from(parse_ordering(in));
    } catch (const format_error& e) {
      throw cli_error(path + ": " + e.what());
    }
  }
  throw cli_error("unknown ordering '" + flag + "'", exit_usage);
}

struct Options {
  std::string in;
  std::string out;
  std::string map;
  std::string stats;
  std::string model;
  std::string method = "ve";
  std::string order = "mindegree";
  std::string solver = "internal";
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> conflict_budget;
  std::vector<std::string> gen_args;
};

struct Encoded {
  GraphInstance inst;
  EncodedFormula formula;
  RunStats stats;
};

inline Encoded encode_file(const Options& o) {
  Encoded e{read_instance(o.in), {}, {}};
  auto method = parse_method(o.method);
  if (!method) throw cli_error("unknown method '" + o.method + "'", exit_usage);
  OrderingSpec ordering = parse_order_flag(o.order);
  auto start = Clock::now();
  try {
    e.formula = encode_instance(e.inst, {{*method}, ordering});
  } catch (const encode_error& err) {
    throw cli_error(err.what());
  } catch (const graph_error& err) {
    throw cli_error(err.what());
  }
  const double encode_ms = ms_since(start);
  e.stats = graph_stats(e.inst, ordering);
  e.stats.aux_vars = e.formula.stats.aux_vars;
  e.stats.added_clauses = e.formula.stats.clauses;
  e.stats.encode_ms = encode_ms;
  return e;
}

inline void write_stats(const Options& o, const RunStats& s, std::ostream& fallback) {
  if (o.stats.empty()) return;
  with_output(o.stats, fallback, [&](std::ostream& out) { out << to_json(s).dump(2) << '\n'; });
}

inline void write_map(const Options& o, const EncodedFormula& f, std::ostream& fallback) {
  if (o.map.empty()) return;
  with_output(o.map, fallback,
              [&](std::ostream& out) { out << aux_to_json(f.aux).dump(2) << '\n'; });
}

/// Temporary file removed on destruction.
class TempFile {
 public:
  explicit TempFile(const std::string& suffix) {
    auto pattern = (std::filesystem::temp_directory_path() / ("vegraph-XXXXXX" + suffix)).string();
    std::vector<char> buf(pattern.begin(), pattern.end());
    buf.push_back('\0');
    int fd = mkstemps(buf.data(), static_cast<int>(suffix.size()));
    if (fd < 0) throw cli_error("cannot create a temporary file");
    ::close(fd);
    path_ = buf.data();
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

/// Writes the CNF to a temporary file, runs the command template with {cnf}
/// replaced by its path, and reads the `s`/`v` lines of its output.
inline SolveResult run_external(const Cnf& cnf, const std::string& command_template) {
  const std::string placeholder = "{cnf}";
  auto at = command_template.find(placeholder);
  if (at == std::string::npos)
    throw cli_error("solver template must contain {cnf}: '" + command_template + "'",
                    exit_usage);
  TempFile file(".cnf");
  {
    std::ofstream out(file.path());
    write_dimacs(out, cnf);
    if (!out) throw cli_error("cannot write '" + file.path() + "'");
  }
  std::string command = command_template;
  while (at != std::string::npos) {
    command.replace(at, placeholder.size(), shell_quote(file.path()));
    at = command.find(placeholder, at);
  }
  std::fflush(nullptr);
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) throw cli_error("cannot start solver: " + command);
  std::string output;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) output.append(buf, n);
  const int raw = ::pclose(pipe);
  const int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  if (code == 127) throw cli_error("solver command not found: " + command);
  if (code != 0 && code != exit_sat && code != exit_unsat)
    throw cli_error("solver exited with status " + std::to_string(code) + ": " + command);

  std::optional<SolveStatus> status;
  std::string values;
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    auto toks = vegraph::detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "s" && toks.size() >= 2) {
      if (toks[1] == "SATISFIABLE") status = SolveStatus::sat;
      else if (toks[1] == "UNSATISFIABLE") status = SolveStatus::unsat;
      else if (toks[1] == "UNKNOWN") status = SolveStatus::aborted;
      else throw cli_error("unrecognised solver status line: " + line);
    } else if (toks[0] == "v") {
      values += line + '\n';
    }
  }
  if (!status) throw cli_error("solver output has no 's' line: " + command);
  SolveResult result;
  result.status = *status;
  if (result.status == SolveStatus::sat) {
    try {
      result.model = parse_model(values, cnf.var_count);
    } catch (const format_error& e) {
      throw cli_error(std::string("unparseable solver model: ") + e.what());
    }
  }
  return result;
}

inline void print_report(std::ostream& out, const VerificationReport& r) {
  if (r.base_satisfied)
    out << "base: pass\n";
  else
    out << "base: fail (clause " << r.falsified_clause + 1 << " falsified)\n";
  for (const auto& v : r.verdicts) {
    out << describe(v.constraint) << ": " << (v.pass ? "pass" : "fail");
    if (!v.pass) {
      out << (v.constraint.kind == ConstraintKind::acyclic ? " (cycle" : " (node");
      for (Node n : v.witness) out << ' ' << n;
      out << ')';
    }
    out << '\n';
  }
}

inline void write_arcs(std::ostream& out, const std::vector<Arc>& arcs) {
  for (const Arc& a : arcs) out << "a " << a.from << ' ' << a.to << '\n';
}

// ---------------------------------------------------------------------------
// Commands

inline int cmd_encode(const Options& o, std::ostream& out, std::ostream&) {
  Encoded e = encode_file(o);
  with_output(o.out, out, [&](std::ostream& s) {
    write_dimacs(s, e.formula.conjoin(e.inst.base));
  });
  write_map(o, e.formula, out);
  write_stats(o, e.stats, out);
  return exit_ok;
}

inline int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  Encoded e = encode_file(o);
  write_map(o, e.formula, out);
  const Cnf cnf = e.formula.conjoin(e.inst.base);
  auto start = Clock::now();
  SolveResult result;
  if (o.solver == "internal") {
    result = solve(cnf, {o.seed, o.conflict_budget});
  } else if (o.solver.starts_with("cmd:")) {
    result = run_external(cnf, o.solver.substr(4));
  } else {
    throw cli_error("unknown solver '" + o.solver + "'", exit_usage);
  }
  e.stats.solve_ms = ms_since(start);
  e.stats.solver_status = std::string(to_string(result.status));
  write_stats(o, e.stats, out);

  out << to_string(result.status) << '\n';
  if (result.status == SolveStatus::unsat) return exit_unsat;
  if (result.status == SolveStatus::aborted) return exit_ok;

  if (long bad = result.model.first_falsified(cnf); bad >= 0) {
    err << "solver model falsifies clause " << bad + 1 << " of the encoded formula\n";
    return exit_verify_failed;
  }
  auto report = verify(e.inst, result.model.resized(e.inst.base.var_count));
  if (!report.all_pass()) {
    err << "solver model fails verification:\n";
    print_report(err, report);
    return exit_verify_failed;
  }
  with_output(o.out, out, [&](std::ostream& s) { write_arcs(s, report.decoded_arcs); });
  return exit_sat;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  GraphInstance inst = read_instance(o.in);
  std::ifstream in(o.model);
  if (!in) throw cli_error("cannot open '" + o.model + "'");
  Model m;
  try {
    m = parse_model(in, inst.base.var_count, /*allow_wider=*/true);
  } catch (const format_error& e) {
    throw cli_error(o.model + ": " + e.what());
  }
  auto report = verify(inst, m);
  print_report(out, report);
  return report.all_pass() ? exit_ok : exit_verify_failed;
}

inline int cmd_stats(const Options& o, std::ostream& out, std::ostream&) {
  GraphInstance inst = read_instance(o.in);
  RunStats s;
  try {
    s = graph_stats(inst, parse_order_flag(o.order));
  } catch (const graph_error& e) {
    throw cli_error(e.what());
  }
  out << to_json(s).dump(2) << '\n';
  return exit_ok;
}

inline int parse_count(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used == text.size()) return static_cast<int>(v);
  } catch (const std::exception&) {
  }
  throw cli_error(std::string("expected an integer for ") + what + ", got '" + text + "'",
                  exit_usage);
}

inline ConstraintKind parse_kind(const std::string& text) {
  for (auto k : {ConstraintKind::acyclic, ConstraintKind::reach, ConstraintKind::noreach,
                 ConstraintKind::ereach})
    if (text == to_string(k)) return k;
  throw cli_error("unknown constraint kind '" + text + "'", exit_usage);
}

inline int cmd_gen(const std::string& kind, const Options& o, std::ostream& out) {
  const auto& a = o.gen_args;
  GraphInstance inst;
  try {
    if (kind == "grid-hc") {
      if (a.size() != 2) throw cli_error("usage: gen grid-hc <rows> <cols>", exit_usage);
      inst = gen_grid_hc({parse_count(a[0], "rows"), parse_count(a[1], "cols")});
    } else {
      if (a.size() != 4) throw cli_error("usage: gen random <n> <m> <kind> <seed>", exit_usage);
      std::uint64_t seed = static_cast<std::uint64_t>(parse_count(a[3], "seed"));
      inst = gen_random(parse_count(a[0], "n"), parse_count(a[1], "m"), parse_kind(a[2]), seed);
    }
  } catch (const std::invalid_argument& e) {
    throw cli_error(e.what(), exit_usage);
  }
  with_output(o.out, out, [&](std::ostream& s) { write_gcnf(s, inst); });
  return exit_ok;
}

}  // namespace detail

/// Entry point; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Graph-constraint SAT encodings based on vertex elimination", "vegraph"};
  app.require_subcommand(1);

  auto input = [&](CLI::App* cmd) {
    cmd->add_option("--in", o.in, "GCNF instance")->required();
  };
  auto encoding = [&](CLI::App* cmd) {
    cmd->add_option("--method", o.method, "ve | tc | tr | explicit | via-acyclic:{ve|tc|tr}")
        ->capture_default_str();
    cmd->add_option("--order", o.order, "mindegree | minfill | given:<file>")
        ->capture_default_str();
    cmd->add_option("--map", o.map, "write the auxiliary variable map (JSON)");
    cmd->add_option("--stats", o.stats, "write the stats document (JSON)");
  };

  auto* encode = app.add_subcommand("encode", "encode constraints into DIMACS CNF");
  input(encode);
  encoding(encode);
  encode->add_option("--out", o.out, "DIMACS output (default stdout)");

  auto* solve_cmd = app.add_subcommand("solve", "encode, solve and verify");
  input(solve_cmd);
  encoding(solve_cmd);
  solve_cmd->add_option("--out", o.out, "decoded arc list (default stdout)");
  solve_cmd->add_option("--solver", o.solver, "internal | cmd:<template with {cnf}>")
      ->capture_default_str();
  solve_cmd->add_option("--seed", o.seed, "internal solver seed")->capture_default_str();
  solve_cmd->add_option("--conflict-budget", o.conflict_budget,
                        "give up after this many conflicts");

  auto* verify_cmd = app.add_subcommand("verify", "check a model against an instance");
  input(verify_cmd);
  verify_cmd->add_option("--model", o.model, "model (solver 'v' lines or literals)")->required();

  auto* stats = app.add_subcommand("stats", "elimination statistics without encoding");
  input(stats);
  stats->add_option("--order", o.order, "mindegree | minfill | given:<file>")
      ->capture_default_str();

  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  auto* grid = gen->add_subcommand("grid-hc", "Hamiltonian cycle on a grid: <rows> <cols>");
  auto* random = gen->add_subcommand("random", "random instance: <n> <m> <kind> <seed>");
  for (auto* g : {grid, random}) {
    g->add_option("params", o.gen_args, "parameters")->required();
    g->add_option("--out", o.out, "GCNF output (default stdout)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "vegraph: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    if (*encode) return detail::cmd_encode(o, out, err);
    if (*solve_cmd) return detail::cmd_solve(o, out, err);
    if (*verify_cmd) return detail::cmd_verify(o, out, err);
    if (*stats) return detail::cmd_stats(o, out, err);
    if (*grid) return detail::cmd_gen("grid-hc", o, out);
    return detail::cmd_gen("random", o, out);
  } catch (const cli_error& e) {
    err << "vegraph: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    err << "vegraph: " << e.what() << '\n';
    return exit_error;
  }
}

}  // namespace vegraph::cli
