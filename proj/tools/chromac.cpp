// chromac: check, build, run and benchmark color programs.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chromac/bench/bench.hpp"
#include "chromac/error.hpp"
#include "chromac/ir/serialize.hpp"
#include "chromac/lang/type_check.hpp"
#include "chromac/lower/lower.hpp"
#include "chromac/opt/optimize.hpp"
#include "chromac/runtime/eval.hpp"
#include "chromac/runtime/io.hpp"

namespace fs = std::filesystem;
using namespace chromac;

namespace {

constexpr int kOk = 0;
constexpr int kUserError = 1;
constexpr int kInternalError = 2;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A compile error that has already been printed.
struct Reported {};

lang::TypedProgram check_file(const std::string& path) {
  const std::string src = read_file(path);
  try {
    return lang::check_source(src);
  } catch (const lang::CompileError& e) {
    std::cerr << e.format(path) << "\n";
    throw Reported{};
  }
}

bool is_png(const fs::path& p) {
  std::string ext = p.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".png";
}

std::pair<std::string, std::string> split_binding(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
    throw InvalidInput("expected NAME=PATH, got '" + s + "'");
  }
  return {s.substr(0, eq), s.substr(eq + 1)};
}

struct BuildOptions {
  std::string file;
  std::string out;
  bool no_opt = false;
  std::size_t iters = 30;
  std::size_t max_nodes = 50000;
};

int cmd_check(const std::string& file) {
  const auto tp = check_file(file);
  std::cout << file << ": ok (" << tp.program.inputs.size() << " inputs, " << tp.program.statements.size()
            << " statements)\n";
  for (const auto& o : tp.program.outputs) std::cout << "  output " << o.name << " : " << tp.bindings.at(o.name).str() << "\n";
  return kOk;
}

int cmd_build(const BuildOptions& o) {
  ir::Graph g;
  const fs::path in(o.file);
  if (in.extension() == ".irj") {
    g = ir::load_irj(in);
  } else {
    g = lower::lower(check_file(o.file));
  }
  const std::size_t nodes_before = ir::prune(g).size();
  const std::uint64_t cost_before = opt::graph_cost(g);
  std::vector<std::string> warnings;
  if (o.no_opt) {
    auto folded = opt::constant_fold(g);
    g = std::move(folded.graph);
    warnings = std::move(folded.warnings);
  } else {
    opt::OptimizeReport rep;
    g = opt::optimize(g, {o.iters, o.max_nodes}, &rep);
    warnings = std::move(rep.warnings);
    std::cout << "saturation: " << rep.saturation.iterations << " iterations, " << rep.saturation.enodes
              << " e-nodes, " << opt::stop_reason_name(rep.saturation.stop) << "\n";
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  const fs::path out = o.out.empty() ? fs::path(o.file).replace_extension(".irj") : fs::path(o.out);
  ir::save_irj(out, g);
  std::cout << "nodes: " << nodes_before << " -> " << g.size() << "\n"
            << "cost:  " << cost_before << " -> " << opt::graph_cost(g) << "\n"
            << "wrote " << out.string() << "\n";
  return kOk;
}

int cmd_run(const std::string& prog, const std::vector<std::string>& ins, const std::vector<std::string>& outs) {
  const ir::Graph g = ir::load_irj(prog);
  runtime::TensorMap inputs;
  for (const auto& b : ins) {
    auto [name, path] = split_binding(b);
    if (!g.find_input(name)) throw InvalidInput("program has no input named '" + name + "'");
    inputs[name] = is_png(path) ? runtime::load_png(path) : runtime::load_tensor(path);
  }
  for (ir::NodeId id : g.inputs()) {
    if (!inputs.count(g.node(id).name)) throw InvalidInput("input '" + g.node(id).name + "' is not bound (use --input " + g.node(id).name + "=PATH)");
  }
  std::map<std::string, std::string> targets;
  for (const auto& b : outs) {
    auto [name, path] = split_binding(b);
    targets[name] = path;
  }
  for (const auto& [name, path] : targets) {
    bool found = false;
    for (const auto& [o, id] : g.outputs()) found = found || o == name;
    if (!found) throw InvalidInput("program has no output named '" + name + "'");
  }
  const auto results = runtime::evaluate(g, inputs);
  for (const auto& [name, t] : results) {
    auto it = targets.find(name);
    if (it == targets.end()) {
      std::cout << name << ": shape " << t.shape().str() << " (not written)\n";
      continue;
    }
    if (is_png(it->second)) {
      runtime::save_png(it->second, t);
    } else {
      runtime::save_tensor(it->second, t);
    }
    std::cout << name << ": wrote " << it->second << "\n";
  }
  return kOk;
}

struct BenchOptions {
  std::int64_t size = 256;
  std::int64_t small_size = 64;
  std::string jsonl = "bench.jsonl";
  std::vector<std::string> only;
  std::size_t iters = 30;
  std::size_t max_nodes = 50000;
  std::string write_programs;
};

int cmd_bench(const BenchOptions& o) {
  if (!o.write_programs.empty()) {
    fs::create_directories(o.write_programs);
    for (const auto& name : bench::benchmark_names()) {
      const fs::path p = fs::path(o.write_programs) / (name + ".csl");
      std::ofstream(p) << bench::benchmark_source(name, o.small_size, o.small_size);
      std::cout << "wrote " << p.string() << "\n";
    }
    return kOk;
  }
  const std::uint64_t seed = bench::seed_from_env();
  std::vector<bench::BenchReport> rows;
  for (const auto& name : bench::benchmark_names()) {
    if (!o.only.empty() && std::find(o.only.begin(), o.only.end(), name) == o.only.end()) continue;
    const std::int64_t s = (name == "Mixing" || name == "LAB2HSV") ? o.small_size : o.size;
    rows.push_back(bench::run_benchmark(name, s, s, {o.iters, o.max_nodes}, seed));
  }
  std::cout << bench::format_table(rows);
  std::ofstream j(o.jsonl);
  if (!j) throw IoError("cannot write " + o.jsonl);
  bool failed = false;
  for (const auto& r : rows) {
    j << bench::to_json_line(r) << "\n";
    failed = failed || r.error.has_value();
  }
  std::cout << "report: " << o.jsonl << "\n";
  return failed ? kUserError : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chromac: compiler and runtime for physically typed color programs"};
  app.require_subcommand(1);

  std::string check_path;
  auto* check = app.add_subcommand("check", "parse and type-check a .csl program");
  check->add_option("program", check_path, "program file")->required();

  BuildOptions build_opts;
  auto* build = app.add_subcommand("build", "compile a .csl program (or re-optimize an .irj) to .irj");
  build->add_option("program", build_opts.file, "program file")->required();
  build->add_option("-o,--output", build_opts.out, "output .irj path");
  build->add_flag("--no-opt", build_opts.no_opt, "skip equality saturation");
  build->add_option("--iters", build_opts.iters, "saturation iteration limit")->check(CLI::PositiveNumber);
  build->add_option("--max-nodes", build_opts.max_nodes, "e-node limit")->check(CLI::PositiveNumber);

  std::string run_path;
  std::vector<std::string> run_inputs;
  std::vector<std::string> run_outputs;
  auto* run = app.add_subcommand("run", "evaluate a compiled .irj program");
  run->add_option("program", run_path, "compiled program")->required();
  run->add_option("--input", run_inputs, "NAME=PATH binding (.png or .cten)");
  run->add_option("--output", run_outputs, "NAME=PATH destination (.png or .cten)");

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "build and run the six benchmark programs");
  bench_cmd->add_option("--size", bench_opts.size, "image side for most benchmarks")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--small-size", bench_opts.small_size, "image side for Mixing and LAB2HSV")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--jsonl", bench_opts.jsonl, "JSON-lines report path");
  bench_cmd->add_option("--only", bench_opts.only, "run only these benchmarks");
  bench_cmd->add_option("--iters", bench_opts.iters, "saturation iteration limit")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--max-nodes", bench_opts.max_nodes, "e-node limit")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--write-programs", bench_opts.write_programs,
                        "write the benchmark sources (at --small-size) to a directory and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUserError;
  }

  try {
    if (*check) return cmd_check(check_path);
    if (*build) return cmd_build(build_opts);
    if (*run) return cmd_run(run_path, run_inputs, run_outputs);
    if (*bench_cmd) return cmd_bench(bench_opts);
  } catch (const Reported&) {
    return kUserError;
  } catch (const InternalError& e) {
    std::cerr << "chromac: " << e.what() << "\n";
    return kInternalError;
  } catch (const Error& e) {
    std::cerr << "chromac: error: " << e.what() << "\n";
    return kUserError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "chromac: error: " << e.what() << "\n";
    return kUserError;
  } catch (const std::exception& e) {
    std::cerr << "chromac: internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}
