#include "chromac/bench/bench.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "chromac/color/colormath.hpp"
#include "chromac/error.hpp"
#include "chromac/lower/lower.hpp"

namespace chromac::bench {

namespace {

using lang::PhysicalType;

std::string dims(std::int64_t h, std::int64_t w) { return "[" + std::to_string(h) + "," + std::to_string(w) + "]"; }

std::string daylight_literal() {
  std::ostringstream s;
  s.precision(10);
  s << "Light([";
  const auto& spd = color::daylight_spd();
  for (std::size_t i = 0; i < color::kBands; ++i) {
    if (i != 0) s << (i % 8 == 0 ? ",\n  " : ", ");
    s << spd[i];
  }
  s << "])";
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

const std::vector<std::string>& benchmark_names() {
  static const std::vector<std::string> names = {"SpaceConv", "ColorBlindness", "Adaptation",
                                                 "Interpolation", "Mixing", "LAB2HSV"};
  return names;
}

std::string benchmark_source(std::string_view name, std::int64_t h, std::int64_t w) {
  const std::string d = dims(h, w);
  if (name == "SpaceConv") {
    return "# Convert an sRGB image to opRGB.\n"
           "input image : sRGB" + d + "\n"
           "converted = opRGB(image)\n"
           "output converted\n";
  }
  if (name == "ColorBlindness") {
    return "# Simulate color vision deficiency with a matrix in LMS space.\n"
           "input image : sRGB" + d + "\n"
           "input deficiency : Matrix[3,3]\n"
           "lms = LMS(image)\n"
           "simulated = matmul(lms, deficiency)\n"
           "result = sRGB(simulated)\n"
           "output result\n";
  }
  if (name == "Adaptation") {
    return "# von Kries adaptation from one illuminant to another.\n"
           "input image : sRGB" + d + "\n"
           "input source : Light[1]\n"
           "input target : Light[1]\n"
           "lms = LMS(image)\n"
           "gain = Matrix(LMS(target)) / Matrix(LMS(source))\n"
           "adapted = lms * gain\n"
           "result = sRGB(adapted)\n"
           "output result\n";
  }
  if (name == "Interpolation") {
    return "# Blend two images half and half.\n"
           "input image1 : sRGB" + d + "\n"
           "input image2 : sRGB" + d + "\n"
           "mixed = image1 * 0.5 + image2 * 0.5\n"
           "output mixed\n";
  }
  if (name == "Mixing") {
    return "# Mix two pigments and view the result under daylight.\n"
           "input paint1 : Pigment" + d + "\n"
           "input paint2 : Pigment" + d + "\n"
           "daylight = " + daylight_literal() + "\n"
           "paint = mix(0.3, paint1, 0.7, paint2)\n"
           "reflectance = Reflectance(paint)\n"
           "lit = daylight * reflectance\n"
           "result = sRGB(lit)\n"
           "output result\n";
  }
  if (name == "LAB2HSV") {
    return "# Convert a LAB image to HSV.\n"
           "input image : LAB" + d + "\n"
           "converted = HSV(image)\n"
           "output converted\n";
  }
  throw InvalidInput("unknown benchmark '" + std::string(name) + "'");
}

Tensor random_value(const lang::ShapedType& t, std::mt19937_64& rng) {
  Tensor out(t.erased());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = out.size();
  switch (t.phys) {
    case PhysicalType::sRGB:
    case PhysicalType::opRGB:
      for (std::size_t i = 0; i < n; ++i) out[i] = 255.0 * unit(rng);
      break;
    case PhysicalType::LAB:
      for (std::size_t i = 0; i < n; i += 3) {
        const color::Triple rgb{255.0 * unit(rng), 255.0 * unit(rng), 255.0 * unit(rng)};
        const auto lab = color::xyz_to_lab(color::srgb_to_xyz(rgb), color::constants().whitepoint);
        for (std::size_t c = 0; c < 3; ++c) out[i + c] = lab[c];
      }
      break;
    case PhysicalType::HSV:
      for (std::size_t i = 0; i < n; i += 3) {
        out[i] = 360.0 * unit(rng);
        out[i + 1] = unit(rng);
        out[i + 2] = unit(rng);
      }
      break;
    case PhysicalType::Scattering:
      for (std::size_t i = 0; i < n; ++i) out[i] = 0.05 + 0.95 * unit(rng);
      break;
    case PhysicalType::Pigment:
      for (std::size_t i = 0; i < n; ++i) {
        const bool scattering = (i % (2 * color::kBands)) < color::kBands;
        out[i] = scattering ? 0.05 + 0.95 * unit(rng) : unit(rng);
      }
      break;
    case PhysicalType::Matrix:
      for (std::size_t i = 0; i < n; ++i) out[i] = 1.0 - unit(rng);  // (0, 1]
      break;
    case PhysicalType::Chromaticity:
      for (std::size_t i = 0; i < n; i += 2) {
        const double x = unit(rng);
        out[i] = x;
        out[i + 1] = (1.0 - x) * unit(rng);
      }
      break;
    default:
      for (std::size_t i = 0; i < n; ++i) out[i] = unit(rng);
      break;
  }
  return out;
}

runtime::TensorMap random_inputs(const lang::TypedProgram& tp, std::mt19937_64& rng) {
  runtime::TensorMap m;
  for (const auto& in : tp.program.inputs) m.emplace(in.name, random_value(in.type, rng));
  return m;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("CHROMAC_SEED"); s != nullptr && *s != '\0') {
    return std::strtoull(s, nullptr, 10);
  }
  return fallback;
}

BenchReport run_benchmark(std::string_view name, std::int64_t height, std::int64_t width,
                          const opt::SaturationLimits& limits, std::uint64_t seed) {
  BenchReport r;
  r.program = std::string(name);
  r.height = height;
  r.width = width;
  try {
    auto t0 = std::chrono::steady_clock::now();
    const auto tp = lang::check_source(benchmark_source(name, height, width));
    const ir::Graph plain = opt::constant_fold(lower::lower(tp)).graph;
    r.compile_seconds = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const ir::Graph fast = opt::optimize(plain, limits);
    r.optimize_seconds = seconds_since(t0);
    r.nodes_unoptimized = plain.size();
    r.nodes_optimized = fast.size();
    r.cost_unoptimized = opt::graph_cost(plain);
    r.cost_optimized = opt::graph_cost(fast);
    std::mt19937_64 rng(seed);
    const auto inputs = random_inputs(tp, rng);
    t0 = std::chrono::steady_clock::now();
    const auto a = runtime::evaluate(plain, inputs);
    r.run_unoptimized_seconds = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const auto b = runtime::evaluate(fast, inputs);
    r.run_optimized_seconds = seconds_since(t0);
    for (const auto& [out, t] : a) r.max_relative_deviation = std::max(r.max_relative_deviation, max_relative_error(b.at(out), t));
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::string format_table(const std::vector<BenchReport>& rows) {
  std::ostringstream s;
  char line[512];
  std::snprintf(line, sizeof line, "%-15s %9s %6s %6s %12s %12s %9s %9s %9s %9s %10s\n", "program", "size", "nodes",
                "opt", "cost", "opt cost", "compile", "optimize", "run", "run opt", "deviation");
  s << line;
  for (const auto& r : rows) {
    const std::string size = std::to_string(r.height) + "x" + std::to_string(r.width);
    if (r.error) {
      s << r.program << " " << size << " FAILED: " << *r.error << "\n";
      continue;
    }
    std::snprintf(line, sizeof line, "%-15s %9s %6zu %6zu %12llu %12llu %8.3fs %8.3fs %8.3fs %8.3fs %10.2e\n",
                  r.program.c_str(), size.c_str(), r.nodes_unoptimized, r.nodes_optimized,
                  static_cast<unsigned long long>(r.cost_unoptimized), static_cast<unsigned long long>(r.cost_optimized),
                  r.compile_seconds, r.optimize_seconds, r.run_unoptimized_seconds, r.run_optimized_seconds,
                  r.max_relative_deviation);
    s << line;
  }
  return s.str();
}

std::string to_json_line(const BenchReport& r) {
  nlohmann::ordered_json j;
  j["program"] = r.program;
  j["height"] = r.height;
  j["width"] = r.width;
  j["nodes_unoptimized"] = r.nodes_unoptimized;
  j["nodes_optimized"] = r.nodes_optimized;
  j["cost_unoptimized"] = r.cost_unoptimized;
  j["cost_optimized"] = r.cost_optimized;
  j["compile_seconds"] = r.compile_seconds;
  j["optimize_seconds"] = r.optimize_seconds;
  j["run_unoptimized_seconds"] = r.run_unoptimized_seconds;
  j["run_optimized_seconds"] = r.run_optimized_seconds;
  j["max_relative_deviation"] = r.max_relative_deviation;
  if (r.error) j["error"] = *r.error;
  return j.dump();
}

}  // namespace chromac::bench
