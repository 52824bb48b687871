#include "chromac/lang/cast_graph.hpp"

#include <array>
#include <deque>
#include <string>

#include "chromac/error.hpp"

namespace chromac::lang {

namespace {

using P = PhysicalType;
using S = CastStep;

constexpr std::array kEdges = {
    CastEdge{P::Light, P::LMS, S::LightToLms},
    CastEdge{P::LMS, P::XYZ, S::LmsToXyz},
    CastEdge{P::XYZ, P::LMS, S::XyzToLms},
    CastEdge{P::XYZ, P::sRGB, S::XyzToSrgb},
    CastEdge{P::sRGB, P::XYZ, S::SrgbToXyz},
    CastEdge{P::XYZ, P::opRGB, S::XyzToOpRgb},
    CastEdge{P::opRGB, P::XYZ, S::OpRgbToXyz},
    CastEdge{P::XYZ, P::LAB, S::XyzToLab},
    CastEdge{P::LAB, P::XYZ, S::LabToXyz},
    CastEdge{P::sRGB, P::HSV, S::SrgbToHsv},
    CastEdge{P::HSV, P::sRGB, S::HsvToSrgb},
    CastEdge{P::XYZ, P::Chromaticity, S::XyzToChromaticity},
    CastEdge{P::Pigment, P::Scattering, S::PigmentToScattering},
    CastEdge{P::Pigment, P::Absorption, S::PigmentToAbsorption},
    CastEdge{P::Pigment, P::Reflectance, S::PigmentToReflectance},
};

constexpr std::size_t kTypes = kAllPhysicalTypes.size();

std::size_t idx(P t) { return static_cast<std::size_t>(t); }

struct Bfs {
  std::array<int, kTypes> dist;
  std::array<long, kTypes> count;  // number of shortest paths
  std::array<int, kTypes> via;     // edge index reaching the node
};

Bfs bfs(P from) {
  Bfs b;
  b.dist.fill(-1);
  b.count.fill(0);
  b.via.fill(-1);
  b.dist[idx(from)] = 0;
  b.count[idx(from)] = 1;
  std::deque<P> q{from};
  while (!q.empty()) {
    const P u = q.front();
    q.pop_front();
    for (std::size_t e = 0; e < kEdges.size(); ++e) {
      if (kEdges[e].from != u) continue;
      const std::size_t v = idx(kEdges[e].to);
      if (b.dist[v] == -1) {
        b.dist[v] = b.dist[idx(u)] + 1;
        b.via[v] = static_cast<int>(e);
        q.push_back(kEdges[e].to);
      }
      if (b.dist[v] == b.dist[idx(u)] + 1) b.count[v] += b.count[idx(u)];
    }
  }
  return b;
}

void ensure_verified() {
  static const bool ok = (verify_unique_shortest_paths(), true);
  (void)ok;
}

}  // namespace

std::span<const CastEdge> cast_edges() { return kEdges; }

void verify_unique_shortest_paths() {
  for (P from : kAllPhysicalTypes) {
    const Bfs b = bfs(from);
    for (P to : kAllPhysicalTypes) {
      if (b.count[idx(to)] > 1) {
        throw InternalError("cast graph has " + std::to_string(b.count[idx(to)]) + " shortest paths from " +
                            std::string(name(from)) + " to " + std::string(name(to)));
      }
    }
  }
}

bool path_exists(PhysicalType from, PhysicalType to) {
  ensure_verified();
  return bfs(from).dist[idx(to)] >= 0;
}

std::vector<CastEdge> cast_path(PhysicalType from, PhysicalType to) {
  ensure_verified();
  const Bfs b = bfs(from);
  if (b.dist[idx(to)] < 0) {
    throw InvalidInput("no cast from " + std::string(name(from)) + " to " + std::string(name(to)));
  }
  std::vector<CastEdge> path;
  for (P cur = to; cur != from;) {
    const CastEdge& e = kEdges[static_cast<std::size_t>(b.via[idx(cur)])];
    path.insert(path.begin(), e);
    cur = e.from;
  }
  return path;
}

}  // namespace chromac::lang
