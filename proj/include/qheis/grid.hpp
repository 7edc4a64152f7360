#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qheis/common.hpp"

namespace qheis {

/**
 * Centered rectangular grid on three axes (two fast coordinates and the
 * compactly supported slow coordinate r).  Axis i has N[i] points at
 * -L[i] + k * (2 L[i] / N[i]); N must be a power of two (and a multiple of
 * four, so the centered discrete Fourier transform phases collapse).
 *
 * The dual axis spacing is 1 / (N * spacing), making the e(2 pi i) transform
 * exactly unitary on the discrete torus.
 */
struct Grid {
  std::array<std::size_t, 3> N{64, 64, 64};
  std::array<double, 3> L{4.0, 4.0, 4.0};

  double spacing(std::size_t axis) const {
    return 2.0 * L[axis] / static_cast<double>(N[axis]);
  }
  double point(std::size_t axis, std::size_t k) const {
    return -L[axis] + static_cast<double>(k) * spacing(axis);
  }
  /// Half-width of the dual axis: 1 / (2 * spacing).
  double dual_half_width(std::size_t axis) const {
    return 0.5 / spacing(axis);
  }
  std::size_t origin_index(std::size_t axis) const { return N[axis] / 2; }
  std::size_t size() const { return N[0] * N[1] * N[2]; }

  void validate() const {
    for (std::size_t a = 0; a < 3; ++a) {
      if (N[a] < 4 || (N[a] & (N[a] - 1)) != 0 || N[a] % 4 != 0)
        throw std::invalid_argument("Grid: N must be a power of two >= 4");
      if (L[a] <= 0.0) throw std::invalid_argument("Grid: L must be positive");
    }
  }

  bool operator==(const Grid& o) const { return N == o.N && L == o.L; }
};

/**
 * Complex samples over a Grid, tagged with the coordinate picture
 * ("pqr" for the dual-group picture, "xyr" for the twisted-convolution
 * picture).  Row-major storage in axis order (fast-u, fast-v, r).
 */
struct SampledFunction {
  Grid grid;
  std::string picture = "pqr";
  std::vector<cplx> v;

  SampledFunction() = default;
  SampledFunction(const Grid& g, std::string pic)
      : grid(g), picture(std::move(pic)), v(g.size(), cplx(0.0)) {
    grid.validate();
  }

  cplx& at(std::size_t i, std::size_t j, std::size_t k) {
    return v[(i * grid.N[1] + j) * grid.N[2] + k];
  }
  cplx at(std::size_t i, std::size_t j, std::size_t k) const {
    return v[(i * grid.N[1] + j) * grid.N[2] + k];
  }

  double norm_l2() const {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    const double w = grid.spacing(0) * grid.spacing(1) * grid.spacing(2);
    return std::sqrt(s * w);
  }
  double norm_l1() const {
    double s = 0.0;
    for (const auto& c : v) s += std::abs(c);
    return s * grid.spacing(0) * grid.spacing(1) * grid.spacing(2);
  }
  /// Relative L2 distance to another sampled function on the same grid.
  double rel_l2_dist(const SampledFunction& o) const {
    if (!(grid == o.grid)) throw std::invalid_argument("rel_l2_dist: grid mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      num += std::norm(v[i] - o.v[i]);
      den += std::norm(v[i]) + std::norm(o.v[i]);
    }
    return den == 0.0 ? 0.0 : std::sqrt(num / (0.5 * den));
  }

  /// Largest boundary-sample magnitude relative to the peak (support check).
  double boundary_mass() const {
    double peak = 0.0;
    for (const auto& c : v) peak = std::max(peak, std::abs(c));
    if (peak == 0.0) return 0.0;
    double worst = 0.0;
    const auto& n = grid.N;
    for (std::size_t i = 0; i < n[0]; ++i)
      for (std::size_t j = 0; j < n[1]; ++j)
        for (std::size_t k = 0; k < n[2]; ++k) {
          if (i != 0 && j != 0 && k != 0 && i != n[0] - 1 && j != n[1] - 1 &&
              k != n[2] - 1)
            continue;
          worst = std::max(worst, std::abs(at(i, j, k)));
        }
    return worst / peak;
  }
};

/// Binary container: one-line JSON header, '\n', then little-endian
/// complex64 samples (float32 re, float32 im) in row-major order.
inline void save_sampled(const SampledFunction& f, const std::string& path) {
  nlohmann::json header;
  header["picture"] = f.picture;
  header["N"] = f.grid.N;
  header["L"] = f.grid.L;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_sampled: cannot open " + path);
  const std::string h = header.dump();
  out.write(h.data(), static_cast<std::streamsize>(h.size()));
  out.put('\n');
  for (const auto& c : f.v) {
    const float re = static_cast<float>(c.real());
    const float im = static_cast<float>(c.imag());
    out.write(reinterpret_cast<const char*>(&re), 4);
    out.write(reinterpret_cast<const char*>(&im), 4);
  }
}

inline SampledFunction load_sampled(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_sampled: cannot open " + path);
  std::string line;
  std::getline(in, line);
  const auto header = nlohmann::json::parse(line);
  Grid g;
  for (std::size_t a = 0; a < 3; ++a) {
    g.N[a] = header["N"][a];
    g.L[a] = header["L"][a];
  }
  SampledFunction f(g, header["picture"]);
  for (auto& c : f.v) {
    float re = 0.0f, im = 0.0f;
    in.read(reinterpret_cast<char*>(&re), 4);
    in.read(reinterpret_cast<char*>(&im), 4);
    c = cplx(re, im);
  }
  if (!in) throw std::runtime_error("load_sampled: truncated file " + path);
  return f;
}

}  // namespace qheis
