#include "crspde/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "crspde/mollifier.hpp"
#include "crspde/spectral.hpp"

namespace crspde {

NoiseRealization::NoiseRealization(std::uint64_t seed, int truncation, ZeroMeanFlags flags)
    : seed_(seed), kmax_(truncation), flags_(flags) {
  if (truncation < 1) throw std::invalid_argument("NoiseRealization: truncation must be >= 1");
  const std::size_t side = 2 * static_cast<std::size_t>(kmax_) + 1;
  for (auto& e : eta_) e.assign(side * side, Complex(0.0, 0.0));
}

std::size_t NoiseRealization::slot(int k1, int k2) const {
  const std::size_t side = 2 * static_cast<std::size_t>(kmax_) + 1;
  return static_cast<std::size_t>(k1 + kmax_) * side + static_cast<std::size_t>(k2 + kmax_);
}

Complex NoiseRealization::eta(int k1, int k2, int j) const {
  if (std::abs(k1) > kmax_ || std::abs(k2) > kmax_ || (k1 == 0 && k2 == 0)) return 0.0;
  return eta_[j][slot(k1, k2)];
}

void NoiseRealization::set_eta(int k1, int k2, int j, Complex value) {
  if (std::abs(k1) > kmax_ || std::abs(k2) > kmax_) {
    throw std::out_of_range("NoiseRealization::set_eta: mode outside truncation");
  }
  if (k1 == 0 && k2 == 0) throw std::invalid_argument("NoiseRealization: k = 0 is eta0");
  eta_[j][slot(k1, k2)] = value;
}

NoiseRealization sample(std::uint64_t seed, const TorusGrid& grid, ZeroMeanFlags flags) {
  NoiseRealization noise(seed, grid.resolved_kmax(), flags);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  const double half_sd = std::sqrt(0.5);

  // Mean modes are always drawn so the flags do not shift the stream.
  for (int j = 0; j < 3; ++j) {
    const double v = unit(rng);
    noise.set_eta0(j, flags[j] ? 0.0 : v);
  }
  auto draw = [&](int k1, int k2) {
    for (int j = 0; j < 3; ++j) {
      const double re = half_sd * unit(rng);
      const double im = half_sd * unit(rng);
      noise.set_eta(k1, k2, j, Complex(re, im));
    }
  };
  for (int shell = 1; shell <= noise.truncation(); ++shell) {
    for (int k1 = -shell; k1 <= shell; ++k1) {
      if (std::abs(k1) == shell) {
        for (int k2 = -shell; k2 <= shell; ++k2) draw(k1, k2);
      } else {
        draw(k1, -shell);
        draw(k1, shell);
      }
    }
  }
  return noise;
}

NoiseRealization zero_noise(const TorusGrid& grid, ZeroMeanFlags flags) {
  return NoiseRealization(0, grid.resolved_kmax(), flags);
}

Complex noise_coefficient(const NoiseRealization& noise, int k1, int k2, int j) {
  if (k1 == 0 && k2 == 0) return noise.eta0(j);
  return 0.5 * (noise.eta(k1, k2, j) + std::conj(noise.eta(-k1, -k2, j)));
}

VectorField3 realize(const NoiseRealization& noise, const TorusGrid& grid, double eps,
                     Diagnostics* diagnostics) {
  if (!(eps >= 0.0)) throw std::invalid_argument("realize: eps must be >= 0");
  if (eps > 0.0 && eps < grid.spacing() && diagnostics != nullptr) {
    std::ostringstream msg;
    msg << "eps = " << eps << " is below the grid spacing " << grid.spacing()
        << "; the mollifier is unresolved";
    diagnostics->warn(msg.str());
  }
  const auto table = mollifier_table(eps, grid.n());
  const int kmax = std::min(grid.resolved_kmax(), noise.truncation());
  VectorField3 out = VectorField3::zeros(grid, Representation::kSpectral);
  for (int j = 0; j < 3; ++j) {
    ScalarField& f = out[j];
    for (int a = 0; a < grid.n(); ++a) {
      const int k1 = grid.wavenumber(a);
      if (std::abs(k1) > kmax) continue;
      for (int b = 0; b < grid.n(); ++b) {
        const int k2 = grid.wavenumber(b);
        if (std::abs(k2) > kmax) continue;
        const std::size_t idx = grid.flat(a, b);
        f[idx] = noise_coefficient(noise, k1, k2, j) * table->values()[idx];
      }
    }
  }
  return out;
}

}  // namespace crspde
