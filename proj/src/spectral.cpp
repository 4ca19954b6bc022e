#include "crspde/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

#include "crspde/kernels.hpp"

namespace crspde {

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [m, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.inverse);
    }
  }

  const PlanPair& get(int m) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(m);
    if (it != plans_.end()) return it->second;
    // FFTW_ESTIMATE keeps the chosen algorithm, and hence the rounding,
    // independent of timing measurements.
    std::vector<Complex> scratch(static_cast<std::size_t>(m) * m);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair p;
    p.forward = fftw_plan_dft_2d(m, m, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.inverse = fftw_plan_dft_2d(m, m, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (p.forward == nullptr || p.inverse == nullptr) {
      throw std::runtime_error("fftw plan creation failed");
    }
    return plans_.emplace(m, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void check_size(std::span<Complex> data, int m) {
  if (data.size() != static_cast<std::size_t>(m) * m) {
    throw std::invalid_argument("fft: buffer size does not match grid");
  }
}

}  // namespace

void fft_forward(std::span<Complex> data, int m) {
  check_size(data, m);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_cache().get(m).forward, buf, buf);
}

void fft_inverse(std::span<Complex> data, int m) {
  check_size(data, m);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_cache().get(m).inverse, buf, buf);
}

ScalarField to_spectral(const ScalarField& f) {
  if (f.is_spectral()) return f;
  const int n = f.grid().n();
  std::vector<Complex> data(f.data().begin(), f.data().end());
  fft_forward(data, n);
  kernels::scale_alternating(data, n, 1.0 / (static_cast<double>(n) * n));
  return ScalarField(f.grid(), Representation::kSpectral, std::move(data));
}

ScalarField to_physical(const ScalarField& f) {
  if (!f.is_spectral()) return f;
  const int n = f.grid().n();
  std::vector<Complex> data(f.data().begin(), f.data().end());
  kernels::scale_alternating(data, n, 1.0);
  fft_inverse(data, n);
  return ScalarField(f.grid(), Representation::kPhysical, std::move(data));
}

std::string_view multiplier_name(Multiplier m) {
  switch (m) {
    case Multiplier::kDx: return "Dx";
    case Multiplier::kDy: return "Dy";
    case Multiplier::kDz: return "Dz";
    case Multiplier::kDzbar: return "Dzbar";
    case Multiplier::kD1: return "D1";
    case Multiplier::kD2: return "D2";
    case Multiplier::kK: return "K";
    case Multiplier::kG: return "G";
    case Multiplier::kGbar: return "Gbar";
    case Multiplier::kG1: return "G1";
    case Multiplier::kG2: return "G2";
    case Multiplier::kLaplacian: return "Laplacian";
  }
  return "?";
}

Complex symbol(Multiplier m, int k1, int k2) {
  const Complex i(0.0, 1.0);
  const double kk = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
  const double green = kk > 0.0 ? 1.0 / kk : 0.0;
  switch (m) {
    case Multiplier::kDx:
    case Multiplier::kD1: return i * static_cast<double>(k1);
    case Multiplier::kDy:
    case Multiplier::kD2: return i * static_cast<double>(k2);
    case Multiplier::kDz: return 0.5 * (i * static_cast<double>(k1) + static_cast<double>(k2));
    case Multiplier::kDzbar: return 0.5 * (i * static_cast<double>(k1) - static_cast<double>(k2));
    case Multiplier::kK: return green;
    case Multiplier::kG: return (static_cast<double>(k2) + i * static_cast<double>(k1)) * green;
    case Multiplier::kGbar: return (i * static_cast<double>(k1) - static_cast<double>(k2)) * green;
    case Multiplier::kG1: return i * static_cast<double>(k1) * green;
    case Multiplier::kG2: return i * static_cast<double>(k2) * green;
    case Multiplier::kLaplacian: return -kk;
  }
  return 0.0;
}

const std::vector<Complex>& symbol_table(Multiplier m, int n) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<Complex>>> tables;
  std::lock_guard lock(mutex);
  auto& slot = tables[{static_cast<int>(m), n}];
  if (!slot) {
    const TorusGrid grid(n);
    auto table = std::make_unique<std::vector<Complex>>(grid.size());
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        (*table)[grid.flat(a, b)] = symbol(m, grid.wavenumber(a), grid.wavenumber(b));
      }
    }
    slot = std::move(table);
  }
  return *slot;
}

ScalarField apply_multiplier(const ScalarField& f, Multiplier m) {
  ScalarField out = to_spectral(f);
  kernels::multiply_symbol(out.data(), symbol_table(m, f.grid().n()));
  return out;
}

VectorField3 apply_multiplier(const VectorField3& f, Multiplier m) {
  return VectorField3{{apply_multiplier(f[0], m), apply_multiplier(f[1], m),
                       apply_multiplier(f[2], m)}};
}

ScalarField apply_real_symbol(const ScalarField& f, std::span<const double> table) {
  if (table.size() != f.grid().size()) {
    throw std::invalid_argument("apply_real_symbol: table size does not match grid");
  }
  ScalarField out = to_spectral(f);
  kernels::multiply_real_symbol(out.data(), table);
  return out;
}

Complex mean(const ScalarField& f) {
  if (f.is_spectral()) return f[0];
  return to_spectral(f)[0];
}

ScalarField project_zero_mean(const ScalarField& f) {
  ScalarField out = to_spectral(f);
  out[0] = 0.0;
  return out;
}

ScalarField truncate_modes(const ScalarField& f, int kmax) {
  ScalarField out = to_spectral(f);
  const TorusGrid& g = f.grid();
  for (int a = 0; a < g.n(); ++a) {
    const bool keep_row = std::abs(g.wavenumber(a)) <= kmax;
    for (int b = 0; b < g.n(); ++b) {
      if (!keep_row || std::abs(g.wavenumber(b)) > kmax) out[g.flat(a, b)] = 0.0;
    }
  }
  return out;
}

}  // namespace crspde
