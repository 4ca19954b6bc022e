#include "crspde/mollifier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <exception>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>

#include "crspde/field.hpp"
#include "crspde/kernels.hpp"

namespace crspde {

namespace {

double unnormalized_bump(double r2) { return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0; }

// int_{-sqrt(1-x^2)}^{sqrt(1-x^2)} exp(-1/(1-x^2-y^2)) dy via y = s sqrt(1-x^2).
double projection_unnormalized(double x, int intervals) {
  const double a = 1.0 - x * x;
  if (a <= 0.0) return 0.0;
  const double h = 1.0 / intervals;
  double sum = 0.0;
  for (int i = 0; i < intervals; ++i) {  // s = i*h on [0, 1); the s = 1 end is zero
    const double s = i * h;
    const double w = (i == 0) ? 0.5 : 1.0;
    const double e = a * (1.0 - s * s);
    sum += w * std::exp(-1.0 / e);
  }
  return 2.0 * std::sqrt(a) * sum * h;
}

}  // namespace

StandardBump::StandardBump() : projection_(kIntervals + 1, 0.0) {
  const double h = 1.0 / kIntervals;
  for (int i = 0; i < kIntervals; ++i) projection_[i] = projection_unnormalized(i * h, kIntervals);
  double mass = 0.0, coarse = 0.0;
  for (int i = 0; i < kIntervals; ++i) {
    const double w = (i == 0) ? 0.5 : 1.0;
    mass += w * projection_[i];
    if (i % 2 == 0) coarse += w * projection_[i];
  }
  mass *= 2.0 * h;
  coarse *= 4.0 * h;
  if (std::abs(mass - coarse) > 1e-12 * mass) {
    throw NumericalError("StandardBump: mass quadrature did not converge");
  }
  normalization_ = 1.0 / mass;
  for (double& p : projection_) p *= normalization_;
}

const StandardBump& StandardBump::instance() {
  static const StandardBump bump;
  return bump;
}

double StandardBump::density(double r) const {
  return normalization_ * unnormalized_bump(r * r);
}

double StandardBump::transform(double t) const {
  t = std::abs(t);
  const double h = 1.0 / kIntervals;
  // cos(t x_i) by rotation, re-anchored every 64 steps to bound drift.
  const std::complex<double> step = std::polar(1.0, t * h);
  std::complex<double> z(1.0, 0.0);
  double fine = 0.0, coarse = 0.0;
  for (int i = 0; i < kIntervals; ++i) {
    if (i % 64 == 0) z = std::polar(1.0, t * i * h);
    const double w = (i == 0) ? 0.5 : 1.0;
    const double term = w * projection_[i] * z.real();
    fine += term;
    if (i % 2 == 0) coarse += term;
    z *= step;
  }
  fine *= 2.0 * h;
  coarse *= 4.0 * h;
  if (std::abs(fine - coarse) > 1e-10) {
    std::ostringstream msg;
    msg << "StandardBump::transform: quadrature not converged at t = " << t
        << " (difference " << std::abs(fine - coarse) << ")";
    throw NumericalError(msg.str());
  }
  return fine;
}

double mollifier_hat(double eps, int k1, int k2) {
  if (!(eps >= 0.0)) throw std::invalid_argument("mollifier_hat: eps must be >= 0");
  if (eps == 0.0) return 1.0;
  return StandardBump::instance().transform(eps * std::hypot(k1, k2));
}

MollifierTable::MollifierTable(double eps, int n) : eps_(eps), n_(n) {
  if (!(eps >= 0.0)) throw std::invalid_argument("MollifierTable: eps must be >= 0");
  const TorusGrid grid(n);
  hat_.assign(grid.size(), 1.0);
  if (eps == 0.0) return;
  const StandardBump& bump = StandardBump::instance();
  const int half = n / 2;
  // F depends on |k| only: fill the octant 0 <= k1 <= k2 <= n/2, then mirror.
  std::vector<double> octant(static_cast<std::size_t>(half + 1) * (half + 1), 0.0);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4) num_threads(kernels::thread_count())
  for (int p = 0; p <= half; ++p) {
    try {
      for (int q = p; q <= half; ++q) {
        octant[static_cast<std::size_t>(p) * (half + 1) + q] =
            bump.transform(eps * std::hypot(p, q));
      }
    } catch (...) {
#pragma omp critical(crspde_mollifier_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (int a = 0; a < n; ++a) {
    const int p = std::abs(grid.wavenumber(a));
    for (int b = 0; b < n; ++b) {
      const int q = std::abs(grid.wavenumber(b));
      const int lo = std::min(p, q), hi = std::max(p, q);
      hat_[grid.flat(a, b)] = octant[static_cast<std::size_t>(lo) * (half + 1) + hi];
    }
  }
}

double MollifierTable::at(int k1, int k2) const {
  const TorusGrid grid(n_);
  return hat_[grid.flat(grid.index_of(k1), grid.index_of(k2))];
}

std::shared_ptr<const MollifierTable> mollifier_table(double eps, int n) {
  static std::mutex mutex;
  static std::map<std::pair<int, std::uint64_t>, std::shared_ptr<const MollifierTable>> cache;
  std::uint64_t bits = 0;
  std::memcpy(&bits, &eps, sizeof bits);
  const auto key = std::make_pair(n, bits);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const MollifierTable>(eps, n);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(table)).first->second;
}

}  // namespace crspde
