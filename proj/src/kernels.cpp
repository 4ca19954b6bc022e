#include "crspde/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <string>

namespace crspde::kernels {

namespace {

inline Complex cross_component(Complex a1, Complex a2, Complex b1, Complex b2) {
  return a1 * b2 - a2 * b1;
}

// Below this many points the fork/join overhead dominates.
constexpr std::ptrdiff_t kParallelThreshold = 1 << 14;

inline bool go_parallel(std::size_t n) {
  return static_cast<std::ptrdiff_t>(n) >= kParallelThreshold && !omp_in_parallel();
}

}  // namespace

int thread_count() {
  int threads = omp_get_max_threads();
  if (const char* env = std::getenv("CRSPDE_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) threads = std::min(threads, cap);
    } catch (...) {
      // malformed values are ignored
    }
  }
  return std::max(threads, 1);
}

void scale_alternating(std::span<Complex> data, int m, double factor) {
  const std::ptrdiff_t rows = m;
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (go_parallel(data.size()))
  for (std::ptrdiff_t a = 0; a < rows; ++a) {
    Complex* row = data.data() + a * m;
    double s = (a % 2 == 0) ? factor : -factor;
    for (int b = 0; b < m; ++b) {
      row[b] *= s;
      s = -s;
    }
  }
}

void multiply_symbol(std::span<Complex> data, std::span<const Complex> symbol) {
  const auto n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (go_parallel(data.size()))
  for (std::ptrdiff_t i = 0; i < n; ++i) data[i] *= symbol[i];
}

void multiply_real_symbol(std::span<Complex> data, std::span<const double> symbol) {
  const auto n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (go_parallel(data.size()))
  for (std::ptrdiff_t i = 0; i < n; ++i) data[i] *= symbol[i];
}

void pointwise_product(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (go_parallel(out.size()))
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void cross(const ConstSpan3& a, const ConstSpan3& b, const Span3& out) {
  const auto n = static_cast<std::ptrdiff_t>(out[0].size());
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (go_parallel(out[0].size()))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Complex a0 = a[0][i], a1 = a[1][i], a2 = a[2][i];
    const Complex b0 = b[0][i], b1 = b[1][i], b2 = b[2][i];
    out[0][i] = cross_component(a1, a2, b1, b2);
    out[1][i] = cross_component(a2, a0, b2, b0);
    out[2][i] = cross_component(a0, a1, b0, b1);
  }
}

void fixed_point_bracket(const ConstSpan3& r, const ConstSpan3& g, const Span3& out) {
  const auto n = static_cast<std::ptrdiff_t>(out[0].size());
#pragma omp parallel for schedule(static) num_threads(thread_count()) if (go_parallel(out[0].size()))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Complex r0 = r[0][i], r1 = r[1][i], r2 = r[2][i];
    const Complex g0 = g[0][i], g1 = g[1][i], g2 = g[2][i];
    const Complex rb0 = std::conj(r0), rb1 = std::conj(r1), rb2 = std::conj(r2);
    const Complex gb0 = std::conj(g0), gb1 = std::conj(g1), gb2 = std::conj(g2);
    out[0][i] = cross_component(r1, r2, rb1, rb2) - cross_component(g1, g2, rb1, rb2) -
                cross_component(r1, r2, gb1, gb2);
    out[1][i] = cross_component(r2, r0, rb2, rb0) - cross_component(g2, g0, rb2, rb0) -
                cross_component(r2, r0, gb2, gb0);
    out[2][i] = cross_component(r0, r1, rb0, rb1) - cross_component(g0, g1, rb0, rb1) -
                cross_component(r0, r1, gb0, gb1);
  }
}

double max_abs(std::span<const Complex> data) {
  const auto n = static_cast<std::ptrdiff_t>(data.size());
  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best) num_threads(thread_count()) if (go_parallel(data.size()))
  for (std::ptrdiff_t i = 0; i < n; ++i) best = std::max(best, std::abs(data[i]));
  return best;
}

double max_shift_difference(std::span<const Complex> f, int m, int s1, int s2) {
  const int d1 = ((s1 % m) + m) % m;
  const int d2 = ((s2 % m) + m) % m;
  double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best) num_threads(thread_count()) if (go_parallel(f.size()))
  for (int a = 0; a < m; ++a) {
    const Complex* row = f.data() + static_cast<std::ptrdiff_t>(a) * m;
    const Complex* shifted = f.data() + static_cast<std::ptrdiff_t>((a + d1) % m) * m;
    for (int b = 0; b < m; ++b) {
      best = std::max(best, std::abs(shifted[(b + d2) % m] - row[b]));
    }
  }
  return best;
}

namespace serial {

void scale_alternating(std::span<Complex> data, int m, double factor) {
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const double s = ((a + b) % 2 == 0) ? factor : -factor;
      data[static_cast<std::size_t>(a) * m + b] *= s;
    }
  }
}

void multiply_symbol(std::span<Complex> data, std::span<const Complex> symbol) {
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= symbol[i];
}

void multiply_real_symbol(std::span<Complex> data, std::span<const double> symbol) {
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= symbol[i];
}

void pointwise_product(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

void cross(const ConstSpan3& a, const ConstSpan3& b, const Span3& out) {
  for (std::size_t i = 0; i < out[0].size(); ++i) {
    out[0][i] = a[1][i] * b[2][i] - a[2][i] * b[1][i];
    out[1][i] = a[2][i] * b[0][i] - a[0][i] * b[2][i];
    out[2][i] = a[0][i] * b[1][i] - a[1][i] * b[0][i];
  }
}

void fixed_point_bracket(const ConstSpan3& r, const ConstSpan3& g, const Span3& out) {
  for (std::size_t i = 0; i < out[0].size(); ++i) {
    const std::array<Complex, 3> rv{r[0][i], r[1][i], r[2][i]};
    const std::array<Complex, 3> gv{g[0][i], g[1][i], g[2][i]};
    const std::array<Complex, 3> rb{std::conj(rv[0]), std::conj(rv[1]), std::conj(rv[2])};
    const std::array<Complex, 3> gb{std::conj(gv[0]), std::conj(gv[1]), std::conj(gv[2])};
    for (int j = 0; j < 3; ++j) {
      const int p = (j + 1) % 3, q = (j + 2) % 3;
      out[j][i] = (rv[p] * rb[q] - rv[q] * rb[p]) - (gv[p] * rb[q] - gv[q] * rb[p]) -
                  (rv[p] * gb[q] - rv[q] * gb[p]);
    }
  }
}

double max_abs(std::span<const Complex> data) {
  double best = 0.0;
  for (const Complex& v : data) best = std::max(best, std::abs(v));
  return best;
}

double max_shift_difference(std::span<const Complex> f, int m, int s1, int s2) {
  double best = 0.0;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const int a2 = (((a + s1) % m) + m) % m;
      const int b2 = (((b + s2) % m) + m) % m;
      const Complex diff = f[static_cast<std::size_t>(a2) * m + b2] -
                           f[static_cast<std::size_t>(a) * m + b];
      best = std::max(best, std::abs(diff));
    }
  }
  return best;
}

}  // namespace serial

}  // namespace crspde::kernels
