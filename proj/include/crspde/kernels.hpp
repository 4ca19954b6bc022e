#pragma once

// Data-parallel inner loops. Every kernel exists twice: the OpenMP version in
// crspde::kernels and a plain loop in crspde::kernels::serial, which is kept
// as the reference the tests and the benchmark compare against. Reductions
// are max-only, so both versions agree bit for bit.

#include <array>
#include <complex>
#include <span>

namespace crspde::kernels {

using Complex = std::complex<double>;
using ConstSpan3 = std::array<std::span<const Complex>, 3>;
using Span3 = std::array<std::span<Complex>, 3>;

/// data[a*m + b] *= factor * (-1)^(a+b); moves the grid origin to -pi.
void scale_alternating(std::span<Complex> data, int m, double factor);
void multiply_symbol(std::span<Complex> data, std::span<const Complex> symbol);
void multiply_real_symbol(std::span<Complex> data, std::span<const double> symbol);
void pointwise_product(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> out);
/// out = a x b, evaluated pointwise.
void cross(const ConstSpan3& a, const ConstSpan3& b, const Span3& out);
/// out = R x conj(R) - g x conj(R) - R x conj(g), the bracket of the fixed-point map.
void fixed_point_bracket(const ConstSpan3& r, const ConstSpan3& g, const Span3& out);
double max_abs(std::span<const Complex> data);
/// sup over grid points of |f(x + s*h) - f(x)| for the periodic m x m array.
double max_shift_difference(std::span<const Complex> f, int m, int s1, int s2);

namespace serial {
void scale_alternating(std::span<Complex> data, int m, double factor);
void multiply_symbol(std::span<Complex> data, std::span<const Complex> symbol);
void multiply_real_symbol(std::span<Complex> data, std::span<const double> symbol);
void pointwise_product(std::span<const Complex> a, std::span<const Complex> b,
                       std::span<Complex> out);
void cross(const ConstSpan3& a, const ConstSpan3& b, const Span3& out);
void fixed_point_bracket(const ConstSpan3& r, const ConstSpan3& g, const Span3& out);
double max_abs(std::span<const Complex> data);
double max_shift_difference(std::span<const Complex> f, int m, int s1, int s2);
}  // namespace serial

/// Threads used by the parallel kernels (honours CRSPDE_THREADS).
int thread_count();

}  // namespace crspde::kernels
