#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "crspde/field.hpp"

namespace crspde {

/// Unnormalized in-place 2D DFTs on an m x m array (FFTW, cached plans).
/// Safe to call concurrently.
void fft_forward(std::span<Complex> data, int m);
void fft_inverse(std::span<Complex> data, int m);

ScalarField to_spectral(const ScalarField& f);
ScalarField to_physical(const ScalarField& f);

/// Fourier multipliers on the torus.
///
/// Symbols at k = (k1, k2): Dx = i k1, Dy = i k2, Dz = (i k1 + k2)/2,
/// Dzbar = (i k1 - k2)/2, K = 1/|k|^2, G = 2 Dz K, Gbar = 2 Dzbar K,
/// G1 = Dx K, G2 = Dy K, Laplacian = -|k|^2. K and the G family vanish at
/// k = 0. The Nyquist mode uses the literal formula.
enum class Multiplier { kDx, kDy, kDz, kDzbar, kD1, kD2, kK, kG, kGbar, kG1, kG2, kLaplacian };

std::string_view multiplier_name(Multiplier m);
Complex symbol(Multiplier m, int k1, int k2);
/// Symbol sampled on the wrapped mode layout of an n-grid; built once per
/// (kind, n) and shared.
const std::vector<Complex>& symbol_table(Multiplier m, int n);

/// Multiplies the spectral coefficients by the symbol; returns a spectral field.
ScalarField apply_multiplier(const ScalarField& f, Multiplier m);
VectorField3 apply_multiplier(const VectorField3& f, Multiplier m);
/// Multiplies by an arbitrary real table laid out like symbol_table.
ScalarField apply_real_symbol(const ScalarField& f, std::span<const double> table);

/// Average over the torus, i.e. the k = 0 coefficient.
Complex mean(const ScalarField& f);
ScalarField project_zero_mean(const ScalarField& f);

/// Zeroes every mode outside |k1|, |k2| <= kmax (spectral result).
ScalarField truncate_modes(const ScalarField& f, int kmax);

}  // namespace crspde
