#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "crspde/field.hpp"
#include "crspde/noise.hpp"

namespace crspde::io {

/// CRF1 binary field file:
///   bytes 0..3  "CRF1"
///   u32 LE      grid n
///   u32 LE      component count
///   then for each component, n*n (re, im) pairs of LE f64 in row-major order.
/// The file does not record the representation; callers decide.
void write_crf1(const std::filesystem::path& path, const std::vector<ScalarField>& components);
std::vector<ScalarField> read_crf1(const std::filesystem::path& path, Representation rep);

void write_crf1(const std::filesystem::path& path, const VectorField3& field);
VectorField3 read_crf1_vector(const std::filesystem::path& path, Representation rep);

/// Persists noise coefficients as a three-component spectral CRF1 file
/// (slot k = 0 holds eta0_j, modes outside the truncation are zero) plus a
/// JSON sidecar {schema_version, seed, n, truncation, eps, zero_mean_flags}.
void write_noise(const std::filesystem::path& crf1_path, const std::filesystem::path& json_path,
                 const NoiseRealization& noise, const TorusGrid& grid, double eps);
NoiseRealization read_noise(const std::filesystem::path& crf1_path,
                            const std::filesystem::path& json_path);

}  // namespace crspde::io
