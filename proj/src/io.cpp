#include "crspde/io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace crspde::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "CRF1 I/O assumes a little-endian host");

constexpr std::array<char, 4> kMagic{'C', 'R', 'F', '1'};

void put_u32(std::ofstream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::ifstream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

void write_crf1(const std::filesystem::path& path, const std::vector<ScalarField>& components) {
  if (components.empty()) throw std::invalid_argument("write_crf1: no components");
  const TorusGrid grid = components.front().grid();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("write_crf1: cannot open " + path.string());
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, static_cast<std::uint32_t>(grid.n()));
  put_u32(out, static_cast<std::uint32_t>(components.size()));
  for (const auto& f : components) {
    if (!(f.grid() == grid)) throw std::invalid_argument("write_crf1: mixed grids");
    // std::complex<double> is layout-compatible with double[2].
    out.write(reinterpret_cast<const char*>(f.data().data()),
              static_cast<std::streamsize>(f.data().size() * sizeof(Complex)));
  }
  if (!out) throw std::runtime_error("write_crf1: write failed for " + path.string());
}

std::vector<ScalarField> read_crf1(const std::filesystem::path& path, Representation rep) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_crf1: cannot open " + path.string());
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("read_crf1: bad magic in " + path.string());
  const auto n = static_cast<int>(get_u32(in));
  const auto count = get_u32(in);
  if (!in) throw std::runtime_error("read_crf1: truncated header");
  const TorusGrid grid(n);
  std::vector<ScalarField> out;
  out.reserve(count);
  for (std::uint32_t c = 0; c < count; ++c) {
    std::vector<Complex> data(grid.size());
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(Complex)));
    if (!in) throw std::runtime_error("read_crf1: truncated payload in " + path.string());
    out.emplace_back(grid, rep, std::move(data));
  }
  return out;
}

void write_crf1(const std::filesystem::path& path, const VectorField3& field) {
  write_crf1(path, std::vector<ScalarField>{field[0], field[1], field[2]});
}

VectorField3 read_crf1_vector(const std::filesystem::path& path, Representation rep) {
  auto comps = read_crf1(path, rep);
  if (comps.size() != 3) throw std::runtime_error("read_crf1_vector: expected 3 components");
  return VectorField3{{std::move(comps[0]), std::move(comps[1]), std::move(comps[2])}};
}

void write_noise(const std::filesystem::path& crf1_path, const std::filesystem::path& json_path,
                 const NoiseRealization& noise, const TorusGrid& grid, double eps) {
  if (noise.truncation() > grid.resolved_kmax()) {
    throw std::invalid_argument("write_noise: grid too coarse for the realization");
  }
  std::vector<ScalarField> comps;
  for (int j = 0; j < 3; ++j) {
    ScalarField f(grid, Representation::kSpectral);
    f[0] = noise.eta0(j);
    for (int a = 0; a < grid.n(); ++a) {
      for (int b = 0; b < grid.n(); ++b) {
        const int k1 = grid.wavenumber(a), k2 = grid.wavenumber(b);
        if (k1 == 0 && k2 == 0) continue;
        f[grid.flat(a, b)] = noise.eta(k1, k2, j);
      }
    }
    comps.push_back(std::move(f));
  }
  write_crf1(crf1_path, comps);

  const auto& flags = noise.zero_mean_flags();
  nlohmann::ordered_json sidecar;
  sidecar["schema_version"] = 1;
  sidecar["kind"] = "noise_coefficients";
  sidecar["seed"] = noise.seed();
  sidecar["n"] = grid.n();
  sidecar["truncation"] = noise.truncation();
  sidecar["eps"] = eps;
  sidecar["zero_mean_flags"] = {flags[0], flags[1], flags[2]};
  std::ofstream out(json_path, std::ios::trunc);
  if (!out) throw std::runtime_error("write_noise: cannot open " + json_path.string());
  out << sidecar.dump(2) << '\n';
}

NoiseRealization read_noise(const std::filesystem::path& crf1_path,
                            const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("read_noise: cannot open " + json_path.string());
  const auto sidecar = nlohmann::json::parse(in);
  const auto flags_json = sidecar.at("zero_mean_flags");
  const ZeroMeanFlags flags{flags_json.at(0).get<bool>(), flags_json.at(1).get<bool>(),
                            flags_json.at(2).get<bool>()};
  NoiseRealization noise(sidecar.at("seed").get<std::uint64_t>(),
                         sidecar.at("truncation").get<int>(), flags);
  const auto comps = read_crf1(crf1_path, Representation::kSpectral);
  if (comps.size() != 3) throw std::runtime_error("read_noise: expected 3 components");
  const TorusGrid& grid = comps[0].grid();
  if (grid.n() != sidecar.at("n").get<int>()) {
    throw std::runtime_error("read_noise: sidecar n does not match CRF1 header");
  }
  for (int j = 0; j < 3; ++j) {
    noise.set_eta0(j, comps[j][0].real());
    for (int k1 = -noise.truncation(); k1 <= noise.truncation(); ++k1) {
      for (int k2 = -noise.truncation(); k2 <= noise.truncation(); ++k2) {
        if (k1 == 0 && k2 == 0) continue;
        noise.set_eta(k1, k2, j, comps[j][grid.flat(grid.index_of(k1), grid.index_of(k2))]);
      }
    }
  }
  return noise;
}

}  // namespace crspde::io
