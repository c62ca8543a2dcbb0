#include "hsr/pswf_cache.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "hsr/error.hpp"

namespace hsr {
namespace {

constexpr int kCacheVersion = 1;
constexpr const char* kCacheFormat = "hankelsr-pswf-basis";

}  // namespace

void save_basis(const PSWFBasis& basis, const std::filesystem::path& file) {
  nlohmann::json j;
  j["format"] = kCacheFormat;
  j["version"] = kCacheVersion;
  j["c"] = basis.c;
  j["max_index"] = basis.max_index;
  j["legendre_coeffs"] = basis.legendre_coeffs;
  j["chi"] = basis.chi;
  std::vector<double> re, im;
  for (const auto& m : basis.mu) {
    re.push_back(m.real());
    im.push_back(m.imag());
  }
  j["mu_re"] = re;
  j["mu_im"] = im;

  std::ofstream out(file);
  if (!out) fail_io("cannot write PSWF cache " + file.string());
  out << j.dump();
  if (!out) fail_io("failed writing PSWF cache " + file.string());
}

PSWFBasis load_basis(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) fail_io("cannot read PSWF cache " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail_io("malformed PSWF cache " + file.string() + ": " + e.what());
  }
  if (j.value("format", "") != kCacheFormat || j.value("version", 0) != kCacheVersion)
    fail_io("unsupported PSWF cache format in " + file.string());

  PSWFBasis basis;
  try {
    basis.c = j.at("c").get<double>();
    basis.max_index = j.at("max_index").get<std::size_t>();
    basis.legendre_coeffs = j.at("legendre_coeffs").get<std::vector<std::vector<double>>>();
    basis.chi = j.at("chi").get<std::vector<double>>();
    const auto re = j.at("mu_re").get<std::vector<double>>();
    const auto im = j.at("mu_im").get<std::vector<double>>();
    if (re.size() != im.size()) fail_io("PSWF cache eigenvalue arrays differ in length");
    for (std::size_t k = 0; k < re.size(); ++k) basis.mu.emplace_back(re[k], im[k]);
  } catch (const nlohmann::json::exception& e) {
    fail_io("malformed PSWF cache " + file.string() + ": " + e.what());
  }
  if (basis.legendre_coeffs.size() != basis.max_index + 1 ||
      basis.mu.size() != basis.max_index + 1 || basis.chi.size() != basis.max_index + 1)
    fail_io("PSWF cache " + file.string() + " is inconsistent with its max_index");
  return basis;
}

std::filesystem::path basis_cache_path(const std::filesystem::path& dir, double c,
                                       std::size_t max_index) {
  char name[96];
  std::snprintf(name, sizeof name, "pswf_c%.17g_m%zu.json", c, max_index);
  return dir / name;
}

PSWFBasis load_or_build_basis(const std::filesystem::path& dir, double c,
                              std::size_t max_index) {
  const auto file = basis_cache_path(dir, c, max_index);
  if (std::filesystem::exists(file)) {
    PSWFBasis basis = load_basis(file);
    if (basis.c == c && basis.max_index == max_index) return basis;
  }
  PSWFBasis basis = build_basis(c, max_index);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  save_basis(basis, file);
  return basis;
}

}  // namespace hsr
