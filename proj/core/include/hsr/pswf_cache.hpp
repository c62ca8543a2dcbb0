#pragma once

#include <filesystem>

#include "hsr/pswf.hpp"

namespace hsr {

/// Versioned JSON blob holding coefficients and eigenvalues. Doubles are
/// written in shortest round-trip form, so a reload is bit-identical.
void save_basis(const PSWFBasis& basis, const std::filesystem::path& file);
PSWFBasis load_basis(const std::filesystem::path& file);

/// File name used for (c, max_index) inside a cache directory.
std::filesystem::path basis_cache_path(const std::filesystem::path& dir, double c,
                                       std::size_t max_index);

/// Loads the cached basis for (c, max_index) or builds and stores it.
PSWFBasis load_or_build_basis(const std::filesystem::path& dir, double c,
                              std::size_t max_index);

}  // namespace hsr
