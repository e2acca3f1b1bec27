#pragma once

#include <filesystem>

#include "lpflow/core/field.hpp"

namespace lpflow {

// Flat binary layout, all little-endian:
//   "LLAB" | u32 version | u32 d | u64 N | f64 L | u32 rank | f64 samples...
// Samples are component-major, each component row-major over the grid.
inline constexpr std::uint32_t kFieldFormatVersion = 1;

void write_field(const std::filesystem::path& path, const Field& field);
Field read_field(const std::filesystem::path& path);

}  // namespace lpflow
