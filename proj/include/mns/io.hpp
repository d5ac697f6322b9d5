// Field snapshot persistence.
//
// Binary layout, little endian: magic "MNSF", u32 version=1, u32 n,
// f64 extent, f64 time_label, then 3*n^3 f64 samples (component blocks,
// x-fastest within each block).
#pragma once

#include <filesystem>

#include "mns/grid.hpp"

namespace mns {

void save_field(const std::filesystem::path& path, const VelocityField& f);
VelocityField load_field(const std::filesystem::path& path);

}  // namespace mns
