#pragma once

#include <filesystem>
#include <iosfwd>

#include "mixsch/field.hpp"

namespace mixsch {

/// MGF1 binary layout: the 4 bytes "MGF1", nx and ny as little-endian uint64,
/// lx and ly as little-endian float64, then nx*ny little-endian float64 values
/// in x-major order.
void write_mgf1(std::ostream& out, const Field& f);
void write_mgf1(const std::filesystem::path& path, const Field& f);
Field read_mgf1(std::istream& in);
Field read_mgf1(const std::filesystem::path& path);

/// "x,y,value" rows with a header line.
void write_csv(std::ostream& out, const Field& f);
void write_csv(const std::filesystem::path& path, const Field& f);

}  // namespace mixsch
