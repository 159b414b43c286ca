#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "tomoreg/types.hpp"

namespace tomoreg {

/// Raw float interchange format: 16-byte header (magic "MTF1", u32 rows,
/// u32 cols, u32 reserved = 0, little-endian) followed by row-major float64
/// little-endian values.
void write_raw_matrix(const std::filesystem::path& path, const Vec& values,
                      Index rows, Index cols);
Vec read_raw_matrix(const std::filesystem::path& path, Index& rows, Index& cols);

void write_raw_image(const std::filesystem::path& path, const ImageGrid& img);
ImageGrid read_raw_image(const std::filesystem::path& path);

void write_raw_sinogram(const std::filesystem::path& path, const Sinogram& g);
Sinogram read_raw_sinogram(const std::filesystem::path& path, const GeometryConfig& geom);

/// 16-bit binary PGM (P5) after affine rescale to [0, 65535].
void write_pgm16(const std::filesystem::path& path, const Vec& values,
                 Index rows, Index cols);

/// Sidecar metadata: sorted key=value lines, one per line.
void write_metadata(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& entries);
std::map<std::string, std::string> read_metadata(const std::filesystem::path& path);

}  // namespace tomoreg
