#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ctembed/types.hpp"

namespace ctembed {

enum class DatasetFormat { fts_binary, csv };

DatasetFormat dataset_format_from_name(const std::string& name);

// fts binary layout: magic "FTS1", u32 N, u32 T (little endian), then N*T
// little-endian float32 values in row-major order, no padding.
TimeSeriesMatrix load_dataset(const std::filesystem::path& path, DatasetFormat format);
void save_dataset(const std::filesystem::path& path, const TimeSeriesMatrix& data,
                  DatasetFormat format);

// sidecar CSV with header "index,x,y,slice"
VoxelMask load_mask(const std::filesystem::path& path);
void save_mask(const std::filesystem::path& path, const VoxelMask& mask);

// one value per line (0/1 or real amplitudes)
Vector load_value_column(const std::filesystem::path& path);
void save_value_column(const std::filesystem::path& path, const Vector& values);

// 8-bit binary PGM (P5)
void save_pgm(const std::filesystem::path& path, const std::vector<std::uint8_t>& pixels,
              int width, int height);

// Deterministic float formatting used by every CSV writer: shortest form that
// round-trips a double.
std::string format_value(double v);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace ctembed
