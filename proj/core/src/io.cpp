#include "ctembed/io.hpp"

#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ctembed {

namespace {

constexpr char kMagic[4] = {'F', 'T', 'S', '1'};

void put_u32_le(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

std::uint32_t get_u32_le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_f32_le(std::string& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32_le(out, bits);
}

float get_f32_le(const unsigned char* p) {
  const std::uint32_t bits = get_u32_le(p);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

std::string read_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_invalid("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_binary(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_invalid("cannot open file for writing: " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw_invalid("short write: " + path.string());
}

TimeSeriesMatrix load_fts(const std::filesystem::path& path) {
  const std::string bytes = read_binary(path);
  if (bytes.size() < 12) throw_invalid("fts header truncated: " + path.string());
  if (std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw_invalid("fts header: bad magic (expected FTS1): " + path.string());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::uint64_t n = get_u32_le(p + 4);
  const std::uint64_t t = get_u32_le(p + 8);
  const std::uint64_t expected = 12 + 4 * n * t;
  if (bytes.size() != expected)
    throw_invalid("fts payload size mismatch: " + path.string() + " declares " +
                  std::to_string(n) + "x" + std::to_string(t) + " (" + std::to_string(expected) +
                  " bytes) but holds " + std::to_string(bytes.size()));
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(t));
  const unsigned char* q = p + 12;
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < t; ++j, q += 4) {
      const float v = get_f32_le(q);
      if (!std::isfinite(v))
        throw_invalid("non-finite value at row " + std::to_string(i) + ", sample " +
                      std::to_string(j) + ": " + path.string());
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  return TimeSeriesMatrix(std::move(m));
}

void save_fts(const std::filesystem::path& path, const TimeSeriesMatrix& data) {
  std::string bytes;
  const auto n = static_cast<std::uint32_t>(data.n_points());
  const auto t = static_cast<std::uint32_t>(data.n_samples());
  bytes.reserve(12 + 4ull * n * t);
  bytes.append(kMagic, 4);
  put_u32_le(bytes, n);
  put_u32_le(bytes, t);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < t; ++j) put_f32_le(bytes, static_cast<float>(data.values(i, j)));
  write_binary(path, bytes);
}

// Splits on commas and/or whitespace; both delimiter styles are accepted.
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char c : line) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) fields.push_back(std::move(cur));
  return fields;
}

double parse_number(const std::string& field, const std::filesystem::path& path, std::size_t line_no) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || end != field.data() + field.size())
    throw_invalid("cannot parse numeric field '" + field + "' at line " + std::to_string(line_no) +
                  ": " + path.string());
  if (!std::isfinite(v))
    throw_invalid("non-finite value at line " + std::to_string(line_no) + ": " + path.string());
  return v;
}

TimeSeriesMatrix load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_invalid("cannot open file: " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_number(f, path, line_no));
    if (!rows.empty() && row.size() != rows.front().size())
      throw_invalid("row length mismatch at line " + std::to_string(line_no) + " (" +
                    std::to_string(row.size()) + " vs " + std::to_string(rows.front().size()) +
                    "): " + path.string());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw_invalid("empty dataset: " + path.string());
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return TimeSeriesMatrix(std::move(m));
}

void save_csv(const std::filesystem::path& path, const TimeSeriesMatrix& data) {
  std::string out;
  for (Eigen::Index i = 0; i < data.n_points(); ++i) {
    for (Eigen::Index j = 0; j < data.n_samples(); ++j) {
      if (j) out.push_back(',');
      out += format_value(data.values(i, j));
    }
    out.push_back('\n');
  }
  write_text_file(path, out);
}

}  // namespace

DatasetFormat dataset_format_from_name(const std::string& name) {
  if (name == "fts") return DatasetFormat::fts_binary;
  if (name == "csv") return DatasetFormat::csv;
  throw_invalid("unknown dataset format '" + name + "' (expected fts or csv)");
}

TimeSeriesMatrix load_dataset(const std::filesystem::path& path, DatasetFormat format) {
  return format == DatasetFormat::fts_binary ? load_fts(path) : load_csv(path);
}

void save_dataset(const std::filesystem::path& path, const TimeSeriesMatrix& data,
                  DatasetFormat format) {
  if (format == DatasetFormat::fts_binary)
    save_fts(path, data);
  else
    save_csv(path, data);
}

VoxelMask load_mask(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_invalid("cannot open mask: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw_invalid("empty mask file: " + path.string());
  {
    const auto fields = split_fields(line);
    if (fields != std::vector<std::string>{"index", "x", "y", "slice"})
      throw_invalid("mask header must be 'index,x,y,slice': " + path.string());
  }
  VoxelMask mask;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 4)
      throw_invalid("mask row needs 4 fields at line " + std::to_string(line_no) + ": " +
                    path.string());
    mask.index.push_back(static_cast<int>(parse_number(fields[0], path, line_no)));
    mask.site.push_back({static_cast<int>(parse_number(fields[1], path, line_no)),
                         static_cast<int>(parse_number(fields[2], path, line_no)),
                         static_cast<int>(parse_number(fields[3], path, line_no))});
  }
  return mask;
}

void save_mask(const std::filesystem::path& path, const VoxelMask& mask) {
  std::string out = "index,x,y,slice\n";
  for (std::size_t i = 0; i < mask.size(); ++i) {
    out += std::to_string(mask.index[i]) + ',' + std::to_string(mask.site[i].x) + ',' +
           std::to_string(mask.site[i].y) + ',' + std::to_string(mask.site[i].slice) + '\n';
  }
  write_text_file(path, out);
}

Vector load_value_column(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_invalid("cannot open file: " + path.string());
  std::vector<double> vals;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 1)
      throw_invalid("expected one value per line at line " + std::to_string(line_no) + ": " +
                    path.string());
    vals.push_back(parse_number(fields[0], path, line_no));
  }
  if (vals.empty()) throw_invalid("empty value file: " + path.string());
  return Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

void save_value_column(const std::filesystem::path& path, const Vector& values) {
  std::string out;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    out += format_value(values[i]);
    out.push_back('\n');
  }
  write_text_file(path, out);
}

void save_pgm(const std::filesystem::path& path, const std::vector<std::uint8_t>& pixels,
              int width, int height) {
  if (width <= 0 || height <= 0 || pixels.size() != static_cast<std::size_t>(width) * height)
    throw_invalid("pgm dimensions do not match pixel count");
  std::string bytes = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  bytes.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
  write_binary(path, bytes);
}

std::string format_value(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw_invalid("value formatting failed");
  return std::string(buf.data(), end);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  write_binary(path, content);
}

std::string read_text_file(const std::filesystem::path& path) { return read_binary(path); }

}  // namespace ctembed
