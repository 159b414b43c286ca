#include "tomoreg/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tomoreg {

namespace {

static_assert(std::endian::native == std::endian::little,
              "raw float format I/O assumes a little-endian host");

constexpr char kMagic[4] = {'M', 'T', 'F', '1'};

// All writes go through a temp file followed by a rename, so a file either
// exists complete or not at all.
class AtomicFile {
 public:
  explicit AtomicFile(const std::filesystem::path& path)
      : final_(path), tmp_(path.string() + ".tmp"),
        out_(tmp_, std::ios::binary | std::ios::trunc) {
    if (!out_) throw std::runtime_error("cannot open for writing: " + tmp_.string());
  }
  std::ofstream& stream() { return out_; }
  void commit() {
    out_.close();
    if (!out_) throw std::runtime_error("write failed: " + tmp_.string());
    std::filesystem::rename(tmp_, final_);
  }

 private:
  std::filesystem::path final_;
  std::filesystem::path tmp_;
  std::ofstream out_;
};

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), 4);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

}  // namespace

void write_raw_matrix(const std::filesystem::path& path, const Vec& values,
                      Index rows, Index cols) {
  if (values.size() != rows * cols)
    throw std::invalid_argument("write_raw_matrix: size mismatch");
  AtomicFile file(path);
  auto& os = file.stream();
  os.write(kMagic, 4);
  put_u32(os, static_cast<std::uint32_t>(rows));
  put_u32(os, static_cast<std::uint32_t>(cols));
  put_u32(os, 0);  // reserved
  os.write(reinterpret_cast<const char*>(values.data()),
           static_cast<std::streamsize>(sizeof(double)) * values.size());
  file.commit();
}

Vec read_raw_matrix(const std::filesystem::path& path, Index& rows, Index& cols) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("bad magic in " + path.string());
  rows = static_cast<Index>(get_u32(is));
  cols = static_cast<Index>(get_u32(is));
  get_u32(is);  // reserved
  Vec values(rows * cols);
  is.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(sizeof(double)) * values.size());
  if (!is) throw std::runtime_error("truncated raw float file: " + path.string());
  return values;
}

void write_raw_image(const std::filesystem::path& path, const ImageGrid& img) {
  write_raw_matrix(path, img.values, img.n, img.n);
}

ImageGrid read_raw_image(const std::filesystem::path& path) {
  Index rows = 0, cols = 0;
  Vec values = read_raw_matrix(path, rows, cols);
  if (rows != cols) throw std::runtime_error("raw image is not square: " + path.string());
  return ImageGrid(rows, std::move(values));
}

void write_raw_sinogram(const std::filesystem::path& path, const Sinogram& g) {
  write_raw_matrix(path, g.values, g.n_angles, g.n_bins);
}

Sinogram read_raw_sinogram(const std::filesystem::path& path, const GeometryConfig& geom) {
  Index rows = 0, cols = 0;
  Vec values = read_raw_matrix(path, rows, cols);
  if (rows != geom.n_angles || cols != geom.n_bins)
    throw std::runtime_error("sinogram shape does not match geometry: " + path.string());
  return Sinogram(rows, cols, std::move(values), geom.angles());
}

void write_pgm16(const std::filesystem::path& path, const Vec& values,
                 Index rows, Index cols) {
  if (values.size() != rows * cols)
    throw std::invalid_argument("write_pgm16: size mismatch");
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  const double scale = hi > lo ? 65535.0 / (hi - lo) : 0.0;
  AtomicFile file(path);
  auto& os = file.stream();
  os << "P5\n" << cols << " " << rows << "\n65535\n";
  for (Index i = 0; i < values.size(); ++i) {
    const auto v = static_cast<std::uint16_t>(std::lround((values[i] - lo) * scale));
    const char bytes[2] = {static_cast<char>(v >> 8), static_cast<char>(v & 0xff)};
    os.write(bytes, 2);  // PGM is big-endian
  }
  file.commit();
}

void write_metadata(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& entries) {
  AtomicFile file(path);
  for (const auto& [k, v] : entries) file.stream() << k << "=" << v << "\n";
  file.commit();
}

std::map<std::string, std::string> read_metadata(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path.string());
  std::map<std::string, std::string> entries;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    entries[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return entries;
}

}  // namespace tomoreg
