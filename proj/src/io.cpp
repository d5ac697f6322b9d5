#include "mns/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace mns {

namespace {
constexpr char kMagic[4] = {'M', 'N', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

template <typename T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("snapshot: truncated payload");
  return v;
}
}  // namespace

void save_field(const std::filesystem::path& path, const VelocityField& f) {
  require_finite(f.samples, "save_field");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_field: cannot open " + path.string());
  os.write(kMagic, 4);
  write_pod(os, kVersion);
  write_pod(os, static_cast<std::uint32_t>(f.grid.n));
  write_pod(os, f.grid.extent);
  write_pod(os, f.time_label);
  os.write(reinterpret_cast<const char*>(f.samples.data()),
           static_cast<std::streamsize>(f.samples.size() * sizeof(double)));
  if (!os) throw std::runtime_error("save_field: write failed");
}

VelocityField load_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_field: cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("load_field: bad magic bytes");
  const auto version = read_pod<std::uint32_t>(is);
  if (version != kVersion)
    throw std::runtime_error("load_field: unsupported snapshot version " +
                             std::to_string(version));
  const auto n = read_pod<std::uint32_t>(is);
  const auto extent = read_pod<double>(is);
  const auto time_label = read_pod<double>(is);
  GridSpec g = GridSpec::make(static_cast<int>(n), extent);
  VelocityField f = VelocityField::zero(g);
  f.time_label = time_label;
  is.read(reinterpret_cast<char*>(f.samples.data()),
          static_cast<std::streamsize>(f.samples.size() * sizeof(double)));
  if (!is) throw std::runtime_error("load_field: truncated payload");
  require_finite(f.samples, "load_field");
  return f;
}

}  // namespace mns
