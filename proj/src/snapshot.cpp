#include "sllg/snapshot.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <vector>

#include "sllg/errors.hpp"

namespace sllg {

namespace {

constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 56;
constexpr std::size_t kChecksumOffset = 52;

void put_u32(unsigned char* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}

void put_u64(unsigned char* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}

void put_f64(unsigned char* p, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(p, bits);
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

double get_f64(const unsigned char* p) {
  const std::uint64_t bits = get_u64(p);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

const std::array<std::uint32_t, 256>& crc_table() {
  static const std::array<std::uint32_t, 256> table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int bit = 0; bit < 8; ++bit)
        c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  return table;
}

int scheme_tag(Scheme s) { return static_cast<int>(s); }

Scheme scheme_from_tag(std::uint32_t tag) {
  switch (tag) {
    case 0:
      return Scheme::kStratonovichHeun;
    case 1:
      return Scheme::kItoEulerCorrected;
    case 2:
      return Scheme::kImexHeun;
    default:
      throw IoError("snapshot: unknown scheme tag " + std::to_string(tag));
  }
}

}  // namespace

std::uint32_t crc32(const unsigned char* data, std::size_t len,
                    std::uint32_t seed) {
  const auto& t = crc_table();
  std::uint32_t c = seed ^ 0xFFFFFFFFu;
  for (std::size_t i = 0; i < len; ++i)
    c = t[(c ^ data[i]) & 0xFFu] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

void write_snapshot(const std::string& path, const VectorField& m,
                    const SnapshotMeta& meta) {
  if (!all_finite(m))
    throw PreconditionError("write_snapshot: non-finite field values");
  const std::size_t points = m.grid.size();
  std::vector<unsigned char> buf(kHeaderBytes + 3 * points * 8);

  std::memcpy(buf.data(), "SLLG", 4);
  put_u32(buf.data() + 4, kVersion);
  put_u32(buf.data() + 8, static_cast<std::uint32_t>(m.grid.dim));
  put_u32(buf.data() + 12, static_cast<std::uint32_t>(m.grid.n));
  put_f64(buf.data() + 16, meta.time);
  put_f64(buf.data() + 24, meta.lambda);
  put_f64(buf.data() + 32, meta.epsilon);
  put_u64(buf.data() + 40, meta.seed);
  put_u32(buf.data() + 48, static_cast<std::uint32_t>(scheme_tag(meta.scheme)));

  unsigned char* payload = buf.data() + kHeaderBytes;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < points; ++i)
      put_f64(payload + (static_cast<std::size_t>(c) * points + i) * 8,
              m.comp[c][i]);

  // Checksum covers everything except its own slot.
  std::uint32_t crc = crc32(buf.data(), kChecksumOffset);
  crc = crc32(payload, 3 * points * 8, crc);
  put_u32(buf.data() + kChecksumOffset, crc);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("write_snapshot: cannot open '" + path + "'");
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("write_snapshot: short write to '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("read_snapshot: cannot open '" + path + "'");
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (buf.size() < kHeaderBytes)
    throw IoError("read_snapshot: truncated header in '" + path + "'");
  if (std::memcmp(buf.data(), "SLLG", 4) != 0)
    throw IoError("read_snapshot: bad magic in '" + path + "'");
  const std::uint32_t version = get_u32(buf.data() + 4);
  if (version != kVersion)
    throw IoError("read_snapshot: unknown format version " +
                  std::to_string(version));
  const std::uint32_t dim = get_u32(buf.data() + 8);
  const std::uint32_t n = get_u32(buf.data() + 12);
  if (dim < 1 || dim > 3 || n < 4 || n % 2 != 0)
    throw IoError("read_snapshot: invalid grid header in '" + path + "'");

  const TorusGrid grid{static_cast<int>(dim), static_cast<int>(n)};
  const std::size_t points = grid.size();
  if (buf.size() != kHeaderBytes + 3 * points * 8)
    throw IoError("read_snapshot: payload length mismatch in '" + path + "'");

  std::uint32_t crc = crc32(buf.data(), kChecksumOffset);
  crc = crc32(buf.data() + kHeaderBytes, 3 * points * 8, crc);
  if (crc != get_u32(buf.data() + kChecksumOffset))
    throw IoError("read_snapshot: checksum mismatch in '" + path + "'");

  Snapshot s;
  s.meta.time = get_f64(buf.data() + 16);
  s.meta.lambda = get_f64(buf.data() + 24);
  s.meta.epsilon = get_f64(buf.data() + 32);
  s.meta.seed = get_u64(buf.data() + 40);
  s.meta.scheme = scheme_from_tag(get_u32(buf.data() + 48));
  s.field = VectorField(grid);
  const unsigned char* payload = buf.data() + kHeaderBytes;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < points; ++i)
      s.field.comp[c][i] =
          get_f64(payload + (static_cast<std::size_t>(c) * points + i) * 8);
  return s;
}

}  // namespace sllg
