#pragma once

#include <cstdint>
#include <string>

#include "sllg/field.hpp"
#include "sllg/integrate.hpp"

namespace sllg {

// Run identity stored alongside a state so a file is self-describing.
struct SnapshotMeta {
  double time = 0.0;
  double lambda = 1.0;
  double epsilon = 0.1;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::kStratonovichHeun;
};

struct Snapshot {
  SnapshotMeta meta;
  VectorField field;
};

// Binary state file, format version 1:
//   bytes 0..3   magic "SLLG"
//   4..7    u32  format version (1)
//   8..11   u32  dimension
//   12..15  u32  grid points per axis N
//   16..23  f64  time
//   24..31  f64  lambda
//   32..39  f64  epsilon
//   40..47  u64  seed
//   48..51  u32  scheme tag (0 heun, 1 corrected euler, 2 imex)
//   52..55  u32  CRC-32 of header bytes 0..51 and the whole payload
//   56..    payload: 3 components x N^dim points, IEEE-754 binary64
//           little-endian, component-major, axis 1 fastest
// Reads are bit-exact round trips of writes; any mismatch (magic, version,
// sizes, truncation, checksum) throws IoError.
void write_snapshot(const std::string& path, const VectorField& m,
                    const SnapshotMeta& meta);
Snapshot read_snapshot(const std::string& path);

// CRC-32 (IEEE 802.3, reflected polynomial 0xEDB88320) over a byte range;
// exposed for tests.
std::uint32_t crc32(const unsigned char* data, std::size_t len,
                    std::uint32_t seed = 0);

}  // namespace sllg
