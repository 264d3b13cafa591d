#include "tenkit/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tenkit/errors.hpp"

namespace tenkit {

namespace {

constexpr char kTnsrMagic[4] = {'T', 'N', 'S', 'R'};
constexpr char kTukrMagic[4] = {'T', 'U', 'K', 'R'};
constexpr std::uint32_t kVersion = 1;
// Sanity cap on the order field: anything larger is a corrupt header, not
// a real tensor.
constexpr std::uint32_t kMaxOrder = 64;

void write_bytes(std::ostream& out, const void* p, std::size_t n) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
  if (!out) throw IoError("write failed after " + std::to_string(n) + " bytes");
}

void read_bytes(std::istream& in, void* p, std::size_t n) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (in.gcount() != static_cast<std::streamsize>(n)) {
    throw FormatError("truncated file: expected " + std::to_string(n) +
                      " more bytes");
  }
}

void write_u32(std::ostream& out, std::uint32_t v) {
  char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  write_bytes(out, buf, 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  write_bytes(out, buf, 8);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char buf[4];
  read_bytes(in, buf, 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
  return v;
}

std::uint64_t read_u64(std::istream& in) {
  unsigned char buf[8];
  read_bytes(in, buf, 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

void write_f64_array(std::ostream& out, const double* data, std::size_t n) {
  if constexpr (std::endian::native == std::endian::little) {
    write_bytes(out, data, n * sizeof(double));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      write_u64(out, std::bit_cast<std::uint64_t>(data[i]));
    }
  }
}

void read_f64_array(std::istream& in, double* data, std::size_t n) {
  if constexpr (std::endian::native == std::endian::little) {
    read_bytes(in, data, n * sizeof(double));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      data[i] = std::bit_cast<double>(read_u64(in));
    }
  }
}

void check_magic(std::istream& in, const char expected[4],
                 const std::string& what) {
  char buf[4];
  read_bytes(in, buf, 4);
  if (std::memcmp(buf, expected, 4) != 0) {
    throw FormatError(what + ": bad magic bytes");
  }
  const std::uint32_t version = read_u32(in);
  if (version != kVersion) {
    throw FormatError(what + ": unsupported version " +
                      std::to_string(version));
  }
}

Shape read_shape(std::istream& in, std::uint32_t order,
                 const std::string& what) {
  if (order == 0 || order > kMaxOrder) {
    throw FormatError(what + ": implausible order " + std::to_string(order));
  }
  std::vector<std::size_t> dims(order);
  for (std::uint32_t i = 0; i < order; ++i) {
    dims[i] = static_cast<std::size_t>(read_u64(in));
  }
  try {
    return Shape(dims);
  } catch (const Error& e) {
    throw FormatError(what + ": invalid extents (" + e.what() + ")");
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  return in;
}

}  // namespace

void write_tnsr(std::ostream& out, const DenseTensor& t) {
  write_bytes(out, kTnsrMagic, 4);
  write_u32(out, kVersion);
  write_u32(out, static_cast<std::uint32_t>(t.shape().order()));
  for (std::size_t mode = 1; mode <= t.shape().order(); ++mode) {
    write_u64(out, t.shape().extent(mode));
  }
  write_f64_array(out, t.data(), t.size());
}

void write_tnsr(const std::string& path, const DenseTensor& t) {
  std::ofstream out = open_out(path);
  try {
    write_tnsr(out, t);
  } catch (const IoError&) {
    throw IoError("write failed: " + path);
  }
}

DenseTensor read_tnsr(std::istream& in) {
  check_magic(in, kTnsrMagic, "TNSR");
  const Shape shape = read_shape(in, read_u32(in), "TNSR");
  DenseTensor t{shape};
  read_f64_array(in, t.data(), t.size());
  return t;
}

DenseTensor read_tnsr(const std::string& path) {
  std::ifstream in = open_in(path);
  return read_tnsr(in);
}

void write_tukr(std::ostream& out, const TuckerTensor& tk) {
  const std::size_t n = tk.origin_shape.order();
  if (tk.core.shape().order() != n || tk.factors.size() != n) {
    throw DimensionMismatchError(
        "write_tukr: core, factors and origin shape disagree on order");
  }
  write_bytes(out, kTukrMagic, 4);
  write_u32(out, kVersion);
  write_u32(out, static_cast<std::uint32_t>(n));
  for (std::size_t mode = 1; mode <= n; ++mode) {
    write_u64(out, tk.origin_shape.extent(mode));
  }
  for (std::size_t mode = 1; mode <= n; ++mode) {
    write_u64(out, tk.core.shape().extent(mode));
  }
  write_f64_array(out, tk.core.data(), tk.core.size());
  for (const Matrix& u : tk.factors) {
    write_u64(out, u.rows());
    write_u64(out, u.cols());
    write_f64_array(out, u.data(), u.rows() * u.cols());
  }
}

void write_tukr(const std::string& path, const TuckerTensor& tk) {
  std::ofstream out = open_out(path);
  try {
    write_tukr(out, tk);
  } catch (const IoError&) {
    throw IoError("write failed: " + path);
  }
}

TuckerTensor read_tukr(std::istream& in) {
  check_magic(in, kTukrMagic, "TUKR");
  const std::uint32_t order = read_u32(in);
  const Shape origin = read_shape(in, order, "TUKR origin");
  const Shape core_shape = read_shape(in, order, "TUKR core");
  DenseTensor core{core_shape};
  read_f64_array(in, core.data(), core.size());

  std::vector<Matrix> factors;
  factors.reserve(order);
  for (std::uint32_t mode = 1; mode <= order; ++mode) {
    const std::uint64_t rows = read_u64(in);
    const std::uint64_t cols = read_u64(in);
    if (rows != origin.extent(mode) || cols != core_shape.extent(mode)) {
      throw FormatError("TUKR: factor " + std::to_string(mode) + " is " +
                        std::to_string(rows) + "x" + std::to_string(cols) +
                        ", expected " + std::to_string(origin.extent(mode)) +
                        "x" + std::to_string(core_shape.extent(mode)));
    }
    Matrix u(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    read_f64_array(in, u.data(), u.rows() * u.cols());
    factors.push_back(std::move(u));
  }
  return TuckerTensor{std::move(core), std::move(factors), origin};
}

TuckerTensor read_tukr(const std::string& path) {
  std::ifstream in = open_in(path);
  return read_tukr(in);
}

}  // namespace tenkit
