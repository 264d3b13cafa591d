#pragma once

#include <iosfwd>
#include <string>

#include "tenkit/tensor.hpp"
#include "tenkit/tensor_ops.hpp"

namespace tenkit {

// Binary file formats. All integers and floats are little-endian.
//
// TNSR (dense tensor):
//   magic "TNSR", version u32 (=1), order N u32, N extents u64,
//   prod(I_n) doubles in storage order.
//
// TUKR (Tucker tensor):
//   magic "TUKR", version u32 (=1), order N u32, origin extents u64 x N,
//   core extents u64 x N, core doubles in storage order, then N factor
//   matrices, each as rows u64, cols u64, column-major doubles.

void write_tnsr(std::ostream& out, const DenseTensor& t);
void write_tnsr(const std::string& path, const DenseTensor& t);
DenseTensor read_tnsr(std::istream& in);
DenseTensor read_tnsr(const std::string& path);

void write_tukr(std::ostream& out, const TuckerTensor& tk);
void write_tukr(const std::string& path, const TuckerTensor& tk);
TuckerTensor read_tukr(std::istream& in);
TuckerTensor read_tukr(const std::string& path);

}  // namespace tenkit
