#include "tenkit/tensor_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tenkit/errors.hpp"
#include "tenkit/parallel.hpp"

namespace tenkit {

namespace {

// Geometry of the mode's fiber space. Fiber j (0-based) fixes all indices
// but the mode's; ascending j enumerates the unfolding's columns in order
// (lowest mode fastest). With stride = prod of lower extents, fiber j
// starts at flat offset (j / stride) * stride * extent + (j % stride) and
// its elements are `stride` apart. Consecutive fibers within one "panel"
// (fixed higher indices, j % stride sweeping) are offset by 1, which the
// kernels exploit for contiguous inner loops.
struct FiberSpace {
  std::size_t extent = 0;
  std::size_t stride = 0;
  std::size_t fibers = 0;

  static FiberSpace of(const Shape& s, std::size_t mode) {
    FiberSpace f;
    f.extent = s.extent(mode);  // validates the mode
    f.stride = s.stride(mode);
    f.fibers = s.element_count() / f.extent;
    return f;
  }

  std::size_t base(std::size_t j) const {
    return (j / stride) * stride * extent + (j % stride);
  }
};

std::size_t chunk_count(std::size_t items, std::size_t chunk) {
  return items == 0 ? 0 : (items + chunk - 1) / chunk;
}

double chunked_sum_sq(const double* x, std::size_t n) {
  const std::size_t nchunks = chunk_count(n, kScalarChunk);
  std::vector<double> partials(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
    const std::size_t lo = static_cast<std::size_t>(ci) * kScalarChunk;
    const std::size_t hi = std::min(n, lo + kScalarChunk);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += x[i] * x[i];
    partials[static_cast<std::size_t>(ci)] = acc;
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

double chunked_sum_sq_diff(const double* a, const double* b, std::size_t n) {
  const std::size_t nchunks = chunk_count(n, kScalarChunk);
  std::vector<double> partials(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
    const std::size_t lo = static_cast<std::size_t>(ci) * kScalarChunk;
    const std::size_t hi = std::min(n, lo + kScalarChunk);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double d = b[i] - a[i];
      acc += d * d;
    }
    partials[static_cast<std::size_t>(ci)] = acc;
  }
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

}  // namespace

Matrix matricize(const DenseTensor& t, std::size_t mode) {
  const FiberSpace fs = FiberSpace::of(t.shape(), mode);
  Matrix out(fs.extent, fs.fibers);
  const double* src = t.data();
  double* dst = out.data();
  if (fs.stride == 1) {
    // Mode 1: the unfolding coincides with the flat layout.
    std::copy(src, src + t.size(), dst);
    return out;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(fs.fibers); ++j) {
    const std::size_t base = fs.base(static_cast<std::size_t>(j));
    double* col = dst + static_cast<std::size_t>(j) * fs.extent;
    for (std::size_t i = 0; i < fs.extent; ++i) {
      col[i] = src[base + i * fs.stride];
    }
  }
  return out;
}

DenseTensor tensorize(const Matrix& m, std::size_t mode, const Shape& target) {
  const FiberSpace fs = FiberSpace::of(target, mode);
  if (m.rows() != fs.extent || m.cols() != fs.fibers) {
    throw DimensionMismatchError(
        "tensorize: matrix " + std::to_string(m.rows()) + "x" +
        std::to_string(m.cols()) + " does not unfold shape " +
        target.to_string() + " along mode " + std::to_string(mode));
  }
  DenseTensor out(target);
  const double* src = m.data();
  double* dst = out.data();
  if (fs.stride == 1) {
    std::copy(src, src + out.size(), dst);
    return out;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(fs.fibers); ++j) {
    const std::size_t base = fs.base(static_cast<std::size_t>(j));
    const double* col = src + static_cast<std::size_t>(j) * fs.extent;
    for (std::size_t i = 0; i < fs.extent; ++i) {
      dst[base + i * fs.stride] = col[i];
    }
  }
  return out;
}

DenseTensor mode_n_product(const DenseTensor& t, const Matrix& u,
                           std::size_t mode) {
  const FiberSpace fs = FiberSpace::of(t.shape(), mode);
  if (u.cols() != fs.extent) {
    throw DimensionMismatchError(
        "mode_n_product: factor has " + std::to_string(u.cols()) +
        " columns, mode " + std::to_string(mode) + " has extent " +
        std::to_string(fs.extent));
  }
  std::vector<std::size_t> out_dims = t.shape().dims();
  out_dims[mode - 1] = u.rows();
  DenseTensor out{Shape(out_dims)};

  // ut column r is u's row r, contiguous for the per-fiber dot products.
  const Matrix ut = transpose(u);
  const std::size_t r_out = u.rows();
  const double* src = t.data();
  double* dst = out.data();
  const std::size_t nchunks = chunk_count(fs.fibers, kFiberChunk);
#pragma omp parallel for schedule(static)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
    std::vector<double> fiber(fs.extent);
    const std::size_t lo = static_cast<std::size_t>(ci) * kFiberChunk;
    const std::size_t hi = std::min(fs.fibers, lo + kFiberChunk);
    for (std::size_t j = lo; j < hi; ++j) {
      const std::size_t base = fs.base(j);
      for (std::size_t i = 0; i < fs.extent; ++i) {
        fiber[i] = src[base + i * fs.stride];
      }
      const std::size_t obase = (j / fs.stride) * fs.stride * r_out +
                                (j % fs.stride);
      for (std::size_t r = 0; r < r_out; ++r) {
        const double* urow = ut.data() + r * fs.extent;
        double acc = 0.0;
        for (std::size_t i = 0; i < fs.extent; ++i) acc += fiber[i] * urow[i];
        dst[obase + r * fs.stride] = acc;
      }
    }
  }
  return out;
}

DenseTensor multi_mode_product(const DenseTensor& t,
                               const std::vector<ModeFactor>& factors) {
  std::vector<const ModeFactor*> sorted;
  sorted.reserve(factors.size());
  for (const ModeFactor& f : factors) sorted.push_back(&f);
  std::sort(sorted.begin(), sorted.end(),
            [](const ModeFactor* a, const ModeFactor* b) {
              return a->mode < b->mode;
            });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i]->mode == sorted[i + 1]->mode) {
      throw InvalidModeError("multi_mode_product: duplicate mode " +
                             std::to_string(sorted[i]->mode));
    }
  }
  DenseTensor result = t;
  for (const ModeFactor* f : sorted) {
    result = mode_n_product(result, f->factor, f->mode);
  }
  return result;
}

Matrix unfold_times(const DenseTensor& t, std::size_t mode, const Matrix& m) {
  const FiberSpace fs = FiberSpace::of(t.shape(), mode);
  if (m.rows() != fs.fibers) {
    throw DimensionMismatchError(
        "unfold_times: m has " + std::to_string(m.rows()) + " rows, mode " +
        std::to_string(mode) + " unfolding has " + std::to_string(fs.fibers) +
        " columns");
  }
  const std::size_t ccols = m.cols();
  const std::size_t extent = fs.extent;
  const double* src = t.data();
  const std::size_t nchunks = chunk_count(fs.fibers, kFiberChunk);
  // Per-chunk partial products, combined in ascending chunk order below so
  // the reduction order is independent of the thread count.
  std::vector<double> partials(nchunks * extent * ccols, 0.0);

#pragma omp parallel for schedule(static)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
    const std::size_t lo = static_cast<std::size_t>(ci) * kFiberChunk;
    const std::size_t hi = std::min(fs.fibers, lo + kFiberChunk);
    double* part = partials.data() + static_cast<std::size_t>(ci) * extent * ccols;
    if (fs.stride == 1) {
      // Fibers are contiguous columns of the flat (extent x fibers) layout.
      for (std::size_t j = lo; j < hi; ++j) {
        const double* fiber = src + j * extent;
        for (std::size_t c = 0; c < ccols; ++c) {
          const double w = m(j, c);
          if (w == 0.0) continue;
          double* pc = part + c * extent;
          for (std::size_t i = 0; i < extent; ++i) pc[i] += fiber[i] * w;
        }
      }
      continue;
    }
    // Fibers [lo, hi) split into runs inside a single panel; within a run
    // the fiber index advances the flat offset by 1, giving contiguous
    // inner dot products. The extent is tiled to keep the run block in
    // cache across the m columns.
    std::size_t j0 = lo;
    while (j0 < hi) {
      const std::size_t panel = j0 / fs.stride;
      const std::size_t run_end = std::min(hi, (panel + 1) * fs.stride);
      const std::size_t run = run_end - j0;
      const std::size_t base0 = panel * fs.stride * extent + (j0 % fs.stride);
      for (std::size_t i0 = 0; i0 < extent; i0 += 256) {
        const std::size_t i1 = std::min(extent, i0 + 256);
        for (std::size_t c = 0; c < ccols; ++c) {
          const double* mc = m.data() + c * fs.fibers + j0;
          double* pc = part + c * extent;
          for (std::size_t i = i0; i < i1; ++i) {
            const double* ai = src + base0 + i * fs.stride;
            double acc = 0.0;
            for (std::size_t jj = 0; jj < run; ++jj) acc += ai[jj] * mc[jj];
            pc[i] += acc;
          }
        }
      }
      j0 = run_end;
    }
  }

  Matrix out(extent, ccols);
  double* od = out.data();
  for (std::size_t ci = 0; ci < nchunks; ++ci) {
    const double* part = partials.data() + ci * extent * ccols;
    for (std::size_t k = 0; k < extent * ccols; ++k) od[k] += part[k];
  }
  return out;
}

Matrix unfold_t_times(const DenseTensor& t, std::size_t mode, const Matrix& m) {
  const FiberSpace fs = FiberSpace::of(t.shape(), mode);
  if (m.rows() != fs.extent) {
    throw DimensionMismatchError(
        "unfold_t_times: m has " + std::to_string(m.rows()) + " rows, mode " +
        std::to_string(mode) + " has extent " + std::to_string(fs.extent));
  }
  const std::size_t ccols = m.cols();
  const std::size_t extent = fs.extent;
  Matrix out(fs.fibers, ccols);
  // mt row stripe i (contiguous ccols values) is m's row i.
  const Matrix mt = transpose(m);
  const double* src = t.data();
  const double* mtp = mt.data();
  double* od = out.data();
  const std::size_t nchunks = chunk_count(fs.fibers, kFiberChunk);

  // No reduction here: each output row is one fiber's contraction,
  // accumulated serially over the extent, so any parallel split of the
  // fiber space yields identical results.
#pragma omp parallel for schedule(static)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
    const std::size_t lo = static_cast<std::size_t>(ci) * kFiberChunk;
    const std::size_t hi = std::min(fs.fibers, lo + kFiberChunk);
    if (fs.stride == 1) {
      for (std::size_t j = lo; j < hi; ++j) {
        const double* fiber = src + j * extent;
        for (std::size_t c = 0; c < ccols; ++c) {
          const double* mc = m.data() + c * extent;
          double acc = 0.0;
          for (std::size_t i = 0; i < extent; ++i) acc += fiber[i] * mc[i];
          od[j + c * fs.fibers] = acc;
        }
      }
      continue;
    }
    std::vector<double> acc(8 * ccols);
    std::size_t j0 = lo;
    while (j0 < hi) {
      const std::size_t panel = j0 / fs.stride;
      const std::size_t run_end = std::min(hi, (panel + 1) * fs.stride);
      const std::size_t base0 = panel * fs.stride * extent + (j0 % fs.stride);
      // 8-row tiles: per extent step, eight contiguous fiber values update
      // all output columns from one hot stripe of mt.
      for (std::size_t rb = 0; rb < run_end - j0; rb += 8) {
        const std::size_t rw = std::min<std::size_t>(8, run_end - j0 - rb);
        std::fill(acc.begin(), acc.begin() + rw * ccols, 0.0);
        for (std::size_t i = 0; i < extent; ++i) {
          const double* a = src + base0 + rb + i * fs.stride;
          const double* bt = mtp + i * ccols;
          for (std::size_t rr = 0; rr < rw; ++rr) {
            const double av = a[rr];
            double* arow = acc.data() + rr * ccols;
            for (std::size_t c = 0; c < ccols; ++c) arow[c] += av * bt[c];
          }
        }
        for (std::size_t rr = 0; rr < rw; ++rr) {
          const std::size_t j = j0 + rb + rr;
          for (std::size_t c = 0; c < ccols; ++c) {
            od[j + c * fs.fibers] = acc[rr * ccols + c];
          }
        }
      }
      j0 = run_end;
    }
  }
  return out;
}

Matrix mode_gram(const DenseTensor& t, std::size_t mode) {
  const FiberSpace fs = FiberSpace::of(t.shape(), mode);
  const std::size_t extent = fs.extent;
  const double* src = t.data();
  const std::size_t nchunks = chunk_count(fs.fibers, kFiberChunk);
  std::vector<double> partials(nchunks * extent * extent, 0.0);

#pragma omp parallel for schedule(static)
  for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(nchunks); ++ci) {
    const std::size_t lo = static_cast<std::size_t>(ci) * kFiberChunk;
    const std::size_t hi = std::min(fs.fibers, lo + kFiberChunk);
    double* part = partials.data() +
                   static_cast<std::size_t>(ci) * extent * extent;
    if (fs.stride == 1) {
      for (std::size_t j = lo; j < hi; ++j) {
        const double* fiber = src + j * extent;
        for (std::size_t c = 0; c < extent; ++c) {
          const double w = fiber[c];
          double* pc = part + c * extent;
          for (std::size_t i = 0; i <= c; ++i) pc[i] += fiber[i] * w;
        }
      }
      continue;
    }
    std::size_t j0 = lo;
    while (j0 < hi) {
      const std::size_t panel = j0 / fs.stride;
      const std::size_t run_end = std::min(hi, (panel + 1) * fs.stride);
      const std::size_t run = run_end - j0;
      const std::size_t base0 = panel * fs.stride * extent + (j0 % fs.stride);
      for (std::size_t c = 0; c < extent; ++c) {
        const double* ac = src + base0 + c * fs.stride;
        double* pc = part + c * extent;
        for (std::size_t i = 0; i <= c; ++i) {
          const double* ai = src + base0 + i * fs.stride;
          double acc = 0.0;
          for (std::size_t jj = 0; jj < run; ++jj) acc += ai[jj] * ac[jj];
          pc[i] += acc;
        }
      }
      j0 = run_end;
    }
  }

  Matrix g(extent, extent);
  for (std::size_t ci = 0; ci < nchunks; ++ci) {
    const double* part = partials.data() + ci * extent * extent;
    for (std::size_t c = 0; c < extent; ++c) {
      for (std::size_t i = 0; i <= c; ++i) {
        g(i, c) += part[i + c * extent];
      }
    }
  }
  for (std::size_t c = 0; c < extent; ++c) {
    for (std::size_t i = c + 1; i < extent; ++i) g(i, c) = g(c, i);
  }
  return g;
}

double frobenius_norm(const DenseTensor& t) {
  return std::sqrt(chunked_sum_sq(t.data(), t.size()));
}

double relative_error(const DenseTensor& a, const DenseTensor& b) {
  if (a.shape() != b.shape()) {
    throw DimensionMismatchError("relative_error: shapes " +
                                 a.shape().to_string() + " vs " +
                                 b.shape().to_string());
  }
  const double ref_sq = chunked_sum_sq(a.data(), a.size());
  if (ref_sq == 0.0) {
    throw ZeroReferenceError("relative_error: reference tensor has zero norm");
  }
  const double diff_sq = chunked_sum_sq_diff(a.data(), b.data(), a.size());
  return std::sqrt(diff_sq / ref_sq);
}

double TuckerTensor::max_orthonormality_defect() const {
  double worst = 0.0;
  for (const Matrix& u : factors) {
    Matrix g = matmul_tn(u, u);
    for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
    if (g.cols() == 0) continue;
    worst = std::max(worst, frobenius_norm(g) / static_cast<double>(g.cols()));
  }
  return worst;
}

DenseTensor reconstruct(const TuckerTensor& tk) {
  if (tk.factors.size() != tk.core.shape().order()) {
    throw DimensionMismatchError("reconstruct: " +
                              std::to_string(tk.factors.size()) +
                              " factors for an order-" +
                              std::to_string(tk.core.shape().order()) +
                              " core");
  }
  std::vector<ModeFactor> mf;
  mf.reserve(tk.factors.size());
  for (std::size_t n = 0; n < tk.factors.size(); ++n) {
    mf.push_back({tk.factors[n], n + 1});
  }
  DenseTensor out = multi_mode_product(tk.core, mf);
  if (out.shape() != tk.origin_shape) {
    throw DimensionMismatchError("reconstruct: factors yield shape " +
                                 out.shape().to_string() + ", origin is " +
                                 tk.origin_shape.to_string());
  }
  return out;
}

}  // namespace tenkit
