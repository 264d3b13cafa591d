#include "tenkit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "tenkit/errors.hpp"

namespace tenkit {

namespace {

double sign_like(double magnitude, double sign_source) {
  return sign_source >= 0.0 ? std::fabs(magnitude) : -std::fabs(magnitude);
}

// Flips the sign of column pair (u col, v col) so the largest-magnitude
// entry of the u column is positive. Ties resolve to the first extreme
// entry, which keeps the convention deterministic.
void fix_column_signs(Matrix* u, Matrix* v) {
  if (u == nullptr) return;
  for (std::size_t c = 0; c < u->cols(); ++c) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < u->rows(); ++i) {
      const double mag = std::fabs((*u)(i, c));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if ((*u)(arg, c) >= 0.0) continue;
    for (std::size_t i = 0; i < u->rows(); ++i) (*u)(i, c) = -(*u)(i, c);
    if (v != nullptr && c < v->cols()) {
      for (std::size_t i = 0; i < v->rows(); ++i) (*v)(i, c) = -(*v)(i, c);
    }
  }
}

// Bidiagonalization + implicit-shift QR sweeps on an m x n matrix with
// m >= n. Returns unsorted singular values in w and (optionally) thin U in
// u and square V in v. The classic one-sided-scaled Householder phase and
// Golub-Kahan bulge chase.
void svd_golub_kahan(Matrix& u, std::vector<double>& w, Matrix& v,
                     bool want_vectors) {
  const std::size_t m = u.rows();
  const std::size_t n = u.cols();
  std::vector<double> rv1(n, 0.0);
  std::vector<double> tmp(n, 0.0);
  const double eps = std::numeric_limits<double>::epsilon();

  // Householder reduction to bidiagonal form.
  double g = 0.0;
  double scale = 0.0;
  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rv1[i] = scale * g;
    g = scale = 0.0;
    double s = 0.0;
    for (std::size_t k = i; k < m; ++k) scale += std::fabs(u(k, i));
    if (scale != 0.0) {
      for (std::size_t k = i; k < m; ++k) {
        u(k, i) /= scale;
        s += u(k, i) * u(k, i);
      }
      double f = u(i, i);
      g = -sign_like(std::sqrt(s), f);
      const double h = f * g - s;
      u(i, i) = f - g;
      for (std::size_t j = i + 1; j < n; ++j) {
        double dot = 0.0;
        for (std::size_t k = i; k < m; ++k) dot += u(k, i) * u(k, j);
        f = dot / h;
        for (std::size_t k = i; k < m; ++k) u(k, j) += f * u(k, i);
      }
      for (std::size_t k = i; k < m; ++k) u(k, i) *= scale;
    }
    w[i] = scale * g;

    g = scale = 0.0;
    s = 0.0;
    if (i + 1 < n) {
      for (std::size_t k = i + 1; k < n; ++k) scale += std::fabs(u(i, k));
      if (scale != 0.0) {
        for (std::size_t k = i + 1; k < n; ++k) {
          u(i, k) /= scale;
          s += u(i, k) * u(i, k);
        }
        double f = u(i, i + 1);
        g = -sign_like(std::sqrt(s), f);
        const double h = f * g - s;
        u(i, i + 1) = f - g;
        for (std::size_t k = i + 1; k < n; ++k) tmp[k] = u(i, k) / h;
        for (std::size_t j = i + 1; j < m; ++j) {
          double dot = 0.0;
          for (std::size_t k = i + 1; k < n; ++k) dot += u(j, k) * u(i, k);
          for (std::size_t k = i + 1; k < n; ++k) u(j, k) += dot * tmp[k];
        }
        for (std::size_t k = i + 1; k < n; ++k) u(i, k) *= scale;
      }
    }
    anorm = std::max(anorm, std::fabs(w[i]) + std::fabs(rv1[i]));
  }

  // Accumulate the right-hand transformation into v.
  if (want_vectors) {
    std::size_t l = n;
    for (std::size_t i = n; i-- > 0;) {
      if (i + 1 < n) {
        if (g != 0.0) {
          // Double division avoids possible underflow in u(i, l) * g.
          for (std::size_t j = l; j < n; ++j) {
            v(j, i) = (u(i, j) / u(i, l)) / g;
          }
          for (std::size_t j = l; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t k = l; k < n; ++k) dot += u(i, k) * v(k, j);
            for (std::size_t k = l; k < n; ++k) v(k, j) += dot * v(k, i);
          }
        }
        for (std::size_t j = l; j < n; ++j) {
          v(i, j) = 0.0;
          v(j, i) = 0.0;
        }
      }
      v(i, i) = 1.0;
      g = rv1[i];
      l = i;
    }
  }

  // Accumulate the left-hand transformation in place in u.
  if (want_vectors) {
    for (std::size_t i = n; i-- > 0;) {
      const std::size_t l = i + 1;
      g = w[i];
      for (std::size_t j = l; j < n; ++j) u(i, j) = 0.0;
      if (g != 0.0) {
        g = 1.0 / g;
        for (std::size_t j = l; j < n; ++j) {
          double dot = 0.0;
          for (std::size_t k = l; k < m; ++k) dot += u(k, i) * u(k, j);
          const double f = (dot / u(i, i)) * g;
          for (std::size_t k = i; k < m; ++k) u(k, j) += f * u(k, i);
        }
        for (std::size_t j = i; j < m; ++j) u(j, i) *= g;
      } else {
        for (std::size_t j = i; j < m; ++j) u(j, i) = 0.0;
      }
      u(i, i) += 1.0;
    }
  }

  // Diagonalize the bidiagonal form by implicit-shift QR sweeps.
  const long max_steps = 100 * static_cast<long>(n);
  long steps = 0;
  for (std::size_t k = n; k-- > 0;) {
    for (;;) {
      // Look for a split point: rv1[l] negligible ends the active block,
      // a negligible w[l-1] above it calls for cancellation first.
      bool cancel = true;
      std::size_t l = k + 1;
      while (true) {
        --l;
        if (std::fabs(rv1[l]) <= eps * anorm) {
          cancel = false;
          break;
        }
        if (std::fabs(w[l - 1]) <= eps * anorm) break;
      }
      if (cancel) {
        const std::size_t nm = l - 1;
        double c = 0.0;
        double s = 1.0;
        for (std::size_t i = l; i <= k; ++i) {
          double f = s * rv1[i];
          rv1[i] = c * rv1[i];
          if (std::fabs(f) <= eps * anorm) break;
          g = w[i];
          double h = std::hypot(f, g);
          w[i] = h;
          h = 1.0 / h;
          c = g * h;
          s = -f * h;
          if (want_vectors) {
            for (std::size_t j = 0; j < m; ++j) {
              const double y = u(j, nm);
              const double z = u(j, i);
              u(j, nm) = y * c + z * s;
              u(j, i) = z * c - y * s;
            }
          }
        }
      }
      double z = w[k];
      if (l == k) {
        if (z < 0.0) {
          w[k] = -z;
          if (want_vectors) {
            for (std::size_t j = 0; j < n; ++j) v(j, k) = -v(j, k);
          }
        }
        break;
      }
      if (++steps > max_steps) {
        throw NoConvergenceError(
            "dense_svd: no convergence after " + std::to_string(max_steps) +
            " implicit-shift steps");
      }
      // Wilkinson-style shift from the trailing 2x2, then chase the bulge.
      double x = w[l];
      const std::size_t nm = k - 1;
      double y = w[nm];
      g = rv1[nm];
      double h = rv1[k];
      double f = ((y - z) * (y + z) + (g - h) * (g + h)) / (2.0 * h * y);
      g = std::hypot(f, 1.0);
      f = ((x - z) * (x + z) + h * ((y / (f + sign_like(g, f))) - h)) / x;
      double c = 1.0;
      double s = 1.0;
      for (std::size_t j = l; j <= nm; ++j) {
        const std::size_t i = j + 1;
        g = rv1[i];
        y = w[i];
        h = s * g;
        g = c * g;
        z = std::hypot(f, h);
        rv1[j] = z;
        c = f / z;
        s = h / z;
        f = x * c + g * s;
        g = g * c - x * s;
        h = y * s;
        y *= c;
        if (want_vectors) {
          for (std::size_t jj = 0; jj < n; ++jj) {
            x = v(jj, j);
            z = v(jj, i);
            v(jj, j) = x * c + z * s;
            v(jj, i) = z * c - x * s;
          }
        }
        z = std::hypot(f, h);
        w[j] = z;
        if (z != 0.0) {
          z = 1.0 / z;
          c = f * z;
          s = h * z;
        }
        f = c * g + s * y;
        x = c * y - s * g;
        if (want_vectors) {
          for (std::size_t jj = 0; jj < m; ++jj) {
            y = u(jj, j);
            z = u(jj, i);
            u(jj, j) = y * c + z * s;
            u(jj, i) = z * c - y * s;
          }
        }
      }
      rv1[l] = 0.0;
      rv1[k] = f;
      w[k] = x;
    }
  }
}

SpectrumReport svd_tall(const Matrix& a, bool want_vectors) {
  const std::size_t n = a.cols();
  Matrix u = a;
  Matrix v(n, n);
  std::vector<double> w(n, 0.0);
  svd_golub_kahan(u, w, v, want_vectors);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&w](std::size_t i, std::size_t j) { return w[i] > w[j]; });

  SpectrumReport report;
  report.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) report.values[i] = w[perm[i]];
  if (want_vectors) {
    Matrix us(u.rows(), n);
    Matrix vs(n, n);
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t i = 0; i < u.rows(); ++i) us(i, c) = u(i, perm[c]);
      for (std::size_t i = 0; i < n; ++i) vs(i, c) = v(i, perm[c]);
    }
    report.left_vectors = std::move(us);
    report.right_vectors = std::move(vs);
  }
  return report;
}

}  // namespace

QrFactors reduced_qr(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m < n) {
    throw DimensionMismatchError("reduced_qr: need rows >= cols, got " +
                                 std::to_string(m) + "x" + std::to_string(n));
  }
  Matrix w = a;
  std::vector<std::vector<double>> vs(n);
  std::vector<double> betas(n, 0.0);

  for (std::size_t k = 0; k < n; ++k) {
    double xnorm_sq = 0.0;
    for (std::size_t i = k; i < m; ++i) xnorm_sq += w(i, k) * w(i, k);
    const double xnorm = std::sqrt(xnorm_sq);
    std::vector<double> v(m - k);
    for (std::size_t i = k; i < m; ++i) v[i - k] = w(i, k);
    if (xnorm == 0.0) {
      vs[k] = std::move(v);
      continue;
    }
    const double alpha = v[0] >= 0.0 ? -xnorm : xnorm;
    v[0] -= alpha;
    double vnorm_sq = 0.0;
    for (double value : v) vnorm_sq += value * value;
    const double beta = 2.0 / vnorm_sq;
    for (std::size_t j = k; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += v[i - k] * w(i, j);
      const double step = beta * dot;
      for (std::size_t i = k; i < m; ++i) w(i, j) -= step * v[i - k];
    }
    w(k, k) = alpha;
    vs[k] = std::move(v);
    betas[k] = beta;
  }

  Matrix r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) r(i, j) = w(i, j);
  }

  // Thin Q: apply the reflections in reverse order to the leading columns
  // of the identity. Column j stays e_j until reflection j touches it, so
  // each pass only needs columns >= k.
  Matrix q(m, n);
  for (std::size_t k = 0; k < n; ++k) q(k, k) = 1.0;
  for (std::size_t k = n; k-- > 0;) {
    if (betas[k] == 0.0) continue;
    const std::vector<double>& v = vs[k];
    for (std::size_t j = k; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += v[i - k] * q(i, j);
      const double step = betas[k] * dot;
      for (std::size_t i = k; i < m; ++i) q(i, j) -= step * v[i - k];
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (r(k, k) >= 0.0) continue;
    for (std::size_t j = k; j < n; ++j) r(k, j) = -r(k, j);
    for (std::size_t i = 0; i < m; ++i) q(i, k) = -q(i, k);
  }
  return {std::move(q), std::move(r)};
}

Matrix spd_solve(const Matrix& g, const Matrix& b) {
  const std::size_t n = g.rows();
  if (g.cols() != n) {
    throw DimensionMismatchError("spd_solve: matrix is " + std::to_string(n) +
                                 "x" + std::to_string(g.cols()));
  }
  if (b.rows() != n) {
    throw DimensionMismatchError("spd_solve: rhs has " +
                                 std::to_string(b.rows()) + " rows, need " +
                                 std::to_string(n));
  }
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, g(i, i));
  const double floor = 1e-13 * max_diag;

  Matrix chol(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double pivot = g(k, k);
    for (std::size_t p = 0; p < k; ++p) pivot -= chol(k, p) * chol(k, p);
    if (pivot <= floor || !(pivot > 0.0)) {
      throw SingularGramError("spd_solve: pivot " + std::to_string(pivot) +
                              " at column " + std::to_string(k + 1) +
                              " is singular to working precision");
    }
    chol(k, k) = std::sqrt(pivot);
    for (std::size_t i = k + 1; i < n; ++i) {
      double acc = g(i, k);
      for (std::size_t p = 0; p < k; ++p) acc -= chol(i, p) * chol(k, p);
      chol(i, k) = acc / chol(k, k);
    }
  }

  Matrix x = b;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    // Forward substitution: L y = b.
    for (std::size_t i = 0; i < n; ++i) {
      double acc = x(i, c);
      for (std::size_t p = 0; p < i; ++p) acc -= chol(i, p) * x(p, c);
      x(i, c) = acc / chol(i, i);
    }
    // Back substitution: L^T x = y.
    for (std::size_t i = n; i-- > 0;) {
      double acc = x(i, c);
      for (std::size_t p = i + 1; p < n; ++p) acc -= chol(p, i) * x(p, c);
      x(i, c) = acc / chol(i, i);
    }
  }
  return x;
}

SpectrumReport dense_svd(const Matrix& a, bool want_vectors) {
  if (a.rows() < a.cols()) {
    SpectrumReport report = dense_svd(transpose(a), want_vectors);
    std::swap(report.left_vectors, report.right_vectors);
    if (want_vectors) {
      fix_column_signs(&*report.left_vectors, &*report.right_vectors);
    }
    return report;
  }

  SpectrumReport report;
  // Tall aspect ratios go through a QR preconditioning step: the n x n
  // triangular factor carries the full spectrum and keeps the iterative
  // phase small.
  if (3 * a.rows() >= 5 * a.cols() && a.rows() > a.cols()) {
    QrFactors qr = reduced_qr(a);
    report = svd_tall(qr.r_upper, want_vectors);
    if (want_vectors) {
      report.left_vectors = matmul(qr.q, *report.left_vectors);
    }
  } else {
    report = svd_tall(a, want_vectors);
  }
  if (want_vectors) {
    fix_column_signs(&*report.left_vectors, &*report.right_vectors);
  }
  return report;
}

SpectrumReport sym_eig(const Matrix& g, std::size_t k) {
  using index = std::ptrdiff_t;
  const index n = static_cast<index>(g.rows());
  if (g.cols() != g.rows()) {
    throw DimensionMismatchError("sym_eig: matrix is " +
                                 std::to_string(g.rows()) + "x" +
                                 std::to_string(g.cols()));
  }
  if (k > g.rows()) {
    throw DimensionMismatchError("sym_eig: requested " + std::to_string(k) +
                                 " pairs from a " + std::to_string(g.rows()) +
                                 "-dimensional matrix");
  }

  Matrix z = g;
  std::vector<double> d(n, 0.0);
  std::vector<double> e(n, 0.0);

  // Householder reduction to tridiagonal form, transformation accumulated
  // into z.
  for (index i = n - 1; i > 0; --i) {
    const index l = i - 1;
    double h = 0.0;
    double scale = 0.0;
    if (l > 0) {
      for (index kk = 0; kk <= l; ++kk) scale += std::fabs(z(i, kk));
      if (scale == 0.0) {
        e[i] = z(i, l);
      } else {
        for (index kk = 0; kk <= l; ++kk) {
          z(i, kk) /= scale;
          h += z(i, kk) * z(i, kk);
        }
        double f = z(i, l);
        double gg = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * gg;
        h -= f * gg;
        z(i, l) = f - gg;
        f = 0.0;
        for (index j = 0; j <= l; ++j) {
          z(j, i) = z(i, j) / h;
          gg = 0.0;
          for (index kk = 0; kk <= j; ++kk) gg += z(j, kk) * z(i, kk);
          for (index kk = j + 1; kk <= l; ++kk) gg += z(kk, j) * z(i, kk);
          e[j] = gg / h;
          f += e[j] * z(i, j);
        }
        const double hh = f / (h + h);
        for (index j = 0; j <= l; ++j) {
          f = z(i, j);
          e[j] = gg = e[j] - hh * f;
          for (index kk = 0; kk <= j; ++kk) {
            z(j, kk) -= f * e[kk] + gg * z(i, kk);
          }
        }
      }
    } else {
      e[i] = z(i, l);
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (index i = 0; i < n; ++i) {
    const index l = i - 1;
    if (d[i] != 0.0) {
      for (index j = 0; j <= l; ++j) {
        double gg = 0.0;
        for (index kk = 0; kk <= l; ++kk) gg += z(i, kk) * z(kk, j);
        for (index kk = 0; kk <= l; ++kk) z(kk, j) -= gg * z(kk, i);
      }
    }
    d[i] = z(i, i);
    z(i, i) = 1.0;
    for (index j = 0; j <= l; ++j) {
      z(j, i) = 0.0;
      z(i, j) = 0.0;
    }
  }

  // Implicit-shift QL sweeps on the tridiagonal form.
  const double eps = std::numeric_limits<double>::epsilon();
  const long max_steps = 100 * std::max<long>(1, static_cast<long>(n));
  long steps = 0;
  for (index i = 1; i < n; ++i) e[i - 1] = e[i];
  if (n > 0) e[n - 1] = 0.0;
  for (index l = 0; l < n; ++l) {
    index m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (++steps > max_steps) {
          throw NoConvergenceError(
              "sym_eig: no convergence after " + std::to_string(max_steps) +
              " implicit-shift steps");
        }
        double gg = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(gg, 1.0);
        gg = d[m] - d[l] + e[l] / (gg + sign_like(r, gg));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        index i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, gg);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = gg / r;
          gg = d[i + 1] - p;
          r = (d[i] - gg) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = gg + p;
          gg = c * r - b;
          for (index kk = 0; kk < n; ++kk) {
            f = z(kk, i + 1);
            z(kk, i + 1) = s * z(kk, i) + c * f;
            z(kk, i) = c * z(kk, i) - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = gg;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<std::size_t> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&d](std::size_t a, std::size_t b) {
    return d[static_cast<index>(a)] > d[static_cast<index>(b)];
  });

  SpectrumReport report;
  report.values.resize(k);
  Matrix vectors(static_cast<std::size_t>(n), k);
  for (std::size_t c = 0; c < k; ++c) {
    report.values[c] = d[static_cast<index>(perm[c])];
    for (index i = 0; i < n; ++i) {
      vectors(static_cast<std::size_t>(i), c) =
          z(i, static_cast<index>(perm[c]));
    }
  }
  fix_column_signs(&vectors, nullptr);
  report.left_vectors = std::move(vectors);
  return report;
}

}  // namespace tenkit
