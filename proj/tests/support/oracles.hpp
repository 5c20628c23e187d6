/*
 * Copyright 2026 The Synthanom Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// Independent reference implementations used only by the tests. None of these
// share code with the library beyond the tensor container.
#ifndef SYNTHANOM_TESTS_SUPPORT_ORACLES_HPP_
#define SYNTHANOM_TESTS_SUPPORT_ORACLES_HPP_

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "synthanom/tensor.hpp"

namespace synthanom::testing {

inline Tensor random_tensor(const Shape& shape, std::mt19937_64& gen, double lo = -1.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Tensor t(shape);
  for (double& v : t.values()) v = dist(gen);
  return t;
}

inline double max_abs(const Tensor& t) {
  double m = 0.0;
  for (double v : t.values()) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const Tensor& a, const Tensor& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline std::vector<std::size_t> unravel(std::size_t flat, const Shape& shape) {
  std::vector<std::size_t> idx(shape.size());
  for (std::size_t a = shape.size(); a-- > 0;) {
    idx[a] = flat % shape[a];
    flat /= shape[a];
  }
  return idx;
}

inline std::size_t ravel(const std::vector<std::size_t>& idx, const Shape& shape) {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < shape.size(); ++a) flat = flat * shape[a] + idx[a];
  return flat;
}

// DST-I straight from the definition, one std::sin per term.
inline Tensor dst1_by_definition(const Tensor& x, std::size_t axis) {
  const Shape& shape = x.shape();
  const std::size_t n = shape[axis];
  Tensor out(shape, 0.0);
  for (std::size_t flat = 0; flat < x.size(); ++flat) {
    std::vector<std::size_t> idx = unravel(flat, shape);
    const std::size_t k = idx[axis];
    long double s = 0.0L;
    for (std::size_t m = 0; m < n; ++m) {
      idx[axis] = m;
      s += static_cast<long double>(x[ravel(idx, shape)]) *
           std::sin(std::numbers::pi_v<long double> * static_cast<long double>((k + 1) * (m + 1)) /
                    static_cast<long double>(n + 1));
    }
    out[flat] = static_cast<double>(s);
  }
  return out;
}

// Solves sum_nbr f - 2D f = rhs on the interior of `padded` (shape = rhs + 2 per
// axis), with Dirichlet values read from the padded ring. Dense Cholesky for
// small systems, sparse Cholesky otherwise; both are direct factorisations.
inline Tensor direct_dirichlet_solve(const Tensor& rhs, const Tensor& padded) {
  const Shape& in = rhs.shape();
  const Shape& pad = padded.shape();
  const std::size_t d = in.size();
  const std::size_t n = rhs.size();
  std::vector<Eigen::Triplet<double>> entries;
  Eigen::VectorXd b(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<std::size_t> idx = unravel(i, in);
    // Assemble -A f = -rhs so the matrix is positive definite.
    double bi = -rhs[i];
    entries.emplace_back(i, i, 2.0 * static_cast<double>(d));
    for (std::size_t a = 0; a < d; ++a) {
      for (int step : {-1, 1}) {
        std::vector<std::size_t> nb = idx;
        const long pos = static_cast<long>(idx[a]) + step;
        if (pos < 0 || pos >= static_cast<long>(in[a])) {
          std::vector<std::size_t> pidx(d);
          for (std::size_t c = 0; c < d; ++c) pidx[c] = idx[c] + 1;
          pidx[a] = static_cast<std::size_t>(pos + 1);
          bi += padded[ravel(pidx, pad)];
        } else {
          nb[a] = static_cast<std::size_t>(pos);
          entries.emplace_back(i, ravel(nb, in), -1.0);
        }
      }
    }
    b[static_cast<Eigen::Index>(i)] = bi;
  }
  Eigen::VectorXd f;
  if (n <= 1200) {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                  static_cast<Eigen::Index>(n));
    for (const auto& e : entries) dense(e.row(), e.col()) += e.value();
    f = dense.llt().solve(b);
  } else {
    Eigen::SparseMatrix<double> sparse(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    sparse.setFromTriplets(entries.begin(), entries.end());
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(sparse);
    f = llt.solve(b);
  }
  Tensor out(in);
  for (std::size_t i = 0; i < n; ++i) out[i] = f[static_cast<Eigen::Index>(i)];
  return out;
}

// Discrete Laplacian on the interior of a tensor that carries a one-voxel ring.
inline Tensor interior_laplacian(const Tensor& padded) {
  const Shape& pad = padded.shape();
  const std::size_t d = pad.size();
  Shape in(d);
  for (std::size_t a = 0; a < d; ++a) in[a] = pad[a] - 2;
  Tensor out(in, 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    std::vector<std::size_t> idx = unravel(i, in);
    for (auto& v : idx) ++v;
    const double centre = padded[ravel(idx, pad)];
    double s = -2.0 * static_cast<double>(d) * centre;
    for (std::size_t a = 0; a < d; ++a) {
      std::vector<std::size_t> nb = idx;
      nb[a] = idx[a] - 1;
      s += padded[ravel(nb, pad)];
      nb[a] = idx[a] + 1;
      s += padded[ravel(nb, pad)];
    }
    out[i] = s;
  }
  return out;
}

// Precision and recall at every distinct threshold, evaluated by rescanning.
inline double brute_average_precision(const std::vector<double>& scores,
                                      const std::vector<std::uint8_t>& targets) {
  const std::set<double, std::greater<>> thresholds(scores.begin(), scores.end());
  std::size_t total_pos = 0;
  for (auto t : targets) total_pos += t ? 1 : 0;
  double ap = 0.0;
  std::size_t prev_tp = 0;
  for (double thr : thresholds) {
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= thr) (targets[i] ? tp : fp)++;
    }
    ap += static_cast<double>(tp - prev_tp) / static_cast<double>(total_pos) *
          (static_cast<double>(tp) / static_cast<double>(tp + fp));
    prev_tp = tp;
  }
  return ap;
}

// Fraction of (positive, negative) pairs ranked correctly, ties count half.
inline double brute_auroc(const std::vector<double>& scores,
                          const std::vector<std::uint8_t>& targets) {
  std::size_t wins2 = 0, pos = 0, neg = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (targets[i]) ++pos;
    else ++neg;
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!targets[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (targets[j]) continue;
      if (scores[i] > scores[j]) wins2 += 2;
      else if (scores[i] == scores[j]) wins2 += 1;
    }
  }
  return (static_cast<double>(wins2) / 2.0) / (static_cast<double>(pos) * static_cast<double>(neg));
}

// Squared Euclidean distance to the nearest false voxel, with everything
// outside the tensor counted as false.
inline Tensor brute_squared_edt(const BoolTensor& raster) {
  const Shape& shape = raster.shape();
  const std::size_t d = shape.size();
  Tensor out(shape, 0.0);
  for (std::size_t i = 0; i < raster.size(); ++i) {
    if (!raster[i]) continue;
    const std::vector<std::size_t> p = unravel(i, shape);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < d; ++a) {
      const double lo = static_cast<double>(p[a]) + 1.0;
      const double hi = static_cast<double>(shape[a] - p[a]);
      best = std::min({best, lo * lo, hi * hi});
    }
    for (std::size_t j = 0; j < raster.size(); ++j) {
      if (raster[j]) continue;
      const std::vector<std::size_t> q = unravel(j, shape);
      double s = 0.0;
      for (std::size_t a = 0; a < d; ++a) {
        const double diff = static_cast<double>(p[a]) - static_cast<double>(q[a]);
        s += diff * diff;
      }
      best = std::min(best, s);
    }
    out[i] = best;
  }
  return out;
}

// Upper tail of the chi-square distribution via the regularised incomplete gamma.
inline double chi_square_sf(double x, double dof) {
  const double s = dof / 2.0;
  const double z = x / 2.0;
  if (z <= 0.0) return 1.0;
  const double log_prefix = s * std::log(z) - z - std::lgamma(s);
  if (z < s + 1.0) {
    double term = 1.0 / s, sum = term;
    for (int k = 1; k < 500; ++k) {
      term *= z / (s + k);
      sum += term;
      if (term < sum * 1e-16) break;
    }
    return 1.0 - std::exp(log_prefix) * sum;
  }
  // Lentz continued fraction for Q(s, z).
  double b = z + 1.0 - s, c = 1e300, dd = 1.0 / b, h = dd;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    dd = an * dd + b;
    if (std::abs(dd) < 1e-300) dd = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    dd = 1.0 / dd;
    const double delta = dd * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(log_prefix) * h;
}

// Smooth disc phantom: textured foreground inside a disc, -1 outside.
inline Tensor disc_phantom(std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> noise(-0.05, 0.05);
  Tensor t({rows, cols}, -1.0);
  const double cr = (static_cast<double>(rows) - 1.0) / 2.0;
  const double cc = (static_cast<double>(cols) - 1.0) / 2.0;
  const double radius = 0.42 * static_cast<double>(std::min(rows, cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double dr = static_cast<double>(r) - cr, dc = static_cast<double>(c) - cc;
      if (dr * dr + dc * dc <= radius * radius) {
        t[r * cols + c] = 1.0 + 0.5 * std::sin(0.21 * static_cast<double>(r)) *
                                    std::cos(0.17 * static_cast<double>(c)) +
                          noise(gen);
      }
    }
  }
  return t;
}

}  // namespace synthanom::testing

#endif  // SYNTHANOM_TESTS_SUPPORT_ORACLES_HPP_
