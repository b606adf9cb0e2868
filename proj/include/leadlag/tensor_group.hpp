#pragma once

// Arithmetic in the truncated tensor algebra T^2(R^m) and the step-2 free
// nilpotent group G^2(R^m).
//
// A group element is stored in exponential coordinates as an increment
// vector x in R^m together with an antisymmetric m x m area matrix A; the
// corresponding tensor is exp2(x + A) = 1 + x + (x (x) x)/2 + A.  The group
// product carries the area cross-term  A_gh = A_g + A_h + (x_g ^ x_h)/2,
// where (a ^ b)_{ij} = a_i b_j - a_j b_i.
//
// The homogeneous norm used throughout is
//     |||g||| = max( |x|_2 , sqrt(2 ||A||_F) ),
// which is symmetric, vanishes only at the identity, scales like
// |||delta_lambda(g)||| = lambda |||g||| under the dilation
// (x, A) -> (lambda x, lambda^2 A), and is subadditive on G^2, so
// d(g, h) = |||g^{-1} h||| is a genuine metric.  It is equivalent to the
// Carnot-Caratheodory norm up to dimension-dependent constants; all
// convergence statements exercised downstream are "-> 0" statements, for
// which equivalence suffices.

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "leadlag/errors.hpp"

namespace leadlag {

// Level-2 truncated tensor with implicit scalar part.  level2 is m x m
// row-major.
struct Level2Tensor {
  int dim = 0;
  std::vector<double> level1;  // m entries
  std::vector<double> level2;  // m*m entries, row-major

  static Level2Tensor zero(int m) {
    Level2Tensor t;
    t.dim = m;
    t.level1.assign(static_cast<std::size_t>(m), 0.0);
    t.level2.assign(static_cast<std::size_t>(m) * m, 0.0);
    return t;
  }
};

// Element of G^2(R^m) in exponential coordinates: increment + area.
struct Level2Group {
  int dim = 0;
  std::vector<double> increment;  // x, m entries
  std::vector<double> area;       // A, m*m row-major, antisymmetric

  static Level2Group identity(int m) {
    Level2Group g;
    g.dim = m;
    g.increment.assign(static_cast<std::size_t>(m), 0.0);
    g.area.assign(static_cast<std::size_t>(m) * m, 0.0);
    return g;
  }

  static Level2Group from_increment(std::vector<double> x) {
    Level2Group g;
    g.dim = static_cast<int>(x.size());
    g.increment = std::move(x);
    g.area.assign(static_cast<std::size_t>(g.dim) * g.dim, 0.0);
    return g;
  }

  double area_at(int i, int j) const {
    return area[static_cast<std::size_t>(i) * dim + j];
  }
};

namespace detail {

inline void check_tensor_shape(const Level2Tensor& a, const char* who) {
  if (a.dim < 1 || a.level1.size() != static_cast<std::size_t>(a.dim) ||
      a.level2.size() != static_cast<std::size_t>(a.dim) * a.dim) {
    throw invalid_input(std::string(who) + ": tensor shape mismatch");
  }
}

inline void check_group_shape(const Level2Group& g, const char* who) {
  if (g.dim < 1 || g.increment.size() != static_cast<std::size_t>(g.dim) ||
      g.area.size() != static_cast<std::size_t>(g.dim) * g.dim) {
    throw invalid_input(std::string(who) + ": group element shape mismatch");
  }
}

inline void check_same_dim(const Level2Group& g, const Level2Group& h,
                           const char* who) {
  check_group_shape(g, who);
  check_group_shape(h, who);
  if (g.dim != h.dim) {
    throw invalid_input(std::string(who) + ": dimension mismatch");
  }
}

}  // namespace detail

// exp2(a) = 1 + a + a(x)a/2 truncated at level 2, for a with zero scalar
// part.  Only the level-1 part of a survives squaring at this truncation.
inline Level2Tensor exp2(const Level2Tensor& a) {
  detail::check_tensor_shape(a, "exp2");
  const int m = a.dim;
  Level2Tensor out = a;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out.level2[static_cast<std::size_t>(i) * m + j] +=
          0.5 * a.level1[i] * a.level1[j];
    }
  }
  return out;
}

// Inverse of exp2 on group-like tensors: x = level1, log-level2 = level2 -
// x(x)x/2.
inline Level2Tensor log2(const Level2Tensor& g) {
  detail::check_tensor_shape(g, "log2");
  const int m = g.dim;
  Level2Tensor out = g;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      out.level2[static_cast<std::size_t>(i) * m + j] -=
          0.5 * g.level1[i] * g.level1[j];
    }
  }
  return out;
}

inline Level2Tensor group_to_tensor(const Level2Group& g) {
  detail::check_group_shape(g, "group_to_tensor");
  Level2Tensor t;
  t.dim = g.dim;
  t.level1 = g.increment;
  t.level2 = g.area;
  return exp2(t);
}

// Reads a group element off a group-like tensor.  The area part is the
// antisymmetrization of level2 - x(x)x/2 (exact for genuine group elements).
inline Level2Group tensor_to_group(const Level2Tensor& t) {
  const Level2Tensor lg = log2(t);
  Level2Group g;
  g.dim = lg.dim;
  g.increment = lg.level1;
  g.area.assign(static_cast<std::size_t>(lg.dim) * lg.dim, 0.0);
  const int m = lg.dim;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      g.area[static_cast<std::size_t>(i) * m + j] =
          0.5 * (lg.level2[static_cast<std::size_t>(i) * m + j] -
                 lg.level2[static_cast<std::size_t>(j) * m + i]);
    }
  }
  return g;
}

// Group product.  Increments add; the area picks up the standard
// decomposition cross-term (x_g ^ x_h)/2.  The result is skew-symmetrized
// to kill rounding drift.
inline Level2Group group_mul(const Level2Group& g, const Level2Group& h) {
  detail::check_same_dim(g, h, "group_mul");
  const int m = g.dim;
  Level2Group out;
  out.dim = m;
  out.increment.resize(static_cast<std::size_t>(m));
  out.area.resize(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    out.increment[i] = g.increment[i] + h.increment[i];
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < i; ++j) {
      const double cross =
          0.5 * (g.increment[i] * h.increment[j] - g.increment[j] * h.increment[i]);
      const std::size_t ij = static_cast<std::size_t>(i) * m + j;
      const std::size_t ji = static_cast<std::size_t>(j) * m + i;
      // Skew-symmetrize the inputs while combining.
      const double v = 0.5 * (g.area[ij] - g.area[ji]) +
                       0.5 * (h.area[ij] - h.area[ji]) + cross;
      out.area[ij] = v;
      out.area[ji] = -v;
    }
    out.area[static_cast<std::size_t>(i) * m + i] = 0.0;
  }
  return out;
}

inline Level2Group group_inv(const Level2Group& g) {
  detail::check_group_shape(g, "group_inv");
  Level2Group out = g;
  for (double& v : out.increment) v = -v;
  for (double& v : out.area) v = -v;
  return out;
}

inline double homog_norm(const Level2Group& g) {
  detail::check_group_shape(g, "homog_norm");
  double x2 = 0.0;
  for (double v : g.increment) x2 += v * v;
  double a2 = 0.0;
  for (double v : g.area) a2 += v * v;
  return std::max(std::sqrt(x2), std::sqrt(2.0 * std::sqrt(a2)));
}

inline double dist(const Level2Group& g, const Level2Group& h) {
  detail::check_same_dim(g, h, "dist");
  return homog_norm(group_mul(group_inv(g), h));
}

// Largest deviation of the area matrix from exact antisymmetry; test hook.
inline double antisymmetry_defect(const Level2Group& g) {
  detail::check_group_shape(g, "antisymmetry_defect");
  const int m = g.dim;
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double s = g.area[static_cast<std::size_t>(i) * m + j] +
                       g.area[static_cast<std::size_t>(j) * m + i];
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

}  // namespace leadlag
