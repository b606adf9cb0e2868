#pragma once

// Exact level-2 lifting of piecewise-linear paths, the quadratic-variation
// perturbed limit path, and p-variation / Hoelder functionals.
//
// Lifting is algebraic: a linear segment contributes exp2 of its increment
// (zero area) and pieces combine through the group product, so the skeleton
// is the exact signature of the polyline -- there is no quadrature step
// anywhere.
//
// The limit path over R^{2d} carries increments (X_{s,t}, X_{s,t}) and the
// block area
//      [ A      A - Q/2 ]
//      [ A + Q/2    A   ]      with  Q = <X>_{s,t},
// where A is the Levy area of X (computed exactly from the fine-grid
// polyline) and <X> is either the analytic bracket (Brownian: t * I) or the
// realized bracket accumulated from fine-grid increments.
//
// p-variation is maximized over partitions made of skeleton times.  For
// lifted piecewise-linear paths whose skeleton contains every breakpoint
// this equals the full supremum when applied to a single path (interior
// points of a straight segment never help for p > 1); for distances between
// two different paths it is a grid-refinable lower bound.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "leadlag/errors.hpp"
#include "leadlag/polyline.hpp"
#include "leadlag/leadlag_path.hpp"
#include "leadlag/tensor_group.hpp"
#include "leadlag/timeseries.hpp"

namespace leadlag {

// Rough path on a grid: absolute group values t |-> X_{0,t}, flattened for
// cache-friendly pairwise work.  elements[0] is the identity.
struct GroupPathSkeleton {
  int dim = 0;
  std::vector<double> times;
  std::vector<double> xs;     // (#times) x m
  std::vector<double> areas;  // (#times) x m*m, antisymmetric rows

  int count() const { return static_cast<int>(times.size()); }

  const double* x_row(int k) const {
    return xs.data() + static_cast<std::size_t>(k) * dim;
  }
  const double* a_row(int k) const {
    return areas.data() + static_cast<std::size_t>(k) * dim * dim;
  }

  Level2Group element(int k) const {
    Level2Group g;
    g.dim = dim;
    g.increment.assign(x_row(k), x_row(k) + dim);
    g.area.assign(a_row(k), a_row(k) + static_cast<std::size_t>(dim) * dim);
    return g;
  }

  // Group increment X_{t_i, t_j} = element(i)^{-1} (x) element(j).
  Level2Group increment(int i, int j) const {
    return group_mul(group_inv(element(i)), element(j));
  }

  void validate(const char* who = "GroupPathSkeleton") const {
    if (dim < 1 || times.empty() ||
        xs.size() != times.size() * static_cast<std::size_t>(dim) ||
        areas.size() != times.size() * static_cast<std::size_t>(dim) * dim) {
      throw invalid_input(std::string(who) + ": shape mismatch");
    }
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
      if (!(times[k] < times[k + 1])) {
        throw invalid_input(std::string(who) + ": times not increasing");
      }
    }
  }
};

namespace detail {

// ||X_{t_i,t_j}|| without materializing group elements.
inline double increment_norm(const GroupPathSkeleton& s, int i, int j) {
  const int m = s.dim;
  const double* xi = s.x_row(i);
  const double* xj = s.x_row(j);
  const double* ai = s.a_row(i);
  const double* aj = s.a_row(j);
  double x2 = 0.0;
  for (int c = 0; c < m; ++c) {
    const double d = xj[c] - xi[c];
    x2 += d * d;
  }
  double a2 = 0.0;
  for (int c = 0; c < m; ++c) {
    for (int e = c + 1; e < m; ++e) {
      const std::size_t ce = static_cast<std::size_t>(c) * m + e;
      const double v = aj[ce] - ai[ce] - 0.5 * (xi[c] * xj[e] - xi[e] * xj[c]);
      a2 += 2.0 * v * v;
    }
  }
  return std::max(std::sqrt(x2), std::sqrt(2.0 * std::sqrt(a2)));
}

// d(a_{t_i,t_j}, b_{t_i,t_j}) for two skeletons on a common grid.
inline double cross_increment_dist(const GroupPathSkeleton& a,
                                   const GroupPathSkeleton& b, int i, int j) {
  const int m = a.dim;
  const double* axi = a.x_row(i);
  const double* axj = a.x_row(j);
  const double* bxi = b.x_row(i);
  const double* bxj = b.x_row(j);
  double x2 = 0.0;
  for (int c = 0; c < m; ++c) {
    const double d = (bxj[c] - bxi[c]) - (axj[c] - axi[c]);
    x2 += d * d;
  }
  const double* aai = a.a_row(i);
  const double* aaj = a.a_row(j);
  const double* bai = b.a_row(i);
  const double* baj = b.a_row(j);
  double a2 = 0.0;
  for (int c = 0; c < m; ++c) {
    for (int e = c + 1; e < m; ++e) {
      const std::size_t ce = static_cast<std::size_t>(c) * m + e;
      const double aA =
          aaj[ce] - aai[ce] - 0.5 * (axi[c] * axj[e] - axi[e] * axj[c]);
      const double bA =
          baj[ce] - bai[ce] - 0.5 * (bxi[c] * bxj[e] - bxi[e] * bxj[c]);
      const double ax_c = axj[c] - axi[c];
      const double ax_e = axj[e] - axi[e];
      const double bx_c = bxj[c] - bxi[c];
      const double bx_e = bxj[e] - bxi[e];
      // inv(a_inc) (x) b_inc area entry.
      const double v = bA - aA - 0.5 * (ax_c * bx_e - ax_e * bx_c);
      a2 += 2.0 * v * v;
    }
  }
  return std::max(std::sqrt(x2), std::sqrt(2.0 * std::sqrt(a2)));
}

inline void check_common_grid(const GroupPathSkeleton& a,
                              const GroupPathSkeleton& b, const char* who) {
  a.validate(who);
  b.validate(who);
  if (a.dim != b.dim || a.times.size() != b.times.size()) {
    throw invalid_input(std::string(who) + ": skeleton grids differ");
  }
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    if (std::abs(a.times[k] - b.times[k]) > 1e-12) {
      throw invalid_input(std::string(who) + ": skeleton grids differ");
    }
  }
}

}  // namespace detail

// Exact lift of a polyline, reported at `grid` times.  Grid points may be
// segment breakpoints or interior points; the first grid time must be the
// path's start so that absolute values are anchored at the identity.
inline GroupPathSkeleton lift_piecewise_linear(const PolylinePath& path,
                                               const std::vector<double>& grid) {
  path.validate("lift_piecewise_linear");
  if (grid.empty() || grid.front() != path.times.front()) {
    throw invalid_input("lift_piecewise_linear: grid must start at path start");
  }
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    if (!(grid[k] < grid[k + 1])) {
      throw invalid_input("lift_piecewise_linear: grid not sorted");
    }
  }
  if (grid.back() > path.times.back() + 1e-15) {
    throw invalid_input("lift_piecewise_linear: grid exceeds path domain");
  }

  const int m = path.dim;
  GroupPathSkeleton out;
  out.dim = m;
  out.times = grid;
  out.xs.assign(grid.size() * static_cast<std::size_t>(m), 0.0);
  out.areas.assign(grid.size() * static_cast<std::size_t>(m) * m, 0.0);

  std::vector<double> x(m, 0.0);                          // running increment
  std::vector<double> A(static_cast<std::size_t>(m) * m, 0.0);  // running area
  std::vector<double> delta(m, 0.0);

  // Advance the running signature by the path displacement between
  // parameter values u0 < u1 (both within segment [seg, seg+1]).
  auto advance = [&](int seg, double u0, double u1) {
    const double span = path.times[seg + 1] - path.times[seg];
    const double w = (u1 - u0) / span;
    const double* p0 = path.row(seg);
    const double* p1 = path.row(seg + 1);
    for (int c = 0; c < m; ++c) delta[c] = w * (p1[c] - p0[c]);
    // exp2(delta) has zero area; Chen cross-term only.
    for (int c = 0; c < m; ++c) {
      for (int e = c + 1; e < m; ++e) {
        const double v = 0.5 * (x[c] * delta[e] - x[e] * delta[c]);
        A[static_cast<std::size_t>(c) * m + e] += v;
        A[static_cast<std::size_t>(e) * m + c] -= v;
      }
    }
    for (int c = 0; c < m; ++c) x[c] += delta[c];
  };

  int seg = 0;
  double u = path.times.front();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double target = grid[g];
    while (u < target) {
      const double seg_end = path.times[seg + 1];
      if (target <= seg_end + 0.0) {
        advance(seg, u, std::min(target, seg_end));
        u = target;
        if (u == seg_end && seg + 2 < static_cast<int>(path.times.size())) ++seg;
      } else {
        advance(seg, u, seg_end);
        u = seg_end;
        ++seg;
      }
    }
    std::copy(x.begin(), x.end(),
              out.xs.begin() + static_cast<std::size_t>(g) * m);
    std::copy(A.begin(), A.end(),
              out.areas.begin() + static_cast<std::size_t>(g) * m * m);
  }
  return out;
}

// Hoff path lift on the breakpoint grid (partition points plus midpoints).
inline GroupPathSkeleton hoff_lift(const SampledSeries& series) {
  const HoffPath h = build_hoff(series);
  return lift_piecewise_linear(h.as_polyline(), h.times);
}

// Cumulative realized bracket <X>_{0,t_k} = sum of dX dX^T over fine
// intervals; symmetric PSD by construction.
struct RealizedQv {
  int dim = 0;
  std::vector<double> prefix;  // (#times) x dim*dim

  const double* row(int k) const {
    return prefix.data() + static_cast<std::size_t>(k) * dim * dim;
  }
  double between(int i, int j, int c, int e) const {
    const std::size_t ce = static_cast<std::size_t>(c) * dim + e;
    return row(j)[ce] - row(i)[ce];
  }
};

inline RealizedQv realized_qv(const SampledSeries& series) {
  series.validate("realized_qv");
  const int d = series.dim;
  const int n = series.points();
  RealizedQv out;
  out.dim = d;
  out.prefix.assign(static_cast<std::size_t>(n) * d * d, 0.0);
  for (int k = 1; k < n; ++k) {
    const double* prev = out.prefix.data() + static_cast<std::size_t>(k - 1) * d * d;
    double* cur = out.prefix.data() + static_cast<std::size_t>(k) * d * d;
    for (int c = 0; c < d; ++c) {
      const double dc = series.value(k, c) - series.value(k - 1, c);
      for (int e = 0; e < d; ++e) {
        const double de = series.value(k, e) - series.value(k - 1, e);
        cur[static_cast<std::size_t>(c) * d + e] =
            prev[static_cast<std::size_t>(c) * d + e] + dc * de;
      }
    }
  }
  return out;
}

enum class QvMode { analytic, realized };

// Limit rough path on R^{2d} evaluated at `grid` times (defaults to the
// fine grid).  `unit_bracket` asserts that <X>_t = t * I exactly (Brownian
// kinds); analytic mode requires it.
inline GroupPathSkeleton build_limit(const SampledSeries& fine, QvMode mode,
                                     bool unit_bracket,
                                     const std::vector<double>* grid = nullptr) {
  fine.validate("build_limit");
  if (mode == QvMode::analytic && !unit_bracket) {
    throw invalid_input("build_limit: analytic bracket unavailable for this data");
  }
  const int d = fine.dim;
  const int m = 2 * d;
  const auto& ft = fine.partition.points;
  std::vector<double> out_times;
  if (grid) {
    out_times = *grid;
  } else {
    out_times = ft;
  }

  GroupPathSkeleton out;
  out.dim = m;
  out.times = out_times;
  out.xs.assign(out_times.size() * static_cast<std::size_t>(m), 0.0);
  out.areas.assign(out_times.size() * static_cast<std::size_t>(m) * m, 0.0);

  const RealizedQv rqv =
      (mode == QvMode::realized) ? realized_qv(fine) : RealizedQv{};

  // Running exact Levy area of the fine polyline.
  std::vector<double> A(static_cast<std::size_t>(d) * d, 0.0);
  int k = 0;  // fine index reached
  for (std::size_t g = 0; g < out_times.size(); ++g) {
    const double target = out_times[g];
    const int kt = detail::locate_time(ft, target);
    if (kt < 0) {
      throw invalid_input("build_limit: grid time not on the fine grid");
    }
    for (; k < kt; ++k) {
      for (int c = 0; c < d; ++c) {
        const double xc = fine.value(k, c);
        const double dc = fine.value(k + 1, c) - xc;
        for (int e = c + 1; e < d; ++e) {
          const double xe = fine.value(k, e);
          const double de = fine.value(k + 1, e) - xe;
          const double v = 0.5 * (xc * de - xe * dc);
          A[static_cast<std::size_t>(c) * d + e] += v;
          A[static_cast<std::size_t>(e) * d + c] -= v;
        }
      }
    }
    double* xrow = out.xs.data() + g * static_cast<std::size_t>(m);
    for (int c = 0; c < d; ++c) {
      xrow[c] = fine.value(kt, c);
      xrow[d + c] = fine.value(kt, c);
    }
    double* arow = out.areas.data() + g * static_cast<std::size_t>(m) * m;
    for (int c = 0; c < d; ++c) {
      for (int e = 0; e < d; ++e) {
        const double a_ce = A[static_cast<std::size_t>(c) * d + e];
        double q_ce;
        if (mode == QvMode::analytic) {
          q_ce = (c == e) ? ft[kt] : 0.0;
        } else {
          q_ce = rqv.row(kt)[static_cast<std::size_t>(c) * d + e];
        }
        arow[static_cast<std::size_t>(c) * m + e] = a_ce;                    // bb
        arow[static_cast<std::size_t>(c) * m + (d + e)] = a_ce - 0.5 * q_ce; // bf
        arow[static_cast<std::size_t>(d + c) * m + e] = a_ce + 0.5 * q_ce;   // fb
        arow[static_cast<std::size_t>(d + c) * m + (d + e)] = a_ce;          // ff
      }
    }
  }
  return out;
}

// Skeleton restricted to a subset of its times (absolute values are kept, so
// this is exact).
inline GroupPathSkeleton restrict_to_times(const GroupPathSkeleton& s,
                                           const std::vector<double>& times) {
  s.validate("restrict_to_times");
  GroupPathSkeleton out;
  out.dim = s.dim;
  out.times = times;
  out.xs.reserve(times.size() * static_cast<std::size_t>(s.dim));
  out.areas.reserve(times.size() * static_cast<std::size_t>(s.dim) * s.dim);
  for (double t : times) {
    const int k = detail::locate_time(s.times, t);
    if (k < 0) throw invalid_input("restrict_to_times: time not in skeleton");
    out.xs.insert(out.xs.end(), s.x_row(k), s.x_row(k) + s.dim);
    out.areas.insert(out.areas.end(), s.a_row(k),
                     s.a_row(k) + static_cast<std::size_t>(s.dim) * s.dim);
  }
  return out;
}

namespace detail {

// Balanced interval tree over skeleton indices with anchor/radius data for
// triangle-inequality pruning of pairwise maximizations.  radius[v] bounds
// max_{i in node v} ||X_{t_anchor, t_i}|| from above, anchor being the
// node's leftmost index.
class IncrementTree {
 public:
  explicit IncrementTree(const GroupPathSkeleton& s) : s_(s) {
    const int k = s.count();
    nodes_ = 1;
    while (nodes_ < k) nodes_ *= 2;
    lo_.assign(2 * nodes_, 0);
    hi_.assign(2 * nodes_, 0);
    radius_.assign(2 * nodes_, 0.0);
    build(1, 0, k);
  }

  // v[j] = max_{i<j} v[i] + d(i,j)^p over the skeleton, v[0] = 0; returns
  // v[last].  Exact: pruning only skips ranges whose upper bound cannot
  // beat the best candidate found.  Relies on v being nondecreasing.
  double pvar_power_sum(double p) const {
    const int k = s_.count();
    std::vector<double> v(k, 0.0);
    std::vector<int> stack;
    stack.reserve(64);
    for (int j = 1; j < k; ++j) {
      double best = v[j - 1] + std::pow(increment_norm(s_, j - 1, j), p);
      stack.clear();
      stack.push_back(1);
      while (!stack.empty()) {
        const int node = stack.back();
        stack.pop_back();
        const int lo = lo_[node];
        const int hi = std::min(hi_[node], j);
        if (hi <= lo) continue;
        const double bound =
            v[hi - 1] +
            std::pow(increment_norm(s_, lo, j) + radius_[node], p);
        if (bound <= best) continue;
        if (hi_[node] - lo <= kLeaf) {
          for (int i = lo; i < hi; ++i) {
            const double cand = v[i] + std::pow(increment_norm(s_, i, j), p);
            if (cand > best) best = cand;
          }
        } else {
          stack.push_back(2 * node);      // left examined after right
          stack.push_back(2 * node + 1);
        }
      }
      v[j] = best;
    }
    return v[k - 1];
  }

  // max_{i<j} ||X_{t_i,t_j}|| / (t_j - t_i)^alpha, exact by the same
  // pruning argument.
  double holder_ratio_max(double alpha) const {
    const int k = s_.count();
    double best = 0.0;
    std::vector<int> stack;
    stack.reserve(64);
    for (int j = 1; j < k; ++j) {
      const double tj = s_.times[j];
      stack.clear();
      stack.push_back(1);
      while (!stack.empty()) {
        const int node = stack.back();
        stack.pop_back();
        const int lo = lo_[node];
        const int hi = std::min(hi_[node], j);
        if (hi <= lo) continue;
        const double gap = tj - s_.times[hi - 1];  // smallest gap in range
        const double bound =
            (increment_norm(s_, lo, j) + radius_[node]) / std::pow(gap, alpha);
        if (bound <= best) continue;
        if (hi_[node] - lo <= kLeaf) {
          for (int i = lo; i < hi; ++i) {
            const double cand =
                increment_norm(s_, i, j) / std::pow(tj - s_.times[i], alpha);
            if (cand > best) best = cand;
          }
        } else {
          stack.push_back(2 * node);
          stack.push_back(2 * node + 1);
        }
      }
    }
    return best;
  }

 private:
  static constexpr int kLeaf = 8;

  void build(int node, int lo, int hi) {
    lo_[node] = lo;
    hi_[node] = hi;
    if (hi - lo <= kLeaf) {
      double r = 0.0;
      for (int i = lo + 1; i < hi; ++i) {
        r = std::max(r, increment_norm(s_, lo, i));
      }
      radius_[node] = r;
      return;
    }
    const int mid = lo + (hi - lo) / 2;
    build(2 * node, lo, mid);
    build(2 * node + 1, mid, hi);
    // Triangle bound: anchor is lo for both this node and its left child.
    radius_[node] = std::max(
        radius_[2 * node], increment_norm(s_, lo, mid) + radius_[2 * node + 1]);
  }

  const GroupPathSkeleton& s_;
  int nodes_ = 0;
  std::vector<int> lo_, hi_;
  std::vector<double> radius_;
};

}  // namespace detail

// p-variation seminorm of a skeleton: sup over partitions of skeleton times
// of sum ||increment||^p, to the power 1/p.  Computed by exact dynamic
// programming with metric pruning.
inline double pvar_norm(const GroupPathSkeleton& s, double p) {
  s.validate("pvar_norm");
  if (!(p > 1.0)) throw invalid_input("pvar_norm: requires p > 1");
  if (s.count() < 2) return 0.0;
  detail::IncrementTree tree(s);
  return std::pow(tree.pvar_power_sum(p), 1.0 / p);
}

// p-variation distance between two rough paths on a common grid; same DP
// with per-block cost d(a-increment, b-increment)^p.
inline double pvar_dist(const GroupPathSkeleton& a, const GroupPathSkeleton& b,
                        double p) {
  detail::check_common_grid(a, b, "pvar_dist");
  if (!(p > 1.0)) throw invalid_input("pvar_dist: requires p > 1");
  const int k = a.count();
  if (k < 2) return 0.0;
  std::vector<double> v(k, 0.0);
  for (int j = 1; j < k; ++j) {
    double best = 0.0;
    for (int i = 0; i < j; ++i) {
      const double cand =
          v[i] + std::pow(detail::cross_increment_dist(a, b, i, j), p);
      if (cand > best) best = cand;
    }
    v[j] = best;
  }
  return std::pow(v[k - 1], 1.0 / p);
}

// d_0: sup over increment pairs; d_inf: sup over absolute values.
inline double d0_dist(const GroupPathSkeleton& a, const GroupPathSkeleton& b) {
  detail::check_common_grid(a, b, "d0_dist");
  double worst = 0.0;
  for (int i = 0; i + 1 < a.count(); ++i) {
    for (int j = i + 1; j < a.count(); ++j) {
      worst = std::max(worst, detail::cross_increment_dist(a, b, i, j));
    }
  }
  return worst;
}

inline double dinf_dist(const GroupPathSkeleton& a, const GroupPathSkeleton& b) {
  detail::check_common_grid(a, b, "dinf_dist");
  double worst = 0.0;
  for (int k = 0; k < a.count(); ++k) {
    worst = std::max(worst, dist(a.element(k), b.element(k)));
  }
  return worst;
}

// alpha-Hoelder seminorm over skeleton pairs.
inline double holder_norm(const GroupPathSkeleton& s, double alpha) {
  s.validate("holder_norm");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw invalid_input("holder_norm: requires alpha in (0,1)");
  }
  if (s.count() < 2) return 0.0;
  detail::IncrementTree tree(s);
  return tree.holder_ratio_max(alpha);
}

// sup of ||X_{t_i,t_j}|| over skeleton pairs with t_j - t_i <= delta.
inline double window_sup_norm(const GroupPathSkeleton& s, double delta) {
  s.validate("window_sup_norm");
  double worst = 0.0;
  int i = 0;
  for (int j = 1; j < s.count(); ++j) {
    while (s.times[j] - s.times[i] > delta) ++i;
    for (int q = i; q < j; ++q) {
      worst = std::max(worst, detail::increment_norm(s, q, j));
    }
  }
  return worst;
}

// CSV: header "t,x1..xm,A_1_2,..." (upper triangle, row-major).
inline void save_skeleton_csv(const GroupPathSkeleton& s, const std::string& path) {
  s.validate("save_skeleton_csv");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw write_error("save_skeleton_csv: cannot open " + path);
  f << "t";
  for (int c = 1; c <= s.dim; ++c) f << ",x" << c;
  for (int c = 1; c <= s.dim; ++c) {
    for (int e = c + 1; e <= s.dim; ++e) f << ",A_" << c << "_" << e;
  }
  f << "\n";
  for (int k = 0; k < s.count(); ++k) {
    f << format_double(s.times[k]);
    for (int c = 0; c < s.dim; ++c) f << "," << format_double(s.x_row(k)[c]);
    for (int c = 0; c < s.dim; ++c) {
      for (int e = c + 1; e < s.dim; ++e) {
        f << "," << format_double(s.a_row(k)[static_cast<std::size_t>(c) * s.dim + e]);
      }
    }
    f << "\n";
  }
  if (!f) throw write_error("save_skeleton_csv: write failed for " + path);
}

inline GroupPathSkeleton load_skeleton_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("load_skeleton_csv: cannot open " + path);
  std::string line;
  if (!std::getline(f, line)) throw io_error("load_skeleton_csv: empty file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  int cols = 0;
  {
    std::stringstream hs(line);
    std::string col;
    while (std::getline(hs, col, ',')) ++cols;
  }
  // cols = 1 + m + m(m-1)/2  =>  solve for m.
  int m = 0;
  while (1 + m + m * (m - 1) / 2 < cols) ++m;
  if (m < 1 || 1 + m + m * (m - 1) / 2 != cols) {
    throw io_error("load_skeleton_csv: line 1: unrecognized column count");
  }

  GroupPathSkeleton s;
  s.dim = m;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) {
      const char* cs = cell.c_str();
      char* end = nullptr;
      const double v = std::strtod(cs, &end);
      if (end == cs || *end != '\0') {
        throw io_error("load_skeleton_csv: line " + std::to_string(lineno) +
                       ": non-numeric cell '" + cell + "'");
      }
      row.push_back(v);
    }
    if (static_cast<int>(row.size()) != cols) {
      throw io_error("load_skeleton_csv: line " + std::to_string(lineno) +
                     ": wrong cell count");
    }
    s.times.push_back(row[0]);
    for (int c = 0; c < m; ++c) s.xs.push_back(row[1 + c]);
    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
    int q = 1 + m;
    for (int c = 0; c < m; ++c) {
      for (int e = c + 1; e < m; ++e) {
        a[static_cast<std::size_t>(c) * m + e] = row[q];
        a[static_cast<std::size_t>(e) * m + c] = -row[q];
        ++q;
      }
    }
    s.areas.insert(s.areas.end(), a.begin(), a.end());
  }
  s.validate("load_skeleton_csv");
  return s;
}

}  // namespace leadlag
