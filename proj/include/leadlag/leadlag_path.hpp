#pragma once

// The Hoff lead-lag path X^D built from a sampled series.
//
// Given samples X_{t_0..t_n} on a partition D and midpoints
// t_i^* = (t_i + t_{i+1})/2, X^D : [0,1] -> R^{2d} pairs a lag ("b",
// coordinates 0..d-1) copy of the signal with a lead ("f", coordinates
// d..2d-1) copy.  Per sampling interval it spends the first half moving one
// block and the second half moving the other:
//
//   [t_i , t_i^*):  lag runs  X_{t_{i-1}} -> X_{t_i},  lead frozen at X_{t_{i+1}}
//   [t_i^*, t_{i+1}): lead runs X_{t_{i+1}} -> X_{t_{i+2}}, lag frozen at X_{t_i}
//
// with two special intervals: on [0, t_0^*) the lead runs 0 -> X_{t_1} with
// the lag frozen at 0, and on [t_{n-1}^*, t_n] the lag runs
// X_{t_{n-1}} -> X_{t_n} with the lead frozen at X_{t_n}.  (The generic lead
// case stops at i = n-2, so no out-of-range index is ever referenced.)
//
// The path is materialized as 2n axis-directed segments (degenerate moves
// retained).  Segment intervals are right-open except the last; this is the
// convention used by eval_hoff at breakpoints.
//
// Only this midpoint-shifted convention is implemented; variants that skip
// the t_i^* stagger change the area normalization and are out of scope.

#include <cstddef>
#include <fstream>
#include <string>
#include <vector>

#include "leadlag/errors.hpp"
#include "leadlag/polyline.hpp"
#include "leadlag/timeseries.hpp"

namespace leadlag {

struct HoffSegmentView {
  double t0 = 0.0, t1 = 0.0;
  const double* p0 = nullptr;  // 2d entries
  const double* p1 = nullptr;
};

struct HoffPath {
  int dim = 0;                  // d; the path lives in R^{2d}
  std::vector<double> times;    // 2n+1 breakpoints t_0, t_0^*, t_1, ...
  std::vector<double> points;   // (2n+1) x 2d, row-major
  std::vector<double> midpoints;  // the t_i^*

  int dim2() const { return 2 * dim; }
  int segment_count() const { return static_cast<int>(times.size()) - 1; }

  HoffSegmentView segment(int k) const {
    HoffSegmentView s;
    s.t0 = times[k];
    s.t1 = times[k + 1];
    s.p0 = points.data() + static_cast<std::size_t>(k) * dim2();
    s.p1 = points.data() + static_cast<std::size_t>(k + 1) * dim2();
    return s;
  }

  PolylinePath as_polyline() const {
    PolylinePath p;
    p.dim = dim2();
    p.times = times;
    p.values = points;
    return p;
  }
};

inline HoffPath build_hoff(const SampledSeries& series) {
  series.validate("build_hoff");
  const int n = series.partition.intervals();
  if (n < 1) throw invalid_input("build_hoff: need at least one interval");
  const int d = series.dim;
  const auto& t = series.partition.points;

  HoffPath h;
  h.dim = d;
  h.times.resize(2 * static_cast<std::size_t>(n) + 1);
  h.points.assign((2 * static_cast<std::size_t>(n) + 1) * 2 * d, 0.0);
  h.midpoints.resize(n);

  auto pos = [&](int row) { return h.points.data() + static_cast<std::size_t>(row) * 2 * d; };
  auto set_pair = [&](int row, const double* lag, const double* lead) {
    double* p = pos(row);
    for (int c = 0; c < d; ++c) p[c] = lag[c];
    for (int c = 0; c < d; ++c) p[d + c] = lead[c];
  };

  for (int i = 0; i < n; ++i) {
    h.midpoints[i] = 0.5 * (t[i] + t[i + 1]);
    h.times[2 * i] = t[i];
    h.times[2 * i + 1] = h.midpoints[i];
  }
  h.times[2 * n] = t[n];

  // Breakpoint values; rows 2i sit at t_i, rows 2i+1 at t_i^*.
  set_pair(0, series.row(0), series.row(0));           // (0, 0)
  set_pair(1, series.row(0), series.row(1));           // lead reached X_{t_1}
  for (int i = 1; i < n; ++i) {
    set_pair(2 * i, series.row(i - 1), series.row(i + 1));
    set_pair(2 * i + 1, series.row(i), series.row(i + 1));
  }
  set_pair(2 * n, series.row(n), series.row(n));       // (X_{t_n}, X_{t_n})
  return h;
}

// Point evaluation.  Breakpoints resolve to the right-hand segment except at
// u = 1, where the closed last interval applies.
inline std::vector<double> eval_hoff(const HoffPath& h, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw invalid_input("eval_hoff: u outside [0,1]");
  const int nseg = h.segment_count();
  int lo = 0, hi = nseg - 1;
  while (lo < hi) {  // first segment with t1 > u (right-continuous pick)
    const int mid = (lo + hi) / 2;
    if (h.times[mid + 1] > u) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const HoffSegmentView s = h.segment(lo);
  const double w = (s.t1 > s.t0) ? (u - s.t0) / (s.t1 - s.t0) : 0.0;
  std::vector<double> out(h.dim2());
  for (int c = 0; c < h.dim2(); ++c) out[c] = s.p0[c] + w * (s.p1[c] - s.p0[c]);
  return out;
}

namespace detail {

inline PolylinePath project_block(const HoffPath& h, int offset) {
  PolylinePath p;
  p.dim = h.dim;
  p.times = h.times;
  p.values.resize(h.times.size() * static_cast<std::size_t>(h.dim));
  for (std::size_t k = 0; k < h.times.size(); ++k) {
    const double* row = h.points.data() + k * h.dim2();
    for (int c = 0; c < h.dim; ++c) p.values[k * h.dim + c] = row[offset + c];
  }
  return p;
}

}  // namespace detail

// Lag (b) block as a d-dimensional piecewise-linear path; a time
// reparameterization of the linear interpolation of the series.
inline PolylinePath lag_of(const HoffPath& h) { return detail::project_block(h, 0); }

// Lead (f) block.
inline PolylinePath lead_of(const HoffPath& h) { return detail::project_block(h, h.dim); }

// Plot-ready serialization: header "t,b1..bd,f1..fd".  samples == 0 writes
// the exact breakpoints; samples > 0 writes that many uniform steps.
inline void save_hoff_csv(const HoffPath& h, const std::string& path, int samples = 0) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw write_error("save_hoff_csv: cannot open " + path);
  f << "t";
  for (int c = 1; c <= h.dim; ++c) f << ",b" << c;
  for (int c = 1; c <= h.dim; ++c) f << ",f" << c;
  f << "\n";
  auto write_row = [&](double t, const double* p) {
    f << format_double(t);
    for (int c = 0; c < h.dim2(); ++c) f << "," << format_double(p[c]);
    f << "\n";
  };
  if (samples <= 0) {
    for (std::size_t k = 0; k < h.times.size(); ++k) {
      write_row(h.times[k], h.points.data() + k * h.dim2());
    }
  } else {
    for (int k = 0; k <= samples; ++k) {
      const double u = static_cast<double>(k) / samples;
      const std::vector<double> p = eval_hoff(h, u);
      write_row(u, p.data());
    }
  }
  if (!f) throw write_error("save_hoff_csv: write failed for " + path);
}

}  // namespace leadlag
