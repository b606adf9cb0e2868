#pragma once

// Partitions of [0,1], sampled d-dimensional series, semimartingale
// simulators and CSV ingestion.
//
// Conventions fixed across the library: time lives in [0,1]; external data
// is rescaled affinely onto it; series are translated so the first value is
// the origin (signatures are translation invariant, so nothing is lost).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "leadlag/errors.hpp"
#include "leadlag/rng.hpp"

namespace leadlag {

// Strictly increasing points in [0,1] containing both endpoints.
struct Partition {
  std::vector<double> points;

  int intervals() const { return static_cast<int>(points.size()) - 1; }

  double mesh() const {
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
      m = std::max(m, points[k + 1] - points[k]);
    }
    return m;
  }

  void validate(const char* who = "Partition") const {
    if (points.size() < 2 || points.front() != 0.0 || points.back() != 1.0) {
      throw invalid_input(std::string(who) + ": need points spanning [0,1]");
    }
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
      if (!(points[k] < points[k + 1])) {
        throw invalid_input(std::string(who) + ": points not strictly increasing");
      }
    }
  }
};

// Uniform partition {k/n : k = 0..n}.
inline Partition uniform_partition(int n) {
  if (n < 1) throw invalid_input("uniform_partition: n must be >= 1");
  Partition d;
  d.points.resize(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) d.points[k] = static_cast<double>(k) / n;
  d.points.back() = 1.0;
  return d;
}

// Half-split dyadic partition: dyadic points of level 2^n on [0,1/2] joined
// with dyadic points of level n on [1/2,1].  Mesh is 2^-n, yet the point
// count on the left half grows like 2^(2^n - 1), so n is capped at 5.
inline Partition dyadic_halfsplit_partition(int n) {
  if (n < 1) throw invalid_input("dyadic_halfsplit_partition: n must be >= 1");
  if (n > 5) {
    throw invalid_input(
        "dyadic_halfsplit_partition: n > 5 rejected (2^(2^n) grid overflows desk scale)");
  }
  Partition d;
  const std::uint64_t left_den = 1ULL << (1ULL << n);  // 2^(2^n)
  const std::uint64_t right_den = 1ULL << n;           // 2^n
  for (std::uint64_t k = 0; 2 * k <= left_den; ++k) {
    d.points.push_back(static_cast<double>(k) / static_cast<double>(left_den));
  }
  for (std::uint64_t k = right_den / 2 + 1; k <= right_den; ++k) {
    d.points.push_back(static_cast<double>(k) / static_cast<double>(right_den));
  }
  d.validate("dyadic_halfsplit_partition");
  return d;
}

// Time-stamped d-dimensional observations, one value row per partition
// point, stored row-major.  values[0..dim) is always the zero vector.
struct SampledSeries {
  Partition partition;
  int dim = 0;
  std::vector<double> values;  // (#points) x dim

  int points() const { return static_cast<int>(partition.points.size()); }
  double value(int k, int c) const {
    return values[static_cast<std::size_t>(k) * dim + c];
  }
  double* row(int k) { return values.data() + static_cast<std::size_t>(k) * dim; }
  const double* row(int k) const {
    return values.data() + static_cast<std::size_t>(k) * dim;
  }

  void validate(const char* who = "SampledSeries") const {
    partition.validate(who);
    if (dim < 1 || values.size() != partition.points.size() * static_cast<std::size_t>(dim)) {
      throw invalid_input(std::string(who) + ": value/partition size mismatch");
    }
  }
};

enum class SimKind { brownian, brownian_plus_drift, deterministic_fn };

// Simulation request.  fine_grid is the reference grid that downstream
// "truth" quantities (Levy area, realized brackets) are computed on; any
// evaluation partition must be a subset of it.
struct SimSpec {
  SimKind kind = SimKind::brownian;
  int dim = 1;
  std::uint64_t seed = 0;
  Partition fine_grid;
  // brownian_plus_drift: V_t = drift_amplitude * t per coordinate.
  double drift_amplitude = 0.0;
  // deterministic_fn: t -> R^dim, evaluated on the grid then translated to
  // start at 0.
  std::function<std::vector<double>(double)> fn;
};

// Simulation output plus the analytic metadata the spec of the run implies:
// for Brownian kinds the bracket is known, <X>_t = t * Identity.
struct SimResult {
  SampledSeries series;
  bool unit_bracket = false;  // true when <X>_{s,t} = (t-s) * I is exact
};

inline SimResult simulate(const SimSpec& spec) {
  spec.fine_grid.validate("simulate");
  if (spec.dim < 1) throw invalid_input("simulate: dim must be >= 1");
  const int n_pts = static_cast<int>(spec.fine_grid.points.size());
  SimResult out;
  out.series.partition = spec.fine_grid;
  out.series.dim = spec.dim;
  out.series.values.assign(static_cast<std::size_t>(n_pts) * spec.dim, 0.0);

  switch (spec.kind) {
    case SimKind::brownian:
    case SimKind::brownian_plus_drift: {
      GaussianRng rng(spec.seed);
      for (int k = 1; k < n_pts; ++k) {
        const double gap = spec.fine_grid.points[k] - spec.fine_grid.points[k - 1];
        const double sd = std::sqrt(gap);
        for (int c = 0; c < spec.dim; ++c) {
          out.series.values[static_cast<std::size_t>(k) * spec.dim + c] =
              out.series.values[static_cast<std::size_t>(k - 1) * spec.dim + c] +
              sd * rng.gaussian();
        }
      }
      if (spec.kind == SimKind::brownian_plus_drift) {
        for (int k = 0; k < n_pts; ++k) {
          const double v = spec.drift_amplitude * spec.fine_grid.points[k];
          for (int c = 0; c < spec.dim; ++c) {
            out.series.values[static_cast<std::size_t>(k) * spec.dim + c] += v;
          }
        }
      }
      out.unit_bracket = true;  // drift does not change the bracket
      break;
    }
    case SimKind::deterministic_fn: {
      if (!spec.fn) throw invalid_input("simulate: deterministic_fn requires fn");
      std::vector<double> base = spec.fn(spec.fine_grid.points[0]);
      if (base.size() != static_cast<std::size_t>(spec.dim)) {
        throw invalid_input("simulate: fn dimension mismatch");
      }
      for (int k = 0; k < n_pts; ++k) {
        std::vector<double> v = spec.fn(spec.fine_grid.points[k]);
        if (v.size() != static_cast<std::size_t>(spec.dim)) {
          throw invalid_input("simulate: fn dimension mismatch");
        }
        for (int c = 0; c < spec.dim; ++c) {
          out.series.values[static_cast<std::size_t>(k) * spec.dim + c] = v[c] - base[c];
        }
      }
      out.unit_bracket = false;
      break;
    }
  }
  return out;
}

namespace detail {

// Index of `t` in `points` up to 1e-12, or -1.
inline int locate_time(const std::vector<double>& points, double t) {
  auto it = std::lower_bound(points.begin(), points.end(), t - 1e-12);
  if (it == points.end() || std::abs(*it - t) > 1e-12) return -1;
  return static_cast<int>(it - points.begin());
}

}  // namespace detail

// Subsample a series at the points of a nested coarser partition.
inline SampledSeries restrict(const SampledSeries& series, const Partition& coarse) {
  series.validate("restrict");
  coarse.validate("restrict");
  SampledSeries out;
  out.partition = coarse;
  out.dim = series.dim;
  out.values.reserve(coarse.points.size() * static_cast<std::size_t>(series.dim));
  for (std::size_t q = 0; q < coarse.points.size(); ++q) {
    const int k = detail::locate_time(series.partition.points, coarse.points[q]);
    if (k < 0) {
      throw invalid_input("restrict: partition not nested in series grid");
    }
    // Keep the series' own time stamp so nesting stays exact downstream.
    out.partition.points[q] = series.partition.points[k];
    for (int c = 0; c < series.dim; ++c) {
      out.values.push_back(series.value(k, c));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV: header "t,x1,...,xd"; times rescaled affinely to [0,1]; values
// translated so row 0 is the origin.  save/load round-trips exactly (17
// significant digits).

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void save_csv(const SampledSeries& series, const std::string& path) {
  series.validate("save_csv");
  std::ofstream f(path, std::ios::binary);  // binary: LF endings everywhere
  if (!f) throw write_error("save_csv: cannot open " + path);
  f << "t";
  for (int c = 1; c <= series.dim; ++c) f << ",x" << c;
  f << "\n";
  for (int k = 0; k < series.points(); ++k) {
    f << format_double(series.partition.points[k]);
    for (int c = 0; c < series.dim; ++c) f << "," << format_double(series.value(k, c));
    f << "\n";
  }
  if (!f) throw write_error("save_csv: write failed for " + path);
}

inline SampledSeries load_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error("load_csv: cannot open " + path);
  std::string line;
  if (!std::getline(f, line)) throw io_error("load_csv: empty file " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  int dim = 0;
  {
    std::stringstream hs(line);
    std::string col;
    bool first = true;
    while (std::getline(hs, col, ',')) {
      if (first) {
        if (col != "t") throw io_error("load_csv: line 1: header must start with 't'");
        first = false;
      } else {
        ++dim;
      }
    }
    if (dim < 1) throw io_error("load_csv: line 1: no value columns");
  }

  std::vector<double> times;
  std::vector<double> vals;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string cell;
    int col = 0;
    while (std::getline(ls, cell, ',')) {
      const char* s = cell.c_str();
      char* end = nullptr;
      const double v = std::strtod(s, &end);
      if (end == s || *end != '\0') {
        throw io_error("load_csv: line " + std::to_string(lineno) +
                       ": non-numeric cell '" + cell + "'");
      }
      if (col == 0) {
        times.push_back(v);
      } else {
        vals.push_back(v);
      }
      ++col;
    }
    if (col != dim + 1) {
      throw io_error("load_csv: line " + std::to_string(lineno) + ": expected " +
                     std::to_string(dim + 1) + " cells, got " + std::to_string(col));
    }
    if (times.size() >= 2 && !(times[times.size() - 2] < times.back())) {
      throw io_error("load_csv: line " + std::to_string(lineno) +
                     ": times not strictly increasing");
    }
  }
  if (times.size() < 2) throw io_error("load_csv: need at least two rows");

  SampledSeries out;
  out.dim = dim;
  const double t0 = times.front();
  const double span = times.back() - t0;
  out.partition.points.resize(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    out.partition.points[k] = (times[k] - t0) / span;
  }
  out.partition.points.front() = 0.0;
  out.partition.points.back() = 1.0;
  out.values.resize(vals.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (int c = 0; c < dim; ++c) {
      out.values[k * dim + c] = vals[k * dim + c] - vals[c];
    }
  }
  out.validate("load_csv");
  return out;
}

}  // namespace leadlag
