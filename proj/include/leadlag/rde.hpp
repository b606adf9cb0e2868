#pragma once

// The lead-lag random ODE  dY = f(X^{D,b}) dX^{D,f}  solved exactly segment
// by segment, classical reference integrals, and the augmented system whose
// projection recovers Y.
//
// The driver is axis-directed: on lag-moving segments dX^f = 0 so Y is
// frozen, and on lead-moving segments X^b is frozen so the integrand is
// constant and one exact update  y += sum_i f_i(X^b) dX^{f,i}  applies.
// The fourth-order Runge-Kutta solver is kept as a redundant oracle; with a
// constant integrand per segment a single step is already exact.

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "leadlag/errors.hpp"
#include "leadlag/leadlag_path.hpp"
#include "leadlag/timeseries.hpp"

namespace leadlag {

// Family f = (f_i)_{i=1..dim_in}, each R^{dim_in} -> R^{dim_out}.  eval
// returns the dim_out x dim_in matrix [f_1 | ... | f_d], row-major.  Fields
// used in tests are globally smooth with bounded derivatives; gamma-Lipschitz
// regularity is asserted by the caller, not checked.
struct VectorFieldSet {
  int dim_in = 1;
  int dim_out = 1;
  std::string name = "custom";
  std::function<std::vector<double>(const std::vector<double>&)> eval;
};

// Named scalar fields (dim_in = dim_out = 1) selectable from the CLI.
inline VectorFieldSet make_builtin_field(const std::string& name) {
  VectorFieldSet f;
  f.name = name;
  if (name == "const1") {
    f.eval = [](const std::vector<double>&) { return std::vector<double>{1.0}; };
  } else if (name == "linear") {
    f.eval = [](const std::vector<double>& x) { return std::vector<double>{x[0]}; };
  } else if (name == "sin") {
    f.eval = [](const std::vector<double>& x) {
      return std::vector<double>{std::sin(x[0])};
    };
  } else if (name == "tanhpoly") {
    // tanh-saturated cubic; smooth with bounded derivatives of all orders.
    f.eval = [](const std::vector<double>& x) {
      return std::vector<double>{std::tanh(x[0] * x[0] * x[0] / 3.0 - x[0])};
    };
  } else {
    throw invalid_input("unknown vector field '" + name +
                        "' (builtins: const1, linear, sin, tanhpoly)");
  }
  return f;
}

struct OdeRun {
  std::vector<double> times;  // segment boundaries, 2n+1 of them
  std::vector<double> y;      // (#times) x e, row-major
  std::vector<double> y0;
  std::string driver_id;
  std::optional<std::vector<double>> ito_ref;
  std::optional<std::vector<double>> strat_ref;

  int dim_out() const { return static_cast<int>(y0.size()); }
  std::vector<double> terminal() const {
    return std::vector<double>(y.end() - y0.size(), y.end());
  }
};

namespace detail {

inline void check_field(const HoffPath& h, const VectorFieldSet& f,
                        const std::vector<double>& y0, const char* who) {
  if (f.dim_in != h.dim) {
    throw invalid_input(std::string(who) + ": field dim_in != driver d");
  }
  if (static_cast<int>(y0.size()) != f.dim_out) {
    throw invalid_input(std::string(who) + ": y0 size != field dim_out");
  }
  if (!f.eval) throw invalid_input(std::string(who) + ": field not callable");
}

}  // namespace detail

inline OdeRun solve_leadlag_ode(const HoffPath& h, const VectorFieldSet& f,
                                const std::vector<double>& y0) {
  detail::check_field(h, f, y0, "solve_leadlag_ode");
  const int d = h.dim;
  const int e = f.dim_out;
  OdeRun run;
  run.times = h.times;
  run.y0 = y0;
  run.y.assign(h.times.size() * static_cast<std::size_t>(e), 0.0);
  std::vector<double> y = y0;
  std::copy(y.begin(), y.end(), run.y.begin());
  std::vector<double> xb(d);
  for (int k = 0; k < h.segment_count(); ++k) {
    const HoffSegmentView s = h.segment(k);
    bool lead_moves = false;
    for (int c = 0; c < d; ++c) {
      if (s.p1[d + c] != s.p0[d + c]) {
        lead_moves = true;
        break;
      }
    }
    if (lead_moves) {
      xb.assign(s.p0, s.p0 + d);  // lag block is frozen on this segment
      const std::vector<double> F = f.eval(xb);
      if (F.size() != static_cast<std::size_t>(e) * d) {
        throw invalid_input("solve_leadlag_ode: field returned wrong shape");
      }
      for (int r = 0; r < e; ++r) {
        double acc = 0.0;
        for (int c = 0; c < d; ++c) {
          acc += F[static_cast<std::size_t>(r) * d + c] * (s.p1[d + c] - s.p0[d + c]);
        }
        y[r] += acc;
      }
    }
    std::copy(y.begin(), y.end(),
              run.y.begin() + static_cast<std::size_t>(k + 1) * e);
  }
  return run;
}

// Classical RK4 within each segment; independent cross-check of the exact
// stepping.  The right-hand side g(u) = sum_i f_i(X^b(u)) (d/du)X^{f,i}(u)
// is evaluated from the segment's affine interpolation.
inline OdeRun solve_leadlag_ode_rk(const HoffPath& h, const VectorFieldSet& f,
                                   const std::vector<double>& y0, int substeps) {
  detail::check_field(h, f, y0, "solve_leadlag_ode_rk");
  if (substeps < 1) throw invalid_input("solve_leadlag_ode_rk: substeps >= 1");
  const int d = h.dim;
  const int e = f.dim_out;
  OdeRun run;
  run.times = h.times;
  run.y0 = y0;
  run.y.assign(h.times.size() * static_cast<std::size_t>(e), 0.0);
  std::vector<double> y = y0;
  std::copy(y.begin(), y.end(), run.y.begin());
  std::vector<double> xb(d), g(e);
  for (int k = 0; k < h.segment_count(); ++k) {
    const HoffSegmentView s = h.segment(k);
    const double span = s.t1 - s.t0;
    auto rhs = [&](double u, std::vector<double>& out) {
      const double w = (u - s.t0) / span;
      for (int c = 0; c < d; ++c) xb[c] = s.p0[c] + w * (s.p1[c] - s.p0[c]);
      const std::vector<double> F = f.eval(xb);
      for (int r = 0; r < e; ++r) {
        double acc = 0.0;
        for (int c = 0; c < d; ++c) {
          acc += F[static_cast<std::size_t>(r) * d + c] * (s.p1[d + c] - s.p0[d + c]) / span;
        }
        out[r] = acc;
      }
    };
    const double hstep = span / substeps;
    std::vector<double> k1(e), k2(e), k3(e), k4(e);
    for (int q = 0; q < substeps; ++q) {
      const double u = s.t0 + q * hstep;
      rhs(u, k1);
      rhs(u + 0.5 * hstep, k2);
      rhs(u + 0.5 * hstep, k3);
      rhs(u + hstep, k4);
      for (int r = 0; r < e; ++r) {
        y[r] += hstep / 6.0 * (k1[r] + 2.0 * k2[r] + 2.0 * k3[r] + k4[r]);
      }
    }
    std::copy(y.begin(), y.end(),
              run.y.begin() + static_cast<std::size_t>(k + 1) * e);
  }
  return run;
}

// Left-point Riemann sums on the series' own grid.
inline std::vector<double> ito_integral(const SampledSeries& fine,
                                        const VectorFieldSet& f) {
  fine.validate("ito_integral");
  if (f.dim_in != fine.dim) throw invalid_input("ito_integral: dimension mismatch");
  const int d = fine.dim;
  const int e = f.dim_out;
  std::vector<double> acc(e, 0.0);
  std::vector<double> x(d);
  for (int k = 0; k + 1 < fine.points(); ++k) {
    x.assign(fine.row(k), fine.row(k) + d);
    const std::vector<double> F = f.eval(x);
    for (int r = 0; r < e; ++r) {
      for (int c = 0; c < d; ++c) {
        acc[r] += F[static_cast<std::size_t>(r) * d + c] *
                  (fine.value(k + 1, c) - fine.value(k, c));
      }
    }
  }
  return acc;
}

// Midpoint-value sums  sum_k f((X_k + X_{k+1})/2) dX_k; second-order
// consistent reference for the geometric (Stratonovich) integral.
inline std::vector<double> strat_integral(const SampledSeries& fine,
                                          const VectorFieldSet& f) {
  fine.validate("strat_integral");
  if (f.dim_in != fine.dim) throw invalid_input("strat_integral: dimension mismatch");
  const int d = fine.dim;
  const int e = f.dim_out;
  std::vector<double> acc(e, 0.0);
  std::vector<double> x(d);
  for (int k = 0; k + 1 < fine.points(); ++k) {
    for (int c = 0; c < d; ++c) {
      x[c] = 0.5 * (fine.value(k, c) + fine.value(k + 1, c));
    }
    const std::vector<double> F = f.eval(x);
    for (int r = 0; r < e; ++r) {
      for (int c = 0; c < d; ++c) {
        acc[r] += F[static_cast<std::size_t>(r) * d + c] *
                  (fine.value(k + 1, c) - fine.value(k, c));
      }
    }
  }
  return acc;
}

// Augmented system on R^d (+) R^e:  dz = sum_i Q_i(z) dX^{b;i} + W_i(z)
// dX^{f;i} with Q_i the constant coordinate fields on the first block and
// W_i(z) = (0, f_i(z-hat)).  Exact stepping; the first block tracks the lag
// path and the projection onto the second block equals solve_leadlag_ode.
struct AugmentedRun {
  std::vector<double> times;
  std::vector<double> z;  // (#times) x (d+e)
  int dim_first = 0, dim_second = 0;
};

inline AugmentedRun solve_augmented(const HoffPath& h, const VectorFieldSet& f,
                                    const std::vector<double>& y0) {
  detail::check_field(h, f, y0, "solve_augmented");
  const int d = h.dim;
  const int e = f.dim_out;
  AugmentedRun run;
  run.times = h.times;
  run.dim_first = d;
  run.dim_second = e;
  run.z.assign(h.times.size() * static_cast<std::size_t>(d + e), 0.0);
  std::vector<double> zhat(d, 0.0);
  std::vector<double> zbar = y0;
  auto record = [&](int row) {
    double* out = run.z.data() + static_cast<std::size_t>(row) * (d + e);
    std::copy(zhat.begin(), zhat.end(), out);
    std::copy(zbar.begin(), zbar.end(), out + d);
  };
  record(0);
  for (int k = 0; k < h.segment_count(); ++k) {
    const HoffSegmentView s = h.segment(k);
    const std::vector<double> F = f.eval(zhat);  // W fields read z-hat first
    for (int r = 0; r < e; ++r) {
      double acc = 0.0;
      for (int c = 0; c < d; ++c) {
        acc += F[static_cast<std::size_t>(r) * d + c] * (s.p1[d + c] - s.p0[d + c]);
      }
      zbar[r] += acc;
    }
    for (int c = 0; c < d; ++c) zhat[c] += s.p1[c] - s.p0[c];
    record(k + 1);
  }
  return run;
}

}  // namespace leadlag
