// Reference kernels. The AVX2 variants must match the operation order here.

#include "hburg/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstddef>

namespace hburg::kernels {

namespace {

void axpy(ConstSpan y, double a, ConstSpan x, MutSpan out) {
  assert(y.size() == x.size() && out.size() == x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = y[i] + a * x[i];
  }
}

void rk4_combine(MutSpan y, ConstSpan k1, ConstSpan k2, ConstSpan k3, ConstSpan k4, double h6) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = y[i] + h6 * (((k1[i] + 2.0 * k2[i]) + 2.0 * k3[i]) + k4[i]);
  }
}

void half_square(ConstSpan v, MutSpan out) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = (v[i] * v[i]) * 0.5;
  }
}

void product(ConstSpan a, ConstSpan b, MutSpan out) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] * b[i];
  }
}

void wave_accel(const WaveCoeffs& k, ConstSpan u, ConstSpan q, ConstSpan damp, MutSpan out) {
  const std::size_t n = u.size();
  if (n == 0) {
    return;
  }
  out[0] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d2 = ((u[i + 1] - 2.0 * u[i]) + u[i - 1]) * k.inv_dx2;
    const double d1 = (q[i + 1] - q[i - 1]) * k.inv_2dx;
    out[i] = ((k.nu * d2 - d1) - damp[i]) * k.inv_mu;
  }
  out[n - 1] = 0.0;
}

void diff1(ConstSpan u, double inv_2dx, MutSpan out) {
  const std::size_t n = u.size();
  if (n == 0) {
    return;
  }
  out[0] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = (u[i + 1] - u[i - 1]) * inv_2dx;
  }
  out[n - 1] = 0.0;
}

void diff2(ConstSpan u, double inv_dx2, MutSpan out) {
  const std::size_t n = u.size();
  if (n == 0) {
    return;
  }
  out[0] = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = ((u[i + 1] - 2.0 * u[i]) + u[i - 1]) * inv_dx2;
  }
  out[n - 1] = 0.0;
}

inline void neumaier_add(double& s, double& comp, double x) {
  const double t = s + x;
  if (std::fabs(s) >= std::fabs(x)) {
    comp += (s - t) + x;
  } else {
    comp += (x - t) + s;
  }
  s = t;
}

double sum(ConstSpan f) {
  double s = 0.0;
  double comp = 0.0;
  for (double x : f) {
    neumaier_add(s, comp, x);
  }
  return s + comp;
}

double dot(ConstSpan a, ConstSpan b) {
  double s = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    neumaier_add(s, comp, a[i] * b[i]);
  }
  return s + comp;
}

double max_abs(ConstSpan f) {
  double m = 0.0;
  for (double x : f) {
    const double a = std::fabs(x);
    if (a > m) {
      m = a;
    }
  }
  return m;
}

bool all_finite(ConstSpan f) {
  for (double x : f) {
    if (!std::isfinite(x)) {
      return false;
    }
  }
  return true;
}

} // namespace

namespace detail {

const KernelTable scalar_table{
    Backend::Scalar, "scalar", axpy, rk4_combine, half_square, product, wave_accel,
    diff1,           diff2,    sum,  dot,         max_abs,     all_finite,
};

} // namespace detail

} // namespace hburg::kernels
