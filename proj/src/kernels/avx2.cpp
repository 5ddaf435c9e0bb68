// AVX2 kernels, 4 doubles per lane group. Remainders fall back to the scalar
// operation order so elementwise results stay bit-identical to scalar.cpp.

#include "hburg/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#define HBURG_AVX2 __attribute__((target("avx2")))

namespace hburg::kernels {

namespace {

constexpr std::size_t kLanes = 4;

HBURG_AVX2 inline __m256d abs_pd(__m256d x) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

HBURG_AVX2 void axpy(ConstSpan y, double a, ConstSpan x, MutSpan out) {
  const std::size_t n = out.size();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d r = _mm256_add_pd(_mm256_loadu_pd(&y[i]), _mm256_mul_pd(va, _mm256_loadu_pd(&x[i])));
    _mm256_storeu_pd(&out[i], r);
  }
  for (; i < n; ++i) {
    out[i] = y[i] + a * x[i];
  }
}

HBURG_AVX2 void rk4_combine(MutSpan y, ConstSpan k1, ConstSpan k2, ConstSpan k3, ConstSpan k4, double h6) {
  const std::size_t n = y.size();
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d vh6 = _mm256_set1_pd(h6);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d acc = _mm256_add_pd(_mm256_loadu_pd(&k1[i]), _mm256_mul_pd(two, _mm256_loadu_pd(&k2[i])));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(two, _mm256_loadu_pd(&k3[i])));
    acc = _mm256_add_pd(acc, _mm256_loadu_pd(&k4[i]));
    _mm256_storeu_pd(&y[i], _mm256_add_pd(_mm256_loadu_pd(&y[i]), _mm256_mul_pd(vh6, acc)));
  }
  for (; i < n; ++i) {
    y[i] = y[i] + h6 * (((k1[i] + 2.0 * k2[i]) + 2.0 * k3[i]) + k4[i]);
  }
}

HBURG_AVX2 void half_square(ConstSpan v, MutSpan out) {
  const std::size_t n = v.size();
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d x = _mm256_loadu_pd(&v[i]);
    _mm256_storeu_pd(&out[i], _mm256_mul_pd(_mm256_mul_pd(x, x), half));
  }
  for (; i < n; ++i) {
    out[i] = (v[i] * v[i]) * 0.5;
  }
}

HBURG_AVX2 void product(ConstSpan a, ConstSpan b, MutSpan out) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_pd(&out[i], _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
  }
  for (; i < n; ++i) {
    out[i] = a[i] * b[i];
  }
}

HBURG_AVX2 void wave_accel(const WaveCoeffs& k, ConstSpan u, ConstSpan q, ConstSpan damp, MutSpan out) {
  const std::size_t n = u.size();
  if (n == 0) {
    return;
  }
  out[0] = 0.0;
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d nu = _mm256_set1_pd(k.nu);
  const __m256d inv_mu = _mm256_set1_pd(k.inv_mu);
  const __m256d inv_dx2 = _mm256_set1_pd(k.inv_dx2);
  const __m256d inv_2dx = _mm256_set1_pd(k.inv_2dx);
  std::size_t i = 1;
  for (; i + kLanes < n; i += kLanes) {
    const __m256d um = _mm256_loadu_pd(&u[i - 1]);
    const __m256d uc = _mm256_loadu_pd(&u[i]);
    const __m256d up = _mm256_loadu_pd(&u[i + 1]);
    const __m256d d2 = _mm256_mul_pd(_mm256_add_pd(_mm256_sub_pd(up, _mm256_mul_pd(two, uc)), um), inv_dx2);
    const __m256d d1 = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(&q[i + 1]), _mm256_loadu_pd(&q[i - 1])), inv_2dx);
    const __m256d r = _mm256_sub_pd(_mm256_sub_pd(_mm256_mul_pd(nu, d2), d1), _mm256_loadu_pd(&damp[i]));
    _mm256_storeu_pd(&out[i], _mm256_mul_pd(r, inv_mu));
  }
  for (; i + 1 < n; ++i) {
    const double d2 = ((u[i + 1] - 2.0 * u[i]) + u[i - 1]) * k.inv_dx2;
    const double d1 = (q[i + 1] - q[i - 1]) * k.inv_2dx;
    out[i] = ((k.nu * d2 - d1) - damp[i]) * k.inv_mu;
  }
  out[n - 1] = 0.0;
}

HBURG_AVX2 void diff1(ConstSpan u, double inv_2dx, MutSpan out) {
  const std::size_t n = u.size();
  if (n == 0) {
    return;
  }
  out[0] = 0.0;
  const __m256d s = _mm256_set1_pd(inv_2dx);
  std::size_t i = 1;
  for (; i + kLanes < n; i += kLanes) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(&u[i + 1]), _mm256_loadu_pd(&u[i - 1]));
    _mm256_storeu_pd(&out[i], _mm256_mul_pd(d, s));
  }
  for (; i + 1 < n; ++i) {
    out[i] = (u[i + 1] - u[i - 1]) * inv_2dx;
  }
  out[n - 1] = 0.0;
}

HBURG_AVX2 void diff2(ConstSpan u, double inv_dx2, MutSpan out) {
  const std::size_t n = u.size();
  if (n == 0) {
    return;
  }
  out[0] = 0.0;
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d s = _mm256_set1_pd(inv_dx2);
  std::size_t i = 1;
  for (; i + kLanes < n; i += kLanes) {
    const __m256d um = _mm256_loadu_pd(&u[i - 1]);
    const __m256d uc = _mm256_loadu_pd(&u[i]);
    const __m256d up = _mm256_loadu_pd(&u[i + 1]);
    _mm256_storeu_pd(&out[i], _mm256_mul_pd(_mm256_add_pd(_mm256_sub_pd(up, _mm256_mul_pd(two, uc)), um), s));
  }
  for (; i + 1 < n; ++i) {
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

HBURG_AVX2 inline void neumaier_add_pd(__m256d& s, __m256d& comp, __m256d x) {
  const __m256d t = _mm256_add_pd(s, x);
  const __m256d s_big = _mm256_cmp_pd(abs_pd(s), abs_pd(x), _CMP_GE_OQ);
  const __m256d when_s_big = _mm256_add_pd(_mm256_sub_pd(s, t), x);
  const __m256d when_x_big = _mm256_add_pd(_mm256_sub_pd(x, t), s);
  comp = _mm256_add_pd(comp, _mm256_blendv_pd(when_x_big, when_s_big, s_big));
  s = t;
}

// Folds the lane partials and a scalar tail into one compensated total.
HBURG_AVX2 inline double finish(__m256d s, __m256d comp, double tail_s, double tail_c) {
  alignas(32) double sv[kLanes];
  alignas(32) double cv[kLanes];
  _mm256_store_pd(sv, s);
  _mm256_store_pd(cv, comp);
  double total = 0.0;
  double c = 0.0;
  for (std::size_t l = 0; l < kLanes; ++l) {
    neumaier_add(total, c, sv[l]);
  }
  neumaier_add(total, c, tail_s);
  return total + (((c + tail_c) + (cv[0] + cv[1])) + (cv[2] + cv[3]));
}

HBURG_AVX2 double sum(ConstSpan f) {
  const std::size_t n = f.size();
  __m256d s = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    neumaier_add_pd(s, comp, _mm256_loadu_pd(&f[i]));
  }
  double ts = 0.0;
  double tc = 0.0;
  for (; i < n; ++i) {
    neumaier_add(ts, tc, f[i]);
  }
  return finish(s, comp, ts, tc);
}

HBURG_AVX2 double dot(ConstSpan a, ConstSpan b) {
  const std::size_t n = a.size();
  __m256d s = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    neumaier_add_pd(s, comp, _mm256_mul_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i])));
  }
  double ts = 0.0;
  double tc = 0.0;
  for (; i < n; ++i) {
    neumaier_add(ts, tc, a[i] * b[i]);
  }
  return finish(s, comp, ts, tc);
}

HBURG_AVX2 double max_abs(ConstSpan f) {
  const std::size_t n = f.size();
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    // maxpd returns the second operand when the first is NaN.
    m = _mm256_max_pd(abs_pd(_mm256_loadu_pd(&f[i])), m);
  }
  alignas(32) double mv[kLanes];
  _mm256_store_pd(mv, m);
  double r = 0.0;
  for (double x : mv) {
    if (x > r) {
      r = x;
    }
  }
  for (; i < n; ++i) {
    const double a = std::fabs(f[i]);
    if (a > r) {
      r = a;
    }
  }
  return r;
}

HBURG_AVX2 bool all_finite(ConstSpan f) {
  const std::size_t n = f.size();
  __m256d bad = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d x = _mm256_loadu_pd(&f[i]);
    const __m256d d = _mm256_sub_pd(x, x); // NaN exactly when x is NaN or inf
    bad = _mm256_or_pd(bad, _mm256_cmp_pd(d, d, _CMP_UNORD_Q));
  }
  if (_mm256_movemask_pd(bad) != 0) {
    return false;
  }
  for (; i < n; ++i) {
    if (!std::isfinite(f[i])) {
      return false;
    }
  }
  return true;
}

} // namespace

namespace detail {

const KernelTable avx2_table{
    Backend::Avx2, "avx2", axpy, rk4_combine, half_square, product, wave_accel,
    diff1,         diff2,  sum,  dot,         max_abs,     all_finite,
};

} // namespace detail

} // namespace hburg::kernels

#endif
