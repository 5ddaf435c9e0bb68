#pragma once

// Data-parallel inner loops of the solver and diagnostics.
//
// Every backend evaluates the elementwise kernels with the same floating-point
// operation sequence (no contraction), so scalar and SIMD results are
// bit-identical for axpy, rk4_combine, half_square, product, wave_accel,
// diff1, diff2, max_abs and all_finite. The reductions (sum, dot) use
// lane-wise compensated summation and agree to a few ulps.

#include <span>

namespace hburg::kernels {

enum class Backend { Scalar, Avx2 };

/// Coefficients of (nu * D2 u - D1 q - damp) / mu on a uniform grid.
struct WaveCoeffs {
  double nu;
  double inv_mu;
  double inv_dx2;
  double inv_2dx;
};

using ConstSpan = std::span<const double>;
using MutSpan = std::span<double>;

struct KernelTable {
  Backend backend;
  const char* name;

  // out = y + a * x
  void (*axpy)(ConstSpan y, double a, ConstSpan x, MutSpan out);
  // y += h6 * (((k1 + 2 k2) + 2 k3) + k4), h6 = dt / 6
  void (*rk4_combine)(MutSpan y, ConstSpan k1, ConstSpan k2, ConstSpan k3, ConstSpan k4, double h6);
  // out = (v * v) * 0.5
  void (*half_square)(ConstSpan v, MutSpan out);
  // out = a * b
  void (*product)(ConstSpan a, ConstSpan b, MutSpan out);
  // Interior nodes: out = ((nu * D2 u - D1 q) - damp) * inv_mu. End nodes set to 0.
  void (*wave_accel)(const WaveCoeffs& k, ConstSpan u, ConstSpan q, ConstSpan damp, MutSpan out);
  // Central first difference (u[i+1] - u[i-1]) * inv_2dx, ends set to 0.
  void (*diff1)(ConstSpan u, double inv_2dx, MutSpan out);
  // Central second difference ((u[i+1] - 2 u[i]) + u[i-1]) * inv_dx2, ends set to 0.
  void (*diff2)(ConstSpan u, double inv_dx2, MutSpan out);
  // Compensated (Neumaier) sums.
  double (*sum)(ConstSpan f);
  double (*dot)(ConstSpan a, ConstSpan b);
  // max |f|; NaN entries are skipped.
  double (*max_abs)(ConstSpan f);
  bool (*all_finite)(ConstSpan f);
};

bool supported(Backend backend) noexcept;

/// Throws std::runtime_error if the backend is not available on this CPU.
const KernelTable& table(Backend backend);

/// Backend picked once per process: HYPERBURG_KERNELS=scalar|avx2|auto, default auto (best supported).
const KernelTable& active();

namespace detail {
extern const KernelTable scalar_table;
#if defined(__x86_64__) || defined(_M_X64)
extern const KernelTable avx2_table;
#endif
} // namespace detail

} // namespace hburg::kernels
