#include "hburg/kernels.hpp"

#include <cstdlib>
#include <iostream>
#include <stdexcept>
#include <string_view>

namespace hburg::kernels {

bool supported(Backend backend) noexcept {
  switch (backend) {
  case Backend::Scalar:
    return true;
  case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
  }
  return false;
}

const KernelTable& table(Backend backend) {
  if (!supported(backend)) {
    throw std::runtime_error("kernel backend not supported on this CPU");
  }
  switch (backend) {
  case Backend::Scalar:
    return detail::scalar_table;
  case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
    return detail::avx2_table;
#else
    break;
#endif
  }
  return detail::scalar_table;
}

namespace {

const KernelTable& select_from_environment() {
  const char* env = std::getenv("HYPERBURG_KERNELS");
  const std::string_view choice = env != nullptr ? env : "auto";
  if (choice == "scalar") {
    return table(Backend::Scalar);
  }
  if (choice == "avx2") {
    if (supported(Backend::Avx2)) {
      return table(Backend::Avx2);
    }
    std::cerr << "hyperburg: avx2 kernels requested but unsupported, using scalar\n";
    return table(Backend::Scalar);
  }
  if (choice != "auto") {
    std::cerr << "hyperburg: unknown HYPERBURG_KERNELS value '" << choice << "', using auto\n";
  }
  return supported(Backend::Avx2) ? table(Backend::Avx2) : table(Backend::Scalar);
}

} // namespace

const KernelTable& active() {
  static const KernelTable& chosen = select_from_environment();
  return chosen;
}

} // namespace hburg::kernels
