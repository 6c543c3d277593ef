#pragma once

#include <cmath>
#include <complex>
#include <string_view>

namespace rectinv {

// Inverse-transform kernels: e^{x z} (Laplace) and y^{-z} (Mellin transform and moments).
enum class InverseKind { LaplaceKernel, MellinKernel };

std::string_view inverse_kind_name(InverseKind kind) noexcept;
InverseKind inverse_kind_from_name(std::string_view name);

// y^{-z} uses the real logarithm; callers guarantee arg > 0 for MellinKernel.
inline std::complex<double> kernel(InverseKind kind, std::complex<double> z, double arg) {
  if (kind == InverseKind::LaplaceKernel) return std::exp(z * arg);
  return std::exp(-z * std::log(arg));
}

}  // namespace rectinv
