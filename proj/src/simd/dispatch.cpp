#include "meroform/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace meroform::simd {

const Kernels& active_kernels() {
  static const Kernels* chosen = [] {
    const char* env = std::getenv("MEROFORM_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") && avx2_kernels()) return avx2_kernels();
#endif
    return &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace meroform::simd
