#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"

namespace viag::kernels {

namespace {

const Backend kScalar{"scalar", detail::susceptibility_batch_scalar,
                      detail::oscillatory_simpson_scalar};

#if defined(VIAG_HAVE_AVX2)
const Backend kAvx2{"avx2", detail::susceptibility_batch_avx2,
                    detail::oscillatory_simpson_avx2};
#endif

bool cpu_has_avx2() {
#if defined(VIAG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Backend* select() {
  if (const char* env = std::getenv("VIAG_SIMD")) {
    const std::string mode(env);
    if (mode == "scalar") return &kScalar;
#if defined(VIAG_HAVE_AVX2)
    if (mode == "avx2" && cpu_has_avx2()) return &kAvx2;
#endif
  }
#if defined(VIAG_HAVE_AVX2)
  if (cpu_has_avx2()) return &kAvx2;
#endif
  return &kScalar;
}

std::atomic<const Backend*> g_active{nullptr};

}  // namespace

const Backend& scalar_backend() { return kScalar; }

const Backend* avx2_backend() {
#if defined(VIAG_HAVE_AVX2)
  return cpu_has_avx2() ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

bool avx2_supported() { return avx2_backend() != nullptr; }

const Backend& active() {
  const Backend* backend = g_active.load(std::memory_order_acquire);
  if (backend == nullptr) {
    backend = select();
    g_active.store(backend, std::memory_order_release);
  }
  return *backend;
}

void force(std::string_view name) {
  if (name == "scalar") {
    g_active.store(&kScalar, std::memory_order_release);
    return;
  }
  if (name == "avx2") {
    if (const Backend* backend = avx2_backend()) {
      g_active.store(backend, std::memory_order_release);
      return;
    }
    throw std::invalid_argument("kernels::force: avx2 backend unavailable");
  }
  throw std::invalid_argument("kernels::force: unknown backend '" +
                              std::string(name) + "'");
}

}  // namespace viag::kernels
