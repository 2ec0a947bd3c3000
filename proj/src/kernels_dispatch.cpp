#include "pairlab/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace pairlab::simd {

namespace {
std::atomic<bool> g_force_scalar{false};

bool env_forces_scalar() {
    const char* v = std::getenv("PAIRLAB_FORCE_SCALAR");
    return v != nullptr && v[0] == '1';
}
}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

void force_scalar(bool on) { g_force_scalar.store(on); }

const KernelOps& active_ops() {
    if (g_force_scalar.load() || env_forces_scalar()) {
        return scalar_ops();
    }
    static const KernelOps& selected = avx2_supported() ? avx2_ops() : scalar_ops();
    return selected;
}

}  // namespace pairlab::simd
