#include "kernels_detail.hpp"

namespace pairlab::simd {
namespace {

using detail::ScalarLane;

void philox_u64_scalar(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                       std::uint64_t* out, std::size_t nblocks) {
    for (std::size_t b = 0; b < nblocks; ++b) {
        detail::philox_block(key, stream, block0 + b, out + 2 * b);
    }
}

void u64_to_unit_scalar(const std::uint64_t* in, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = detail::vunit<ScalarLane>(in[i]);
    }
}

void neg_log_scalar(const double* u, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = detail::vneg_log<ScalarLane>(u[i]);
    }
}

void normal_pair_scalar(const double* u1, const double* u2, double* z0, double* z1,
                        std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        detail::vnormal_pair<ScalarLane>(u1[i], u2[i], z0[i], z1[i]);
    }
}

}  // namespace

const KernelOps& scalar_ops() {
    static const KernelOps ops{"scalar", philox_u64_scalar, u64_to_unit_scalar,
                               neg_log_scalar, normal_pair_scalar};
    return ops;
}

}  // namespace pairlab::simd
