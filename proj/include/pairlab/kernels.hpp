#pragma once

#include <cstddef>
#include <cstdint>

namespace pairlab::simd {

// Key/stream addressing for the counter-based generator (philox4x32-10).
// A (seed, stream) pair names an independent 2^64-block random sequence;
// every block yields two 64-bit words.  Generation is a pure function of
// (key, stream, block index), so any slice of a stream can be produced
// without sequencing through the rest of it.
struct PhiloxKey {
    std::uint32_t k0 = 0;
    std::uint32_t k1 = 0;
};

// One batch-kernel vtable.  Every implementation of a kernel must produce
// bit-identical output for identical input: the simulation's
// determinism-by-seed contract does not tolerate drift between the scalar
// reference and the vector variants.  Equivalence tests assert exact
// equality.
struct KernelOps {
    const char* name;

    // out[2b], out[2b+1] for blocks b in [block0, block0+nblocks)
    void (*philox_u64)(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                       std::uint64_t* out, std::size_t nblocks);

    // raw word -> uniform double in (0, 1], 52-bit granularity
    void (*u64_to_unit)(const std::uint64_t* in, double* out, std::size_t n);

    // out[i] = -log(u[i]) for u in (0, 1]  (unit-mean exponential transform)
    void (*neg_log)(const double* u, double* out, std::size_t n);

    // Box-Muller: z0[i], z1[i] ~ N(0,1) from uniform pairs u1[i], u2[i] in (0, 1]
    void (*normal_pair)(const double* u1, const double* u2,
                        double* z0, double* z1, std::size_t n);
};

const KernelOps& scalar_ops();

bool avx2_supported();
const KernelOps& avx2_ops();  // only callable when avx2_supported()

// Runtime-selected variant.  PAIRLAB_FORCE_SCALAR=1 in the environment, or
// force_scalar(true), pins the scalar reference (used by equivalence tests).
const KernelOps& active_ops();
void force_scalar(bool on);

}  // namespace pairlab::simd
