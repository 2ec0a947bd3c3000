// AVX2 kernel variants. Compiled with -mavx2 -mfma -ffp-contract=off; callers
// must check avx2_supported() before using these through the dispatch table.
#include "kernels_detail.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace pairlab::simd {
namespace {

using detail::ScalarLane;

struct Avx2Lane {
    using D = __m256d;
    using I = __m256i;
    static constexpr std::size_t W = 4;

    static D load(const double* p) { return _mm256_loadu_pd(p); }
    static void store(double* p, D v) { _mm256_storeu_pd(p, v); }
    static I iload(const std::uint64_t* p) {
        return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
    }
    static D set1(double v) { return _mm256_set1_pd(v); }
    static I iset1(std::uint64_t v) {
        return _mm256_set1_epi64x(static_cast<long long>(v));
    }

    static D add(D a, D b) { return _mm256_add_pd(a, b); }
    static D sub(D a, D b) { return _mm256_sub_pd(a, b); }
    static D mul(D a, D b) { return _mm256_mul_pd(a, b); }
    static D div(D a, D b) { return _mm256_div_pd(a, b); }
    static D fma(D a, D b, D c) { return _mm256_fmadd_pd(a, b, c); }
    static D sqrt(D a) { return _mm256_sqrt_pd(a); }
    static D round_nearest(D a) { return _mm256_round_pd(a, _MM_FROUND_CUR_DIRECTION); }

    static I srl(I a, int n) { return _mm256_srli_epi64(a, n); }
    static I iand(I a, I b) { return _mm256_and_si256(a, b); }
    static I ior(I a, I b) { return _mm256_or_si256(a, b); }
    static I ixor(I a, I b) { return _mm256_xor_si256(a, b); }
    static I iadd(I a, I b) { return _mm256_add_epi64(a, b); }
    static I ieq(I a, I b) { return _mm256_cmpeq_epi64(a, b); }

    static D cast_d(I a) { return _mm256_castsi256_pd(a); }
    static I cast_i(D a) { return _mm256_castpd_si256(a); }

    static D ge_mask(D a, D b) { return _mm256_cmp_pd(a, b, _CMP_GE_OQ); }
    static D select(D mask, D a, D b) { return _mm256_blendv_pd(b, a, mask); }
};

// 32-bit mulhi/mullo across 8 lanes, for the philox round
inline __m256i mullo32(__m256i a, __m256i b) { return _mm256_mullo_epi32(a, b); }
inline __m256i mulhi32(__m256i a, __m256i b) {
    const __m256i pe = _mm256_mul_epu32(a, b);
    const __m256i po = _mm256_mul_epu32(_mm256_srli_epi64(a, 32), _mm256_srli_epi64(b, 32));
    const __m256i himask = _mm256_set1_epi64x(static_cast<long long>(0xFFFFFFFF00000000ull));
    return _mm256_or_si256(_mm256_srli_epi64(pe, 32), _mm256_and_si256(po, himask));
}

void philox_u64_avx2(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                     std::uint64_t* out, std::size_t nblocks) {
    const __m256i m0 = _mm256_set1_epi32(static_cast<int>(detail::kPhiloxM0));
    const __m256i m1 = _mm256_set1_epi32(static_cast<int>(detail::kPhiloxM1));
    const __m256i s_lo = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(stream)));
    const __m256i s_hi = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(stream >> 32)));

    std::size_t b = 0;
    alignas(32) std::uint32_t w0[8], w1[8], w2[8], w3[8];
    for (; b + 8 <= nblocks; b += 8) {
        alignas(32) std::uint32_t lo[8], hi[8];
        for (int j = 0; j < 8; ++j) {
            const std::uint64_t blk = block0 + b + j;
            lo[j] = static_cast<std::uint32_t>(blk);
            hi[j] = static_cast<std::uint32_t>(blk >> 32);
        }
        __m256i c0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(lo));
        __m256i c1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(hi));
        __m256i c2 = s_lo;
        __m256i c3 = s_hi;

        std::uint32_t k0 = key.k0, k1 = key.k1;
        for (int r = 0; r < 10; ++r) {
            if (r) {
                k0 += detail::kPhiloxW0;
                k1 += detail::kPhiloxW1;
            }
            const __m256i vk0 = _mm256_set1_epi32(static_cast<int>(k0));
            const __m256i vk1 = _mm256_set1_epi32(static_cast<int>(k1));
            const __m256i hi1 = mulhi32(c2, m1);
            const __m256i lo1 = mullo32(c2, m1);
            const __m256i hi0 = mulhi32(c0, m0);
            const __m256i lo0 = mullo32(c0, m0);
            c0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c1), vk0);
            c1 = lo1;
            c2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c3), vk1);
            c3 = lo0;
        }
        _mm256_store_si256(reinterpret_cast<__m256i*>(w0), c0);
        _mm256_store_si256(reinterpret_cast<__m256i*>(w1), c1);
        _mm256_store_si256(reinterpret_cast<__m256i*>(w2), c2);
        _mm256_store_si256(reinterpret_cast<__m256i*>(w3), c3);
        for (int j = 0; j < 8; ++j) {
            out[2 * (b + j)] = w0[j] | (static_cast<std::uint64_t>(w1[j]) << 32);
            out[2 * (b + j) + 1] = w2[j] | (static_cast<std::uint64_t>(w3[j]) << 32);
        }
    }
    for (; b < nblocks; ++b) {
        detail::philox_block(key, stream, block0 + b, out + 2 * b);
    }
}

void u64_to_unit_avx2(const std::uint64_t* in, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        Avx2Lane::store(out + i, detail::vunit<Avx2Lane>(Avx2Lane::iload(in + i)));
    }
    for (; i < n; ++i) {
        out[i] = detail::vunit<ScalarLane>(in[i]);
    }
}

void neg_log_avx2(const double* u, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        Avx2Lane::store(out + i, detail::vneg_log<Avx2Lane>(Avx2Lane::load(u + i)));
    }
    for (; i < n; ++i) {
        out[i] = detail::vneg_log<ScalarLane>(u[i]);
    }
}

void normal_pair_avx2(const double* u1, const double* u2, double* z0, double* z1,
                      std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a, b;
        detail::vnormal_pair<Avx2Lane>(Avx2Lane::load(u1 + i), Avx2Lane::load(u2 + i), a, b);
        Avx2Lane::store(z0 + i, a);
        Avx2Lane::store(z1 + i, b);
    }
    for (; i < n; ++i) {
        detail::vnormal_pair<ScalarLane>(u1[i], u2[i], z0[i], z1[i]);
    }
}

}  // namespace

const KernelOps& avx2_ops() {
    static const KernelOps ops{"avx2", philox_u64_avx2, u64_to_unit_avx2,
                               neg_log_avx2, normal_pair_avx2};
    return ops;
}

}  // namespace pairlab::simd

#else  // non-x86 fallback: table exists but dispatch never selects it

namespace pairlab::simd {
const KernelOps& avx2_ops() { return scalar_ops(); }
}  // namespace pairlab::simd

#endif
