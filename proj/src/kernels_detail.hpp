// Shared kernel bodies, templated over a lane type so the scalar reference and
// the vector variants execute structurally identical IEEE operation sequences.
// Only correctly-rounded primitives are used (+,-,*,/,sqrt,fma, bit ops), which
// is what makes scalar/AVX2 outputs bit-identical.
//
// This header is internal to the kernel translation units; both are compiled
// with -ffp-contract=off so no implicit fma contraction can break equivalence.
#pragma once

#include "pairlab/kernels.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

namespace pairlab::simd::detail {

// ---- constants (exact doubles) ----
inline constexpr double kSqrt2   = 1.4142135623730951;
inline constexpr double kLn2Hi   = 0.6931471675634384;     // ln2 to 26 bits
inline constexpr double kLn2Lo   = 1.2996506893889889e-08;
inline constexpr double kTwoOverPi = 0.6366197723675814;
inline constexpr double kPio2Hi  = 1.5707963267948966;
inline constexpr double kPio2Lo  = 6.123233995736766e-17;
inline constexpr double kTwoPi   = 6.283185307179586;
inline constexpr double kExpBits = 4503599627370496.0;     // 2^52

inline constexpr double kAtanhC[6] = {
    0.6666666666666666, 0.4, 0.2857142857142857,
    0.2222222222222222, 0.18181818181818182, 0.15384615384615385};
inline constexpr double kSinC[7] = {
    -0.16666666666666666, 0.008333333333333333, -0.0001984126984126984,
    2.7557319223985893e-06, -2.505210838544172e-08, 1.6059043836821613e-10,
    -7.647163731819816e-13};
inline constexpr double kCosC[7] = {
    -0.5, 0.041666666666666664, -0.001388888888888889,
    2.48015873015873e-05, -2.755731922398589e-07, 2.08767569878681e-09,
    -1.1470745597729725e-11};

// ---- philox4x32-10 ----
inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_block(PhiloxKey key, std::uint64_t stream, std::uint64_t block,
                         std::uint64_t out[2]) {
    std::uint32_t c0 = static_cast<std::uint32_t>(block);
    std::uint32_t c1 = static_cast<std::uint32_t>(block >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(stream);
    std::uint32_t c3 = static_cast<std::uint32_t>(stream >> 32);
    std::uint32_t k0 = key.k0, k1 = key.k1;
    for (int r = 0; r < 10; ++r) {
        if (r) {
            k0 += kPhiloxW0;
            k1 += kPhiloxW1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(c0) * kPhiloxM0;
        const std::uint64_t p1 = static_cast<std::uint64_t>(c2) * kPhiloxM1;
        const std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1 ^ k0;
        const std::uint32_t n1 = static_cast<std::uint32_t>(p1);
        const std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3 ^ k1;
        const std::uint32_t n3 = static_cast<std::uint32_t>(p0);
        c0 = n0;
        c1 = n1;
        c2 = n2;
        c3 = n3;
    }
    out[0] = c0 | (static_cast<std::uint64_t>(c1) << 32);
    out[1] = c2 | (static_cast<std::uint64_t>(c3) << 32);
}

// ---- scalar lane ----
// select() mirrors blendv semantics: the sign bit of the mask picks `a`.
struct ScalarLane {
    using D = double;
    using I = std::uint64_t;
    static constexpr std::size_t W = 1;

    static D load(const double* p) { return *p; }
    static void store(double* p, D v) { *p = v; }
    static I iload(const std::uint64_t* p) { return *p; }
    static D set1(double v) { return v; }
    static I iset1(std::uint64_t v) { return v; }

    static D add(D a, D b) { return a + b; }
    static D sub(D a, D b) { return a - b; }
    static D mul(D a, D b) { return a * b; }
    static D div(D a, D b) { return a / b; }
    static D fma(D a, D b, D c) { return std::fma(a, b, c); }
    static D sqrt(D a) { return std::sqrt(a); }
    static D round_nearest(D a) { return std::nearbyint(a); }

    static I srl(I a, int n) { return a >> n; }
    static I iand(I a, I b) { return a & b; }
    static I ior(I a, I b) { return a | b; }
    static I ixor(I a, I b) { return a ^ b; }
    static I iadd(I a, I b) { return a + b; }
    static I ieq(I a, I b) { return a == b ? ~std::uint64_t{0} : 0; }

    static D cast_d(I a) { return std::bit_cast<double>(a); }
    static I cast_i(D a) { return std::bit_cast<std::uint64_t>(a); }

    static D ge_mask(D a, D b) { return cast_d(a >= b ? ~std::uint64_t{0} : 0); }
    static D select(D mask, D a, D b) { return (cast_i(mask) >> 63) ? a : b; }
};

// exact for 0 <= x < 2^52
template <class L>
inline typename L::D u52_to_double(typename L::I x) {
    const auto biased = L::ior(x, L::iset1(0x4330000000000000ull));
    return L::sub(L::cast_d(biased), L::set1(kExpBits));
}

// natural log of a positive finite normal double; relative error ~3e-12
template <class L>
inline typename L::D vlog(typename L::D x) {
    using D = typename L::D;
    const auto ix = L::cast_i(x);
    D e = L::sub(u52_to_double<L>(L::srl(ix, 52)), L::set1(1023.0));
    const auto man = L::ior(L::iand(ix, L::iset1(0x000FFFFFFFFFFFFFull)),
                            L::iset1(0x3FF0000000000000ull));
    D m = L::cast_d(man);  // [1, 2)
    const D big = L::ge_mask(m, L::set1(kSqrt2));
    m = L::select(big, L::mul(m, L::set1(0.5)), m);
    e = L::select(big, L::add(e, L::set1(1.0)), e);

    const D f = L::sub(m, L::set1(1.0));
    const D s = L::div(f, L::add(f, L::set1(2.0)));
    const D s2 = L::mul(s, s);
    D p = L::set1(kAtanhC[5]);
    p = L::fma(p, s2, L::set1(kAtanhC[4]));
    p = L::fma(p, s2, L::set1(kAtanhC[3]));
    p = L::fma(p, s2, L::set1(kAtanhC[2]));
    p = L::fma(p, s2, L::set1(kAtanhC[1]));
    p = L::fma(p, s2, L::set1(kAtanhC[0]));

    const D u = L::mul(s, s2);
    const D w = L::mul(e, L::set1(kLn2Lo));
    const D v = L::fma(u, p, w);
    const D t = L::add(L::add(s, s), v);
    return L::fma(e, L::set1(kLn2Hi), t);
}

// sin and cos for theta in [0, 2*pi]; absolute error ~1e-15
template <class L>
inline void vsincos(typename L::D theta, typename L::D& s_out, typename L::D& c_out) {
    using D = typename L::D;
    const D q = L::round_nearest(L::mul(theta, L::set1(kTwoOverPi)));
    D r = L::fma(q, L::set1(-kPio2Hi), theta);
    r = L::fma(q, L::set1(-kPio2Lo), r);

    // quadrant index from q via the 1.5*2^52 integer-extraction trick
    const auto iq = L::iand(L::cast_i(L::add(q, L::set1(6755399441055744.0))),
                            L::iset1(3));
    const auto swap_m = L::ieq(L::iand(iq, L::iset1(1)), L::iset1(1));
    const auto nsin_m = L::ieq(L::iand(iq, L::iset1(2)), L::iset1(2));
    const auto ncos_m =
        L::ieq(L::iand(L::iadd(iq, L::iset1(1)), L::iset1(2)), L::iset1(2));

    const D r2 = L::mul(r, r);
    D ps = L::set1(kSinC[6]);
    for (int i = 5; i >= 0; --i) ps = L::fma(ps, r2, L::set1(kSinC[i]));
    const D sinr = L::fma(L::mul(r, r2), ps, r);
    D pc = L::set1(kCosC[6]);
    for (int i = 5; i >= 0; --i) pc = L::fma(pc, r2, L::set1(kCosC[i]));
    const D cosr = L::fma(r2, pc, L::set1(1.0));

    D s = L::select(L::cast_d(swap_m), cosr, sinr);
    D c = L::select(L::cast_d(swap_m), sinr, cosr);
    const auto sign = L::iset1(0x8000000000000000ull);
    s = L::cast_d(L::ixor(L::cast_i(s), L::iand(nsin_m, sign)));
    c = L::cast_d(L::ixor(L::cast_i(c), L::iand(ncos_m, sign)));
    s_out = s;
    c_out = c;
}

// raw word -> (0, 1] with 52-bit granularity
template <class L>
inline typename L::D vunit(typename L::I x) {
    const auto top = L::srl(x, 12);
    const auto d = u52_to_double<L>(top);
    return L::mul(L::add(d, L::set1(1.0)), L::set1(0x1p-52));
}

template <class L>
inline typename L::D vneg_log(typename L::D u) {
    return L::sub(L::set1(0.0), vlog<L>(u));
}

// Box-Muller from uniforms in (0, 1]
template <class L>
inline void vnormal_pair(typename L::D u1, typename L::D u2,
                         typename L::D& z0, typename L::D& z1) {
    using D = typename L::D;
    const D nl = vneg_log<L>(u1);
    const D r = L::sqrt(L::add(nl, nl));
    const D theta = L::mul(u2, L::set1(kTwoPi));
    D s, c;
    vsincos<L>(theta, s, c);
    z0 = L::mul(r, c);
    z1 = L::mul(r, s);
}

}  // namespace pairlab::simd::detail
