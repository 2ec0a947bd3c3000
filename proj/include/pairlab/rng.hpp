#pragma once

#include "pairlab/kernels.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace pairlab {

// Random-access view of one counter-RNG stream.  A (seed, stream_id) pair
// names an independent sequence of 64-bit words; any index range can be
// produced without generating the rest, which is what makes chunked and
// parallel simulation bit-reproducible: consumers address values by a stable
// index (pair ordinal, survivor ordinal, bin id) instead of by draw order.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    // raw 64-bit words at [first, first+out.size())
    void raw_u64(std::uint64_t first, std::span<std::uint64_t> out) const;

    // uniform doubles in (0, 1]
    void unit(std::uint64_t first, std::span<double> out) const;

    // unit-mean exponentials
    void exponential(std::uint64_t first, std::span<double> out) const;

    // standard normals; index-aligned (value k is the same no matter how the
    // range is sliced)
    void normal(std::uint64_t first, std::span<double> out) const;

    double unit_at(std::uint64_t index) const;

    std::uint64_t stream_id() const { return stream_; }

  private:
    simd::PhiloxKey key_;
    std::uint64_t stream_;
};

// Buffered sequential reader for low-rate consumers (Poisson counting,
// histogram synthesis).
class StreamCursor {
  public:
    explicit StreamCursor(RandomStream stream) : stream_(stream) {}

    double next_unit();
    double next_exponential();

  private:
    void refill();

    RandomStream stream_;
    std::uint64_t next_index_ = 0;
    std::vector<double> buf_;
    std::size_t pos_ = 0;
};

// Exact Poisson sample by exponential-gap counting; O(mean) draws.
std::uint64_t poisson_sample(StreamCursor& cursor, double mean);

}  // namespace pairlab
