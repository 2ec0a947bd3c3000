#include "pairlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace pairlab {

namespace {
constexpr std::size_t kScratchWords = 1 << 14;

// raw_u64's private block buffer; unit()/normal() use separate scratch so the
// layers never alias
std::vector<std::uint64_t>& block_scratch() {
    thread_local std::vector<std::uint64_t> buf;
    return buf;
}

std::vector<std::uint64_t>& word_scratch() {
    thread_local std::vector<std::uint64_t> buf;
    return buf;
}

std::vector<double>& dbl_scratch(int which) {
    thread_local std::vector<double> buf[3];
    return buf[which];
}
}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream_id) {}

void RandomStream::raw_u64(std::uint64_t first, std::span<std::uint64_t> out) const {
    const auto& ops = simd::active_ops();
    auto& blocks = block_scratch();
    std::size_t produced = 0;
    while (produced < out.size()) {
        const std::uint64_t word = first + produced;
        const std::uint64_t block0 = word / 2;
        const std::size_t offset = static_cast<std::size_t>(word % 2);
        const std::size_t want = out.size() - produced;
        const std::size_t nblocks =
            std::min<std::size_t>((want + offset + 1) / 2, kScratchWords / 2);
        blocks.resize(2 * nblocks);
        ops.philox_u64(key_, stream_, block0, blocks.data(), nblocks);
        const std::size_t take = std::min(want, 2 * nblocks - offset);
        std::memcpy(out.data() + produced, blocks.data() + offset,
                    take * sizeof(std::uint64_t));
        produced += take;
    }
}

void RandomStream::unit(std::uint64_t first, std::span<double> out) const {
    const auto& ops = simd::active_ops();
    auto& words = word_scratch();
    std::size_t produced = 0;
    while (produced < out.size()) {
        const std::size_t n = std::min(out.size() - produced, kScratchWords);
        words.resize(n);
        raw_u64(first + produced, std::span<std::uint64_t>(words.data(), n));
        ops.u64_to_unit(words.data(), out.data() + produced, n);
        produced += n;
    }
}

void RandomStream::exponential(std::uint64_t first, std::span<double> out) const {
    const auto& ops = simd::active_ops();
    unit(first, out);
    ops.neg_log(out.data(), out.data(), out.size());
}

void RandomStream::normal(std::uint64_t first, std::span<double> out) const {
    if (out.empty()) return;
    const auto& ops = simd::active_ops();
    // normal k belongs to Box-Muller pair k/2, which consumes words 2j, 2j+1
    const std::uint64_t pair0 = first / 2;
    const std::uint64_t pair_end = (first + out.size() + 1) / 2;
    auto& u1 = dbl_scratch(0);
    auto& u2 = dbl_scratch(1);
    auto& zz = dbl_scratch(2);
    for (std::uint64_t pair = pair0; pair < pair_end;) {
        const std::size_t np =
            std::min<std::size_t>(pair_end - pair, kScratchWords / 4);
        u1.resize(2 * np);
        unit(2 * pair, std::span<double>(u1.data(), 2 * np));
        u2.resize(np);
        for (std::size_t j = 0; j < np; ++j) u2[j] = u1[2 * j + 1];
        for (std::size_t j = 0; j < np; ++j) u1[j] = u1[2 * j];
        zz.resize(2 * np);
        ops.normal_pair(u1.data(), u2.data(), zz.data(), zz.data() + np, np);
        for (std::size_t j = 0; j < np; ++j) {
            const std::uint64_t idx0 = 2 * (pair + j);
            if (idx0 >= first && idx0 < first + out.size()) {
                out[static_cast<std::size_t>(idx0 - first)] = zz[j];
            }
            if (idx0 + 1 >= first && idx0 + 1 < first + out.size()) {
                out[static_cast<std::size_t>(idx0 + 1 - first)] = zz[np + j];
            }
        }
        pair += np;
    }
}

double RandomStream::unit_at(std::uint64_t index) const {
    double v;
    unit(index, std::span<double>(&v, 1));
    return v;
}

void StreamCursor::refill() {
    buf_.resize(1024);
    stream_.unit(next_index_, buf_);
    next_index_ += buf_.size();
    pos_ = 0;
}

double StreamCursor::next_unit() {
    if (pos_ >= buf_.size()) refill();
    return buf_[pos_++];
}

double StreamCursor::next_exponential() { return -std::log(next_unit()); }

std::uint64_t poisson_sample(StreamCursor& cursor, double mean) {
    if (mean <= 0) return 0;
    std::uint64_t n = 0;
    double acc = cursor.next_exponential();
    while (acc <= mean) {
        ++n;
        acc += cursor.next_exponential();
    }
    return n;
}

}  // namespace pairlab
