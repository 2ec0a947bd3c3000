#pragma once

#include "pairlab/tagstream.hpp"

#include <cstdint>
#include <string>

namespace pairlab {

// Binary time-tag file. Little-endian, fixed header followed by 9-byte
// records (channel u8, time_ps u64).
struct TagFileHeader {
    static constexpr char kMagic[9] = "PAIRLAB1";
    static constexpr std::uint16_t kVersion = 1;

    std::uint16_t version = kVersion;
    std::uint32_t resolution_ps = 1;
    std::uint8_t channel_count = 0;
    std::uint64_t duration_ps = 0;
    std::uint64_t seed = 0;
};

void write_tag_file(const std::string& path, const TagStream& stream,
                    std::uint64_t seed, std::uint32_t resolution_ps = 1);

TagStream read_tag_file(const std::string& path, TagFileHeader* header_out = nullptr);

}  // namespace pairlab
