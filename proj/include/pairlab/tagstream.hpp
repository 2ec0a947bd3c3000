#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace pairlab {

enum class ChannelRole : std::uint8_t {
    signal_a = 0,      // signal / herald detector
    idler = 1,
    herald_arm_b = 2,  // heralded photon, splitter arm B
    herald_arm_c = 3,
};

const char* to_string(ChannelRole role);

struct Tag {
    std::int64_t time_ps;
    std::uint8_t channel;

    friend bool operator<(const Tag& a, const Tag& b) {
        return a.time_ps != b.time_ps ? a.time_ps < b.time_ps : a.channel < b.channel;
    }
    friend bool operator==(const Tag& a, const Tag& b) {
        return a.time_ps == b.time_ps && a.channel == b.channel;
    }
};

// TDC output: detection events sorted by (time, channel), times in integer
// picoseconds within [0, duration].
struct TagStream {
    std::vector<Tag> events;
    std::int64_t duration_ps = 0;
    std::vector<std::pair<std::uint8_t, ChannelRole>> channel_map;

    bool has_channel(std::uint8_t ch) const;
    // first channel with the given role; throws if absent
    std::uint8_t channel_for(ChannelRole role) const;
    std::vector<std::int64_t> times_on_channel(std::uint8_t ch) const;
    void validate() const;
};

// time-sorted union; requires equal durations and disjoint channel ids
TagStream merge_streams(const TagStream& a, const TagStream& b);

// plain "channel,time_ps" export
void write_tagstream_csv(const TagStream& s, std::ostream& os);

}  // namespace pairlab
