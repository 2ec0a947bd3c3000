#include "pairlab/tagstream.hpp"

#include "pairlab/errors.hpp"

#include <algorithm>
#include <ostream>

namespace pairlab {

const char* to_string(ChannelRole role) {
    switch (role) {
        case ChannelRole::signal_a: return "signal_a";
        case ChannelRole::idler: return "idler";
        case ChannelRole::herald_arm_b: return "herald_arm_b";
        case ChannelRole::herald_arm_c: return "herald_arm_c";
    }
    return "unknown";
}

bool TagStream::has_channel(std::uint8_t ch) const {
    for (const auto& [id, role] : channel_map) {
        if (id == ch) return true;
    }
    return false;
}

std::uint8_t TagStream::channel_for(ChannelRole role) const {
    for (const auto& [id, r] : channel_map) {
        if (r == role) return id;
    }
    throw AnalysisError(std::string("stream has no channel with role ") + to_string(role));
}

std::vector<std::int64_t> TagStream::times_on_channel(std::uint8_t ch) const {
    std::vector<std::int64_t> out;
    for (const auto& t : events) {
        if (t.channel == ch) out.push_back(t.time_ps);
    }
    return out;
}

void TagStream::validate() const {
    if (duration_ps < 0) throw ConfigError("tag stream: negative duration");
    const Tag* prev = nullptr;
    for (const auto& t : events) {
        if (t.time_ps < 0 || t.time_ps > duration_ps) {
            throw ConfigError("tag stream: event time outside [0, duration]");
        }
        if (!has_channel(t.channel)) {
            throw ConfigError("tag stream: event on unmapped channel " +
                              std::to_string(int(t.channel)));
        }
        if (prev && t < *prev) {
            throw ConfigError("tag stream: events not sorted by (time, channel)");
        }
        prev = &t;
    }
}

TagStream merge_streams(const TagStream& a, const TagStream& b) {
    if (a.duration_ps != b.duration_ps) {
        throw ConfigError("merge_streams: durations differ");
    }
    for (const auto& [id, role] : b.channel_map) {
        if (a.has_channel(id)) {
            throw ConfigError("merge_streams: overlapping channel id " +
                              std::to_string(int(id)));
        }
    }
    TagStream out;
    out.duration_ps = a.duration_ps;
    out.channel_map = a.channel_map;
    out.channel_map.insert(out.channel_map.end(), b.channel_map.begin(),
                           b.channel_map.end());
    out.events.resize(a.events.size() + b.events.size());
    std::merge(a.events.begin(), a.events.end(), b.events.begin(), b.events.end(),
               out.events.begin());
    return out;
}

void write_tagstream_csv(const TagStream& s, std::ostream& os) {
    os << "channel,time_ps\n";
    for (const auto& t : s.events) {
        os << int(t.channel) << ',' << t.time_ps << '\n';
    }
}

}  // namespace pairlab
