#include "pairlab/tagfile.hpp"

#include "pairlab/errors.hpp"

#include <cstring>
#include <fstream>
#include <vector>

namespace pairlab {

namespace {

constexpr std::size_t kHeaderBytes = 8 + 2 + 4 + 1 + 8 + 8;
constexpr std::size_t kRecordBytes = 9;

void put_u16(unsigned char* p, std::uint16_t v) {
    p[0] = v & 0xFF;
    p[1] = (v >> 8) & 0xFF;
}
void put_u32(unsigned char* p, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) p[i] = (v >> (8 * i)) & 0xFF;
}
void put_u64(unsigned char* p, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) p[i] = (v >> (8 * i)) & 0xFF;
}
std::uint16_t get_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t get_u32(const unsigned char* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}
std::uint64_t get_u64(const unsigned char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

std::vector<std::pair<std::uint8_t, ChannelRole>> roles_for_count(std::uint8_t n) {
    if (n == 2) {
        return {{0, ChannelRole::signal_a}, {1, ChannelRole::idler}};
    }
    if (n == 3) {
        return {{0, ChannelRole::signal_a},
                {1, ChannelRole::herald_arm_b},
                {2, ChannelRole::herald_arm_c}};
    }
    throw IoError("tag file: unsupported channel count " + std::to_string(int(n)));
}

}  // namespace

void write_tag_file(const std::string& path, const TagStream& stream,
                    std::uint64_t seed, std::uint32_t resolution_ps) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);

    unsigned char header[kHeaderBytes];
    std::memcpy(header, TagFileHeader::kMagic, 8);
    put_u16(header + 8, TagFileHeader::kVersion);
    put_u32(header + 10, resolution_ps);
    header[14] = static_cast<unsigned char>(stream.channel_map.size());
    put_u64(header + 15, static_cast<std::uint64_t>(stream.duration_ps));
    put_u64(header + 23, seed);
    os.write(reinterpret_cast<const char*>(header), kHeaderBytes);

    std::vector<unsigned char> buf;
    buf.reserve(kRecordBytes << 16);
    for (const auto& tag : stream.events) {
        unsigned char rec[kRecordBytes];
        rec[0] = tag.channel;
        put_u64(rec + 1, static_cast<std::uint64_t>(tag.time_ps));
        buf.insert(buf.end(), rec, rec + kRecordBytes);
        if (buf.size() >= (kRecordBytes << 16)) {
            os.write(reinterpret_cast<const char*>(buf.data()),
                     static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    if (!buf.empty()) {
        os.write(reinterpret_cast<const char*>(buf.data()),
                 static_cast<std::streamsize>(buf.size()));
    }
    if (!os) throw IoError("write failed: " + path);
}

TagStream read_tag_file(const std::string& path, TagFileHeader* header_out) {
    std::ifstream is(path, std::ios::binary | std::ios::ate);
    if (!is) throw IoError("cannot open for reading: " + path);
    const std::uint64_t size = static_cast<std::uint64_t>(is.tellg());
    is.seekg(0);
    if (size < kHeaderBytes) {
        throw IoError("tag file truncated: " + path + " (" + std::to_string(size) +
                      " bytes, header needs " + std::to_string(kHeaderBytes) + ")");
    }
    unsigned char header[kHeaderBytes];
    is.read(reinterpret_cast<char*>(header), kHeaderBytes);
    if (std::memcmp(header, TagFileHeader::kMagic, 8) != 0) {
        throw IoError("tag file: bad magic in " + path);
    }
    TagFileHeader h;
    h.version = get_u16(header + 8);
    h.resolution_ps = get_u32(header + 10);
    h.channel_count = header[14];
    h.duration_ps = get_u64(header + 15);
    h.seed = get_u64(header + 23);
    if (h.version != TagFileHeader::kVersion) {
        throw IoError("tag file: unsupported version " + std::to_string(h.version));
    }
    if (h.resolution_ps == 0) throw IoError("tag file: zero resolution");
    const std::uint64_t payload = size - kHeaderBytes;
    if (payload % kRecordBytes != 0) {
        throw IoError("tag file truncated: " + path + " (record region " +
                      std::to_string(payload) + " bytes is not a multiple of 9)");
    }

    TagStream stream;
    stream.duration_ps = static_cast<std::int64_t>(h.duration_ps);
    stream.channel_map = roles_for_count(h.channel_count);
    const std::uint64_t nrec = payload / kRecordBytes;
    stream.events.resize(nrec);
    std::vector<unsigned char> buf(kRecordBytes << 16);
    std::uint64_t done = 0;
    while (done < nrec) {
        const std::uint64_t take = std::min<std::uint64_t>(nrec - done, 1ull << 16);
        is.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(take * kRecordBytes));
        if (!is) throw IoError("read failed: " + path);
        for (std::uint64_t i = 0; i < take; ++i) {
            const unsigned char* rec = buf.data() + i * kRecordBytes;
            stream.events[done + i] = {static_cast<std::int64_t>(get_u64(rec + 1)),
                                       rec[0]};
        }
        done += take;
    }
    stream.validate();
    if (header_out) *header_out = h;
    return stream;
}

}  // namespace pairlab
