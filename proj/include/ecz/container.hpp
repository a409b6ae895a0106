#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ecz/channel.hpp"
#include "ecz/core.hpp"
#include "ecz/error.hpp"

namespace ecz {

// Container layout, all multi-byte integers little-endian:
//
//   magic            "ECZ1"                      4 bytes
//   version          u8, currently 1
//   width            u8, sample bit depth 8..12
//   channel_count    u8, 1..4
//   reserved         u8, must be 0
//   resync_interval  u32
//   sample_count     u64 per channel
//   frame records    channel u8 + frame word u16, in emission order
//
// The frame word is stored as the 16-bit value whose most significant bit is
// the first header bit.

inline constexpr uint8_t kContainerVersion = 1;
inline constexpr char kContainerMagic[4] = {'E', 'C', 'Z', '1'};

struct Container {
    int width = 12;
    uint32_t resync_interval = 2048;
    std::vector<uint64_t> sample_counts;  // one per channel
    std::vector<FrameRecord> records;

    int channels() const { return static_cast<int>(sample_counts.size()); }
};

namespace detail {
inline void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
}

inline void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

inline void put_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

    uint8_t u8() { return take(1)[0]; }

    uint16_t u16() {
        auto b = take(2);
        return static_cast<uint16_t>(b[0] | (b[1] << 8));
    }

    uint32_t u32() {
        auto b = take(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
        return v;
    }

    uint64_t u64() {
        auto b = take(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
        return v;
    }

    size_t remaining() const { return data_.size() - pos_; }

private:
    std::span<const uint8_t> take(size_t n) {
        if (remaining() < n) throw Error(ErrorCode::truncated, "container truncated");
        auto s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};
}  // namespace detail

inline std::vector<uint8_t> serialize_container(const Container& c) {
    require_sample_width(c.width);
    require_channel_count(c.channels());
    std::vector<uint8_t> out;
    out.reserve(12 + 8 * c.sample_counts.size() + 3 * c.records.size());
    for (char m : kContainerMagic) out.push_back(static_cast<uint8_t>(m));
    out.push_back(kContainerVersion);
    out.push_back(static_cast<uint8_t>(c.width));
    out.push_back(static_cast<uint8_t>(c.channels()));
    out.push_back(0);  // reserved
    detail::put_u32(out, c.resync_interval);
    for (uint64_t n : c.sample_counts) detail::put_u64(out, n);
    for (const FrameRecord& r : c.records) {
        if (r.channel >= c.channels())
            throw Error(ErrorCode::channel_mismatch,
                        "frame record channel " + std::to_string(r.channel) + " with " +
                            std::to_string(c.channels()) + " channels");
        out.push_back(r.channel);
        detail::put_u16(out, r.word);
    }
    return out;
}

inline Container deserialize_container(std::span<const uint8_t> bytes) {
    detail::ByteReader in(bytes);
    char magic[4];
    for (char& m : magic) m = static_cast<char>(in.u8());
    if (!std::equal(magic, magic + 4, kContainerMagic))
        throw Error(ErrorCode::bad_magic, "bad container magic");
    const uint8_t version = in.u8();
    if (version != kContainerVersion)
        throw Error(ErrorCode::unsupported_version,
                    "unsupported container version " + std::to_string(version));

    Container c;
    c.width = in.u8();
    const int channels = in.u8();
    if (in.u8() != 0) throw Error(ErrorCode::corrupt_container, "reserved byte not zero");
    if (!valid_sample_width(c.width))
        throw Error(ErrorCode::corrupt_container, "sample width " + std::to_string(c.width));
    if (channels < 1 || channels > kMaxChannels)
        throw Error(ErrorCode::corrupt_container, "channel count " + std::to_string(channels));
    c.resync_interval = in.u32();
    for (int i = 0; i < channels; ++i) c.sample_counts.push_back(in.u64());

    if (in.remaining() % 3 != 0)
        throw Error(ErrorCode::truncated, "trailing partial frame record");
    const size_t n_records = in.remaining() / 3;
    c.records.reserve(n_records);
    for (size_t i = 0; i < n_records; ++i) {
        FrameRecord r;
        r.channel = in.u8();
        r.word = in.u16();
        if (r.channel >= channels)
            throw Error(ErrorCode::corrupt_container,
                        "frame record " + std::to_string(i) + ": channel tag " +
                            std::to_string(r.channel));
        c.records.push_back(r);
    }
    return c;
}

// Single-channel raw mode: a bare little-endian u16 frame word sequence.
inline std::vector<uint8_t> serialize_raw_frames(std::span<const uint16_t> words) {
    std::vector<uint8_t> out;
    out.reserve(2 * words.size());
    for (uint16_t w : words) detail::put_u16(out, w);
    return out;
}

inline std::vector<uint16_t> deserialize_raw_frames(std::span<const uint8_t> bytes) {
    if (bytes.size() % 2 != 0)
        throw Error(ErrorCode::truncated, "raw frame stream has odd byte count");
    std::vector<uint16_t> words;
    words.reserve(bytes.size() / 2);
    for (size_t i = 0; i < bytes.size(); i += 2)
        words.push_back(static_cast<uint16_t>(bytes[i] | (bytes[i + 1] << 8)));
    return words;
}

}  // namespace ecz
