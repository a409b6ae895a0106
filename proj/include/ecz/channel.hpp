#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ecz/core.hpp"
#include "ecz/error.hpp"
#include "ecz/frame.hpp"
#include "ecz/packing.hpp"

namespace ecz {

struct ChannelConfig {
    int width = 12;
    uint32_t resync_interval = 2048;  // samples between forced Type E frames; 0 disables
};

// Single-channel encoder. Every pushed sample becomes one pending entry;
// full buffers are packaged immediately. A Type E frame always resets the
// predictor to (raw, raw) on both sides, so the encoder keeps its pending
// errors expressed relative to the state the decoder will actually be in:
// when the fallback rule ships a sample whose entry was not already a reset
// point, the remaining entries are re-based onto the new anchor.
class ChannelEncoder {
public:
    explicit ChannelEncoder(ChannelConfig cfg = {}) : cfg_(cfg) { require_sample_width(cfg.width); }

    void push(int32_t x, std::vector<uint16_t>& out) {
        if (!in_sample_range(x, cfg_.width))
            throw Error(ErrorCode::sample_out_of_range,
                        "sample " + std::to_string(x) + " outside " + std::to_string(cfg_.width) +
                            "-bit range");
        const uint64_t index = samples_in_++;
        const bool forced =
            cfg_.resync_interval > 0 && index > 0 && index % cfg_.resync_interval == 0;
        if (forced) {
            buffer_.push({0, WidthClass::full, x, true});
            chain_ = {x, x};
        } else {
            const ErrorStep step = compute_error(chain_, x);
            const WidthClass w = classify_width(step.error);
            buffer_.push({step.error, w, x, false});
            chain_ = w == WidthClass::full ? PredictorState{x, x} : step.next;
        }
        drain(false, out);
    }

    // Drains the buffer with the same rule ladder restricted to what is
    // available. Safe to continue pushing afterwards.
    void flush(std::vector<uint16_t>& out) { drain(true, out); }

    std::vector<uint16_t> push(int32_t x) {
        std::vector<uint16_t> out;
        push(x, out);
        return out;
    }

    std::vector<uint16_t> flush() {
        std::vector<uint16_t> out;
        flush(out);
        return out;
    }

    uint64_t samples_in() const { return samples_in_; }
    int pending() const { return buffer_.size(); }
    const PredictorState& predictor() const { return chain_; }
    const ChannelConfig& config() const { return cfg_; }

private:
    void drain(bool flush, std::vector<uint16_t>& out) {
        while (!buffer_.empty()) {
            const PendingEntry oldest = buffer_[0];
            const auto packed = pack_step(buffer_, flush, cfg_.width);
            if (!packed) break;
            out.push_back(packed->word);
            // Fallback E for an entry that was not a reset point: the decoder
            // re-anchors at this raw sample, so the pending errors must too.
            if (packed->type == FrameType::E && !oldest.forced && oldest.width != WidthClass::full)
                rebase({oldest.raw, oldest.raw});
        }
    }

    void rebase(PredictorState anchor) {
        for (int i = 0; i < buffer_.size(); ++i) {
            PendingEntry& e = buffer_[i];
            if (e.forced) {
                anchor = {e.raw, e.raw};
                continue;
            }
            const ErrorStep step = compute_error(anchor, e.raw);
            e.error = step.error;
            e.width = classify_width(step.error);
            anchor = e.width == WidthClass::full ? PredictorState{e.raw, e.raw} : step.next;
        }
        chain_ = anchor;
    }

    ChannelConfig cfg_;
    PredictorState chain_;  // predictor state after the newest pending entry
    PendingBuffer buffer_;
    uint64_t samples_in_ = 0;
};

// Single-channel decoder; mirrors ChannelEncoder frame for frame.
class ChannelDecoder {
public:
    explicit ChannelDecoder(int width = 12) : width_(width) { require_sample_width(width); }

    void push(uint16_t word, std::vector<int32_t>& out) {
        const DecodedFrame f = decode_frame(word);
        if (f.type == FrameType::E) {
            const int32_t raw = f.values[0];
            if (!in_sample_range(raw, width_))
                throw Error(ErrorCode::range_corruption,
                            "full frame sample " + std::to_string(raw) + " outside " +
                                std::to_string(width_) + "-bit range");
            state_ = {raw, raw};
            out.push_back(raw);
            ++samples_out_;
        } else {
            for (int i = 0; i < f.count; ++i) {
                const SampleStep step = reconstruct(state_, f.values[i], width_);
                state_ = step.next;
                out.push_back(step.sample);
                ++samples_out_;
            }
        }
    }

    std::vector<int32_t> push(uint16_t word) {
        std::vector<int32_t> out;
        push(word, out);
        return out;
    }

    uint64_t samples_out() const { return samples_out_; }
    const PredictorState& predictor() const { return state_; }

private:
    int width_;
    PredictorState state_;
    uint64_t samples_out_ = 0;
};

// Recovery after losing an unknown prefix of a channel's frame stream:
// everything before the first Type E frame is unusable; the E frame
// re-anchors the predictor and decoding continues normally from there.
// Empty result when no E frame remains.
inline std::vector<int32_t> resync_scan(std::span<const uint16_t> words, int width) {
    size_t i = 0;
    while (i < words.size() && try_frame_type(words[i]) != FrameType::E) ++i;
    std::vector<int32_t> out;
    ChannelDecoder dec(width);
    for (; i < words.size(); ++i) dec.push(words[i], out);
    return out;
}

// One multiplexed ADC output word: a 2-bit channel tag plus the sample.
struct AdcWord {
    uint8_t channel;
    int32_t sample;
};

inline constexpr int kMaxChannels = 4;

inline void require_channel_count(int channels) {
    if (channels < 1 || channels > kMaxChannels)
        throw Error(ErrorCode::invalid_argument,
                    "channel count must be 1..4, got " + std::to_string(channels));
}

inline std::vector<std::vector<int32_t>> demux(std::span<const AdcWord> words, int channels) {
    require_channel_count(channels);
    std::vector<std::vector<int32_t>> streams(channels);
    for (const AdcWord& w : words) {
        if (w.channel >= channels)
            throw Error(ErrorCode::channel_mismatch,
                        "channel tag " + std::to_string(w.channel) + " with " +
                            std::to_string(channels) + " configured channels");
        streams[w.channel].push_back(w.sample);
    }
    return streams;
}

// One frame attributed to its channel, in emission order.
struct FrameRecord {
    uint8_t channel;
    uint16_t word;

    friend bool operator==(const FrameRecord&, const FrameRecord&) = default;
};

// Multi-channel encoder front. Channels are fully independent; the record
// list only fixes a global emission order for the container.
class StreamEncoder {
public:
    StreamEncoder(int channels, ChannelConfig cfg = {}) : cfg_(cfg) {
        require_channel_count(channels);
        for (int c = 0; c < channels; ++c) encoders_.emplace_back(cfg);
    }

    void push(int channel, int32_t x) {
        if (channel < 0 || channel >= static_cast<int>(encoders_.size()))
            throw Error(ErrorCode::channel_mismatch,
                        "channel " + std::to_string(channel) + " with " +
                            std::to_string(encoders_.size()) + " configured channels");
        scratch_.clear();
        encoders_[channel].push(x, scratch_);
        append(channel);
    }

    void push(const AdcWord& w) { push(w.channel, w.sample); }

    // Flushes every channel, in channel order. Call once at end of stream.
    void finish() {
        for (size_t c = 0; c < encoders_.size(); ++c) {
            scratch_.clear();
            encoders_[c].flush(scratch_);
            append(static_cast<int>(c));
        }
    }

    int channels() const { return static_cast<int>(encoders_.size()); }
    const ChannelConfig& config() const { return cfg_; }
    const std::vector<FrameRecord>& records() const { return records_; }

    std::vector<uint64_t> sample_counts() const {
        std::vector<uint64_t> counts;
        for (const ChannelEncoder& e : encoders_) counts.push_back(e.samples_in());
        return counts;
    }

private:
    void append(int channel) {
        for (uint16_t w : scratch_) records_.push_back({static_cast<uint8_t>(channel), w});
    }

    ChannelConfig cfg_;
    std::vector<ChannelEncoder> encoders_;
    std::vector<FrameRecord> records_;
    std::vector<uint16_t> scratch_;
};

// Encodes per-channel streams in row-major arrival order (sample i of every
// channel, channels in index order), the order a sample multiplexer would
// deliver. Streams may have unequal lengths.
inline StreamEncoder encode_streams(const std::vector<std::vector<int32_t>>& streams,
                                    ChannelConfig cfg = {}) {
    StreamEncoder enc(static_cast<int>(streams.size()), cfg);
    size_t longest = 0;
    for (const auto& s : streams) longest = std::max(longest, s.size());
    for (size_t i = 0; i < longest; ++i)
        for (size_t c = 0; c < streams.size(); ++c)
            if (i < streams[c].size()) enc.push(static_cast<int>(c), streams[c][i]);
    enc.finish();
    return enc;
}

// Decodes an attributed frame stream back into per-channel sample streams.
// Diagnostics name the offending frame record; final per-channel totals must
// match the counts recorded at encode time.
inline std::vector<std::vector<int32_t>> decode_stream(std::span<const FrameRecord> records,
                                                       std::span<const uint64_t> sample_counts,
                                                       int width) {
    const int channels = static_cast<int>(sample_counts.size());
    require_channel_count(channels);
    std::vector<ChannelDecoder> decoders;
    for (int c = 0; c < channels; ++c) decoders.emplace_back(width);
    std::vector<std::vector<int32_t>> streams(channels);

    for (size_t i = 0; i < records.size(); ++i) {
        const FrameRecord& r = records[i];
        if (r.channel >= channels)
            throw Error(ErrorCode::channel_mismatch,
                        "frame record " + std::to_string(i) + ": channel tag " +
                            std::to_string(r.channel) + " with " + std::to_string(channels) +
                            " configured channels");
        try {
            decoders[r.channel].push(r.word, streams[r.channel]);
        } catch (const Error& e) {
            throw Error(e.code(), "frame record " + std::to_string(i) + " (channel " +
                                      std::to_string(r.channel) + "): " + e.what());
        }
        if (streams[r.channel].size() > sample_counts[r.channel])
            throw Error(ErrorCode::corrupt_container,
                        "frame record " + std::to_string(i) + ": channel " +
                            std::to_string(r.channel) + " exceeds recorded sample count " +
                            std::to_string(sample_counts[r.channel]));
    }
    for (int c = 0; c < channels; ++c) {
        if (streams[c].size() != sample_counts[c])
            throw Error(ErrorCode::corrupt_container,
                        "channel " + std::to_string(c) + " decoded " +
                            std::to_string(streams[c].size()) + " samples, header records " +
                            std::to_string(sample_counts[c]));
    }
    return streams;
}

}  // namespace ecz
