#pragma once

#include <array>
#include <optional>

#include "ecz/core.hpp"
#include "ecz/error.hpp"
#include "ecz/frame.hpp"

namespace ecz {

// One queued sample awaiting packaging: the prediction error it entered with
// (or was last re-based to), the raw sample in case it leaves as a Type E
// frame, and whether the resync schedule forces it out as one.
struct PendingEntry {
    int32_t error = 0;
    WidthClass width = WidthClass::full;
    int32_t raw = 0;
    bool forced = false;

    bool fits(int bits) const { return !forced && fits_bits(error, bits); }
};

// FIFO of at most six entries, mirroring the 6-word staging register in
// front of the packager.
class PendingBuffer {
public:
    static constexpr int kCapacity = 6;

    int size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool full() const { return size_ == kCapacity; }

    void push(const PendingEntry& e) {
        if (full()) throw Error(ErrorCode::invalid_argument, "pending buffer holds at most 6 entries");
        slots_[(head_ + size_) % kCapacity] = e;
        ++size_;
    }

    // index 0 is the oldest entry
    const PendingEntry& operator[](int i) const { return slots_[(head_ + i) % kCapacity]; }
    PendingEntry& operator[](int i) { return slots_[(head_ + i) % kCapacity]; }

    void pop_front(int n) {
        head_ = (head_ + n) % kCapacity;
        size_ -= n;
    }

private:
    std::array<PendingEntry, kCapacity> slots_{};
    int head_ = 0;
    int size_ = 0;
};

struct PackedFrame {
    uint16_t word;
    FrameType type;
    int consumed;
};

// One packaging decision. Returns nothing while the buffer is still filling
// (fewer than six entries and no flush). Otherwise the first applicable rule
// wins: D needs all six entries inside 2 bits, C the first four inside
// 3 bits, A the first three inside 5 bits, B the first two inside 7 bits.
// When none applies the oldest raw sample leaves uncompressed as Type E.
inline std::optional<PackedFrame> pack_step(PendingBuffer& buf, bool flush, int width) {
    if (buf.empty()) return std::nullopt;
    if (buf.size() < PendingBuffer::kCapacity && !flush) return std::nullopt;

    const auto head_fits = [&buf](int n, int bits) {
        if (buf.size() < n) return false;
        for (int i = 0; i < n; ++i)
            if (!buf[i].fits(bits)) return false;
        return true;
    };

    const auto emit = [&buf, width](FrameType t) {
        const FrameLayout fl = frame_layout(t);
        std::array<int32_t, 6> fields{};
        for (int i = 0; i < fl.arity; ++i) fields[i] = buf[i].error;
        uint16_t word = encode_frame(t, {fields.data(), static_cast<size_t>(fl.arity)}, width);
        buf.pop_front(fl.arity);
        return PackedFrame{word, t, fl.arity};
    };

    if (head_fits(6, 2)) return emit(FrameType::D);
    if (head_fits(4, 3)) return emit(FrameType::C);
    if (head_fits(3, 5)) return emit(FrameType::A);
    if (head_fits(2, 7)) return emit(FrameType::B);

    const int32_t raw = buf[0].raw;
    uint16_t word = encode_frame(FrameType::E, {&raw, 1}, width);
    buf.pop_front(1);
    return PackedFrame{word, FrameType::E, 1};
}

}  // namespace ecz
