#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "ecz/core.hpp"
#include "ecz/error.hpp"

namespace ecz {

// Wire format: every frame is one 16-bit word with the header at the MSB end
// and the data fields packed behind it in arrival order (first field in the
// most significant payload bits). Each field is the two's complement of a
// prediction error, except Type E, which carries one raw sample so a decoder
// can re-anchor without history.
//
//   type  header  fields
//   A     1       3 x 5-bit error
//   B     01      2 x 7-bit error
//   C     0001    4 x 3-bit error
//   D     0000    6 x 2-bit error
//   E     0011    1 x 12-bit raw sample
//
// "0010" is reserved; seeing it on the wire means corruption.

enum class FrameType : uint8_t { A, B, C, D, E };

inline constexpr int kFrameBits = 16;

struct FrameLayout {
    uint16_t header;  // right-aligned header pattern
    int header_bits;
    int field_bits;
    int arity;
};

constexpr FrameLayout frame_layout(FrameType t) {
    switch (t) {
        case FrameType::A: return {0b1, 1, 5, 3};
        case FrameType::B: return {0b01, 2, 7, 2};
        case FrameType::C: return {0b0001, 4, 3, 4};
        case FrameType::D: return {0b0000, 4, 2, 6};
        case FrameType::E: return {0b0011, 4, 12, 1};
    }
    return {0, 0, 0, 0};
}

namespace detail {
constexpr bool layouts_fill_word() {
    for (FrameType t : {FrameType::A, FrameType::B, FrameType::C, FrameType::D, FrameType::E}) {
        FrameLayout fl = frame_layout(t);
        if (fl.header_bits + fl.arity * fl.field_bits != kFrameBits) return false;
    }
    return true;
}
static_assert(layouts_fill_word());

constexpr int32_t sign_extend(uint32_t v, int bits) {
    uint32_t m = uint32_t{1} << (bits - 1);
    return static_cast<int32_t>((v ^ m) - m);
}
}  // namespace detail

constexpr char frame_type_name(FrameType t) { return "ABCDE"[static_cast<int>(t)]; }

// Header classification from the top bits; nullopt for the reserved prefix.
constexpr std::optional<FrameType> try_frame_type(uint16_t word) {
    if (word & 0x8000) return FrameType::A;
    if (word & 0x4000) return FrameType::B;
    switch ((word >> 12) & 0x3) {
        case 0b00: return FrameType::D;
        case 0b01: return FrameType::C;
        case 0b11: return FrameType::E;
        default: return std::nullopt;  // 0b10 reserved
    }
}

inline FrameType frame_type_of(uint16_t word) {
    if (auto t = try_frame_type(word)) return *t;
    throw Error(ErrorCode::invalid_header, "reserved frame header 0010");
}

// Packs `fields` behind the header of `type`. For A-D the fields are
// prediction errors that must fit the layout's field width; for E the single
// field is the raw sample, sign-extended into the 12-bit slot.
inline uint16_t encode_frame(FrameType type, std::span<const int32_t> fields, int width) {
    require_sample_width(width);
    const FrameLayout fl = frame_layout(type);
    if (static_cast<int>(fields.size()) != fl.arity)
        throw Error(ErrorCode::invalid_argument,
                    std::string("frame type ") + frame_type_name(type) + " takes " +
                        std::to_string(fl.arity) + " fields, got " +
                        std::to_string(fields.size()));

    uint32_t word = fl.header;
    for (int32_t v : fields) {
        bool ok = type == FrameType::E ? in_sample_range(v, width) : fits_bits(v, fl.field_bits);
        if (!ok)
            throw Error(ErrorCode::invalid_argument,
                        "field " + std::to_string(v) + " does not fit frame type " +
                            frame_type_name(type));
        word = (word << fl.field_bits) | (static_cast<uint32_t>(v) & ((uint32_t{1} << fl.field_bits) - 1));
    }
    return static_cast<uint16_t>(word);
}

struct DecodedFrame {
    FrameType type;
    std::array<int32_t, 6> values;  // errors for A-D, the raw sample for E
    int count;

    std::span<const int32_t> fields() const { return {values.data(), static_cast<size_t>(count)}; }
};

// Exact inverse of encode_frame; sign-extends each field from its width.
// Throws invalid_header on the reserved prefix.
inline DecodedFrame decode_frame(uint16_t word) {
    const FrameType type = frame_type_of(word);
    const FrameLayout fl = frame_layout(type);
    DecodedFrame out{type, {}, fl.arity};
    int shift = kFrameBits - fl.header_bits;
    const uint32_t mask = (uint32_t{1} << fl.field_bits) - 1;
    for (int i = 0; i < fl.arity; ++i) {
        shift -= fl.field_bits;
        out.values[i] = detail::sign_extend((word >> shift) & mask, fl.field_bits);
    }
    return out;
}

}  // namespace ecz
