#pragma once

#include <cstdint>

#include "ecz/error.hpp"

namespace ecz {

// Source samples are signed integers of `width` bits, 8..12. All arithmetic
// runs in int32_t, which comfortably holds the prediction overshoot
// (|2*x1 - x2| < 3 * 2^(width-1)) and the error bound below.
inline constexpr int kMinSampleWidth = 8;
inline constexpr int kMaxSampleWidth = 12;

constexpr bool valid_sample_width(int width) {
    return width >= kMinSampleWidth && width <= kMaxSampleWidth;
}

inline void require_sample_width(int width) {
    if (!valid_sample_width(width))
        throw Error(ErrorCode::invalid_argument,
                    "sample width must be 8..12, got " + std::to_string(width));
}

// k-bit two's complement range check.
constexpr bool fits_bits(int32_t v, int bits) {
    return v >= -(int32_t{1} << (bits - 1)) && v < (int32_t{1} << (bits - 1));
}

constexpr int32_t sample_min(int width) { return -(int32_t{1} << (width - 1)); }
constexpr int32_t sample_max(int width) { return (int32_t{1} << (width - 1)) - 1; }

constexpr bool in_sample_range(int32_t v, int width) { return fits_bits(v, width); }

// Largest |e| a width-bit stream can produce: 2^(width+1) - 2. An error
// therefore always fits (width+2)-bit two's complement.
constexpr int32_t max_error(int width) { return (int32_t{1} << (width + 1)) - 2; }

// The last two reconstructed samples. Both registers start at zero, so the
// first two samples of a stream never have to be transmitted in full.
struct PredictorState {
    int32_t x1 = 0;  // x(n-1)
    int32_t x2 = 0;  // x(n-2)

    friend bool operator==(const PredictorState&, const PredictorState&) = default;
};

// Linear extrapolation along the slope of the previous two samples.
constexpr int32_t predict(PredictorState s) { return 2 * s.x1 - s.x2; }

struct ErrorStep {
    int32_t error;
    PredictorState next;
};

constexpr ErrorStep compute_error(PredictorState s, int32_t x) {
    return {x - predict(s), PredictorState{x, s.x1}};
}

struct SampleStep {
    int32_t sample;
    PredictorState next;
};

// Inverse of compute_error. A result outside the sample range means the
// stream is corrupt or the decoder lost sync; never clamp it.
inline SampleStep reconstruct(PredictorState s, int32_t error, int width) {
    int32_t x = predict(s) + error;
    if (!in_sample_range(x, width))
        throw Error(ErrorCode::range_corruption,
                    "reconstructed sample " + std::to_string(x) + " outside " +
                        std::to_string(width) + "-bit range");
    return {x, PredictorState{x, s.x1}};
}

// The packager only distinguishes the field widths it can emit.
enum class WidthClass : uint8_t { w2, w3, w5, w7, full };

constexpr WidthClass classify_width(int32_t e) {
    if (fits_bits(e, 2)) return WidthClass::w2;
    if (fits_bits(e, 3)) return WidthClass::w3;
    if (fits_bits(e, 5)) return WidthClass::w5;
    if (fits_bits(e, 7)) return WidthClass::w7;
    return WidthClass::full;
}

}  // namespace ecz
