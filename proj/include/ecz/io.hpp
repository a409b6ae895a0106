#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ecz/core.hpp"
#include "ecz/error.hpp"

namespace ecz {

enum class SampleFormat { csv, bin16, wfdb212 };

inline SampleFormat parse_sample_format(const std::string& name) {
    if (name == "csv") return SampleFormat::csv;
    if (name == "bin16") return SampleFormat::bin16;
    if (name == "wfdb212") return SampleFormat::wfdb212;
    throw Error(ErrorCode::invalid_argument, "unknown format '" + name + "'");
}

namespace detail {
inline void check_range(int32_t v, int width, size_t position) {
    if (!in_sample_range(v, width))
        throw Error(ErrorCode::sample_out_of_range,
                    "sample " + std::to_string(v) + " at index " + std::to_string(position) +
                        " outside " + std::to_string(width) + "-bit range");
}
}  // namespace detail

// ---- bin16: little-endian signed 16-bit words --------------------------

inline std::vector<int32_t> read_bin16(std::span<const uint8_t> bytes, int width) {
    require_sample_width(width);
    if (bytes.size() % 2 != 0)
        throw Error(ErrorCode::truncated, "bin16 input has odd byte count");
    std::vector<int32_t> samples;
    samples.reserve(bytes.size() / 2);
    for (size_t i = 0; i < bytes.size(); i += 2) {
        const auto v = static_cast<int16_t>(bytes[i] | (bytes[i + 1] << 8));
        detail::check_range(v, width, samples.size());
        samples.push_back(v);
    }
    return samples;
}

inline std::vector<uint8_t> write_bin16(std::span<const int32_t> samples) {
    std::vector<uint8_t> bytes;
    bytes.reserve(2 * samples.size());
    for (int32_t v : samples) {
        const auto w = static_cast<uint16_t>(static_cast<int16_t>(v));
        bytes.push_back(static_cast<uint8_t>(w));
        bytes.push_back(static_cast<uint8_t>(w >> 8));
    }
    return bytes;
}

// ---- csv: one row per sample instant, one column per channel -----------

inline std::vector<std::vector<int32_t>> read_csv(const std::string& text, int channels,
                                                  int width) {
    require_sample_width(width);
    if (channels < 1)
        throw Error(ErrorCode::invalid_argument, "channel count must be positive");
    std::vector<std::vector<int32_t>> streams(channels);
    size_t line_no = 0;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        size_t field = 0, start = 0;
        while (true) {
            size_t comma = line.find(',', start);
            const std::string cell =
                line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (field >= static_cast<size_t>(channels))
                throw Error(ErrorCode::parse_error,
                            "csv line " + std::to_string(line_no) + ": more than " +
                                std::to_string(channels) + " columns");
            char* end = nullptr;
            const long v = std::strtol(cell.c_str(), &end, 10);
            while (end && *end == ' ') ++end;
            if (end == cell.c_str() || (end && *end != '\0'))
                throw Error(ErrorCode::parse_error, "csv line " + std::to_string(line_no) +
                                                        ": bad integer '" + cell + "'");
            detail::check_range(static_cast<int32_t>(v), width, streams[field].size());
            streams[field].push_back(static_cast<int32_t>(v));
            ++field;
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (field != static_cast<size_t>(channels))
            throw Error(ErrorCode::parse_error, "csv line " + std::to_string(line_no) + ": got " +
                                                    std::to_string(field) + " columns, expected " +
                                                    std::to_string(channels));
    }
    return streams;
}

inline std::string write_csv(const std::vector<std::vector<int32_t>>& streams) {
    size_t rows = 0;
    for (const auto& s : streams) rows = std::max(rows, s.size());
    std::string out;
    for (size_t i = 0; i < rows; ++i) {
        for (size_t c = 0; c < streams.size(); ++c) {
            if (c) out += ',';
            if (i < streams[c].size()) out += std::to_string(streams[c][i]);
        }
        out += '\n';
    }
    return out;
}

// ---- wfdb 212: two 12-bit samples packed into three bytes --------------
//
// Per triplet (b0, b1, b2): s1 = b1[3:0]<<8 | b0, s2 = b1[7:4]<<8 | b2,
// both sign-extended from 12 bits.

inline std::pair<std::vector<int32_t>, std::vector<int32_t>> read_wfdb212(
    std::span<const uint8_t> bytes) {
    if (bytes.size() % 3 != 0)
        throw Error(ErrorCode::truncated, "wfdb 212 input is not a whole number of triplets");
    std::vector<int32_t> s1, s2;
    s1.reserve(bytes.size() / 3);
    s2.reserve(bytes.size() / 3);
    for (size_t i = 0; i < bytes.size(); i += 3) {
        const uint32_t a = static_cast<uint32_t>((bytes[i + 1] & 0x0F) << 8) | bytes[i];
        const uint32_t b = static_cast<uint32_t>((bytes[i + 1] >> 4) << 8) | bytes[i + 2];
        s1.push_back(a >= 0x800 ? static_cast<int32_t>(a) - 0x1000 : static_cast<int32_t>(a));
        s2.push_back(b >= 0x800 ? static_cast<int32_t>(b) - 0x1000 : static_cast<int32_t>(b));
    }
    return {std::move(s1), std::move(s2)};
}

inline std::vector<uint8_t> write_wfdb212(std::span<const int32_t> s1,
                                          std::span<const int32_t> s2) {
    if (s1.size() != s2.size())
        throw Error(ErrorCode::invalid_argument, "wfdb 212 needs equal-length channel pairs");
    std::vector<uint8_t> bytes;
    bytes.reserve(3 * s1.size());
    for (size_t i = 0; i < s1.size(); ++i) {
        detail::check_range(s1[i], 12, i);
        detail::check_range(s2[i], 12, i);
        const auto a = static_cast<uint32_t>(s1[i]) & 0xFFF;
        const auto b = static_cast<uint32_t>(s2[i]) & 0xFFF;
        bytes.push_back(static_cast<uint8_t>(a));
        bytes.push_back(static_cast<uint8_t>(((b >> 8) << 4) | (a >> 8)));
        bytes.push_back(static_cast<uint8_t>(b));
    }
    return bytes;
}

// ---- synthetic ECG ------------------------------------------------------
//
// Deterministic test source: repeating P-QRS-T beats with jittered beat
// length, slow baseline drift and a little wideband noise, scaled into the
// sample range. Not physiology, just plausible spike statistics.

inline std::vector<int32_t> synth_ecg(size_t n, double fs, uint32_t seed, int width = 12) {
    require_sample_width(width);
    std::vector<int32_t> samples;
    samples.reserve(n);
    if (n == 0) return samples;

    std::mt19937 rng(seed);
    const auto uniform = [&rng] { return rng() * (1.0 / 4294967296.0); };

    const double amplitude = 0.55 * sample_max(width);
    const double lo = sample_min(width), hi = sample_max(width);

    struct Wave {
        double center, sigma, amp;
    };
    // beat morphology as fractions of the beat period
    constexpr Wave waves[] = {
        {0.18, 0.030, 0.14},   // P
        {0.355, 0.012, -0.18}, // Q
        {0.375, 0.009, 1.00},  // R
        {0.398, 0.013, -0.24}, // S
        {0.60, 0.050, 0.30},   // T
    };

    double beat_len = fs * (0.78 + 0.12 * uniform());
    size_t beat_pos = 0;
    for (size_t i = 0; i < n; ++i) {
        if (beat_pos >= beat_len) {
            beat_pos = 0;
            beat_len = fs * (0.78 + 0.12 * uniform());
        }
        const double phase = beat_pos / beat_len;
        double v = 0.0;
        for (const Wave& w : waves) {
            const double d = (phase - w.center) / w.sigma;
            v += w.amp * std::exp(-0.5 * d * d);
        }
        const double t = static_cast<double>(i) / fs;
        v += 0.05 * std::sin(2.0 * 3.14159265358979323846 * 0.23 * t);  // baseline wander
        double y = amplitude * v + 3.0 * (uniform() - 0.5) * 2.0;       // +- 3 counts of noise
        y = std::min(hi, std::max(lo, std::round(y)));
        samples.push_back(static_cast<int32_t>(y));
        ++beat_pos;
    }
    return samples;
}

// ---- files --------------------------------------------------------------

inline std::vector<uint8_t> load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorCode::io_error, "read failed on " + path);
    return bytes;
}

inline void save_file(const std::string& path, std::span<const uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot create " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::io_error, "write failed on " + path);
}

}  // namespace ecz
