#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecz/channel.hpp"
#include "ecz/huffman.hpp"

namespace ecz {

// Per-record comparison of the frame packager against the two Huffman size
// models, all over the same slope-predictor errors.
struct RecordStats {
    std::string name;
    uint64_t samples = 0;
    uint64_t frames = 0;
    std::array<uint64_t, 5> frame_counts{};  // indexed by FrameType
    double cr_proposed = 0.0;
    double cr_ideal = 0.0;
    double cr_selective = 0.0;
};

struct BenchReport {
    int width = 12;
    uint32_t resync_interval = 2048;
    size_t selective_m = 16;
    std::vector<RecordStats> records;
    // aggregates over records with at least one sample
    double avg_cr_proposed = 0.0, avg_cr_ideal = 0.0, avg_cr_selective = 0.0;
    double max_cr_proposed = 0.0, max_cr_ideal = 0.0, max_cr_selective = 0.0;
    size_t counted_records = 0;
};

inline RecordStats bench_record(const std::string& name, std::span<const int32_t> samples,
                                int width, uint32_t resync_interval, size_t selective_m) {
    RecordStats st;
    st.name = name;
    st.samples = samples.size();
    if (samples.empty()) return st;

    ChannelEncoder enc({width, resync_interval});
    std::vector<uint16_t> words;
    for (int32_t x : samples) enc.push(x, words);
    enc.flush(words);
    st.frames = words.size();
    for (uint16_t w : words) ++st.frame_counts[static_cast<size_t>(frame_type_of(w))];
    st.cr_proposed = compression_ratio(st.samples, width, 16 * st.frames);

    const ErrorHistogram hist = error_histogram(samples);
    st.cr_ideal = compression_ratio(st.samples, width, ideal_huffman_bits(hist));
    st.cr_selective =
        compression_ratio(st.samples, width, selective_huffman_bits(hist, selective_m, width));
    return st;
}

inline BenchReport make_report(std::vector<RecordStats> records, int width,
                               uint32_t resync_interval, size_t selective_m) {
    BenchReport r;
    r.width = width;
    r.resync_interval = resync_interval;
    r.selective_m = selective_m;
    r.records = std::move(records);
    for (const RecordStats& st : r.records) {
        if (st.samples == 0) continue;
        ++r.counted_records;
        r.avg_cr_proposed += st.cr_proposed;
        r.avg_cr_ideal += st.cr_ideal;
        r.avg_cr_selective += st.cr_selective;
        r.max_cr_proposed = std::max(r.max_cr_proposed, st.cr_proposed);
        r.max_cr_ideal = std::max(r.max_cr_ideal, st.cr_ideal);
        r.max_cr_selective = std::max(r.max_cr_selective, st.cr_selective);
    }
    if (r.counted_records > 0) {
        r.avg_cr_proposed /= static_cast<double>(r.counted_records);
        r.avg_cr_ideal /= static_cast<double>(r.counted_records);
        r.avg_cr_selective /= static_cast<double>(r.counted_records);
    }
    return r;
}

namespace detail {
inline std::string fmt_cr(double cr, uint64_t samples) {
    if (samples == 0) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", cr);
    return buf;
}
}  // namespace detail

inline std::string render_text_report(const BenchReport& r) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line,
                  "width %d, resync interval %u, selective m = %zu\n\n"
                  "%-16s %10s %8s  %-22s %8s %8s %8s\n",
                  r.width, r.resync_interval, r.selective_m, "record", "samples", "frames",
                  "frame mix A/B/C/D/E", "packed", "ideal", "select");
    out += line;
    for (const RecordStats& st : r.records) {
        char mix[64];
        std::snprintf(mix, sizeof mix, "%llu/%llu/%llu/%llu/%llu",
                      static_cast<unsigned long long>(st.frame_counts[0]),
                      static_cast<unsigned long long>(st.frame_counts[1]),
                      static_cast<unsigned long long>(st.frame_counts[2]),
                      static_cast<unsigned long long>(st.frame_counts[3]),
                      static_cast<unsigned long long>(st.frame_counts[4]));
        std::snprintf(line, sizeof line, "%-16s %10llu %8llu  %-22s %8s %8s %8s\n",
                      st.name.c_str(), static_cast<unsigned long long>(st.samples),
                      static_cast<unsigned long long>(st.frames), mix,
                      detail::fmt_cr(st.cr_proposed, st.samples).c_str(),
                      detail::fmt_cr(st.cr_ideal, st.samples).c_str(),
                      detail::fmt_cr(st.cr_selective, st.samples).c_str());
        out += line;
    }
    if (r.counted_records > 0) {
        std::snprintf(line, sizeof line,
                      "\naverage CR  packed %.3f | ideal Huffman %.3f | selective Huffman %.3f\n"
                      "maximum CR  packed %.3f | ideal Huffman %.3f | selective Huffman %.3f\n",
                      r.avg_cr_proposed, r.avg_cr_ideal, r.avg_cr_selective, r.max_cr_proposed,
                      r.max_cr_ideal, r.max_cr_selective);
        out += line;
    } else {
        out += "\nno non-empty records\n";
    }
    return out;
}

inline nlohmann::json render_json_report(const BenchReport& r) {
    nlohmann::json j;
    j["version"] = 1;
    j["width"] = r.width;
    j["resync_interval"] = r.resync_interval;
    j["selective_m"] = r.selective_m;
    j["records"] = nlohmann::json::array();
    for (const RecordStats& st : r.records) {
        nlohmann::json rec;
        rec["name"] = st.name;
        rec["samples"] = st.samples;
        rec["frames"] = st.frames;
        rec["frame_counts"] = {{"A", st.frame_counts[0]}, {"B", st.frame_counts[1]},
                               {"C", st.frame_counts[2]}, {"D", st.frame_counts[3]},
                               {"E", st.frame_counts[4]}};
        if (st.samples > 0) {
            rec["cr_proposed"] = st.cr_proposed;
            rec["cr_ideal_huffman"] = st.cr_ideal;
            rec["cr_selective_huffman"] = st.cr_selective;
        } else {
            rec["cr_proposed"] = nullptr;
            rec["cr_ideal_huffman"] = nullptr;
            rec["cr_selective_huffman"] = nullptr;
        }
        j["records"].push_back(rec);
    }
    nlohmann::json agg;
    agg["records"] = r.counted_records;
    if (r.counted_records > 0) {
        agg["avg_cr_proposed"] = r.avg_cr_proposed;
        agg["avg_cr_ideal_huffman"] = r.avg_cr_ideal;
        agg["avg_cr_selective_huffman"] = r.avg_cr_selective;
        agg["max_cr_proposed"] = r.max_cr_proposed;
        agg["max_cr_ideal_huffman"] = r.max_cr_ideal;
        agg["max_cr_selective_huffman"] = r.max_cr_selective;
    }
    j["aggregate"] = agg;
    return j;
}

}  // namespace ecz
