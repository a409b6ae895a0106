#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <queue>
#include <span>
#include <vector>

#include "ecz/core.hpp"
#include "ecz/error.hpp"

namespace ecz {

// Occurrence counts of prediction-error values; input to the coding-size
// models below.
struct ErrorHistogram {
    std::map<int32_t, uint64_t> counts;
    uint64_t total = 0;

    void add(int32_t error, uint64_t n = 1) {
        counts[error] += n;
        total += n;
    }

    bool empty() const { return total == 0; }
};

// Histogram of the slope-predictor errors of a stream, zero-initialized
// registers, no resync resets.
inline ErrorHistogram error_histogram(std::span<const int32_t> samples) {
    ErrorHistogram hist;
    PredictorState state;
    for (int32_t x : samples) {
        const ErrorStep step = compute_error(state, x);
        hist.add(step.error);
        state = step.next;
    }
    return hist;
}

namespace detail {

struct HuffmanLeaf {
    int64_t order_value;  // tie-break identity: lower value merges first
    uint64_t weight;
};

// Code lengths of the Huffman tree over `leaves`, returned in input order.
// Weight ties pop leaves before merged nodes, leaves by ascending
// order_value, merged nodes in creation order. A single leaf codes at
// 1 bit/symbol.
inline std::vector<int> huffman_lengths(std::span<const HuffmanLeaf> leaves) {
    const size_t n = leaves.size();
    if (n == 0) return {};
    if (n == 1) return {1};

    struct Node {
        uint64_t weight;
        int64_t order_value;  // leaves only
        uint32_t seq;         // creation order for merged nodes
        int left = -1, right = -1;
        int depth = 0;
        bool leaf;
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * n - 1);
    for (size_t i = 0; i < n; ++i)
        nodes.push_back({leaves[i].weight, leaves[i].order_value, 0, -1, -1, 0, true});

    const auto later = [&nodes](int a, int b) {  // true when a pops after b
        const Node &na = nodes[a], &nb = nodes[b];
        if (na.weight != nb.weight) return na.weight > nb.weight;
        if (na.leaf != nb.leaf) return !na.leaf;
        if (na.leaf) return na.order_value > nb.order_value;
        return na.seq > nb.seq;
    };
    std::priority_queue<int, std::vector<int>, decltype(later)> queue(later);
    for (size_t i = 0; i < n; ++i) queue.push(static_cast<int>(i));

    uint32_t seq = 0;
    while (queue.size() > 1) {
        const int a = queue.top();
        queue.pop();
        const int b = queue.top();
        queue.pop();
        nodes.push_back({nodes[a].weight + nodes[b].weight, 0, seq++, a, b, 0, false});
        queue.push(static_cast<int>(nodes.size() - 1));
    }

    // root is the last node created; push depths down to the leaves
    for (int i = static_cast<int>(nodes.size()) - 1; i >= static_cast<int>(n); --i) {
        nodes[nodes[i].left].depth = nodes[i].depth + 1;
        nodes[nodes[i].right].depth = nodes[i].depth + 1;
    }
    std::vector<int> lengths(n);
    for (size_t i = 0; i < n; ++i) lengths[i] = nodes[i].depth;
    return lengths;
}

}  // namespace detail

// Total bits an optimal Huffman code spends on the histogram. Codebook
// transmission is not charged: this is the steady-state ideal.
inline uint64_t ideal_huffman_bits(const ErrorHistogram& hist) {
    if (hist.empty()) throw Error(ErrorCode::empty_histogram, "empty error histogram");
    std::vector<detail::HuffmanLeaf> leaves;
    leaves.reserve(hist.counts.size());
    for (const auto& [value, count] : hist.counts)
        if (count > 0) leaves.push_back({value, count});
    const std::vector<int> lengths = detail::huffman_lengths(leaves);
    uint64_t bits = 0;
    for (size_t i = 0; i < leaves.size(); ++i) bits += leaves[i].weight * lengths[i];
    return bits;
}

// Selective Huffman: only the m most frequent error values get codewords
// (ties prefer the smaller magnitude, negative first); everything else is
// shipped verbatim in width+2 bits behind an escape codeword that always
// occupies one tree slot. Codebook transmission is not charged.
inline uint64_t selective_huffman_bits(const ErrorHistogram& hist, size_t m, int width) {
    if (hist.empty()) throw Error(ErrorCode::empty_histogram, "empty error histogram");
    if (m < 1) throw Error(ErrorCode::invalid_argument, "selective Huffman needs m >= 1");
    require_sample_width(width);

    std::vector<std::pair<int32_t, uint64_t>> symbols;
    symbols.reserve(hist.counts.size());
    for (const auto& [value, count] : hist.counts)
        if (count > 0) symbols.emplace_back(value, count);
    std::sort(symbols.begin(), symbols.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        const int64_t ma = std::abs(static_cast<int64_t>(a.first));
        const int64_t mb = std::abs(static_cast<int64_t>(b.first));
        if (ma != mb) return ma < mb;
        return a.first < b.first;
    });
    if (symbols.size() > m) symbols.resize(m);

    uint64_t coded_total = 0;
    std::vector<detail::HuffmanLeaf> leaves;
    leaves.reserve(symbols.size() + 1);
    for (const auto& [value, count] : symbols) {
        leaves.push_back({value, count});
        coded_total += count;
    }
    const uint64_t escaped = hist.total - coded_total;
    leaves.push_back({std::numeric_limits<int64_t>::max(), escaped});  // escape slot

    const std::vector<int> lengths = detail::huffman_lengths(leaves);
    uint64_t bits = 0;
    for (size_t i = 0; i < symbols.size(); ++i) bits += symbols[i].second * lengths[i];
    bits += escaped * (static_cast<uint64_t>(lengths.back()) + width + 2);
    return bits;
}

// Original bits over compressed bits.
inline double compression_ratio(uint64_t samples, int width, uint64_t compressed_bits) {
    if (compressed_bits == 0)
        throw Error(ErrorCode::invalid_argument, "compression ratio with zero compressed bits");
    return static_cast<double>(samples) * width / static_cast<double>(compressed_bits);
}

}  // namespace ecz
