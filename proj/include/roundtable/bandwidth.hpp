#pragma once

#include <roundtable/errors.hpp>

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

namespace roundtable::net {

/// Per-stream sliding-window byte counters. The reported rate over window W
/// at time t is 8 * (bytes recorded in (t - W, t]) / W, in bits per second;
/// rates are additive across streams sharing the window.
class BandwidthMeter {
public:
    explicit BandwidthMeter(uint32_t window_ms = 1000);

    /// Records a send and returns the stream's rate at `now_ms`. Timestamps
    /// must not go backwards; Error{NonMonotoneTime} otherwise.
    double record(const std::string& stream_id, size_t byte_count, uint64_t now_ms);

    double rate_bits_per_s(const std::string& stream_id, uint64_t now_ms) const;
    double total_rate_bits_per_s(uint64_t now_ms) const;
    uint64_t total_bytes(const std::string& stream_id) const;
    std::vector<std::string> stream_ids() const;
    uint32_t window_ms() const { return window_ms_; }

private:
    struct Stream {
        std::deque<std::pair<uint64_t, size_t>> events;
        uint64_t total_bytes = 0;
    };

    double window_rate(const Stream& stream, uint64_t now_ms) const;

    uint32_t window_ms_;
    uint64_t last_now_ms_ = 0;
    std::map<std::string, Stream> streams_;
};

/// Token-bucket pacing: tokens accrue at the budget rate up to a burst
/// capacity; a frame is sent only when the bucket holds its size in tokens,
/// otherwise it is dropped on the spot (frames are never queued). With the
/// burst capped at one frame, the measured rate over any window exceeds the
/// budget by at most one frame's bits. A frame larger than the capacity can
/// never be admitted; such drops are flagged as starvation.
class TokenBucketPacer {
public:
    TokenBucketPacer(double budget_bits_per_s, double burst_bits);

    /// Burst sized for a fixed-size frame stream: min(frame bits, one
    /// second's budget). The only sizing under which an under-budget stream
    /// never drops, an over-budget stream stays within budget + one frame
    /// per window, and a frame larger than a full second's budget starves.
    static TokenBucketPacer for_frames(double budget_bits_per_s, size_t frame_bytes);

    struct Decision {
        bool send = false;
        bool starved = false;  // frame cannot fit the bucket at any time
    };

    Decision admit(size_t frame_bytes, uint64_t now_ms);

    double budget_bits_per_s() const { return budget_bits_per_s_; }
    uint64_t frames_sent() const { return frames_sent_; }
    uint64_t frames_dropped() const { return frames_dropped_; }
    bool ever_starved() const { return ever_starved_; }

private:
    double budget_bits_per_s_;
    double burst_bits_;
    double tokens_;
    uint64_t last_refill_ms_ = 0;
    bool primed_ = false;
    uint64_t frames_sent_ = 0;
    uint64_t frames_dropped_ = 0;
    bool ever_starved_ = false;
};

}  // namespace roundtable::net
