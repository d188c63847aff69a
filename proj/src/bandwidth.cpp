#include <roundtable/bandwidth.hpp>

#include <algorithm>

namespace roundtable::net {

BandwidthMeter::BandwidthMeter(uint32_t window_ms) : window_ms_(window_ms) {
    if (window_ms == 0) {
        throw Error(ErrorCode::InvalidInput, "window must be positive");
    }
}

double BandwidthMeter::record(const std::string& stream_id, size_t byte_count,
                              uint64_t now_ms) {
    if (now_ms < last_now_ms_) {
        throw Error(ErrorCode::NonMonotoneTime, "meter timestamps must not go backwards");
    }
    last_now_ms_ = now_ms;

    Stream& stream = streams_[stream_id];
    stream.events.emplace_back(now_ms, byte_count);
    stream.total_bytes += byte_count;
    // Evict events that fell out of the window (t <= now - W).
    while (!stream.events.empty() && now_ms >= window_ms_ &&
           stream.events.front().first <= now_ms - window_ms_) {
        stream.events.pop_front();
    }
    return window_rate(stream, now_ms);
}

double BandwidthMeter::window_rate(const Stream& stream, uint64_t now_ms) const {
    uint64_t bytes = 0;
    for (auto it = stream.events.rbegin(); it != stream.events.rend(); ++it) {
        if (now_ms >= window_ms_ && it->first <= now_ms - window_ms_) break;
        bytes += it->second;
    }
    return 8.0 * static_cast<double>(bytes) * 1000.0 / static_cast<double>(window_ms_);
}

double BandwidthMeter::rate_bits_per_s(const std::string& stream_id, uint64_t now_ms) const {
    const auto it = streams_.find(stream_id);
    return it == streams_.end() ? 0.0 : window_rate(it->second, now_ms);
}

double BandwidthMeter::total_rate_bits_per_s(uint64_t now_ms) const {
    double total = 0.0;
    for (const auto& [id, stream] : streams_) {
        total += window_rate(stream, now_ms);
    }
    return total;
}

uint64_t BandwidthMeter::total_bytes(const std::string& stream_id) const {
    const auto it = streams_.find(stream_id);
    return it == streams_.end() ? 0 : it->second.total_bytes;
}

std::vector<std::string> BandwidthMeter::stream_ids() const {
    std::vector<std::string> ids;
    ids.reserve(streams_.size());
    for (const auto& [id, stream] : streams_) ids.push_back(id);
    return ids;
}

TokenBucketPacer::TokenBucketPacer(double budget_bits_per_s, double burst_bits)
    : budget_bits_per_s_(budget_bits_per_s), burst_bits_(burst_bits), tokens_(burst_bits) {
    if (!(budget_bits_per_s > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "budget must be positive");
    }
    if (!(burst_bits > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "burst must be positive");
    }
}

TokenBucketPacer TokenBucketPacer::for_frames(double budget_bits_per_s, size_t frame_bytes) {
    const double frame_bits = 8.0 * static_cast<double>(frame_bytes);
    return TokenBucketPacer(budget_bits_per_s, std::min(frame_bits, budget_bits_per_s));
}

TokenBucketPacer::Decision TokenBucketPacer::admit(size_t frame_bytes, uint64_t now_ms) {
    if (!primed_) {
        last_refill_ms_ = now_ms;
        primed_ = true;
    }
    if (now_ms > last_refill_ms_) {
        const double dt_s = static_cast<double>(now_ms - last_refill_ms_) / 1000.0;
        tokens_ = std::min(burst_bits_, tokens_ + budget_bits_per_s_ * dt_s);
        last_refill_ms_ = now_ms;
    }

    const double frame_bits = 8.0 * static_cast<double>(frame_bytes);
    Decision decision;
    if (frame_bits > burst_bits_) {
        decision.starved = true;
        ever_starved_ = true;
    }
    if (!decision.starved && tokens_ >= frame_bits) {
        tokens_ -= frame_bits;
        decision.send = true;
        ++frames_sent_;
    } else {
        ++frames_dropped_;
    }
    return decision;
}

}  // namespace roundtable::net
