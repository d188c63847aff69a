#include <roundtable/link.hpp>

namespace roundtable::net {

SimulatedChannel::SimulatedChannel(uint32_t latency_ms, uint32_t jitter_ms, uint64_t seed)
    : latency_ms_(latency_ms), jitter_ms_(jitter_ms), rng_(seed) {}

void SimulatedChannel::send(std::span<const uint8_t> bytes, uint64_t now_ms) {
    if (bytes.empty()) return;
    // Modulo keeps the draw identical across standard libraries; the bias is
    // irrelevant for a test harness.
    const uint64_t jitter = jitter_ms_ == 0 ? 0 : rng_() % (static_cast<uint64_t>(jitter_ms_) + 1);
    uint64_t deliver = now_ms + latency_ms_ + jitter;
    if (deliver < last_delivery_ms_) deliver = last_delivery_ms_;  // keep the stream ordered
    last_delivery_ms_ = deliver;

    if (!in_flight_.empty() && in_flight_.back().first == deliver) {
        auto& chunk = in_flight_.back().second;
        chunk.insert(chunk.end(), bytes.begin(), bytes.end());
    } else {
        in_flight_.emplace_back(deliver, std::vector<uint8_t>(bytes.begin(), bytes.end()));
    }
}

std::vector<uint8_t> SimulatedChannel::receive_until(uint64_t now_ms) {
    std::vector<uint8_t> out;
    while (!in_flight_.empty() && in_flight_.front().first <= now_ms) {
        auto& chunk = in_flight_.front().second;
        out.insert(out.end(), chunk.begin(), chunk.end());
        in_flight_.pop_front();
    }
    return out;
}

}  // namespace roundtable::net
