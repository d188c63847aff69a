#pragma once

#include <cstdint>
#include <deque>
#include <random>
#include <span>
#include <vector>

namespace roundtable::net {

/// One direction of a reliable, ordered, in-memory byte channel with seeded
/// latency jitter. Bytes are never lost, duplicated, or reordered: a
/// delivery time is drawn as now + latency + jitter and then clamped to be
/// no earlier than the previously scheduled delivery. Identical seeds give
/// bit-identical schedules.
class SimulatedChannel {
public:
    SimulatedChannel(uint32_t latency_ms, uint32_t jitter_ms, uint64_t seed);

    void send(std::span<const uint8_t> bytes, uint64_t now_ms);

    /// All bytes whose delivery time is <= now_ms, in send order.
    std::vector<uint8_t> receive_until(uint64_t now_ms);

    bool idle() const { return in_flight_.empty(); }

private:
    uint32_t latency_ms_;
    uint32_t jitter_ms_;
    std::mt19937_64 rng_;
    uint64_t last_delivery_ms_ = 0;
    std::deque<std::pair<uint64_t, std::vector<uint8_t>>> in_flight_;
};

/// Bidirectional link between peers a and b; the two directions use
/// independent jitter streams derived from the seed.
class DuplexLink {
public:
    DuplexLink(uint32_t latency_ms, uint32_t jitter_ms, uint64_t seed)
        : a_to_b_(latency_ms, jitter_ms, seed * 2 + 1),
          b_to_a_(latency_ms, jitter_ms, seed * 2 + 2) {}

    SimulatedChannel& a_to_b() { return a_to_b_; }
    SimulatedChannel& b_to_a() { return b_to_a_; }

private:
    SimulatedChannel a_to_b_;
    SimulatedChannel b_to_a_;
};

}  // namespace roundtable::net
