#pragma once

#include <roundtable/errors.hpp>
#include <roundtable/session.hpp>
#include <roundtable/transcript.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace roundtable::net {

/// Mode bandwidth budgets, kilobits read as bits: media in the two video
/// modes is paced to 300 kbit/s per stream; Avatar-mode pose streams must
/// stay under 10 kbit/s.
inline constexpr double kVideoBudgetBitsPerS = 300'000.0;
inline constexpr double kAvatarBudgetBitsPerS = 10'000.0;

double mode_budget_bits_per_s(Mode mode);

struct SimulationConfig {
    int peers = 2;
    Mode mode = Mode::Avatar;
    double duration_s = 10.0;
    uint64_t seed = 1;
    double fps = 0.0;          // 0: mode default (30 pose / 15 video)
    size_t frame_bytes = 2500; // video payload size
    uint32_t latency_ms = 20;
    uint32_t jitter_ms = 5;
    double fov_deg = 50.0;     // feeds the advertised PlacementUpdate
    uint32_t meter_window_ms = 1000;

    double effective_fps() const;
};

struct WindowRate {
    uint64_t window_start_ms = 0;
    double bits_per_s = 0.0;
};

struct StreamReport {
    std::string id;
    uint32_t from_peer = 0;
    uint32_t to_peer = 0;
    std::string kind;  // "pose", "video", "control"
    uint64_t bytes = 0;
    double mean_bits_per_s = 0.0;
    double peak_window_bits_per_s = 0.0;
    uint64_t frames_sent = 0;
    uint64_t frames_dropped = 0;
    bool starved = false;
    double budget_bits_per_s = 0.0;  // 0 for unbudgeted control streams
    bool budget_pass = true;
    std::vector<WindowRate> window_rates;
};

struct SimulationReport {
    SimulationConfig config;
    std::vector<StreamReport> streams;  // ordered by stream id
    std::map<uint32_t, SessionState> final_states;
    std::vector<TranscriptEntry> transcript;
    bool all_pass = true;
};

/// Runs a full-mesh session over in-memory links: peers 1..N join at t=0,
/// negotiate the requested mode once everyone is active, then stream
/// mode-appropriate media with per-stream pacing and metering. Entirely
/// deterministic for a given config.
SimulationReport run_simulation(const SimulationConfig& config);

/// The session configuration peer `peer_id` uses inside run_simulation;
/// replay needs identical configs.
SessionConfig session_config_for(const SimulationConfig& config, uint32_t peer_id);

/// Re-drives fresh sessions from a transcript; returns the final states.
std::map<uint32_t, SessionState> replay_transcript(
    const std::vector<TranscriptEntry>& entries,
    const std::map<uint32_t, SessionConfig>& configs);

/// CSV rate report: stream_id,window_start_ms,bits_per_s.
std::string rates_csv(const SimulationReport& report);

/// Summary document (schema roundtable.simulation/1).
std::string summary_json(const SimulationReport& report, int indent = 2);

}  // namespace roundtable::net
