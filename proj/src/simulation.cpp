#include <roundtable/simulation.hpp>

#include <roundtable/bandwidth.hpp>
#include <roundtable/link.hpp>
#include <roundtable/models.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace roundtable::net {

double mode_budget_bits_per_s(Mode mode) {
    return mode == Mode::Avatar ? kAvatarBudgetBitsPerS : kVideoBudgetBitsPerS;
}

double SimulationConfig::effective_fps() const {
    if (fps > 0.0) return fps;
    return mode == Mode::Avatar ? 30.0 : 15.0;
}

SessionConfig session_config_for(const SimulationConfig& config, uint32_t peer_id) {
    SessionConfig sc;
    sc.local_peer_id = peer_id;
    sc.display_name = "peer-" + std::to_string(peer_id);
    for (int i = 1; i <= config.peers; ++i) {
        if (static_cast<uint32_t>(i) != peer_id) {
            sc.expected_peers.push_back(static_cast<uint32_t>(i));
        }
    }
    sc.initial_mode = Mode::Avatar;
    const int n_remote = config.peers - 1;
    if (n_remote >= 1 && n_remote <= 4) {
        const Prediction p = predict_placement(config.fov_deg, n_remote);
        sc.local_placement =
            PlacementUpdate{p.placement, static_cast<uint8_t>(n_remote)};
    }
    return sc;
}

namespace {

void validate_config(const SimulationConfig& config) {
    if (config.peers < 2) {
        throw Error(ErrorCode::InvalidCount, "a session simulation needs at least 2 peers");
    }
    if (config.peers > 64) {
        throw Error(ErrorCode::InvalidInput, "peer count capped at 64");
    }
    if (!(config.duration_s > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "duration must be positive");
    }
    if (config.fps < 0.0) {
        throw Error(ErrorCode::InvalidInput, "fps must be non-negative");
    }
    if (config.mode != Mode::Avatar && config.frame_bytes == 0) {
        throw Error(ErrorCode::InvalidInput, "video modes need a frame payload size");
    }
    if (config.meter_window_ms == 0) {
        throw Error(ErrorCode::InvalidInput, "meter window must be positive");
    }
}

std::string stream_name(uint32_t from, uint32_t to, const std::string& kind) {
    return "p" + std::to_string(from) + "->p" + std::to_string(to) + "/" + kind;
}

SessionMessage make_pose_frame(uint32_t peer, uint64_t t_ms) {
    // Two wrists (index 0 left, 1 right) swinging deterministically.
    const float phase = static_cast<float>(t_ms) * 0.004f + static_cast<float>(peer);
    PoseFrame frame;
    frame.timestamp_ms = static_cast<uint32_t>(t_ms);
    frame.joints.push_back(
        Joint{-0.25f + 0.1f * std::sin(phase), 1.0f + 0.05f * std::cos(phase), 0.4f});
    frame.joints.push_back(
        Joint{0.25f + 0.1f * std::sin(phase * 1.1f), 1.0f + 0.05f * std::sin(phase), 0.4f});
    return frame;
}

SessionMessage make_video_frame(const SimulationConfig& config, uint32_t peer, uint64_t t_ms,
                                uint64_t frame_index) {
    VideoFrame frame;
    frame.timestamp_ms = static_cast<uint32_t>(t_ms);
    frame.width = 80;
    frame.height = 45;
    frame.pixel_format = config.mode == Mode::VideoAvatar ? WirePixelFormat::RgbaMatted
                                                          : WirePixelFormat::Rgb;
    frame.payload.resize(config.frame_bytes);
    for (size_t i = 0; i < frame.payload.size(); ++i) {
        frame.payload[i] =
            static_cast<uint8_t>((frame_index * 31 + i * 7 + peer * 13) & 0xFF);
    }
    return frame;
}

struct MediaStream {
    uint32_t from = 0;
    uint32_t to = 0;
    std::string kind;
    TokenBucketPacer pacer;
    uint64_t next_frame_index = 0;
    uint64_t stream_start_ms = 0;
    bool started = false;
};

}  // namespace

SimulationReport run_simulation(const SimulationConfig& config) {
    validate_config(config);

    SimulationReport report;
    report.config = config;

    const uint64_t duration_ms = static_cast<uint64_t>(std::llround(config.duration_s * 1000.0));
    const double fps = config.effective_fps();
    const double budget = mode_budget_bits_per_s(config.mode);
    const std::string media_kind = config.mode == Mode::Avatar ? "pose" : "video";

    // Sessions, peer ids 1..N.
    std::map<uint32_t, Session> sessions;
    for (int i = 1; i <= config.peers; ++i) {
        const auto id = static_cast<uint32_t>(i);
        sessions.emplace(id, Session(session_config_for(config, id)));
    }

    // One channel per ordered pair, one stream decoder per receiving end.
    std::map<std::pair<uint32_t, uint32_t>, SimulatedChannel> channels;
    std::map<std::pair<uint32_t, uint32_t>, StreamDecoder> decoders;
    uint64_t pair_index = 0;
    for (uint32_t a = 1; a <= static_cast<uint32_t>(config.peers); ++a) {
        for (uint32_t b = a + 1; b <= static_cast<uint32_t>(config.peers); ++b) {
            const uint64_t base = config.seed * 1000003 + pair_index * 2;
            channels.emplace(std::make_pair(a, b),
                             SimulatedChannel(config.latency_ms, config.jitter_ms, base + 1));
            channels.emplace(std::make_pair(b, a),
                             SimulatedChannel(config.latency_ms, config.jitter_ms, base + 2));
            decoders.emplace(std::make_pair(a, b), StreamDecoder{});
            decoders.emplace(std::make_pair(b, a), StreamDecoder{});
            ++pair_index;
        }
    }

    BandwidthMeter meter(config.meter_window_ms);
    std::map<std::string, MediaStream> media;  // ordered by stream id
    std::map<std::string, std::vector<WindowRate>> window_rates;

    const auto route = [&](uint32_t from, const std::vector<Outbound>& outs, uint64_t t) {
        for (const Outbound& o : outs) {
            const std::vector<uint8_t> bytes = encode(o.message);
            channels.at({from, o.to_peer}).send(bytes, t);
            meter.record(stream_name(from, o.to_peer, "control"), bytes.size(), t);
        }
    };

    bool mode_requested = config.mode == Mode::Avatar;  // nothing to negotiate

    for (uint64_t t = 0; t <= duration_ms; ++t) {
        if (t == 0) {
            for (auto& [id, session] : sessions) {
                route(id, session.start(), t);
                report.transcript.push_back(TranscriptEntry{
                    TranscriptEntry::Kind::Command, t, 0, 0, std::nullopt, id, "start",
                    std::nullopt});
            }
        }

        if (!mode_requested) {
            const bool all_active =
                std::all_of(sessions.begin(), sessions.end(), [](const auto& kv) {
                    return kv.second.phase() == SessionPhase::Active;
                });
            if (all_active) {
                route(1, sessions.at(1).request_mode(config.mode), t);
                report.transcript.push_back(TranscriptEntry{
                    TranscriptEntry::Kind::Command, t, 0, 0, std::nullopt, 1, "set-mode",
                    config.mode});
                mode_requested = true;
            }
        }

        // Media generation: a peer streams once it is active in the target
        // mode; its frame clock starts at that moment.
        for (auto& [id, session] : sessions) {
            if (session.phase() != SessionPhase::Active || session.mode() != config.mode) {
                continue;
            }
            for (const auto& [other_id, other_session] : sessions) {
                if (other_id == id) continue;
                const std::string name = stream_name(id, other_id, media_kind);
                auto [it, inserted] = media.try_emplace(
                    name, MediaStream{id, other_id, media_kind,
                                      TokenBucketPacer(budget, 1.0), 0, t, false});
                MediaStream& stream = it->second;
                if (inserted || !stream.started) {
                    // Size the burst for this stream's constant frame size.
                    const size_t wire_bytes =
                        config.mode == Mode::Avatar
                            ? encode(make_pose_frame(id, t)).size()
                            : encode(make_video_frame(config, id, t, 0)).size();
                    stream.pacer = TokenBucketPacer::for_frames(budget, wire_bytes);
                    stream.stream_start_ms = t;
                    stream.started = true;
                }
                while (true) {
                    const uint64_t due =
                        stream.stream_start_ms +
                        static_cast<uint64_t>(std::floor(
                            static_cast<double>(stream.next_frame_index) * 1000.0 / fps));
                    if (due > t) break;
                    const SessionMessage frame =
                        config.mode == Mode::Avatar
                            ? make_pose_frame(id, t)
                            : make_video_frame(config, id, t, stream.next_frame_index);
                    ++stream.next_frame_index;
                    const std::vector<uint8_t> bytes = encode(frame);
                    if (stream.pacer.admit(bytes.size(), t).send) {
                        channels.at({id, other_id}).send(bytes, t);
                        meter.record(name, bytes.size(), t);
                    }
                }
            }
        }

        // Deliveries, repeated until this tick produces nothing new (with
        // zero latency a handshake can ripple within one tick).
        bool progress = true;
        while (progress) {
            progress = false;
            for (auto& [pair, channel] : channels) {
                const std::vector<uint8_t> bytes = channel.receive_until(t);
                if (bytes.empty()) continue;
                progress = true;
                StreamDecoder& decoder = decoders.at(pair);
                decoder.feed(bytes);
                while (auto message = decoder.next()) {
                    report.transcript.push_back(TranscriptEntry{
                        TranscriptEntry::Kind::Message, t, pair.first, pair.second, *message,
                        0, "", std::nullopt});
                    route(pair.second,
                          sessions.at(pair.second).handle(pair.first, *message, t), t);
                }
            }
        }

        if (t > 0 && t % config.meter_window_ms == 0) {
            for (const std::string& id : meter.stream_ids()) {
                window_rates[id].push_back(
                    WindowRate{t - config.meter_window_ms, meter.rate_bits_per_s(id, t)});
            }
        }
    }

    for (auto& [id, session] : sessions) {
        report.final_states.emplace(id, session.state());
    }

    // Stream reports: media streams checked against the mode budget.
    for (const std::string& id : meter.stream_ids()) {
        StreamReport sr;
        sr.id = id;
        sr.bytes = meter.total_bytes(id);
        sr.mean_bits_per_s = 8.0 * static_cast<double>(sr.bytes) / config.duration_s;
        sr.window_rates = window_rates[id];
        for (const WindowRate& w : sr.window_rates) {
            sr.peak_window_bits_per_s = std::max(sr.peak_window_bits_per_s, w.bits_per_s);
        }
        const auto media_it = media.find(id);
        if (media_it != media.end()) {
            const MediaStream& stream = media_it->second;
            sr.from_peer = stream.from;
            sr.to_peer = stream.to;
            sr.kind = stream.kind;
            sr.frames_sent = stream.pacer.frames_sent();
            sr.frames_dropped = stream.pacer.frames_dropped();
            sr.starved = stream.pacer.ever_starved();
            sr.budget_bits_per_s = budget;
            if (config.mode == Mode::Avatar) {
                // Pose streams must stay strictly under the budget.
                sr.budget_pass = sr.mean_bits_per_s < budget;
                for (const WindowRate& w : sr.window_rates) {
                    if (!(w.bits_per_s < budget)) sr.budget_pass = false;
                }
            } else {
                // Paced streams may exceed the budget by at most one frame
                // per window.
                const double frame_bits =
                    8.0 * static_cast<double>(encode(make_video_frame(config, stream.from, 0, 0)).size());
                sr.budget_pass = true;
                for (const WindowRate& w : sr.window_rates) {
                    if (w.bits_per_s > budget + frame_bits) sr.budget_pass = false;
                }
            }
            if (!sr.budget_pass) report.all_pass = false;
        } else {
            sr.kind = "control";
            const size_t arrow = id.find("->");
            sr.from_peer = static_cast<uint32_t>(std::stoul(id.substr(1, arrow - 1)));
            const size_t slash = id.find('/');
            sr.to_peer =
                static_cast<uint32_t>(std::stoul(id.substr(arrow + 3, slash - arrow - 3)));
        }
        report.streams.push_back(std::move(sr));
    }
    return report;
}

std::map<uint32_t, SessionState> replay_transcript(
    const std::vector<TranscriptEntry>& entries,
    const std::map<uint32_t, SessionConfig>& configs) {
    std::map<uint32_t, Session> sessions;
    for (const auto& [id, config] : configs) {
        sessions.emplace(id, Session(config));
    }
    for (const TranscriptEntry& entry : entries) {
        if (entry.kind == TranscriptEntry::Kind::Command) {
            const auto it = sessions.find(entry.peer);
            if (it == sessions.end()) continue;
            if (entry.command == "start") {
                it->second.start();
            } else if (entry.command == "set-mode" && entry.mode) {
                it->second.request_mode(*entry.mode);
            } else if (entry.command == "leave") {
                it->second.leave();
            }
        } else {
            const auto it = sessions.find(entry.to_peer);
            if (it == sessions.end()) continue;
            it->second.handle(entry.from_peer, *entry.message, entry.t_ms);
        }
    }
    std::map<uint32_t, SessionState> states;
    for (auto& [id, session] : sessions) {
        states.emplace(id, session.state());
    }
    return states;
}

std::string rates_csv(const SimulationReport& report) {
    std::ostringstream out;
    out << "stream_id,window_start_ms,bits_per_s\n";
    char rate[40];
    for (const StreamReport& stream : report.streams) {
        for (const WindowRate& w : stream.window_rates) {
            std::snprintf(rate, sizeof(rate), "%.10g", w.bits_per_s);
            out << stream.id << ',' << w.window_start_ms << ',' << rate << '\n';
        }
    }
    return out.str();
}

std::string summary_json(const SimulationReport& report, int indent) {
    nlohmann::json j;
    j["schema"] = "roundtable.simulation/1";
    j["peers"] = report.config.peers;
    j["mode"] = std::string(to_string(report.config.mode));
    j["duration_s"] = report.config.duration_s;
    j["seed"] = report.config.seed;
    j["fps"] = report.config.effective_fps();
    j["frame_bytes"] = report.config.frame_bytes;
    j["latency_ms"] = report.config.latency_ms;
    j["jitter_ms"] = report.config.jitter_ms;
    j["budget_bits_per_s"] = mode_budget_bits_per_s(report.config.mode);
    j["all_pass"] = report.all_pass;
    auto streams = nlohmann::json::array();
    for (const StreamReport& s : report.streams) {
        nlohmann::json sj;
        sj["id"] = s.id;
        sj["from"] = s.from_peer;
        sj["to"] = s.to_peer;
        sj["kind"] = s.kind;
        sj["bytes"] = s.bytes;
        sj["mean_bits_per_s"] = s.mean_bits_per_s;
        sj["peak_window_bits_per_s"] = s.peak_window_bits_per_s;
        if (s.kind != "control") {
            sj["frames_sent"] = s.frames_sent;
            sj["frames_dropped"] = s.frames_dropped;
            sj["starved"] = s.starved;
            sj["budget_bits_per_s"] = s.budget_bits_per_s;
            sj["budget_pass"] = s.budget_pass;
        }
        streams.push_back(std::move(sj));
    }
    j["streams"] = std::move(streams);
    auto states = nlohmann::json::array();
    for (const auto& [id, state] : report.final_states) {
        nlohmann::json pj;
        pj["peer"] = id;
        pj["phase"] = std::string(to_string(state.phase));
        pj["mode"] = std::string(to_string(state.mode));
        pj["live_peers"] = 0;
        size_t live = 0, placements = 0;
        for (const auto& [pid, info] : state.peers) {
            if (info.live()) {
                ++live;
                if (info.placement) ++placements;
            }
        }
        pj["live_peers"] = live;
        pj["placements_known"] = placements;
        pj["violations"] = state.violations.size();
        states.push_back(std::move(pj));
    }
    j["peers_final"] = std::move(states);
    return j.dump(indent) + "\n";
}

}  // namespace roundtable::net
