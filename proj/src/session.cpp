#include <roundtable/session.hpp>

#include <algorithm>

namespace roundtable::net {

std::string_view to_string(SessionPhase phase) {
    switch (phase) {
    case SessionPhase::Idle: return "idle";
    case SessionPhase::Joining: return "joining";
    case SessionPhase::Active: return "active";
    case SessionPhase::Closed: return "closed";
    }
    return "unknown";
}

Session::Session(SessionConfig config) : config_(std::move(config)) {
    if (config_.expected_peers.empty()) {
        throw Error(ErrorCode::InvalidInput, "a session needs at least one remote peer");
    }
    for (uint32_t id : config_.expected_peers) {
        if (id == config_.local_peer_id) {
            throw Error(ErrorCode::InvalidInput, "local peer listed as remote");
        }
        state_.peers.emplace(id, PeerInfo{});
    }
    if (state_.peers.size() != config_.expected_peers.size()) {
        throw Error(ErrorCode::InvalidInput, "duplicate peer ids");
    }
    state_.mode = config_.initial_mode;
}

std::vector<Outbound> Session::broadcast(const SessionMessage& message, bool live_only) const {
    std::vector<Outbound> out;
    for (const auto& [id, peer] : state_.peers) {
        if (live_only ? peer.live() : !peer.left) {
            out.push_back(Outbound{id, message});
        }
    }
    return out;
}

std::vector<Outbound> Session::start() {
    if (state_.phase != SessionPhase::Idle) {
        throw Error(ErrorCode::InvalidInput, "session already started");
    }
    state_.phase = SessionPhase::Joining;
    return broadcast(Join{config_.local_peer_id, config_.display_name}, /*live_only=*/false);
}

std::vector<Outbound> Session::request_mode(Mode mode) {
    if (state_.phase != SessionPhase::Active) {
        throw Error(ErrorCode::InvalidInput, "mode transitions require an active session");
    }
    if (mode == state_.mode && !state_.pending_mode) return {};
    state_.pending_mode = mode;
    state_.mode_acks.clear();
    auto out = broadcast(ModeSet{mode}, /*live_only=*/true);
    try_commit_mode();  // no live peers: commit immediately
    return out;
}

std::vector<Outbound> Session::leave() {
    if (state_.phase == SessionPhase::Closed) return {};
    auto out = broadcast(Leave{config_.local_peer_id}, /*live_only=*/false);
    state_.phase = SessionPhase::Closed;
    return out;
}

void Session::drop_peer(uint32_t peer_id, const std::string& reason,
                        std::vector<Outbound>& out) {
    state_.violations.push_back(Violation{peer_id, reason});
    out.push_back(Outbound{peer_id, Leave{config_.local_peer_id}});
    const auto it = state_.peers.find(peer_id);
    if (it != state_.peers.end()) {
        it->second.left = true;
        state_.mode_acks.erase(peer_id);
    }
    if (state_.phase == SessionPhase::Joining) try_activate(out);
    if (state_.pending_mode) try_commit_mode();
}

void Session::try_activate(std::vector<Outbound>& out) {
    if (state_.phase != SessionPhase::Joining) return;
    const bool every_peer_accounted =
        std::all_of(state_.peers.begin(), state_.peers.end(),
                    [](const auto& kv) { return kv.second.joined || kv.second.left; });
    if (!every_peer_accounted) return;

    state_.phase = SessionPhase::Active;
    if (config_.local_placement) {
        auto announce = broadcast(*config_.local_placement, /*live_only=*/true);
        out.insert(out.end(), announce.begin(), announce.end());
    }
    // Mode proposals that raced ahead of our activation.
    auto queued = std::move(queued_mode_sets_);
    queued_mode_sets_.clear();
    for (const auto& [from, mode] : queued) {
        if (state_.peers.at(from).live()) handle_mode_set(from, mode, out);
    }
}

void Session::try_commit_mode() {
    if (!state_.pending_mode) return;
    for (const auto& [id, peer] : state_.peers) {
        if (peer.live() && !state_.mode_acks.contains(id)) return;
    }
    state_.mode = *state_.pending_mode;
    state_.pending_mode.reset();
    state_.mode_acks.clear();
}

void Session::handle_mode_set(uint32_t from_peer, Mode mode, std::vector<Outbound>& out) {
    if (state_.pending_mode) {
        if (mode == *state_.pending_mode) {
            state_.mode_acks.insert(from_peer);
            try_commit_mode();
        } else if (static_cast<uint8_t>(mode) < static_cast<uint8_t>(*state_.pending_mode)) {
            // Concurrent conflicting proposals: the smaller tag wins
            // everywhere, so switch sides and ack the winner.
            state_.pending_mode = mode;
            state_.mode_acks = {from_peer};
            auto echo = broadcast(ModeSet{mode}, /*live_only=*/true);
            out.insert(out.end(), echo.begin(), echo.end());
            try_commit_mode();
        }
        // Larger tag: ignore; the proposer will adopt ours.
        return;
    }
    if (mode == state_.mode) return;  // stale echo of the committed mode
    state_.pending_mode = mode;
    state_.mode_acks = {from_peer};
    auto echo = broadcast(ModeSet{mode}, /*live_only=*/true);
    out.insert(out.end(), echo.begin(), echo.end());
    try_commit_mode();
}

std::vector<Outbound> Session::handle(uint32_t from_peer, const SessionMessage& message,
                                      uint64_t now_ms) {
    state_.now_ms = now_ms;
    std::vector<Outbound> out;

    if (state_.phase == SessionPhase::Closed) return out;
    if (state_.phase == SessionPhase::Idle) {
        drop_peer(from_peer, std::string(type_name(message)) + " before the session started",
                  out);
        return out;
    }

    const auto it = state_.peers.find(from_peer);
    if (it == state_.peers.end()) {
        drop_peer(from_peer, "message from unconfigured peer", out);
        return out;
    }
    PeerInfo& peer = it->second;
    if (peer.left) return out;  // already dropped; ignore stragglers

    if (const auto* join = std::get_if<Join>(&message)) {
        if (join->peer_id != from_peer) {
            drop_peer(from_peer, "join peer id does not match the sender", out);
            return out;
        }
        if (!peer.joined) {
            peer.joined = true;
            peer.display_name = join->display_name;
            try_activate(out);
        }
        return out;
    }

    if (const auto* leave_msg = std::get_if<Leave>(&message)) {
        (void)leave_msg;
        peer.left = true;
        state_.mode_acks.erase(from_peer);
        if (state_.phase == SessionPhase::Joining) try_activate(out);
        if (state_.pending_mode) try_commit_mode();
        return out;
    }

    if (!peer.joined) {
        drop_peer(from_peer, std::string(type_name(message)) + " before join", out);
        return out;
    }

    if (const auto* placement = std::get_if<PlacementUpdate>(&message)) {
        peer.placement = *placement;  // allowed while joining: setup metadata
        return out;
    }

    if (const auto* mode_set = std::get_if<ModeSet>(&message)) {
        if (state_.phase == SessionPhase::Joining) {
            queued_mode_sets_.emplace_back(from_peer, mode_set->mode);
        } else {
            handle_mode_set(from_peer, mode_set->mode, out);
        }
        return out;
    }

    // Media frames. Tolerated while joining (the sender may already be
    // active); in Active they must fit the current or pending mode.
    if (state_.phase == SessionPhase::Active) {
        bool acceptable = false;
        try {
            validate_for_mode(message, state_.mode);
            acceptable = true;
        } catch (const Error&) {
        }
        if (!acceptable && state_.pending_mode) {
            try {
                validate_for_mode(message, *state_.pending_mode);
                acceptable = true;
            } catch (const Error&) {
            }
        }
        if (!acceptable) {
            drop_peer(from_peer,
                      std::string(type_name(message)) + " does not fit mode " +
                          std::string(to_string(state_.mode)),
                      out);
            return out;
        }
    }
    if (std::holds_alternative<PoseFrame>(message)) {
        ++peer.pose_frames_received;
    } else if (std::holds_alternative<VideoFrame>(message)) {
        ++peer.video_frames_received;
    }
    return out;
}

size_t Session::live_peer_count() const {
    size_t n = 0;
    for (const auto& [id, peer] : state_.peers) {
        if (peer.live()) ++n;
    }
    return n;
}

size_t Session::placements_known() const {
    size_t n = 0;
    for (const auto& [id, peer] : state_.peers) {
        if (peer.live() && peer.placement) ++n;
    }
    return n;
}

}  // namespace roundtable::net
