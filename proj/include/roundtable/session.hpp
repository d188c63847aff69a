#pragma once

#include <roundtable/errors.hpp>
#include <roundtable/wire.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace roundtable::net {

enum class SessionPhase { Idle, Joining, Active, Closed };

std::string_view to_string(SessionPhase phase);

struct PeerInfo {
    bool joined = false;
    bool left = false;
    std::string display_name;
    std::optional<PlacementUpdate> placement;
    uint64_t pose_frames_received = 0;
    uint64_t video_frames_received = 0;

    bool live() const { return joined && !left; }
    bool operator==(const PeerInfo&) const = default;
};

struct Violation {
    uint32_t peer_id = 0;
    std::string reason;
    bool operator==(const Violation&) const = default;
};

/// Complete observable state; value-comparable so a replayed session can be
/// checked against the original.
struct SessionState {
    SessionPhase phase = SessionPhase::Idle;
    Mode mode = Mode::Avatar;
    std::optional<Mode> pending_mode;
    std::set<uint32_t> mode_acks;
    std::map<uint32_t, PeerInfo> peers;
    std::vector<Violation> violations;
    uint64_t now_ms = 0;

    bool operator==(const SessionState&) const = default;
};

struct SessionConfig {
    uint32_t local_peer_id = 0;
    std::string display_name;
    std::vector<uint32_t> expected_peers;  // the full mesh, excluding self
    Mode initial_mode = Mode::Avatar;
    /// Broadcast once on activation when set.
    std::optional<PlacementUpdate> local_placement;
};

struct Outbound {
    uint32_t to_peer = 0;
    SessionMessage message;
};

/// Symmetric full-mesh session endpoint. Deterministic: the same commands
/// and messages in the same order always produce the same state and the
/// same outbound traffic.
///
/// Protocol rules:
///  - Activation requires a Join from every configured peer (peers that sent
///    Leave first are excused). Any message received while Idle is a
///    protocol violation.
///  - Mode changes happen in Active via broadcast-and-all-ack: a proposal is
///    ModeSet(m); every peer re-broadcasts it once as its acknowledgment and
///    commits after seeing ModeSet(m) from every other live peer.
///    Conflicting concurrent proposals resolve to the smaller mode tag.
///    ModeSet arriving while still Joining is queued until activation.
///  - During a pending change, media frames valid for either the current or
///    the pending mode are accepted.
///  - A violating peer is dropped: a Leave is sent to it and it stops
///    counting toward activation and acknowledgments.
class Session {
public:
    explicit Session(SessionConfig config);

    /// Idle -> Joining; announces Join to every configured peer.
    std::vector<Outbound> start();

    /// Proposes a mode change (Active only; throws Error{InvalidInput}
    /// otherwise). Proposing the current mode is a no-op.
    std::vector<Outbound> request_mode(Mode mode);

    /// Broadcasts Leave and closes the session.
    std::vector<Outbound> leave();

    /// Feeds one decoded message from a peer.
    std::vector<Outbound> handle(uint32_t from_peer, const SessionMessage& message,
                                 uint64_t now_ms);

    /// Local time signal; no transition, only bookkeeping.
    void tick(uint64_t now_ms) { state_.now_ms = now_ms; }

    SessionPhase phase() const { return state_.phase; }
    Mode mode() const { return state_.mode; }
    std::optional<Mode> pending_mode() const { return state_.pending_mode; }
    const SessionState& state() const { return state_; }
    const SessionConfig& config() const { return config_; }

    size_t live_peer_count() const;
    size_t placements_known() const;

private:
    std::vector<Outbound> broadcast(const SessionMessage& message, bool live_only) const;
    void drop_peer(uint32_t peer_id, const std::string& reason, std::vector<Outbound>& out);
    void try_activate(std::vector<Outbound>& out);
    void handle_mode_set(uint32_t from_peer, Mode mode, std::vector<Outbound>& out);
    void try_commit_mode();

    SessionConfig config_;
    SessionState state_;
    std::vector<std::pair<uint32_t, Mode>> queued_mode_sets_;
};

}  // namespace roundtable::net
