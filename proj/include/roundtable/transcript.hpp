#pragma once

#include <roundtable/wire.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace roundtable::net {

/// One line of a session transcript: either a message delivered between two
/// peers or a local command a peer issued. Lines are replayed in file order;
/// t_ms is informational for the reader and for time bookkeeping.
struct TranscriptEntry {
    enum class Kind { Message, Command };

    Kind kind = Kind::Message;
    uint64_t t_ms = 0;
    // Message entries
    uint32_t from_peer = 0;
    uint32_t to_peer = 0;
    std::optional<SessionMessage> message;
    // Command entries ("start", "set-mode", "leave")
    uint32_t peer = 0;
    std::string command;
    std::optional<Mode> mode;

    bool operator==(const TranscriptEntry&) const = default;
};

std::string to_json_line(const TranscriptEntry& entry);
TranscriptEntry transcript_entry_from_json(const std::string& line);

void write_transcript(std::ostream& out, const std::vector<TranscriptEntry>& entries);
std::vector<TranscriptEntry> read_transcript(std::istream& in);

/// JSON object for a decoded message (video payloads hex-encoded); inverse
/// of message_from_json.
std::string message_to_json_text(const SessionMessage& message);
SessionMessage message_from_json_text(const std::string& text);

}  // namespace roundtable::net
