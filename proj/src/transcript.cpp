#include <roundtable/transcript.hpp>

#include <json.hpp>

#include <istream>
#include <ostream>

namespace roundtable::net {

namespace {

using nlohmann::json;

std::string to_hex(const std::vector<uint8_t>& bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

std::vector<uint8_t> from_hex(const std::string& text) {
    if (text.size() % 2 != 0) {
        throw Error(ErrorCode::InvalidInput, "hex string with odd length");
    }
    const auto nibble = [](char c) -> uint8_t {
        if (c >= '0' && c <= '9') return static_cast<uint8_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<uint8_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<uint8_t>(c - 'A' + 10);
        throw Error(ErrorCode::InvalidInput, "invalid hex digit");
    };
    std::vector<uint8_t> out(text.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<uint8_t>((nibble(text[2 * i]) << 4) | nibble(text[2 * i + 1]));
    }
    return out;
}

json message_to_json(const SessionMessage& message) {
    json j;
    j["type"] = std::string(type_name(message));
    std::visit(
        [&j](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Join>) {
                j["peer_id"] = m.peer_id;
                j["display_name"] = m.display_name;
            } else if constexpr (std::is_same_v<T, ModeSet>) {
                j["mode"] = std::string(to_string(m.mode));
            } else if constexpr (std::is_same_v<T, PoseFrame>) {
                j["timestamp_ms"] = m.timestamp_ms;
                auto joints = json::array();
                for (const Joint& jt : m.joints) {
                    joints.push_back({jt.x, jt.y, jt.z});
                }
                j["joints"] = std::move(joints);
            } else if constexpr (std::is_same_v<T, VideoFrame>) {
                j["timestamp_ms"] = m.timestamp_ms;
                j["width"] = m.width;
                j["height"] = m.height;
                j["pixel_format"] =
                    m.pixel_format == WirePixelFormat::Rgb ? "rgb" : "rgba-matted";
                j["payload_hex"] = to_hex(m.payload);
            } else if constexpr (std::is_same_v<T, PlacementUpdate>) {
                j["radian_deg"] = m.placement.radian_deg;
                j["radius_m"] = m.placement.radius_m;
                j["n_remote"] = m.n_remote;
            } else if constexpr (std::is_same_v<T, Leave>) {
                j["peer_id"] = m.peer_id;
            }
        },
        message);
    return j;
}

SessionMessage message_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "join") {
        return Join{j.at("peer_id").get<uint32_t>(),
                    j.at("display_name").get<std::string>()};
    }
    if (type == "mode-set") {
        return ModeSet{mode_from_string(j.at("mode").get<std::string>())};
    }
    if (type == "pose-frame") {
        PoseFrame m;
        m.timestamp_ms = j.at("timestamp_ms").get<uint32_t>();
        for (const auto& jt : j.at("joints")) {
            m.joints.push_back(
                Joint{jt.at(0).get<float>(), jt.at(1).get<float>(), jt.at(2).get<float>()});
        }
        return m;
    }
    if (type == "video-frame") {
        VideoFrame m;
        m.timestamp_ms = j.at("timestamp_ms").get<uint32_t>();
        m.width = j.at("width").get<uint16_t>();
        m.height = j.at("height").get<uint16_t>();
        const std::string format = j.at("pixel_format").get<std::string>();
        if (format == "rgb") {
            m.pixel_format = WirePixelFormat::Rgb;
        } else if (format == "rgba-matted") {
            m.pixel_format = WirePixelFormat::RgbaMatted;
        } else {
            throw Error(ErrorCode::InvalidInput, "unknown pixel format: " + format);
        }
        m.payload = from_hex(j.at("payload_hex").get<std::string>());
        return m;
    }
    if (type == "placement-update") {
        PlacementUpdate m;
        m.placement.radian_deg = j.at("radian_deg").get<double>();
        m.placement.radius_m = j.at("radius_m").get<double>();
        m.n_remote = j.at("n_remote").get<uint8_t>();
        return m;
    }
    if (type == "leave") {
        return Leave{j.at("peer_id").get<uint32_t>()};
    }
    throw Error(ErrorCode::UnknownType, "unknown transcript message type: " + type);
}

}  // namespace

std::string message_to_json_text(const SessionMessage& message) {
    return message_to_json(message).dump();
}

SessionMessage message_from_json_text(const std::string& text) {
    return message_from_json(json::parse(text));
}

std::string to_json_line(const TranscriptEntry& entry) {
    json j;
    j["t_ms"] = entry.t_ms;
    if (entry.kind == TranscriptEntry::Kind::Message) {
        j["kind"] = "msg";
        j["from"] = entry.from_peer;
        j["to"] = entry.to_peer;
        j["msg"] = message_to_json(*entry.message);
    } else {
        j["kind"] = "cmd";
        j["peer"] = entry.peer;
        j["cmd"] = entry.command;
        if (entry.mode) j["mode"] = std::string(to_string(*entry.mode));
    }
    return j.dump();
}

TranscriptEntry transcript_entry_from_json(const std::string& line) {
    const json j = json::parse(line);
    TranscriptEntry entry;
    entry.t_ms = j.at("t_ms").get<uint64_t>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "msg") {
        entry.kind = TranscriptEntry::Kind::Message;
        entry.from_peer = j.at("from").get<uint32_t>();
        entry.to_peer = j.at("to").get<uint32_t>();
        entry.message = message_from_json(j.at("msg"));
    } else if (kind == "cmd") {
        entry.kind = TranscriptEntry::Kind::Command;
        entry.peer = j.at("peer").get<uint32_t>();
        entry.command = j.at("cmd").get<std::string>();
        if (j.contains("mode")) {
            entry.mode = mode_from_string(j.at("mode").get<std::string>());
        }
    } else {
        throw Error(ErrorCode::InvalidInput, "unknown transcript entry kind: " + kind);
    }
    return entry;
}

void write_transcript(std::ostream& out, const std::vector<TranscriptEntry>& entries) {
    for (const TranscriptEntry& entry : entries) {
        out << to_json_line(entry) << '\n';
    }
}

std::vector<TranscriptEntry> read_transcript(std::istream& in) {
    std::vector<TranscriptEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        entries.push_back(transcript_entry_from_json(line));
    }
    return entries;
}

}  // namespace roundtable::net
