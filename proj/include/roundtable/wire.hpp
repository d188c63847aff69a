#pragma once

#include <roundtable/errors.hpp>
#include <roundtable/layout.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace roundtable::net {

// Wire format, all little-endian. Every message is framed as
//
//   u32 payload_length | u8 type_tag | payload
//
// so a stream of frames is self-delimiting. Payloads by tag:
//
//   1 Join            u32 peer_id | u8 name_len | name bytes
//   2 ModeSet         u8 mode (0 avatar, 1 video-grid, 2 video-avatar)
//   3 PoseFrame       u32 timestamp_ms | u8 joint_count | joint_count x (f32 x,y,z)
//   4 VideoFrame      u32 timestamp_ms | u16 width | u16 height | u8 pixel_format
//                     | payload bytes (opaque, codec-agnostic)
//   5 PlacementUpdate f64 radian_deg | f64 radius_m | u8 n_remote
//   6 Leave           u32 peer_id
//
// Timestamps are u32 milliseconds since session start; they wrap after about
// 49 days, longer than any session this targets.

enum class Mode : uint8_t { Avatar = 0, VideoGrid = 1, VideoAvatar = 2 };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view name);

enum class WirePixelFormat : uint8_t { Rgb = 0, RgbaMatted = 1 };

struct Join {
    uint32_t peer_id = 0;
    std::string display_name;
    bool operator==(const Join&) const = default;
};

struct ModeSet {
    Mode mode = Mode::Avatar;
    bool operator==(const ModeSet&) const = default;
};

struct Joint {
    float x = 0, y = 0, z = 0;
    bool operator==(const Joint&) const = default;
};

/// Joint index 0 is the left wrist, 1 the right wrist by convention.
struct PoseFrame {
    uint32_t timestamp_ms = 0;
    std::vector<Joint> joints;
    bool operator==(const PoseFrame&) const = default;
};

struct VideoFrame {
    uint32_t timestamp_ms = 0;
    uint16_t width = 0;
    uint16_t height = 0;
    WirePixelFormat pixel_format = WirePixelFormat::Rgb;
    std::vector<uint8_t> payload;
    bool operator==(const VideoFrame&) const = default;
};

struct PlacementUpdate {
    Placement placement;
    uint8_t n_remote = 0;
    bool operator==(const PlacementUpdate&) const = default;
};

struct Leave {
    uint32_t peer_id = 0;
    bool operator==(const Leave&) const = default;
};

using SessionMessage = std::variant<Join, ModeSet, PoseFrame, VideoFrame, PlacementUpdate, Leave>;

uint8_t type_tag(const SessionMessage& message);
std::string_view type_name(const SessionMessage& message);

/// Frames declaring more than this many payload bytes are rejected instead
/// of waited for.
inline constexpr uint32_t kMaxPayloadBytes = 64u << 20;

/// Throws Error{InvariantViolation} when the message violates its own
/// invariants (empty joint list, out-of-range enums, bad placement, ...).
void validate(const SessionMessage& message);

/// Mode-contextual check: pose frames belong to Avatar mode, video frames to
/// the matching video mode (VideoAvatar requires RGBA-matted, VideoGrid RGB).
/// Throws Error{InvariantViolation} on mismatch.
void validate_for_mode(const SessionMessage& message, Mode mode);

std::vector<uint8_t> encode(const SessionMessage& message);
void encode_into(const SessionMessage& message, std::vector<uint8_t>& out);

struct Decoded {
    SessionMessage message;
    size_t consumed = 0;
};

/// Decodes one message from the front of `bytes`. Throws Error{Truncated}
/// when the buffer ends mid-frame, Error{UnknownType} / Error{LengthMismatch}
/// / Error{InvariantViolation} on malformed content.
Decoded decode(std::span<const uint8_t> bytes);

/// Like decode(), but an incomplete frame yields nullopt instead of throwing.
std::optional<Decoded> try_decode(std::span<const uint8_t> bytes);

/// Incremental decoder over a byte stream: feed arbitrary chunks, pull
/// complete messages. Malformed input throws as decode() does.
class StreamDecoder {
public:
    void feed(std::span<const uint8_t> bytes);
    std::optional<SessionMessage> next();
    size_t buffered() const { return buffer_.size() - read_pos_; }

private:
    std::vector<uint8_t> buffer_;
    size_t read_pos_ = 0;
};

}  // namespace roundtable::net
