#include <roundtable/wire.hpp>

#include <bit>
#include <cstring>

namespace roundtable::net {

std::string_view to_string(Mode mode) {
    switch (mode) {
    case Mode::Avatar: return "avatar";
    case Mode::VideoGrid: return "video-grid";
    case Mode::VideoAvatar: return "video-avatar";
    }
    return "unknown";
}

Mode mode_from_string(std::string_view name) {
    if (name == "avatar") return Mode::Avatar;
    if (name == "video-grid") return Mode::VideoGrid;
    if (name == "video-avatar") return Mode::VideoAvatar;
    throw Error(ErrorCode::InvalidInput, "unknown mode: " + std::string(name));
}

namespace {

constexpr uint8_t kTagJoin = 1;
constexpr uint8_t kTagModeSet = 2;
constexpr uint8_t kTagPoseFrame = 3;
constexpr uint8_t kTagVideoFrame = 4;
constexpr uint8_t kTagPlacementUpdate = 5;
constexpr uint8_t kTagLeave = 6;

void put_u8(std::vector<uint8_t>& out, uint8_t v) { out.push_back(v); }

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v & 0xFF));
    out.push_back(static_cast<uint8_t>(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_f32(std::vector<uint8_t>& out, float v) { put_u32(out, std::bit_cast<uint32_t>(v)); }
void put_f64(std::vector<uint8_t>& out, double v) { put_u64(out, std::bit_cast<uint64_t>(v)); }

// Bounds-checked little-endian reader.
class Reader {
public:
    explicit Reader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

    uint8_t u8() { return take(1)[0]; }

    uint16_t u16() {
        const auto b = take(2);
        return static_cast<uint16_t>(b[0] | (b[1] << 8));
    }

    uint32_t u32() {
        const auto b = take(4);
        return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
               (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
    }

    uint64_t u64() {
        uint64_t v = 0;
        const auto b = take(8);
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<size_t>(i)];
        return v;
    }

    float f32() { return std::bit_cast<float>(u32()); }
    double f64() { return std::bit_cast<double>(u64()); }

    std::span<const uint8_t> rest() {
        auto r = bytes_.subspan(pos_);
        pos_ = bytes_.size();
        return r;
    }

    size_t remaining() const { return bytes_.size() - pos_; }

private:
    std::span<const uint8_t> take(size_t n) {
        if (remaining() < n) {
            throw Error(ErrorCode::LengthMismatch, "payload ends mid-field");
        }
        auto r = bytes_.subspan(pos_, n);
        pos_ += n;
        return r;
    }

    std::span<const uint8_t> bytes_;
    size_t pos_ = 0;
};

void check(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvariantViolation, what);
}

}  // namespace

uint8_t type_tag(const SessionMessage& message) {
    return static_cast<uint8_t>(message.index() + 1);
}

std::string_view type_name(const SessionMessage& message) {
    static constexpr std::string_view names[] = {"join",        "mode-set",
                                                 "pose-frame",  "video-frame",
                                                 "placement-update", "leave"};
    return names[message.index()];
}

void validate(const SessionMessage& message) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Join>) {
                check(m.display_name.size() <= 255, "display name longer than 255 bytes");
            } else if constexpr (std::is_same_v<T, ModeSet>) {
                check(static_cast<uint8_t>(m.mode) <= 2, "mode tag out of range");
            } else if constexpr (std::is_same_v<T, PoseFrame>) {
                check(!m.joints.empty(), "pose frame needs at least one joint");
                check(m.joints.size() <= 255, "joint count exceeds u8");
            } else if constexpr (std::is_same_v<T, VideoFrame>) {
                check(m.width > 0 && m.height > 0, "video frame dimensions must be positive");
                check(static_cast<uint8_t>(m.pixel_format) <= 1, "pixel format out of range");
            } else if constexpr (std::is_same_v<T, PlacementUpdate>) {
                check(m.n_remote >= 1, "placement update needs n_remote >= 1");
                check(m.placement.radius_m > 0.0, "placement radius must be positive");
                check(m.placement.radian_deg >= 0.0 && m.placement.radian_deg < 180.0,
                      "placement radian out of [0, 180)");
            } else if constexpr (std::is_same_v<T, Leave>) {
                (void)m;
            }
        },
        message);
}

void validate_for_mode(const SessionMessage& message, Mode mode) {
    if (const auto* pose = std::get_if<PoseFrame>(&message)) {
        (void)pose;
        check(mode == Mode::Avatar, "pose frame outside Avatar mode");
    } else if (const auto* video = std::get_if<VideoFrame>(&message)) {
        if (mode == Mode::VideoAvatar) {
            check(video->pixel_format == WirePixelFormat::RgbaMatted,
                  "VideoAvatar mode requires RGBA-matted frames");
        } else if (mode == Mode::VideoGrid) {
            check(video->pixel_format == WirePixelFormat::Rgb,
                  "VideoGrid mode requires RGB frames");
        } else {
            check(false, "video frame in Avatar mode");
        }
    }
}

void encode_into(const SessionMessage& message, std::vector<uint8_t>& out) {
    validate(message);

    std::vector<uint8_t> payload;
    std::visit(
        [&payload](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Join>) {
                put_u32(payload, m.peer_id);
                put_u8(payload, static_cast<uint8_t>(m.display_name.size()));
                payload.insert(payload.end(), m.display_name.begin(), m.display_name.end());
            } else if constexpr (std::is_same_v<T, ModeSet>) {
                put_u8(payload, static_cast<uint8_t>(m.mode));
            } else if constexpr (std::is_same_v<T, PoseFrame>) {
                put_u32(payload, m.timestamp_ms);
                put_u8(payload, static_cast<uint8_t>(m.joints.size()));
                for (const Joint& j : m.joints) {
                    put_f32(payload, j.x);
                    put_f32(payload, j.y);
                    put_f32(payload, j.z);
                }
            } else if constexpr (std::is_same_v<T, VideoFrame>) {
                put_u32(payload, m.timestamp_ms);
                put_u16(payload, m.width);
                put_u16(payload, m.height);
                put_u8(payload, static_cast<uint8_t>(m.pixel_format));
                payload.insert(payload.end(), m.payload.begin(), m.payload.end());
            } else if constexpr (std::is_same_v<T, PlacementUpdate>) {
                put_f64(payload, m.placement.radian_deg);
                put_f64(payload, m.placement.radius_m);
                put_u8(payload, m.n_remote);
            } else if constexpr (std::is_same_v<T, Leave>) {
                put_u32(payload, m.peer_id);
            }
        },
        message);

    put_u32(out, static_cast<uint32_t>(payload.size()));
    put_u8(out, type_tag(message));
    out.insert(out.end(), payload.begin(), payload.end());
}

std::vector<uint8_t> encode(const SessionMessage& message) {
    std::vector<uint8_t> out;
    encode_into(message, out);
    return out;
}

namespace {

SessionMessage decode_payload(uint8_t tag, std::span<const uint8_t> payload) {
    Reader r(payload);
    SessionMessage message;
    switch (tag) {
    case kTagJoin: {
        Join m;
        m.peer_id = r.u32();
        const uint8_t len = r.u8();
        if (r.remaining() != len) {
            throw Error(ErrorCode::LengthMismatch, "join name length disagrees with frame");
        }
        const auto bytes = r.rest();
        m.display_name.assign(bytes.begin(), bytes.end());
        message = std::move(m);
        break;
    }
    case kTagModeSet: {
        ModeSet m;
        const uint8_t mode = r.u8();
        check(mode <= 2, "mode tag out of range");
        m.mode = static_cast<Mode>(mode);
        message = m;
        break;
    }
    case kTagPoseFrame: {
        PoseFrame m;
        m.timestamp_ms = r.u32();
        const uint8_t count = r.u8();
        if (r.remaining() != static_cast<size_t>(count) * 12) {
            throw Error(ErrorCode::LengthMismatch, "joint count disagrees with frame length");
        }
        m.joints.reserve(count);
        for (unsigned i = 0; i < count; ++i) {
            m.joints.push_back(Joint{r.f32(), r.f32(), r.f32()});
        }
        message = std::move(m);
        break;
    }
    case kTagVideoFrame: {
        VideoFrame m;
        m.timestamp_ms = r.u32();
        m.width = r.u16();
        m.height = r.u16();
        const uint8_t format = r.u8();
        check(format <= 1, "pixel format out of range");
        m.pixel_format = static_cast<WirePixelFormat>(format);
        const auto blob = r.rest();
        m.payload.assign(blob.begin(), blob.end());
        message = std::move(m);
        break;
    }
    case kTagPlacementUpdate: {
        PlacementUpdate m;
        m.placement.radian_deg = r.f64();
        m.placement.radius_m = r.f64();
        m.n_remote = r.u8();
        message = m;
        break;
    }
    case kTagLeave: {
        Leave m;
        m.peer_id = r.u32();
        message = m;
        break;
    }
    default:
        throw Error(ErrorCode::UnknownType, "unknown message tag " + std::to_string(tag));
    }
    if (r.remaining() != 0) {
        throw Error(ErrorCode::LengthMismatch, "payload has trailing bytes");
    }
    validate(message);
    return message;
}

}  // namespace

std::optional<Decoded> try_decode(std::span<const uint8_t> bytes) {
    if (bytes.size() < 5) return std::nullopt;
    const uint32_t length = static_cast<uint32_t>(bytes[0]) |
                            (static_cast<uint32_t>(bytes[1]) << 8) |
                            (static_cast<uint32_t>(bytes[2]) << 16) |
                            (static_cast<uint32_t>(bytes[3]) << 24);
    if (length > kMaxPayloadBytes) {
        throw Error(ErrorCode::LengthMismatch, "declared payload exceeds the frame cap");
    }
    if (bytes.size() < 5 + static_cast<size_t>(length)) return std::nullopt;
    const uint8_t tag = bytes[4];
    return Decoded{decode_payload(tag, bytes.subspan(5, length)), 5 + static_cast<size_t>(length)};
}

Decoded decode(std::span<const uint8_t> bytes) {
    auto decoded = try_decode(bytes);
    if (!decoded) {
        throw Error(ErrorCode::Truncated, "frame extends past the end of the buffer");
    }
    return std::move(*decoded);
}

void StreamDecoder::feed(std::span<const uint8_t> bytes) {
    buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<SessionMessage> StreamDecoder::next() {
    auto decoded =
        try_decode(std::span<const uint8_t>(buffer_).subspan(read_pos_));
    if (!decoded) {
        // Compact once the consumed prefix dominates the buffer.
        if (read_pos_ > 4096 && read_pos_ * 2 > buffer_.size()) {
            buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(read_pos_));
            read_pos_ = 0;
        }
        return std::nullopt;
    }
    read_pos_ += decoded->consumed;
    return std::move(decoded->message);
}

}  // namespace roundtable::net
