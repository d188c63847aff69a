#pragma once

// JSON views of the public types. Only code that actually emits or ingests
// JSON needs this header; the core headers stay independent of the vendored
// library.

#include <roundtable/fov.hpp>
#include <roundtable/layout.hpp>

#include <json.hpp>

namespace roundtable {

nlohmann::json to_json(const ConversationLayout& layout);
ConversationLayout layout_from_json_obj(const nlohmann::json& j);

nlohmann::json to_json(const OccluderRig& rig, const FieldOfView& device,
                       const FieldOfView& target);

}  // namespace roundtable
