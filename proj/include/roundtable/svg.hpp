#pragma once

#include <roundtable/layout.hpp>

#include <string>

namespace roundtable {

/// Renders a top-down plot of a conversation layout: the circle, the local
/// user at the bottom (triangle pointing +z), and one marker per avatar with
/// a tick in its facing direction. Pure text emission; byte-stable for
/// identical layouts.
std::string layout_to_svg(const ConversationLayout& layout);

}  // namespace roundtable
