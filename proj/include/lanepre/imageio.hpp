#pragma once

#include <string>

#include "lanepre/image.hpp"

namespace lanepre::io {

// Reads any 8/16-bit gray/palette/RGB/RGBA PNG as an 8-bit RGB frame.
// Throws std::runtime_error naming the file on failure.
FrameRgb read_png(const std::string& path);

// Writes an 8-bit RGB PNG with fixed encoder settings, so identical
// frames produce identical files.
void write_png(const std::string& path, const FrameRgb& frame);

} // namespace lanepre::io
