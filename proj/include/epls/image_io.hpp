#pragma once

#include <string>

#include "epls/image.hpp"

namespace epls {

/// Load an image by extension: .png/.ppm/.pgm are 8/16-bit LDR mapped to
/// [0,1]; .pfm and .hdr are float formats returned as stored. Throws
/// std::runtime_error with the path in the message when the file cannot be
/// read.
PlanarImage load_image(const std::string& path);

/// Save by extension. LDR formats round to 8 bits; .pfm and .hdr keep float
/// data. Throws std::runtime_error on unwritable paths or unknown extensions.
void save_image(const std::string& path, const PlanarImage& img);

} // namespace epls
