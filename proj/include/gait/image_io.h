#pragma once

#include <filesystem>

#include "gait/image.h"

namespace gait {

// Binary (P5) PGM, 8- or 16-bit.
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Grid<std::uint8_t>& pixels);

// PNG of any colour type; colour inputs are reduced to luminance and alpha
// is dropped.
GrayImage read_png(const std::filesystem::path& path);

// Dispatches on the file extension (.pgm or .png, case-insensitive).
GrayImage read_gray_image(const std::filesystem::path& path);

bool is_supported_frame_file(const std::filesystem::path& path);

}  // namespace gait
