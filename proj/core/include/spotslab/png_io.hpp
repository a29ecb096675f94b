#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "spotslab/tensor.hpp"

namespace spotslab::png_io {

/// Write an 8-bit RGB PNG from a [3,H,W] tensor with values in [0,1].
/// Values are quantized with round(v*255).
void write_rgb(const std::filesystem::path& path, const Tensor& chw);

/// Read an 8-bit RGB PNG into a [3,H,W] tensor with values k/255.
Tensor read_rgb(const std::filesystem::path& path);

}  // namespace spotslab::png_io
