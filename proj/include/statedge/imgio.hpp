#ifndef STATEDGE_IMGIO_HPP
#define STATEDGE_IMGIO_HPP

#include <string>

#include "statedge/image.hpp"

namespace statedge {

// Reads 8-bit grayscale or RGB from PNG, binary PGM (P5), or binary PPM (P6),
// selected by content. RGBA and 16-bit PNGs are reduced to 8-bit RGB on load.
RasterImage read_image(const std::string& path);

// Writes 8-bit PNG/PGM/PPM, selected by file extension. Intensities are
// rounded and clamped to [0, 255] on the way out.
void write_image(const std::string& path, const RasterImage& image);

// Edge maps serialize as {0, 255} single-channel images.
void write_edge_map(const std::string& path, const EdgeMap& map);
EdgeMap read_edge_map(const std::string& path);  // nonzero pixels are edges

}  // namespace statedge

#endif  // STATEDGE_IMGIO_HPP
