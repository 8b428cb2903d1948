#ifndef STATEDGE_IMAGE_HPP
#define STATEDGE_IMAGE_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace statedge {

// Row-major raster of real-valued intensities in [0, 255].
// Intensities stay real between stages; quantization to 8 bit happens
// only when a file is written.
class RasterImage {
 public:
    RasterImage() = default;

    RasterImage(int width, int height, int channels, double fill = 0.0)
        : m_width(width), m_height(height), m_channels(channels) {
        if (width < 1 || height < 1) {
            throw std::invalid_argument("RasterImage: width and height must be >= 1");
        }
        if (channels != 1 && channels != 3) {
            throw std::invalid_argument("RasterImage: channels must be 1 or 3");
        }
        m_data.assign(static_cast<size_t>(width) * height * channels, fill);
    }

    int width() const { return m_width; }
    int height() const { return m_height; }
    int channels() const { return m_channels; }
    size_t pixel_count() const { return static_cast<size_t>(m_width) * m_height; }

    double& at(int x, int y, int c = 0) {
        return m_data[(static_cast<size_t>(y) * m_width + x) * m_channels + c];
    }
    double at(int x, int y, int c = 0) const {
        return m_data[(static_cast<size_t>(y) * m_width + x) * m_channels + c];
    }

    std::vector<double>& data() { return m_data; }
    const std::vector<double>& data() const { return m_data; }

    bool same_dims(const RasterImage& other) const {
        return m_width == other.m_width && m_height == other.m_height
            && m_channels == other.m_channels;
    }

 private:
    int m_width = 0;
    int m_height = 0;
    int m_channels = 0;
    std::vector<double> m_data;
};

// Center-anchored convolution kernel; rows and cols must be odd.
class Kernel {
 public:
    Kernel(int rows, int cols, std::vector<double> weights)
        : m_rows(rows), m_cols(cols), m_weights(std::move(weights)) {
        if (rows < 1 || cols < 1 || rows % 2 == 0 || cols % 2 == 0) {
            throw std::invalid_argument("Kernel: rows and cols must be odd positive");
        }
        if (m_weights.size() != static_cast<size_t>(rows) * cols) {
            throw std::invalid_argument("Kernel: weight count does not match rows*cols");
        }
    }

    int rows() const { return m_rows; }
    int cols() const { return m_cols; }
    double at(int r, int c) const { return m_weights[static_cast<size_t>(r) * m_cols + c]; }
    const std::vector<double>& weights() const { return m_weights; }

 private:
    int m_rows;
    int m_cols;
    std::vector<double> m_weights;
};

enum class BorderPolicy { Replicate, Reflect, Zero };

// Per-pixel boolean edge / non-edge map, dimensions matching the source image.
class EdgeMap {
 public:
    EdgeMap() = default;
    EdgeMap(int width, int height, bool fill = false)
        : m_width(width), m_height(height),
          m_bits(static_cast<size_t>(width) * height, fill ? 1 : 0) {
        if (width < 1 || height < 1) {
            throw std::invalid_argument("EdgeMap: width and height must be >= 1");
        }
    }

    int width() const { return m_width; }
    int height() const { return m_height; }

    bool get(int x, int y) const { return m_bits[static_cast<size_t>(y) * m_width + x] != 0; }
    void set(int x, int y, bool v) { m_bits[static_cast<size_t>(y) * m_width + x] = v ? 1 : 0; }

    size_t count() const {
        size_t n = 0;
        for (unsigned char b : m_bits) n += b;
        return n;
    }

    bool operator==(const EdgeMap& other) const {
        return m_width == other.m_width && m_height == other.m_height && m_bits == other.m_bits;
    }

 private:
    int m_width = 0;
    int m_height = 0;
    std::vector<unsigned char> m_bits;
};

}  // namespace statedge

#endif  // STATEDGE_IMAGE_HPP
