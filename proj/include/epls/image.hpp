#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace epls {

/// Planar raster image: data laid out as `channels` contiguous planes of
/// height*width doubles, row-major within each plane.
class PlanarImage {
public:
    PlanarImage() = default;
    PlanarImage(int width, int height, int channels, double fill = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    bool empty() const { return data_.empty(); }
    std::size_t plane_size() const { return static_cast<std::size_t>(width_) * height_; }
    std::size_t size() const { return data_.size(); }

    double* plane(int c) { return data_.data() + plane_size() * c; }
    const double* plane(int c) const { return data_.data() + plane_size() * c; }

    double& at(int c, int y, int x) { return data_[plane_size() * c + static_cast<std::size_t>(y) * width_ + x]; }
    double at(int c, int y, int x) const { return data_[plane_size() * c + static_cast<std::size_t>(y) * width_ + x]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const PlanarImage& other) const {
        return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<double> data_;
};

/// Original value range of an image before mapping to [0,1].
struct NormalizationRecord {
    double lo = 0.0;
    double hi = 1.0;
};

/// Per-axis forward-difference rasters, same shape as the source image.
struct GradientField {
    PlanarImage gx;
    PlanarImage gy;
};

/// Throws std::invalid_argument if any sample is NaN/Inf. `what` names the caller.
void require_finite(const PlanarImage& img, const char* what);

double min_value(const PlanarImage& img);
double max_value(const PlanarImage& img);
double mean_value(const PlanarImage& img);

/// Affine map of the image range onto [0,1]. A constant image maps to zeros
/// and records (lo, lo+1) so denormalize stays exact.
std::pair<PlanarImage, NormalizationRecord> normalize_to_unit(const PlanarImage& img);
PlanarImage denormalize(const PlanarImage& img, const NormalizationRecord& rec);

/// Circular forward differences: gx(y,x) = img(y, x+1 mod W) - img(y,x),
/// gy(y,x) = img(y+1 mod H, x) - img(y,x). The wrap matches the periodic
/// model of the Fourier-domain solver, keeping its adjoint exact.
GradientField forward_gradients(const PlanarImage& img);

/// Separable Gaussian convolution, kernel truncated at radius ceil(3*sigma),
/// renormalized to sum 1, replicate boundary.
PlanarImage gaussian_blur(const PlanarImage& img, double sigma);

/// Rec.709 luminance of a 3-channel image; a 1-channel image is returned as is.
PlanarImage luminance(const PlanarImage& img);

/// (log10(luminance + 1e-6), luminance).
std::pair<PlanarImage, PlanarImage> to_log_luminance(const PlanarImage& img);

/// Mirror-reflect index q into [0, n) without repeating the edge sample.
int reflect_index(int q, int n);

/// Pad on all four sides by `pad` pixels using mirror reflection.
PlanarImage reflect_pad(const PlanarImage& img, int pad);

/// Remove a border of `pad` pixels from all four sides.
PlanarImage crop_border(const PlanarImage& img, int pad);

PlanarImage clamp01(const PlanarImage& img);

} // namespace epls
