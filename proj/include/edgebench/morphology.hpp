#pragma once

#include <cstdint>
#include <vector>

#include "edgebench/image.hpp"

namespace edgebench {

/// Flat structuring element: odd dimensions, membership mask, origin at the
/// center. The origin must be a member.
struct StructuringElement {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> member;

    StructuringElement(int w, int h, std::vector<std::uint8_t> members);
    bool is_member(int i, int j) const {
        return member[std::size_t(j) * width + i] != 0;
    }
    int member_count() const;

    static StructuringElement box(int w, int h);
    static StructuringElement cross(int w, int h);
};

/// Windowed mean over SE members, normalized by the member count. Replicate
/// padding, clamped to [0,255].
GrayImage smooth_morph(const GrayImage& img, const StructuringElement& se);

/// out(x,y) = max over members (i,j) of img(x-i, y-j), replicate padding.
GrayImage dilate(const GrayImage& img, const StructuringElement& se);

/// out(x,y) = min over members (i,j) of img(x-i, y-j), replicate padding.
GrayImage erode(const GrayImage& img, const StructuringElement& se);

/// Morphological gradient thresholding: edge where dilate - erode > threshold.
/// Throws std::invalid_argument for a negative threshold.
EdgeMap morph_gradient_edges(const GrayImage& img, const StructuringElement& se,
                             double threshold);

}  // namespace edgebench
