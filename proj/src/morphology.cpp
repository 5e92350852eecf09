#include "edgebench/morphology.hpp"

#include <limits>
#include <stdexcept>

namespace edgebench {

StructuringElement::StructuringElement(int w, int h, std::vector<std::uint8_t> members)
    : width(w), height(h), member(std::move(members)) {
    if (w <= 0 || h <= 0 || w % 2 == 0 || h % 2 == 0)
        throw std::invalid_argument("structuring element dimensions must be odd and positive");
    if (member.size() != std::size_t(w) * h)
        throw std::invalid_argument("structuring element mask does not match size");
    if (!is_member(w / 2, h / 2))
        throw std::invalid_argument("structuring element origin must be a member");
}

StructuringElement StructuringElement::box(int w, int h) {
    return StructuringElement(w, h, std::vector<std::uint8_t>(std::size_t(w) * h, 1));
}

StructuringElement StructuringElement::cross(int w, int h) {
    std::vector<std::uint8_t> m(std::size_t(w) * h, 0);
    const int cx = w / 2;
    const int cy = h / 2;
    for (int i = 0; i < w; ++i) m[std::size_t(cy) * w + i] = 1;
    for (int j = 0; j < h; ++j) m[std::size_t(j) * w + cx] = 1;
    return StructuringElement(w, h, std::move(m));
}

int StructuringElement::member_count() const {
    int n = 0;
    for (std::uint8_t v : member) n += v != 0;
    return n;
}

namespace {

template <typename Fold>
GrayImage fold_se(const GrayImage& img, const StructuringElement& se, double init, Fold fold) {
    const int cx = se.width / 2;
    const int cy = se.height / 2;
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc = init;
            for (int j = 0; j < se.height; ++j)
                for (int i = 0; i < se.width; ++i) {
                    if (!se.is_member(i, j)) continue;
                    acc = fold(acc, img.at_clamped(x - (i - cx), y - (j - cy)));
                }
            out.at(x, y) = acc;
        }
    }
    return out;
}

}  // namespace

GrayImage dilate(const GrayImage& img, const StructuringElement& se) {
    return fold_se(img, se, -std::numeric_limits<double>::infinity(),
                   [](double a, double v) { return a > v ? a : v; });
}

GrayImage erode(const GrayImage& img, const StructuringElement& se) {
    return fold_se(img, se, std::numeric_limits<double>::infinity(),
                   [](double a, double v) { return a < v ? a : v; });
}

GrayImage smooth_morph(const GrayImage& img, const StructuringElement& se) {
    const int cx = se.width / 2;
    const int cy = se.height / 2;
    const double count = se.member_count();
    GrayImage out(img.width, img.height);
    // Offsets ascend exactly as in convolve() so that a full box SE sums in
    // the same order as box_average and reproduces it bit for bit.
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double acc = 0.0;
            for (int v = -cy; v <= cy; ++v)
                for (int u = -cx; u <= cx; ++u) {
                    if (!se.is_member(cx - u, cy - v)) continue;
                    acc += img.at_clamped(x + u, y + v);
                }
            out.at(x, y) = clamp255(acc / count);
        }
    }
    return out;
}

EdgeMap morph_gradient_edges(const GrayImage& img, const StructuringElement& se,
                             double threshold) {
    if (threshold < 0.0)
        throw std::invalid_argument("morphological gradient threshold must be >= 0");
    const GrayImage hi = dilate(img, se);
    const GrayImage lo = erode(img, se);
    EdgeMap out(img.width, img.height);
    for (std::size_t i = 0; i < out.bits.size(); ++i)
        if (hi.pixels[i] - lo.pixels[i] > threshold) out.bits[i] = 1;
    return out;
}

}  // namespace edgebench
