#include "edgebench/detectors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace edgebench {

namespace {

const Kernel& sobel_gx() {
    static const Kernel k(3, 3, {-1, 0, 1, -2, 0, 2, -1, 0, 1});
    return k;
}
const Kernel& sobel_gy() {
    static const Kernel k(3, 3, {-1, -2, -1, 0, 0, 0, 1, 2, 1});
    return k;
}
const Kernel& prewitt_gx() {
    static const Kernel k(3, 3, {-1, 0, 1, -1, 0, 1, -1, 0, 1});
    return k;
}
const Kernel& prewitt_gy() {
    static const Kernel k(3, 3, {-1, -1, -1, 0, 0, 0, 1, 1, 1});
    return k;
}
const Kernel& laplacian_kernel() {
    static const Kernel k(3, 3, {0, 1, 0, 1, -4, 1, 0, 1, 0});
    return k;
}

double resolve_threshold(const Threshold& t, std::span<const double> responses) {
    if (t.is_auto) return otsu_threshold(responses);
    if (t.value < 0.0) throw std::invalid_argument("explicit threshold must be >= 0");
    return t.value;
}

// Gradient-direction bins for NMS and chain bridging. Unit steps for
// {0, 45, 90, 135} degrees; the angle is taken modulo 180.
struct Step {
    int dx, dy;
};

Step snapped_step(double radians) {
    double deg = radians * (180.0 / 3.141592653589793238462643383279502884);
    while (deg < 0.0) deg += 180.0;
    while (deg >= 180.0) deg -= 180.0;
    if (deg < 22.5 || deg >= 157.5) return {1, 0};
    if (deg < 67.5) return {1, 1};
    if (deg < 112.5) return {0, 1};
    return {-1, 1};
}

}  // namespace

double otsu_threshold(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("otsu: empty grid");
    double mx = values[0];
    bool all_equal = true;
    for (double v : values) {
        if (v != values[0]) all_equal = false;
        if (v > mx) mx = v;
    }
    if (all_equal) return values[0];

    std::array<std::int64_t, 256> count{};
    for (double v : values) {
        int b = int(v * 256.0 / mx);
        if (b > 255) b = 255;
        if (b < 0) b = 0;
        ++count[b];
    }

    const std::int64_t total = std::int64_t(values.size());
    std::int64_t total_moment = 0;
    for (int b = 0; b < 256; ++b) total_moment += std::int64_t(b) * count[b];

    // Inter-class variance for split s (bins <= s against the rest) is
    // (total*m0 - total_moment*w0)^2 / (w0*w1) up to a constant factor.
    // Moments stay in exact int64, so the comparison is reproducible and the
    // exhaustive-scan oracle lands on the same bin.
    std::int64_t w0 = 0, m0 = 0;
    double best = -1.0;
    int best_split = 0;
    for (int s = 0; s < 256; ++s) {
        w0 += count[s];
        m0 += std::int64_t(s) * count[s];
        const std::int64_t w1 = total - w0;
        if (w0 == 0 || w1 == 0) continue;
        const std::int64_t a = total * m0 - total_moment * w0;
        const double score = double(a) * double(a) / (double(w0) * double(w1));
        if (score > best) {
            best = score;
            best_split = s;
        }
    }
    return (best_split + 1) * mx / 256.0;
}

GradientField gradient_field(const GrayImage& img, GradientOperator op) {
    GradientField g;
    g.width = img.width;
    g.height = img.height;
    if (op == GradientOperator::roberts) {
        g.gx.resize(img.size());
        g.gy.resize(img.size());
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x) {
                const std::size_t i = img.index(x, y);
                g.gx[i] = img.at(x, y) - img.at_clamped(x + 1, y + 1);
                g.gy[i] = img.at_clamped(x + 1, y) - img.at_clamped(x, y + 1);
            }
    } else {
        const bool sob = op == GradientOperator::sobel;
        g.gx = convolve(img, sob ? sobel_gx() : prewitt_gx()).pixels;
        g.gy = convolve(img, sob ? sobel_gy() : prewitt_gy()).pixels;
    }
    g.magnitude.resize(img.size());
    g.orientation.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        g.magnitude[i] = std::sqrt(g.gx[i] * g.gx[i] + g.gy[i] * g.gy[i]);
        double o = std::atan2(g.gy[i], g.gx[i]);
        if (o <= -3.141592653589793238462643383279502884) o = -o;
        g.orientation[i] = o;
    }
    return g;
}

EdgeMap gradient_detect(const GrayImage& img, GradientOperator op, Threshold t) {
    const GradientField g = gradient_field(img, op);
    const double th = resolve_threshold(t, g.magnitude);
    EdgeMap out(img.width, img.height);
    for (std::size_t i = 0; i < g.magnitude.size(); ++i)
        if (g.magnitude[i] > th) out.bits[i] = 1;
    return out;
}

EdgeMap laplacian_detect(const GrayImage& img, Threshold t) {
    GrayImage resp = convolve(img, laplacian_kernel());
    for (double& v : resp.pixels) v = std::fabs(v);
    const double th = resolve_threshold(t, resp.pixels);
    EdgeMap out(img.width, img.height);
    for (std::size_t i = 0; i < resp.pixels.size(); ++i)
        if (resp.pixels[i] > th) out.bits[i] = 1;
    return out;
}

GrayImage canny_nms(const GradientField& g) {
    GrayImage out(g.width, g.height);
    auto mag = [&](int x, int y) -> double {
        if (x < 0 || y < 0 || x >= g.width || y >= g.height) return 0.0;
        return g.magnitude[std::size_t(y) * g.width + x];
    };
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            const std::size_t i = std::size_t(y) * g.width + x;
            const double m = g.magnitude[i];
            if (m <= 0.0) continue;
            const Step u = snapped_step(g.orientation[i]);
            // Strict on the trailing side, non-strict on the leading side:
            // a two-pixel plateau straddling a symmetric blur keeps exactly
            // its first pixel along the gradient direction.
            if (m > mag(x - u.dx, y - u.dy) && m >= mag(x + u.dx, y + u.dy))
                out.pixels[i] = m;
        }
    }
    return out;
}

double nonzero_quantile(std::span<const double> values, double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile must be in (0,1)");
    std::vector<double> nz;
    for (double v : values)
        if (v != 0.0) nz.push_back(v);
    if (nz.empty()) return 0.0;
    std::sort(nz.begin(), nz.end());
    const std::size_t idx = std::size_t(q * double(nz.size() - 1));
    return nz[idx];
}

EdgeMap hysteresis(const GrayImage& nms_magnitude, double high, double low) {
    const int w = nms_magnitude.width;
    const int h = nms_magnitude.height;
    EdgeMap out(w, h);
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (nms_magnitude.at(x, y) >= high) {
                out.set(x, y);
                stack.emplace_back(x, y);
            }
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx;
                const int ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                if (out.test(nx, ny)) continue;
                if (nms_magnitude.at(nx, ny) >= low) {
                    out.set(nx, ny);
                    stack.emplace_back(nx, ny);
                }
            }
    }
    return out;
}

EdgeMap canny_detect(const GrayImage& img, const CannyConfig& cfg) {
    if (!(cfg.gauss_sigma > 0.0))
        throw std::invalid_argument("canny gauss_sigma must be > 0");
    if (!(cfg.high_quantile > 0.0 && cfg.high_quantile < 1.0))
        throw std::invalid_argument("canny high_quantile must be in (0,1)");
    if (!(cfg.low_ratio > 0.0 && cfg.low_ratio < 1.0))
        throw std::invalid_argument("canny low_ratio must be in (0,1)");
    const GrayImage smoothed = convolve(img, gaussian_kernel(cfg.gauss_sigma, 5));
    // A flat grid has no edges; without this guard one-ulp accumulation
    // residue from the Sobel pass would survive the (scale-free) quantile
    // threshold and mark spurious pixels.
    bool flat = true;
    for (double v : smoothed.pixels)
        if (v != smoothed.pixels[0]) {
            flat = false;
            break;
        }
    if (flat) return EdgeMap(img.width, img.height);
    const GradientField g = gradient_field(smoothed, GradientOperator::sobel);
    const GrayImage nms = canny_nms(g);
    const double high = nonzero_quantile(nms.pixels, cfg.high_quantile);
    if (high <= 0.0) return EdgeMap(img.width, img.height);
    return hysteresis(nms, high, cfg.low_ratio * high);
}

EdgeMap copda_candidates(const GrayImage& img, const CopdaConfig& cfg) {
    if (cfg.window < 3 || cfg.window % 2 == 0)
        throw std::invalid_argument("copda window must be odd and >= 3");
    if (cfg.contrast_threshold < 0.0)
        throw std::invalid_argument("copda contrast_threshold must be >= 0");
    const int r = cfg.window / 2;
    const auto sign = [](int v) { return v > 0 ? 1.0 : v < 0 ? -1.0 : 0.0; };
    EdgeMap out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double r0 = 0.0, r45 = 0.0, r90 = 0.0, r135 = 0.0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const double v = img.at_clamped(x + dx, y + dy);
                    r0 += sign(dx) * v;
                    r45 += sign(dx + dy) * v;
                    r90 += sign(dy) * v;
                    r135 += sign(dx - dy) * v;
                }
            const double best = std::max(std::max(std::fabs(r0), std::fabs(r45)),
                                         std::max(std::fabs(r90), std::fabs(r135)));
            if (best > cfg.contrast_threshold) out.set(x, y);
        }
    }
    return out;
}

namespace {

struct Components {
    std::vector<int> label;     // -1 where unset
    std::vector<int> size;      // per label
    std::vector<Step> direction;  // per label, dominant axis snapped to 4 bins
};

Components connected_components(const EdgeMap& map) {
    const int w = map.width;
    const int h = map.height;
    Components c;
    c.label.assign(map.bits.size(), -1);
    std::vector<std::pair<int, int>> stack;
    for (int sy = 0; sy < h; ++sy)
        for (int sx = 0; sx < w; ++sx) {
            if (!map.test(sx, sy) || c.label[map.index(sx, sy)] != -1) continue;
            const int id = int(c.size.size());
            c.size.push_back(0);
            std::vector<std::pair<int, int>> members;
            c.label[map.index(sx, sy)] = id;
            stack.emplace_back(sx, sy);
            while (!stack.empty()) {
                auto [x, y] = stack.back();
                stack.pop_back();
                members.emplace_back(x, y);
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                        if (!map.test(nx, ny)) continue;
                        if (c.label[map.index(nx, ny)] != -1) continue;
                        c.label[map.index(nx, ny)] = id;
                        stack.emplace_back(nx, ny);
                    }
            }
            c.size[id] = int(members.size());
            // Dominant direction from the second moments about the centroid.
            double mx = 0.0, my = 0.0;
            for (auto& [x, y] : members) {
                mx += x;
                my += y;
            }
            mx /= double(members.size());
            my /= double(members.size());
            double sxx = 0.0, syy = 0.0, sxy = 0.0;
            for (auto& [x, y] : members) {
                sxx += (x - mx) * (x - mx);
                syy += (y - my) * (y - my);
                sxy += (x - mx) * (y - my);
            }
            c.direction.push_back(snapped_step(0.5 * std::atan2(2.0 * sxy, sxx - syy)));
        }
    return c;
}

}  // namespace

EdgeMap copda_chain_filter(const EdgeMap& candidates, int min_chain) {
    if (min_chain < 1) throw std::invalid_argument("copda min_chain must be >= 1");
    const int w = candidates.width;
    const int h = candidates.height;
    const Components c = connected_components(candidates);

    EdgeMap kept(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int id = c.label[candidates.index(x, y)];
            if (id != -1 && c.size[id] >= min_chain) kept.set(x, y);
        }

    // Endpoints: chain pixels with at most one neighbor inside their own chain.
    auto is_endpoint = [&](int x, int y) {
        if (!kept.test(x, y)) return false;
        const int id = c.label[kept.index(x, y)];
        int neighbors = 0;
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                if (dx == 0 && dy == 0) continue;
                const int nx = x + dx;
                const int ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                if (kept.test(nx, ny) && c.label[kept.index(nx, ny)] == id) ++neighbors;
            }
        return neighbors <= 1;
    };

    EdgeMap out = kept;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!is_endpoint(x, y)) continue;
            const Step u = c.direction[c.label[kept.index(x, y)]];
            for (int s : {-1, 1}) {
                const int qx = x + 2 * s * u.dx;
                const int qy = y + 2 * s * u.dy;
                if (qx < 0 || qy < 0 || qx >= w || qy >= h) continue;
                if (!is_endpoint(qx, qy)) continue;
                out.set(x + s * u.dx, y + s * u.dy);
            }
        }
    return out;
}

EdgeMap copda_detect(const GrayImage& img, const CopdaConfig& cfg) {
    return copda_chain_filter(copda_candidates(img, cfg), cfg.min_chain);
}

}  // namespace edgebench
