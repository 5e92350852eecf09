#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "edgebench/detectors.hpp"
#include "edgebench/morphology.hpp"
#include "oracles.hpp"

using namespace edgebench;

namespace {

GrayImage vertical_step(int w, int h, int first_high) {
    GrayImage img(w, h, 0.0);
    for (int y = 0; y < h; ++y)
        for (int x = first_high; x < w; ++x) img.at(x, y) = 255.0;
    return img;
}

// The documented 4-bin orientation snapping, reconstructed for invariants.
std::pair<int, int> snapped(double radians) {
    double deg = radians * 180.0 / 3.14159265358979323846;
    while (deg < 0.0) deg += 180.0;
    while (deg >= 180.0) deg -= 180.0;
    if (deg < 22.5 || deg >= 157.5) return {1, 0};
    if (deg < 67.5) return {1, 1};
    if (deg < 112.5) return {0, 1};
    return {-1, 1};
}

std::vector<int> component_sizes(const EdgeMap& map) {
    std::vector<int> label(map.bits.size(), -1);
    std::vector<int> sizes;
    std::vector<std::pair<int, int>> stack;
    for (int sy = 0; sy < map.height; ++sy)
        for (int sx = 0; sx < map.width; ++sx) {
            if (!map.test(sx, sy) || label[map.index(sx, sy)] != -1) continue;
            const int id = int(sizes.size());
            sizes.push_back(0);
            label[map.index(sx, sy)] = id;
            stack.emplace_back(sx, sy);
            while (!stack.empty()) {
                auto [x, y] = stack.back();
                stack.pop_back();
                ++sizes[std::size_t(id)];
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx, ny = y + dy;
                        if (nx < 0 || ny < 0 || nx >= map.width || ny >= map.height) continue;
                        if (!map.test(nx, ny) || label[map.index(nx, ny)] != -1) continue;
                        label[map.index(nx, ny)] = id;
                        stack.emplace_back(nx, ny);
                    }
            }
        }
    return sizes;
}

}  // namespace

TEST_CASE("otsu separates a bimodal grid and handles degenerate input") {
    std::vector<double> bimodal;
    for (int i = 0; i < 50; ++i) bimodal.push_back(0.0);
    for (int i = 0; i < 50; ++i) bimodal.push_back(200.0);
    const double t = otsu_threshold(bimodal);
    CHECK(t > 0.0);
    CHECK(t < 200.0);

    CHECK(otsu_threshold(std::vector<double>{7.5, 7.5, 7.5}) == 7.5);
    CHECK_THROWS_AS(otsu_threshold(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("otsu equals the exhaustive 256-candidate scan") {
    oracle::TestRng rng(61);
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<double> values(100);
        if (iter % 2 == 0)
            for (double& v : values) v = double(rng.range(0, 255));
        else
            for (double& v : values) v = rng.unit() * 1020.0;
        CHECK(otsu_threshold(values) == oracle::otsu(values));
    }
}

TEST_CASE("gradient detectors return empty maps on constant images") {
    GrayImage img(9, 7, 55.0);
    for (auto op : {GradientOperator::sobel, GradientOperator::prewitt,
                    GradientOperator::roberts}) {
        CHECK(gradient_detect(img, op, Threshold::fixed(0.0)).count() == 0);
        CHECK(gradient_detect(img, op, Threshold::automatic()).count() == 0);
    }
    CHECK(laplacian_detect(img, Threshold::automatic()).count() == 0);
    CHECK(canny_detect(img).count() == 0);
    CHECK(copda_detect(img).count() == 0);
}

TEST_CASE("sobel on a vertical step gives |gx| = 1020 and zero gy") {
    GrayImage img = vertical_step(8, 6, 4);
    GradientField g = gradient_field(img, GradientOperator::sobel);
    for (int y = 0; y < 6; ++y) {
        for (int x = 0; x < 8; ++x) {
            CHECK(g.gy[img.index(x, y)] == 0.0);
            const double expect = (x == 3 || x == 4) ? 1020.0 : 0.0;
            CHECK(g.gx[img.index(x, y)] == expect);
            CHECK(g.magnitude[img.index(x, y)] == expect);
        }
    }
    EdgeMap edges = gradient_detect(img, GradientOperator::sobel, Threshold::fixed(500.0));
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 8; ++x) CHECK(edges.test(x, y) == (x == 3 || x == 4));
    // Otsu lands between the two modes {0, 1020} and marks the same columns.
    CHECK(gradient_detect(img, GradientOperator::sobel, Threshold::automatic()) == edges);
}

TEST_CASE("gradient responses match the brute-force oracle") {
    oracle::TestRng rng(62);
    GrayImage img = oracle::random_image(rng, 8, 8);
    for (const char* op : {"sobel", "prewitt", "roberts"}) {
        const auto e = oracle::gradient(img, op);
        const GradientField g =
            gradient_field(img, std::string_view(op) == "sobel"
                                    ? GradientOperator::sobel
                                    : std::string_view(op) == "prewitt"
                                          ? GradientOperator::prewitt
                                          : GradientOperator::roberts);
        for (std::size_t i = 0; i < img.size(); ++i) {
            CHECK(g.gx[i] == e.gx.pixels[i]);
            CHECK(g.gy[i] == e.gy.pixels[i]);
            CHECK(g.magnitude[i] == e.magnitude.pixels[i]);
        }
    }
}

TEST_CASE("gradient magnitude is invariant under intensity negation") {
    oracle::TestRng rng(63);
    GrayImage img = oracle::random_quantized(rng, 12, 10);
    GrayImage neg(12, 10);
    for (std::size_t i = 0; i < img.size(); ++i) neg.pixels[i] = 255.0 - img.pixels[i];
    for (auto op : {GradientOperator::sobel, GradientOperator::prewitt,
                    GradientOperator::roberts}) {
        CHECK(gradient_detect(img, op, Threshold::fixed(120.0)) ==
              gradient_detect(neg, op, Threshold::fixed(120.0)));
    }
}

TEST_CASE("negative explicit thresholds are rejected") {
    GrayImage img(4, 4, 1.0);
    CHECK_THROWS_AS(gradient_detect(img, GradientOperator::sobel, Threshold::fixed(-1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(laplacian_detect(img, Threshold::fixed(-0.5)), std::invalid_argument);
}

TEST_CASE("laplacian response vanishes on a linear ramp interior") {
    GrayImage img(10, 6);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 10; ++x) img.at(x, y) = double(x);
    EdgeMap edges = laplacian_detect(img, Threshold::fixed(1e-9));
    for (int y = 1; y < 5; ++y)
        for (int x = 1; x < 9; ++x) CHECK_FALSE(edges.test(x, y));
}

TEST_CASE("laplacian of an isolated bright pixel") {
    // Center response -4*255, the four neighbors +255.
    GrayImage img(5, 5, 0.0);
    img.at(2, 2) = 255.0;

    EdgeMap center_only = laplacian_detect(img, Threshold::fixed(500.0));
    CHECK(center_only.count() == 1);
    CHECK(center_only.test(2, 2));

    EdgeMap plus = laplacian_detect(img, Threshold::fixed(100.0));
    CHECK(plus.count() == 5);
    const std::vector<std::pair<int, int>> expected{{2, 2}, {1, 2}, {3, 2}, {2, 1}, {2, 3}};
    for (auto [x, y] : expected) CHECK(plus.test(x, y));

    CHECK(laplacian_detect(img, Threshold::fixed(1020.0)).count() == 0);
}

TEST_CASE("canny thins a clean step to a single column") {
    GrayImage img = vertical_step(16, 16, 8);
    EdgeMap edges = canny_detect(img);
    int column = -1;
    for (int y = 0; y < 16; ++y) {
        int marks = 0, where = -1;
        for (int x = 0; x < 16; ++x)
            if (edges.test(x, y)) {
                ++marks;
                where = x;
            }
        CHECK(marks == 1);
        if (column == -1) column = where;
        CHECK(where == column);
    }
    CHECK((column == 7 || column == 8));
}

TEST_CASE("canny NMS never keeps a pixel dominated on both sides") {
    oracle::TestRng rng(64);
    GrayImage img = oracle::random_quantized(rng, 24, 24);
    GrayImage smoothed = convolve(img, gaussian_kernel(1.4, 5));
    GradientField g = gradient_field(smoothed, GradientOperator::sobel);
    GrayImage nms = canny_nms(g);
    auto mag = [&](int x, int y) {
        if (x < 0 || y < 0 || x >= g.width || y >= g.height) return 0.0;
        return g.magnitude[std::size_t(y) * g.width + x];
    };
    for (int y = 0; y < 24; ++y)
        for (int x = 0; x < 24; ++x) {
            if (nms.at(x, y) <= 0.0) continue;
            auto [dx, dy] = snapped(g.orientation[std::size_t(y) * 24 + x]);
            const double m = mag(x, y);
            CHECK_FALSE((mag(x - dx, y - dy) > m && mag(x + dx, y + dy) > m));
        }
}

TEST_CASE("nonzero quantile picks from the sorted nonzero entries") {
    std::vector<double> v{0.0, 0.0, 5.0, 1.0, 3.0};
    CHECK(nonzero_quantile(v, 0.25) == 1.0);
    CHECK(nonzero_quantile(v, 0.5) == 3.0);
    CHECK(nonzero_quantile(v, 0.9) == 3.0);
    CHECK(nonzero_quantile(std::vector<double>{0.0, 0.0}, 0.5) == 0.0);
    CHECK_THROWS_AS(nonzero_quantile(v, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(nonzero_quantile(v, 1.0), std::invalid_argument);
}

TEST_CASE("hysteresis keeps weak pixels only when chained to strong ones") {
    GrayImage mag(12, 12, 0.0);
    mag.at(2, 2) = 10.0;                             // strong seed
    for (int i = 3; i <= 6; ++i) mag.at(i, i) = 5.0; // weak diagonal touching it
    mag.at(9, 2) = 5.0;                              // isolated weak pixel
    EdgeMap out = hysteresis(mag, 8.0, 4.0);
    CHECK(out.test(2, 2));
    for (int i = 3; i <= 6; ++i) CHECK(out.test(i, i));
    CHECK_FALSE(out.test(9, 2));
    CHECK(out.count() == 5);
}

TEST_CASE("canny rejects out-of-range configuration") {
    GrayImage img(8, 8, 0.0);
    CHECK_THROWS_AS(canny_detect(img, {0.0, 0.9, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(canny_detect(img, {1.4, 1.0, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(canny_detect(img, {1.4, 0.9, 0.0}), std::invalid_argument);
}

TEST_CASE("copda marks a clean step as one full-height chain") {
    GrayImage img = vertical_step(12, 10, 6);
    EdgeMap edges = copda_detect(img);
    for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 12; ++x) CHECK(edges.test(x, y) == (x == 5 || x == 6));
    CHECK(component_sizes(edges) == std::vector<int>{20});
}

TEST_CASE("copda chain filter drops short chains") {
    EdgeMap map(9, 9);
    map.set(1, 1);                                  // isolated candidate
    map.set(4, 4); map.set(5, 4);                   // pair, still too short
    map.set(1, 6); map.set(2, 7); map.set(3, 7);    // chain of three
    EdgeMap out = copda_chain_filter(map, 3);
    CHECK_FALSE(out.test(1, 1));
    CHECK_FALSE(out.test(4, 4));
    CHECK_FALSE(out.test(5, 4));
    CHECK(out.test(1, 6));
    CHECK(out.test(2, 7));
    CHECK(out.test(3, 7));
    CHECK(out.count() == 3);
}

TEST_CASE("copda bridges endpoints two steps apart along the chain direction") {
    EdgeMap map(12, 12);
    for (int x = 0; x <= 2; ++x) map.set(x, 5);
    for (int x = 4; x <= 6; ++x) map.set(x, 5);
    EdgeMap out = copda_chain_filter(map, 3);
    for (int x = 0; x <= 6; ++x) CHECK(out.test(x, 5));
    CHECK(out.count() == 7);
}

TEST_CASE("copda output has no component shorter than min_chain") {
    oracle::TestRng rng(65);
    GrayImage img = oracle::random_quantized(rng, 40, 40);
    CopdaConfig cfg;
    EdgeMap edges = copda_detect(img, cfg);
    for (int size : component_sizes(edges)) CHECK(size >= cfg.min_chain);
}

TEST_CASE("copda validates its configuration") {
    GrayImage img(6, 6, 0.0);
    CHECK_THROWS_AS(copda_detect(img, {4, 100.0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(copda_detect(img, {1, 100.0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(copda_detect(img, {3, -1.0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(copda_detect(img, {3, 100.0, 0}), std::invalid_argument);
}

TEST_CASE("detectors are translation equivariant away from borders") {
    auto stamp = [](int ox) {
        GrayImage img(64, 64, 200.0);
        for (int y = 24; y < 34; ++y)
            for (int x = ox; x < ox + 14; ++x) img.at(x, y) = 30.0;
        return img;
    };
    GrayImage a = stamp(20);
    GrayImage b = stamp(21);

    const auto se = StructuringElement::box(3, 3);
    std::vector<std::pair<EdgeMap, EdgeMap>> outputs;
    for (auto op : {GradientOperator::sobel, GradientOperator::prewitt,
                    GradientOperator::roberts})
        outputs.emplace_back(gradient_detect(a, op, Threshold::fixed(150.0)),
                             gradient_detect(b, op, Threshold::fixed(150.0)));
    outputs.emplace_back(laplacian_detect(a, Threshold::fixed(100.0)),
                         laplacian_detect(b, Threshold::fixed(100.0)));
    outputs.emplace_back(canny_detect(a), canny_detect(b));
    outputs.emplace_back(copda_detect(a), copda_detect(b));
    outputs.emplace_back(morph_gradient_edges(a, se, 128.0),
                         morph_gradient_edges(b, se, 128.0));

    for (const auto& [ma, mb] : outputs)
        for (int y = 1; y < 63; ++y)
            for (int x = 1; x < 62; ++x) CHECK(mb.test(x + 1, y) == ma.test(x, y));
}
