#include <doctest.h>

#include <cstdlib>

#include "edgebench/filters.hpp"
#include "edgebench/morphology.hpp"
#include "oracles.hpp"

using namespace edgebench;

TEST_CASE("structuring element construction enforces the invariants") {
    CHECK_THROWS_AS(StructuringElement(2, 3, std::vector<std::uint8_t>(6, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(StructuringElement(3, 3, std::vector<std::uint8_t>(8, 1)),
                    std::invalid_argument);
    // Origin not a member.
    std::vector<std::uint8_t> no_origin{1, 1, 1, 1, 0, 1, 1, 1, 1};
    CHECK_THROWS_AS(StructuringElement(3, 3, no_origin), std::invalid_argument);

    CHECK(StructuringElement::box(3, 3).member_count() == 9);
    CHECK(StructuringElement::box(5, 1).member_count() == 5);
    CHECK(StructuringElement::cross(3, 3).member_count() == 5);
    CHECK(StructuringElement::cross(5, 5).member_count() == 9);
    CHECK(StructuringElement::cross(5, 5).is_member(2, 2));
    CHECK_FALSE(StructuringElement::cross(5, 5).is_member(0, 0));
}

TEST_CASE("morphology keeps constant images") {
    GrayImage img(6, 4, 77.0);
    const auto se = StructuringElement::box(3, 3);
    CHECK(smooth_morph(img, se) == img);
    CHECK(dilate(img, se) == img);
    CHECK(erode(img, se) == img);
}

TEST_CASE("smooth_morph with a full box equals box_average bit for bit") {
    oracle::TestRng rng(51);
    GrayImage img = oracle::random_image(rng, 17, 9);
    CHECK(smooth_morph(img, StructuringElement::box(3, 3)) == box_average(img));
}

TEST_CASE("smooth_morph with a cross equals the member mean") {
    oracle::TestRng rng(52);
    GrayImage img = oracle::random_image(rng, 7, 7);
    const auto se = StructuringElement::cross(3, 3);
    CHECK(smooth_morph(img, se) == oracle::smooth(img, se));
}

TEST_CASE("dilation spreads a bright pixel over the box") {
    GrayImage img(7, 7, 0.0);
    img.at(3, 3) = 255.0;
    GrayImage out = dilate(img, StructuringElement::box(3, 3));
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 7; ++x) {
            const bool inside = std::abs(x - 3) <= 1 && std::abs(y - 3) <= 1;
            CHECK(out.at(x, y) == (inside ? 255.0 : 0.0));
        }
}

TEST_CASE("erosion spreads a dark pixel over the box") {
    GrayImage img(7, 7, 255.0);
    img.at(3, 3) = 0.0;
    GrayImage out = erode(img, StructuringElement::box(3, 3));
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 7; ++x) {
            const bool inside = std::abs(x - 3) <= 1 && std::abs(y - 3) <= 1;
            CHECK(out.at(x, y) == (inside ? 0.0 : 255.0));
        }
}

TEST_CASE("dilate and erode match the brute-force scans") {
    oracle::TestRng rng(53);
    GrayImage img = oracle::random_image(rng, 6, 6);
    for (const auto& se : {StructuringElement::box(3, 3), StructuringElement::cross(3, 3),
                           StructuringElement::box(5, 3)}) {
        CHECK(dilate(img, se) == oracle::dilate(img, se));
        CHECK(erode(img, se) == oracle::erode(img, se));
    }
}

TEST_CASE("erosion is the complement dual of dilation") {
    oracle::TestRng rng(54);
    GrayImage img = oracle::random_image(rng, 10, 10);
    GrayImage neg(10, 10);
    for (std::size_t i = 0; i < img.size(); ++i) neg.pixels[i] = 255.0 - img.pixels[i];
    const auto se = StructuringElement::box(3, 3);
    GrayImage lhs = erode(img, se);
    GrayImage rhs = dilate(neg, se);
    for (std::size_t i = 0; i < img.size(); ++i)
        CHECK(lhs.pixels[i] == doctest::Approx(255.0 - rhs.pixels[i]).epsilon(1e-12));
}

TEST_CASE("erode <= identity <= dilate pointwise") {
    oracle::TestRng rng(55);
    GrayImage img = oracle::random_image(rng, 9, 9);
    for (const auto& se : {StructuringElement::box(3, 3), StructuringElement::cross(5, 5)}) {
        GrayImage lo = erode(img, se);
        GrayImage hi = dilate(img, se);
        for (std::size_t i = 0; i < img.size(); ++i) {
            CHECK(lo.pixels[i] <= img.pixels[i]);
            CHECK(img.pixels[i] <= hi.pixels[i]);
        }
    }
}

TEST_CASE("dilation and erosion are monotone") {
    oracle::TestRng rng(56);
    GrayImage x = oracle::random_image(rng, 8, 8);
    GrayImage y = x;
    for (double& v : y.pixels) v = clamp255(v + 20.0);
    const auto se = StructuringElement::cross(3, 3);
    GrayImage dx = dilate(x, se), dy = dilate(y, se);
    GrayImage ex = erode(x, se), ey = erode(y, se);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(dx.pixels[i] <= dy.pixels[i]);
        CHECK(ex.pixels[i] <= ey.pixels[i]);
    }
}

TEST_CASE("morphological gradient marks the two columns at a step") {
    GrayImage img(8, 5, 0.0);
    for (int y = 0; y < 5; ++y)
        for (int x = 4; x < 8; ++x) img.at(x, y) = 255.0;
    EdgeMap edges = morph_gradient_edges(img, StructuringElement::box(3, 3), 128.0);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 8; ++x)
            CHECK(edges.test(x, y) == (x == 3 || x == 4));
}

TEST_CASE("morphological gradient degenerate thresholds") {
    GrayImage flat(5, 5, 9.0);
    const auto se = StructuringElement::box(3, 3);
    CHECK(morph_gradient_edges(flat, se, 0.0).count() == 0);

    oracle::TestRng rng(57);
    GrayImage img = oracle::random_quantized(rng, 10, 10);
    CHECK(morph_gradient_edges(img, se, 256.0).count() == 0);
    CHECK_THROWS_AS(morph_gradient_edges(img, se, -1.0), std::invalid_argument);
}
