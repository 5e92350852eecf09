#pragma once

#include <vector>

#include "edgebench/image.hpp"

namespace edgebench {

struct PfomResult {
    double score = 0.0;   // in [0,1]
    int k_actual = 0;     // ground-truth edge pixel count
    int k_detected = 0;   // detected edge pixel count
    double n = 1.0 / 9.0; // scaling constant
};

/// Exact squared Euclidean distance from every pixel to the nearest set
/// pixel, row-major. Values are exact integers stored as doubles.
/// Throws std::invalid_argument if the map is empty.
std::vector<double> squared_distance_transform(const EdgeMap& truth);

/// Exhaustive-scan Euclidean distance from (x, y) to the nearest truth
/// pixel. Independent of the distance transform above.
double nearest_edge_distance(const EdgeMap& truth, int x, int y);

/// Pratt Figure of Merit:
///   score = 1/max(k_actual, k_detected) * sum over detected p of
///           1 / (1 + n * l(p)^2)
/// with l(p) the Euclidean distance from p to the nearest truth pixel.
/// An empty detected map scores 0. Throws on dimension mismatch and on an
/// empty truth map (distinct messages).
PfomResult pfom(const EdgeMap& detected, const EdgeMap& truth, double n = 1.0 / 9.0);

}  // namespace edgebench
