#include "edgebench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edgebench {

namespace {

// Marker for "no edge pixel in this column". Large enough to lose every
// envelope comparison, small enough that sums with true squared distances
// stay exactly representable.
constexpr double kFar = 1e15;

// Lower envelope of the parabolas q -> (x - q)^2 + f[q] (squared Euclidean
// distance transform, one dimension). All finite f values are exact
// integers, so the output values are exact as well.
void edt_1d(const std::vector<double>& f, std::vector<double>& d, int n,
            std::vector<int>& v, std::vector<double>& z) {
    int k = 0;
    v[0] = 0;
    z[0] = -1e20;
    z[1] = 1e20;
    for (int q = 1; q < n; ++q) {
        double s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
                   (2.0 * q - 2.0 * v[k]);
        while (s <= z[k]) {
            --k;
            s = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
                (2.0 * q - 2.0 * v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = 1e20;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        d[q] = double(q - v[k]) * (q - v[k]) + f[v[k]];
    }
}

}  // namespace

std::vector<double> squared_distance_transform(const EdgeMap& truth) {
    if (truth.count() == 0)
        throw std::invalid_argument("distance transform: empty edge map");
    const int w = truth.width;
    const int h = truth.height;

    // Column pass: exact integer distance to the nearest set pixel in the
    // same column (two linear scans), squared.
    std::vector<double> grid(std::size_t(w) * h, kFar);
    for (int x = 0; x < w; ++x) {
        int run = w + h;  // larger than any in-column distance
        for (int y = 0; y < h; ++y) {
            run = truth.test(x, y) ? 0 : run + 1;
            grid[truth.index(x, y)] = run;
        }
        run = w + h;
        for (int y = h - 1; y >= 0; --y) {
            run = truth.test(x, y) ? 0 : run + 1;
            const std::size_t i = truth.index(x, y);
            if (run < grid[i]) grid[i] = run;
        }
        for (int y = 0; y < h; ++y) {
            const std::size_t i = truth.index(x, y);
            grid[i] = grid[i] < h ? grid[i] * grid[i] : kFar;
        }
    }

    // Row pass: envelope over columns.
    std::vector<double> f(w), d(w);
    std::vector<int> v(w);
    std::vector<double> z(std::size_t(w) + 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) f[x] = grid[truth.index(x, y)];
        edt_1d(f, d, w, v, z);
        for (int x = 0; x < w; ++x) grid[truth.index(x, y)] = d[x];
    }
    return grid;
}

double nearest_edge_distance(const EdgeMap& truth, int x, int y) {
    double best = -1.0;
    for (int ty = 0; ty < truth.height; ++ty)
        for (int tx = 0; tx < truth.width; ++tx) {
            if (!truth.test(tx, ty)) continue;
            const double d2 = double(tx - x) * (tx - x) + double(ty - y) * (ty - y);
            if (best < 0.0 || d2 < best) best = d2;
        }
    if (best < 0.0) throw std::invalid_argument("nearest edge distance: empty edge map");
    return std::sqrt(best);
}

PfomResult pfom(const EdgeMap& detected, const EdgeMap& truth, double n) {
    if (!detected.same_size(truth))
        throw std::invalid_argument("pfom: detected/truth dimension mismatch");
    if (n < 0.0) throw std::invalid_argument("pfom: scaling constant must be >= 0");
    PfomResult r;
    r.n = n;
    r.k_actual = truth.count();
    if (r.k_actual == 0) throw std::invalid_argument("pfom: empty ground truth");
    r.k_detected = detected.count();
    if (r.k_detected == 0) return r;

    const std::vector<double> d2 = squared_distance_transform(truth);
    double sum = 0.0;
    for (std::size_t i = 0; i < detected.bits.size(); ++i)
        if (detected.bits[i]) sum += 1.0 / (1.0 + n * d2[i]);
    r.score = sum / double(std::max(r.k_actual, r.k_detected));
    return r;
}

}  // namespace edgebench
