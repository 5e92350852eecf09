#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "edgebench/detectors.hpp"
#include "edgebench/filters.hpp"
#include "edgebench/image.hpp"
#include "edgebench/noise.hpp"
#include "edgebench/plate_synth.hpp"

namespace edgebench {

/// An externally supplied image with its ground-truth edge map.
struct FileEntry {
    std::string id;
    std::string image_path;
    std::string truth_path;
};

/// One benchmark sweep: corrupt -> reconstruct -> enhance -> detect -> score
/// over every (plate, detector, level, seed) combination.
struct BenchConfig {
    // Corpus: synthesized plates, a previously generated directory, or
    // explicit image/truth file pairs. All three can be combined.
    int plates = 0;
    std::vector<PlateStyle> plate_styles{PlateStyle::clean};
    std::uint64_t corpus_seed = 1;
    int plate_width = 240;
    int plate_height = 80;
    std::string corpus_dir;
    std::vector<FileEntry> files;

    std::vector<std::string> detectors;
    NoiseKind noise_kind = NoiseKind::impulse;
    std::vector<double> levels = default_levels();
    std::vector<std::uint64_t> seeds{1};

    // Preprocessing stages, applied in fixed order:
    // box_average -> median -> enhance.
    bool pre_box_average = false;
    bool pre_median = false;
    bool pre_enhance = false;
    int median_window = 3;
    EnhanceConfig enhance;

    CannyConfig canny;
    CopdaConfig copda;
    Threshold gradient_threshold = Threshold::automatic();
    Threshold laplacian_threshold = Threshold::automatic();
    Threshold morph_threshold = Threshold::automatic();

    std::string output_dir = "out";
    bool save_maps = false;
    bool measure_time = false;  // off: wall_time_ms is 0, reports reproducible
    int threads = 1;

    /// 0.50 down to 0.30 in steps of 0.02, plus 0.0.
    static std::vector<double> default_levels();
};

struct ReportRow {
    std::string plate_id;
    std::string detector;
    NoiseKind noise_kind = NoiseKind::impulse;
    double level = 0.0;
    std::uint64_t seed = 0;
    double pfom_score = 0.0;
    int k_actual = 0;
    int k_detected = 0;
    long long wall_time_ms = 0;
};

enum class ReportFormat { csv, markdown };

struct CorpusItem {
    std::string id;
    GrayImage image;
    EdgeMap truth;
};

/// Parse the flat "key = value" config grammar (lists comma-separated,
/// '#' comments). Unknown keys and malformed values throw.
BenchConfig parse_config(const std::string& text);
BenchConfig load_config_file(const std::string& path);

/// Materialize the configured corpus (synthesized plates first, then
/// corpus_dir entries, then file pairs).
std::vector<CorpusItem> resolve_corpus(const BenchConfig& cfg);

/// Render the synthetic corpus to dir: <id>.pgm, <id>_truth.pgm and a
/// manifest.tsv with one "id<TAB>spec-fields" line per plate.
void write_corpus(const BenchConfig& cfg, const std::string& dir);

/// Run one named detector ("sobel", "prewitt", "roberts", "laplacian",
/// "canny", "copda", "morph") on an already preprocessed image.
EdgeMap detect_named(const std::string& name, const GrayImage& img,
                     const BenchConfig& cfg);

/// The preprocessing stage of the pipeline (noise is applied by the runner).
GrayImage preprocess(const GrayImage& img, const BenchConfig& cfg);

using DetectorFn = std::function<EdgeMap(const GrayImage&)>;

/// Execute the sweep. Rows come back sorted by (plate, detector, level,
/// seed) and are bit-identical for identical configs regardless of
/// cfg.threads. extra_detectors adds or overrides detector names.
std::vector<ReportRow> run_benchmark(const BenchConfig& cfg);
std::vector<ReportRow> run_benchmark(const BenchConfig& cfg,
                                     const std::map<std::string, DetectorFn>& extra_detectors);

/// CSV ("plate_id,detector,noise_kind,level,seed,pfom,k_actual,k_detected,
/// wall_time_ms", scores to 4 decimals, levels to 2) or the markdown pivot
/// with mean PFOM per detector for clean and noisy rows. Throws on an empty
/// row list.
std::string write_report(const std::vector<ReportRow>& rows, ReportFormat format);

/// Parse rows back from the CSV produced by write_report.
std::vector<ReportRow> parse_report_csv(const std::string& text);

}  // namespace edgebench
