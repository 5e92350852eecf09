#include "edgebench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "edgebench/metrics.hpp"
#include "edgebench/morphology.hpp"
#include "edgebench/pnm.hpp"

namespace edgebench {

std::vector<double> BenchConfig::default_levels() {
    std::vector<double> levels;
    for (int pct = 50; pct >= 30; pct -= 2) levels.push_back(pct / 100.0);
    levels.push_back(0.0);
    return levels;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t idx = 0;
        const double d = std::stod(v, &idx);
        if (trim(v.substr(idx)).empty()) return d;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: bad number for " + key + ": '" + v + "'");
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t idx = 0;
        const long long n = std::stoll(v, &idx);
        if (trim(v.substr(idx)).empty()) return n;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: bad integer for " + key + ": '" + v + "'");
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t idx = 0;
        const unsigned long long n = std::stoull(v, &idx);
        if (trim(v.substr(idx)).empty()) return n;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("config: bad seed for " + key + ": '" + v + "'");
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw std::invalid_argument("config: bad flag for " + key + " (use true/false)");
}

Threshold parse_threshold(const std::string& key, const std::string& v) {
    if (v == "auto") return Threshold::automatic();
    return Threshold::fixed(parse_double(key, v));
}

const char* kCsvHeader =
    "plate_id,detector,noise_kind,level,seed,pfom,k_actual,k_detected,wall_time_ms";

void validate(const BenchConfig& cfg, bool allow_empty_detectors) {
    if (cfg.plates < 0) throw std::invalid_argument("config: plates must be >= 0");
    if (cfg.plates > 0 && cfg.plate_styles.empty())
        throw std::invalid_argument("config: plate_styles must be nonempty");
    if (!allow_empty_detectors && cfg.detectors.empty())
        throw std::invalid_argument("config: detectors must be nonempty");
    if (cfg.levels.empty()) throw std::invalid_argument("config: levels must be nonempty");
    for (double l : cfg.levels)
        if (!(l >= 0.0 && l <= 1.0))
            throw std::invalid_argument("config: levels must lie in [0,1]");
    if (cfg.seeds.empty()) throw std::invalid_argument("config: seeds must be nonempty");
    if (cfg.threads < 1) throw std::invalid_argument("config: threads must be >= 1");
}

}  // namespace

BenchConfig parse_config(const std::string& text) {
    BenchConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value': '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config: empty key or value: '" + line + "'");

        if (key == "plates") {
            cfg.plates = int(parse_int(key, value));
        } else if (key == "plate_styles") {
            cfg.plate_styles.clear();
            for (const std::string& s : split(value, ','))
                cfg.plate_styles.push_back(plate_style_from_string(s));
        } else if (key == "corpus_seed") {
            cfg.corpus_seed = parse_u64(key, value);
        } else if (key == "plate_width") {
            cfg.plate_width = int(parse_int(key, value));
        } else if (key == "plate_height") {
            cfg.plate_height = int(parse_int(key, value));
        } else if (key == "corpus_dir") {
            cfg.corpus_dir = value;
        } else if (key == "files") {
            for (const std::string& s : split(value, ',')) {
                const std::vector<std::string> f = split(s, ':');
                if (f.size() != 3)
                    throw std::invalid_argument(
                        "config: files entries are id:image:truth, got '" + s + "'");
                cfg.files.push_back({f[0], f[1], f[2]});
            }
        } else if (key == "detectors") {
            cfg.detectors = split(value, ',');
        } else if (key == "noise_kind") {
            cfg.noise_kind = noise_kind_from_string(value);
        } else if (key == "levels") {
            cfg.levels.clear();
            for (const std::string& s : split(value, ','))
                cfg.levels.push_back(parse_double(key, s));
        } else if (key == "seeds") {
            cfg.seeds.clear();
            for (const std::string& s : split(value, ','))
                cfg.seeds.push_back(parse_u64(key, s));
        } else if (key == "preprocess") {
            cfg.pre_box_average = cfg.pre_median = cfg.pre_enhance = false;
            for (const std::string& s : split(value, ',')) {
                if (s == "box_average") cfg.pre_box_average = true;
                else if (s == "median") cfg.pre_median = true;
                else if (s == "enhance") cfg.pre_enhance = true;
                else if (s == "none") continue;
                else throw std::invalid_argument("config: unknown preprocess stage '" + s + "'");
            }
        } else if (key == "median_window") {
            cfg.median_window = int(parse_int(key, value));
        } else if (key == "enhance_m") {
            cfg.enhance.m = parse_double(key, value);
        } else if (key == "enhance_sigma") {
            cfg.enhance.sigma = parse_double(key, value);
        } else if (key == "canny_sigma") {
            cfg.canny.gauss_sigma = parse_double(key, value);
        } else if (key == "canny_high_quantile") {
            cfg.canny.high_quantile = parse_double(key, value);
        } else if (key == "canny_low_ratio") {
            cfg.canny.low_ratio = parse_double(key, value);
        } else if (key == "copda_window") {
            cfg.copda.window = int(parse_int(key, value));
        } else if (key == "copda_contrast") {
            cfg.copda.contrast_threshold = parse_double(key, value);
        } else if (key == "copda_min_chain") {
            cfg.copda.min_chain = int(parse_int(key, value));
        } else if (key == "gradient_threshold") {
            cfg.gradient_threshold = parse_threshold(key, value);
        } else if (key == "laplacian_threshold") {
            cfg.laplacian_threshold = parse_threshold(key, value);
        } else if (key == "morph_threshold") {
            cfg.morph_threshold = parse_threshold(key, value);
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else if (key == "save_maps") {
            cfg.save_maps = parse_bool(key, value);
        } else if (key == "measure_time") {
            cfg.measure_time = parse_bool(key, value);
        } else if (key == "threads") {
            cfg.threads = int(parse_int(key, value));
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

BenchConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

std::string plate_id(int index, PlateStyle style) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "plate%03d_%s", index, to_string(style));
    return buf;
}

PlateSpec spec_for(const BenchConfig& cfg, int index) {
    PlateSpec spec;
    spec.width = cfg.plate_width;
    spec.height = cfg.plate_height;
    spec.seed = cfg.corpus_seed + std::uint64_t(index);
    spec.style = cfg.plate_styles[std::size_t(index) % cfg.plate_styles.size()];
    spec.text = random_plate_text(spec.seed);
    return spec;
}

}  // namespace

std::vector<CorpusItem> resolve_corpus(const BenchConfig& cfg) {
    std::vector<CorpusItem> items;
    for (int i = 0; i < cfg.plates; ++i) {
        const PlateSpec spec = spec_for(cfg, i);
        RenderedPlate p = render_plate(spec);
        items.push_back({plate_id(i, spec.style), std::move(p.image), std::move(p.truth)});
    }
    if (!cfg.corpus_dir.empty()) {
        const std::string manifest = cfg.corpus_dir + "/manifest.tsv";
        std::ifstream in(manifest, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open corpus manifest: " + manifest);
        std::string line;
        while (std::getline(in, line)) {
            if (trim(line).empty()) continue;
            const std::string id = trim(line.substr(0, line.find('\t')));
            const GrayImage img =
                as_gray(load_pnm_file(cfg.corpus_dir + "/" + id + ".pgm"));
            const EdgeMap truth = to_edge_map(
                as_gray(load_pnm_file(cfg.corpus_dir + "/" + id + "_truth.pgm")));
            if (img.width != truth.width || img.height != truth.height)
                throw std::runtime_error("corpus entry " + id +
                                         ": image/truth dimension mismatch");
            items.push_back({id, img, truth});
        }
    }
    for (const FileEntry& fe : cfg.files) {
        const GrayImage img = as_gray(load_pnm_file(fe.image_path));
        const EdgeMap truth = to_edge_map(as_gray(load_pnm_file(fe.truth_path)));
        if (img.width != truth.width || img.height != truth.height)
            throw std::runtime_error("file entry " + fe.id +
                                     ": image/truth dimension mismatch");
        items.push_back({fe.id, img, truth});
    }
    if (items.empty()) throw std::invalid_argument("config resolves to an empty corpus");
    return items;
}

void write_corpus(const BenchConfig& cfg, const std::string& dir) {
    if (cfg.plates <= 0)
        throw std::invalid_argument("write_corpus: config synthesizes no plates");
    std::filesystem::create_directories(dir);
    std::ofstream manifest(dir + "/manifest.tsv", std::ios::binary);
    if (!manifest) throw std::runtime_error("cannot write corpus manifest in " + dir);
    for (int i = 0; i < cfg.plates; ++i) {
        const PlateSpec spec = spec_for(cfg, i);
        const RenderedPlate p = render_plate(spec);
        const std::string id = plate_id(i, spec.style);
        save_pnm_file(dir + "/" + id + ".pgm", quantize(p.image));
        save_pnm_file(dir + "/" + id + "_truth.pgm", to_image(p.truth));
        char fields[256];
        std::snprintf(fields, sizeof fields,
                      "width=%d;height=%d;text=%s;style=%s;seed=%llu;"
                      "foreground=%.6g;background=%.6g",
                      spec.width, spec.height, spec.text.c_str(), to_string(spec.style),
                      (unsigned long long)spec.seed, spec.foreground, spec.background);
        manifest << id << '\t' << fields << '\n';
    }
}

EdgeMap detect_named(const std::string& name, const GrayImage& img,
                     const BenchConfig& cfg) {
    if (name == "sobel") return gradient_detect(img, GradientOperator::sobel, cfg.gradient_threshold);
    if (name == "prewitt") return gradient_detect(img, GradientOperator::prewitt, cfg.gradient_threshold);
    if (name == "roberts") return gradient_detect(img, GradientOperator::roberts, cfg.gradient_threshold);
    if (name == "laplacian") return laplacian_detect(img, cfg.laplacian_threshold);
    if (name == "canny") return canny_detect(img, cfg.canny);
    if (name == "copda") return copda_detect(img, cfg.copda);
    if (name == "morph") {
        static const StructuringElement se = StructuringElement::box(3, 3);
        double t = cfg.morph_threshold.value;
        if (cfg.morph_threshold.is_auto) {
            const GrayImage hi = dilate(img, se);
            const GrayImage lo = erode(img, se);
            std::vector<double> grad(img.size());
            for (std::size_t i = 0; i < grad.size(); ++i)
                grad[i] = hi.pixels[i] - lo.pixels[i];
            t = otsu_threshold(grad);
        }
        return morph_gradient_edges(img, se, t);
    }
    throw std::invalid_argument("unknown detector: " + name);
}

GrayImage preprocess(const GrayImage& img, const BenchConfig& cfg) {
    GrayImage out = img;
    if (cfg.pre_box_average) out = box_average(out);
    if (cfg.pre_median) out = median_filter(out, cfg.median_window);
    if (cfg.pre_enhance) out = enhance_power(out, cfg.enhance);
    return out;
}

std::vector<ReportRow> run_benchmark(const BenchConfig& cfg) {
    return run_benchmark(cfg, {});
}

std::vector<ReportRow> run_benchmark(const BenchConfig& cfg,
                                     const std::map<std::string, DetectorFn>& extra_detectors) {
    validate(cfg, !extra_detectors.empty());
    const std::vector<CorpusItem> corpus = resolve_corpus(cfg);

    std::vector<std::string> names;
    for (const std::string& n : cfg.detectors)
        if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    for (const auto& [n, fn] : extra_detectors)
        if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    if (names.empty()) throw std::invalid_argument("no detectors configured");

    struct Task {
        std::size_t plate;
        double level;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (std::size_t p = 0; p < corpus.size(); ++p)
        for (double level : cfg.levels)
            for (std::uint64_t seed : cfg.seeds) tasks.push_back({p, level, seed});

    if (cfg.save_maps) std::filesystem::create_directories(cfg.output_dir);

    // One slot per (task, detector): workers write disjoint slots, so the
    // result is independent of scheduling.
    std::vector<ReportRow> rows(tasks.size() * names.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&]() {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            try {
                const Task& task = tasks[t];
                const CorpusItem& item = corpus[task.plate];
                GrayImage img = item.image;
                if (task.level > 0.0)
                    img = add_noise(img, {cfg.noise_kind, task.level, task.seed});
                img = preprocess(img, cfg);
                for (std::size_t d = 0; d < names.size(); ++d) {
                    const auto start = std::chrono::steady_clock::now();
                    EdgeMap detected;
                    const auto it = extra_detectors.find(names[d]);
                    if (it != extra_detectors.end()) detected = it->second(img);
                    else detected = detect_named(names[d], img, cfg);
                    long long ms = 0;
                    if (cfg.measure_time)
                        ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
                    const PfomResult pr = pfom(detected, item.truth);
                    rows[t * names.size() + d] = {item.id,    names[d],      cfg.noise_kind,
                                                  task.level, task.seed,     pr.score,
                                                  pr.k_actual, pr.k_detected, ms};
                    if (cfg.save_maps) {
                        char fname[256];
                        std::snprintf(fname, sizeof fname, "%s_%s_%.2f_%llu.pgm",
                                      item.id.c_str(), names[d].c_str(), task.level,
                                      (unsigned long long)task.seed);
                        save_pnm_file(cfg.output_dir + "/" + fname, to_image(detected));
                    }
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };

    const int nthreads = std::min<std::size_t>(std::size_t(cfg.threads), tasks.size());
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return std::tie(a.plate_id, a.detector, a.level, a.seed) <
               std::tie(b.plate_id, b.detector, b.level, b.seed);
    });
    return rows;
}

std::string write_report(const std::vector<ReportRow>& rows, ReportFormat format) {
    if (rows.empty()) throw std::invalid_argument("report: no rows");
    std::string out;
    char buf[512];
    if (format == ReportFormat::csv) {
        out = kCsvHeader;
        out += '\n';
        for (const ReportRow& r : rows) {
            std::snprintf(buf, sizeof buf, "%s,%s,%s,%.2f,%llu,%.4f,%d,%d,%lld\n",
                          r.plate_id.c_str(), r.detector.c_str(), to_string(r.noise_kind),
                          r.level, (unsigned long long)r.seed, r.pfom_score, r.k_actual,
                          r.k_detected, r.wall_time_ms);
            out += buf;
        }
        return out;
    }

    // Markdown pivot: per detector, mean PFOM of noiseless rows against mean
    // PFOM of noisy rows.
    std::map<std::string, std::pair<std::pair<double, int>, std::pair<double, int>>> pivot;
    for (const ReportRow& r : rows) {
        auto& cell = r.level == 0.0 ? pivot[r.detector].first : pivot[r.detector].second;
        cell.first += r.pfom_score;
        cell.second += 1;
    }
    out = "| Detector | Image without noise | Image with noise (30%) |\n";
    out += "| --- | --- | --- |\n";
    for (const auto& [name, cells] : pivot) {
        const auto fmt = [&](const std::pair<double, int>& cell) -> std::string {
            if (cell.second == 0) return "-";
            std::snprintf(buf, sizeof buf, "%.4f", cell.first / cell.second);
            return buf;
        };
        out += "| " + name + " | " + fmt(cells.first) + " | " + fmt(cells.second) + " |\n";
    }
    return out;
}

std::vector<ReportRow> parse_report_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || trim(line) != kCsvHeader)
        throw std::invalid_argument("report csv: bad header");
    std::vector<ReportRow> rows;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 9) throw std::invalid_argument("report csv: bad row: '" + line + "'");
        ReportRow r;
        r.plate_id = f[0];
        r.detector = f[1];
        r.noise_kind = noise_kind_from_string(f[2]);
        r.level = parse_double("level", f[3]);
        r.seed = parse_u64("seed", f[4]);
        r.pfom_score = parse_double("pfom", f[5]);
        r.k_actual = int(parse_int("k_actual", f[6]));
        r.k_detected = int(parse_int("k_detected", f[7]));
        r.wall_time_ms = parse_int("wall_time_ms", f[8]);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace edgebench
