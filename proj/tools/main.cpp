#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "edgebench/bench.hpp"
#include "edgebench/metrics.hpp"
#include "edgebench/pnm.hpp"

namespace {

using namespace edgebench;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

Threshold threshold_from(const std::string& s) {
    if (s == "auto") return Threshold::automatic();
    return Threshold::fixed(std::stod(s));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edgebench: edge-detection benchmark harness for synthetic number plates"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "render the configured plate corpus to disk");
    std::string gen_config, gen_out;
    gen->add_option("--config", gen_config, "benchmark config file")->required();
    gen->add_option("--out-dir", gen_out, "target directory (default: config output_dir)");
    gen->callback([&]() {
        BenchConfig cfg = load_config_file(gen_config);
        const std::string dir = gen_out.empty() ? cfg.output_dir : gen_out;
        write_corpus(cfg, dir);
        std::printf("wrote %d plates to %s\n", cfg.plates, dir.c_str());
    });

    // noise
    auto* noise = app.add_subcommand("noise", "corrupt one image");
    std::string noise_kind = "impulse", noise_in, noise_out;
    double noise_level = 0.3;
    std::uint64_t noise_seed = 1;
    noise->add_option("--kind", noise_kind, "impulse or speckle");
    noise->add_option("--level", noise_level, "noise level in [0,1]")->required();
    noise->add_option("--seed", noise_seed, "noise seed");
    noise->add_option("--in", noise_in, "input PNM")->required();
    noise->add_option("--out", noise_out, "output PGM")->required();
    noise->callback([&]() {
        const GrayImage img = as_gray(load_pnm_file(noise_in));
        const NoiseSpec spec{noise_kind_from_string(noise_kind), noise_level, noise_seed};
        save_pnm_file(noise_out, quantize(add_noise(img, spec)));
    });

    // detect
    auto* detect = app.add_subcommand("detect", "run one detector on an image");
    std::string det_name, det_in, det_out, det_threshold = "auto";
    BenchConfig det_cfg;
    detect->add_option("--detector", det_name,
                       "sobel|prewitt|roberts|laplacian|canny|copda|morph")->required();
    detect->add_option("--in", det_in, "input PNM")->required();
    detect->add_option("--out", det_out, "output edge map PGM")->required();
    detect->add_option("--threshold", det_threshold,
                       "gradient/laplacian/morph threshold: auto or a number");
    detect->add_option("--canny-sigma", det_cfg.canny.gauss_sigma, "Gaussian sigma");
    detect->add_option("--canny-high-quantile", det_cfg.canny.high_quantile,
                       "high threshold quantile in (0,1)");
    detect->add_option("--canny-low-ratio", det_cfg.canny.low_ratio,
                       "low threshold as a fraction of high");
    detect->add_option("--copda-window", det_cfg.copda.window, "template window (odd)");
    detect->add_option("--copda-contrast", det_cfg.copda.contrast_threshold,
                       "minimum template response");
    detect->add_option("--copda-min-chain", det_cfg.copda.min_chain,
                       "shortest surviving chain");
    detect->callback([&]() {
        const Threshold t = threshold_from(det_threshold);
        det_cfg.gradient_threshold = t;
        det_cfg.laplacian_threshold = t;
        det_cfg.morph_threshold = t;
        const GrayImage img = as_gray(load_pnm_file(det_in));
        save_pnm_file(det_out, to_image(detect_named(det_name, img, det_cfg)));
    });

    // pfom
    auto* pf = app.add_subcommand("pfom", "score a detected edge map against ground truth");
    std::string pf_detected, pf_truth;
    double pf_n = 1.0 / 9.0;
    pf->add_option("--detected", pf_detected, "detected edge map PNM")->required();
    pf->add_option("--truth", pf_truth, "ground-truth edge map PNM")->required();
    pf->add_option("--n", pf_n, "scaling constant (default 1/9)");
    pf->callback([&]() {
        const EdgeMap detected = to_edge_map(as_gray(load_pnm_file(pf_detected)));
        const EdgeMap truth = to_edge_map(as_gray(load_pnm_file(pf_truth)));
        std::printf("%.4f\n", pfom(detected, truth, pf_n).score);
    });

    // run
    auto* run = app.add_subcommand("run", "execute the configured benchmark sweep");
    std::string run_config, run_out;
    int run_threads = 0;
    bool run_time = false;
    run->add_option("--config", run_config, "benchmark config file")->required();
    run->add_option("--out-dir", run_out, "override config output_dir");
    run->add_option("--threads", run_threads, "override config threads");
    run->add_flag("--time", run_time, "record wall time per row (breaks byte determinism)");
    run->callback([&]() {
        BenchConfig cfg = load_config_file(run_config);
        if (!run_out.empty()) cfg.output_dir = run_out;
        if (run_threads > 0) cfg.threads = run_threads;
        if (run_time) cfg.measure_time = true;
        const std::vector<ReportRow> rows = run_benchmark(cfg);
        std::filesystem::create_directories(cfg.output_dir);
        write_file(cfg.output_dir + "/report.csv", write_report(rows, ReportFormat::csv));
        write_file(cfg.output_dir + "/report.md", write_report(rows, ReportFormat::markdown));
        std::printf("wrote %zu rows to %s/report.csv\n", rows.size(), cfg.output_dir.c_str());
    });

    // report
    auto* rep = app.add_subcommand("report", "reformat a CSV report");
    std::string rep_rows, rep_format = "markdown";
    rep->add_option("--rows", rep_rows, "report.csv produced by run")->required();
    rep->add_option("--format", rep_format, "csv or markdown");
    rep->callback([&]() {
        const std::vector<ReportRow> rows = parse_report_csv(read_file(rep_rows));
        ReportFormat fmt;
        if (rep_format == "csv") fmt = ReportFormat::csv;
        else if (rep_format == "markdown") fmt = ReportFormat::markdown;
        else throw std::invalid_argument("unknown report format: " + rep_format);
        std::fputs(write_report(rows, fmt).c_str(), stdout);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
