// statedge: batch edge detection and evaluation CLI.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "statedge/imgio.hpp"
#include "statedge/metrics.hpp"
#include "statedge/pipeline.hpp"
#include "statedge/stats.hpp"
#include "statedge/threshold.hpp"

namespace fs = std::filesystem;
using namespace statedge;

namespace {

struct CliOptions {
    PipelineConfig cfg;
    std::string window_mode = "intent";
    std::string merge_rule = "any_retain";
    bool no_attention = false;
    int match_tol = 2;
};

void add_pipeline_flags(CLI::App* app, CliOptions& opt) {
    app->add_option("--k", opt.cfg.k, "Displacement threshold for contingency tables");
    app->add_option("--alpha", opt.cfg.alpha, "Significance level");
    app->add_option("--wmin", opt.cfg.wmin, "Minimum window size");
    app->add_option("--wmax", opt.cfg.wmax, "Maximum window size");
    app->add_option("--overlap", opt.cfg.overlap, "Window overlap rate in [0,1)");
    app->add_option("--window-decay", opt.cfg.window_decay, "Window-size decay rate");
    app->add_option("--window-mode", opt.window_mode, "Window sizing mode")
        ->check(CLI::IsMember({"intent", "literal"}));
    app->add_option("--gradient-threshold", opt.cfg.gradient_threshold,
                    "High-complexity gradient threshold");
    app->add_option("--dual-ratio", opt.cfg.dual_ratio, "Low/high threshold ratio");
    app->add_option("--median-size", opt.cfg.filter_size, "Median filter size (odd)");
    app->add_option("--nmin", opt.cfg.n_min, "Minimum candidate count per window");
    app->add_option("--merge-rule", opt.merge_rule, "Overlap merge rule")
        ->check(CLI::IsMember({"any_retain", "majority"}));
    app->add_option("--seed", opt.cfg.seed, "Random seed");
    app->add_option("--threads", opt.cfg.threads, "Worker threads (0 = hardware)");
    app->add_option("--match-tol", opt.match_tol, "F-measure matching tolerance (pixels)");
    app->add_flag("--no-attention", opt.no_attention, "Disable channel attention (uniform weights)");
    app->set_config("--config")->configurable(false);
}

void finalize_options(CliOptions& opt) {
    opt.cfg.window_mode = opt.window_mode == "literal" ? WindowMode::Literal
                                                       : WindowMode::Intent;
    opt.cfg.merge_rule = opt.merge_rule == "majority" ? MergeRule::Majority
                                                      : MergeRule::AnyRetain;
    opt.cfg.attention_enabled = !opt.no_attention;
    if (opt.cfg.threads == 0) {
        if (const char* env = std::getenv("STATEDGE_THREADS")) {
            opt.cfg.threads = std::atoi(env);
        }
    }
}

bool is_image_file(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == ".png" || ext == ".pgm" || ext == ".ppm";
}

std::vector<fs::path> list_images(const fs::path& input) {
    std::vector<fs::path> files;
    if (fs::is_directory(input)) {
        for (const auto& entry : fs::directory_iterator(input)) {
            if (entry.is_regular_file() && is_image_file(entry.path())) {
                files.push_back(entry.path());
            }
        }
        std::sort(files.begin(), files.end());
    } else {
        files.push_back(input);
    }
    return files;
}

// Ground truth for a stem: a plain file <stem>.{png,pgm,ppm}, or a
// directory <stem>/ of annotator maps fused by pixel-wise majority vote.
std::optional<EdgeMap> load_ground_truth(const fs::path& gt_dir, const std::string& stem) {
    for (const char* ext : {".png", ".pgm", ".ppm"}) {
        const fs::path p = gt_dir / (stem + ext);
        if (fs::is_regular_file(p)) return read_edge_map(p.string());
    }
    const fs::path sub = gt_dir / stem;
    if (fs::is_directory(sub)) {
        std::vector<EdgeMap> maps;
        for (const fs::path& p : list_images(sub)) {
            maps.push_back(read_edge_map(p.string()));
        }
        if (maps.empty()) return std::nullopt;
        EdgeMap fused(maps[0].width(), maps[0].height());
        for (int y = 0; y < fused.height(); ++y) {
            for (int x = 0; x < fused.width(); ++x) {
                size_t votes = 0;
                for (const EdgeMap& m : maps) votes += m.get(x, y);
                fused.set(x, y, 2 * votes > maps.size());
            }
        }
        return fused;
    }
    return std::nullopt;
}

std::string format_number(double v) {
    if (std::isinf(v)) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_csv_row(std::ostream& os, const std::string& path, const MetricsReport& r,
                   double runtime_ms) {
    os << path << ',' << format_number(r.mse) << ',' << format_number(r.mse_scaled) << ','
       << format_number(r.psnr) << ',' << format_number(r.precision) << ','
       << format_number(r.recall) << ',' << format_number(r.f_measure) << ','
       << format_number(runtime_ms) << '\n';
}

constexpr const char* kCsvHeader =
    "path,mse_raw,mse_scaled,psnr,precision,recall,f,runtime_ms";

struct CorpusResult {
    double mean_f = 0.0;
    double mean_mse = 0.0;
    double mean_psnr = 0.0;  // infinity if every image matched exactly
    double total_runtime_ms = 0.0;
    int images = 0;
};

template <typename Detector>
CorpusResult evaluate_corpus(const std::vector<fs::path>& inputs, const fs::path& gt_dir,
                             Detector&& detector, int match_tol, std::ostream& csv,
                             std::ostream& log) {
    CorpusResult total;
    double psnr_sum = 0.0;
    bool psnr_inf = false;
    for (const fs::path& path : inputs) {
        const std::string stem = path.stem().string();
        std::optional<EdgeMap> gt = load_ground_truth(gt_dir, stem);
        if (!gt) {
            log << "skip (no ground truth): " << path.string() << "\n";
            continue;
        }
        const RasterImage img = read_image(path.string());
        if (gt->width() != img.width() || gt->height() != img.height()) {
            log << "skip (ground truth size mismatch): " << path.string() << "\n";
            continue;
        }
        const auto t0 = std::chrono::steady_clock::now();
        const EdgeMap pred = detector(img);
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        const MetricsReport r = evaluate_edge_map(pred, *gt, match_tol);
        write_csv_row(csv, path.string(), r, ms);
        total.mean_f += r.f_measure;
        total.mean_mse += r.mse;
        if (std::isinf(r.psnr)) psnr_inf = true; else psnr_sum += r.psnr;
        total.total_runtime_ms += ms;
        ++total.images;
    }
    if (total.images > 0) {
        total.mean_f /= total.images;
        total.mean_mse /= total.images;
        total.mean_psnr = psnr_inf ? std::numeric_limits<double>::infinity()
                                   : psnr_sum / total.images;
    }
    return total;
}

int cmd_detect(const std::string& input, const std::string& output_dir, const CliOptions& opt) {
    const std::vector<fs::path> files = list_images(input);
    if (files.empty()) {
        std::cerr << "no input images in " << input << "\n";
        return 1;
    }
    fs::create_directories(output_dir);
    int failures = 0;
    for (const fs::path& path : files) {
        try {
            const RasterImage img = read_image(path.string());
            const auto t0 = std::chrono::steady_clock::now();
            const EdgeMap edges = detect(img, opt.cfg);
            const auto t1 = std::chrono::steady_clock::now();
            const fs::path out = fs::path(output_dir) / (path.stem().string() + ".edges.png");
            write_edge_map(out.string(), edges);
            std::cout << path.string() << " -> " << out.string() << "  ("
                      << format_number(std::chrono::duration<double, std::milli>(t1 - t0).count())
                      << " ms)\n";
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            ++failures;
        }
    }
    return failures > 0 ? 1 : 0;
}

int cmd_evaluate(const std::string& pred_dir, const std::string& input_dir,
                 const std::string& gt_dir, const std::string& csv_path,
                 const CliOptions& opt) {
    if (!fs::is_directory(gt_dir) || list_images(gt_dir).empty()) {
        // the gt dir may legitimately hold only per-stem subdirectories
        bool has_subdirs = false;
        if (fs::is_directory(gt_dir)) {
            for (const auto& e : fs::directory_iterator(gt_dir)) {
                has_subdirs = has_subdirs || e.is_directory();
            }
        }
        if (!has_subdirs) {
            std::cerr << "empty or missing ground-truth directory: " << gt_dir << "\n";
            return 1;
        }
    }

    std::ostringstream csv;
    csv << kCsvHeader << '\n';
    CorpusResult total;
    if (!pred_dir.empty()) {
        const std::vector<fs::path> preds = list_images(pred_dir);
        total = evaluate_corpus(preds, gt_dir,
            [](const RasterImage& img) {
                EdgeMap m(img.width(), img.height());
                for (int y = 0; y < img.height(); ++y) {
                    for (int x = 0; x < img.width(); ++x) {
                        double v = 0.0;
                        for (int c = 0; c < img.channels(); ++c) v += img.at(x, y, c);
                        m.set(x, y, v > 0.0);
                    }
                }
                return m;
            },
            opt.match_tol, csv, std::cerr);
    } else {
        const std::vector<fs::path> inputs = list_images(input_dir);
        total = evaluate_corpus(inputs, gt_dir,
            [&](const RasterImage& img) { return detect(img, opt.cfg); },
            opt.match_tol, csv, std::cerr);
    }
    if (total.images == 0) {
        std::cerr << "no evaluable image pairs\n";
        return 1;
    }
    csv << "# summary: images=" << total.images
        << " mean_f=" << format_number(total.mean_f)
        << " mean_mse=" << format_number(total.mean_mse)
        << " mean_psnr=" << format_number(total.mean_psnr)
        << " total_runtime_ms=" << format_number(total.total_runtime_ms) << '\n';

    std::ofstream out(csv_path);
    if (!out) {
        std::cerr << "cannot write " << csv_path << "\n";
        return 1;
    }
    out << csv.str();
    std::cout << csv.str();
    return 0;
}

int cmd_compare(const std::string& input_dir, const std::string& gt_dir,
                const std::string& csv_path, const CliOptions& opt) {
    const std::vector<fs::path> inputs = list_images(input_dir);
    if (inputs.empty()) {
        std::cerr << "no input images in " << input_dir << "\n";
        return 1;
    }

    struct Method {
        std::string name;
        std::function<EdgeMap(const RasterImage&)> run;
    };
    const PipelineConfig& cfg = opt.cfg;
    const std::vector<Method> methods = {
        {"edd_mait", [&](const RasterImage& img) { return detect(img, cfg); }},
        {"edd_mait_fixed", [&](const RasterImage& img) {
             return detect_fixed_window(img, cfg, cfg.wmin); }},
        {"sobel_otsu", [&](const RasterImage& img) { return sobel_otsu_baseline(img, cfg); }},
        {"otsu_binarize", [&](const RasterImage& img) { return otsu_binarize_baseline(img, cfg); }},
    };

    std::ostringstream csv;
    std::vector<std::pair<std::string, CorpusResult>> results;
    for (const Method& m : methods) {
        csv << "# method: " << m.name << '\n' << kCsvHeader << '\n';
        CorpusResult r = evaluate_corpus(inputs, gt_dir, m.run, opt.match_tol, csv, std::cerr);
        if (r.images == 0) {
            std::cerr << "no evaluable image pairs\n";
            return 1;
        }
        csv << "# summary: images=" << r.images
            << " mean_f=" << format_number(r.mean_f)
            << " mean_mse=" << format_number(r.mean_mse)
            << " mean_psnr=" << format_number(r.mean_psnr)
            << " total_runtime_ms=" << format_number(r.total_runtime_ms) << "\n\n";
        results.emplace_back(m.name, r);
    }

    std::stable_sort(results.begin(), results.end(),
                     [](const auto& a, const auto& b) {
                         return a.second.mean_f > b.second.mean_f;
                     });
    csv << "# ranking by mean F\nrank,method,mean_f,total_runtime_ms\n";
    for (size_t i = 0; i < results.size(); ++i) {
        csv << i + 1 << ',' << results[i].first << ','
            << format_number(results[i].second.mean_f) << ','
            << format_number(results[i].second.total_runtime_ms) << '\n';
    }

    std::ofstream out(csv_path);
    if (!out) {
        std::cerr << "cannot write " << csv_path << "\n";
        return 1;
    }
    out << csv.str();
    std::cout << csv.str();
    return 0;
}

int cmd_stat(const std::string& table_spec, const CliOptions& opt, bool yates,
             const std::string& fisher_mode) {
    std::int64_t cells[4];
    std::istringstream in(table_spec);
    char sep = ',';
    for (int i = 0; i < 4; ++i) {
        if (!(in >> cells[i])) {
            std::cerr << "expected --table a,b,c,d\n";
            return 2;
        }
        if (i < 3 && !(in >> sep)) {
            std::cerr << "expected --table a,b,c,d\n";
            return 2;
        }
    }
    const ContingencyTable t{cells[0], cells[1], cells[2], cells[3]};

    TestOutcome out;
    if (!fisher_mode.empty()) {
        const FisherMode mode = fisher_mode == "point" ? FisherMode::Point
                              : fisher_mode == "two_tail" ? FisherMode::TwoTail
                              : FisherMode::OneTail;
        out = fisher_exact_test(t, mode, opt.cfg.alpha);
    } else if (yates) {
        out = chi_square_test(t, true, opt.cfg.alpha);
    } else {
        out = independence_test(t, opt.cfg.alpha);
    }

    std::cout << "method: "
              << (out.method == TestMethod::ChiSquare ? "chi_square" : "fisher_exact") << "\n";
    if (out.method == TestMethod::ChiSquare) {
        std::cout << "statistic: " << format_number(out.statistic) << "\n";
    }
    std::cout << "p: " << format_number(out.p_value) << "\n"
              << "decision: " << (out.reject_h0 ? "reject_h0 (edge)" : "accept_h0 (noise)")
              << "\n";
    return 0;
}

int cmd_otsu(const std::string& input, const CliOptions& opt) {
    const RasterImage img = read_image(input);
    Histogram256 hist;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double v = 0.0;
            for (int c = 0; c < img.channels(); ++c) v += img.at(x, y, c);
            v /= img.channels();
            hist.add(std::clamp(static_cast<int>(std::lround(v)), 0, 255));
        }
    }
    const DualThreshold dt = dual_thresholds(hist, opt.cfg.dual_ratio);
    std::cout << "T*: " << dt.t_star << "\nT_L: " << dt.t_low << "\nT_H: " << dt.t_high << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statedge: statistical edge detection and denoising"};
    app.require_subcommand(1);

    CliOptions opt;

    auto* detect_cmd = app.add_subcommand("detect", "Detect edges in an image or directory");
    std::string detect_input, detect_output = ".";
    detect_cmd->add_option("input", detect_input, "Input image or directory")->required();
    detect_cmd->add_option("-o,--output", detect_output, "Output directory");
    add_pipeline_flags(detect_cmd, opt);

    auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate edge maps against ground truth");
    std::string eval_pred, eval_input, eval_gt, eval_csv = "metrics.csv";
    eval_cmd->add_option("--pred", eval_pred, "Directory of predicted edge maps");
    eval_cmd->add_option("--input", eval_input, "Directory of images to detect on the fly");
    eval_cmd->add_option("--gt", eval_gt, "Ground-truth directory")->required();
    eval_cmd->add_option("-o,--output", eval_csv, "CSV output path");
    add_pipeline_flags(eval_cmd, opt);

    auto* compare_cmd = app.add_subcommand("compare", "Compare detectors on a corpus");
    std::string cmp_input, cmp_gt, cmp_csv = "compare.csv";
    compare_cmd->add_option("--input", cmp_input, "Input image directory")->required();
    compare_cmd->add_option("--gt", cmp_gt, "Ground-truth directory")->required();
    compare_cmd->add_option("-o,--output", cmp_csv, "CSV output path");
    add_pipeline_flags(compare_cmd, opt);

    auto* noise_cmd = app.add_subcommand("noise", "Add seeded Gaussian noise to an image");
    std::string noise_input, noise_output;
    double noise_sigma = 0.0;
    noise_cmd->add_option("input", noise_input, "Input image")->required();
    noise_cmd->add_option("-o,--output", noise_output, "Output image")->required();
    noise_cmd->add_option("--sigma", noise_sigma, "Noise standard deviation")
        ->required()->check(CLI::NonNegativeNumber);
    noise_cmd->add_option("--seed", opt.cfg.seed, "Random seed");

    auto* stat_cmd = app.add_subcommand("stat", "Run an independence test on a 2x2 table");
    std::string stat_table, stat_fisher_mode;
    bool stat_yates = false;
    stat_cmd->add_option("--table", stat_table, "Cell counts a,b,c,d")->required();
    stat_cmd->add_option("--alpha", opt.cfg.alpha, "Significance level");
    stat_cmd->add_flag("--yates", stat_yates, "Force chi-square with continuity correction");
    stat_cmd->add_option("--fisher-mode", stat_fisher_mode, "Force Fisher with this tail mode")
        ->check(CLI::IsMember({"point", "one_tail", "two_tail"}));

    auto* otsu_cmd = app.add_subcommand("otsu", "Print Otsu dual thresholds for an image");
    std::string otsu_input;
    otsu_cmd->add_option("input", otsu_input, "Input image")->required();
    otsu_cmd->add_option("--dual-ratio", opt.cfg.dual_ratio, "Low/high threshold ratio");

    CLI11_PARSE(app, argc, argv);
    finalize_options(opt);

    try {
        if (detect_cmd->parsed()) return cmd_detect(detect_input, detect_output, opt);
        if (eval_cmd->parsed()) {
            if (eval_pred.empty() == eval_input.empty()) {
                std::cerr << "evaluate: provide exactly one of --pred or --input\n";
                return 2;
            }
            return cmd_evaluate(eval_pred, eval_input, eval_gt, eval_csv, opt);
        }
        if (compare_cmd->parsed()) return cmd_compare(cmp_input, cmp_gt, cmp_csv, opt);
        if (noise_cmd->parsed()) {
            const RasterImage img = read_image(noise_input);
            write_image(noise_output, add_gaussian_noise(img, noise_sigma, opt.cfg.seed));
            return 0;
        }
        if (stat_cmd->parsed()) return cmd_stat(stat_table, opt, stat_yates, stat_fisher_mode);
        if (otsu_cmd->parsed()) return cmd_otsu(otsu_input, opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
