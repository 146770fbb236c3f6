// Command-line driver: phantom creation, simulation, FBP and variational
// feature reconstruction, edge detection and the full scripted pipeline.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tomofeat/config.hpp"
#include "tomofeat/fbp.hpp"
#include "tomofeat/io.hpp"
#include "tomofeat/phantom.hpp"
#include "tomofeat/pipeline.hpp"
#include "tomofeat/varsolve.hpp"
#include "tomofeat/xform.hpp"

namespace tf = tomofeat;

namespace {

constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

struct Common {
    std::string config;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

tf::Config load(const Common& o) {
    auto cfg = tf::load_config(o.config, false);
    if (o.seed) cfg.seed = o.seed;
    cfg.validate();
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

std::string out(const tf::Config& cfg, const std::string& name) { return cfg.out_dir + "/" + name; }

const tf::FilterConfig& pick_filter(const tf::Config& cfg, const std::string& name) {
    if (name.empty()) return cfg.filters.front();
    for (const auto& f : cfg.filters)
        if (f.name == name) return f;
    throw tf::ConfigError("no filter named '" + name + "' in the config");
}

const tf::RunConfig& pick_run(const tf::Config& cfg, const std::string& name) {
    if (name.empty()) return cfg.runs.front();
    for (const auto& r : cfg.runs)
        if (r.name == name) return r;
    throw tf::ConfigError("no run named '" + name + "' in the config");
}

void save_feature(const std::string& stem, const tf::Image& img) {
    tf::write_image(stem + ".img", img);
    for (std::size_t c = 0; c < img.channels(); ++c)
        tf::write_pgm(stem + (img.channels() == 2 ? "_" + std::to_string(c) : "") + ".pgm", img, c);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature reconstruction from sparse-view parallel-beam CT data"};
    app.require_subcommand(1);
    Common o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "INI configuration file");
        sub->add_option("--out-dir", o.out_dir, "Output directory (overrides the config)");
        sub->add_option("--seed", o.seed, "Noise seed (overrides the config)");
        sub->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
    };

    auto* phantom = app.add_subcommand("phantom", "Rasterize the configured phantom");
    add_common(phantom);

    std::string image_in;
    auto* simulate = app.add_subcommand("simulate", "Simulate (possibly noisy) sinogram data");
    add_common(simulate);
    simulate->add_option("--image", image_in, "Project this image file instead of the phantom");
    bool csv = false;
    simulate->add_flag("--csv", csv, "Write the payload as CSV instead of binary");

    std::string sino_in, filter_name, run_name;
    auto* fbpf = app.add_subcommand("fbp-feature", "Feature map by filtered backprojection");
    add_common(fbpf);
    fbpf->add_option("--sinogram", sino_in, "Input sinogram")->required();
    fbpf->add_option("--filter", filter_name, "Filter section name");

    auto* recon = app.add_subcommand("reconstruct", "Variational feature reconstruction (FISTA)");
    add_common(recon);
    recon->add_option("--sinogram", sino_in, "Input sinogram")->required();
    recon->add_option("--filter", filter_name, "Filter section name");
    recon->add_option("--run", run_name, "Solver run section name");

    std::string feature_in;
    auto* edges = app.add_subcommand("edges", "Edge map from a feature image");
    add_common(edges);
    edges->add_option("--image", feature_in, "Feature map (.img)")->required();

    auto* pipeline = app.add_subcommand("pipeline", "simulate -> reconstruct -> edges with all intermediates");
    add_common(pipeline);

    auto* exportf = app.add_subcommand("export-filter", "Write the tabulated data filter as CSV");
    add_common(exportf);
    exportf->add_option("--filter", filter_name, "Filter section name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_config;
    }

#ifdef _OPENMP
    if (o.threads > 0) omp_set_num_threads(o.threads);
#endif

    try {
        const auto cfg = load(o);
        const auto ph = tf::make_phantom(cfg);
        const tf::Grid grid = ph.grid();
        if (app.got_subcommand(phantom)) {
            const auto img = tf::rasterize(ph);
            tf::write_image(out(cfg, "phantom.img"), img);
            tf::write_pgm(out(cfg, "phantom.pgm"), img);
        } else if (app.got_subcommand(simulate)) {
            tf::Sinogram y = [&] {
                if (image_in.empty()) return tf::simulate(cfg);
                const auto img = tf::read_image(image_in);
                return tf::simulate(cfg, &img);
            }();
            tf::write_sinogram(out(cfg, "sinogram.sino"), y, csv ? tf::Encoding::csv : tf::Encoding::binary);
        } else if (app.got_subcommand(fbpf)) {
            const auto y = tf::read_sinogram(sino_in);
            const auto& f = pick_filter(cfg, filter_name);
            save_feature(out(cfg, "fbp_" + f.name), tf::fbp_for_filter(y, f, grid));
        } else if (app.got_subcommand(recon)) {
            const auto y = tf::read_sinogram(sino_in);
            const auto& f = pick_filter(cfg, filter_name);
            const auto& run = pick_run(cfg, run_name);
            const auto res = tf::fista(y, tf::build_filter(f, grid, y.spec()), grid, run.solver);
            const std::string name = f.name + "_" + run.name;
            save_feature(out(cfg, "feature_" + name), res.h);
            for (std::size_t c = 0; c < res.trace.size(); ++c)
                tf::write_objective_csv(
                    out(cfg, "objective_" + name + (res.trace.size() > 1 ? "_" + std::to_string(c) : "") + ".csv"),
                    res.trace[c], res.initial[c]);
        } else if (app.got_subcommand(edges)) {
            const auto img = tf::read_image(feature_in);
            const auto e = tf::detect_edges(img, cfg.edges);
            const auto stem = std::filesystem::path(feature_in).stem().string();
            tf::write_pbm(out(cfg, "edges_" + stem + ".pbm"), e);
            tf::write_edge_csv(out(cfg, "edges_" + stem + ".csv"), e);
        } else if (app.got_subcommand(pipeline)) {
            tf::run_pipeline(cfg, cfg.out_dir, std::cout);
        } else if (app.got_subcommand(exportf)) {
            const auto& f = pick_filter(cfg, filter_name);
            tf::write_filter_csv(out(cfg, "filter_" + f.name + ".csv"), tf::build_filter(f, grid, cfg.sampling.spec()));
        }
    } catch (const tf::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
    return 0;
}
