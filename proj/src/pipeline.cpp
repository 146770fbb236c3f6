#include "tomofeat/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "tomofeat/fbp.hpp"
#include "tomofeat/io.hpp"
#include "tomofeat/metrics.hpp"
#include "tomofeat/varsolve.hpp"
#include "tomofeat/xform.hpp"

namespace tomofeat {

namespace fs = std::filesystem;

DiscPhantom make_phantom(const Config& cfg) {
    return DiscPhantom(cfg.phantom.discs, cfg.phantom.grid_size, cfg.phantom.extent);
}

Sinogram simulate(const Config& cfg, const Image* image) {
    const auto spec = cfg.sampling.spec();
    const auto ph = make_phantom(cfg);
    Sinogram y = [&] {
        if (image) return forward(*image, spec);
        if (cfg.sampling.analytic) return analytic_radon(ph, spec);
        return forward(rasterize(ph), spec);
    }();
    if (cfg.noise_eta > 0.0) y = add_noise(y, cfg.noise_eta, cfg.seed.value_or(0));
    return y;
}

DataFilter build_filter(const FilterConfig& f, const Grid& grid, const SamplingSpec& spec) {
    return sample_filter(f.kernel(grid.pitch()), spec);
}

Image fbp_for_filter(const Sinogram& sino, const FilterConfig& f, const Grid& grid) {
    const double alpha = f.alpha.value_or(f.alpha_px * grid.pitch());
    const auto w = f.kind == KernelKind::gaussian_gradient ? FbpFilter::grad(alpha) : FbpFilter::log(alpha);
    return fbp_feature(sino, w, grid);
}

EdgeMap detect_edges(const Image& feature, const EdgeConfig& cfg) {
    if (feature.channels() == 2) return canny(feature, cfg.canny_low, cfg.canny_high);
    return zero_crossings(feature, cfg.zc_threshold);
}

namespace {

struct Summary {
    std::ofstream os;
    std::size_t ndiscs;

    Summary(const std::string& path, std::size_t n) : os(path), ndiscs(n) {
        if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
        os << std::setprecision(10) << "name,artifact_ratio,edge_pixels";
        for (std::size_t k = 0; k < n; ++k) os << ",coverage_disc" << k;
        os << '\n';
    }
};

void emit(const std::string& dir, const std::string& name, const Image& img, const Config& cfg, Summary& sum,
          std::ostream& log) {
    write_image(dir + "/" + name + ".img", img);
    for (std::size_t c = 0; c < img.channels(); ++c)
        write_pgm(dir + "/" + name + (img.channels() == 2 ? "_" + std::to_string(c) : "") + ".pgm", img, c);
    const auto edges = detect_edges(img, cfg.edges);
    write_pbm(dir + "/edges_" + name + ".pbm", edges);
    write_edge_csv(dir + "/edges_" + name + ".csv", edges);
    const auto& discs = cfg.phantom.discs;
    const double rho = img.channels() == 1 ? artifact_ratio(img, discs) : artifact_ratio(gradient_magnitude(img), discs);
    sum.os << name << ',' << rho << ',' << edges.count();
    for (const auto& d : discs) sum.os << ',' << boundary_coverage(edges, d);
    sum.os << '\n';
    log << "  " << name << ": artifact ratio " << rho << ", " << edges.count() << " edge pixels\n";
}

}  // namespace

void run_pipeline(const Config& cfg, const std::string& out_dir, std::ostream& log) {
    fs::create_directories(out_dir);
    const auto ph = make_phantom(cfg);
    const Grid grid = ph.grid();
    const Image f = rasterize(ph);
    write_image(out_dir + "/phantom.img", f);
    write_pgm(out_dir + "/phantom.pgm", f);

    const Sinogram y = simulate(cfg);
    write_sinogram(out_dir + "/sinogram.sino", y);
    log << "simulated " << y.n_angles() << " angles x " << y.n_samples() << " offsets"
        << (cfg.noise_eta > 0.0 ? ", noise eta " + std::to_string(cfg.noise_eta) : std::string()) << '\n';

    Summary sum(out_dir + "/summary.csv", cfg.phantom.discs.size());
    const RadonOperator op(grid, y.spec());
    for (const auto& fc : cfg.filters) {
        const auto filt = build_filter(fc, grid, y.spec());
        write_filter_csv(out_dir + "/filter_" + fc.name + ".csv", filt);
        const Sinogram rhs = preprocess_rhs(y, filt);
        for (const auto& run : cfg.runs) {
            const std::string name = fc.name + "_" + run.name;
            log << "reconstructing " << name << " (lambda " << run.solver.lambda << ", mu " << run.solver.mu << ", "
                << run.solver.max_iters << " iterations)\n";
            const auto res = fista_rhs(op, rhs, run.solver);
            for (std::size_t c = 0; c < res.trace.size(); ++c)
                write_objective_csv(out_dir + "/objective_" + name + (res.trace.size() > 1 ? "_" + std::to_string(c) : "") +
                                        ".csv",
                                    res.trace[c], res.initial[c]);
            emit(out_dir, "feature_" + name, res.h, cfg, sum, log);
        }
    }

    if (cfg.fbp_baseline) {
        for (const auto& fc : cfg.filters) {
            if (fc.kind != KernelKind::log && fc.kind != KernelKind::gaussian_gradient) continue;
            log << "FBP baseline for " << fc.name << '\n';
            emit(out_dir, "fbp_" + fc.name, fbp_for_filter(y, fc, grid), cfg, sum, log);
            if (cfg.sampling.scheme != SubsetScheme::full) {
                Config full = cfg;
                full.sampling.scheme = SubsetScheme::full;
                emit(out_dir, "fbp_full_" + fc.name, fbp_for_filter(simulate(full), fc, grid), cfg, sum, log);
            }
        }
    }
}

}  // namespace tomofeat
