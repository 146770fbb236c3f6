#include "tomofeat/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace tomofeat {

namespace pt = boost::property_tree;

namespace {

void check_keys(const pt::ptree& sec, const std::string& name, const std::set<std::string>& allowed) {
    for (const auto& [key, val] : sec)
        if (!allowed.count(key)) throw ConfigError("[" + name + "]: unknown key '" + key + "'");
}

template <class T>
T get(const pt::ptree& sec, const std::string& sname, const std::string& key, T fallback) {
    const auto v = sec.get_optional<std::string>(key);
    if (!v) return fallback;
    try {
        std::size_t used = 0;
        T out{};
        if constexpr (std::is_same_v<T, double>) out = std::stod(*v, &used);
        else if constexpr (std::is_same_v<T, bool>) {
            if (*v == "true" || *v == "1" || *v == "yes") return true;
            if (*v == "false" || *v == "0" || *v == "no") return false;
            throw std::invalid_argument("");
        } else {
            if (!v->empty() && v->front() == '-') throw std::invalid_argument("");
            out = static_cast<T>(std::stoull(*v, &used));
        }
        if (used != v->size()) throw std::invalid_argument("");
        return out;
    } catch (const std::logic_error&) {
        throw ConfigError("[" + sname + "] " + key + ": bad value '" + *v + "'");
    }
}

std::vector<Disc> parse_discs(const std::string& text) {
    std::vector<Disc> out;
    std::istringstream is(text);
    std::string row;
    while (std::getline(is, row, ';')) {
        std::istringstream rs(row);
        Disc d;
        if (!(rs >> d.center[0] >> d.center[1] >> d.radius >> d.amplitude)) {
            if (row.find_first_not_of(" \t") == std::string::npos) continue;
            throw ConfigError("[phantom] discs: expected 'x y radius amplitude' rows, got '" + row + "'");
        }
        out.push_back(d);
    }
    return out;
}

SolverConfig parse_solver(const pt::ptree& sec, const std::string& name) {
    check_keys(sec, name, {"lambda", "mu", "iters", "power_iters", "power_seed", "step", "data_scale"});
    SolverConfig s;
    s.lambda = get(sec, name, "lambda", s.lambda);
    s.mu = get(sec, name, "mu", s.mu);
    s.max_iters = get<std::size_t>(sec, name, "iters", s.max_iters);
    s.power_iters = get<std::size_t>(sec, name, "power_iters", s.power_iters);
    s.power_seed = get<std::uint64_t>(sec, name, "power_seed", s.power_seed);
    const auto step = sec.get<std::string>("step", "auto");
    if (step != "auto") {
        s.step = StepPolicy::fixed;
        s.fixed_step = get(sec, name, "step", 0.0);
    }
    const auto scale = sec.get<std::string>("data_scale", "peak");
    if (scale != "peak") s.data_scale = get(sec, name, "data_scale", 0.0);
    try {
        s.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("[" + name + "]: " + e.what());
    }
    return s;
}

FilterConfig parse_filter(const pt::ptree& sec, const std::string& sname, const std::string& name) {
    check_keys(sec, sname, {"kind", "alpha", "alpha_px", "b", "frequency_unit"});
    FilterConfig f;
    f.name = name;
    try {
        f.kind = kernel_kind_from_string(sec.get<std::string>("kind", name));
    } catch (const std::invalid_argument& e) {
        throw ConfigError("[" + sname + "]: " + e.what());
    }
    if (sec.get_optional<std::string>("alpha")) f.alpha = get(sec, sname, "alpha", 0.0);
    f.alpha_px = get(sec, sname, "alpha_px", f.alpha_px);
    f.b = get(sec, sname, "b", f.b);
    f.frequency_unit = get(sec, sname, "frequency_unit", f.frequency_unit);
    return f;
}

}  // namespace

SamplingSpec SamplingConfig::full_spec() const {
    const double b = bandwidth.value_or(std::numbers::pi * static_cast<double>(n_radial));
    const std::size_t nphi = n_angles_full.value_or(sampling_counts(b).n_angles);
    return SamplingSpec::full(b, nphi, n_radial, radial_halfwidth);
}

SamplingSpec SamplingConfig::spec() const {
    const auto full = full_spec();
    switch (scheme) {
        case SubsetScheme::full: return full;
        case SubsetScheme::uniform_sparse: return make_subset(full, n_angles, UniformSparse{});
        case SubsetScheme::limited_view: return make_subset(full, n_angles, LimitedView{view_first, view_last});
    }
    return full;
}

FeatureKernel FilterConfig::kernel(double pitch) const {
    const double a = alpha.value_or(alpha_px * pitch);
    switch (kind) {
        case KernelKind::gaussian: return FeatureKernel::gaussian(a);
        case KernelKind::gaussian_gradient: return FeatureKernel::gaussian_gradient(a);
        case KernelKind::log: return FeatureKernel::log(a);
        case KernelKind::lowpass: return FeatureKernel::lowpass(b, frequency_unit);
        case KernelKind::lowpass_laplacian: return FeatureKernel::lowpass_laplacian(b, frequency_unit);
        case KernelKind::ramlak_laplacian: return FeatureKernel::ramlak_laplacian(b, frequency_unit);
        case KernelKind::tabulated: break;
    }
    throw ConfigError("filter '" + name + "': kind cannot be configured");
}

void Config::validate() const {
    try {
        DiscPhantom(phantom.discs, phantom.grid_size, phantom.extent);
        const auto s = sampling.spec();
        const Grid g(phantom.grid_size, phantom.extent);
        if (s.radial_halfwidth() < g.extent) throw ConfigError("radial_halfwidth must cover the image extent");
        for (const auto& f : filters) f.kernel(g.pitch()).validate();
        for (const auto& r : runs) r.solver.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (noise_eta < 0.0) throw ConfigError("[noise] eta must be >= 0");
    if (noise_eta > 0.0 && !seed) throw ConfigError("[noise] a seed is required when eta > 0");
    if (filters.empty()) throw ConfigError("no filters configured");
    if (runs.empty()) throw ConfigError("no solver runs configured");
}

Config load_config(const std::string& path, bool validate) {
    Config cfg;
    if (path.empty()) return cfg;
    pt::ptree tree;
    try {
        pt::read_ini(path, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(e.what());
    }

    std::vector<FilterConfig> filters;
    std::vector<RunConfig> runs;
    for (const auto& [name, sec] : tree) {
        if (sec.empty() && !sec.data().empty()) throw ConfigError("key '" + name + "' outside any section");
        if (name == "phantom") {
            check_keys(sec, name, {"layout", "weak_contrast", "discs", "grid_size", "extent"});
            const auto layout = sec.get<std::string>("layout", "three-disc");
            if (layout == "three-disc") cfg.phantom.discs = three_disc_layout();
            else if (layout == "weak-edge") cfg.phantom.discs = weak_edge_layout(get(sec, name, "weak_contrast", 0.2));
            else if (layout == "custom") cfg.phantom.discs = parse_discs(sec.get<std::string>("discs", ""));
            else if (layout == "empty") cfg.phantom.discs.clear();
            else throw ConfigError("[phantom] layout: unknown '" + layout + "'");
            cfg.phantom.grid_size = get<std::size_t>(sec, name, "grid_size", cfg.phantom.grid_size);
            cfg.phantom.extent = get(sec, name, "extent", cfg.phantom.extent);
        } else if (name == "sampling") {
            check_keys(sec, name, {"n_radial", "radial_halfwidth", "bandwidth", "n_angles_full", "scheme",
                                   "angles", "view_first_deg", "view_last_deg", "data"});
            auto& s = cfg.sampling;
            s.n_radial = get<std::size_t>(sec, name, "n_radial", s.n_radial);
            s.radial_halfwidth = get(sec, name, "radial_halfwidth", s.radial_halfwidth);
            if (sec.get_optional<std::string>("bandwidth")) s.bandwidth = get(sec, name, "bandwidth", 0.0);
            if (sec.get_optional<std::string>("n_angles_full"))
                s.n_angles_full = get<std::size_t>(sec, name, "n_angles_full", 0);
            const auto scheme = sec.get<std::string>("scheme", "uniform-sparse");
            if (scheme == "full") s.scheme = SubsetScheme::full;
            else if (scheme == "uniform-sparse") s.scheme = SubsetScheme::uniform_sparse;
            else if (scheme == "limited-view") s.scheme = SubsetScheme::limited_view;
            else throw ConfigError("[sampling] scheme: unknown '" + scheme + "'");
            s.n_angles = get<std::size_t>(sec, name, "angles", s.n_angles);
            s.view_first = get(sec, name, "view_first_deg", 0.0) * std::numbers::pi / 180.0;
            s.view_last = get(sec, name, "view_last_deg", 0.0) * std::numbers::pi / 180.0;
            const auto data = sec.get<std::string>("data", "analytic");
            if (data != "analytic" && data != "discrete") throw ConfigError("[sampling] data: analytic or discrete");
            s.analytic = data == "analytic";
        } else if (name == "noise") {
            check_keys(sec, name, {"eta", "seed"});
            cfg.noise_eta = get(sec, name, "eta", 0.0);
            if (sec.get_optional<std::string>("seed")) cfg.seed = get<std::uint64_t>(sec, name, "seed", 0);
        } else if (name == "filter") {
            filters.push_back(parse_filter(sec, name, sec.get<std::string>("kind", "log")));
        } else if (name.rfind("filter.", 0) == 0) {
            filters.push_back(parse_filter(sec, name, name.substr(7)));
        } else if (name == "solver") {
            runs.push_back({"default", parse_solver(sec, name)});
        } else if (name.rfind("run.", 0) == 0) {
            runs.push_back({name.substr(4), parse_solver(sec, name)});
        } else if (name == "edges") {
            check_keys(sec, name, {"threshold", "canny_low", "canny_high"});
            cfg.edges.zc_threshold = get(sec, name, "threshold", cfg.edges.zc_threshold);
            cfg.edges.canny_low = get(sec, name, "canny_low", cfg.edges.canny_low);
            cfg.edges.canny_high = get(sec, name, "canny_high", cfg.edges.canny_high);
        } else if (name == "pipeline") {
            check_keys(sec, name, {"fbp_baseline", "out_dir"});
            cfg.fbp_baseline = get(sec, name, "fbp_baseline", cfg.fbp_baseline);
            cfg.out_dir = sec.get<std::string>("out_dir", cfg.out_dir);
        } else {
            throw ConfigError("unknown section [" + name + "]");
        }
    }
    if (!filters.empty()) cfg.filters = std::move(filters);
    if (!runs.empty()) cfg.runs = std::move(runs);
    if (validate) cfg.validate();
    return cfg;
}

}  // namespace tomofeat
