#include "tomofeat/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tomofeat {

namespace {

static_assert(std::endian::native == std::endian::little, "payload I/O assumes a little-endian host");

std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    os << std::setprecision(17);
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    return is;
}

// Reads "key=value" lines up to "end_header"; returns the raw header text too.
std::map<std::string, std::string> read_header(std::istream& is, std::string& raw, const std::string& path) {
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line == "end_header") return kv;
        raw += line + '\n';
        const auto eq = line.find('=');
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    throw std::runtime_error("'" + path + "': missing end_header");
}

const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key,
                           const std::string& path) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::runtime_error("'" + path + "': header lacks '" + key + "'");
    return it->second;
}

void read_doubles(std::istream& is, std::span<double> out, const std::string& path) {
    is.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(out.size_bytes()));
    if (static_cast<std::size_t>(is.gcount()) != out.size_bytes())
        throw std::runtime_error("'" + path + "': truncated payload");
}

}  // namespace

void write_sinogram(const std::string& path, const Sinogram& sino, Encoding enc) {
    auto os = open_out(path, true);
    os << "format=tomofeat-sinogram\n" << sino.spec().to_header();
    os << "channels=" << sino.channels() << '\n';
    os << "encoding=" << (enc == Encoding::binary ? "binary" : "csv") << '\n';
    os << "end_header\n";
    if (enc == Encoding::binary) {
        os.write(reinterpret_cast<const char*>(sino.values().data()),
                 static_cast<std::streamsize>(sino.values().size() * sizeof(double)));
    } else {
        for (std::size_t c = 0; c < sino.channels(); ++c)
            for (std::size_t j = 0; j < sino.n_angles(); ++j) {
                const auto row = sino.row(c, j);
                for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << row[k];
                os << '\n';
            }
    }
    if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

Sinogram read_sinogram(const std::string& path) {
    auto is = open_in(path);
    std::string raw;
    const auto kv = read_header(is, raw, path);
    if (require(kv, "format", path) != "tomofeat-sinogram")
        throw std::runtime_error("'" + path + "' is not a sinogram file");
    Sinogram sino(SamplingSpec::from_header(raw), std::stoul(require(kv, "channels", path)));
    const auto& enc = require(kv, "encoding", path);
    if (enc == "binary") {
        read_doubles(is, sino.values(), path);
    } else if (enc == "csv") {
        std::string line;
        for (std::size_t c = 0; c < sino.channels(); ++c)
            for (std::size_t j = 0; j < sino.n_angles(); ++j) {
                if (!std::getline(is, line)) throw std::runtime_error("'" + path + "': missing CSV rows");
                std::istringstream ls(line);
                std::string tok;
                auto row = sino.row(c, j);
                std::size_t k = 0;
                while (std::getline(ls, tok, ',')) {
                    if (k >= row.size()) throw std::runtime_error("'" + path + "': CSV row too long");
                    row[k++] = std::stod(tok);
                }
                if (k != row.size()) throw std::runtime_error("'" + path + "': CSV row too short");
            }
    } else {
        throw std::runtime_error("'" + path + "': unknown encoding '" + enc + "'");
    }
    return sino;
}

void write_image(const std::string& path, const Image& img) {
    auto os = open_out(path, true);
    os << "format=tomofeat-image\nn=" << img.n() << "\nextent=" << img.grid().extent
       << "\nchannels=" << img.channels() << "\nend_header\n";
    os.write(reinterpret_cast<const char*>(img.values().data()),
             static_cast<std::streamsize>(img.values().size() * sizeof(double)));
    if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

Image read_image(const std::string& path) {
    auto is = open_in(path);
    std::string raw;
    const auto kv = read_header(is, raw, path);
    if (require(kv, "format", path) != "tomofeat-image")
        throw std::runtime_error("'" + path + "' is not an image file");
    Image img(Grid(std::stoul(require(kv, "n", path)), std::stod(require(kv, "extent", path))),
              std::stoul(require(kv, "channels", path)));
    read_doubles(is, img.values(), path);
    return img;
}

void write_pgm(const std::string& path, const Image& img, std::size_t channel, int bits) {
    if (bits != 8 && bits != 16) throw std::invalid_argument("pgm: bits must be 8 or 16");
    const auto v = img.channel(channel);
    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const double lo = *lo_it, hi = *hi_it;
    const int maxval = bits == 8 ? 255 : 65535;
    const double span = hi > lo ? hi - lo : 1.0;
    auto os = open_out(path, true);
    os << "P5\n# scale min=" << lo << " max=" << hi << '\n' << img.n() << ' ' << img.n() << '\n' << maxval << '\n';
    // Row 0 holds the smallest y; flip so the image shows y upwards.
    for (std::size_t r = img.n(); r-- > 0;)
        for (std::size_t c = 0; c < img.n(); ++c) {
            const double x = (img.at(channel, r, c) - lo) / span;
            const auto q = static_cast<unsigned>(std::lround(std::clamp(x, 0.0, 1.0) * maxval));
            if (bits == 8) {
                os.put(static_cast<char>(q));
            } else {
                os.put(static_cast<char>(q >> 8));
                os.put(static_cast<char>(q & 0xff));
            }
        }
    if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

Image read_pgm(const std::string& path, double extent) {
    auto is = open_in(path);
    std::string magic;
    is >> magic;
    if (magic != "P5") throw std::runtime_error("'" + path + "' is not a binary PGM");
    double lo = 0.0, hi = 1.0;
    std::vector<long> nums;
    while (nums.size() < 3) {
        is >> std::ws;
        if (is.peek() == '#') {
            std::string line;
            std::getline(is, line);
            std::sscanf(line.c_str(), "# scale min=%lf max=%lf", &lo, &hi);
            continue;
        }
        long x;
        if (!(is >> x)) throw std::runtime_error("'" + path + "': bad PGM header");
        nums.push_back(x);
    }
    is.get();
    const auto n = static_cast<std::size_t>(nums[0]);
    if (nums[1] != nums[0]) throw std::runtime_error("'" + path + "': image not square");
    const long maxval = nums[2];
    const double span = hi > lo ? hi - lo : 1.0;
    Image img(Grid(n, extent));
    for (std::size_t r = n; r-- > 0;)
        for (std::size_t c = 0; c < n; ++c) {
            unsigned q = static_cast<unsigned char>(is.get());
            if (maxval > 255) q = (q << 8) | static_cast<unsigned char>(is.get());
            img(r, c) = lo + span * static_cast<double>(q) / static_cast<double>(maxval);
        }
    if (!is) throw std::runtime_error("'" + path + "': truncated PGM");
    return img;
}

void write_pbm(const std::string& path, const EdgeMap& edges) {
    auto os = open_out(path, true);
    const std::size_t n = edges.grid.n;
    os << "P4\n# " << edges.method << ' ' << edges.params << '\n' << n << ' ' << n << '\n';
    for (std::size_t r = n; r-- > 0;) {
        for (std::size_t c0 = 0; c0 < n; c0 += 8) {
            unsigned char byte = 0;
            for (std::size_t b = 0; b < 8 && c0 + b < n; ++b)
                if (edges(r, c0 + b)) byte |= static_cast<unsigned char>(0x80u >> b);
            os.put(static_cast<char>(byte));
        }
    }
    if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

EdgeMap read_pbm(const std::string& path, double extent) {
    auto is = open_in(path);
    std::string magic;
    is >> magic;
    if (magic != "P4") throw std::runtime_error("'" + path + "' is not a binary PBM");
    std::string method, params;
    std::vector<long> nums;
    while (nums.size() < 2) {
        is >> std::ws;
        if (is.peek() == '#') {
            std::string line;
            std::getline(is, line);
            std::istringstream ls(line.substr(1));
            ls >> method;
            std::getline(ls >> std::ws, params);
            continue;
        }
        long x;
        if (!(is >> x)) throw std::runtime_error("'" + path + "': bad PBM header");
        nums.push_back(x);
    }
    is.get();
    const auto n = static_cast<std::size_t>(nums[0]);
    EdgeMap e{Grid(n, extent), std::vector<std::uint8_t>(n * n, 0), method, params};
    for (std::size_t r = n; r-- > 0;)
        for (std::size_t c0 = 0; c0 < n; c0 += 8) {
            const auto byte = static_cast<unsigned char>(is.get());
            for (std::size_t b = 0; b < 8 && c0 + b < n; ++b) e.mask[r * n + c0 + b] = (byte >> (7 - b)) & 1u;
        }
    if (!is) throw std::runtime_error("'" + path + "': truncated PBM");
    return e;
}

void write_edge_csv(const std::string& path, const EdgeMap& edges) {
    auto os = open_out(path);
    os << "row,col,x,y\n";
    for (std::size_t r = 0; r < edges.grid.n; ++r)
        for (std::size_t c = 0; c < edges.grid.n; ++c)
            if (edges(r, c)) os << r << ',' << c << ',' << edges.grid.coord(c) << ',' << edges.grid.coord(r) << '\n';
}

void write_filter_csv(const std::string& path, const DataFilter& filt, double phi) {
    auto os = open_out(path);
    os << "s,value" << (filt.channels() == 2 ? ",value2" : "") << '\n';
    const long r = static_cast<long>(filt.radius());
    for (long l = -r; l <= r; ++l) {
        os << static_cast<double>(l) * filt.pitch() << ',' << filt.value(0, phi, l);
        if (filt.channels() == 2) os << ',' << filt.value(1, phi, l);
        os << '\n';
    }
}

std::vector<std::vector<double>> read_csv_table(const std::string& path) {
    auto is = open_in(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        std::vector<double> row;
        try {
            while (std::getline(ls, tok, ',')) row.push_back(std::stod(tok));
        } catch (const std::invalid_argument&) {
            if (first) {  // header line
                first = false;
                continue;
            }
            throw std::runtime_error("'" + path + "': non-numeric CSV field");
        }
        first = false;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_objective_csv(const std::string& path, const std::vector<ObjectiveTerms>& trace,
                         const ObjectiveTerms& initial) {
    auto os = open_out(path);
    os << "iteration,objective,data,h1,l1\n";
    os << 0 << ',' << initial.total << ',' << initial.data << ',' << initial.h1 << ',' << initial.l1 << '\n';
    for (std::size_t k = 0; k < trace.size(); ++k)
        os << k + 1 << ',' << trace[k].total << ',' << trace[k].data << ',' << trace[k].h1 << ',' << trace[k].l1 << '\n';
}

}  // namespace tomofeat
