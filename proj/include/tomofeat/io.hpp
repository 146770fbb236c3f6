#pragma once

#include <string>
#include <vector>

#include "tomofeat/edges.hpp"
#include "tomofeat/filters.hpp"
#include "tomofeat/grid.hpp"
#include "tomofeat/varsolve.hpp"

namespace tomofeat {

enum class Encoding { binary, csv };

/// Sinogram file: "key=value" header lines (geometry, channels, encoding)
/// closed by "end_header", then the payload in [channel][angle][sample]
/// order, either little-endian doubles or one CSV row per angle.
void write_sinogram(const std::string& path, const Sinogram& sino, Encoding enc = Encoding::binary);
Sinogram read_sinogram(const std::string& path);

/// Lossless image file: small text header plus little-endian doubles.
void write_image(const std::string& path, const Image& img);
Image read_image(const std::string& path);

/// Binary PGM of one channel, min-max scaled to 8 or 16 bits. The scale is
/// recorded in a comment so read_pgm can map grey levels back to values.
void write_pgm(const std::string& path, const Image& img, std::size_t channel = 0, int bits = 16);
Image read_pgm(const std::string& path, double extent = 1.0);

void write_pbm(const std::string& path, const EdgeMap& edges);
EdgeMap read_pbm(const std::string& path, double extent = 1.0);
/// Marked pixels as "row,col,x,y" lines.
void write_edge_csv(const std::string& path, const EdgeMap& edges);

/// Filter table: s, value[, value2] at angle phi.
void write_filter_csv(const std::string& path, const DataFilter& filt, double phi = 0.0);
std::vector<std::vector<double>> read_csv_table(const std::string& path);

/// iteration, objective, data, h1, l1 for one channel.
void write_objective_csv(const std::string& path, const std::vector<ObjectiveTerms>& trace,
                         const ObjectiveTerms& initial);

}  // namespace tomofeat
