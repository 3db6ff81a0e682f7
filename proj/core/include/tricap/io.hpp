#pragma once

#include "tricap/grid.hpp"
#include "tricap/mac.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tricap {

/// Fixed 17-significant-digit decimal formatting; identical inputs give
/// byte-identical output.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    void add_row(std::initializer_list<double> vals);
    int column(const std::string& name) const; // -1 when absent
};

/// RFC 4180: comma separated, CRLF line endings, header row first.
void write_csv(const CsvTable& table, const std::filesystem::path& path);
CsvTable read_csv(const std::filesystem::path& path);

/// Legacy VTK STRUCTURED_POINTS (ASCII) over the cell centers: one SCALARS
/// block per named field, an interior-mask block, and optionally the
/// cell-averaged velocity as VECTORS.
void write_vtk(const std::vector<std::pair<std::string, const ScalarField*>>& fields,
               const MacVelocity* velocity, const std::filesystem::path& path);

struct VtkSnapshot {
    Grid2D grid;
    std::vector<std::uint8_t> mask;
    std::map<std::string, std::vector<double>> fields;

    bool fully_interior() const;
};

/// Reads files produced by write_vtk (not a general VTK parser).
VtkSnapshot read_vtk(const std::filesystem::path& path);

/// `key = value` lines, sorted by key.
void write_manifest(const std::map<std::string, std::string>& entries,
                    const std::filesystem::path& path);

} // namespace tricap
