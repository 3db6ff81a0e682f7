#include "tricap/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tricap {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvTable::add_row(std::initializer_list<double> vals) {
    rows.emplace_back(vals);
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == name) return static_cast<int>(k);
    return -1;
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
    for (std::size_t k = 0; k < table.header.size(); ++k) {
        if (k) out << ',';
        out << table.header[k];
    }
    out << "\r\n";
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out << ',';
            out << format_double(row[k]);
        }
        out << "\r\n";
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        if (first) {
            while (std::getline(ss, cell, ',')) table.header.push_back(cell);
            first = false;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_vtk(const std::vector<std::pair<std::string, const ScalarField*>>& fields,
               const MacVelocity* velocity, const std::filesystem::path& path) {
    if (fields.empty()) throw std::invalid_argument("write_vtk: no fields");
    const Domain& dom = fields.front().second->domain();
    const Grid2D& g = dom.grid();

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_vtk: cannot open " + path.string());
    out << "# vtk DataFile Version 3.0\n";
    out << "tricap fields\n";
    out << "ASCII\n";
    out << "DATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS " << g.nx << ' ' << g.ny << " 1\n";
    out << "ORIGIN " << format_double(g.xc(0)) << ' ' << format_double(g.yc(0)) << " 0\n";
    out << "SPACING " << format_double(g.hx) << ' ' << format_double(g.hy) << " 1\n";
    out << "POINT_DATA " << g.size() << "\n";

    for (const auto& [name, field] : fields) {
        out << "SCALARS " << name << " double 1\n";
        out << "LOOKUP_TABLE default\n";
        for (int c = 0; c < g.size(); ++c) out << format_double((*field)[c]) << '\n';
    }
    out << "SCALARS mask double 1\n";
    out << "LOOKUP_TABLE default\n";
    for (int c = 0; c < g.size(); ++c) out << (dom.interior_idx(c) ? 1 : 0) << '\n';

    if (velocity) {
        out << "VECTORS velocity double\n";
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                out << format_double(velocity->u_cell(i, j)) << ' '
                    << format_double(velocity->v_cell(i, j)) << " 0\n";
    }
    if (!out) throw std::runtime_error("write_vtk: write failed for " + path.string());
}

bool VtkSnapshot::fully_interior() const {
    for (std::uint8_t m : mask)
        if (!m) return false;
    return true;
}

VtkSnapshot read_vtk(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_vtk: cannot open " + path.string());
    VtkSnapshot snap;
    std::string tok;
    int nx = 0, ny = 0, nz = 0;
    double ox = 0, oy = 0, sx = 1, sy = 1;
    int npoints = 0;
    while (in >> tok) {
        if (tok == "DIMENSIONS") {
            in >> nx >> ny >> nz;
        } else if (tok == "ORIGIN") {
            double oz;
            in >> ox >> oy >> oz;
        } else if (tok == "SPACING") {
            double sz;
            in >> sx >> sy >> sz;
        } else if (tok == "POINT_DATA") {
            in >> npoints;
        } else if (tok == "SCALARS") {
            std::string name, type;
            int comps;
            in >> name >> type >> comps;
            in >> tok >> tok; // LOOKUP_TABLE default
            std::vector<double> vals(npoints);
            for (int k = 0; k < npoints; ++k) in >> vals[k];
            if (name == "mask") {
                snap.mask.resize(npoints);
                for (int k = 0; k < npoints; ++k) snap.mask[k] = vals[k] != 0.0 ? 1 : 0;
            } else {
                snap.fields[name] = std::move(vals);
            }
        } else if (tok == "VECTORS") {
            std::string name, type;
            in >> name >> type;
            double x;
            for (int k = 0; k < 3 * npoints; ++k) in >> x;
        }
    }
    if (nx < 1 || ny < 1 || npoints != nx * ny)
        throw std::runtime_error("read_vtk: unsupported or corrupt file " + path.string());
    // cell centers were written, shift back to the lower-left corner
    snap.grid = Grid2D(nx, ny, sx, sy, ox - 0.5 * sx, oy - 0.5 * sy);
    if (snap.mask.empty()) snap.mask.assign(npoints, 1);
    return snap;
}

void write_manifest(const std::map<std::string, std::string>& entries,
                    const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_manifest: cannot open " + path.string());
    for (const auto& [k, v] : entries) out << k << " = " << v << "\n";
    if (!out) throw std::runtime_error("write_manifest: write failed");
}

} // namespace tricap
