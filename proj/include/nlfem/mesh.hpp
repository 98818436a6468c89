#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nlfem/errors.hpp"
#include "nlfem/geometry.hpp"

namespace nlfem {

/// Per-triangle linear basis function as a global affine: phi(x) = a.x + b.
struct AffineBasis {
    Vec2 gradient;
    double offset = 0.0;
    double operator()(Vec2 x) const { return dot(gradient, x) + offset; }
};

struct BoundaryEdge {
    int v1 = 0, v2 = 0;  // directed so the domain lies to the LEFT of v1->v2
    int cell = 0;        // owning cell
    Vec2 normal;         // outward unit normal of the owning cell
};

/// Triangular mesh with ccw cells, extracted boundary edges and a centroid
/// grid for horizon-radius neighbor queries.  Immutable after construction.
class Mesh {
public:
    Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> cells)
        : vertices_(std::move(vertices)), cells_(std::move(cells)) {
        finalize();
    }

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_cells() const { return static_cast<int>(cells_.size()); }
    const std::vector<Vec2>& vertices() const { return vertices_; }
    const std::vector<std::array<int, 3>>& cells() const { return cells_; }
    const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }

    Vec2 vertex(int cell, int local) const {
        return vertices_[static_cast<std::size_t>(cells_[static_cast<std::size_t>(cell)]
                                                       [static_cast<std::size_t>(local)])];
    }

    Triangle triangle(int cell) const {
        const auto& c = cells_[static_cast<std::size_t>(cell)];
        return Triangle{{vertices_[static_cast<std::size_t>(c[0])],
                         vertices_[static_cast<std::size_t>(c[1])],
                         vertices_[static_cast<std::size_t>(c[2])]}};
    }

    Vec2 cell_centroid(int cell) const { return centroids_[static_cast<std::size_t>(cell)]; }
    double cell_radius(int cell) const { return radii_[static_cast<std::size_t>(cell)]; }
    double cell_area(int cell) const { return areas_[static_cast<std::size_t>(cell)]; }
    double mean_diameter() const { return mean_diameter_; }
    double min_diameter() const { return min_diameter_; }

    /// Diameter of the vertex set (equals the domain diameter for polygons).
    double domain_diameter() const {
        double best = 0.0;
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            for (std::size_t j = i + 1; j < vertices_.size(); ++j)
                best = std::max(best, squared_norm(vertices_[i] - vertices_[j]));
        return std::sqrt(best);
    }

    /// Barycentric coordinate functions of the cell, in vertex order.
    std::array<AffineBasis, 3> basis_functions(int cell) const {
        Triangle t = triangle(cell);
        double two_area = 2.0 * t.signed_area();
        if (two_area <= 0.0) throw DegenerateTriangle("basis_functions: nonpositive area");
        std::array<AffineBasis, 3> out;
        for (int k = 0; k < 3; ++k) {
            Vec2 e = t[(k + 2) % 3] - t[(k + 1) % 3];
            out[static_cast<std::size_t>(k)].gradient = (1.0 / two_area) * perp(e);
            out[static_cast<std::size_t>(k)].offset = cross(e, -1.0 * t[(k + 1) % 3]) / two_area;
        }
        return out;
    }

    /// Sorted superset of all cells within `radius` of the given cell
    /// (centroid grid lookup with per-cell radius padding; never omits an
    /// interacting cell).
    std::vector<int> cells_within(int cell, double radius) const {
        if (radius < 0.0) radius = 0.0;
        {
            std::lock_guard<std::mutex> lock(grid_->mutex);
            if (!grid_->built || grid_->radius != radius) build_grid(radius);
        }
        Vec2 g = centroids_[static_cast<std::size_t>(cell)];
        double pad = radius + radii_[static_cast<std::size_t>(cell)] + max_radius_;
        int ix0 = bucket_x(g.x - pad), ix1 = bucket_x(g.x + pad);
        int iy0 = bucket_y(g.y - pad), iy1 = bucket_y(g.y + pad);
        std::vector<int> out;
        for (int iy = iy0; iy <= iy1; ++iy)
            for (int ix = ix0; ix <= ix1; ++ix)
                for (int j : grid_->buckets[static_cast<std::size_t>(iy * grid_->nx + ix)]) {
                    double reach = radius + radii_[static_cast<std::size_t>(cell)] +
                                   radii_[static_cast<std::size_t>(j)];
                    if (squared_norm(centroids_[static_cast<std::size_t>(j)] - g) <
                        reach * reach)
                        out.push_back(j);
                }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void finalize() {
        if (vertices_.empty() || cells_.empty())
            throw ParseError("mesh must have vertices and cells", 0);
        Vec2 lo = vertices_[0], hi = vertices_[0];
        for (Vec2 v : vertices_) {
            lo.x = std::min(lo.x, v.x); lo.y = std::min(lo.y, v.y);
            hi.x = std::max(hi.x, v.x); hi.y = std::max(hi.y, v.y);
        }
        bbox_lo_ = lo; bbox_hi_ = hi;
        double bbox_diag = norm(hi - lo);

        centroids_.reserve(cells_.size());
        radii_.reserve(cells_.size());
        areas_.reserve(cells_.size());
        double diam_sum = 0.0;
        min_diameter_ = std::numeric_limits<double>::max();
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            for (int k = 0; k < 3; ++k) {
                int v = cells_[i][static_cast<std::size_t>(k)];
                if (v < 0 || v >= num_vertices())
                    throw ParseError("cell vertex index out of range", 0);
            }
            Triangle t = triangle(static_cast<int>(i));
            double a = t.signed_area();
            if (a <= 0.0)
                throw OrientationError("cell " + std::to_string(i) +
                                       " is not counterclockwise");
            if (a < 1e-14 * bbox_diag * bbox_diag)
                throw DegenerateTriangle("cell " + std::to_string(i) + " is degenerate");
            areas_.push_back(a);
            centroids_.push_back(t.centroid());
            radii_.push_back(t.bounding_radius());
            double d = t.diameter();
            diam_sum += d;
            min_diameter_ = std::min(min_diameter_, d);
        }
        mean_diameter_ = diam_sum / static_cast<double>(cells_.size());
        max_radius_ = *std::max_element(radii_.begin(), radii_.end());

        // edge -> owners; a boundary edge has exactly one owner
        std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> owners;
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            for (int k = 0; k < 3; ++k) {
                int a = cells_[i][static_cast<std::size_t>(k)];
                int b = cells_[i][static_cast<std::size_t>((k + 1) % 3)];
                owners[{std::min(a, b), std::max(a, b)}].push_back(
                    {static_cast<int>(i), k});
            }
        }
        for (const auto& [edge, own] : owners) {
            if (own.size() > 2)
                throw NonManifoldError("edge (" + std::to_string(edge.first) + "," +
                                       std::to_string(edge.second) + ") has " +
                                       std::to_string(own.size()) + " owners");
            if (own.size() == 1) {
                auto [cell, k] = own[0];
                int v1 = cells_[static_cast<std::size_t>(cell)][static_cast<std::size_t>(k)];
                int v2 = cells_[static_cast<std::size_t>(cell)]
                               [static_cast<std::size_t>((k + 1) % 3)];
                Vec2 d = vertices_[static_cast<std::size_t>(v2)] -
                         vertices_[static_cast<std::size_t>(v1)];
                Vec2 n = (1.0 / norm(d)) * Vec2{d.y, -d.x};  // outward for ccw owner
                boundary_edges_.push_back({v1, v2, cell, n});
            }
        }
        std::sort(boundary_edges_.begin(), boundary_edges_.end(),
                  [](const BoundaryEdge& a, const BoundaryEdge& b) {
                      return std::pair(a.v1, a.v2) < std::pair(b.v1, b.v2);
                  });
    }

    // lazily built centroid grid, keyed by the query radius
    struct GridCache {
        std::mutex mutex;
        bool built = false;
        double radius = -1.0, cell = 1.0;
        int nx = 1, ny = 1;
        std::vector<std::vector<int>> buckets;
    };

    void build_grid(double radius) const {
        double g = std::max(radius, mean_diameter_);
        grid_->cell = g;
        double w = bbox_hi_.x - bbox_lo_.x, h = bbox_hi_.y - bbox_lo_.y;
        grid_->nx = std::max(1, static_cast<int>(w / g) + 1);
        grid_->ny = std::max(1, static_cast<int>(h / g) + 1);
        grid_->buckets.assign(static_cast<std::size_t>(grid_->nx * grid_->ny), {});
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            int ix = bucket_x(centroids_[i].x), iy = bucket_y(centroids_[i].y);
            grid_->buckets[static_cast<std::size_t>(iy * grid_->nx + ix)].push_back(
                static_cast<int>(i));
        }
        grid_->radius = radius;
        grid_->built = true;
    }

    int bucket_x(double x) const {
        return std::clamp(static_cast<int>((x - bbox_lo_.x) / grid_->cell), 0, grid_->nx - 1);
    }
    int bucket_y(double y) const {
        return std::clamp(static_cast<int>((y - bbox_lo_.y) / grid_->cell), 0, grid_->ny - 1);
    }

    std::vector<Vec2> vertices_;
    std::vector<std::array<int, 3>> cells_;
    std::vector<BoundaryEdge> boundary_edges_;
    std::vector<Vec2> centroids_;
    std::vector<double> radii_, areas_;
    double mean_diameter_ = 0.0, min_diameter_ = 0.0, max_radius_ = 0.0;
    Vec2 bbox_lo_, bbox_hi_;
    std::unique_ptr<GridCache> grid_ = std::make_unique<GridCache>();
};

/// Uniform lattice mesh of [0,1]^2: (n+1)^2 vertices, 2n^2 ccw triangles
/// (squares split along the main diagonal), 4n boundary edges.
inline Mesh generate_unit_square_mesh(int n) {
    if (n < 1) throw std::invalid_argument("generate_unit_square_mesh: n must be >= 1");
    std::vector<Vec2> vertices;
    vertices.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
    std::vector<std::array<int, 3>> cells;
    cells.reserve(static_cast<std::size_t>(2 * n * n));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            int v00 = j * (n + 1) + i, v10 = v00 + 1;
            int v01 = v00 + (n + 1), v11 = v01 + 1;
            cells.push_back({v00, v10, v11});
            cells.push_back({v00, v11, v01});
        }
    return Mesh(std::move(vertices), std::move(cells));
}

/// Line-oriented text format (see README); '#' starts a comment.
inline Mesh load_mesh(std::istream& in) {
    int line_no = 0;
    auto next_line = [&](std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            auto end = raw.find_last_not_of(" \t\r");
            if (end == std::string::npos) continue;
            out = raw.substr(0, end + 1);
            return true;
        }
        return false;
    };
    std::string line;
    if (!next_line(line)) throw ParseError("empty mesh file", line_no);
    if (line != "nlfem-mesh 1") throw ParseError("expected header 'nlfem-mesh 1'", line_no);
    if (!next_line(line)) throw ParseError("missing size line", line_no);
    long nv = 0, nt = 0, nb = 0;
    {
        std::istringstream ss(line);
        if (!(ss >> nv >> nt >> nb) || nv < 1 || nt < 1 || nb < 0)
            throw ParseError("bad size line '" + line + "'", line_no);
    }
    std::vector<Vec2> vertices;
    vertices.reserve(static_cast<std::size_t>(nv));
    for (long i = 0; i < nv; ++i) {
        if (!next_line(line)) throw ParseError("missing vertex line", line_no);
        std::istringstream ss(line);
        double x = 0, y = 0;
        if (!(ss >> x >> y)) throw ParseError("bad vertex '" + line + "'", line_no);
        vertices.push_back({x, y});
    }
    std::vector<std::array<int, 3>> cells;
    cells.reserve(static_cast<std::size_t>(nt));
    for (long i = 0; i < nt; ++i) {
        if (!next_line(line)) throw ParseError("missing cell line", line_no);
        std::istringstream ss(line);
        int a = 0, b = 0, c = 0;
        if (!(ss >> a >> b >> c)) throw ParseError("bad cell '" + line + "'", line_no);
        if (a < 0 || b < 0 || c < 0 || a >= nv || b >= nv || c >= nv)
            throw ParseError("cell vertex index out of range", line_no);
        cells.push_back({a, b, c});
    }
    std::vector<std::pair<int, int>> file_bedges;
    for (long i = 0; i < nb; ++i) {
        if (!next_line(line)) throw ParseError("missing boundary edge line", line_no);
        std::istringstream ss(line);
        int a = 0, b = 0;
        if (!(ss >> a >> b)) throw ParseError("bad boundary edge '" + line + "'", line_no);
        file_bedges.push_back({a, b});
    }
    Mesh mesh(std::move(vertices), std::move(cells));
    if (nb > 0) {
        std::vector<std::pair<int, int>> computed;
        for (const auto& e : mesh.boundary_edges()) computed.push_back({e.v1, e.v2});
        std::sort(file_bedges.begin(), file_bedges.end());
        if (file_bedges != computed)
            throw ParseError("boundary edges disagree with mesh connectivity", line_no);
    }
    return mesh;
}

inline Mesh load_mesh(const std::string& text) {
    std::istringstream ss(text);
    return load_mesh(ss);
}

inline void save_mesh(const Mesh& mesh, std::ostream& out) {
    char buf[80];
    out << "nlfem-mesh 1\n";
    out << mesh.num_vertices() << ' ' << mesh.num_cells() << ' '
        << mesh.boundary_edges().size() << '\n';
    for (Vec2 v : mesh.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
        out << buf;
    }
    for (const auto& c : mesh.cells())
        out << c[0] << ' ' << c[1] << ' ' << c[2] << '\n';
    for (const auto& e : mesh.boundary_edges())
        out << e.v1 << ' ' << e.v2 << '\n';
}

inline std::string save_mesh(const Mesh& mesh) {
    std::ostringstream ss;
    save_mesh(mesh, ss);
    return ss.str();
}

} // namespace nlfem
