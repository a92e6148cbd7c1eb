#include "cws/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <numbers>
#include <vector>

namespace cws {

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

Shape grid_mesh(int nx, int ny) {
    Shape s;
    const int vx = nx + 1, vy = ny + 1;
    s.f.resize(3, vx * vy);
    auto vid = [&](int i, int j) { return j * vx + i; };
    for (int j = 0; j < vy; ++j)
        for (int i = 0; i < vx; ++i) s.f.col(vid(i, j)) = Eigen::Vector3d(i, j, 0);
    std::vector<std::array<int, 3>> faces;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    s.surface = build_surface(faces, vx * vy);
    return s;
}

Shape icosphere(int subdiv) {
    const double p = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> verts = {
        {-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
        {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
        {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
        {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
    for (int round = 0; round < subdiv; ++round) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const std::pair<int, int> key = std::minmax(a, b);
            const auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            const int id = static_cast<int>(verts.size());
            verts.push_back(0.5 * (verts[a] + verts[b]));
            midpoint.emplace(key, id);
            return id;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    Shape s;
    s.f.resize(3, static_cast<int>(verts.size()));
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) s.f.col(i) = verts[i].normalized();
    s.surface = build_surface(faces, static_cast<int>(verts.size()));
    return s;
}

Shape uv_sphere(int segments, int rings) {
    const int nv = segments * (rings - 1) + 2;
    Shape s;
    s.f.resize(3, nv);
    const int north = nv - 2, south = nv - 1;
    s.f.col(north) = Eigen::Vector3d(0, 0, 1);
    s.f.col(south) = Eigen::Vector3d(0, 0, -1);
    auto vid = [&](int ring, int seg) { return ring * segments + (seg % segments); };
    for (int ring = 0; ring < rings - 1; ++ring) {
        const double theta = kPi * (ring + 1) / rings;
        for (int seg = 0; seg < segments; ++seg) {
            const double phi = 2.0 * kPi * seg / segments;
            s.f.col(vid(ring, seg)) = Eigen::Vector3d(
                std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
        }
    }
    std::vector<std::array<int, 3>> faces;
    for (int seg = 0; seg < segments; ++seg) {
        faces.push_back({north, vid(0, seg), vid(0, seg + 1)});
        faces.push_back({south, vid(rings - 2, seg + 1), vid(rings - 2, seg)});
    }
    for (int ring = 0; ring + 1 < rings - 1; ++ring)
        for (int seg = 0; seg < segments; ++seg) {
            faces.push_back({vid(ring, seg), vid(ring + 1, seg), vid(ring + 1, seg + 1)});
            faces.push_back({vid(ring, seg), vid(ring + 1, seg + 1), vid(ring, seg + 1)});
        }
    s.surface = build_surface(faces, nv);
    return s;
}

Shape disk_mesh(int segments, int rings) {
    const int nv = 1 + segments * rings;
    Shape s;
    s.f.resize(3, nv);
    s.f.col(0) = Eigen::Vector3d::Zero();
    auto vid = [&](int ring, int seg) { return 1 + ring * segments + (seg % segments); };
    for (int ring = 0; ring < rings; ++ring) {
        const double r = static_cast<double>(ring + 1) / rings;
        for (int seg = 0; seg < segments; ++seg) {
            const double phi = 2.0 * kPi * seg / segments;
            s.f.col(vid(ring, seg)) = Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), 0);
        }
    }
    std::vector<std::array<int, 3>> faces;
    for (int seg = 0; seg < segments; ++seg) faces.push_back({0, vid(0, seg), vid(0, seg + 1)});
    for (int ring = 0; ring + 1 < rings; ++ring)
        for (int seg = 0; seg < segments; ++seg) {
            faces.push_back({vid(ring, seg), vid(ring + 1, seg), vid(ring + 1, seg + 1)});
            faces.push_back({vid(ring, seg), vid(ring + 1, seg + 1), vid(ring, seg + 1)});
        }
    s.surface = build_surface(faces, nv);
    return s;
}

Shape annulus_mesh(int segments, int rows, double r0, double r1) {
    const int nv = segments * (rows + 1);
    Shape s;
    s.f.resize(3, nv);
    auto vid = [&](int row, int seg) { return row * segments + (seg % segments); };
    for (int row = 0; row <= rows; ++row) {
        const double r = r0 + (r1 - r0) * row / rows;
        for (int seg = 0; seg < segments; ++seg) {
            const double phi = 2.0 * kPi * seg / segments;
            s.f.col(vid(row, seg)) = Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), 0);
        }
    }
    std::vector<std::array<int, 3>> faces;
    for (int row = 0; row < rows; ++row)
        for (int seg = 0; seg < segments; ++seg) {
            faces.push_back({vid(row, seg), vid(row + 1, seg), vid(row + 1, seg + 1)});
            faces.push_back({vid(row, seg), vid(row + 1, seg + 1), vid(row, seg + 1)});
        }
    s.surface = build_surface(faces, nv);
    return s;
}

} // namespace cws
