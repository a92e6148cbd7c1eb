#include "cws/surface.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <string>

namespace cws {

int SimplicialSurface::edge_index(int i, int j) const {
    const int a = std::min(i, j), b = std::max(i, j);
    auto it = std::lower_bound(edges.begin(), edges.end(), std::array<int, 2>{a, b});
    if (it == edges.end() || (*it)[0] != a || (*it)[1] != b) return -1;
    return static_cast<int>(it - edges.begin());
}

int SimplicialSurface::interior_vertex_count() const {
    int n = 0;
    for (int v = 0; v < vertex_count; ++v)
        if (!vertex_on_boundary[v]) ++n;
    return n;
}

int SimplicialSurface::interior_edge_count() const {
    int n = 0;
    for (int e = 0; e < ne(); ++e)
        if (!edge_on_boundary[e]) ++n;
    return n;
}

SimplicialSurface build_surface(const std::vector<std::array<int, 3>>& faces, int vertex_count) {
    SimplicialSurface s;
    s.vertex_count = vertex_count;
    s.faces = faces;

    for (const auto& f : faces)
        for (int c = 0; c < 3; ++c) {
            if (f[c] < 0 || f[c] >= vertex_count)
                throw Error("face vertex index out of range: " + std::to_string(f[c]));
            if (f[c] == f[(c + 1) % 3])
                throw Error("degenerate face with repeated vertex " + std::to_string(f[c]));
        }

    // Canonical edge list: sorted unique (min, max) pairs.
    std::vector<std::array<int, 2>> all;
    all.reserve(faces.size() * 3);
    for (const auto& f : faces)
        for (int c = 0; c < 3; ++c)
            all.push_back({std::min(f[c], f[(c + 1) % 3]), std::max(f[c], f[(c + 1) % 3])});
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    s.edges = std::move(all);

    const int ne = s.ne();
    s.face_left.assign(ne, -1);
    s.face_right.assign(ne, -1);
    s.opp_left.assign(ne, -1);
    s.opp_right.assign(ne, -1);
    s.face_edges.assign(faces.size(), {-1, -1, -1});

    auto edge_name = [&](int e) {
        return "(" + std::to_string(s.edges[e][0]) + "," + std::to_string(s.edges[e][1]) + ")";
    };

    std::vector<int> incidence(ne, 0);
    for (int fi = 0; fi < s.nf(); ++fi) {
        const auto& f = faces[fi];
        for (int c = 0; c < 3; ++c) {
            const int i = f[c], j = f[(c + 1) % 3], k = f[(c + 2) % 3];
            const int e = s.edge_index(i, j);
            s.face_edges[fi][c] = e;
            if (++incidence[e] > 2) throw NonManifoldEdge("edge " + edge_name(e) + " has more than two incident faces");
            if (i < j) {
                if (s.face_left[e] != -1)
                    throw InconsistentOrientation("halfedge (" + std::to_string(i) + "," + std::to_string(j) + ") appears twice");
                s.face_left[e] = fi;
                s.opp_left[e] = k;
            } else {
                if (s.face_right[e] != -1)
                    throw InconsistentOrientation("halfedge (" + std::to_string(i) + "," + std::to_string(j) + ") appears twice");
                s.face_right[e] = fi;
                s.opp_right[e] = k;
            }
        }
    }

    s.edge_on_boundary.assign(ne, 0);
    for (int e = 0; e < ne; ++e)
        if (incidence[e] < 2) s.edge_on_boundary[e] = 1;

    s.vertex_on_boundary.assign(vertex_count, 0);
    s.vertex_edges.assign(vertex_count, {});
    s.vertex_faces.assign(vertex_count, {});
    for (int e = 0; e < ne; ++e) {
        s.vertex_edges[s.edges[e][0]].push_back(e);
        s.vertex_edges[s.edges[e][1]].push_back(e);
        if (s.edge_on_boundary[e]) {
            s.vertex_on_boundary[s.edges[e][0]] = 1;
            s.vertex_on_boundary[s.edges[e][1]] = 1;
        }
    }
    for (int fi = 0; fi < s.nf(); ++fi)
        for (int v : faces[fi]) s.vertex_faces[v].push_back(fi);

    for (int v = 0; v < vertex_count; ++v)
        if (s.vertex_faces[v].empty()) throw IsolatedVertex("vertex " + std::to_string(v) + " has no incident face");

    // Label boundary components by flooding along boundary edges.
    s.boundary_component.assign(vertex_count, 0);
    int b = 0;
    for (int v = 0; v < vertex_count; ++v) {
        if (!s.vertex_on_boundary[v] || s.boundary_component[v] != 0) continue;
        ++b;
        std::queue<int> q;
        q.push(v);
        s.boundary_component[v] = b;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int e : s.vertex_edges[u]) {
                if (!s.edge_on_boundary[e]) continue;
                const int w = s.edges[e][0] == u ? s.edges[e][1] : s.edges[e][0];
                if (s.boundary_component[w] == 0) {
                    s.boundary_component[w] = b;
                    q.push(w);
                }
            }
        }
    }
    s.boundary_components = b;
    s.euler_characteristic = vertex_count - ne + s.nf();
    s.genus = (2 - b - s.euler_characteristic) / 2;
    return s;
}

} // namespace cws
