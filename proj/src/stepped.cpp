#include "stepped.hpp"
#include <algorithm>
#include <cmath>
#include "json.hpp"

namespace c2l {

std::string pt_str(const Pt& p) {
    return std::to_string(p[0]) + "," + std::to_string(p[1]) + "," + std::to_string(p[2]);
}

std::string face_name(const FaceKey& f) { return pt_str(f.low) + ";" + std::to_string(f.normal + 1); }

bool SteppedSolid::has_cube(const Pt& p) const {
    if (p[0] > -1 || p[1] > -1 || p[2] > -1) return false;
    return !removed.count(p);
}

bool SteppedSolid::has_point(const Pt& x) const { return has_cube(x - Pt{1, 1, 1}); }

SteppedSolid SteppedSolid::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(Err::Input, std::string("bad solid JSON: ") + e.what());
    }
    if (!j.contains("removed") || !j["removed"].is_array()) fail(Err::Input, "solid needs a 'removed' array");
    SteppedSolid u;
    for (auto& c : j["removed"]) {
        if (!c.is_array() || c.size() != 3) fail(Err::Input, "removed cubes are [i,j,k] triples");
        Pt p{c[0].get<int>(), c[1].get<int>(), c[2].get<int>()};
        if (p[0] > -1 || p[1] > -1 || p[2] > -1) fail(Err::Input, "removed cube " + pt_str(p) + " lies outside the negative corner");
        u.removed.insert(p);
    }
    return u;
}

std::string SteppedSolid::to_json() const {
    nlohmann::json j;
    j["removed"] = nlohmann::json::array();
    for (auto& p : removed) j["removed"].push_back(p);
    return j.dump();
}

Regularity is_regular(const SteppedSolid& u) {
    Regularity r;
    r.regular = true;
    double m = 0;
    for (auto& p : u.removed) {
        m = std::max(m, std::sqrt(double(p[0]) * p[0] + double(p[1]) * p[1] + double(p[2]) * p[2]));
        for (int k = 0; k < 3; ++k) {
            Pt q = p + unit(k);
            if (q[k] <= -1 && !u.removed.count(q)) r.regular = false;
        }
    }
    r.radius = m + 2;
    return r;
}

std::vector<Pt> addable_positions(const SteppedSolid& u) {
    std::vector<Pt> out;
    for (auto& p : u.removed) {
        bool ok = true;
        for (int k = 0; k < 3; ++k)
            if (u.removed.count(p - unit(k))) ok = false;
        if (ok) out.push_back(p);
    }
    return out;
}

std::vector<Pt> fill_order(const SteppedSolid& u) {
    std::vector<Pt> out(u.removed.begin(), u.removed.end());
    std::stable_sort(out.begin(), out.end(), [](const Pt& a, const Pt& b) { return height(a) < height(b); });
    return out;
}

std::vector<Pt> random_fill_order(const SteppedSolid& u, std::mt19937& rng) {
    SteppedSolid v = u;
    std::vector<Pt> out;
    while (!v.removed.empty()) {
        auto a = addable_positions(v);
        auto p = a[rng() % a.size()];
        out.push_back(p);
        v.removed.erase(p);
    }
    return out;
}

int SurfaceGraph::vertex(const Pt& x) const {
    auto it = vindex.find(x);
    return it == vindex.end() ? -1 : it->second;
}

int SurfaceGraph::face(const FaceKey& f) const {
    auto it = findex.find(f);
    return it == findex.end() ? -1 : it->second;
}

namespace {

bool is_black(const Pt& x) { return (height(x) % 2 + 2) % 2 == 0; }

std::array<double, 2> project(const Pt& x) {
    return {(x[0] - x[1]) / std::sqrt(2.0), (x[0] + x[1] - 2.0 * x[2]) / std::sqrt(6.0)};
}

bool in_box(const Pt& x, int r) {
    for (int k = 0; k < 3; ++k)
        if (x[k] > 0 || x[k] < -r) return false;
    return true;
}

}

SurfaceGraph surface_box(const SteppedSolid& u, int radius) {
    SurfaceGraph s;
    s.solid = u;
    s.radius = radius;
    std::vector<Vertex> vs;
    for (int i = -radius; i <= 0; ++i)
        for (int j = -radius; j <= 0; ++j)
            for (int k = -radius; k <= 0; ++k) {
                Pt x{i, j, k};
                if (!u.has_point(x) || u.has_point(x + Pt{1, 1, 1})) continue;
                s.vindex[x] = int(vs.size());
                s.points.push_back(x);
                auto p = project(x);
                vs.push_back({pt_str(x), is_black(x), p[0], p[1]});
            }
    std::vector<Face> fs;
    for (int i = -radius; i <= 0; ++i)
        for (int j = -radius; j <= 0; ++j)
            for (int k = -radius; k <= 0; ++k)
                for (int n = 0; n < 3; ++n) {
                    Pt x{i, j, k};
                    if (!u.has_cube(x - unit(n)) || u.has_cube(x)) continue;
                    int a = (n + 1) % 3, b = (n + 2) % 3;
                    if (a > b) std::swap(a, b);
                    std::vector<Pt> c{x, x + unit(a), x + unit(a) + unit(b), x + unit(b)};
                    bool inside = true;
                    for (auto& q : c) inside = inside && in_box(q, radius);
                    if (!inside) continue;
                    double area = 0;
                    for (int t = 0; t < 4; ++t) {
                        auto p = project(c[t]), q = project(c[(t + 1) % 4]);
                        area += p[0] * q[1] - p[1] * q[0];
                    }
                    if (area > 0) std::swap(c[1], c[3]);
                    // x is the lowest corner when it is black, otherwise the black corner along the first direction
                    Pt start = is_black(x) ? x : x + unit(a);
                    std::rotate(c.begin(), std::find(c.begin(), c.end(), start), c.end());
                    FaceKey key{x, n};
                    Face f;
                    f.id = face_name(key);
                    for (auto& q : c) f.corners.push_back(s.vindex.at(q));
                    s.findex[key] = int(fs.size());
                    s.keys.push_back(key);
                    fs.push_back(std::move(f));
                }
    s.graph = QuadGraph::build(std::move(vs), std::move(fs));
    return s;
}

int default_window(const SteppedSolid& u) { return int(std::ceil(is_regular(u).radius)) + 1; }

SurfaceGraph surface_graph(const SteppedSolid& u, int radius) {
    auto r = is_regular(u);
    if (!r.regular) fail(Err::Input, "stepped solid is not monotone");
    if (radius < r.radius) fail(Err::WindowTooSmall, "window radius must be at least " + std::to_string(r.radius));
    return surface_box(u, radius);
}

SurfaceGraph flip_vertex(const SurfaceGraph& s, const Pt& x) {
    int v = s.vertex(x);
    if (v < 0) fail(Err::NotFlippable, pt_str(x) + " is not a vertex of the surface");
    int faces = 0;
    for (auto& f : s.graph.faces)
        for (int c : f.corners) faces += c == v;
    SteppedSolid u = s.solid;
    if (faces == 3 && u.removed.count(x) && !u.has_point(x + Pt{1, 1, 1})) {
        bool ok = true;
        for (int k = 0; k < 3; ++k) ok = ok && !u.removed.count(x - unit(k));
        if (ok) {
            u.removed.erase(x);
            return surface_box(u, s.radius);
        }
    }
    Pt q = x - Pt{1, 1, 1};
    if (faces == 3 && u.has_cube(q)) {
        bool ok = true;
        for (int k = 0; k < 3; ++k) ok = ok && !u.has_cube(q + unit(k));
        if (ok) {
            u.removed.insert(q);
            return surface_box(u, s.radius);
        }
    }
    fail(Err::NotFlippable, "vertex " + pt_str(x) + " is not a degree-3 cube corner");
}

std::vector<SteppedSolid> all_solids(int max_cubes) {
    std::vector<SteppedSolid> level{SteppedSolid{}}, out{SteppedSolid{}};
    for (int n = 1; n <= max_cubes; ++n) {
        std::set<std::set<Pt>> next;
        for (auto& u : level) {
            // cubes that can be removed keeping monotonicity: maximal cubes of U near the corner
            for (int i = -n; i <= -1; ++i)
                for (int j = -n; j <= -1; ++j)
                    for (int k = -n; k <= -1; ++k) {
                        Pt p{i, j, k};
                        if (!u.has_cube(p)) continue;
                        bool top = true;
                        for (int d = 0; d < 3; ++d) top = top && !u.has_cube(p + unit(d));
                        if (!top) continue;
                        auto r = u.removed;
                        r.insert(p);
                        next.insert(r);
                    }
        }
        level.clear();
        for (auto& r : next) level.push_back(SteppedSolid{r});
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

SteppedSolid random_solid(int cubes, std::mt19937& rng) {
    SteppedSolid u;
    for (int n = 0; n < cubes; ++n) {
        std::vector<Pt> cand;
        for (int i = -n - 1; i <= -1; ++i)
            for (int j = -n - 1; j <= -1; ++j)
                for (int k = -n - 1; k <= -1; ++k) {
                    Pt p{i, j, k};
                    if (!u.has_cube(p)) continue;
                    bool top = true;
                    for (int d = 0; d < 3; ++d) top = top && !u.has_cube(p + unit(d));
                    if (top) cand.push_back(p);
                }
        u.removed.insert(cand[rng() % cand.size()]);
    }
    return u;
}

SteppedSolid slab_solid(int n) {
    SteppedSolid u;
    for (int i = -n; i <= -1; ++i)
        for (int j = -n; j <= -1; ++j)
            for (int k = -n; k <= -1; ++k)
                if (height({i, j, k}) > -n) u.removed.insert({i, j, k});
    return u;
}

std::string surface_json(const SurfaceGraph& s) {
    auto j = nlohmann::ordered_json::parse(s.graph.to_json());
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (auto& p : s.points) pts.push_back(p);
    j["points"] = pts;
    j["window"] = s.radius;
    return j.dump();
}

}
