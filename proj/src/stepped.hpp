#pragma once
#include <array>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>
#include "quadgraph.hpp"

namespace c2l {

using Pt = std::array<int, 3>;

inline Pt operator+(const Pt& a, const Pt& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Pt operator-(const Pt& a, const Pt& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Pt unit(int k) {
    Pt e{0, 0, 0};
    e[k] = 1;
    return e;
}
inline int height(const Pt& p) { return p[0] + p[1] + p[2]; }
std::string pt_str(const Pt& p);

// U is the negative corner minus finitely many unit cubes C_p = p + [0,1]^3
struct SteppedSolid {
    std::set<Pt> removed;

    bool has_cube(const Pt& p) const;   // C_p is part of U
    bool has_point(const Pt& x) const;  // the lattice point x lies in U

    static SteppedSolid from_json(const std::string& text);
    std::string to_json() const;
};

struct Regularity {
    bool regular = false;
    double radius = 0;
};

Regularity is_regular(const SteppedSolid& u);
std::vector<Pt> addable_positions(const SteppedSolid& u);
std::vector<Pt> fill_order(const SteppedSolid& u);
std::vector<Pt> random_fill_order(const SteppedSolid& u, std::mt19937& rng);

// face spanned by the two directions other than `normal` at its lowest corner `low`
struct FaceKey {
    Pt low;
    int normal;
    auto operator<=>(const FaceKey&) const = default;
};

std::string face_name(const FaceKey& f);

struct SurfaceGraph {
    SteppedSolid solid;
    int radius = 0;
    QuadGraph graph;
    std::vector<Pt> points;      // per vertex
    std::vector<FaceKey> keys;   // per face
    std::map<Pt, int> vindex;
    std::map<FaceKey, int> findex;

    int vertex(const Pt& x) const;  // -1 when absent
    int face(const FaceKey& f) const;
};

// all faces of G(U) with corners in the box [-radius, 0]^3
SurfaceGraph surface_box(const SteppedSolid& u, int radius);
// same, but refuses windows smaller than the regularity radius
SurfaceGraph surface_graph(const SteppedSolid& u, int radius);
int default_window(const SteppedSolid& u);

// cube flip at a degree-3 vertex: removes the cube under it or adds the cube above it
SurfaceGraph flip_vertex(const SurfaceGraph& s, const Pt& x);

// every regular solid with at most `max_cubes` removed cubes, ordered by size then lexicographically
std::vector<SteppedSolid> all_solids(int max_cubes);
SteppedSolid random_solid(int cubes, std::mt19937& rng);
SteppedSolid slab_solid(int n);  // keeps exactly the cubes of height <= -n

std::string surface_json(const SurfaceGraph& s);

}
