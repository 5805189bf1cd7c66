#pragma once
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>
#include "field.hpp"

namespace c2l {

struct Vertex {
    std::string id;
    bool black = true;
    double x = 0, y = 0;
};

// corners are (x, u, y, v) in clockwise order; edge k joins corner k and corner k+1
struct Face {
    std::string id;
    std::vector<int> corners;
    std::vector<int> edges;
};

struct EdgeInc {
    int face, slot;
};

class QuadGraph {
public:
    std::vector<Vertex> vertices;
    std::vector<Face> faces;
    std::vector<std::array<int, 2>> edge_ends;
    std::vector<std::vector<EdgeInc>> edge_faces;
    bool torus = false;

    // builds edges from vertex pairs, or from explicit per-face edge ids when given
    static QuadGraph build(std::vector<Vertex> vs, std::vector<Face> fs,
                           const std::vector<std::vector<std::string>>& edge_names = {});

    int n_edges() const { return int(edge_ends.size()); }
    bool is_external(int e) const { return edge_faces[e].size() == 1; }
    std::vector<int> external_edges() const;
    int vertex_index(const std::string& id) const;
    int face_index(const std::string& id) const;
    std::vector<int> degrees() const;
    int neighbour(int face, int slot) const;  // face across edge slot, -1 on the boundary

    std::string to_json() const;
    static QuadGraph from_json(const std::string& text);

private:
    std::map<std::string, int> vindex_, findex_;
};

struct ValidationReport {
    bool valid = true;
    long euler = 0;
    std::vector<std::string> violations;
};

ValidationReport validate(const QuadGraph& g);

struct TrainTrack {
    std::vector<int> edges;
    bool is_loop = false;
};

std::vector<TrainTrack> train_tracks(const QuadGraph& g);

struct TrackCensus {
    int tracks = 0, ext_edges = 0, int_edges = 0, vertices = 0, faces = 0;
    bool pairs_ok = false, edges_ok = false, kernel_ok = false;
};

TrackCensus track_census(const QuadGraph& g);

std::vector<mpq_class> phi(const QuadGraph& g, const std::vector<mpq_class>& h);

struct FaceWeights {
    std::array<double, 5> w{};
    std::optional<std::array<QE, 5>> exact;

    static FaceWeights from_exact(const std::array<QE, 5>& q);
    static FaceWeights from_double(const std::array<double, 5>& d);
    static FaceWeights from_strings(const std::vector<std::string>& s);
    Value value(int type) const { return exact ? Value((*exact)[type - 1]) : Value::inexact(w[type - 1]); }
};

std::vector<FaceWeights> weights_from_json(const QuadGraph& g, const std::string& text);

// weights of the ten pictures coming from a vertex parametrization
std::array<double, 5> param_weights(double gx, double gu, double gy, double gv);

struct Parametrization {
    std::vector<double> g;
    std::vector<double> scale;                   // input weight = scale * parametrized weight
    std::vector<std::vector<mpq_class>> expo;    // log g_v = sum_f expo[v][f] log R_f
    std::vector<double> ratio;                   // R_f
    bool exact_ok = false;                       // phi(expo) is the identity
};

Parametrization solve_parametrization(const QuadGraph& g, const std::vector<FaceWeights>& w);

std::vector<int> degree2_boundary(const QuadGraph& g);

}
