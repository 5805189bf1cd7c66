#pragma once
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>
#include "loopmodel.hpp"
#include "quadgraph.hpp"

namespace c2l {

bool ff_check(const FaceWeights& w);

struct FFParams {
    Value lambda, a, b;
};

FFParams ff_decompose(const FaceWeights& w);
FaceWeights ff_compose(const FFParams& p);

struct DimerEdge {
    int a, b;                 // G^Q vertices, b = -1 for a dangling road
    Value w;
    bool road;
    int face = -1;            // owning face for city edges
    int edge = -1;            // edge of G for roads
    int sx = 0, sy = 0;       // cell of b relative to a on a torus
};

// vertex 4f+k is the city vertex of face f sitting on its edge slot k
struct DimerGraph {
    int n_vertices = 0;
    std::vector<DimerEdge> edges;
    std::vector<Value> lambda;   // per face
    std::vector<int> road_of;    // G edge -> road index

    bool black(int v) const { return v % 4 % 2 == 0; }
    int cities() const { return n_vertices / 4; }
    int roads() const;
    int dangling() const;
};

DimerGraph build_gq(const QuadGraph& g, const std::vector<FFParams>& p);
DimerGraph build_gq(const QuadGraph& g, const std::vector<FaceWeights>& w);

// matchings as lists of edge indices of full (non-dangling) edges
void enumerate_matchings(const DimerGraph& d, const std::function<void(const std::vector<int>&)>& out);
Value dimer_partition_bruteforce(const DimerGraph& d);

struct CorrespondenceReport {
    Value z_loop, lambda_prod, z_dim, rhs;
    bool holds = false;
    bool exact = false;
};

CorrespondenceReport verify_correspondence(const QuadGraph& g, const std::vector<FaceWeights>& w);

struct MarginalReport {
    int classes = 0;
    int mismatches = 0;
    bool exact = false;
    std::vector<std::pair<Value, Value>> sides;
};

// groups loop configurations and double-dimer pairs by their blue paths
MarginalReport verify_blue_marginal(const QuadGraph& g, const std::vector<FaceWeights>& w);

Value road_probability(const DimerGraph& d, int edge_index);

DimerGraph gauge_transform(const DimerGraph& d, const std::vector<Value>& gauge);

struct DimerFace {
    std::vector<int> vertices;   // clockwise
    std::vector<int> edges;      // edge i joins vertices i and i+1
};

// city faces and the faces around inner vertices of G
std::vector<DimerFace> dimer_faces(const QuadGraph& g, const DimerGraph& d);

struct Kasteleyn {
    std::vector<int> sign;   // +1 when the edge points from its white to its black end
};

Kasteleyn kasteleyn_orientation(const QuadGraph& g, const DimerGraph& d);
// faces whose clockwise count is even
std::vector<int> kasteleyn_violations(const QuadGraph& g, const DimerGraph& d, const Kasteleyn& k);
std::complex<double> kasteleyn_det(const DimerGraph& d, const Kasteleyn& k, std::complex<double> z = 1,
                                   std::complex<double> w = 1);

struct TorusDomain {
    QuadGraph graph;
    std::vector<FaceWeights> weights;
    DimerGraph gq;
    Kasteleyn orient;
    bool shipped_orientation = false;

    static TorusDomain from_json(const std::string& text);
    std::string orientation_json() const;
};

std::complex<double> char_poly_eval(const TorusDomain& t, std::complex<double> z, std::complex<double> w);
double free_energy(const TorusDomain& t, int grid);
double lobachevsky(double theta);
double lobachevsky_free_energy(double theta);

}
