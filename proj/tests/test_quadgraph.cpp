#include "doctest.h"
#include <random>
#include "common.hpp"
#include "ffdimers.hpp"
#include "quadgraph.hpp"

using namespace c2l;

TEST_CASE("validation of small quadrangulations") {
    auto g = QuadGraph::from_json(fixture("grid2x2.json"));
    auto r = validate(g);
    CHECK(r.valid);
    CHECK(g.vertices.size() == 9);
    CHECK(g.n_edges() == 12);
    CHECK(r.euler == 1);
    CHECK(validate(QuadGraph::from_json(fixture("single_quad.json"))).valid);
    auto s = validate(QuadGraph::from_json(fixture("cube_sphere.json")));
    CHECK(s.valid);
    CHECK(s.euler == 2);
    auto tri = QuadGraph::from_json(
        R"({"vertices":[{"id":"a","color":"black"},{"id":"b","color":"white"},{"id":"c","color":"black"}],
            "faces":[{"id":"t","corners":["a","b","c"]}]})");
    auto bad = validate(tri);
    CHECK_FALSE(bad.valid);
    CHECK(bad.violations[0].rfind("FaceDegree", 0) == 0);
}

TEST_CASE("train tracks") {
    auto g = QuadGraph::from_json(fixture("grid2x2.json"));
    auto t = train_tracks(g);
    CHECK(t.size() == 4);
    std::vector<int> hits(g.n_edges(), 0);
    for (auto& tr : t) {
        CHECK_FALSE(tr.is_loop);
        for (int e : tr.edges) hits[e]++;
    }
    for (int h : hits) CHECK(h == 1);
    auto q = train_tracks(QuadGraph::from_json(fixture("single_quad.json")));
    CHECK(q.size() == 2);
    for (auto& tr : q) CHECK(tr.edges.size() == 2);
    auto sphere = train_tracks(QuadGraph::from_json(fixture("cube_sphere.json")));
    for (auto& tr : sphere) CHECK(tr.is_loop);
}

TEST_CASE("track census") {
    auto c2 = track_census(QuadGraph::from_json(fixture("grid2x2.json")));
    CHECK(c2.tracks == 4);
    CHECK(c2.ext_edges == 8);
    CHECK((c2.pairs_ok && c2.edges_ok && c2.kernel_ok));
    auto c3 = track_census(QuadGraph::from_json(fixture("grid3x3.json")));
    CHECK(c3.tracks == 6);
    CHECK(c3.ext_edges == 12);
    CHECK((c3.pairs_ok && c3.edges_ok && c3.kernel_ok));
    auto c1 = track_census(QuadGraph::from_json(fixture("single_quad.json")));
    CHECK(c1.tracks == 2);
    CHECK(c1.kernel_ok);
    CHECK_THROWS_AS(track_census(QuadGraph::from_json(fixture("cube_sphere.json"))), Error);
}

TEST_CASE("phi is linear and kills constants") {
    auto g = QuadGraph::from_json(fixture("grid3x3.json"));
    int V = int(g.vertices.size());
    for (auto x : phi(g, std::vector<mpq_class>(V, 0))) CHECK(x == 0);
    for (auto x : phi(g, std::vector<mpq_class>(V, 7))) CHECK(x == 0);
    std::vector<mpq_class> ind(V, 0);
    int v = g.vertex_index("1_1");
    ind[v] = 1;
    auto img = phi(g, ind);
    for (size_t f = 0; f < g.faces.size(); ++f) {
        auto& c = g.faces[f].corners;
        bool touches = std::find(c.begin(), c.end(), v) != c.end();
        CHECK(img[f] == (touches ? 1 : 0));
    }
    std::mt19937 rng(5);
    for (int t = 0; t < 20; ++t) {
        std::vector<mpq_class> a(V), b(V), s(V);
        for (int i = 0; i < V; ++i) {
            a[i] = int(rng() % 11) - 5;
            b[i] = mpq_class(int(rng() % 7), 3);
            b[i].canonicalize();
            s[i] = a[i] + b[i];
        }
        auto pa = phi(g, a), pb = phi(g, b), ps = phi(g, s);
        for (size_t f = 0; f < pa.size(); ++f) CHECK(ps[f] == pa[f] + pb[f]);
    }
}

TEST_CASE("parametrization round trip") {
    auto g = QuadGraph::from_json(fixture("grid3x3.json"));
    std::mt19937 rng(9);
    std::vector<double> g0;
    for (size_t i = 0; i < g.vertices.size(); ++i) g0.push_back(0.5 + (rng() % 100) / 40.0);
    std::vector<FaceWeights> w;
    for (auto& f : g.faces) {
        auto& c = f.corners;
        w.push_back(FaceWeights::from_double(param_weights(g0[c[0]], g0[c[1]], g0[c[2]], g0[c[3]])));
    }
    auto p = solve_parametrization(g, w);
    CHECK(p.exact_ok);
    for (size_t f = 0; f < g.faces.size(); ++f) {
        auto& c = g.faces[f].corners;
        double r0 = g0[c[0]] * g0[c[2]] / (g0[c[1]] * g0[c[3]]);
        double r1 = p.g[c[0]] * p.g[c[2]] / (p.g[c[1]] * p.g[c[3]]);
        CHECK(r1 == doctest::Approx(r0).epsilon(1e-12));
        auto pw = param_weights(p.g[c[0]], p.g[c[1]], p.g[c[2]], p.g[c[3]]);
        for (int i = 0; i < 5; ++i) CHECK(w[f].w[i] == doctest::Approx(p.scale[f] * pw[i]).epsilon(1e-10));
    }
}

TEST_CASE("parametrization special cases") {
    auto g = QuadGraph::from_json(fixture("grid2x2.json"));
    std::vector<FaceWeights> half(4, FaceWeights::from_strings({"1/2", "1/2", "1/2*sqrt(2)", "1/2*sqrt(2)", "1/2"}));
    auto p = solve_parametrization(g, half);
    for (double x : p.g) CHECK(x == doctest::Approx(1));
    auto q = QuadGraph::from_json(fixture("single_quad.json"));
    // w1/w5 = 2 means a = 2b
    FFParams ff{Value(1), Value(QE(mpq_class(2)) / QE::sqrt_of(5)), Value(QE(1) / QE::sqrt_of(5))};
    auto sol = solve_parametrization(q, {ff_compose(ff)});
    auto& c = q.faces[0].corners;
    CHECK(sol.g[c[0]] * sol.g[c[2]] == doctest::Approx(4 * sol.g[c[1]] * sol.g[c[3]]));
    std::vector<FaceWeights> bad(1, FaceWeights::from_strings({"1", "1", "1", "1", "1"}));
    CHECK_THROWS_AS(solve_parametrization(q, bad), Error);
}

TEST_CASE("degree two boundary vertices") {
    auto q = QuadGraph::from_json(fixture("single_quad.json"));
    CHECK(degree2_boundary(q).size() == 4);
    auto g = QuadGraph::from_json(fixture("grid2x2.json"));
    auto d = degree2_boundary(g);
    CHECK(d.size() == 4);
    for (int v : d) {
        auto& x = g.vertices[v];
        CHECK(((x.x == 0 || x.x == 2) && (x.y == 0 || x.y == 2)));
    }
    CHECK(degree2_boundary(QuadGraph::from_json(fixture("strip3.json"))).size() >= 3);
}
