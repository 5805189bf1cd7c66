#include "doctest.h"
#include <map>
#include "common.hpp"
#include "loopmodel.hpp"

using namespace c2l;

namespace {

std::vector<FaceWeights> unit_weights(const QuadGraph& g, std::array<int, 5> w) {
    std::array<QE, 5> q;
    for (int i = 0; i < 5; ++i) q[i] = QE(w[i]);
    return std::vector<FaceWeights>(g.faces.size(), FaceWeights::from_exact(q));
}

}

TEST_CASE("local pictures") {
    for (int p = 0; p < 10; ++p) {
        auto& pic = picture(p);
        for (int s = 0; s < 4; ++s) {
            CHECK(pic.partner[pic.partner[s]] == s);
            CHECK(pic.colour[s] == pic.colour[pic.partner[s]]);
        }
        CHECK(picture_index(pic.name) == p);
        CHECK(picture_from(pic.pairing, pic.colour) == p);
    }
}

TEST_CASE("configuration counts") {
    auto q = QuadGraph::from_json(fixture("single_quad.json"));
    int n = 0;
    enumerate_configs(q, BoundarySpec{}, [&](const LoopConfig&) { ++n; });
    CHECK(n == 10);
    auto two = QuadGraph::from_json(fixture("two_faces.json"));
    n = 0;
    enumerate_configs(two, BoundarySpec{}, [&](const LoopConfig& c) {
        CHECK(gluing_ok(two, c));
        ++n;
    });
    int brute = 0;
    for (int a = 0; a < 10; ++a)
        for (int b = 0; b < 10; ++b) brute += gluing_ok(two, {a, b});
    CHECK(n == 50);
    CHECK(brute == 50);
}

TEST_CASE("cube sphere enumeration agrees with the unpruned filter") {
    auto g = QuadGraph::from_json(fixture("cube_sphere.json"));
    BoundarySpec b;
    b.mode = BoundarySpec::ClosedSurface;
    long n = 0;
    bool parity = true;
    enumerate_configs(g, b, [&](const LoopConfig& c) {
        ++n;
        parity = parity && crossing_parity_check(g, c);
    });
    long brute = 0;
    LoopConfig c(6);
    for (int code = 0; code < 1000000; ++code) {
        int x = code;
        for (int f = 0; f < 6; ++f) {
            c[f] = x % 10;
            x /= 10;
        }
        brute += gluing_ok(g, c);
    }
    CHECK(n == brute);
    CHECK(parity);
}

TEST_CASE("loop counting") {
    auto g = QuadGraph::from_json(fixture("cube_sphere.json"));
    LoopConfig all_red(6, picture_index("1a"));
    // arcs around the four white vertices close up into one loop each
    CHECK(count_loops(g, all_red) == 4);
    LoopConfig all_blue_black(6, picture_index("2b"));
    CHECK(count_loops(g, all_blue_black) == 4);
}

TEST_CASE("weights and partition functions") {
    auto q = QuadGraph::from_json(fixture("single_quad.json"));
    auto w = unit_weights(q, {2, 3, 5, 7, 11});
    auto z = partition_function(q, w, BoundarySpec{});
    CHECK(*z.exact == QE(2 * (2 + 3 + 5 + 7 + 11)));
    BoundarySpec blue;
    blue.mode = BoundarySpec::FixedColours;
    for (int e : q.external_edges()) blue.colours[e] = Blue;
    CHECK(*partition_function(q, w, blue).exact == QE(2 + 3));
    auto cfg = LoopConfig{picture_index("3a")};
    CHECK(*weight(q, cfg, w).exact == QE(5));

    auto g = QuadGraph::from_json(fixture("cube_sphere.json"));
    LoopConfig five(6, picture_index("5a"));
    if (gluing_ok(g, five)) {
        auto w1 = unit_weights(g, {1, 1, 1, 1, 1});
        CHECK(weight(g, five, w1).num == double(1 << count_loops(g, five)));
    }
}

TEST_CASE("colour swap symmetry") {
    auto g = QuadGraph::from_json(fixture("cube_sphere.json"));
    auto w = unit_weights(g, {2, 3, 5, 7, 11});
    BoundarySpec b;
    b.mode = BoundarySpec::ClosedSurface;
    std::map<LoopConfig, double> seen;
    enumerate_configs(g, b, [&](const LoopConfig& c) { seen[c] = weight(g, c, w).num; });
    for (auto& [c, v] : seen) {
        LoopConfig s = c;
        for (auto& p : s) p ^= 1;
        REQUIRE(seen.count(s));
        CHECK(seen[s] == v);
    }
}

TEST_CASE("fixed connections") {
    auto q = QuadGraph::from_json(fixture("single_quad.json"));
    auto w = unit_weights(q, {2, 3, 5, 7, 11});
    auto spec = BoundarySpec::from_json(
        q, R"({"mode":"fixed_connections","pairs":[["f0_0:0","f0_0:2","red"],["f0_0:1","f0_0:3","blue"]]})");
    CHECK(*partition_function(q, w, spec).exact == QE(11));
}
