#include "doctest.h"
#include <random>
#include "common.hpp"
#include "stepped.hpp"

using namespace c2l;

namespace {

SteppedSolid solid(std::vector<Pt> ps) {
    SteppedSolid u;
    u.removed.insert(ps.begin(), ps.end());
    return u;
}

}

TEST_CASE("regularity and radius") {
    auto r0 = is_regular(SteppedSolid{});
    CHECK(r0.regular);
    CHECK(r0.radius == 2);
    CHECK(is_regular(solid({{-1, -1, -1}})).regular);
    CHECK_FALSE(is_regular(solid({{-2, -1, -1}})).regular);
    CHECK(is_regular(solid({{-1, -1, -1}, {-2, -1, -1}})).regular);
    CHECK_THROWS_AS(SteppedSolid::from_json(R"({"removed":[[0,-1,-1]]})"), Error);
    CHECK(SteppedSolid::from_json(fixture("one_cube.json")).removed.size() == 1);
}

TEST_CASE("addable positions and fill orders") {
    CHECK(addable_positions(SteppedSolid{}).empty());
    CHECK(addable_positions(solid({{-1, -1, -1}})) == std::vector<Pt>{{-1, -1, -1}});
    CHECK(addable_positions(solid({{-1, -1, -1}, {-2, -1, -1}})) == std::vector<Pt>{{-2, -1, -1}});
    auto slab = slab_solid(5);
    CHECK(slab.removed.size() == 4);
    auto order = fill_order(slab);
    for (size_t i = 1; i < order.size(); ++i) CHECK(height(order[i - 1]) <= height(order[i]));
    std::mt19937 rng(5);
    for (int t = 0; t < 30; ++t) {
        auto u = random_solid(1 + int(rng() % 6), rng);
        REQUIRE(is_regular(u).regular);
        CHECK(!addable_positions(u).empty());
        for (auto ord : {fill_order(u), random_fill_order(u, rng)}) {
            auto v = u;
            for (auto& p : ord) {
                auto a = addable_positions(v);
                CHECK(std::find(a.begin(), a.end(), p) != a.end());
                v.removed.erase(p);
                CHECK(is_regular(v).regular);
            }
            CHECK(v.removed.empty());
        }
    }
    std::vector<size_t> counts;
    auto all = all_solids(4);
    for (int n = 0; n <= 4; ++n) counts.push_back(std::count_if(all.begin(), all.end(), [&](auto& u) { return int(u.removed.size()) == n; }));
    CHECK(counts == std::vector<size_t>{1, 1, 3, 6, 13});
}

TEST_CASE("surface graphs") {
    auto flat = surface_graph(SteppedSolid{}, 3);
    CHECK(validate(flat.graph).valid);
    CHECK(flat.vertex({0, 0, 0}) >= 0);
    CHECK(flat.graph.vertices[flat.vertex({0, 0, 0})].black);
    CHECK(flat.graph.faces.size() == 27);
    for (auto& p : flat.points) CHECK(std::max({p[0], p[1], p[2]}) == 0);
    CHECK_THROWS_AS(surface_graph(solid({{-1, -1, -1}}), 3), Error);
    auto one = surface_graph(solid({{-1, -1, -1}}), 4);
    CHECK(validate(one.graph).valid);
    CHECK(one.vertex({0, 0, 0}) < 0);
    CHECK(one.vertex({-1, -1, -1}) >= 0);
    for (int k = 0; k < 3; ++k) CHECK(one.face({{-1, -1, -1}, k}) >= 0);
    CHECK(one.graph.faces.size() == surface_graph(SteppedSolid{}, 4).graph.faces.size());
    std::mt19937 rng(9);
    for (int t = 0; t < 20; ++t) {
        auto u = random_solid(1 + int(rng() % 8), rng);
        auto s = surface_graph(u, default_window(u));
        auto rep = validate(s.graph);
        CHECK(rep.valid);
        auto c = track_census(s.graph);
        CHECK(c.pairs_ok);
        CHECK(c.edges_ok);
    }
}

TEST_CASE("cube flips") {
    auto flat = surface_graph(SteppedSolid{}, 4);
    auto one = flip_vertex(flat, {0, 0, 0});
    CHECK(one.solid.removed == std::set<Pt>{{-1, -1, -1}});
    auto back = flip_vertex(one, {-1, -1, -1});
    CHECK(back.solid.removed.empty());
    CHECK(back.graph.to_json() == flat.graph.to_json());
    CHECK_THROWS_AS(flip_vertex(flat, {-1, 0, 0}), Error);
    CHECK_THROWS_AS(flip_vertex(flat, {5, 0, 0}), Error);
}
