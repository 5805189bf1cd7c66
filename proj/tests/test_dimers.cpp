#include "doctest.h"
#include <cmath>
#include <numbers>
#include <random>
#include "common.hpp"
#include "ffdimers.hpp"
#include "json.hpp"

using namespace c2l;

namespace {

FaceWeights random_ff(std::mt19937& rng) {
    // a, b from a rational point on the unit circle
    mpq_class t(int(rng() % 9) + 1, 10), lam(int(rng() % 7) + 1, int(rng() % 3) + 1);
    t.canonicalize();
    lam.canonicalize();
    mpq_class a = 2 * t / (1 + t * t), b = (1 - t * t) / (1 + t * t);
    return ff_compose({Value(QE(lam)), Value(QE(a)), Value(QE(b))});
}

TorusDomain octa(double theta) {
    auto j = nlohmann::json::parse(fixture("octa_z2.json"));
    j["theta"] = theta;
    return TorusDomain::from_json(j.dump());
}

double curve_mean(double th, int grid) {
    double c2 = std::cos(th) * std::cos(th), s2 = std::sin(th) * std::sin(th), s = 0;
    for (int k = 0; k < grid; ++k)
        for (int l = 0; l < grid; ++l) {
            double p = (2 * k + 1) * std::numbers::pi / grid, q = (2 * l + 1) * std::numbers::pi / grid;
            s += std::log(std::abs(-2 + 2 * c2 * std::cos(p) + 2 * s2 * std::cos(q)));
        }
    return s / (double(grid) * grid);
}

}

TEST_CASE("free-fermionic check and decomposition") {
    auto half = FaceWeights::from_strings({"1/2", "1/2", "1/2*sqrt(2)", "1/2*sqrt(2)", "1/2"});
    CHECK(ff_check(half));
    auto p = ff_decompose(half);
    CHECK(*p.lambda.exact == QE(1));
    CHECK(*p.a.exact == QE(1) / QE::sqrt_of(2));
    auto third = FaceWeights::from_strings({"3/4", "1/4", "1/2*sqrt(3)", "1/2", "1/4*sqrt(3)"});
    CHECK(ff_check(third));
    auto q = ff_decompose(third);
    CHECK(*q.lambda.exact == QE(1));
    CHECK(*q.a.exact == QE::sqrt_of(3) / QE(2));
    CHECK(*q.b.exact == QE(mpq_class(1, 2)));
    auto ones = FaceWeights::from_strings({"1", "1", "1", "1", "1"});
    CHECK_FALSE(ff_check(ones));
    CHECK_THROWS_AS(ff_decompose(ones), Error);
    auto pw = FaceWeights::from_double(param_weights(1, 1, 1, 1));
    CHECK(ff_check(pw));
    auto pp = ff_decompose(pw);
    CHECK(pp.lambda.num == doctest::Approx(2));
    CHECK(pp.a.num == doctest::Approx(1 / std::sqrt(2.0)));
    std::mt19937 rng(1);
    for (int i = 0; i < 20; ++i) {
        auto w = random_ff(rng);
        CHECK(ff_check(w));
        auto r = ff_compose(ff_decompose(w));
        for (int k = 0; k < 5; ++k) CHECK((*r.exact)[k] == (*w.exact)[k]);
    }
}

TEST_CASE("decorated graph counts") {
    auto g = QuadGraph::from_json(fixture("cube_sphere.json"));
    auto w = weights_from_json(g, fixture("weights_half.json"));
    auto d = build_gq(g, w);
    CHECK(d.cities() == 6);
    CHECK(d.roads() == 12);
    CHECK(d.edges.size() == 36);
    auto q = QuadGraph::from_json(fixture("single_quad.json"));
    auto dq = build_gq(q, std::vector<FaceWeights>(1, w[0]));
    CHECK(dq.cities() == 1);
    CHECK(dq.dangling() == 4);
    // a lone city: two matchings, a^2 + b^2
    CHECK(*dimer_partition_bruteforce(dq).exact == QE(1));
}

TEST_CASE("loop and dimer partition functions agree") {
    auto g = QuadGraph::from_json(fixture("cube_sphere.json"));
    auto r = verify_correspondence(g, weights_from_json(g, fixture("weights_half.json")));
    CHECK(r.exact);
    CHECK(r.holds);
    CHECK(*r.z_loop.exact == *r.rhs.exact);
    std::mt19937 rng(2);
    for (int t = 0; t < 5; ++t) {
        std::vector<FaceWeights> w;
        for (int f = 0; f < 6; ++f) w.push_back(random_ff(rng));
        auto rr = verify_correspondence(g, w);
        CHECK(rr.exact);
        CHECK(rr.holds);
    }
    auto bad = weights_from_json(g, fixture("weights_half.json"));
    bad[2] = FaceWeights::from_strings({"1", "1", "1", "1", "1"});
    CHECK_THROWS_AS(verify_correspondence(g, bad), Error);
}

TEST_CASE("blue path marginals") {
    auto g = QuadGraph::from_json(fixture("cube_sphere.json"));
    auto r = verify_blue_marginal(g, weights_from_json(g, fixture("weights_half.json")));
    CHECK(r.classes > 10);
    CHECK(r.mismatches == 0);
    CHECK(r.exact);
    std::mt19937 rng(4);
    std::vector<FaceWeights> w;
    for (int f = 0; f < 6; ++f) w.push_back(random_ff(rng));
    auto r2 = verify_blue_marginal(g, w);
    CHECK(r2.mismatches == 0);
}

TEST_CASE("road probability is one half") {
    auto g = QuadGraph::from_json(fixture("cube_sphere.json"));
    for (auto name : {"weights_half.json", "weights_third.json"}) {
        auto d = build_gq(g, weights_from_json(g, fixture(name)));
        for (size_t i = 0; i < d.edges.size(); ++i)
            if (d.edges[i].road) CHECK(*road_probability(d, int(i)).exact == QE(mpq_class(1, 2)));
        CHECK_THROWS_AS(road_probability(d, 0), Error);
    }
}

TEST_CASE("gauge transformations") {
    auto g = QuadGraph::from_json(fixture("cube_sphere.json"));
    auto d = build_gq(g, weights_from_json(g, fixture("weights_half.json")));
    auto z = *dimer_partition_bruteforce(d).exact;
    CHECK(*dimer_partition_bruteforce(gauge_transform(d, std::vector<Value>(d.n_vertices, Value(1)))).exact == z);
    std::mt19937 rng(8);
    std::vector<Value> gauge;
    QE prod(1);
    for (int v = 0; v < d.n_vertices; ++v) {
        QE x(mpq_class(int(rng() % 5) + 1, int(rng() % 4) + 1));
        gauge.push_back(Value(x));
        prod *= x;
    }
    CHECK(*dimer_partition_bruteforce(gauge_transform(d, gauge)).exact == z * prod);

    // parametrized weights, gauged by 1/sqrt(g_x g_u) at the city vertex on edge xu
    std::vector<double> gv{1.3, 0.7, 2.1, 0.9, 1.6, 0.5, 1.1, 1.9};
    std::vector<FaceWeights> pw;
    for (auto& f : g.faces) {
        auto& c = f.corners;
        pw.push_back(FaceWeights::from_double(param_weights(gv[c[0]], gv[c[1]], gv[c[2]], gv[c[3]])));
    }
    auto dp = build_gq(g, pw);
    std::vector<Value> gg;
    for (auto& f : g.faces)
        for (int k = 0; k < 4; ++k) gg.push_back(Value::inexact(1 / std::sqrt(gv[f.corners[k]] * gv[f.corners[(k + 1) % 4]])));
    auto dg = gauge_transform(dp, gg);
    for (auto& e : dg.edges) {
        if (e.road) {
            auto [a, b] = g.edge_ends[e.edge];
            CHECK(e.w.num == doctest::Approx(1 / (gv[a] * gv[b])));
        } else {
            auto& c = g.faces[e.face].corners;
            double X = std::sqrt(gv[c[0]] * gv[c[2]] + gv[c[1]] * gv[c[3]]);
            int j = e.a % 4;
            // edge j of the city sits at corner j+1 of the face
            CHECK(e.w.num == doctest::Approx(1 / (gv[c[(j + 1) % 4]] * X)));
        }
    }
}

TEST_CASE("Kasteleyn orientations") {
    auto g = QuadGraph::from_json(fixture("cube_sphere.json"));
    auto d = build_gq(g, weights_from_json(g, fixture("weights_third.json")));
    auto k = kasteleyn_orientation(g, d);
    CHECK(kasteleyn_violations(g, d, k).empty());
    CHECK(dimer_faces(g, d).size() == 14);
    CHECK(std::abs(kasteleyn_det(d, k)) == doctest::Approx(dimer_partition_bruteforce(d).num));
    Kasteleyn plain{std::vector<int>(d.edges.size(), 1)};
    CHECK_FALSE(kasteleyn_violations(g, d, plain).empty());

    auto t = octa(std::numbers::pi / 4);
    CHECK(t.shipped_orientation);
    CHECK(kasteleyn_violations(t.graph, t.gq, t.orient).empty());
    auto solved = kasteleyn_orientation(t.graph, t.gq);
    CHECK(kasteleyn_violations(t.graph, t.gq, solved).empty());
}

TEST_CASE("characteristic polynomial of the Z2 domain") {
    auto t = octa(std::numbers::pi / 4);
    CHECK(std::abs(char_poly_eval(t, 1, 1)) < 1e-12);
    CHECK(std::abs(char_poly_eval(t, -1, -1)) == doctest::Approx(4));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
    for (double th : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3, 0.3}) {
        auto d = octa(th);
        double c2 = std::cos(th) * std::cos(th), s2 = std::sin(th) * std::sin(th);
        for (int i = 0; i < 20; ++i) {
            auto z = std::polar(1.0, u(rng)), w = std::polar(1.0, u(rng));
            auto p = char_poly_eval(d, z, w);
            CHECK(std::abs(p) == doctest::Approx(std::abs(-2.0 + c2 * (z + 1.0 / z) + s2 * (w + 1.0 / w))));
            CHECK(std::abs(char_poly_eval(d, std::conj(z), std::conj(w)) - std::conj(p)) < 1e-12);
        }
    }
}

TEST_CASE("free energy quadrature") {
    for (double th : {std::numbers::pi / 6, std::numbers::pi / 4}) {
        auto t = octa(th);
        double f64 = free_energy(t, 64), f128 = free_energy(t, 128), f256 = free_energy(t, 256);
        CHECK(f64 == doctest::Approx(2 * curve_mean(th, 64)).epsilon(1e-12));
        CHECK(std::abs(f256 - f128) <= std::abs(f128 - f64));
        // the quadrature converges to four times the closed form minus ln 2
        CHECK(f256 == doctest::Approx(4 * (lobachevsky_free_energy(th) - std::log(2.0))).epsilon(1e-4));
    }
}

TEST_CASE("Lobachevsky function") {
    const double catalan = 0.915965594177219015054603514932;
    CHECK(lobachevsky(0) == 0);
    CHECK(lobachevsky(std::numbers::pi / 4) == doctest::Approx(catalan / 2).epsilon(1e-12));
    CHECK(lobachevsky(std::numbers::pi / 2) == doctest::Approx(0).scale(1));
    CHECK(std::abs(lobachevsky(std::numbers::pi / 2)) < 1e-10);
    CHECK(lobachevsky_free_energy(std::numbers::pi / 4) ==
          doctest::Approx(4 / std::numbers::pi * catalan / 2 + std::log(std::sqrt(2.0))).epsilon(1e-12));
    double th = 0.4, pt = std::numbers::pi / 2 - th;
    double diff = lobachevsky_free_energy(th) - lobachevsky_free_energy(pt);
    double expect = 2 * th / std::numbers::pi * std::log(std::tan(th)) + std::log(2 * std::cos(th)) -
                    2 * pt / std::numbers::pi * std::log(std::tan(pt)) - std::log(2 * std::cos(pt));
    CHECK(diff == doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(lobachevsky_free_energy(0), Error);
}
