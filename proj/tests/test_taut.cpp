#include "doctest.h"
#include <cmath>
#include <random>
#include "common.hpp"
#include "taut.hpp"

using namespace c2l;

namespace {

SteppedSolid one_cube() {
    SteppedSolid u;
    u.removed.insert({-1, -1, -1});
    return u;
}

InitValues random_rational(const TautSpace& t, std::mt19937& rng) {
    InitValues init;
    for (auto& p : t.surface.points) init.values[p] = double(1 + rng() % 12) / double(1 + rng() % 5);
    return init;
}

}

TEST_CASE("reference configuration") {
    auto t = TautSpace::build(SteppedSolid{});
    auto cs = enumerate_taut(t);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0] == t.sigma0);
    CHECK(count_loops(t.surface.graph, t.sigma0) == 0);
    for (int p : t.sigma0) CHECK((p == 1 || p == 3));
    CHECK(taut_weight(t, t.sigma0) == LaurentPoly::var(t.reg, "g[0,0,0]"));
    for (int extra = 1; extra <= 2; ++extra) CHECK(enumerate_taut(TautSpace::build(SteppedSolid{}, extra)).size() == 1);
}

TEST_CASE("one removed cube") {
    auto t = TautSpace::build(one_cube());
    auto cs = enumerate_taut(t);
    REQUIRE(cs.size() == 5);
    std::multiset<int> loops;
    for (auto& c : cs) {
        CHECK(is_taut(t, c));
        loops.insert(count_loops(t.surface.graph, c));
    }
    CHECK(loops == std::multiset<int>{0, 0, 0, 1, 1});
    auto y = y_taut(t, cs);
    CHECK(y.size() == 5);
    CHECK(y.str() == solve_origin_symbolic(t.surface, t.reg).origin.str());
    CHECK(y_taut(t, cs, InitValues{}) == doctest::Approx(5 + 4 * std::sqrt(2.0)));

    auto crossing = lp_parse(t.reg, "2*g[-1,-1,-1]^-2*X[-1,-1,-1;1]*X[-1,-1,-1;2]*X[-1,-1,-1;3]");
    auto blue = lp_parse(t.reg, "2*g[-1,-1,-1]^-2*g[-1,-1,0]*g[-1,0,-1]*g[0,-1,-1]");
    int found = 0;
    for (auto& c : cs) {
        auto w = taut_weight(t, c);
        if (w == crossing) {
            ++found;
            for (size_t f = 0; f < c.size(); ++f)
                if (!t.frozen[f] && c[f] != t.sigma0[f]) CHECK(picture(c[f]).type == 3);
        }
        if (w == blue) ++found;
    }
    CHECK(found == 2);
}

TEST_CASE("taut sums equal the recurrence") {
    for (auto& u : all_solids(3)) {
        auto t = TautSpace::build(u);
        auto cs = enumerate_taut(t);
        auto r = verify_princ2(t, cs);
        INFO(u.to_json());
        CHECK(r.holds);
        for (auto& c : cs) CHECK(is_taut(t, c));
    }
    std::mt19937 rng(21);
    int trials = 0;
    for (auto& u : all_solids(2)) {
        if (u.removed.size() != 2) continue;
        auto t = TautSpace::build(u);
        auto cs = enumerate_taut(t);
        for (int i = 0; i < 17; ++i, ++trials) CHECK(verify_princ2(t, cs, random_rational(t, rng)).holds);
    }
    CHECK(trials >= 50);
}

TEST_CASE("taut sums do not depend on the window") {
    for (auto& u : all_solids(3)) {
        auto y = y_taut(TautSpace::build(u), enumerate_taut(TautSpace::build(u))).str();
        for (int extra = 1; extra <= 2; ++extra) {
            auto t = TautSpace::build(u, extra);
            CHECK(y_taut(t, enumerate_taut(t)).str() == y);
        }
    }
}

TEST_CASE("monomials and configurations correspond") {
    for (auto& u : all_solids(4)) {
        auto t = TautSpace::build(u);
        auto r = verify_unic(t, enumerate_taut(t));
        INFO(u.to_json());
        CHECK(r.count_ok);
        CHECK(r.injective);
        CHECK(r.vertex_exponents_ok);
        CHECK(r.root_exponents_ok);
        CHECK(r.coefficients_ok);
        CHECK(r.reconstruct_ok);
        CHECK(r.min_exponent >= -2);
        CHECK(r.max_exponent <= 4);
    }
    auto t = TautSpace::build(one_cube());
    auto y = y_taut(t, enumerate_taut(t));
    std::multiset<std::string> coeffs;
    for (auto& [m, q] : y.terms()) coeffs.insert(q.get_str());
    CHECK(coeffs == std::multiset<std::string>{"1", "1", "1", "2", "2"});
}

TEST_CASE("reconstruction from a monomial") {
    auto t = TautSpace::build(one_cube());
    auto cs = enumerate_taut(t);
    for (auto& c : cs) {
        auto w = taut_weight(t, c);
        auto& [m, q] = *w.terms().begin();
        CHECK(reconstruct_from_monomial(t, m, q) == c);
    }
    auto w0 = taut_weight(t, cs[0]);
    auto& [m, q] = *w0.terms().begin();
    Mono bad = mono_mul(m, {{t.reg->at("g[-1,-1,-1]"), 3}});
    CHECK_THROWS_AS(reconstruct_from_monomial(t, bad, q), Error);
    CHECK_THROWS_AS(reconstruct_from_monomial(t, m, mpq_class(q * 2)), Error);
    Mono twice = mono_mul(m, {{t.reg->at("X[-1,-1,-1;1]"), 2}});
    CHECK_THROWS_AS(reconstruct_from_monomial(t, twice, q), Error);
    try {
        reconstruct_from_monomial(t, bad, q);
    } catch (const Error& e) {
        CHECK(e.code == Err::NotAMonomial);
    }
}

TEST_CASE("flipping a cube keeps the partition function") {
    std::mt19937 rng(22);
    for (auto& u : all_solids(3)) {
        if (u.removed.empty()) continue;
        auto t = TautSpace::build(u);
        auto init = random_rational(t, rng);
        double y = y_taut(t, enumerate_taut(t), init);
        for (auto& p : addable_positions(u)) {
            auto c = kashaev_step(numeric_cube(init.at(p), init.at(p + unit(0)), init.at(p + unit(1)), init.at(p + unit(2)),
                                               init.at(p + unit(0) + unit(1)), init.at(p + unit(0) + unit(2)),
                                               init.at(p + unit(1) + unit(2))));
            auto v = u;
            v.removed.erase(p);
            auto next = init;
            next.values[p + Pt{1, 1, 1}] = c.g123;
            auto tv = TautSpace::build(v);
            CHECK(y_taut(tv, enumerate_taut(tv), next) == doctest::Approx(y).epsilon(1e-12));
        }
    }
}

TEST_CASE("sampling") {
    auto t0 = TautSpace::build(SteppedSolid{});
    auto c0 = enumerate_taut(t0);
    for (unsigned s = 0; s < 20; ++s) CHECK(sample_taut(t0, c0, InitValues{}, s) == t0.sigma0);

    auto t = TautSpace::build(one_cube());
    auto cs = enumerate_taut(t);
    CHECK(sample_taut(t, cs, InitValues{}, 9) == sample_taut(t, cs, InitValues{}, 9));
    auto crossing = lp_parse(t.reg, "2*g[-1,-1,-1]^-2*X[-1,-1,-1;1]*X[-1,-1,-1;2]*X[-1,-1,-1;3]");
    const int n = 20000;
    int hits = 0;
    for (unsigned s = 0; s < n; ++s) hits += taut_weight(t, sample_taut(t, cs, InitValues{}, s)) == crossing;
    double p = 4 * std::sqrt(2.0) / (5 + 4 * std::sqrt(2.0));
    CHECK(std::abs(hits - n * p) < 3 * std::sqrt(n * p * (1 - p)));
}
