#include "limitshape.hpp"
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include "taut.hpp"

namespace c2l {

double intrinsic_residual(double R, double S) { return R * R * S * S - 6 * R * S - 4 * R - 4 * S - 3; }

double intrinsic_relative(double R, double S) {
    return std::abs(intrinsic_residual(R, S)) / (R * R * S * S + 6 * R * S + 4 * R + 4 * S + 3);
}

double S_of_R(double R) {
    if (!(R > 0)) fail(Err::Domain, "R must be positive");
    double p = 6 * R + 4, q = 4 * R + 3;
    return (p + std::sqrt(p * p + 4 * R * R * q)) / (2 * R * R);
}

ABCParams rs_from_abc(double a, double b, double c) {
    if (!(a > 0 && b > 0 && c > 0)) fail(Err::Domain, "a, b, c must be positive");
    ABCParams p{a, b, c};
    p.d = (2 * b * b * b + 3 * a * b * c + 2 * std::pow(a * c + b * b, 1.5)) / (a * a);
    p.R = a * c / (b * b);
    p.S = b * p.d / (c * c);
    if (intrinsic_relative(p.R, p.S) > 1e-9) fail(Err::IntrinsicViolated, "R and S violate the intrinsic relation");
    return p;
}

YX y_closed_form(int N, double a, double b, double c) {
    if (N < 0) fail(Err::Domain, "N must be nonnegative");
    auto p = rs_from_abc(a, b, c);
    auto Y = [&](int m) {
        double n = m / 2;
        if (m % 2 == 0) return std::pow(a, 1 - 2 * n) * std::pow(b, 2 * n) * std::pow(p.R, n * n) * std::pow(p.S, n * n - n);
        return std::pow(a, -2 * n) * std::pow(b, 2 * n + 1) * std::pow(p.R, n * n + n) * std::pow(p.S, n * n);
    };
    YX r;
    r.Y = Y(N);
    r.X = (N % 2 == 0 ? std::sqrt(1 + p.R) : std::sqrt(1 + p.S)) * Y(N + 1);
    return r;
}

InitValues slab_init(int N, double a, double b, double c) {
    InitValues init;
    int w = N + 4;
    for (int i = -w; i <= 0; ++i)
        for (int j = -w; j <= 0; ++j)
            for (int k = -w; k <= 0; ++k) {
                int h = i + j + k + N;
                if (h == 0) init.values[{i, j, k}] = a;
                if (h == 1) init.values[{i, j, k}] = b;
                if (h == 2) init.values[{i, j, k}] = c;
            }
    return init;
}

RhoCoeffs rho_coeffs(double R, double S) {
    if (!(R > 0 && S > 0)) fail(Err::Domain, "R and S must be positive");
    if (intrinsic_relative(R, S) > 1e-9) fail(Err::IntrinsicViolated, "R and S violate the intrinsic relation");
    double rr = std::sqrt(1 + R), ss = std::sqrt(1 + S);
    RhoCoeffs k;
    k.alpha = (3 + 3 * rr - 2 * R * S) / (R * S);
    k.beta = (2 + 2 * rr + R) / (R * R * S);
    k.gamma = (1 + rr) / (R * S);
    k.alpha2 = (3 + 3 * ss - 2 * R * S) / (R * S);
    k.beta2 = (2 + 2 * ss + S) / (R * S * S);
    k.gamma2 = (1 + ss) / (R * S);
    return k;
}

double RhoField::at(const Pt& p) const {
    auto it = rho.find(p);
    return it == rho.end() ? 0.0 : it->second;
}

namespace {

double apply_line(const RhoField& f, const Pt& x) {
    bool even = (height(x) % 2 + 2) % 2 == 0;
    double al = even ? f.k.alpha : f.k.alpha2, be = even ? f.k.beta : f.k.beta2, ga = even ? f.k.gamma : f.k.gamma2;
    Pt e1 = unit(0), e2 = unit(1), e3 = unit(2);
    return al * f.at(x) + be * (f.at(x + e1) + f.at(x + e2) + f.at(x + e3)) +
           ga * (f.at(x + e1 + e2) + f.at(x + e1 + e3) + f.at(x + e2 + e3));
}

}

RhoField rho_field(int N, double R) {
    if (N < 3) fail(Err::Domain, "N must be at least 3");
    RhoField f;
    f.N = N;
    f.R = R;
    f.S = S_of_R(R);
    f.k = rho_coeffs(R, f.S);
    for (int h = 0; h <= N; ++h)
        for (int i = 0; i <= h; ++i)
            for (int j = 0; i + j <= h; ++j) {
                Pt y{i, j, h - i - j};
                if (h <= 2) f.rho[y] = (h == 0) ? 1.0 : 0.0;
                else f.rho[y] = apply_line(f, y - Pt{1, 1, 1});
            }
    return f;
}

double rho_field_residual(const RhoField& f) {
    double worst = 0;
    for (auto& [y, v] : f.rho) {
        if (height(y) < 3) continue;
        double expect = apply_line(f, y - Pt{1, 1, 1});
        worst = std::max(worst, std::abs(v - expect) / std::max(1.0, std::abs(v)));
    }
    return worst;
}

double rho_oracle(const Pt& x, double a, double b, double c) {
    if (x[0] < 0 || x[1] < 0 || x[2] < 0) return 0;
    int h = height(x);
    auto u = slab_solid(h + 1);
    int w = std::max({solve_window(u) + 1, x[0], x[1], x[2]});
    auto s = surface_box(u, w);
    auto reg = surface_registry(s);
    int v = s.vertex(Pt{0, 0, 0} - x);
    if (v < 0) return 0;
    auto sym = solve_origin_symbolic(s, reg).origin;
    auto init = slab_init(h, a, b, c);
    std::vector<double> vals;
    for (auto& p : s.points) vals.push_back(init.at(p));
    auto [val, der] = sym.eval_euler(vals, v);
    return der / val;
}

RhoObservable rho_observable(const Pt& x, double a, double b, double c) {
    if (x[0] < 0 || x[1] < 0 || x[2] < 0) return {};
    int h = height(x);
    auto u = slab_solid(h + 1);
    int reach = std::max({x[0], x[1], x[2]});
    auto t = TautSpace::build(u, std::max(0, reach - solve_window(u)));
    int v = t.surface.vertex(Pt{0, 0, 0} - x);
    if (v < 0 || !t.tracked[v]) return {};
    auto p = rs_from_abc(a, b, c);
    auto init = slab_init(h, a, b, c);
    auto vals = vertex_values(t, init);
    auto& g = t.surface.graph;
    std::vector<int> around;
    for (size_t f = 0; f < g.faces.size(); ++f)
        for (int cv : g.faces[f].corners)
            if (cv == v) around.push_back(int(f));
    double n0sum = 0, epssum = 0, den = 0;
    for (auto& cfg : enumerate_taut(t)) {
        auto w = taut_weight(t, cfg);
        double wv = w.eval(vals);
        double n0 = mono_exp(w.terms().begin()->first, v);
        int eps = 0;
        for (int f : around) eps += picture(cfg[f]).type == 3 || picture(cfg[f]).type == 4;
        n0sum += wv * n0;
        epssum += wv * eps;
        den += wv;
    }
    RhoObservable r;
    r.printed = (n0sum + epssum / (2 * (1 + p.R))) / den;
    r.derived = (n0sum + epssum * p.R / (2 * (1 + p.R))) / den;
    return r;
}

double h_product_form(const RhoCoeffs& k, double x, double y, double z) {
    double s1 = x + y + z, s2 = x * y + x * z + y * z, p = x * y * z;
    return (k.alpha * p + k.gamma * s1) * (k.alpha2 * p + k.gamma2 * s1) - (1 - k.beta * s2) * (1 - k.beta2 * s2);
}

double h_theta_form(double theta, double x, double y, double z) {
    return theta * (x * x - 1) * (y * y - 1) * (z * z - 1) + (1 - theta) * (x * y - 1) * (x * z - 1) * (y * z - 1);
}

double h_identity_error(double R, int points, unsigned seed) {
    auto k = rho_coeffs(R, S_of_R(R));
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-2, 2);
    double worst = 0;
    for (int i = 0; i < points; ++i) {
        double x = U(rng), y = U(rng), z = U(rng);
        double p = h_product_form(k, x, y, z), q = h_theta_form(k.theta(), x, y, z);
        worst = std::max(worst, std::abs(p - q) / std::max(1.0, std::abs(q)));
    }
    return worst;
}

double lambda_param(double R) {
    auto k = rho_coeffs(R, S_of_R(R));
    double th = k.theta();
    double lam = 2 * (1 + 3 * th) / (1 - th);
    if (!(lam > 2 && lam <= 3 + 1e-9)) fail(Err::IntrinsicViolated, "lambda outside (2,3]");
    return lam;
}

namespace {

using V3 = std::array<double, 3>;

V3 normalized(V3 p) {
    double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    return {p[0] / n, p[1] / n, p[2] / n};
}

double align(const V3& p, const V3& q) { return std::abs(p[0] * q[0] + p[1] * q[1] + p[2] * q[2]); }

V3 gradient(double lam, const V3& p) {
    auto [X, Y, Z] = p;
    return {2 * X * Y + Y * Y + 2 * X * Z + Z * Z + lam * Y * Z, X * X + 2 * X * Y + 2 * Y * Z + Z * Z + lam * X * Z,
            X * X + Y * Y + 2 * X * Z + 2 * Y * Z + lam * X * Y};
}

bool dual_point(double lam, const V3& p, V3& out) {
    V3 g = gradient(lam, p);
    double n = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    double s = g[0] + g[1] + g[2];
    if (n < 1e-10 || std::abs(s) < 1e-12 * n) return false;
    out = {-g[0] / s, -g[1] / s, -g[2] / s};
    return true;
}

}

DualCurve dual_curve(double lambda, int n_points) {
    if (!(lambda > 2 && lambda <= 3 + 1e-12)) fail(Err::Domain, "lambda must lie in (2,3]");
    if (n_points < 8) fail(Err::Input, "too few points");
    DualCurve out;
    out.lambda = lambda;
    const double pi = std::acos(-1.0);
    V3 prev_oval{}, prev_line{};
    for (int i = 0; i < n_points; ++i) {
        // the line through (1:0:0) and (0:y:z) meets the oval once more and the other branch once
        double phi = pi / 4 + pi * i / n_points;
        double y = std::cos(phi), z = std::sin(phi);
        double A = y + z, B = y * y + z * z + lambda * y * z, C = y * z * (y + z);
        double D = std::max(0.0, B * B - 4 * A * C);
        double q = -(B + (B >= 0 ? 1 : -1) * std::sqrt(D)) / 2;
        std::vector<V3> pts;
        if (std::abs(A) > 1e-14) pts.push_back(normalized({q / A, y, z}));
        else pts.push_back({1, 0, 0});
        if (std::abs(q) > 1e-14) pts.push_back(normalized({C / q, y, z}));
        else pts.push_back({1, 0, 0});
        if (i == 0) {
            // on the diagonal y = z the oval point is the one with the larger first coordinate ratio
            double s0 = pts[0][0] / pts[0][1], s1 = pts[1][0] / pts[1][1];
            if (s1 > s0) std::swap(pts[0], pts[1]);
        } else if (align(pts[1], prev_oval) + align(pts[0], prev_line) > align(pts[0], prev_oval) + align(pts[1], prev_line)) {
            std::swap(pts[0], pts[1]);
        }
        prev_oval = pts[0];
        prev_line = pts[1];
        V3 d;
        if (dual_point(lambda, pts[0], d)) out.outer.push_back(d);
        if (dual_point(lambda, pts[1], d)) out.inner.push_back(d);
    }
    return out;
}

std::string heatmap_csv(const RhoField& f) {
    std::string s = "i,j,k,rho\n";
    char buf[96];
    for (auto& [p, v] : f.rho) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%.12g\n", p[0], p[1], p[2], v);
        s += buf;
    }
    return s;
}

std::string curve_svg(const DualCurve& c) {
    const double size = 400, pad = 20;
    auto proj = [&](const V3& p) {
        double u = (p[0] - p[1]) / std::sqrt(2.0), v = (p[0] + p[1] - 2 * p[2]) / std::sqrt(6.0);
        double scale = (size - 2 * pad) / std::sqrt(2.0);
        return std::pair<double, double>{size / 2 + scale * u, size / 2 - pad / 2 + scale * v};
    };
    auto poly = [&](const std::vector<V3>& pts, const char* colour, bool closed) {
        std::string s = closed ? "<polygon" : "<polyline";
        s += " fill=\"none\" stroke=\"";
        s += colour;
        s += "\" points=\"";
        char buf[64];
        for (auto& p : pts) {
            auto [x, y] = proj(p);
            std::snprintf(buf, sizeof buf, "%.6f,%.6f ", x, y);
            s += buf;
        }
        s += "\"/>\n";
        return s;
    };
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
    s += poly({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}, "gray", true);
    s += poly(c.outer, "black", true);
    s += poly(c.inner, "blue", false);
    s += "</svg>\n";
    return s;
}

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(Err::IO, "cannot open " + path);
    f << text;
    if (!f) fail(Err::IO, "cannot write " + path);
}

}

void export_heatmap(const RhoField& f, const std::string& path) { write_file(path, heatmap_csv(f)); }
void export_curve(const DualCurve& c, const std::string& path) { write_file(path, curve_svg(c)); }

}
