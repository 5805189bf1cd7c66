#pragma once
#include <array>
#include <map>
#include <string>
#include <vector>
#include "kashaev.hpp"

namespace c2l {

struct ABCParams {
    double a = 1, b = 1, c = 1, d = 0, R = 0, S = 0;
};

double intrinsic_residual(double R, double S);
double intrinsic_relative(double R, double S);
double S_of_R(double R);  // greatest root of the intrinsic relation
ABCParams rs_from_abc(double a, double b, double c);

struct YX {
    double Y = 0, X = 0;
};
YX y_closed_form(int N, double a, double b, double c);
// initial values a, b, c on relative heights -N, -N+1, -N+2 of the slab whose origin sits at height N
InitValues slab_init(int N, double a, double b, double c);

struct RhoCoeffs {
    double alpha = 0, beta = 0, gamma = 0, alpha2 = 0, beta2 = 0, gamma2 = 0;
    double theta() const { return gamma * gamma2; }
};
RhoCoeffs rho_coeffs(double R, double S);

struct RhoField {
    int N = 0;
    double R = 0, S = 0;
    RhoCoeffs k;
    std::map<Pt, double> rho;  // points with nonnegative coordinates and height <= N
    double at(const Pt& p) const;
};
RhoField rho_field(int N, double R);
double rho_field_residual(const RhoField& f);

// log-derivative of the recurrence solution with respect to the origin value, from the symbolic solve
double rho_oracle(const Pt& x, double a, double b, double c);
// expectation of n0 + k * (number of type 3/4 faces at the origin) over enumerated taut configurations,
// with k = 1/(2(1+R)) as printed and k = R/(2(1+R)) as obtained by differentiating the face roots
struct RhoObservable {
    double printed = 0, derived = 0;
};
RhoObservable rho_observable(const Pt& x, double a, double b, double c);

double h_product_form(const RhoCoeffs& k, double x, double y, double z);
double h_theta_form(double theta, double x, double y, double z);
double h_identity_error(double R, int points, unsigned seed);

double lambda_param(double R);

struct DualCurve {
    double lambda = 3;
    std::vector<std::array<double, 3>> outer, inner;  // points of the plane x+y+z=-1
};
DualCurve dual_curve(double lambda, int n_points);

std::string heatmap_csv(const RhoField& f);
std::string curve_svg(const DualCurve& c);
void export_heatmap(const RhoField& f, const std::string& path);
void export_curve(const DualCurve& c, const std::string& path);

}
