#pragma once
#include <gmpxx.h>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>
#include "error.hpp"

namespace c2l {

// sparse exponent vector, sorted by variable index, no zero entries
using Mono = std::vector<std::pair<int, int>>;

struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

using Terms = std::map<Mono, mpq_class, GrlexLess>;

Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_pow(const Mono& a, int k);
int mono_exp(const Mono& m, int var);
long mono_degree(const Mono& m);

// variables 0..n_vertex-1 are vertex variables, the rest are roots
class VarRegistry {
public:
    struct Root {
        std::string name;
        Terms square;
    };

    VarRegistry(std::vector<std::string> vertex_names, std::vector<Root> roots);

    int n_vertex() const { return n_vertex_; }
    int n_vars() const { return int(names_.size()); }
    bool is_root(int v) const { return v >= n_vertex_; }
    const std::string& name(int v) const { return names_[v]; }
    const Terms& square(int v) const { return roots_[v - n_vertex_].square; }
    int index(const std::string& name) const;  // -1 if absent
    int at(const std::string& name) const;     // throws if absent

private:
    int n_vertex_;
    std::vector<std::string> names_;
    std::vector<Root> roots_;
    std::unordered_map<std::string, int> index_;
};

using RegPtr = std::shared_ptr<const VarRegistry>;

class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(RegPtr r) : reg_(std::move(r)) {}
    LaurentPoly(RegPtr r, const mpq_class& c);
    LaurentPoly(RegPtr r, Terms t);

    static LaurentPoly var(RegPtr r, int v, int e = 1);
    static LaurentPoly var(RegPtr r, const std::string& name, int e = 1);
    static LaurentPoly monomial(RegPtr r, const Mono& m, const mpq_class& c = 1);

    const RegPtr& registry() const { return reg_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool has_roots() const;

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly& p, const LaurentPoly& q);
    friend LaurentPoly operator-(const LaurentPoly& p, const LaurentPoly& q);
    friend LaurentPoly operator*(const LaurentPoly& p, const LaurentPoly& q);
    friend LaurentPoly operator*(const mpq_class& c, const LaurentPoly& p);
    LaurentPoly& operator+=(const LaurentPoly& q) { return *this = *this + q; }
    LaurentPoly& operator-=(const LaurentPoly& q) { return *this = *this - q; }
    LaurentPoly& operator*=(const LaurentPoly& q) { return *this = *this * q; }
    friend bool operator==(const LaurentPoly& p, const LaurentPoly& q);
    friend bool operator!=(const LaurentPoly& p, const LaurentPoly& q) { return !(p == q); }

    LaurentPoly pow(int k) const;
    // exact division; throws NotDivisible when the quotient is not Laurent
    LaurentPoly div_exact(const LaurentPoly& q) const;
    LaurentPoly shift(const Mono& m) const;  // multiply by a monomial with coefficient 1

    double eval(const std::vector<double>& vertex_values) const;
    mpq_class eval_exact(const std::vector<mpq_class>& vertex_values) const;
    // value and x*d/dx of the value, roots differentiated through their squares
    std::pair<double, double> eval_euler(const std::vector<double>& vertex_values, int var) const;

    std::string str() const;
    std::string to_json() const;  // canonical, bit-exact

private:
    void reduce();
    RegPtr reg_;
    Terms terms_;
};

void check_same(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly lp_parse(const RegPtr& reg, const std::string& text);
std::string terms_json(const VarRegistry& reg, const Terms& t);

}
