#pragma once
// numbers a + b*sqrt(d) with a, b rational and d a squarefree integer > 1
#include <gmpxx.h>
#include <cmath>
#include <optional>
#include <string>
#include "error.hpp"

namespace c2l {

class QE {
public:
    mpq_class a, b;
    long d = 0;

    QE() : a(0), b(0) {}
    QE(long v) : a(v), b(0) {}
    QE(const mpq_class& v) : a(v), b(0) { a.canonicalize(); }
    QE(const mpq_class& x, const mpq_class& y, long dd) : a(x), b(y), d(dd) { norm(); }

    static QE sqrt_of(long n);

    bool is_rational() const { return b == 0; }
    bool is_zero() const { return a == 0 && b == 0; }

    double to_double() const {
        double r = a.get_d();
        if (b != 0) r += b.get_d() * std::sqrt(double(d));
        return r;
    }

    int sign() const;

    QE operator-() const { return QE(-a, -b, d); }
    friend QE operator+(const QE& x, const QE& y) {
        long dd = common(x, y);
        return QE(x.a + y.a, x.b + y.b, dd);
    }
    friend QE operator-(const QE& x, const QE& y) { return x + (-y); }
    friend QE operator*(const QE& x, const QE& y) {
        long dd = common(x, y);
        return QE(x.a * y.a + x.b * y.b * dd, x.a * y.b + x.b * y.a, dd);
    }
    QE inverse() const {
        if (is_zero()) fail(Err::DivZero, "division by zero");
        mpq_class n = a * a - b * b * d;
        return QE(a / n, -b / n, d);
    }
    friend QE operator/(const QE& x, const QE& y) { return x * y.inverse(); }
    QE& operator+=(const QE& o) { return *this = *this + o; }
    QE& operator-=(const QE& o) { return *this = *this - o; }
    QE& operator*=(const QE& o) { return *this = *this * o; }
    QE& operator/=(const QE& o) { return *this = *this / o; }
    friend bool operator==(const QE& x, const QE& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const QE& x, const QE& y) { return !(x == y); }
    friend bool operator<(const QE& x, const QE& y) { return (x - y).sign() < 0; }

    std::string str() const;
    static QE parse(const std::string& s);

private:
    void norm() {
        a.canonicalize();
        b.canonicalize();
        if (b == 0) d = 0;
    }
    static long common(const QE& x, const QE& y) {
        if (x.d == 0) return y.d;
        if (y.d == 0 || x.d == y.d) return x.d;
        fail(Err::Domain, "mixed quadratic extensions");
    }
};

QE pow(const QE& x, int n);

// a real number carried in floating point, plus its exact value when it is known
struct Value {
    double num = 0;
    std::optional<QE> exact;

    Value() : exact(QE(0)) {}
    Value(long v) : num(double(v)), exact(QE(v)) {}
    Value(const QE& q) : num(q.to_double()), exact(q) {}
    static Value inexact(double d) {
        Value v;
        v.num = d;
        v.exact.reset();
        return v;
    }

    friend Value operator+(const Value& x, const Value& y);
    friend Value operator-(const Value& x, const Value& y);
    friend Value operator*(const Value& x, const Value& y);
    friend Value operator/(const Value& x, const Value& y);
    Value& operator+=(const Value& o) { return *this = *this + o; }
    Value& operator*=(const Value& o) { return *this = *this * o; }
    std::string str() const;
};

}
