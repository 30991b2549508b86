#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace conelab {

// Exact rational scalar. All arithmetic in the library is exact; there is
// no floating point anywhere.
using Rational = mpq_class;

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "p/q", with optional leading sign. Throws std::invalid_argument
// on malformed input or zero denominator.
Rational parse_rational(const std::string& s);

// Lowest terms, denominator omitted when 1: "3", "-1/2".
std::string to_string(const Rational& q);

Rational dot(const Vec& a, const Vec& b);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rational& c, const Vec& v);

bool is_zero(const Vec& v);

// Canonical basis vector e_i (0-based) in dimension d.
Vec unit(int d, int i);

Vec zero_vec(int d);

// Scales v to a primitive integer vector with positive leading entry kept
// as-is (no sign flip); the zero vector maps to itself.
Vec primitive(const Vec& v);

}  // namespace conelab
