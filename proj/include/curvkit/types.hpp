// Copyright 2026 The curvkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace curvkit {

/// Exact rational scalar. Expression templates are disabled so the type
/// composes cleanly with Eigen's own expression machinery.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using QVector = Vector<Rational>;
using QMatrix = Matrix<Rational>;

/// Raised when input data cannot be interpreted (parse errors, dimension
/// mismatches, malformed arguments).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a geometric precondition fails (unbounded polytope, point
/// outside a set, singular map, cap exceeded).
class GeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

double to_double(const Rational& q);
Eigen::VectorXd to_double(const QVector& v);
Eigen::MatrixXd to_double(const QMatrix& m);

/// Parses "p/q", "p", or a finite decimal such as "-0.125" exactly.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// Nearest rational with denominator 2^bits.
Rational rationalize(double x, int bits = 40);
QVector rationalize(const Eigen::VectorXd& v, int bits = 40);

QVector zeros(Eigen::Index n);
QVector unit_vector(Eigen::Index n, Eigen::Index i);

/// Exact square root when q is the square of a rational.
bool rational_sqrt(const Rational& q, Rational& root);

/// Scales v to a primitive integer vector (gcd 1) pointing the same way.
QVector primitive(const QVector& v);

bool is_zero(const QVector& v);

/// Lexicographic order on vectors of equal length, for ordered containers.
struct LexLess {
  bool operator()(const QVector& a, const QVector& b) const;
};

}  // namespace curvkit
