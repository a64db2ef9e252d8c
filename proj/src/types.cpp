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

#include "curvkit/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace curvkit {

double to_double(const Rational& q) { return q.convert_to<double>(); }

Eigen::VectorXd to_double(const QVector& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = to_double(v(i));
  return out;
}

Eigen::MatrixXd to_double(const QMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("malformed integer '" + std::string(s) + "'");
  s.remove_prefix(std::min(s.find_first_not_of('0'), s.size() - 1));
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw InputError("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw InputError("malformed decimal '" + std::string(text) + "'");
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::string joined = std::string(whole) + std::string(frac);
    joined.erase(0, std::min(joined.find_first_not_of('0'), joined.size() - 1));
    Integer digits{joined};
    Rational value(digits, scale);
    return negative ? Rational(-value) : value;
  }
  return Rational(parse_integer(text));
}

std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational rationalize(double x, int bits) {
  if (!std::isfinite(x)) throw InputError("cannot rationalize a non-finite value");
  double scaled = std::ldexp(x, bits);
  if (std::fabs(scaled) > 9.0e18) throw InputError("value too large to rationalize");
  Integer num(static_cast<long long>(std::llround(scaled)));
  Integer den = 1;
  den <<= bits;
  return Rational(num, den);
}

QVector rationalize(const Eigen::VectorXd& v, int bits) {
  QVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = rationalize(v(i), bits);
  return out;
}

QVector zeros(Eigen::Index n) {
  QVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 0;
  return v;
}

QVector unit_vector(Eigen::Index n, Eigen::Index i) {
  QVector v = zeros(n);
  v(i) = 1;
  return v;
}

bool rational_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  Integer num = numerator(q);
  Integer den = denominator(q);
  Integer rn = sqrt(num);
  Integer rd = sqrt(den);
  if (rn * rn != num || rd * rd != den) return false;
  root = Rational(rn, rd);
  return true;
}

QVector primitive(const QVector& v) {
  Integer lcm_den = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(v(i))));
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i) == 0) continue;
    Integer scaled = numerator(v(i)) * (lcm_den / denominator(v(i)));
    g = boost::multiprecision::gcd(g, Integer(abs(scaled)));
  }
  if (g == 0) return v;
  QVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out(i) = Rational(numerator(v(i)) * (lcm_den / denominator(v(i))), g);
  return out;
}

bool is_zero(const QVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

bool LexLess::operator()(const QVector& a, const QVector& b) const {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

}  // namespace curvkit
