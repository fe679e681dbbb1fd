// Copyright 2026 The macc Authors
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

#ifndef MACC_POLYNOMIAL_HPP
#define MACC_POLYNOMIAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace macc {

using Rational = boost::rational<std::int64_t>;

/// Integer combination of monomials g^a (1-g)^b.
///
/// The (a, b) representation is kept as written so that serialized forms read
/// like the closed-form expressions they come from. Two polynomials that are
/// equal as functions of g may have different term maps; compare them with
/// equivalent(), which works on the expansion in powers of g.
class GammaPolynomial {
 public:
  using Exponents = std::pair<int, int>;

  GammaPolynomial() = default;

  static GammaPolynomial monomial(int a, int b, std::int64_t coeff = 1);

  /// Adds coeff * g^a (1-g)^b. Terms whose coefficient cancels to zero are dropped.
  void add(int a, int b, std::int64_t coeff);

  const std::map<Exponents, std::int64_t>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Coefficients of 1, g, g^2, ... with trailing zeros removed.
  std::vector<std::int64_t> expand() const;

  bool equivalent(const GammaPolynomial& other) const { return expand() == other.expand(); }

  double evaluate(double gamma) const;
  Rational evaluate(Rational gamma) const;

  /// Sorted "(a,b):coeff" terms separated by single spaces; "0" when empty.
  std::string to_string() const;

  GammaPolynomial& operator+=(const GammaPolynomial& other);
  GammaPolynomial& operator-=(const GammaPolynomial& other);
  GammaPolynomial& operator*=(std::int64_t scale);

  friend GammaPolynomial operator+(GammaPolynomial lhs, const GammaPolynomial& rhs) {
    return lhs += rhs;
  }
  friend GammaPolynomial operator-(GammaPolynomial lhs, const GammaPolynomial& rhs) {
    return lhs -= rhs;
  }
  friend GammaPolynomial operator*(GammaPolynomial lhs, std::int64_t scale) {
    return lhs *= scale;
  }
  friend GammaPolynomial operator*(const GammaPolynomial& lhs, const GammaPolynomial& rhs);

  /// Exact term-map equality. Use equivalent() for functional equality.
  friend bool operator==(const GammaPolynomial&, const GammaPolynomial&) = default;

 private:
  std::map<Exponents, std::int64_t> terms_;
};

/// Rate normalized per user: numerator / users.
class RatePolynomial {
 public:
  RatePolynomial() = default;
  RatePolynomial(GammaPolynomial total, std::uint64_t users)
      : total_(std::move(total)), users_(users) {}

  /// The numerator: total rate in units of F bits.
  const GammaPolynomial& total() const { return total_; }
  std::uint64_t users() const { return users_; }

  double per_user(double gamma) const;
  Rational per_user(Rational gamma) const;

  /// Equality of per-user values as functions of g.
  bool equivalent(const RatePolynomial& other) const;

  /// "<terms> / K".
  std::string to_string() const;

 private:
  GammaPolynomial total_;
  std::uint64_t users_ = 1;
};

}  // namespace macc

#endif  // MACC_POLYNOMIAL_HPP
