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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "macc/polynomial.hpp"

using namespace macc;

namespace {

// Horner evaluation of a coefficient vector in powers of g.
Rational horner(const std::vector<std::int64_t>& coeffs, Rational g) {
  Rational acc{0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * g + *it;
  return acc;
}

}  // namespace

TEST_CASE("expand matches hand expansion") {
  // (1-g)^2 = 1 - 2g + g^2
  CHECK(GammaPolynomial::monomial(0, 2).expand() == std::vector<std::int64_t>{1, -2, 1});
  // g(1-g)^3 = g - 3g^2 + 3g^3 - g^4
  CHECK(GammaPolynomial::monomial(1, 3).expand() == std::vector<std::int64_t>{0, 1, -3, 3, -1});
  CHECK(GammaPolynomial{}.expand().empty());
}

TEST_CASE("add drops cancelled terms") {
  GammaPolynomial p;
  p.add(1, 2, 3);
  p.add(1, 2, -3);
  CHECK(p.empty());
  CHECK(p.to_string() == "0");
  p.add(2, 2, 2);
  p.add(0, 4, 9);
  CHECK(p.to_string() == "(0,4):9 (2,2):2");
}

TEST_CASE("different bases, same polynomial") {
  // g (1-g)^3 + (1-g)^4 = (1-g)^3
  auto lhs = GammaPolynomial::monomial(1, 3) + GammaPolynomial::monomial(0, 4);
  CHECK(lhs.equivalent(GammaPolynomial::monomial(0, 3)));
  CHECK_FALSE(lhs == GammaPolynomial::monomial(0, 3));
}

TEST_CASE("expansion agrees with direct rational evaluation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> exp(0, 6);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    GammaPolynomial p;
    for (int k = 0; k < 4; ++k) p.add(exp(rng), exp(rng), coeff(rng));
    const auto coeffs = p.expand();
    for (Rational g : {Rational{0}, Rational{1}, Rational{1, 3}, Rational{4, 7}, Rational{-2, 5}}) {
      CHECK(horner(coeffs, g) == p.evaluate(g));
    }
    CHECK(p.evaluate(0.25) == doctest::Approx(boost::rational_cast<double>(p.evaluate(Rational{1, 4}))));
  }
}

TEST_CASE("product of polynomials") {
  const auto p = GammaPolynomial::monomial(1, 0) + GammaPolynomial::monomial(0, 1);  // = 1
  const auto q = GammaPolynomial::monomial(2, 3, 4);
  CHECK((p * q).equivalent(q));
  CHECK((q * 3).terms().at({2, 3}) == 12);
  CHECK((q - q).empty());
}

TEST_CASE("rate polynomial equivalence across normalizations") {
  const RatePolynomial a{GammaPolynomial::monomial(0, 2, 2), 4};
  const RatePolynomial b{GammaPolynomial::monomial(0, 2, 1), 2};
  CHECK(a.equivalent(b));
  CHECK(a.per_user(Rational{1, 2}) == Rational{1, 8});
  CHECK(a.per_user(0.5) == doctest::Approx(0.125));
  CHECK(a.to_string() == "(0,2):2 / 4");
}
