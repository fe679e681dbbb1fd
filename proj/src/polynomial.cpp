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

#include "macc/polynomial.hpp"

#include <cmath>

#include <fmt/format.h>

#include "macc/subset.hpp"

namespace macc {

namespace {

Rational rational_pow(Rational base, int exponent) {
  Rational out{1};
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace

GammaPolynomial GammaPolynomial::monomial(int a, int b, std::int64_t coeff) {
  GammaPolynomial p;
  p.add(a, b, coeff);
  return p;
}

void GammaPolynomial::add(int a, int b, std::int64_t coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace({a, b}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<std::int64_t> GammaPolynomial::expand() const {
  std::vector<std::int64_t> coeffs;
  for (const auto& [exps, coeff] : terms_) {
    const auto [a, b] = exps;
    if (coeffs.size() < static_cast<std::size_t>(a + b + 1)) coeffs.resize(a + b + 1, 0);
    // (1-g)^b = sum_j C(b,j) (-1)^j g^j
    for (int j = 0; j <= b; ++j) {
      const auto c = static_cast<std::int64_t>(binomial(b, j));
      coeffs[a + j] += (j % 2 == 0 ? c : -c) * coeff;
    }
  }
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return coeffs;
}

double GammaPolynomial::evaluate(double gamma) const {
  double sum = 0.0;
  for (const auto& [exps, coeff] : terms_) {
    sum += static_cast<double>(coeff) * std::pow(gamma, exps.first) *
           std::pow(1.0 - gamma, exps.second);
  }
  return sum;
}

Rational GammaPolynomial::evaluate(Rational gamma) const {
  Rational sum{0};
  for (const auto& [exps, coeff] : terms_) {
    sum += coeff * rational_pow(gamma, exps.first) * rational_pow(1 - gamma, exps.second);
  }
  return sum;
}

std::string GammaPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [exps, coeff] : terms_) {
    if (!out.empty()) out += ' ';
    out += fmt::format("({},{}):{}", exps.first, exps.second, coeff);
  }
  return out;
}

GammaPolynomial& GammaPolynomial::operator+=(const GammaPolynomial& other) {
  for (const auto& [exps, coeff] : other.terms_) add(exps.first, exps.second, coeff);
  return *this;
}

GammaPolynomial& GammaPolynomial::operator-=(const GammaPolynomial& other) {
  for (const auto& [exps, coeff] : other.terms_) add(exps.first, exps.second, -coeff);
  return *this;
}

GammaPolynomial& GammaPolynomial::operator*=(std::int64_t scale) {
  if (scale == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [exps, coeff] : terms_) coeff *= scale;
  return *this;
}

GammaPolynomial operator*(const GammaPolynomial& lhs, const GammaPolynomial& rhs) {
  GammaPolynomial out;
  for (const auto& [e1, c1] : lhs.terms_) {
    for (const auto& [e2, c2] : rhs.terms_) {
      out.add(e1.first + e2.first, e1.second + e2.second, c1 * c2);
    }
  }
  return out;
}

double RatePolynomial::per_user(double gamma) const {
  return total_.evaluate(gamma) / static_cast<double>(users_);
}

Rational RatePolynomial::per_user(Rational gamma) const {
  return total_.evaluate(gamma) / static_cast<std::int64_t>(users_);
}

bool RatePolynomial::equivalent(const RatePolynomial& other) const {
  return (total_ * static_cast<std::int64_t>(other.users_))
      .equivalent(other.total_ * static_cast<std::int64_t>(users_));
}

std::string RatePolynomial::to_string() const {
  return fmt::format("{} / {}", total_.to_string(), users_);
}

}  // namespace macc
