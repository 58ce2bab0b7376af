// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QITU_RATIONAL_HPP_
#define QITU_RATIONAL_HPP_

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

namespace qitu {

// Exact rational number.
//
// Thin value wrapper over GMP's mpq_class. The wrapper exists because raw
// mpq_class does not canonicalize values built from strings or num/den
// pairs, which silently breaks equality comparisons ("4/6" != "2/3"). Every
// constructor below leaves the value canonical.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(int n) : q_(n) {}                // NOLINT: implicit by design
  Rat(long n) : q_(n) {}               // NOLINT: implicit by design
  Rat(long long n);                    // NOLINT: implicit by design
  Rat(long num, long den);
  // Parses "n" or "n/d" with optional leading '-'; throws
  // std::invalid_argument on anything else (including zero denominators).
  explicit Rat(const std::string& s);

  std::string str() const { return q_.get_str(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  Rat abs() const;
  Rat numerator() const;
  Rat denominator() const;
  // Reciprocal; throws std::domain_error on zero.
  Rat inv() const;

  Rat operator-() const;
  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);  // throws std::domain_error on zero divisor

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return cmp(a.q_, b.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  explicit Rat(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

// a^e for a nonnegative integer exponent.
Rat rat_pow(const Rat& a, unsigned long e);

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace qitu

#endif  // QITU_RATIONAL_HPP_
