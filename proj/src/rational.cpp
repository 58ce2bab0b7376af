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

#include "qitu/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace qitu {
namespace {

bool all_digits(const std::string& s, size_t from, size_t to) {
  if (from >= to) return false;
  for (size_t i = from; i < to; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat::Rat(long long n) {
  mpz_class z;
  // mpz has no long long ctor on LP64 this is redundant, but keep it exact.
  bool neg = n < 0;
  unsigned long long u =
      neg ? 0ULL - static_cast<unsigned long long>(n) : static_cast<unsigned long long>(n);
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
  if (neg) z = -z;
  q_ = mpq_class(z);
}

Rat::Rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("Rat: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat::Rat(const std::string& s) {
  // Accept exactly: -?digits(/digits)?  with a positive denominator.
  size_t start = 0;
  if (!s.empty() && s[0] == '-') start = 1;
  const size_t slash = s.find('/');
  bool ok;
  if (slash == std::string::npos) {
    ok = all_digits(s, start, s.size());
  } else {
    ok = all_digits(s, start, slash) && all_digits(s, slash + 1, s.size());
  }
  if (!ok) throw std::invalid_argument("Rat: malformed rational '" + s + "'");
  q_ = mpq_class(s);
  if (q_.get_den() == 0) {
    throw std::invalid_argument("Rat: zero denominator in '" + s + "'");
  }
  q_.canonicalize();
}

Rat Rat::abs() const { return Rat(mpq_class(::abs(q_))); }

Rat Rat::numerator() const { return Rat(mpq_class(q_.get_num())); }

Rat Rat::denominator() const { return Rat(mpq_class(q_.get_den())); }

Rat Rat::inv() const {
  if (is_zero()) throw std::domain_error("Rat: reciprocal of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
  return Rat(r);
}

Rat Rat::operator-() const { return Rat(mpq_class(-q_)); }

Rat& Rat::operator+=(const Rat& o) {
  q_ += o.q_;
  return *this;
}

Rat& Rat::operator-=(const Rat& o) {
  q_ -= o.q_;
  return *this;
}

Rat& Rat::operator*=(const Rat& o) {
  q_ *= o.q_;
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  q_ /= o.q_;
  return *this;
}

Rat rat_pow(const Rat& a, unsigned long e) {
  Rat out = 1;
  Rat base = a;
  while (e > 0) {
    if (e & 1UL) out *= base;
    base *= base;
    e >>= 1UL;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace qitu
