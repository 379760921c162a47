// Copyright 2026 The tddnc Authors
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

#include "tddnc/gf.hpp"

#include <stdexcept>
#include <string>

namespace tddnc {
namespace {

// x^g + ... for g = 1..16. Width 8 uses the AES polynomial, for which x is
// not primitive; the generator is searched for instead of assumed.
constexpr std::uint32_t kStandardPolynomials[17] = {
    0,       0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x89,  0x11B,
    0x211,   0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B};

int degree(std::uint32_t p) {
  int d = -1;
  while (p != 0) {
    p >>= 1;
    ++d;
  }
  return d;
}

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t m) {
  const int dm = degree(m);
  for (int da = degree(a); da >= dm; da = degree(a)) {
    a ^= m << (da - dm);
  }
  return a;
}

// Carry-less product reduced modulo the field polynomial.
std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly,
                       int bits) {
  std::uint32_t r = 0;
  while (b != 0) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << bits)) a ^= poly;
  }
  return r;
}

std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e, std::uint32_t poly,
                       int bits) {
  std::uint32_t r = 1;
  while (e != 0) {
    if (e & 1u) r = slow_mul(r, a, poly, bits);
    a = slow_mul(a, a, poly, bits);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t v) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      out.push_back(p);
      while (v % p == 0) v /= p;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace

bool is_irreducible(std::uint32_t polynomial, int bits) {
  if (bits < 1 || bits > 31 || degree(polynomial) != bits) return false;
  if (bits == 1) return true;
  // Trial division by every polynomial of degree 1..bits/2.
  for (std::uint32_t d = 2; degree(d) <= bits / 2; ++d) {
    if (poly_mod(polynomial, d) == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::standard(int bits) {
  if (bits < 1 || bits > 16) {
    throw std::invalid_argument("field width must be in [1, 16], got " +
                                std::to_string(bits));
  }
  return {bits, kStandardPolynomials[bits]};
}

GaloisField::GaloisField(const FieldSpec& spec) : spec_(spec) {
  if (spec_.bits < 1 || spec_.bits > 16) {
    throw std::invalid_argument("field width must be in [1, 16]");
  }
  if (!is_irreducible(spec_.polynomial, spec_.bits)) {
    throw std::invalid_argument("reduction polynomial is not irreducible");
  }
  size_ = 1u << spec_.bits;
  const std::uint32_t order = size_ - 1;

  // Smallest element whose multiplicative order is q - 1.
  const std::vector<std::uint32_t> factors = prime_factors(order);
  std::uint32_t gen = 1;
  if (order > 1) {
    for (gen = 2; gen < size_; ++gen) {
      bool primitive = true;
      for (std::uint32_t p : factors) {
        if (slow_pow(gen, order / p, spec_.polynomial, spec_.bits) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) break;
    }
  }
  generator_ = static_cast<Symbol>(gen);

  log_.assign(size_, 0);
  exp_.assign(2 * static_cast<std::size_t>(order), 0);
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k < order; ++k) {
    exp_[k] = static_cast<Symbol>(x);
    exp_[k + order] = static_cast<Symbol>(x);
    log_[x] = k;
    x = slow_mul(x, gen, spec_.polynomial, spec_.bits);
  }
}

Symbol GaloisField::inv(Symbol a) const {
  if (a == 0) throw std::domain_error("zero has no multiplicative inverse");
  const std::uint32_t order = size_ - 1;
  return exp_[(order - log_[a]) % order];
}

Symbol GaloisField::div(Symbol a, Symbol b) const {
  if (b == 0) throw std::domain_error("division by zero in GF(2^g)");
  if (a == 0) return 0;
  const std::uint32_t order = size_ - 1;
  return exp_[log_[a] + (order - log_[b]) % order];
}

void GaloisField::axpy(Symbol scale, const Symbol* src, Symbol* dst,
                       std::size_t count) const {
  if (scale == 0) return;
  if (scale == 1) {
    for (std::size_t k = 0; k < count; ++k) dst[k] ^= src[k];
    return;
  }
  const std::uint32_t ls = log_[scale];
  for (std::size_t k = 0; k < count; ++k) {
    if (src[k] != 0) dst[k] ^= exp_[log_[src[k]] + ls];
  }
}

void GaloisField::scale(Symbol scale, Symbol* v, std::size_t count) const {
  if (scale == 1) return;
  if (scale == 0) {
    for (std::size_t k = 0; k < count; ++k) v[k] = 0;
    return;
  }
  const std::uint32_t ls = log_[scale];
  for (std::size_t k = 0; k < count; ++k) {
    if (v[k] != 0) v[k] = exp_[log_[v[k]] + ls];
  }
}

}  // namespace tddnc
