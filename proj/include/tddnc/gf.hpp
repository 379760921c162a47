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

#pragma once

#include <cstdint>
#include <vector>

namespace tddnc {

using Symbol = std::uint16_t;

// GF(2^bits) defined by a reduction polynomial given with its leading term,
// e.g. 0x11B for x^8 + x^4 + x^3 + x + 1.
struct FieldSpec {
  int bits = 8;
  std::uint32_t polynomial = 0x11B;

  // Default polynomial for each width 1..16; see docs/fields.md.
  static FieldSpec standard(int bits);

  bool operator==(const FieldSpec&) const = default;
};

// Log/antilog-table arithmetic. Tables are built once and never modified,
// so a field may be shared across threads.
class GaloisField {
 public:
  // Throws std::invalid_argument if bits is outside [1, 16] or the
  // polynomial is not irreducible of degree `bits`.
  explicit GaloisField(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  int bits() const { return spec_.bits; }
  std::uint32_t size() const { return size_; }
  Symbol mask() const { return static_cast<Symbol>(size_ - 1); }
  // Element used to generate the antilog table.
  Symbol generator() const { return generator_; }

  static Symbol add(Symbol a, Symbol b) { return a ^ b; }
  static Symbol sub(Symbol a, Symbol b) { return a ^ b; }

  Symbol mul(Symbol a, Symbol b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  // Throws std::domain_error for a == 0.
  Symbol inv(Symbol a) const;
  // Throws std::domain_error for b == 0.
  Symbol div(Symbol a, Symbol b) const;

  // dst[k] ^= scale * src[k]
  void axpy(Symbol scale, const Symbol* src, Symbol* dst,
            std::size_t count) const;
  // v[k] *= scale
  void scale(Symbol scale, Symbol* v, std::size_t count) const;

 private:
  FieldSpec spec_;
  std::uint32_t size_;
  Symbol generator_ = 1;
  std::vector<std::uint32_t> log_;
  std::vector<Symbol> exp_;  // doubled so log a + log b needs no reduction
};

// True iff `polynomial` has degree `bits` and no factor of lower degree.
bool is_irreducible(std::uint32_t polynomial, int bits);

}  // namespace tddnc
