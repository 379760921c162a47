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

#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tddnc/gf.hpp"

namespace tddnc {

// M source packets, each a vector of field symbols of a common length.
using SourceBlock = std::vector<std::vector<Symbol>>;

struct CodedPacket {
  std::vector<Symbol> coefficients;  // length M
  std::vector<Symbol> payload;       // sum_k coefficients[k] * block[k]
};

// Packs the first n_bits of `bytes` (MSB first) into ceil(n_bits / g)
// symbols; the final symbol is zero-padded.
std::vector<Symbol> pack_symbols(std::span<const std::uint8_t> bytes,
                                 std::size_t n_bits, int g);
// Inverse of pack_symbols: ceil(n_bits / 8) bytes, padding dropped.
std::vector<std::uint8_t> unpack_symbols(std::span<const Symbol> symbols,
                                         std::size_t n_bits, int g);

// Throws std::invalid_argument on an empty block, ragged payloads, or a
// coefficient count different from the block size.
CodedPacket encode_with_coefficients(const SourceBlock& block,
                                     const GaloisField& field,
                                     std::vector<Symbol> coefficients);

template <typename Rng>
concept FullRange64Generator = requires(Rng& r) {
  { r() } -> std::same_as<std::uint64_t>;
} && Rng::min() == 0 && Rng::max() == std::numeric_limits<std::uint64_t>::max();

// Coefficients uniform over the whole field, the zero vector included.
template <FullRange64Generator Rng>
CodedPacket encode(const SourceBlock& block, const GaloisField& field,
                   Rng& rng) {
  std::vector<Symbol> coefficients(block.size());
  for (Symbol& c : coefficients) c = static_cast<Symbol>(rng() & field.mask());
  return encode_with_coefficients(block, field, std::move(coefficients));
}

// Progressive Gaussian elimination. Each stored row is normalised and
// indexed by its pivot column, so the basis is always in echelon form and
// its rows are linearly independent.
class Decoder {
 public:
  Decoder(const GaloisField& field, std::size_t block_size,
          std::size_t payload_symbols);

  // Returns 1 if the packet added a degree of freedom, 0 if it was
  // linearly dependent (or all-zero). Throws std::invalid_argument on a
  // dimension mismatch.
  int absorb(const CodedPacket& packet);

  std::size_t rank() const { return rank_; }
  std::size_t block_size() const { return block_size_; }
  bool decodable() const { return rank_ == block_size_; }

  // Back-substitution. Throws std::logic_error while rank < M.
  SourceBlock decode() const;

 private:
  const GaloisField* field_;
  std::size_t block_size_;
  std::size_t payload_symbols_;
  std::size_t rank_ = 0;
  // pivots_[c]: coefficients then payload, leading 1 at column c.
  std::vector<std::optional<std::vector<Symbol>>> pivots_;
};

}  // namespace tddnc
