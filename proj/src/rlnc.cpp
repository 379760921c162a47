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

#include "tddnc/rlnc.hpp"

#include <stdexcept>

namespace tddnc {

std::vector<Symbol> pack_symbols(std::span<const std::uint8_t> bytes,
                                 std::size_t n_bits, int g) {
  if (g < 1 || g > 16) throw std::invalid_argument("symbol width out of range");
  if (bytes.size() * 8 < n_bits) {
    throw std::invalid_argument("not enough bytes for requested bit count");
  }
  const std::size_t width = static_cast<std::size_t>(g);
  std::vector<Symbol> out((n_bits + width - 1) / width, 0);
  for (std::size_t bit = 0; bit < n_bits; ++bit) {
    const unsigned v = (bytes[bit / 8] >> (7 - bit % 8)) & 1u;
    const std::size_t shift = width - 1 - bit % width;
    out[bit / width] |= static_cast<Symbol>(v << shift);
  }
  return out;
}

std::vector<std::uint8_t> unpack_symbols(std::span<const Symbol> symbols,
                                         std::size_t n_bits, int g) {
  if (g < 1 || g > 16) throw std::invalid_argument("symbol width out of range");
  const std::size_t width = static_cast<std::size_t>(g);
  if (symbols.size() * width < n_bits) {
    throw std::invalid_argument("not enough symbols for requested bit count");
  }
  std::vector<std::uint8_t> out((n_bits + 7) / 8, 0);
  for (std::size_t bit = 0; bit < n_bits; ++bit) {
    const unsigned v = (symbols[bit / width] >> (width - 1 - bit % width)) & 1u;
    out[bit / 8] |= static_cast<std::uint8_t>(v << (7 - bit % 8));
  }
  return out;
}

CodedPacket encode_with_coefficients(const SourceBlock& block,
                                     const GaloisField& field,
                                     std::vector<Symbol> coefficients) {
  if (block.empty()) throw std::invalid_argument("empty source block");
  if (coefficients.size() != block.size()) {
    throw std::invalid_argument("coefficient count must equal block size");
  }
  const std::size_t len = block.front().size();
  CodedPacket pkt;
  pkt.payload.assign(len, 0);
  for (std::size_t k = 0; k < block.size(); ++k) {
    if (block[k].size() != len) {
      throw std::invalid_argument("source packets differ in length");
    }
    if (coefficients[k] > field.mask()) {
      throw std::invalid_argument("coefficient outside the field");
    }
    field.axpy(coefficients[k], block[k].data(), pkt.payload.data(), len);
  }
  pkt.coefficients = std::move(coefficients);
  return pkt;
}

Decoder::Decoder(const GaloisField& field, std::size_t block_size,
                 std::size_t payload_symbols)
    : field_(&field),
      block_size_(block_size),
      payload_symbols_(payload_symbols),
      pivots_(block_size) {
  if (block_size == 0) throw std::invalid_argument("block size must be >= 1");
}

int Decoder::absorb(const CodedPacket& packet) {
  if (packet.coefficients.size() != block_size_ ||
      packet.payload.size() != payload_symbols_) {
    throw std::invalid_argument("coded packet does not match decoder shape");
  }
  if (decodable()) return 0;

  const std::size_t width = block_size_ + payload_symbols_;
  std::vector<Symbol> row;
  row.reserve(width);
  row.insert(row.end(), packet.coefficients.begin(), packet.coefficients.end());
  row.insert(row.end(), packet.payload.begin(), packet.payload.end());

  for (std::size_t c = 0; c < block_size_; ++c) {
    const Symbol lead = row[c];
    if (lead == 0) continue;
    if (pivots_[c]) {
      // Pivot rows are zero left of c, so earlier columns stay cleared.
      field_->axpy(lead, pivots_[c]->data() + c, row.data() + c, width - c);
      continue;
    }
    field_->scale(field_->inv(lead), row.data() + c, width - c);
    pivots_[c] = std::move(row);
    ++rank_;
    return 1;
  }
  return 0;
}

SourceBlock Decoder::decode() const {
  if (!decodable()) {
    throw std::logic_error("decode requires full rank");
  }
  const std::size_t M = block_size_;
  std::vector<std::vector<Symbol>> rows(M);
  for (std::size_t c = 0; c < M; ++c) rows[c] = *pivots_[c];

  // Eliminate above-diagonal entries from the bottom up.
  for (std::size_t c = M; c-- > 0;) {
    for (std::size_t k = c + 1; k < M; ++k) {
      const Symbol f = rows[c][k];
      if (f == 0) continue;
      field_->axpy(f, rows[k].data() + k, rows[c].data() + k,
                   M + payload_symbols_ - k);
    }
  }
  SourceBlock out(M);
  for (std::size_t c = 0; c < M; ++c) {
    out[c].assign(rows[c].begin() + static_cast<std::ptrdiff_t>(M),
                  rows[c].end());
  }
  return out;
}

}  // namespace tddnc
