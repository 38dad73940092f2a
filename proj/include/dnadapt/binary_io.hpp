// Copyright 2026 The dnadapt Authors.
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

// Little-endian byte packing for the binary file formats.

#ifndef DNADAPT_BINARY_IO_HPP_
#define DNADAPT_BINARY_IO_HPP_

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

#include "dnadapt/error.hpp"

namespace dnadapt {

class ByteWriter {
 public:
  void PutU32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void PutU64(std::uint64_t v) {
    PutU32(static_cast<std::uint32_t>(v));
    PutU32(static_cast<std::uint32_t>(v >> 32));
  }
  void PutF32(float f) { PutU32(std::bit_cast<std::uint32_t>(f)); }
  /// u32 length, then the bytes.
  void PutString(std::string_view s) {
    PutU32(static_cast<std::uint32_t>(s.size()));
    PutBytes(s);
  }
  void PutBytes(std::string_view bytes) { buf_.append(bytes); }
  std::string Take() { return std::move(buf_); }

 private:
  std::string buf_;
};

class ByteReader {
 public:
  ByteReader(std::string_view bytes, std::string what) : bytes_(bytes), what_(std::move(what)) {}

  std::uint32_t GetU32() {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
  }
  std::uint64_t GetU64() {
    const std::uint64_t lo = GetU32();
    return lo | (static_cast<std::uint64_t>(GetU32()) << 32);
  }
  float GetF32() { return std::bit_cast<float>(GetU32()); }
  std::string GetString() { return std::string(GetBytes(GetU32())); }
  std::string_view GetBytes(std::size_t n) {
    Need(n);
    std::string_view out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  bool AtEnd() const { return pos_ == bytes_.size(); }

 private:
  void Need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) {
      throw Error(ErrorCode::kMalformedRecord, what_ + ": truncated file");
    }
  }

  std::string_view bytes_;
  std::string what_;
  std::size_t pos_ = 0;
};

std::string ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::string_view bytes);

}  // namespace dnadapt

#endif  // DNADAPT_BINARY_IO_HPP_
