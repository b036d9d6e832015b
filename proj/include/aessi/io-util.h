// aessi/io-util.h

// Copyright 2026  AESSI Project Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef AESSI_IO_UTIL_H_
#define AESSI_IO_UTIL_H_

#include <bit>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace aessi {

static_assert(std::endian::native == std::endian::little,
              "on-disk formats are little-endian and are written directly");

template <typename... Args>
std::string StrCat(Args&&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

// Precondition check; violations surface as std::invalid_argument.
inline void Require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline std::ofstream OpenOut(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

inline std::ifstream OpenIn(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return is;
}

inline void WriteBytes(std::ostream& os, const void* data, std::size_t n) {
  os.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  if (!os) throw std::runtime_error("write failed");
}

inline void ReadBytes(std::istream& is, void* data, std::size_t n,
                      const std::string& what) {
  is.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(is.gcount()) != n)
    throw std::runtime_error("truncated file while reading " + what);
}

template <typename T>
void WritePod(std::ostream& os, const T& v) {
  WriteBytes(os, &v, sizeof(T));
}

template <typename T>
T ReadPod(std::istream& is, const std::string& what) {
  T v;
  ReadBytes(is, &v, sizeof(T), what);
  return v;
}

// Reads a whole float32 little-endian file; size must be a multiple of
// sizeof(float).
std::vector<float> ReadFloatFile(const std::string& path);
void WriteFloatFile(const std::string& path, const float* data,
                    std::size_t n);

// Plain-text sidecar files: one "key=value" pair per line, '#' comments.
using Sidecar = std::map<std::string, std::string>;

Sidecar ReadSidecar(const std::string& path);
void WriteSidecar(const std::string& path, const Sidecar& kv);

std::int64_t SidecarInt(const Sidecar& kv, const std::string& key,
                        const std::string& path);
double SidecarReal(const Sidecar& kv, const std::string& key,
                   const std::string& path);

}  // namespace aessi

#endif  // AESSI_IO_UTIL_H_
