// io-util.cc

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

#include "aessi/io-util.h"

#include <filesystem>

namespace aessi {

std::vector<float> ReadFloatFile(const std::string& path) {
  auto is = OpenIn(path);
  is.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::uint64_t>(is.tellg());
  is.seekg(0, std::ios::beg);
  if (bytes % sizeof(float) != 0)
    throw std::runtime_error(StrCat(path, ": size ", bytes,
                                    " is not a multiple of 4 bytes"));
  std::vector<float> data(bytes / sizeof(float));
  if (!data.empty()) ReadBytes(is, data.data(), bytes, path);
  return data;
}

void WriteFloatFile(const std::string& path, const float* data,
                    std::size_t n) {
  auto os = OpenOut(path);
  if (n > 0) WriteBytes(os, data, n * sizeof(float));
}

Sidecar ReadSidecar(const std::string& path) {
  auto is = OpenIn(path);
  Sidecar kv;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(StrCat(path, ": malformed line '", line, "'"));
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

void WriteSidecar(const std::string& path, const Sidecar& kv) {
  auto os = OpenOut(path);
  for (const auto& [k, v] : kv) os << k << "=" << v << "\n";
  if (!os) throw std::runtime_error("write failed: " + path);
}

std::int64_t SidecarInt(const Sidecar& kv, const std::string& key,
                        const std::string& path) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw std::runtime_error(StrCat(path, ": missing key '", key, "'"));
  try {
    return std::stoll(it->second);
  } catch (const std::exception&) {
    throw std::runtime_error(
        StrCat(path, ": key '", key, "' is not an integer: ", it->second));
  }
}

double SidecarReal(const Sidecar& kv, const std::string& key,
                   const std::string& path) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw std::runtime_error(StrCat(path, ": missing key '", key, "'"));
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw std::runtime_error(
        StrCat(path, ": key '", key, "' is not a number: ", it->second));
  }
}

}  // namespace aessi
