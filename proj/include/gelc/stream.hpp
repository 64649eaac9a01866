/*
Copyright 2026 The gelc Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef GELC_STREAM_HPP
#define GELC_STREAM_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gelc/source_model.hpp"

namespace gelc {

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Blocks recovered from a fixed-to-variable stream, plus the number of
/// stream bits the codewords occupied (zero padding included).
struct BlockDecode {
  std::vector<Block> blocks;
  std::size_t consumed_bits = 0;
};

}  // namespace gelc

#endif  // GELC_STREAM_HPP
