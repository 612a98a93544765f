/*
  Copyright 2026 The bhavg Authors

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

#ifndef BHAVG_VERIFY_HPP
#define BHAVG_VERIFY_HPP

#include <cstdint>
#include <string>

#include "bhavg/context.hpp"

namespace bhavg {

enum class VerifySuite { local, series, circle, all };

// Parses "local", "series", "circle" or "all".
VerifySuite parse_verify_suite(const std::string& name);
const char* to_string(VerifySuite suite);

struct VerifyResult {
  u64 checks = 0;
  u64 mismatches = 0;
  std::string first_failure;  // empty when mismatches == 0
  bool passed() const noexcept { return mismatches == 0; }
};

// Fast paths against the brute-force oracles on small ranges.
VerifyResult run_verify(const Context& ctx, VerifySuite suite);

}  // namespace bhavg

#endif  // BHAVG_VERIFY_HPP
