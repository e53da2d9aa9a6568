// Copyright 2026 The erkit Authors.
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

#ifndef ERKIT_SYNTHETIC_H_
#define ERKIT_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "erkit/indexing.h"
#include "erkit/schema.h"
#include "erkit/table.h"

namespace erkit {

// Corruptions applied per duplicate: light 1, moderate 1-2, heavy 2-4.
enum class CorruptionProfile { kLight, kModerate, kHeavy };

const char *CorruptionProfileName(CorruptionProfile p);
CorruptionProfile ParseCorruptionProfile(const std::string &name);

struct SyntheticOptions {
  size_t n = 1000;
  double dup_rate = 0.1;
  CorruptionProfile corruption = CorruptionProfile::kModerate;
  uint64_t seed = 42;
};

struct SyntheticData {
  Table table;  // columns: first_name, last_name, dob, phone1, phone2,
                // address1, address2, country
  std::vector<CandidatePair> truth;  // sorted, canonical
};

// People records with planted duplicates. Each duplicate copies a random base
// record and applies seeded corruptions (typo, token swap, phone change,
// address move, field drop). Some base records share a household (last name,
// address and sometimes phone) without being duplicates. Throws UsageError
// unless n >= 10 and 0 <= dup_rate <= 0.5.
SyntheticData GenerateSynthetic(const SyntheticOptions &options);

// Schema for the generated columns: scalar first_name, last_name, dob; list
// attributes phone (phone1, phone2) and address (address1, address2).
AttributeSchema SyntheticSchema();

void WriteTruth(const std::vector<CandidatePair> &truth, const std::string &path);

}  // namespace erkit

#endif  // ERKIT_SYNTHETIC_H_
