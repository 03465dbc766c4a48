// Copyright 2026 The wsdecode Authors.
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

#ifndef WSDECODE_WER_H_
#define WSDECODE_WER_H_

#include <string>
#include <vector>

namespace wsd {

// Word-level Levenshtein distance with unit costs.
int EditDistance(const std::vector<std::string>& reference,
                 const std::vector<std::string>& hypothesis);

// EditDistance / |reference|. Can exceed 1. Throws UsageError on an empty
// reference.
double Wer(const std::vector<std::string>& reference,
           const std::vector<std::string>& hypothesis);

}  // namespace wsd

#endif  // WSDECODE_WER_H_
