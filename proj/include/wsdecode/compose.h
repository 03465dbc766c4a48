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

#ifndef WSDECODE_COMPOSE_H_
#define WSDECODE_COMPOSE_H_

#include "wsdecode/fst.h"

namespace wsd {

// Builds the decoder graph L o G from a lexicon transducer and a word
// acceptor. Only states reachable from (start_L, start_G) are created, in
// breadth-first order, so the result is deterministic.
//
// Epsilon-input arcs of G (LM backoff) are folded into the arc on which L
// emits a word: the composed arc pays the epsilon distance inside G plus the
// matched word arc. Parallel arcs with equal labels and destination keep
// only the lowest weight. A composed state is a word boundary iff its L
// component is one. Weights add.
//
// Throws DataError if L can emit a word G does not know.
WeightedFst ComposeDecoder(const WeightedFst& lexicon,
                           const WeightedFst& grammar);

}  // namespace wsd

#endif  // WSDECODE_COMPOSE_H_
