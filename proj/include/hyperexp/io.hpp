// Copyright 2026 The hyperexp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef HYPEREXP_IO_HPP
#define HYPEREXP_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hyperexp/cayley.hpp"
#include "hyperexp/hypergraph.hpp"
#include "hyperexp/overlap.hpp"
#include "hyperexp/sidon.hpp"
#include "hyperexp/walks.hpp"

namespace hyperexp {

// Insertion-ordered so that dumps are byte-stable.
using Json = nlohmann::ordered_json;

/// A candidate set as read from disk, before any Sidon check.
struct RawSet {
  int t = 0;
  std::vector<Element> elements;
};

// {"t": t, "S": [...]}
Json sidon_to_json(const SidonSet& s);
// "t=<t>" on the first line, then one 0b-prefixed element per line.
std::string sidon_to_text(const SidonSet& s);

// Accepts either format (JSON when the first non-blank character is '{').
// Throws kParse on malformed input; elements are range-checked against t.
RawSet parse_set(std::string_view text);
RawSet read_set_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

// "p/q", or "p" when q = 1.
std::string format_rational(const Rational& r);
// Shortest round-trip decimal form.
std::string format_double(double x);

Json spectrum_to_json(const Spectrum& s);
Json hypergraph_summary(const Hypergraph3& h, const ExpansionCertificate& cert);
Json expansion_to_json(const Hypergraph3& h, const ExpansionResult& r);
Json crossing_to_json(const CrossingCount& c);
Json rapid_mixing_to_json(const RapidMixingReport& r);
Json histogram_to_json(const WalkHistogram& w);
Json overlap_to_json(const OverlapReport& r);

// Rows "u,v,w,center" in triple order, with a header line.
std::string triples_csv(const Hypergraph3& h);
// Rows "step,l2_distance,envelope", with a header line.
std::string mixing_csv(const MixingProfile& p);

// Rows "vertex,x,y" (header optional); coordinates are quantized.
Embedding parse_embedding_csv(std::string_view text, int t);

}  // namespace hyperexp

#endif  // HYPEREXP_IO_HPP
