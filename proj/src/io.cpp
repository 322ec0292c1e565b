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


#include "hyperexp/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hyperexp/error.hpp"

namespace hyperexp {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  for (;;) {
    const auto comma = line.find(',');
    fields.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) return fields;
    line.remove_prefix(comma + 1);
  }
}

int parse_int(std::string_view s, const char* what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kParse, std::string("malformed ") + what + ": '" + std::string(s) + "'");
  }
  return value;
}

double parse_double(std::string_view s) {
  const std::string copy(s);
  char* end = nullptr;
  const double value = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size()) {
    throw Error(ErrorCode::kParse, "malformed coordinate: '" + copy + "'");
  }
  return value;
}

Json rational_json(const Rational& r) { return format_rational(r); }

}  // namespace

Json sidon_to_json(const SidonSet& s) {
  Json j;
  j["t"] = s.dimension();
  j["S"] = s.elements();
  return j;
}

std::string sidon_to_text(const SidonSet& s) {
  std::string out = "t=" + std::to_string(s.dimension()) + "\n";
  for (Element x : s.elements()) out += format_binary(x, s.dimension()) + "\n";
  return out;
}

RawSet parse_set(std::string_view text) {
  const std::string_view body = trim(text);
  RawSet raw;
  if (!body.empty() && body.front() == '{') {
    Json j;
    try {
      j = Json::parse(body);
      raw.t = j.at("t").get<int>();
      check_dimension(raw.t);
      for (const auto& x : j.at("S")) {
        const auto v = x.get<std::int64_t>();
        if (v < 0 || static_cast<std::uint64_t>(v) >= group_order(raw.t)) {
          throw Error(ErrorCode::kInvalidInput, "element " + std::to_string(v) + " outside Z_2^" +
                                                    std::to_string(raw.t));
        }
        raw.elements.push_back(static_cast<Element>(v));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, std::string("malformed set JSON: ") + e.what());
    }
    return raw;
  }
  bool have_header = false;
  for (std::string_view line : split_lines(text)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      if (line.substr(0, 2) != "t=") throw Error(ErrorCode::kParse, "set file must start with 't=<t>'");
      raw.t = parse_int(trim(line.substr(2)), "dimension");
      check_dimension(raw.t);
      have_header = true;
      continue;
    }
    raw.elements.push_back(parse_element(line, raw.t));
  }
  if (!have_header) throw Error(ErrorCode::kParse, "empty set file");
  return raw;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

RawSet read_set_file(const std::string& path) { return parse_set(read_file(path)); }

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

Json spectrum_to_json(const Spectrum& s) {
  Json j;
  j["t"] = s.dimension();
  j["d"] = s.degree();
  j["lambda"] = s.lambda();
  const Rational eps = s.epsilon();
  j["epsilon"] = rational_json(eps);
  Json hist = Json::array();
  for (const auto& [value, mult] : s.histogram()) hist.push_back({value, mult});
  j["histogram"] = hist;
  return j;
}

Json hypergraph_summary(const Hypergraph3& h, const ExpansionCertificate& cert) {
  Json j;
  j["t"] = h.dimension();
  j["d"] = h.degree();
  j["n"] = h.vertex_count();
  j["edges"] = h.edge_count();
  j["triples"] = h.triple_count();
  j["epsilon"] = rational_json(cert.epsilon);
  j["edge_bound"] = rational_json(cert.edge_bound);
  j["triple_bound"] = rational_json(cert.triple_bound);
  return j;
}

Json expansion_to_json(const Hypergraph3& h, const ExpansionResult& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["ratio"] = rational_json(r.ratio);
  Json witness = Json::array();
  for (std::size_t idx : r.witness) {
    const Edge& e = h.edges()[idx];
    witness.push_back({e.u, e.v});
  }
  j["witness"] = witness;
  j["subsets_examined"] = r.subsets_examined;
  return j;
}

Json crossing_to_json(const CrossingCount& c) {
  Json j;
  j["count"] = c.count;
  j["incidence_count"] = c.incidence_count;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["gamma"] = c.gamma;
  j["main_term"] = c.main_term;
  j["window"] = c.window;
  j["count_within"] = c.count_within;
  j["incidence_within"] = c.incidence_within;
  j["relative_deviation"] = c.relative_deviation;
  return j;
}

Json rapid_mixing_to_json(const RapidMixingReport& r) {
  Json j;
  j["epsilon"] = rational_json(r.epsilon);
  j["measured_degree"] = r.measured_degree;
  j["stated_degree"] = r.stated_degree;
  j["lambda_aux"] = r.lambda_aux;
  j["lambda_aux_ratio"] = r.lambda_aux_ratio;
  j["alpha_observed"] = r.alpha_observed;
  j["certified"] = r.certified;
  j["omega_constant"] = r.omega_constant ? Json(*r.omega_constant) : Json(nullptr);
  j["steps"] = r.steps;
  return j;
}

Json histogram_to_json(const WalkHistogram& w) {
  Json j;
  j["seed"] = w.options.seed;
  j["steps"] = w.options.steps;
  j["trials"] = w.options.trials;
  j["bucket_bits"] = w.bucket_bits;
  j["tv_estimate"] = w.tv_estimate;
  j["tv_stderr"] = w.tv_stderr;
  j["counts"] = w.counts;
  return j;
}

Json overlap_to_json(const OverlapReport& r) {
  Json j;
  j["best_point"] = {r.best_x, r.best_y};
  j["covered"] = r.covered;
  j["total"] = r.total;
  j["fraction"] = rational_json(r.fraction);
  j["fraction_value"] = boost::rational_cast<double>(r.fraction);
  j["candidates_examined"] = r.candidates_examined;
  return j;
}

std::string triples_csv(const Hypergraph3& h) {
  std::string out = "u,v,w,center\n";
  for (const Triple& t : h.triples()) {
    out += std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + "," +
           std::to_string(t.center) + "\n";
  }
  return out;
}

std::string mixing_csv(const MixingProfile& p) {
  std::string out = "step,l2_distance,envelope\n";
  for (std::size_t i = 0; i < p.distance.size(); ++i) {
    out += std::to_string(i) + "," + format_double(p.distance[i]) + "," +
           format_double(p.envelope[i]) + "\n";
  }
  return out;
}

Embedding parse_embedding_csv(std::string_view text, int t) {
  check_dimension(t);
  if (t > kMaxEmbeddingDimension) throw Error(ErrorCode::kSizeLimit, "embeddings support t <= 24");
  std::vector<Point> positions(group_order(t));
  std::vector<bool> seen(positions.size(), false);
  bool first = true;
  for (std::string_view line : split_lines(text)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_fields(line);
    if (first && fields.size() == 3 && fields[0] == "vertex") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() != 3) throw Error(ErrorCode::kParse, "embedding rows need vertex,x,y");
    const Element v = parse_element(fields[0], t);
    if (seen[v]) throw Error(ErrorCode::kInvalidInput, "vertex " + std::to_string(v) + " positioned twice");
    seen[v] = true;
    positions[v] = {quantize(parse_double(fields[1])), quantize(parse_double(fields[2]))};
  }
  for (std::size_t v = 0; v < seen.size(); ++v) {
    if (!seen[v]) throw Error(ErrorCode::kInvalidInput, "vertex " + std::to_string(v) + " has no position");
  }
  return Embedding(t, std::move(positions));
}

}  // namespace hyperexp
