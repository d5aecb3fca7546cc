// Copyright 2026 The gmdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gmdlab/core.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "gmdlab/errors.h"

namespace gmdlab {
namespace {

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

[[noreturn]] void Fail(int line_no, const std::string& message) {
  throw ValidationError("line " + std::to_string(line_no) + ": " + message);
}

int ParseInt(std::string_view token, int line_no, const char* what) {
  int value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    Fail(line_no, std::string("malformed ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

Rational ParseNumber(std::string_view token, int line_no) {
  try {
    return ParseRational(token);
  } catch (const ValidationError& e) {
    Fail(line_no, e.what());
  }
}

struct RawLine {
  int line_no;
  std::vector<std::string_view> tokens;
};

std::vector<RawLine> SplitLines(std::string_view text) {
  std::vector<RawLine> lines;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = Tokenize(line);
    if (!tokens.empty()) lines.push_back({line_no, std::move(tokens)});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

void CheckVertex(int v, int n, int line_no) {
  if (v < 0 || v >= n) {
    Fail(line_no, "vertex " + std::to_string(v) + " out of range 0.." + std::to_string(n - 1));
  }
}

GmdInstance ParseGmdLines(const std::vector<RawLine>& lines) {
  const auto& header = lines.front();
  if (header.tokens.size() != 2) Fail(header.line_no, "expected 'gmd <T>'");
  const int T = ParseInt(header.tokens[1], header.line_no, "T");
  if (T < 1) Fail(header.line_no, "T must be positive");
  std::optional<int> n;
  bool normalize = false;
  std::vector<GmdEdge> edges;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto& [line_no, tok] = lines[i];
    if (tok[0] == "v") {
      if (n) Fail(line_no, "duplicate 'v' line");
      if (tok.size() != 2) Fail(line_no, "expected 'v <n>'");
      n = ParseInt(tok[1], line_no, "vertex count");
      if (*n < 0) Fail(line_no, "negative vertex count");
    } else if (tok[0] == "normalize") {
      if (tok.size() != 1) Fail(line_no, "unexpected tokens after 'normalize'");
      normalize = true;
    } else if (tok[0] == "e") {
      if (!n) Fail(line_no, "'e' before 'v'");
      if (tok.size() != 5) Fail(line_no, "expected 'e <tail> <head> <label> <weight>'");
      GmdEdge e;
      e.tail = ParseInt(tok[1], line_no, "tail");
      e.head = ParseInt(tok[2], line_no, "head");
      e.label = ParseInt(tok[3], line_no, "label");
      e.weight = ParseNumber(tok[4], line_no);
      CheckVertex(e.tail, *n, line_no);
      CheckVertex(e.head, *n, line_no);
      if (e.tail == e.head) Fail(line_no, "self-loop at vertex " + std::to_string(e.tail));
      if (e.label < 1 || e.label > T) {
        Fail(line_no, "label " + std::to_string(e.label) + " outside 1.." + std::to_string(T));
      }
      if (e.weight < 0) Fail(line_no, "negative weight");
      edges.push_back(std::move(e));
    } else {
      Fail(line_no, "unknown directive '" + std::string(tok[0]) + "'");
    }
  }
  if (!n) throw ValidationError("missing 'v <n>' line");
  GmdInstance inst(T, *n, std::move(edges));
  if (normalize) {
    if (inst.total_weight() == 0) throw ValidationError("cannot normalize: total weight is 0");
    return inst.Normalized();
  }
  return inst;
}

GpInstance ParseGpLines(const std::vector<RawLine>& lines) {
  const auto& header = lines.front();
  if (header.tokens.size() != 1) Fail(header.line_no, "expected 'gp'");
  std::optional<int> n;
  std::optional<BigInt> M;
  std::vector<GpEdge> edges;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto& [line_no, tok] = lines[i];
    if (tok[0] == "v") {
      if (n) Fail(line_no, "duplicate 'v' line");
      if (tok.size() != 2) Fail(line_no, "expected 'v <n>'");
      n = ParseInt(tok[1], line_no, "vertex count");
      if (*n < 0) Fail(line_no, "negative vertex count");
    } else if (tok[0] == "M") {
      if (tok.size() != 2) Fail(line_no, "expected 'M <integer>'");
      Rational m = ParseNumber(tok[1], line_no);
      if (m.get_den() != 1 || m < 2) Fail(line_no, "M must be an integer >= 2");
      M = m.get_num();
    } else if (tok[0] == "e") {
      if (!n) Fail(line_no, "'e' before 'v'");
      if (tok.size() != 5) Fail(line_no, "expected 'e <u> <v> <budget> <weight>'");
      GpEdge e;
      e.u = ParseInt(tok[1], line_no, "endpoint");
      e.v = ParseInt(tok[2], line_no, "endpoint");
      CheckVertex(e.u, *n, line_no);
      CheckVertex(e.v, *n, line_no);
      if (e.u == e.v) Fail(line_no, "self-loop at vertex " + std::to_string(e.u));
      const std::string_view b = tok[3];
      if (b.size() > 2 && b.substr(0, 2) == "M^") {
        if (!M) Fail(line_no, "budget token '" + std::string(b) + "' without an 'M' line");
        const int k = ParseInt(b.substr(2), line_no, "exponent");
        if (k < 0) Fail(line_no, "negative exponent");
        e.budget = Rational(Pow(*M, static_cast<uint64_t>(k)));
      } else {
        e.budget = ParseNumber(b, line_no);
      }
      if (e.budget <= 0) Fail(line_no, "budget must be positive");
      e.weight = ParseNumber(tok[4], line_no);
      if (e.weight < 0) Fail(line_no, "negative weight");
      edges.push_back(std::move(e));
    } else {
      Fail(line_no, "unknown directive '" + std::string(tok[0]) + "'");
    }
  }
  if (!n) throw ValidationError("missing 'v <n>' line");
  return GpInstance(*n, std::move(edges));
}

}  // namespace

GmdInstance::GmdInstance(int T, int num_vertices, std::vector<GmdEdge> edges)
    : T_(T), num_vertices_(num_vertices) {
  if (T < 1) throw ValidationError("T must be positive");
  if (num_vertices < 0) throw ValidationError("negative vertex count");
  std::map<std::tuple<int, int, int>, Rational> merged;
  for (auto& e : edges) {
    if (e.tail < 0 || e.tail >= num_vertices || e.head < 0 || e.head >= num_vertices) {
      throw ValidationError("edge endpoint out of range");
    }
    if (e.tail == e.head) throw ValidationError("self-loop at vertex " + std::to_string(e.tail));
    if (e.label < 1 || e.label > T) {
      throw ValidationError("label " + std::to_string(e.label) + " outside 1.." + std::to_string(T));
    }
    if (e.weight < 0) throw ValidationError("negative weight");
    merged[{e.tail, e.head, e.label}] += e.weight;
  }
  edges_.reserve(merged.size());
  for (auto& [key, w] : merged) {
    edges_.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), w});
    total_weight_ += w;
  }
}

GmdInstance GmdInstance::Normalized() const {
  if (total_weight_ == 0) throw ValidationError("cannot normalize: total weight is 0");
  GmdInstance copy = *this;
  for (auto& e : copy.edges_) e.weight /= total_weight_;
  copy.total_weight_ = 1;
  return copy;
}

GpInstance::GpInstance(int num_vertices, std::vector<GpEdge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices < 0) throw ValidationError("negative vertex count");
  for (const auto& e : edges_) {
    if (e.u < 0 || e.u >= num_vertices || e.v < 0 || e.v >= num_vertices) {
      throw ValidationError("edge endpoint out of range");
    }
    if (e.u == e.v) throw ValidationError("self-loop at vertex " + std::to_string(e.u));
    if (e.budget <= 0) throw ValidationError("budget must be positive");
    if (e.weight < 0) throw ValidationError("negative weight");
  }
  std::stable_sort(edges_.begin(), edges_.end(), [](const GpEdge& a, const GpEdge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    if (a.budget != b.budget) return a.budget < b.budget;
    return a.weight < b.weight;
  });
}

Digraph SkeletonOf(const GmdInstance& inst) {
  Digraph g{inst.num_vertices(), {}};
  for (const auto& e : inst.edges()) {
    if (g.arcs.empty() || g.arcs.back() != std::pair{e.tail, e.head}) {
      g.arcs.emplace_back(e.tail, e.head);
    }
  }
  return g;
}

std::vector<int> FindDirectedCycle(const Digraph& graph) {
  const int n = graph.num_vertices;
  std::vector<std::vector<int>> out(n);
  for (auto [u, v] : graph.arcs) out[u].push_back(v);
  for (auto& list : out) std::sort(list.begin(), list.end());
  // 0 = unvisited, 1 = on stack, 2 = done.
  std::vector<int> state(n, 0), parent(n, -1);
  std::vector<size_t> next(n, 0);
  for (int root = 0; root < n; ++root) {
    if (state[root] != 0) continue;
    std::vector<int> stack{root};
    state[root] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      if (next[u] < out[u].size()) {
        const int v = out[u][next[u]++];
        if (state[v] == 0) {
          state[v] = 1;
          parent[v] = u;
          stack.push_back(v);
        } else if (state[v] == 1) {
          std::vector<int> cycle;
          for (int w = u; w != v; w = parent[w]) cycle.push_back(w);
          cycle.push_back(v);
          std::reverse(cycle.begin(), cycle.end());
          return cycle;
        }
      } else {
        state[u] = 2;
        stack.pop_back();
      }
    }
  }
  return {};
}

Instance ParseInstance(std::string_view text) {
  const auto lines = SplitLines(text);
  if (lines.empty()) throw ValidationError("empty instance");
  const auto& kind = lines.front().tokens.front();
  if (kind == "gmd") return ParseGmdLines(lines);
  if (kind == "gp") return ParseGpLines(lines);
  Fail(lines.front().line_no, "expected 'gmd <T>' or 'gp' header");
}

GmdInstance ParseGmd(std::string_view text) {
  auto inst = ParseInstance(text);
  if (auto* g = std::get_if<GmdInstance>(&inst)) return std::move(*g);
  throw ValidationError("expected a gmd instance");
}

GpInstance ParseGp(std::string_view text) {
  auto inst = ParseInstance(text);
  if (auto* g = std::get_if<GpInstance>(&inst)) return std::move(*g);
  throw ValidationError("expected a gp instance");
}

std::string SerializeInstance(const GmdInstance& inst) {
  std::ostringstream out;
  out << "gmd " << inst.T() << "\n";
  out << "v " << inst.num_vertices() << "\n";
  for (const auto& e : inst.edges()) {
    out << "e " << e.tail << " " << e.head << " " << e.label << " " << ToString(e.weight) << "\n";
  }
  return out.str();
}

std::string SerializeInstance(const GpInstance& inst) {
  std::ostringstream out;
  out << "gp\n";
  out << "v " << inst.num_vertices() << "\n";
  for (const auto& e : inst.edges()) {
    out << "e " << e.u << " " << e.v << " " << ToString(e.budget) << " " << ToString(e.weight)
        << "\n";
  }
  return out.str();
}

void ValidateLabeling(const GmdInstance& inst, const Labeling& labeling) {
  if (labeling.size() != inst.num_vertices()) {
    throw ValidationError("labeling covers " + std::to_string(labeling.size()) + " of " +
                          std::to_string(inst.num_vertices()) + " vertices");
  }
  for (int v = 0; v < labeling.size(); ++v) {
    if (labeling[v] < 0 || labeling[v] > inst.T()) {
      throw ValidationError("label " + std::to_string(labeling[v]) + " at vertex " +
                            std::to_string(v) + " outside 0.." + std::to_string(inst.T()));
    }
  }
}

void ValidatePricing(int num_vertices, const Pricing& pricing) {
  if (pricing.size() != num_vertices) {
    throw ValidationError("pricing covers " + std::to_string(pricing.size()) + " of " +
                          std::to_string(num_vertices) + " vertices");
  }
  for (int v = 0; v < pricing.size(); ++v) {
    if (pricing[v] < 0) throw ValidationError("negative price at vertex " + std::to_string(v));
  }
}

Rational ValGmd(const GmdInstance& inst, const Labeling& labeling) {
  ValidateLabeling(inst, labeling);
  Rational value;
  for (const auto& e : inst.edges()) {
    if (labeling[e.tail] == 0 && labeling[e.head] == e.label) value += e.weight;
  }
  return value;
}

Rational ValGp(const GpInstance& inst, const Pricing& pricing) {
  ValidatePricing(inst.num_vertices(), pricing);
  Rational value, paid;
  for (const auto& e : inst.edges()) {
    paid = pricing[e.u] + pricing[e.v];
    if (paid <= e.budget) value += e.weight * paid;
  }
  return value;
}

Rational Ndeg(const GmdInstance& inst) {
  if (inst.edges().empty()) throw ValidationError("ndeg of an instance without edges");
  if (!inst.weights_normalized()) throw ValidationError("ndeg requires weights summing to 1");
  std::vector<Rational> max_out(inst.num_vertices());
  for (const auto& e : inst.edges()) max_out[e.tail] = std::max(max_out[e.tail], e.weight);
  Rational sum;
  for (const auto& w : max_out) sum += w;
  return 1 / sum;
}

}  // namespace gmdlab
