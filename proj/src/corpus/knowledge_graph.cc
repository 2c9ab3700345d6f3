/*
 * Copyright 2026 The BiasAudit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "biasaudit/corpus/knowledge_graph.h"

#include <istream>
#include <ostream>

#include "biasaudit/common/error.h"
#include "biasaudit/common/io.h"

namespace biasaudit {

std::uint32_t Vocabulary::Intern(std::string_view name) {
  auto it = index_.find(std::string(name));
  if (it != index_.end()) return it->second;
  const auto idx = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(name);
  index_.emplace(names_.back(), idx);
  return idx;
}

std::optional<std::uint32_t> Vocabulary::Find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

KnowledgeGraph::KnowledgeGraph(Vocabulary entities, Vocabulary relations,
                               std::vector<Triple> triples)
    : entities_(std::move(entities)),
      relations_(std::move(relations)),
      triples_(std::move(triples)) {
  const std::size_t n = entities_.size();
  offsets_.assign(n + 1, 0);
  for (const Triple& t : triples_) {
    if (t.head >= n || t.tail >= n || t.relation >= relations_.size()) {
      throw Error(ErrorCode::kMalformedTriple, "index out of vocabulary range");
    }
    ++offsets_[t.head + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  edges_.resize(triples_.size());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Triple& t : triples_) {
    edges_[cursor[t.head]++] = Edge{t.relation, t.tail};
  }
}

std::span<const Edge> KnowledgeGraph::OutEdges(std::uint32_t head) const {
  if (head + 1 >= offsets_.size()) return {};
  return std::span<const Edge>(edges_).subspan(
      offsets_[head], offsets_[head + 1] - offsets_[head]);
}

KnowledgeGraph ParseKnowledgeGraph(std::istream& in) {
  Vocabulary entities;
  Vocabulary relations;
  std::vector<Triple> triples;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = StripCr(raw);
    if (text.empty()) continue;
    auto fields = SplitFields(text, '\t');
    if (fields.size() != 3 || fields[0].empty() || fields[1].empty() ||
        fields[2].empty()) {
      throw Error(ErrorCode::kMalformedTriple,
                  "line " + std::to_string(line) + ": expected 3 fields, got " +
                      std::to_string(fields.size()));
    }
    const std::uint32_t h = entities.Intern(fields[0]);
    const std::uint32_t r = relations.Intern(fields[1]);
    const std::uint32_t t = entities.Intern(fields[2]);
    triples.push_back({h, r, t});
  }
  return KnowledgeGraph(std::move(entities), std::move(relations),
                        std::move(triples));
}

KnowledgeGraph LoadKnowledgeGraph(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  return ParseKnowledgeGraph(in);
}

void WriteKnowledgeGraph(const KnowledgeGraph& kg, std::ostream& out) {
  for (const Triple& t : kg.triples()) {
    out << kg.entities().Name(t.head) << '\t' << kg.relations().Name(t.relation)
        << '\t' << kg.entities().Name(t.tail) << '\n';
  }
}

}  // namespace biasaudit
