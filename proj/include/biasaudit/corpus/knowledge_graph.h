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


#ifndef BIASAUDIT_CORPUS_KNOWLEDGE_GRAPH_H_
#define BIASAUDIT_CORPUS_KNOWLEDGE_GRAPH_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace biasaudit {

// String <-> dense index map; indices follow first-insertion order.
class Vocabulary {
 public:
  std::uint32_t Intern(std::string_view name);
  std::optional<std::uint32_t> Find(std::string_view name) const;
  const std::string& Name(std::uint32_t index) const { return names_[index]; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

struct Triple {
  std::uint32_t head;
  std::uint32_t relation;
  std::uint32_t tail;

  bool operator==(const Triple&) const = default;
};

struct Edge {
  std::uint32_t relation;
  std::uint32_t tail;
};

// Immutable triple store with a CSR out-adjacency index.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;
  KnowledgeGraph(Vocabulary entities, Vocabulary relations,
                 std::vector<Triple> triples);

  const Vocabulary& entities() const { return entities_; }
  const Vocabulary& relations() const { return relations_; }
  std::span<const Triple> triples() const { return triples_; }
  std::size_t num_entities() const { return entities_.size(); }
  std::size_t num_relations() const { return relations_.size(); }
  bool empty() const { return triples_.empty(); }

  // Out-edges of `head` in file order.
  std::span<const Edge> OutEdges(std::uint32_t head) const;

 private:
  Vocabulary entities_;
  Vocabulary relations_;
  std::vector<Triple> triples_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Edge> edges_;
};

// head<TAB>relation<TAB>tail per line; blank lines are skipped. Throws
// MalformedTriple with the 1-based line number.
KnowledgeGraph ParseKnowledgeGraph(std::istream& in);
KnowledgeGraph LoadKnowledgeGraph(const std::filesystem::path& path);
void WriteKnowledgeGraph(const KnowledgeGraph& kg, std::ostream& out);

}  // namespace biasaudit

#endif  // BIASAUDIT_CORPUS_KNOWLEDGE_GRAPH_H_
