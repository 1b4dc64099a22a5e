// Copyright 2026 The Script Forge Authors.
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

#include "scriptforge/entity_linker.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "scriptforge/error.h"
#include "scriptforge/text.h"

namespace scriptforge {

namespace {

std::string PhraseKey(std::string_view text) {
  std::string key;
  for (const std::string &token : Tokenize(text)) {
    if (!key.empty()) key.push_back(' ');
    key += token;
  }
  return key;
}

std::vector<std::string> SplitOn(std::string_view line, char sep) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t end = line.find(sep, start);
    if (end == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, end - start));
    start = end + 1;
  }
}

}  // namespace

KBIndex::KBIndex(std::vector<KBEntry> entries) : entries_(std::move(entries)) {
  for (size_t i = 0; i < entries_.size(); ++i) {
    const KBEntry &e = entries_[i];
    if (!qid_index_.emplace(e.qid, i).second) {
      throw Error(ErrorCode::kDuplicateQid, "duplicate qid " + e.qid,
                  {{"qid", e.qid}});
    }
    std::set<std::string> tokens;
    std::set<std::string> phrases;
    auto add_form = [&](const std::string &form) {
      for (std::string &t : Tokenize(form)) tokens.insert(std::move(t));
      std::string key = PhraseKey(form);
      if (!key.empty()) phrases.insert(std::move(key));
    };
    add_form(e.label);
    for (const std::string &alias : e.aliases) add_form(alias);
    for (const std::string &t : tokens) token_index_[t].push_back(i);
    for (const std::string &p : phrases) phrase_index_[p].push_back(i);
  }
}

KBIndex KBIndex::FromTsv(std::string_view text) {
  std::vector<KBEntry> entries;
  std::set<std::string> seen;
  size_t line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty() || line.front() == '#') continue;

    auto malformed = [line_no](const std::string &why) {
      return Error(ErrorCode::kMalformedRow,
                   "line " + std::to_string(line_no) + ": " + why,
                   {{"line", line_no}});
    };
    const std::vector<std::string> fields = SplitOn(line, '\t');
    if (fields.size() != 5) {
      throw malformed("expected 5 tab-separated fields, found " +
                      std::to_string(fields.size()));
    }
    KBEntry entry;
    entry.qid = Trim(fields[0]);
    entry.label = Trim(fields[1]);
    if (entry.qid.empty()) throw malformed("empty qid");
    if (entry.label.empty()) throw malformed("empty label");
    for (const std::string &alias : SplitOn(fields[2], '|')) {
      std::string a = Trim(alias);
      if (!a.empty()) entry.aliases.push_back(std::move(a));
    }
    entry.description = Trim(fields[3]);
    const std::string flag = ToLowerAscii(Trim(fields[4]));
    if (flag == "true" || flag == "1") {
      entry.is_class = true;
    } else if (flag == "false" || flag == "0") {
      entry.is_class = false;
    } else {
      throw malformed("is_class must be true/false/1/0, got '" + fields[4] + "'");
    }
    if (!seen.insert(entry.qid).second) {
      throw Error(ErrorCode::kDuplicateQid,
                  "line " + std::to_string(line_no) + ": duplicate qid " +
                      entry.qid,
                  {{"qid", entry.qid}, {"line", line_no}});
    }
    entries.push_back(std::move(entry));
    if (end == text.size()) break;
  }
  return KBIndex(std::move(entries));
}

KBIndex KBIndex::FromFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read knowledge base " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromTsv(buffer.str());
}

const KBEntry *KBIndex::Find(std::string_view qid) const {
  auto it = qid_index_.find(qid);
  return it == qid_index_.end() ? nullptr : &entries_[it->second];
}

std::vector<RetrievedEntry> KBIndex::Search(std::string_view label_text,
                                            size_t limit) const {
  if (Trim(label_text).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "search label must be non-empty");
  }
  std::vector<std::string> query = Tokenize(label_text);
  std::sort(query.begin(), query.end());
  query.erase(std::unique(query.begin(), query.end()), query.end());
  if (query.empty() || limit == 0) return {};

  std::set<size_t> exact;
  if (auto it = phrase_index_.find(PhraseKey(label_text));
      it != phrase_index_.end()) {
    exact.insert(it->second.begin(), it->second.end());
  }
  std::map<size_t, size_t> matched;  // entry -> distinct query tokens found
  for (const std::string &token : query) {
    auto it = token_index_.find(token);
    if (it == token_index_.end()) continue;
    for (size_t i : it->second) ++matched[i];
  }

  std::vector<RetrievedEntry> results;
  for (const auto &[i, count] : matched) {
    if (!entries_[i].is_class) continue;
    const bool is_exact = exact.contains(i);
    const double score =
        is_exact ? 1.0
                 : static_cast<double>(count) / static_cast<double>(query.size());
    results.push_back({&entries_[i], score, is_exact});
  }
  std::sort(results.begin(), results.end(),
            [](const RetrievedEntry &a, const RetrievedEntry &b) {
              if (a.exact != b.exact) return a.exact;
              if (a.score != b.score) return a.score > b.score;
              return a.entry->qid < b.entry->qid;
            });
  if (results.size() > limit) results.resize(limit);
  return results;
}

std::vector<LinkCandidate> Rerank(std::string_view label_text,
                                  const std::vector<RetrievedEntry> &candidates,
                                  EmbeddingProvider &provider) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "rerank needs at least one candidate");
  }
  std::vector<std::string> texts{CollapseWhitespace(label_text)};
  for (const RetrievedEntry &c : candidates) texts.push_back(c.entry->description);
  const std::vector<EmbeddingVector> vectors = provider.Embed(texts);
  if (vectors.size() != texts.size()) {
    throw Error(ErrorCode::kProviderUnavailable,
                "provider returned the wrong number of vectors");
  }
  std::vector<LinkCandidate> out;
  for (size_t i = 0; i < candidates.size(); ++i) {
    out.push_back({*candidates[i].entry, candidates[i].score,
                   Cosine(vectors[0], vectors[i + 1]), 0});
  }
  std::sort(out.begin(), out.end(),
            [](const LinkCandidate &a, const LinkCandidate &b) {
              if (a.rerank_score != b.rerank_score) {
                return a.rerank_score > b.rerank_score;
              }
              return a.entry.qid < b.entry.qid;
            });
  for (size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i + 1);
  return out;
}

std::vector<LinkCandidate> LinkCandidates(const KBIndex &index,
                                          std::string_view label_text,
                                          EmbeddingProvider &provider,
                                          size_t retrieval_depth,
                                          size_t presented) {
  const std::vector<RetrievedEntry> retrieved =
      index.Search(label_text, retrieval_depth);
  if (retrieved.empty()) return {};
  std::vector<LinkCandidate> ranked = Rerank(label_text, retrieved, provider);
  if (ranked.size() > presented) ranked.resize(presented);
  return ranked;
}

LinkDecision DecideLink(Script &script, const CandidateSet &current,
                        uint64_t presented_version,
                        const std::optional<std::string> &qid) {
  if (presented_version != current.set_version) {
    throw Error(ErrorCode::kStaleCandidate,
                "candidate set " + std::to_string(presented_version) +
                    " was replaced by " + std::to_string(current.set_version),
                {{"presented", presented_version},
                 {"current", current.set_version}});
  }
  LinkDecision decision;
  decision.variable = current.variable;
  decision.label = current.label;
  decision.set_version = current.set_version;
  for (const LinkCandidate &c : current.candidates) {
    decision.offered.push_back(c.entry.qid);
  }
  if (qid && std::find(decision.offered.begin(), decision.offered.end(), *qid) ==
                 decision.offered.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                *qid + " is not among the presented candidates",
                {{"qid", *qid}});
  }
  decision.chosen = qid;
  script.SetKbLink(current.variable, qid);
  return decision;
}

}  // namespace scriptforge
