// Copyright 2026 The claimgraph Authors.
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

#include "claimgraph/corpus.h"

#include <fstream>
#include <regex>

#include "claimgraph/error.h"
#include "claimgraph/text.h"
#include "json.hpp"

namespace claimgraph {
namespace {

using json = nlohmann::json;

// Splits the body after each run of terminators that is followed by
// whitespace or the end of the text.
std::vector<std::string> SplitSentences(std::string_view body,
                                        const SegmentationConfig &cfg) {
  std::vector<std::string> out;
  const auto cps = DecodeUtf8(body);
  size_t start = 0;
  size_t i = 0;
  auto emit = [&](size_t end_byte) {
    std::string_view piece =
        Trim(body.substr(start, end_byte - start));
    if (!piece.empty()) out.emplace_back(piece);
  };
  while (i < cps.size()) {
    if (cfg.terminators.count(cps[i].value) == 0) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < cps.size() && cfg.terminators.count(cps[j].value)) ++j;
    // Closing quotes and brackets belong to the sentence they end.
    while (j < cps.size() &&
           (cps[j].value == U'"' || cps[j].value == U'\'' ||
            cps[j].value == U')' || cps[j].value == 0xBB ||
            cps[j].value == 0x201D || cps[j].value == 0x2019)) {
      ++j;
    }
    if (j == cps.size() || IsSpace(cps[j].value)) {
      const size_t end_byte = j == cps.size() ? body.size() : cps[j].begin;
      emit(end_byte);
      start = end_byte;
    }
    i = j;
  }
  emit(body.size());
  return out;
}

std::optional<std::string> OptionalString(const json &obj, const char *key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorCode::kMalformedRecord,
                std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

bool IsIso8601(const std::string &s) {
  static const std::regex pattern(
      R"(^\d{4}-\d{2}-\d{2}([T ]\d{2}:\d{2}(:\d{2}(\.\d+)?)?(Z|[+-]\d{2}:?\d{2})?)?$)");
  return std::regex_match(s, pattern);
}

}  // namespace

std::vector<std::string> Segment(const ArticleRecord &article,
                                 const SegmentationConfig &cfg) {
  if (cfg.terminators.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no sentence terminators");
  }
  if (cfg.min_section_chars < 1) {
    throw Error(ErrorCode::kInvalidArgument, "min_section_chars must be >= 1");
  }
  const std::string_view title = Trim(article.title);
  const std::string_view body = Trim(article.body);
  if (title.empty() && body.empty()) {
    throw Error(ErrorCode::kEmptyArticle, article.url);
  }

  std::vector<std::string> sections;
  if (!title.empty()) sections.emplace_back(title);
  const size_t body_start = sections.size();
  std::string pending;  // short fragment waiting for a following sentence
  for (std::string &sentence : SplitSentences(body, cfg)) {
    if (!pending.empty()) {
      sentence = pending + " " + sentence;
      pending.clear();
    }
    if (CountCodePoints(sentence) >= cfg.min_section_chars) {
      sections.push_back(std::move(sentence));
    } else if (sections.size() > body_start) {
      sections.back() += " " + sentence;
    } else {
      pending = std::move(sentence);
    }
  }
  // Only short fragments, and nothing before them in the body.
  if (!pending.empty()) {
    if (sections.size() > body_start) {
      sections.back() += " " + pending;
    } else {
      sections.push_back(std::move(pending));
    }
  }
  return sections;
}

ArticleRecord ParseArticleRecord(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kMalformedRecord, e.what());
  }
  if (!obj.is_object()) {
    throw Error(ErrorCode::kMalformedRecord, "record is not an object");
  }
  ArticleRecord record;
  auto url = OptionalString(obj, "url");
  if (!url || url->empty()) {
    throw Error(ErrorCode::kMalformedRecord, "missing url");
  }
  record.url = std::move(*url);
  record.title = OptionalString(obj, "title").value_or("");
  record.body = OptionalString(obj, "body").value_or("");
  record.published_at = OptionalString(obj, "published_at");
  record.author = OptionalString(obj, "author");
  record.source = OptionalString(obj, "source");
  if (record.published_at && !IsIso8601(*record.published_at)) {
    throw Error(ErrorCode::kMalformedRecord,
                "published_at is not ISO-8601: " + *record.published_at);
  }
  if (Trim(record.title).empty() && Trim(record.body).empty()) {
    throw Error(ErrorCode::kMalformedRecord, "title and body both empty");
  }
  return record;
}

IngestStats IngestStream(std::istream &in, GraphStore &store,
                         const SegmentationConfig &cfg) {
  IngestStats stats;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    try {
      const ArticleRecord record = ParseArticleRecord(line);
      const UpsertResult result = store.UpsertArticle(record, Segment(record, cfg));
      stats.sections += result.section_delta;
      switch (result.outcome) {
        case UpsertOutcome::kInserted:
          ++stats.articles;
          stats.touched.push_back(result.id);
          break;
        case UpsertOutcome::kReplaced:
          ++stats.replaced;
          stats.touched.push_back(result.id);
          break;
        case UpsertOutcome::kUnchanged:
          ++stats.unchanged;
          break;
      }
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kMalformedRecord &&
          e.code() != ErrorCode::kEmptyArticle) {
        throw;
      }
      ++stats.skipped;
      stats.errors.push_back({lineno, e.what()});
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "read failed");
  return stats;
}

IngestStats IngestFile(const std::string &path, GraphStore &store,
                       const SegmentationConfig &cfg) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  return IngestStream(in, store, cfg);
}

AnnotateStats AnnotateSections(GraphStore &store, const EntityLinker &linker,
                               const LinkerConfig &cfg,
                               const std::vector<SectionId> &sections) {
  AnnotateStats stats;
  for (SectionId sid : sections) {
    const auto info = store.GetSection(sid);
    if (!info) continue;
    ++stats.sections;
    for (const EntityMention &m : linker.Annotate(info->text, cfg)) {
      store.AttachEntity(sid, m);
      ++stats.mentions;
    }
  }
  return stats;
}

}  // namespace claimgraph
