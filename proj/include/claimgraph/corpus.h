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

// Article ingestion: line-delimited JSON records are segmented into
// sentence-level sections and upserted into the graph.

#ifndef CLAIMGRAPH_CORPUS_H_
#define CLAIMGRAPH_CORPUS_H_

#include <cstddef>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "claimgraph/entity_linking.h"
#include "claimgraph/graph_store.h"
#include "claimgraph/types.h"

namespace claimgraph {

struct SegmentationConfig {
  // ';' doubles as the Greek question mark.
  std::set<char32_t> terminators = {U'.', U'!', U'?', U';'};
  // Body fragments with fewer code points are merged into the preceding
  // section. The title is never merged.
  size_t min_section_chars = 3;
};

// Section 0 is the title when non-empty; the body follows in order. A
// terminator ends a sentence only when followed by whitespace or the end of
// the text, so "3.5" and "e.g" stay whole.
std::vector<std::string> Segment(const ArticleRecord &article,
                                 const SegmentationConfig &cfg = {});

// Parses one ingestion-format line. Throws MalformedRecord.
ArticleRecord ParseArticleRecord(std::string_view line);

struct IngestError {
  size_t line = 0;
  std::string message;
};

struct IngestStats {
  size_t articles = 0;  // new article nodes
  long sections = 0;    // net change in section nodes
  size_t replaced = 0;
  size_t unchanged = 0;
  size_t skipped = 0;
  std::vector<IngestError> errors;
  // Articles inserted or replaced by this run, in input order.
  std::vector<ArticleId> touched;
};

// Single writer: callers must not ingest into the same store concurrently.
IngestStats IngestStream(std::istream &in, GraphStore &store,
                         const SegmentationConfig &cfg = {});

// Throws IoFailure when the file cannot be read.
IngestStats IngestFile(const std::string &path, GraphStore &store,
                       const SegmentationConfig &cfg = {});

struct AnnotateStats {
  size_t sections = 0;
  size_t mentions = 0;
};

// Links every given section and attaches the mentions. Re-running is
// idempotent because repeated edges keep the max score.
AnnotateStats AnnotateSections(GraphStore &store, const EntityLinker &linker,
                               const LinkerConfig &cfg,
                               const std::vector<SectionId> &sections);

}  // namespace claimgraph

#endif  // CLAIMGRAPH_CORPUS_H_
