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

// Snapshot layout (all integers little-endian, strings u32 length + bytes):
//
//   "FFGRAPH1"  u32 format version
//   u64 next article id, u64 next section id
//   Article table   u64 count, {u64 id, url, title, body, 3 x optional str}
//   Section table   u64 count, {u64 id, text}
//   Entity table    u64 count, {entity_id, label, u32 n, n x type}
//   HAS_SECTION     u64 count, {u64 article, u64 section, u32 ordinal}
//   HAS_ENTITY      u64 count, {u64 section, entity_id, f64 score}
//   u32 CRC-32 of all preceding bytes
//
// An optional string is a u8 presence flag followed by the string.

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>

#include "claimgraph/error.h"
#include "claimgraph/graph_store.h"

namespace claimgraph {
namespace {

constexpr char kMagic[8] = {'F', 'F', 'G', 'R', 'A', 'P', 'H', '1'};
constexpr uint32_t kFormatVersion = 1;

class Writer {
 public:
  void U8(uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void U32(uint32_t v) {
    for (int i = 0; i < 4; ++i) U8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void U64(uint64_t v) {
    for (int i = 0; i < 8; ++i) U8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void F64(double v) { U64(std::bit_cast<uint64_t>(v)); }
  void Str(std::string_view s) {
    U32(static_cast<uint32_t>(s.size()));
    out_.append(s);
  }
  void OptStr(const std::optional<std::string> &s) {
    U8(s.has_value() ? 1 : 0);
    if (s) Str(*s);
  }
  void Raw(std::string_view s) { out_.append(s); }
  std::string &bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  uint8_t U8() {
    Need(1);
    return static_cast<uint8_t>(in_[pos_++]);
  }
  uint32_t U32() {
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(U8()) << (8 * i);
    return v;
  }
  uint64_t U64() {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(U8()) << (8 * i);
    return v;
  }
  double F64() { return std::bit_cast<double>(U64()); }
  std::string Str() {
    const uint32_t len = U32();
    Need(len);
    std::string s(in_.substr(pos_, len));
    pos_ += len;
    return s;
  }
  std::optional<std::string> OptStr() {
    const uint8_t flag = U8();
    if (flag > 1) Fail("bad optional flag");
    if (flag == 0) return std::nullopt;
    return Str();
  }
  // Table counts are bounded by the remaining bytes to reject absurd sizes
  // before allocating.
  uint64_t Count(size_t min_record_bytes) {
    const uint64_t count = U64();
    if (count > (in_.size() - pos_) / min_record_bytes) Fail("bad table size");
    return count;
  }
  bool AtEnd() const { return pos_ == in_.size(); }

  [[noreturn]] static void Fail(const std::string &what) {
    throw Error(ErrorCode::kCorruptSnapshot, what);
  }

 private:
  void Need(size_t n) {
    if (in_.size() - pos_ < n) Fail("truncated");
  }

  std::string_view in_;
  size_t pos_ = 0;
};

uint32_t Crc32(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef *>(bytes.data()),
              static_cast<uInt>(bytes.size()));
  return static_cast<uint32_t>(crc);
}

}  // namespace

std::string GraphStore::Serialize(const State &state) {
  Writer w;
  w.Raw(std::string_view(kMagic, sizeof(kMagic)));
  w.U32(kFormatVersion);
  w.U64(state.next_article);
  w.U64(state.next_section);

  w.U64(state.articles.size());
  for (const auto &[id, node] : state.articles) {
    w.U64(id.value);
    w.Str(node.record.url);
    w.Str(node.record.title);
    w.Str(node.record.body);
    w.OptStr(node.record.published_at);
    w.OptStr(node.record.author);
    w.OptStr(node.record.source);
  }

  w.U64(state.sections.size());
  for (const auto &[id, node] : state.sections) {
    w.U64(id.value);
    w.Str(node.text);
  }

  w.U64(state.entities.size());
  for (const auto &[entity_id, node] : state.entities) {
    w.Str(entity_id);
    w.Str(node.ref.label);
    w.U32(static_cast<uint32_t>(node.ref.types.size()));
    for (const std::string &type : node.ref.types) w.Str(type);
  }

  w.U64(state.sections.size());
  for (const auto &[id, node] : state.sections) {
    w.U64(node.article.value);
    w.U64(id.value);
    w.U32(node.ordinal);
  }

  uint64_t edges = 0;
  for (const auto &[id, node] : state.sections) edges += node.mentions.size();
  w.U64(edges);
  for (const auto &[id, node] : state.sections) {
    for (const auto &[entity_id, score] : node.mentions) {
      w.U64(id.value);
      w.Str(entity_id);
      w.F64(score);
    }
  }

  w.U32(Crc32(w.bytes()));
  return std::move(w.bytes());
}

GraphStore::State GraphStore::Parse(std::string_view bytes) {
  if (bytes.size() < sizeof(kMagic) + 8 ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    Reader::Fail("bad magic");
  }
  const std::string_view body = bytes.substr(0, bytes.size() - 4);
  Reader trailer(bytes.substr(bytes.size() - 4));
  if (trailer.U32() != Crc32(body)) Reader::Fail("checksum mismatch");

  Reader r(body.substr(sizeof(kMagic)));
  const uint32_t version = r.U32();
  if (version != kFormatVersion) {
    Reader::Fail("unsupported version " + std::to_string(version));
  }
  State state;
  state.next_article = r.U64();
  state.next_section = r.U64();

  const uint64_t narticles = r.Count(8 + 3 * 4 + 3);
  for (uint64_t i = 0; i < narticles; ++i) {
    const ArticleId id{r.U64()};
    ArticleNode node;
    node.record.url = r.Str();
    node.record.title = r.Str();
    node.record.body = r.Str();
    node.record.published_at = r.OptStr();
    node.record.author = r.OptStr();
    node.record.source = r.OptStr();
    if (id.value >= state.next_article) Reader::Fail("article id range");
    if (!state.by_url.emplace(node.record.url, id).second) {
      Reader::Fail("duplicate url");
    }
    if (!state.articles.emplace(id, std::move(node)).second) {
      Reader::Fail("duplicate article id");
    }
  }

  const uint64_t nsections = r.Count(8 + 4);
  for (uint64_t i = 0; i < nsections; ++i) {
    const SectionId id{r.U64()};
    SectionNode node;
    node.text = r.Str();
    if (id.value >= state.next_section) Reader::Fail("section id range");
    if (!state.sections.emplace(id, std::move(node)).second) {
      Reader::Fail("duplicate section id");
    }
  }

  const uint64_t nentities = r.Count(4 + 4 + 4);
  for (uint64_t i = 0; i < nentities; ++i) {
    EntityNode node;
    node.ref.entity_id = r.Str();
    node.ref.label = r.Str();
    const uint32_t ntypes = r.U32();
    for (uint32_t t = 0; t < ntypes; ++t) node.ref.types.push_back(r.Str());
    std::string key = node.ref.entity_id;
    if (key.empty()) Reader::Fail("empty entity id");
    if (!state.entities.emplace(std::move(key), std::move(node)).second) {
      Reader::Fail("duplicate entity");
    }
  }

  const uint64_t nhas_section = r.Count(8 + 8 + 4);
  if (nhas_section != state.sections.size()) {
    Reader::Fail("HAS_SECTION count differs from section count");
  }
  std::map<SectionId, bool> owned;
  for (uint64_t i = 0; i < nhas_section; ++i) {
    const ArticleId article{r.U64()};
    const SectionId section{r.U64()};
    const uint32_t ordinal = r.U32();
    auto a = state.articles.find(article);
    auto s = state.sections.find(section);
    if (a == state.articles.end() || s == state.sections.end()) {
      Reader::Fail("dangling HAS_SECTION edge");
    }
    if (!owned.emplace(section, true).second) {
      Reader::Fail("section owned twice");
    }
    s->second.article = article;
    s->second.ordinal = ordinal;
    a->second.sections.push_back(section);
  }
  for (auto &[id, node] : state.articles) {
    std::sort(node.sections.begin(), node.sections.end(),
              [&](SectionId x, SectionId y) {
                return state.sections.at(x).ordinal <
                       state.sections.at(y).ordinal;
              });
    for (size_t k = 0; k < node.sections.size(); ++k) {
      if (state.sections.at(node.sections[k]).ordinal != k) {
        Reader::Fail("non-contiguous section ordinals");
      }
    }
    if (node.sections.empty()) Reader::Fail("article without sections");
  }

  const uint64_t nmentions = r.Count(8 + 4 + 8);
  for (uint64_t i = 0; i < nmentions; ++i) {
    const SectionId section{r.U64()};
    std::string entity_id = r.Str();
    const double score = r.F64();
    auto s = state.sections.find(section);
    auto e = state.entities.find(entity_id);
    if (s == state.sections.end() || e == state.entities.end()) {
      Reader::Fail("dangling HAS_ENTITY edge");
    }
    if (!(score >= 0.0 && score <= 1.0)) Reader::Fail("score out of range");
    if (!s->second.mentions.emplace(std::move(entity_id), score).second) {
      Reader::Fail("duplicate HAS_ENTITY edge");
    }
    e->second.sections.insert(section);
  }
  if (!r.AtEnd()) Reader::Fail("trailing bytes");
  return state;
}

std::string GraphStore::SerializeSnapshot() const {
  std::shared_lock lock(mutex_);
  return Serialize(state_);
}

void GraphStore::SaveSnapshot(const std::string &path) const {
  const std::string bytes = SerializeSnapshot();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed: " + path);
}

GraphStats GraphStore::DeserializeSnapshot(std::string_view bytes) {
  State parsed = Parse(bytes);
  {
    std::unique_lock lock(mutex_);
    state_ = std::move(parsed);
  }
  return Stats();
}

GraphStats GraphStore::LoadSnapshot(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "read failed: " + path);
  return DeserializeSnapshot(buffer.str());
}

}  // namespace claimgraph
