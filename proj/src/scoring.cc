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

#include "claimgraph/scoring.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "claimgraph/error.h"
#include "claimgraph/text.h"

namespace claimgraph {
namespace {

uint64_t Fnv1a(std::string_view bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (char ch : bytes) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::string> LetterTokens(std::string_view text) {
  std::vector<std::string> out;
  for (Token &t : Tokenize(text, /*keep_digits=*/false)) {
    out.push_back(std::move(t.folded));
  }
  return out;
}

}  // namespace

std::string_view NliLabelName(NliLabel label) {
  switch (label) {
    case NliLabel::kContradiction: return "contradiction";
    case NliLabel::kEntailment: return "entailment";
    case NliLabel::kNeutral: return "neutral";
  }
  return "neutral";
}

NliLabel NliVerdict::Argmax() const {
  if (n >= e && n >= c) return NliLabel::kNeutral;
  if (e >= c) return NliLabel::kEntailment;
  return NliLabel::kContradiction;
}

StsScore Cosine(const Embedding &u, const Embedding &v) {
  if (u.dim() != v.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(u.dim()) + " vs " + std::to_string(v.dim()));
  }
  double dot = 0.0;
  for (size_t i = 0; i < u.dim(); ++i) dot += u.values[i] * v.values[i];
  return {std::clamp(dot, -1.0, 1.0)};
}

NliVerdict Softmax(const std::array<double, 3> &logits) {
  for (double l : logits) {
    if (!std::isfinite(l)) {
      throw Error(ErrorCode::kNonFiniteLogit, std::to_string(l));
    }
  }
  const double max = std::max({logits[0], logits[1], logits[2]});
  std::array<double, 3> ex{};
  double sum = 0.0;
  for (size_t i = 0; i < 3; ++i) {
    ex[i] = std::exp(logits[i] - max);
    sum += ex[i];
  }
  return {ex[0] / sum, ex[1] / sum, ex[2] / sum};
}

HashedBagEmbedder::HashedBagEmbedder(size_t dim) : dim_(dim) {
  if (dim_ == 0) throw Error(ErrorCode::kInvalidArgument, "dim must be > 0");
}

size_t HashedBagEmbedder::Bucket(std::string_view folded_token) const {
  return static_cast<size_t>(Fnv1a(folded_token) % dim_);
}

std::vector<Embedding> HashedBagEmbedder::Embed(
    std::span<const std::string> texts) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const std::string &text : texts) {
    if (Trim(text).empty()) {
      throw Error(ErrorCode::kInvalidArgument, "cannot embed empty text");
    }
    std::vector<std::string> tokens = LetterTokens(text);
    if (tokens.empty()) tokens.push_back(Fold(Trim(text)));
    std::vector<double> counts(dim_, 0.0);
    for (const std::string &t : tokens) counts[Bucket(t)] += 1.0;
    double norm2 = 0.0;
    for (double x : counts) norm2 += x * x;
    const double norm = std::sqrt(norm2);
    for (double &x : counts) x /= norm;
    out.push_back({std::move(counts)});
  }
  return out;
}

std::vector<StsScore> EmbeddingStsScorer::Score(
    std::string_view claim, std::span<const std::string> texts) const {
  if (texts.empty()) return {};
  std::vector<std::string> batch;
  batch.reserve(texts.size() + 1);
  batch.emplace_back(claim);
  batch.insert(batch.end(), texts.begin(), texts.end());
  const std::vector<Embedding> vectors = provider_.Embed(batch);
  if (vectors.size() != batch.size()) {
    throw Error(ErrorCode::kMalformedResponse, "embedding count mismatch");
  }
  std::vector<StsScore> scores;
  scores.reserve(texts.size());
  for (size_t i = 1; i < vectors.size(); ++i) {
    scores.push_back(Cosine(vectors[0], vectors[i]));
  }
  return scores;
}

bool ReferenceNli::IsNegationMarker(std::string_view folded_token) {
  // Folded forms of δεν, μην, όχι, not, no, never.
  static const std::set<std::string, std::less<>> kMarkers = {
      Fold("δεν"), Fold("μην"), Fold("όχι"), "not", "no", "never"};
  return kMarkers.count(folded_token) > 0;
}

std::array<double, 3> ReferenceNli::Logits(std::string_view premise,
                                           std::string_view hypothesis) {
  const auto premise_tokens = LetterTokens(premise);
  const auto hypothesis_tokens = LetterTokens(hypothesis);
  const std::set<std::string> premise_set(premise_tokens.begin(),
                                          premise_tokens.end());
  bool containment = true;
  for (const std::string &t : hypothesis_tokens) {
    if (IsNegationMarker(t)) continue;
    if (premise_set.count(t) == 0) {
      containment = false;
      break;
    }
  }
  auto negations = [](const std::vector<std::string> &tokens) {
    return std::count_if(tokens.begin(), tokens.end(),
                         [](const std::string &t) { return IsNegationMarker(t); });
  };
  const bool mismatch =
      (negations(premise_tokens) % 2) != (negations(hypothesis_tokens) % 2);
  const double cont = containment ? 1.0 : 0.0;
  const double mm = mismatch ? 1.0 : 0.0;
  return {4.0 * cont * mm, 4.0 * cont * (1.0 - mm), 2.0 * (1.0 - cont)};
}

NliVerdict ReferenceNli::Classify(std::string_view premise,
                                  std::string_view hypothesis) const {
  return Softmax(Logits(premise, hypothesis));
}

std::vector<RankedCandidate> Rank(std::string_view claim,
                                  std::vector<CandidateEvidence> candidates,
                                  const StsScorer &scorer) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "nothing to rank");
  }
  std::vector<std::string> texts;
  texts.reserve(candidates.size());
  for (const CandidateEvidence &c : candidates) texts.push_back(c.text);
  const std::vector<StsScore> scores = scorer.Score(claim, texts);
  if (scores.size() != candidates.size()) {
    throw Error(ErrorCode::kMalformedResponse, "score count mismatch");
  }
  std::vector<RankedCandidate> ranked;
  ranked.reserve(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    ranked.push_back({std::move(candidates[i]), scores[i], std::nullopt});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedCandidate &a, const RankedCandidate &b) {
                     if (a.sts.value != b.sts.value) {
                       return a.sts.value > b.sts.value;
                     }
                     if (a.candidate.sections.size() !=
                         b.candidate.sections.size()) {
                       return a.candidate.sections.size() <
                              b.candidate.sections.size();
                     }
                     return a.candidate.sections < b.candidate.sections;
                   });
  return ranked;
}

}  // namespace claimgraph
