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

// Similarity and inference scorers.
//
// Two scorer roles feed claim evaluation:
//
//   StsScorer  rates each candidate evidence text against the claim, in
//              [-1, 1]. The standard implementation embeds texts into unit
//              vectors and takes cosines.
//   NliScorer  turns a (premise, hypothesis) pair into a probability triple
//              over contradiction / entailment / neutral.
//
// The reference implementations are deterministic and model-free. They make
// pipeline behaviour testable; they are not semantic models. Real models are
// reached over HTTP through RemoteScorer (see remote_scoring.h).

#ifndef CLAIMGRAPH_SCORING_H_
#define CLAIMGRAPH_SCORING_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "claimgraph/evidence.h"

namespace claimgraph {

struct Embedding {
  std::vector<double> values;
  size_t dim() const { return values.size(); }
};

struct StsScore {
  double value = 0.0;
};

enum class NliLabel { kContradiction, kEntailment, kNeutral };

std::string_view NliLabelName(NliLabel label);

struct NliVerdict {
  double c = 0.0;  // contradiction
  double e = 0.0;  // entailment
  double n = 0.0;  // neutral

  // Largest component; exact ties go to neutral, then entailment.
  NliLabel Argmax() const;
};

// Unit-vector dot product clamped to [-1, 1]. Throws DimensionMismatch.
StsScore Cosine(const Embedding &u, const Embedding &v);

// logits are ordered (contradiction, entailment, neutral). Uses the
// max-shifted form exp(l_i - max l) / sum_j exp(l_j - max l). Throws
// NonFiniteLogit.
NliVerdict Softmax(const std::array<double, 3> &logits);

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual size_t Dim() const = 0;
  // One unit vector per text; texts must be non-empty.
  virtual std::vector<Embedding> Embed(
      std::span<const std::string> texts) const = 0;
};

// Hashed bag of tokens: texts are folded, split on non-letters, and each
// token's count is added to coordinate FNV-1a(token) mod dim before L2
// normalization. A text without letters is treated as a single token.
class HashedBagEmbedder : public EmbeddingProvider {
 public:
  static constexpr size_t kDefaultDim = 4096;

  explicit HashedBagEmbedder(size_t dim = kDefaultDim);

  size_t Dim() const override { return dim_; }
  std::vector<Embedding> Embed(
      std::span<const std::string> texts) const override;

  size_t Bucket(std::string_view folded_token) const;

 private:
  size_t dim_;
};

class StsScorer {
 public:
  virtual ~StsScorer() = default;
  // One score per text, in input order.
  virtual std::vector<StsScore> Score(
      std::string_view claim, std::span<const std::string> texts) const = 0;
};

class EmbeddingStsScorer : public StsScorer {
 public:
  explicit EmbeddingStsScorer(const EmbeddingProvider &provider)
      : provider_(provider) {}

  std::vector<StsScore> Score(
      std::string_view claim,
      std::span<const std::string> texts) const override;

 private:
  const EmbeddingProvider &provider_;
};

class NliScorer {
 public:
  virtual ~NliScorer() = default;
  virtual NliVerdict Classify(std::string_view premise,
                              std::string_view hypothesis) const = 0;
};

// Rule-based reference: containment holds when every hypothesis content
// token occurs in the premise; mismatch when the two texts' negation-marker
// counts differ in parity. Logits:
//   e = 4 * containment * (1 - mismatch)
//   c = 4 * containment * mismatch
//   n = 2 * (1 - containment)
class ReferenceNli : public NliScorer {
 public:
  NliVerdict Classify(std::string_view premise,
                      std::string_view hypothesis) const override;

  // (contradiction, entailment, neutral) logits.
  static std::array<double, 3> Logits(std::string_view premise,
                                      std::string_view hypothesis);

  static bool IsNegationMarker(std::string_view folded_token);
};

struct RankedCandidate {
  CandidateEvidence candidate;
  StsScore sts;
  std::optional<NliVerdict> verdict;
};

// Best first: score descending, then fewer sections, then section-id
// sequence. Throws InvalidArgument on an empty candidate list.
std::vector<RankedCandidate> Rank(std::string_view claim,
                                  std::vector<CandidateEvidence> candidates,
                                  const StsScorer &scorer);

}  // namespace claimgraph

#endif  // CLAIMGRAPH_SCORING_H_
