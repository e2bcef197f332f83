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

#include "claimgraph/remote_scoring.h"

#include <algorithm>
#include <cmath>

#include "claimgraph/error.h"
#include "http_util.h"
#include "httplib.h"
#include "json.hpp"

namespace claimgraph {
namespace {

using json = nlohmann::json;

json ParseObject(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kMalformedResponse, e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorCode::kMalformedResponse, "response is not an object");
  }
  return doc;
}

const json &Rows(const json &doc, const char *key, size_t expected_rows) {
  auto it = doc.find(key);
  if (it == doc.end() || !it->is_array()) {
    throw Error(ErrorCode::kMalformedResponse,
                std::string("missing array '") + key + "'");
  }
  if (it->size() != expected_rows) {
    throw Error(ErrorCode::kMalformedResponse,
                std::string(key) + ": expected " +
                    std::to_string(expected_rows) + " rows, got " +
                    std::to_string(it->size()));
  }
  return *it;
}

std::vector<double> NumberRow(const json &row, size_t width) {
  if (!row.is_array() || row.size() != width) {
    throw Error(ErrorCode::kMalformedResponse,
                "row width differs from " + std::to_string(width));
  }
  std::vector<double> out;
  out.reserve(width);
  for (const json &x : row) {
    if (!x.is_number()) {
      throw Error(ErrorCode::kMalformedResponse, "non-numeric entry");
    }
    const double v = x.get<double>();
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kMalformedResponse, "non-finite entry");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

RemoteInfo ParseInfoResponse(std::string_view body) {
  const json doc = ParseObject(body);
  RemoteInfo info;
  if (!doc.contains("dim") || !doc["dim"].is_number_unsigned() ||
      doc["dim"].get<size_t>() == 0) {
    throw Error(ErrorCode::kMalformedResponse, "info: dim must be positive");
  }
  info.dim = doc["dim"].get<size_t>();
  info.model = doc.value("model", "");
  if (auto labels = doc.find("labels"); labels != doc.end()) {
    if (!labels->is_array() || labels->size() != 3) {
      throw Error(ErrorCode::kMalformedResponse, "info: labels must have 3");
    }
    const std::array<std::string, 3> wanted = {"contradiction", "entailment",
                                               "neutral"};
    for (size_t k = 0; k < 3; ++k) {
      auto pos = std::find(labels->begin(), labels->end(), wanted[k]);
      if (pos == labels->end()) {
        throw Error(ErrorCode::kMalformedResponse,
                    "info: labels lack " + wanted[k]);
      }
      info.class_index[k] = static_cast<size_t>(pos - labels->begin());
    }
  }
  return info;
}

std::vector<Embedding> ParseEmbedResponse(std::string_view body, size_t dim,
                                          size_t expected_rows) {
  const json doc = ParseObject(body);
  std::vector<Embedding> out;
  for (const json &row : Rows(doc, "vectors", expected_rows)) {
    Embedding e{NumberRow(row, dim)};
    double norm2 = 0.0;
    for (double x : e.values) norm2 += x * x;
    if (std::abs(std::sqrt(norm2) - 1.0) > kUnitNormTolerance) {
      throw Error(ErrorCode::kMalformedResponse,
                  "embedding is not unit norm: " + std::to_string(std::sqrt(norm2)));
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<NliVerdict> ParseNliResponse(std::string_view body,
                                         const RemoteInfo &info,
                                         size_t expected_rows) {
  const json doc = ParseObject(body);
  std::vector<NliVerdict> out;
  for (const json &row : Rows(doc, "probs", expected_rows)) {
    const std::vector<double> p = NumberRow(row, 3);
    double sum = 0.0;
    for (double x : p) {
      if (x < 0.0 || x > 1.0) {
        throw Error(ErrorCode::kMalformedResponse, "probability outside [0,1]");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
      throw Error(ErrorCode::kMalformedResponse,
                  "probabilities sum to " + std::to_string(sum));
    }
    out.push_back({p[info.class_index[0]], p[info.class_index[1]],
                   p[info.class_index[2]]});
  }
  return out;
}

RemoteScorer::RemoteScorer(RemoteScorerConfig config)
    : config_(std::move(config)),
      in_flight_(std::max(1, config_.max_in_flight)) {
  const auto split = internal::SplitUrl(config_.url);
  base_ = split.base;
  if (config_.max_batch == 0) config_.max_batch = 1;
}

std::string RemoteScorer::Get(const std::string &path) const {
  internal::SlotGuard slot(in_flight_);
  httplib::Client client(base_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  auto res = client.Get(path);
  if (!res) {
    throw Error(ErrorCode::kProviderUnavailable,
                "GET " + path + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kProviderUnavailable,
                "GET " + path + ": HTTP " + std::to_string(res->status));
  }
  return res->body;
}

std::string RemoteScorer::Post(const std::string &path,
                               const std::string &body) const {
  internal::SlotGuard slot(in_flight_);
  httplib::Client client(base_);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  auto res = client.Post(path, body, "application/json");
  if (!res) {
    throw Error(ErrorCode::kProviderUnavailable,
                "POST " + path + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::kProviderUnavailable,
                "POST " + path + ": HTTP " + std::to_string(res->status));
  }
  return res->body;
}

RemoteInfo RemoteScorer::Info() const {
  {
    std::lock_guard lock(info_mutex_);
    if (info_) return *info_;
  }
  RemoteInfo info = ParseInfoResponse(Get("/info"));
  std::lock_guard lock(info_mutex_);
  if (!info_) info_ = info;
  return *info_;
}

bool RemoteScorer::Reachable() const {
  try {
    ParseInfoResponse(Get("/info"));
    return true;
  } catch (const Error &) {
    return false;
  }
}

size_t RemoteScorer::Dim() const { return Info().dim; }

std::vector<Embedding> RemoteScorer::Embed(
    std::span<const std::string> texts) const {
  const size_t dim = Dim();
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (size_t start = 0; start < texts.size(); start += config_.max_batch) {
    const size_t end = std::min(texts.size(), start + config_.max_batch);
    json request = {{"texts", json::array()}};
    for (size_t i = start; i < end; ++i) request["texts"].push_back(texts[i]);
    auto rows = ParseEmbedResponse(Post("/embed", request.dump()), dim,
                                   end - start);
    std::move(rows.begin(), rows.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<NliVerdict> RemoteScorer::ClassifyBatch(
    const std::vector<std::pair<std::string, std::string>> &pairs) const {
  const RemoteInfo info = Info();
  std::vector<NliVerdict> out;
  out.reserve(pairs.size());
  for (size_t start = 0; start < pairs.size(); start += config_.max_batch) {
    const size_t end = std::min(pairs.size(), start + config_.max_batch);
    json request = {{"pairs", json::array()}};
    for (size_t i = start; i < end; ++i) {
      request["pairs"].push_back({pairs[i].first, pairs[i].second});
    }
    auto rows =
        ParseNliResponse(Post("/nli", request.dump()), info, end - start);
    std::move(rows.begin(), rows.end(), std::back_inserter(out));
  }
  return out;
}

NliVerdict RemoteScorer::Classify(std::string_view premise,
                                  std::string_view hypothesis) const {
  return ClassifyBatch({{std::string(premise), std::string(hypothesis)}})
      .front();
}

}  // namespace claimgraph
