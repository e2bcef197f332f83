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

#ifndef CLAIMGRAPH_SRC_HTTP_UTIL_H_
#define CLAIMGRAPH_SRC_HTTP_UTIL_H_

#include <semaphore>
#include <string>
#include <string_view>

#include "claimgraph/error.h"

namespace claimgraph::internal {

struct SplitUrlResult {
  std::string base;  // scheme://host[:port]
  std::string path;  // at least "/"
};

// Only plain http is supported.
inline SplitUrlResult SplitUrl(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  if (url.substr(0, kScheme.size()) != kScheme) {
    throw Error(ErrorCode::kInvalidArgument,
                "endpoint must start with http://: " + std::string(url));
  }
  const size_t slash = url.find('/', kScheme.size());
  SplitUrlResult out;
  if (slash == std::string_view::npos) {
    out.base = std::string(url);
    out.path = "/";
  } else {
    out.base = std::string(url.substr(0, slash));
    out.path = std::string(url.substr(slash));
  }
  if (out.base.size() == kScheme.size()) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint has no host");
  }
  return out;
}

// Holds one slot of a counting semaphore for the lifetime of the guard.
class SlotGuard {
 public:
  explicit SlotGuard(std::counting_semaphore<> &sem) : sem_(sem) {
    sem_.acquire();
  }
  ~SlotGuard() { sem_.release(); }
  SlotGuard(const SlotGuard &) = delete;
  SlotGuard &operator=(const SlotGuard &) = delete;

 private:
  std::counting_semaphore<> &sem_;
};

}  // namespace claimgraph::internal

#endif  // CLAIMGRAPH_SRC_HTTP_UTIL_H_
