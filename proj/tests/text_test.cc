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


#include "claimgraph/text.h"

#include "doctest.h"

namespace claimgraph {
namespace {

TEST_SUITE("text") {

TEST_CASE("fold strips accents and case across scripts") {
  CHECK(Fold("ΔΑΝΊΑ") == Fold("Δανία"));
  CHECK(Fold("Δανία") == "δανια");
  CHECK(Fold("Ελλάς") == "ελλασ");  // final sigma
  CHECK(Fold("Ϊ") == "ι");
  CHECK(Fold("Crème Brûlée") == "creme brulee");
  CHECK(Fold("МОСКВА") == "москва");
  CHECK(Fold("Ÿ") == "y");
  // e + combining acute
  CHECK(Fold("e\xCC\x81") == "e");
}

TEST_CASE("tokenize keeps byte offsets into the source") {
  const std::string text = "Η Δανία, 2024!";
  const auto tokens = Tokenize(text, true);
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].folded == "η");
  CHECK(tokens[1].folded == "δανια");
  CHECK(text.substr(tokens[1].begin, tokens[1].end - tokens[1].begin) == "Δανία");
  CHECK(tokens[2].folded == "2024");
  CHECK(Tokenize(text, false).size() == 2);
}

TEST_CASE("code point helpers") {
  const std::string text = "aΔb";
  CHECK(CountCodePoints(text) == 3);
  CHECK(CodePointToByteOffset(text, 0) == 0);
  CHECK(CodePointToByteOffset(text, 2) == 3);
  CHECK(CodePointToByteOffset(text, 3) == text.size());
  CHECK(CodePointToByteOffset(text, 4) == std::string::npos);
  const auto cps = DecodeUtf8("\xFF" "a");
  REQUIRE(cps.size() == 2);
  CHECK(cps[0].value == 0xFFFD);
  CHECK(Trim("  x y \n") == "x y");
}

}  // TEST_SUITE

}  // namespace
}  // namespace claimgraph
