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

// UTF-8 helpers shared by segmentation, entity linking and the reference
// scorers. Folding covers Latin, Latin-1, Greek (tonos and dialytika) and
// basic Cyrillic; other scripts pass through unchanged.

#ifndef CLAIMGRAPH_TEXT_H_
#define CLAIMGRAPH_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace claimgraph {

// Decoded code point and the byte range it occupied.
struct CodePoint {
  char32_t value;
  size_t begin;
  size_t end;
};

// Invalid sequences decode to U+FFFD and consume one byte.
std::vector<CodePoint> DecodeUtf8(std::string_view text);

void AppendUtf8(char32_t cp, std::string *out);

size_t CountCodePoints(std::string_view text);

// Byte offset of the code point with the given index; text.size() when the
// index is one past the end, npos when out of range.
size_t CodePointToByteOffset(std::string_view text, size_t index);

// Lowercase and strip diacritics. Returns 0 for combining marks, which are
// dropped by the folding routines.
char32_t FoldCodePoint(char32_t cp);

std::string Fold(std::string_view text);

bool IsLetter(char32_t cp);
bool IsDigit(char32_t cp);
bool IsSpace(char32_t cp);

struct Token {
  std::string folded;
  size_t begin;  // byte offsets into the source text
  size_t end;
};

// Splits on anything that is not a letter (or digit, when keep_digits).
// Combining marks never break a token.
std::vector<Token> Tokenize(std::string_view text, bool keep_digits);

std::string_view Trim(std::string_view text);

}  // namespace claimgraph

#endif  // CLAIMGRAPH_TEXT_H_
