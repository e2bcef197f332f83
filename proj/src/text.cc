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

#include "claimgraph/error.h"

namespace claimgraph {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyArticle: return "EmptyArticle";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kEmptySections: return "EmptySections";
    case ErrorCode::kUnknownSection: return "UnknownSection";
    case ErrorCode::kUnknownEntity: return "UnknownEntity";
    case ErrorCode::kCorruptSnapshot: return "CorruptSnapshot";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kLinkerUnavailable: return "LinkerUnavailable";
    case ErrorCode::kMalformedGazetteer: return "MalformedGazetteer";
    case ErrorCode::kMalformedResponse: return "MalformedResponse";
    case ErrorCode::kEmptyEntitySet: return "EmptyEntitySet";
    case ErrorCode::kProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFiniteLogit: return "NonFiniteLogit";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kWriteInProgress: return "WriteInProgress";
  }
  return "Unknown";
}

std::vector<CodePoint> DecodeUtf8(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    size_t len = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      len = 1;
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      len = 2;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      len = 3;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      len = 4;
      cp = lead & 0x07;
    }
    bool valid = len > 0 && i + len <= text.size();
    for (size_t k = 1; valid && k < len; ++k) {
      const auto cont = static_cast<unsigned char>(text[i + k]);
      if ((cont & 0xC0) != 0x80) {
        valid = false;
      } else {
        cp = (cp << 6) | (cont & 0x3F);
      }
    }
    if (!valid) {
      out.push_back({0xFFFD, i, i + 1});
      ++i;
      continue;
    }
    out.push_back({cp, i, i + len});
    i += len;
  }
  return out;
}

void AppendUtf8(char32_t cp, std::string *out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

size_t CountCodePoints(std::string_view text) {
  return DecodeUtf8(text).size();
}

size_t CodePointToByteOffset(std::string_view text, size_t index) {
  const auto cps = DecodeUtf8(text);
  if (index == cps.size()) return text.size();
  if (index > cps.size()) return std::string_view::npos;
  return cps[index].begin;
}

namespace {

char32_t FoldLatin1(char32_t cp) {
  if (cp >= 0xC0 && cp <= 0xC5) return U'a';
  if (cp == 0xC7) return U'c';
  if (cp >= 0xC8 && cp <= 0xCB) return U'e';
  if (cp >= 0xCC && cp <= 0xCF) return U'i';
  if (cp == 0xD1) return U'n';
  if ((cp >= 0xD2 && cp <= 0xD6) || cp == 0xD8) return U'o';
  if (cp >= 0xD9 && cp <= 0xDC) return U'u';
  if (cp == 0xDD) return U'y';
  if (cp >= 0xE0 && cp <= 0xE5) return U'a';
  if (cp == 0xE7) return U'c';
  if (cp >= 0xE8 && cp <= 0xEB) return U'e';
  if (cp >= 0xEC && cp <= 0xEF) return U'i';
  if (cp == 0xF1) return U'n';
  if ((cp >= 0xF2 && cp <= 0xF6) || cp == 0xF8) return U'o';
  if (cp >= 0xF9 && cp <= 0xFC) return U'u';
  if (cp == 0xFD || cp == 0xFF) return U'y';
  if (cp == 0xC6) return 0xE6;  // Æ
  if (cp == 0xD0) return 0xF0;  // Ð
  if (cp == 0xDE) return 0xFE;  // Þ
  return cp;
}

char32_t FoldGreek(char32_t cp) {
  switch (cp) {
    case 0x386: case 0x3AC: return 0x3B1;  // alpha
    case 0x388: case 0x3AD: return 0x3B5;  // epsilon
    case 0x389: case 0x3AE: return 0x3B7;  // eta
    case 0x38A: case 0x3AF: case 0x390: case 0x3AA: case 0x3CA:
      return 0x3B9;  // iota
    case 0x38C: case 0x3CC: return 0x3BF;  // omicron
    case 0x38E: case 0x3CD: case 0x3B0: case 0x3AB: case 0x3CB:
      return 0x3C5;  // upsilon
    case 0x38F: case 0x3CE: return 0x3C9;  // omega
    case 0x3C2: return 0x3C3;              // final sigma
    default: break;
  }
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  return cp;
}

}  // namespace

char32_t FoldCodePoint(char32_t cp) {
  if (cp < 0x80) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    return cp;
  }
  if (cp >= 0x300 && cp <= 0x36F) return 0;
  if (cp >= 0xC0 && cp <= 0xFF) return FoldLatin1(cp);
  if (cp >= 0x100 && cp <= 0x17F) {
    // Latin Extended-A pairs upper/lower on even/odd code points except for
    // the 0x139..0x148 and 0x179..0x17E runs, which pair odd/even.
    const bool odd_upper = (cp >= 0x139 && cp <= 0x148) ||
                           (cp >= 0x179 && cp <= 0x17E);
    if (odd_upper) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x178) return U'y';
    if (cp == 0x130 || cp == 0x131 || cp == 0x138 || cp == 0x149 ||
        cp == 0x17F) {
      return cp == 0x130 ? U'i' : cp;
    }
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0x370 && cp <= 0x3FF) return FoldGreek(cp);
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

std::string Fold(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const CodePoint &cp : DecodeUtf8(text)) {
    const char32_t folded = FoldCodePoint(cp.value);
    if (folded != 0) AppendUtf8(folded, &out);
  }
  return out;
}

bool IsLetter(char32_t cp) {
  if (cp < 0x80) return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z');
  if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return true;
  if (cp >= 0xC0 && cp <= 0x24F) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x370 && cp <= 0x3FF) {
    return cp != 0x375 && cp != 0x37E && cp != 0x384 && cp != 0x385 &&
           cp != 0x387;
  }
  if (cp >= 0x1F00 && cp <= 0x1FFF) return true;  // polytonic Greek
  if (cp >= 0x400 && cp <= 0x52F) return true;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if (cp >= 0xFE30 && cp <= 0xFF0F) return false;
  return cp >= 0x530 && cp != 0xFFFD;
}

bool IsDigit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool IsSpace(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v' || cp == 0xA0 || cp == 0x2028 ||
         cp == 0x2029 || cp == 0x3000 || (cp >= 0x2000 && cp <= 0x200A);
}

std::vector<Token> Tokenize(std::string_view text, bool keep_digits) {
  std::vector<Token> tokens;
  Token current{{}, 0, 0};
  bool open = false;
  for (const CodePoint &cp : DecodeUtf8(text)) {
    const bool mark = cp.value >= 0x300 && cp.value <= 0x36F;
    const bool word = IsLetter(cp.value) || (keep_digits && IsDigit(cp.value));
    if (word || (mark && open)) {
      if (!open) {
        current = Token{{}, cp.begin, cp.end};
        open = true;
      }
      const char32_t folded = FoldCodePoint(cp.value);
      if (folded != 0) AppendUtf8(folded, &current.folded);
      current.end = cp.end;
    } else if (open) {
      tokens.push_back(std::move(current));
      open = false;
    }
  }
  if (open) tokens.push_back(std::move(current));
  return tokens;
}

std::string_view Trim(std::string_view text) {
  const auto cps = DecodeUtf8(text);
  size_t first = 0;
  while (first < cps.size() && IsSpace(cps[first].value)) ++first;
  if (first == cps.size()) return text.substr(text.size());
  size_t last = cps.size();
  while (last > first && IsSpace(cps[last - 1].value)) --last;
  return text.substr(cps[first].begin, cps[last - 1].end - cps[first].begin);
}

}  // namespace claimgraph
