// Copyright 2026 The Restrictplan Authors.
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

#include "restrictplan/extraction.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "restrictplan/errors.h"

namespace restrictplan {

namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
// Letters, digits and any UTF-8 byte count as word characters.
bool IsWordByte(char c) {
  auto u = static_cast<unsigned char>(c);
  return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || IsDigit(c) ||
         u >= 0x80;
}

bool StartsUpper(std::string_view text, size_t pos) {
  if (pos >= text.size()) return false;
  char c = text[pos];
  if (c >= 'A' && c <= 'Z') return true;
  // Ä Ö Ü in UTF-8.
  if (static_cast<unsigned char>(c) == 0xC3 && pos + 1 < text.size()) {
    auto n = static_cast<unsigned char>(text[pos + 1]);
    return n == 0x84 || n == 0x96 || n == 0x9C;
  }
  return false;
}

bool LeftBoundary(std::string_view text, size_t pos) {
  return pos == 0 || !IsWordByte(text[pos - 1]);
}

// Finds `cue` at a word start; inflected endings are allowed.
bool ContainsCue(std::string_view folded, std::string_view cue) {
  for (size_t pos = folded.find(cue); pos != std::string_view::npos;
       pos = folded.find(cue, pos + 1)) {
    if (LeftBoundary(folded, pos)) return true;
  }
  return false;
}

std::string CollapseWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

// Reads up to `max` digits at `pos`; returns the count read.
size_t ReadDigits(std::string_view text, size_t pos, size_t max, int *value) {
  size_t n = 0;
  *value = 0;
  while (n < max && pos + n < text.size() && IsDigit(text[pos + n])) {
    *value = *value * 10 + (text[pos + n] - '0');
    ++n;
  }
  return n;
}

// ---------------------------------------------------------------------------
// Temporal grammar.

enum class AtomType { kFullDate, kMonthYear, kYear, kDayMonth };

struct Atom {
  AtomType type;
  size_t begin;
  size_t end;
  Date first;    // absolute atoms
  Date last;     // absolute atoms
  MonthDay md;   // day.month atoms
  bool absolute() const { return type != AtomType::kDayMonth; }
};

// Lower numbers win ties between candidates with the same span.
enum Priority { kRange = 0, kFullDate = 1, kMonthYear = 2, kYear = 3, kDayMonth = 4 };

struct Candidate {
  TemporalExtent extent;
  size_t begin;
  size_t end;
  int priority;
};

int AtomPriority(AtomType type) {
  switch (type) {
    case AtomType::kFullDate: return kFullDate;
    case AtomType::kMonthYear: return kMonthYear;
    case AtomType::kYear: return kYear;
    case AtomType::kDayMonth: return kDayMonth;
  }
  return kDayMonth;
}

TemporalExtent AtomExtent(const Atom &a) {
  if (a.absolute()) return TemporalExtent::Absolute(a.first, a.last);
  return TemporalExtent::Recurring(a.md, a.md);
}

class TemporalScanner {
 public:
  TemporalScanner(std::string_view text, const RuleTable &rules,
                  std::vector<std::string> *warnings)
      : text_(text), rules_(rules), warnings_(warnings) {}

  std::vector<TemporalMatch> Run() {
    for (size_t i = 0; i < text_.size(); ++i) {
      if (IsDigit(text_[i])) {
        ScanNumeric(i);
      } else if (IsWordByte(text_[i]) && LeftBoundary(text_, i)) {
        ScanWords(i);
      }
    }
    std::vector<Candidate> candidates;
    for (const auto &a : atoms_) {
      candidates.push_back({AtomExtent(a), a.begin, a.end, AtomPriority(a.type)});
    }
    for (size_t i = 0; i < atoms_.size(); ++i) AddRange(i, &candidates);
    return Resolve(std::move(candidates));
  }

 private:
  void Warn(size_t begin, size_t end, std::string_view what) {
    if (warnings_ == nullptr) return;
    warnings_->push_back(std::string(what) + " '" +
                         std::string(text_.substr(begin, end - begin)) +
                         "' skipped");
  }

  // DD.MM.YYYY or DD.MM. at a position not preceded by a digit or dot.
  void ScanNumeric(size_t i) {
    if (i > 0 && (IsDigit(text_[i - 1]) || text_[i - 1] == '.')) return;
    int day, month, year;
    size_t p = i;
    size_t n = ReadDigits(text_, p, 2, &day);
    p += n;
    if (p >= text_.size() || text_[p] != '.') return;
    ++p;
    n = ReadDigits(text_, p, 2, &month);
    if (n == 0) return;
    p += n;
    if (p >= text_.size() || text_[p] != '.') return;
    ++p;
    n = ReadDigits(text_, p, 5, &year);
    if (n == 4) {
      size_t end = p + 4;
      auto date = Date::FromCivil(year, static_cast<unsigned>(month),
                                  static_cast<unsigned>(day));
      if (!date) {
        Warn(i, end, "impossible date");
        return;
      }
      atoms_.push_back({AtomType::kFullDate, i, end, *date, *date, {}});
      return;
    }
    if (n != 0) return;
    MonthDay md{static_cast<unsigned>(month), static_cast<unsigned>(day)};
    if (!md.Valid()) {
      Warn(i, p, "impossible day.month");
      return;
    }
    atoms_.push_back({AtomType::kDayMonth, i, p, {}, {}, md});
  }

  // Returns the position after `word` + whitespace + YYYY, or npos.
  size_t MatchWordYear(size_t i, std::string_view word, int *year) const {
    if (text_.substr(i, word.size()) != word) return std::string_view::npos;
    size_t p = i + word.size();
    size_t spaces = 0;
    while (p < text_.size() && IsSpace(text_[p])) ++p, ++spaces;
    if (spaces == 0) return std::string_view::npos;
    if (ReadDigits(text_, p, 5, year) != 4) return std::string_view::npos;
    return p + 4;
  }

  void ScanWords(size_t i) {
    int year;
    for (const auto &[name, month] : rules_.months()) {
      size_t end = MatchWordYear(i, name, &year);
      if (end == std::string_view::npos) continue;
      Date first = Date::Civil(year, month, 1);
      Date last = Date::Civil(year, month, DaysInMonth(year, month));
      atoms_.push_back({AtomType::kMonthYear, i, end, first, last, {}});
      return;
    }
    for (const auto &word : rules_.year_words()) {
      size_t end = MatchWordYear(i, word, &year);
      if (end == std::string_view::npos) continue;
      atoms_.push_back({AtomType::kYear, i, end, Date::Civil(year, 1, 1),
                        Date::Civil(year, 12, 31), {}});
      return;
    }
  }

  size_t SkipSpaces(size_t p) const {
    while (p < text_.size() && IsSpace(text_[p])) ++p;
    return p;
  }

  // Position right after a range connector that follows `p`, or npos.
  size_t MatchConnector(size_t p) const {
    size_t start = SkipSpaces(p);
    for (const auto &conn : rules_.range_connectors()) {
      if (text_.substr(start, conn.size()) != conn) continue;
      bool word = IsWordByte(conn.front());
      if (word) {
        if (start == p) continue;  // needs separating whitespace
        size_t after = start + conn.size();
        if (after < text_.size() && IsWordByte(text_[after])) continue;
      }
      return SkipSpaces(start + conn.size());
    }
    return std::string_view::npos;
  }

  // Start of a range opener word ("vom", "from") directly before `begin`.
  size_t ExtendWithOpener(size_t begin) const {
    size_t p = begin;
    while (p > 0 && IsSpace(text_[p - 1])) --p;
    if (p == begin) return begin;
    for (const auto &opener : rules_.range_openers()) {
      if (p < opener.size()) continue;
      size_t s = p - opener.size();
      if (text_.substr(s, opener.size()) == opener && LeftBoundary(text_, s)) {
        return s;
      }
    }
    return begin;
  }

  void AddRange(size_t index, std::vector<Candidate> *out) {
    const Atom &a = atoms_[index];
    size_t next = MatchConnector(a.end);
    if (next == std::string_view::npos) return;
    auto it = std::find_if(atoms_.begin(), atoms_.end(),
                           [&](const Atom &b) { return b.begin == next; });
    if (it == atoms_.end()) return;
    const Atom &b = *it;
    size_t begin = ExtendWithOpener(a.begin);

    std::optional<TemporalExtent> extent;
    if (!a.absolute() && !b.absolute()) {
      extent = TemporalExtent::Recurring(a.md, b.md);
    } else if (a.absolute() && b.absolute()) {
      if (b.last < a.first) {
        Warn(a.begin, b.end, "inverted range");
        return;
      }
      extent = TemporalExtent::Absolute(a.first, b.last);
    } else if (!a.absolute() && b.type == AtomType::kFullDate) {
      // "01.03. bis 30.09.2022": the start takes the end's year.
      int year = b.first.year();
      Date start = ResolveMonthDay(a.md, year, false);
      if (b.first < start) start = ResolveMonthDay(a.md, year - 1, false);
      extent = TemporalExtent::Absolute(start, b.first);
    } else if (a.type == AtomType::kFullDate && !b.absolute()) {
      int year = a.first.year();
      Date end = ResolveMonthDay(b.md, year, true);
      if (end < a.first) end = ResolveMonthDay(b.md, year + 1, true);
      extent = TemporalExtent::Absolute(a.first, end);
    }
    if (extent) out->push_back({*extent, begin, b.end, kRange});
  }

  static std::vector<TemporalMatch> Resolve(std::vector<Candidate> candidates) {
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate &x, const Candidate &y) {
                if (x.begin != y.begin) return x.begin < y.begin;
                if (x.end != y.end) return x.end > y.end;
                return x.priority < y.priority;
              });
    std::vector<TemporalMatch> out;
    size_t covered = 0;
    for (const auto &c : candidates) {
      if (!out.empty() && c.begin < covered) continue;
      out.push_back({c.extent, c.begin, c.end});
      covered = c.end;
    }
    return out;
  }

  std::string_view text_;
  const RuleTable &rules_;
  std::vector<std::string> *warnings_;
  std::vector<Atom> atoms_;
};

std::vector<std::string> FoldedList(const nlohmann::json &j,
                                    std::string_view key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  for (const auto &v : j.at(std::string(key))) {
    out.push_back(FoldCase(v.get<std::string>()));
  }
  return out;
}

void LongestFirst(std::vector<std::string> *words) {
  std::stable_sort(words->begin(), words->end(),
                   [](const std::string &a, const std::string &b) {
                     return a.size() > b.size();
                   });
}

}  // namespace

std::string_view RestrictionKindName(RestrictionKind kind) {
  return kind == RestrictionKind::kProhibition ? "Prohibition" : "Requirement";
}

std::optional<RestrictionKind> ParseRestrictionKind(std::string_view name) {
  if (name == "Prohibition") return RestrictionKind::kProhibition;
  if (name == "Requirement") return RestrictionKind::kRequirement;
  return std::nullopt;
}

TemporalExtent TemporalExtent::Absolute(Date start, Date end) {
  if (end < start) {
    throw ValidationError(ValidationIssue::kInvalidExtent,
                          "extent start " + start.ToIso() + " after end " +
                              end.ToIso());
  }
  TemporalExtent e;
  e.form_ = Form::kAbsolute;
  e.start_ = start;
  e.end_ = end;
  return e;
}

TemporalExtent TemporalExtent::Recurring(MonthDay start, MonthDay end) {
  if (!start.Valid() || !end.Valid()) {
    throw ValidationError(ValidationIssue::kInvalidExtent,
                          "invalid recurring month/day");
  }
  TemporalExtent e;
  e.form_ = Form::kRecurring;
  e.recur_start_ = start;
  e.recur_end_ = end;
  return e;
}

bool TemporalExtent::Contains(Date day) const {
  switch (form_) {
    case Form::kAbsolute:
      return start_ <= day && day <= end_;
    case Form::kRecurring: {
      MonthDay md = ToMonthDay(day);
      if (!wraps()) return recur_start_ <= md && md <= recur_end_;
      return md >= recur_start_ || md <= recur_end_;
    }
    case Form::kUndated:
      return false;
  }
  return false;
}

std::string_view ExtentFormName(TemporalExtent::Form form) {
  switch (form) {
    case TemporalExtent::Form::kAbsolute: return "absolute";
    case TemporalExtent::Form::kRecurring: return "recurring";
    case TemporalExtent::Form::kUndated: return "undated";
  }
  return "undated";
}

std::string FoldCase(std::string_view text) {
  std::string out(text);
  for (size_t i = 0; i < out.size(); ++i) {
    char &c = out[i];
    if (c >= 'A' && c <= 'Z') {
      c = static_cast<char>(c - 'A' + 'a');
    } else if (static_cast<unsigned char>(c) == 0xC3 && i + 1 < out.size()) {
      auto &n = reinterpret_cast<unsigned char &>(out[i + 1]);
      if (n == 0x84 || n == 0x96 || n == 0x9C) n += 0x20;  // Ä Ö Ü
      ++i;
    }
  }
  return out;
}

RuleTable RuleTable::Parse(std::string_view json_text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("rule table: ") + e.what());
  }
  RuleTable rules;
  try {
    nlohmann::json plain = nlohmann::json::parse(json_text);
    rules.prohibition_cues_ = FoldedList(plain, "prohibitionCues");
    rules.condition_cues_ = FoldedList(plain, "conditionCues");
    rules.year_words_ = FoldedList(plain, "yearWords");
    rules.range_connectors_ = FoldedList(plain, "rangeConnectors");
    rules.range_openers_ = FoldedList(plain, "rangeOpeners");
    rules.abbreviations_ = FoldedList(plain, "abbreviations");
    if (rules.year_words_.empty()) rules.year_words_ = {"jahr", "year"};
    if (rules.range_connectors_.empty()) {
      rules.range_connectors_ = {"bis", "to", "-"};
    }
    LongestFirst(&rules.range_connectors_);
    LongestFirst(&rules.range_openers_);
    if (j.contains("topics")) {
      for (const auto &[name, words] : j.at("topics").items()) {
        Topic topic{name, {}};
        for (const auto &w : words) {
          topic.second.push_back(FoldCase(w.get<std::string>()));
        }
        rules.topics_.push_back(std::move(topic));
      }
    }
    if (j.contains("months")) {
      for (const auto &[name, month] : j.at("months").items()) {
        auto m = month.get<unsigned>();
        if (m < 1 || m > 12) throw ParseError("rule table: month out of range");
        rules.months_.emplace_back(FoldCase(name), m);
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("rule table: ") + e.what());
  }
  std::stable_sort(rules.months_.begin(), rules.months_.end(),
                   [](const auto &a, const auto &b) {
                     return a.first.size() > b.first.size();
                   });
  if (rules.prohibition_cues_.empty()) {
    throw ParseError("rule table: prohibitionCues is empty");
  }
  return rules;
}

RuleTable RuleTable::Load(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read rule table " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return Parse(buf.str());
}

RuleTable RuleTable::LoadDefault() { return Load(RESTRICTPLAN_DEFAULT_RULES); }

std::vector<std::string> RuleTable::Registry() const {
  std::vector<std::string> out;
  for (const auto &t : topics_) out.push_back(t.first);
  if (std::find(out.begin(), out.end(), kGeneralTopic) == out.end()) {
    out.emplace_back(kGeneralTopic);
  }
  return out;
}

bool RuleTable::HasTopic(std::string_view topic) const {
  if (topic == kGeneralTopic) return true;
  return std::any_of(topics_.begin(), topics_.end(),
                     [&](const Topic &t) { return t.first == topic; });
}

std::vector<Sentence> SplitSentences(std::string_view text,
                                     std::string_view doc_id,
                                     const RuleTable &rules) {
  std::vector<Sentence> out;
  auto emit = [&](size_t begin, size_t end) {
    std::string s = CollapseWhitespace(text.substr(begin, end - begin));
    if (s.empty()) return;
    out.push_back({std::move(s), std::string(doc_id),
                   static_cast<int>(out.size())});
  };

  size_t start = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    size_t k = i + 1;
    while (k < text.size() && IsSpace(text[k])) ++k;
    bool at_end = k == text.size();
    if (!at_end && (k == i + 1 || !StartsUpper(text, k))) continue;

    if (c == '.' && !at_end) {
      size_t t = i;
      while (t > start && !IsSpace(text[t - 1])) --t;
      std::string token = FoldCase(text.substr(t, i + 1 - t));
      while (!token.empty() && (token.front() == '(' || token.front() == '"')) {
        token.erase(token.begin());
      }
      bool protected_dot =
          std::find(rules.abbreviations().begin(), rules.abbreviations().end(),
                    token) != rules.abbreviations().end();
      // "01.03." and ordinals such as "1." stay inside the sentence.
      int v;
      size_t d1 = ReadDigits(token, 0, 3, &v);
      if (d1 >= 1 && d1 <= 2 && d1 + 1 == token.size()) protected_dot = true;
      if (d1 >= 1 && d1 <= 2 && d1 < token.size() && token[d1] == '.') {
        size_t d2 = ReadDigits(token, d1 + 1, 3, &v);
        if (d2 >= 1 && d2 <= 2 && d1 + d2 + 2 == token.size()) {
          protected_dot = true;
        }
      }
      if (protected_dot) continue;
    }
    emit(start, i + 1);
    start = i + 1;
  }
  emit(start, text.size());
  return out;
}

std::optional<RestrictionClassification> Classify(const Sentence &sentence,
                                                  const RuleTable &rules) {
  std::string folded = FoldCase(sentence.text);
  bool prohibited = std::any_of(
      rules.prohibition_cues().begin(), rules.prohibition_cues().end(),
      [&](const std::string &cue) { return ContainsCue(folded, cue); });
  if (!prohibited) return std::nullopt;

  bool conditional = std::any_of(
      rules.condition_cues().begin(), rules.condition_cues().end(),
      [&](const std::string &cue) { return ContainsCue(folded, cue); });
  if (!conditional) conditional = !MatchTemporal(folded, rules, nullptr).empty();

  RestrictionClassification out;
  out.kind = conditional ? RestrictionKind::kRequirement
                         : RestrictionKind::kProhibition;
  out.topic = std::string(kGeneralTopic);
  for (const auto &[name, words] : rules.topics()) {
    bool hit = std::any_of(words.begin(), words.end(), [&](const std::string &w) {
      return folded.find(w) != std::string::npos;
    });
    if (hit) {
      out.topic = name;
      break;
    }
  }
  return out;
}

std::vector<TemporalMatch> MatchTemporal(std::string_view text,
                                         const RuleTable &rules,
                                         std::vector<std::string> *warnings) {
  std::string folded = FoldCase(text);
  return TemporalScanner(folded, rules, warnings).Run();
}

std::vector<TemporalExtent> ExtractTemporal(const Sentence &sentence,
                                            const RuleTable &rules,
                                            std::vector<ParseWarning> *warnings) {
  std::vector<std::string> messages;
  auto matches = MatchTemporal(sentence.text, rules, &messages);
  if (warnings != nullptr) {
    for (auto &m : messages) {
      warnings->push_back({sentence.doc_id, sentence.index, std::move(m)});
    }
  }
  std::vector<TemporalExtent> out;
  out.reserve(matches.size());
  for (auto &m : matches) out.push_back(m.extent);
  return out;
}

Extraction ExtractDocument(std::string_view doc_id, std::string_view text,
                           const RuleTable &rules) {
  Extraction out;
  for (auto &sentence : SplitSentences(text, doc_id, rules)) {
    auto cls = Classify(sentence, rules);
    if (!cls) continue;
    auto extents = ExtractTemporal(sentence, rules, &out.warnings);
    if (extents.empty()) extents.push_back(TemporalExtent::Undated());
    for (auto &e : extents) {
      out.refs.push_back({std::string(doc_id), sentence, *cls, e});
    }
  }
  return out;
}

std::vector<Extraction> ExtractCorpusSerial(std::span<const SourceText> docs,
                                            const RuleTable &rules) {
  std::vector<Extraction> out;
  out.reserve(docs.size());
  for (const auto &d : docs) out.push_back(ExtractDocument(d.doc_id, d.text, rules));
  return out;
}

std::vector<Extraction> ExtractCorpus(std::span<const SourceText> docs,
                                      const RuleTable &rules) {
  std::vector<Extraction> out(docs.size());
  const long n = static_cast<long>(docs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    out[i] = ExtractDocument(docs[i].doc_id, docs[i].text, rules);
  }
  return out;
}

}  // namespace restrictplan
