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

#ifndef RESTRICTPLAN_EXTRACTION_H_
#define RESTRICTPLAN_EXTRACTION_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "restrictplan/calendar.h"

namespace restrictplan {

// Topic assigned when a restriction matches no topic keyword.
inline constexpr std::string_view kGeneralTopic = "General";

struct Sentence {
  std::string text;
  std::string doc_id;
  int index = 0;

  friend bool operator==(const Sentence &, const Sentence &) = default;
};

enum class RestrictionKind { kProhibition, kRequirement };

std::string_view RestrictionKindName(RestrictionKind kind);
std::optional<RestrictionKind> ParseRestrictionKind(std::string_view name);

struct RestrictionClassification {
  RestrictionKind kind = RestrictionKind::kProhibition;
  std::string topic;

  friend bool operator==(const RestrictionClassification &,
                         const RestrictionClassification &) = default;
};

// Validity period of a restriction: an absolute day interval, a period that
// recurs every year, or no period at all.
class TemporalExtent {
 public:
  enum class Form { kAbsolute, kRecurring, kUndated };

  TemporalExtent() = default;

  // Throw ValidationError when the invariants do not hold.
  static TemporalExtent Absolute(Date start, Date end);
  static TemporalExtent Recurring(MonthDay start, MonthDay end);
  static TemporalExtent Undated() { return {}; }

  Form form() const { return form_; }
  bool dated() const { return form_ != Form::kUndated; }

  // Absolute form only.
  Date start() const { return start_; }
  Date end() const { return end_; }

  // Recurring form only.
  MonthDay recur_start() const { return recur_start_; }
  MonthDay recur_end() const { return recur_end_; }
  // Recurring period that runs across New Year (e.g. Nov to Feb).
  bool wraps() const { return recur_end_ < recur_start_; }

  // Recurring periods are tested on month and day only.
  bool Contains(Date day) const;

  friend bool operator==(const TemporalExtent &, const TemporalExtent &) = default;

 private:
  Form form_ = Form::kUndated;
  Date start_;
  Date end_;
  MonthDay recur_start_;
  MonthDay recur_end_;
};

std::string_view ExtentFormName(TemporalExtent::Form form);

struct RestrictionRef {
  std::string doc_id;
  Sentence sentence;
  RestrictionClassification classification;
  TemporalExtent extent;

  friend bool operator==(const RestrictionRef &, const RestrictionRef &) = default;
};

struct ParseWarning {
  std::string doc_id;
  int sentence_index = 0;
  std::string message;

  friend bool operator==(const ParseWarning &, const ParseWarning &) = default;
};

// Keyword tables driving the classifier and the temporal grammar. Loaded
// from a JSON rule file so new topics need no code changes. All keywords
// are stored case-folded.
class RuleTable {
 public:
  using Topic = std::pair<std::string, std::vector<std::string>>;

  static RuleTable Load(const std::filesystem::path &path);
  static RuleTable Parse(std::string_view json_text);
  static RuleTable LoadDefault();

  const std::vector<std::string> &prohibition_cues() const {
    return prohibition_cues_;
  }
  const std::vector<std::string> &condition_cues() const {
    return condition_cues_;
  }
  // In file order; the first matching topic wins.
  const std::vector<Topic> &topics() const { return topics_; }
  // Month names, longest first.
  const std::vector<std::pair<std::string, unsigned>> &months() const {
    return months_;
  }
  const std::vector<std::string> &year_words() const { return year_words_; }
  const std::vector<std::string> &range_connectors() const {
    return range_connectors_;
  }
  const std::vector<std::string> &range_openers() const {
    return range_openers_;
  }
  const std::vector<std::string> &abbreviations() const {
    return abbreviations_;
  }

  // Topic names plus the fallback topic.
  std::vector<std::string> Registry() const;
  bool HasTopic(std::string_view topic) const;

 private:
  std::vector<std::string> prohibition_cues_;
  std::vector<std::string> condition_cues_;
  std::vector<Topic> topics_;
  std::vector<std::pair<std::string, unsigned>> months_;
  std::vector<std::string> year_words_;
  std::vector<std::string> range_connectors_;
  std::vector<std::string> range_openers_;
  std::vector<std::string> abbreviations_;
};

// Lower-cases ASCII and the German umlauts, leaving other bytes untouched.
// Byte offsets are preserved.
std::string FoldCase(std::string_view text);

// Splits on '.', '!' or '?' followed by whitespace and an upper-case letter,
// or by the end of text. Abbreviations and day.month dates do not split.
// Whitespace runs inside a sentence collapse to one space.
std::vector<Sentence> SplitSentences(std::string_view text,
                                     std::string_view doc_id,
                                     const RuleTable &rules);

std::optional<RestrictionClassification> Classify(const Sentence &sentence,
                                                  const RuleTable &rules);

// One recognised temporal expression and its byte span in the sentence.
struct TemporalMatch {
  TemporalExtent extent;
  size_t begin = 0;
  size_t end = 0;
};

// Runs the temporal grammar: explicit ranges, DD.MM.YYYY, month name +
// year, year keyword + year, and day.month ranges without a year.
// Overlapping candidates resolve leftmost-longest. Impossible dates are
// skipped and reported through `warnings` when given.
std::vector<TemporalMatch> MatchTemporal(std::string_view text,
                                         const RuleTable &rules,
                                         std::vector<std::string> *warnings);

std::vector<TemporalExtent> ExtractTemporal(
    const Sentence &sentence, const RuleTable &rules,
    std::vector<ParseWarning> *warnings = nullptr);

struct Extraction {
  std::vector<RestrictionRef> refs;
  std::vector<ParseWarning> warnings;
};

// split -> classify -> temporal. A classified sentence yields one ref per
// temporal expression, or a single Undated ref when it has none.
Extraction ExtractDocument(std::string_view doc_id, std::string_view text,
                           const RuleTable &rules);

struct SourceText {
  std::string doc_id;
  std::string text;
};

// Extracts every document; results are index-aligned with `docs`.
std::vector<Extraction> ExtractCorpus(std::span<const SourceText> docs,
                                      const RuleTable &rules);
// Single-threaded reference for ExtractCorpus.
std::vector<Extraction> ExtractCorpusSerial(std::span<const SourceText> docs,
                                            const RuleTable &rules);

}  // namespace restrictplan

#endif  // RESTRICTPLAN_EXTRACTION_H_
