#include "apiswap/report.hpp"

#include "apiswap/error.hpp"
#include "apiswap/fsutil.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>

namespace apiswap {
namespace {

std::string lower_trimmed(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) {
    return {};
  }
  s = s.substr(b, s.find_last_not_of(" \t") - b + 1);
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string> split_ids(const std::string &field)
{
  std::vector<std::string> ids;
  std::string cur;
  for (char ch : field + ";") {
    if (ch == ';' || ch == '|') {
      const auto b = cur.find_first_not_of(' ');
      if (b != std::string::npos) {
        ids.push_back(cur.substr(b, cur.find_last_not_of(' ') - b + 1));
      }
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return ids;
}

} // namespace

std::string_view to_string(Label label) noexcept
{
  return label == Label::TruePositive ? "TP" : "FP";
}

CandidateRef ref_of(const CandidateReplacement &c)
{
  return {c.repo_id, c.sha, c.custom_method.signature_text, c.api_simple_name};
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text)
{
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t i = 0;
  const auto end_row = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
    const bool blank = row.size() == 1 && row[0].empty();
    if (!blank) {
      rows.push_back(std::move(row));
    }
    row.clear();
  };
  if (text.substr(0, 3) == "\xEF\xBB\xBF") {
    i = 3;
  }
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_started = false;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
        ++i;
      }
      end_row();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) {
    throw Error(Errc::SchemaError, "unterminated quoted CSV field");
  }
  if (field_started || !row.empty()) {
    end_row();
  }
  return rows;
}

std::string csv_escape(std::string_view field)
{
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

std::vector<LabeledCandidate> parse_labels(std::string_view csv,
                                           const std::vector<CandidateReplacement> &candidates)
{
  const auto rows = parse_csv(csv);
  std::vector<LabeledCandidate> out;
  if (rows.empty()) {
    return out;
  }

  std::map<std::string, std::size_t> column;
  for (std::size_t k = 0; k < rows[0].size(); ++k) {
    column[lower_trimmed(rows[0][k])] = k;
  }
  for (const char *name : {"repo", "sha", "method_signature", "api", "label"}) {
    if (!column.count(name)) {
      throw Error(Errc::SchemaError, std::string("labels CSV lacks a '") + name + "' column");
    }
  }
  const auto optional_col = [&](const char *name) {
    const auto it = column.find(name);
    return it == column.end() ? std::string::npos : it->second;
  };
  const std::size_t annotators_col = optional_col("annotators");
  const std::size_t conflict_col = optional_col("conflict_resolved");

  std::map<CandidateRef, std::vector<const CandidateReplacement *>> by_ref;
  for (const auto &c : candidates) {
    by_ref[ref_of(c)].push_back(&c);
  }

  std::map<CandidateRef, std::size_t> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto &row = rows[r];
    // Data rows count from 1; the header is not a row.
    const std::string where = "labels row " + std::to_string(r);
    if (row.size() != rows[0].size()) {
      throw Error(Errc::SchemaError, where + ": expected " + std::to_string(rows[0].size()) +
                                         " fields, found " + std::to_string(row.size()));
    }
    LabeledCandidate lc;
    lc.ref = {row[column["repo"]], row[column["sha"]], row[column["method_signature"]],
              row[column["api"]]};
    const std::string label = lower_trimmed(row[column["label"]]);
    if (label == "tp" || label == "truepositive" || label == "true_positive") {
      lc.label = Label::TruePositive;
    } else if (label == "fp" || label == "falsepositive" || label == "false_positive") {
      lc.label = Label::FalsePositive;
    } else {
      throw Error(Errc::SchemaError, where + ": label '" + row[column["label"]] +
                                         "' is neither TP nor FP");
    }
    if (annotators_col != std::string::npos) {
      lc.annotator_ids = split_ids(row[annotators_col]);
    }
    if (conflict_col != std::string::npos) {
      const std::string v = lower_trimmed(row[conflict_col]);
      if (v == "true" || v == "1" || v == "yes") {
        lc.conflict_resolved = true;
      } else if (!(v.empty() || v == "false" || v == "0" || v == "no")) {
        throw Error(Errc::SchemaError, where + ": bad conflict_resolved value '" +
                                           row[conflict_col] + "'");
      }
    }

    const auto it = by_ref.find(lc.ref);
    const std::string ref_text = lc.ref.repo_id + "@" + lc.ref.sha + " " +
                                 lc.ref.method_signature + " -> " + lc.ref.api_simple_name;
    if (it == by_ref.end()) {
      throw Error(Errc::UnresolvedLabel, where + " (" + ref_text + ") matches no candidate");
    }
    if (it->second.size() != 1) {
      throw Error(Errc::UnresolvedLabel, where + " (" + ref_text + ") matches " +
                                             std::to_string(it->second.size()) + " candidates");
    }
    if (const auto [prev, fresh] = seen.emplace(lc.ref, r); !fresh) {
      throw Error(Errc::SchemaError, where + " labels the same candidate as row " +
                                         std::to_string(prev->second));
    }
    lc.replacement_count = it->second.front()->replacement_count;
    out.push_back(std::move(lc));
  }
  return out;
}

std::vector<LabeledCandidate> import_labels(const std::filesystem::path &path,
                                            const std::vector<CandidateReplacement> &candidates)
{
  return parse_labels(read_file(path), candidates);
}

std::string label_template(const std::vector<CandidateReplacement> &candidates)
{
  std::string out = "repo,sha,method_signature,api,label,replacement_count\n";
  for (const auto &c : candidates) {
    out += csv_escape(c.repo_id) + ',' + csv_escape(c.sha) + ',' +
           csv_escape(c.custom_method.signature_text) + ',' + csv_escape(c.api_simple_name) +
           ",," + std::to_string(c.replacement_count) + '\n';
  }
  return out;
}

std::string format_percent(long long num, long long den)
{
  if (den <= 0) {
    return "n/a";
  }
  const long long tenths = (2000 * num + den) / (2 * den);
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

std::string PrecisionRow::precision_text() const { return format_percent(true_positives, instances); }

std::vector<PrecisionRow> precision_report(const std::vector<LabeledCandidate> &labeled,
                                           const std::vector<int> &thresholds)
{
  std::vector<PrecisionRow> rows;
  for (int t : thresholds) {
    PrecisionRow row{t, 0, 0};
    for (const auto &lc : labeled) {
      if (lc.replacement_count >= t) {
        ++row.instances;
        if (lc.label == Label::TruePositive) {
          ++row.true_positives;
        }
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::string render_table(const std::vector<PrecisionRow> &rows)
{
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "%-6s %12s %18s %14s\n", "t", "# Instances",
                "# True Positives", "Precision (%)");
  out += line;
  for (const auto &r : rows) {
    const std::string t = ">= " + std::to_string(r.threshold);
    std::snprintf(line, sizeof line, "%-6s %12d %18d %14s\n", t.c_str(), r.instances,
                  r.true_positives, r.precision_text().c_str());
    out += line;
  }
  return out;
}

std::string render_csv(const std::vector<PrecisionRow> &rows)
{
  std::string out = "threshold,instances,true_positives,precision\n";
  for (const auto &r : rows) {
    out += std::to_string(r.threshold) + ',' + std::to_string(r.instances) + ',' +
           std::to_string(r.true_positives) + ',' + r.precision_text() + '\n';
  }
  return out;
}

} // namespace apiswap
