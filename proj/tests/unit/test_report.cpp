#include "apiswap/report.hpp"

#include "apiswap/error.hpp"
#include "apiswap/fsutil.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace apiswap;
using apiswap::testing::make_candidate;

namespace {

const char *kMember = "static int indexOf(String[] a, String n) { int i = 0; return i; }";

std::string row(const CandidateReplacement &c, const std::string &label)
{
  const auto r = ref_of(c);
  return csv_escape(r.repo_id) + ',' + csv_escape(r.sha) + ',' + csv_escape(r.method_signature) +
         ',' + csv_escape(r.api_simple_name) + ',' + label + '\n';
}

Errc code_of(const std::function<void()> &fn)
{
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no apiswap::Error thrown";
  return Errc::Io;
}

} // namespace

TEST(Report, FourLabelsAtThresholdTwo)
{
  std::vector<CandidateReplacement> cs = {
      make_candidate("o/a", "1", kMember, "contains", 1), make_candidate("o/a", "2", kMember, "contains", 1),
      make_candidate("o/a", "3", kMember, "contains", 3), make_candidate("o/a", "4", kMember, "contains", 3)};
  const std::string csv = "repo,sha,method_signature,api,label\n" + row(cs[0], "TP") +
                          row(cs[1], "FP") + row(cs[2], "TP") + row(cs[3], "TP");
  const auto labels = parse_labels(csv, cs);
  ASSERT_EQ(labels.size(), 4u);
  const auto rows = precision_report(labels, {2});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].instances, 2);
  EXPECT_EQ(rows[0].true_positives, 2);
  EXPECT_EQ(rows[0].precision_text(), "100.0");
}

TEST(Report, LabelledSampleRows)
{
  const auto sample = apiswap::testing::table_one_sample();
  const auto labels = parse_labels(sample.labels_csv, sample.candidates);
  ASSERT_EQ(labels.size(), 337u);
  const auto rows = precision_report(labels, {1, 2, 3, 4, 5});
  const int instances[] = {337, 80, 46, 33, 25};
  const int tps[] = {165, 67, 39, 28, 23};
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(rows[i].instances, instances[i]);
    EXPECT_EQ(rows[i].true_positives, tps[i]);
  }
  EXPECT_EQ(rows[1].precision_text(), "83.8");
  EXPECT_EQ(rows[2].precision_text(), "84.8");
  EXPECT_EQ(rows[3].precision_text(), "84.8");
  EXPECT_EQ(rows[4].precision_text(), "92.0");
  // 165/337 = 48.96...; half-up at one decimal gives 49.0.
  EXPECT_EQ(rows[0].precision_text(), "49.0");
  EXPECT_EQ(labels[0].annotator_ids, (std::vector<std::string>{"a1", "a2"}));
  EXPECT_TRUE(labels[0].conflict_resolved);
}

TEST(Report, RoundingAgainstExactDecimals)
{
  // Expected strings from exact rational arithmetic with half-up rounding.
  EXPECT_EQ(format_percent(67, 80), "83.8");
  EXPECT_EQ(format_percent(39, 46), "84.8");
  EXPECT_EQ(format_percent(28, 33), "84.8");
  EXPECT_EQ(format_percent(1, 3), "33.3");
  EXPECT_EQ(format_percent(2, 3), "66.7");
  EXPECT_EQ(format_percent(1, 8), "12.5");
  EXPECT_EQ(format_percent(1, 16), "6.3");
  EXPECT_EQ(format_percent(0, 5), "0.0");
  EXPECT_EQ(format_percent(0, 0), "n/a");
}

TEST(Report, RowConsistency)
{
  const auto sample = apiswap::testing::table_one_sample();
  const auto rows = precision_report(parse_labels(sample.labels_csv, sample.candidates),
                                     {1, 2, 3, 4, 5, 6, 7, 8});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].true_positives, rows[i].instances);
    if (i > 0) {
      EXPECT_LE(rows[i].instances, rows[i - 1].instances);
    }
  }
}

TEST(Report, AllTruePositives)
{
  std::vector<CandidateReplacement> cs;
  std::string csv = "repo,sha,method_signature,api,label\n";
  for (int i = 0; i < 7; ++i) {
    cs.push_back(make_candidate("o/a", std::to_string(i), kMember, "contains", 1 + i));
    csv += row(cs.back(), i % 2 ? "TruePositive" : "tp");
  }
  EXPECT_EQ(precision_report(parse_labels(csv, cs), {1})[0].precision_text(), "100.0");
}

TEST(Report, TableAndCsvRendering)
{
  const std::vector<PrecisionRow> rows = {{1, 337, 165}, {2, 80, 67}};
  EXPECT_EQ(render_csv(rows), "threshold,instances,true_positives,precision\n"
                              "1,337,165,49.0\n"
                              "2,80,67,83.8\n");
  const auto table = render_table(rows);
  EXPECT_NE(table.find(">= 2"), std::string::npos);
  EXPECT_NE(table.find("83.8"), std::string::npos);
}

TEST(Labels, EmptyFileAndErrors)
{
  const std::vector<CandidateReplacement> cs = {make_candidate("o/a", "1", kMember, "contains", 2)};
  EXPECT_TRUE(parse_labels("", cs).empty());
  EXPECT_TRUE(parse_labels("repo,sha,method_signature,api,label\n", cs).empty());

  try {
    parse_labels("repo,sha,method_signature,api,label\n" + row(cs[0], "TP") +
                     "o/a,2,static int nope(),contains,FP\n",
                 cs);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::UnresolvedLabel);
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
  }
  EXPECT_EQ(code_of([&] { parse_labels("repo,sha,api,label\n", cs); }), Errc::SchemaError);
  EXPECT_EQ(code_of([&] { parse_labels("repo,sha,method_signature,api,label\n" + row(cs[0], "maybe"), cs); }),
            Errc::SchemaError);
  EXPECT_EQ(code_of([&] {
              parse_labels("repo,sha,method_signature,api,label\n" + row(cs[0], "TP") + row(cs[0], "FP"), cs);
            }),
            Errc::SchemaError);
}

TEST(Labels, CsvQuotingAndBom)
{
  const auto rows = parse_csv("\xEF\xBB\xBF" "a,\"b,c\",\"d \"\"q\"\"\"\r\n1,2,3\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a", "b,c", "d \"q\""}));
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("x,y"), "\"x,y\"");
}

TEST(Labels, TemplateRoundTrip)
{
  const std::vector<CandidateReplacement> cs = {make_candidate("o/a", "1", kMember, "contains", 2),
                                                make_candidate("o/b", "2", kMember, "isEmpty", 4)};
  auto text = label_template(cs);
  // Fill the empty label column of every data row.
  const auto table = parse_csv(text);
  ASSERT_EQ(table.size(), 3u);
  const auto header = table[0];
  const auto label_col = std::find(header.begin(), header.end(), "label") - header.begin();
  std::string filled;
  for (std::size_t r = 0; r < table.size(); ++r) {
    for (std::size_t c = 0; c < table[r].size(); ++c) {
      if (c) filled += ',';
      filled += (r > 0 && static_cast<long>(c) == label_col) ? "TP" : csv_escape(table[r][c]);
    }
    filled += '\n';
  }
  const auto labels = parse_labels(filled, cs);
  ASSERT_EQ(labels.size(), 2u);
  EXPECT_EQ(labels[1].replacement_count, 4);
  apiswap::testing::TempDir tmp;
  write_file_atomic(tmp / "l.csv", filled);
  EXPECT_EQ(import_labels(tmp / "l.csv", cs).size(), 2u);
}
