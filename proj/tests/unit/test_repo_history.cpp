#include "apiswap/repo_history.hpp"
#include "apiswap/snapshot.hpp"
#include "apiswap/word_diff.hpp"

#include "apiswap/error.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace apiswap;
using apiswap::testing::ScratchRepo;
using apiswap::testing::TempDir;

namespace {

std::string strip_ws(std::string s)
{
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  return s;
}

} // namespace

TEST(History, LinearChain)
{
  TempDir tmp;
  ScratchRepo repo(tmp / "r");
  repo.write("A.java", "class A {}\n");
  const auto a = repo.commit("A");
  repo.write("A.java", "class A { void f() {} }\n");
  const auto b = repo.commit("B");
  repo.write("README", "x\n");
  const auto c = repo.commit("C");

  const auto steps = linear_history(repo.handle(), "o/r");
  ASSERT_EQ(steps.size(), 2u);
  EXPECT_EQ(steps[0].sha, b);
  EXPECT_EQ(steps[0].parent_sha, a);
  EXPECT_EQ(steps[0].message, "B");
  EXPECT_EQ(steps[0].repo_id, "o/r");
  ASSERT_EQ(steps[0].changed_java_files.size(), 1u);
  EXPECT_EQ(steps[0].changed_java_files[0].kind, ChangeKind::Modified);
  EXPECT_EQ(steps[1].sha, c);
  EXPECT_EQ(steps[1].parent_sha, b);
  EXPECT_TRUE(steps[1].changed_java_files.empty());
}

// main: A - B - M ; side: B - X1 - X2 merged into M. Expected chain by hand: B, M.
TEST(History, MergeSideNeverAppears)
{
  TempDir tmp;
  ScratchRepo repo(tmp / "r");
  repo.write("A.java", "class A {}\n");
  const auto a = repo.commit("A");
  repo.write("B.java", "class B {}\n");
  const auto b = repo.commit("B");
  repo.git({"checkout", "-q", "-b", "side"});
  repo.write("X.java", "class X {}\n");
  const auto x1 = repo.commit("X1");
  repo.write("X.java", "class X { int y; }\n");
  const auto x2 = repo.commit("X2");
  repo.git({"checkout", "-q", "main"});
  repo.git({"merge", "-q", "--no-ff", "-m", "M", "side"});
  const auto m = repo.git({"rev-parse", "HEAD"}).substr(0, 40);

  const auto steps = linear_history(repo.handle(), "o/r");
  ASSERT_EQ(steps.size(), 2u);
  EXPECT_EQ(steps[0].sha, b);
  EXPECT_EQ(steps[0].parent_sha, a);
  EXPECT_EQ(steps[1].sha, m);
  EXPECT_EQ(steps[1].parent_sha, b);
  for (const auto &s : steps) {
    EXPECT_NE(s.sha, x1);
    EXPECT_NE(s.sha, x2);
  }
  // The merge step carries the side branch's net change against the first parent.
  ASSERT_EQ(steps[1].changed_java_files.size(), 1u);
  EXPECT_EQ(steps[1].changed_java_files[0].path, "X.java");
  EXPECT_EQ(steps[1].changed_java_files[0].kind, ChangeKind::Added);
}

TEST(History, EmptyRepository)
{
  TempDir tmp;
  ScratchRepo repo(tmp / "r");
  EXPECT_TRUE(linear_history(repo.handle(), "o/r").empty());
}

TEST(History, Errors)
{
  TempDir tmp;
  std::filesystem::create_directories(tmp / "plain");
  try {
    linear_history(Git(tmp / "plain"), "o/p");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::NotARepository);
  }
  ScratchRepo repo(tmp / "r");
  repo.write("A.java", "class A {}\n");
  repo.commit("A");
  try {
    linear_history(repo.handle(), "o/r", std::string("no-such-branch"));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::UnknownBranch);
  }
  try {
    Git(tmp / "r", "/nonexistent/git-binary").run({"status"});
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::GitUnavailable);
  }
}

TEST(History, ChangeKinds)
{
  TempDir tmp;
  ScratchRepo repo(tmp / "r");
  const std::string body = "class Big {\n" + std::string(40, ' ') + "void a() { b(); c(); d(); }\n"
                           "  void e() { f(); }\n  void g() { h(); }\n}\n";
  repo.write("src/Big.java", body);
  repo.write("src/Gone.java", "class Gone {}\n");
  repo.write("notes.txt", "n\n");
  const auto p = repo.commit("init");
  repo.move("src/Big.java", "src/moved/Big.java");
  repo.remove("src/Gone.java");
  repo.write("src/New.java", "class New {}\n");
  repo.write("notes.txt", "m\n");
  const auto s = repo.commit("reshape");
  const auto files = changed_java_files(repo.handle(), p, s);
  ASSERT_EQ(files.size(), 3u);
  std::map<std::string, ChangedFile> by_path;
  for (const auto &f : files) by_path[f.path] = f;
  EXPECT_EQ(by_path.at("src/moved/Big.java").kind, ChangeKind::Renamed);
  EXPECT_EQ(by_path.at("src/moved/Big.java").old_path, "src/Big.java");
  EXPECT_EQ(by_path.at("src/Gone.java").kind, ChangeKind::Deleted);
  EXPECT_TRUE(by_path.at("src/Gone.java").new_blob.empty());
  EXPECT_EQ(by_path.at("src/New.java").kind, ChangeKind::Added);
  EXPECT_TRUE(by_path.at("src/New.java").old_blob.empty());
  EXPECT_TRUE(word_diff(repo.handle(), p, s, by_path.at("src/New.java")).empty());
}

TEST(History, WordDiffOnRealCommit)
{
  TempDir tmp;
  ScratchRepo repo(tmp / "r");
  repo.write("A.java", "class A {\n  boolean has(String[] users, String name) {\n"
                       "    return indexOf(users,name) != -1;\n  }\n}\n");
  const auto p = repo.commit("one");
  repo.write("A.java", "class A {\n  boolean has(String[] users, String name) {\n"
                       "    return ArrayUtils.contains(users,name);\n  }\n}\n");
  const auto s = repo.commit("two");
  const auto files = changed_java_files(repo.handle(), p, s);
  ASSERT_EQ(files.size(), 1u);
  const auto pairs = word_diff(repo.handle(), p, s, files[0]);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].old_fragment, "indexOf(users,name) != -1;");
  EXPECT_EQ(pairs[0].new_fragment, "ArrayUtils.contains(users,name);");
  EXPECT_EQ(pairs[0].line_hint, 3);
}

// Old-side text of each hunk equals the parent lines it covers, up to whitespace;
// a word-diff run may continue across lines, so the comparison is per hunk.
TEST(History, WordDiffRoundTrip)
{
  TempDir tmp;
  ScratchRepo repo(tmp / "r");
  std::mt19937 rng(42);
  const std::vector<std::string> words = {"a(1)", "b.c(x, y)", "d", "+", "=", "ret(z)", "{", "}",
                                          "new T()", "q.r().s(t)", ";", "-1", "!="};
  auto random_line = [&] {
    std::string l = "  ";
    for (int w = 0, n = 1 + rng() % 7; w < n; ++w) l += words[rng() % words.size()] + " ";
    return l;
  };
  std::vector<std::string> lines(40);
  for (auto &l : lines) l = random_line();
  auto join = [&] {
    std::string t;
    for (const auto &l : lines) t += l + "\n";
    return t;
  };
  repo.write("R.java", join());
  std::string parent = repo.commit("base");
  for (int round = 0; round < 12; ++round) {
    const auto before = lines;
    for (int e = 0; e < 6; ++e) {
      auto &l = lines[rng() % lines.size()];
      switch (rng() % 3) {
      case 0: l = random_line(); break;
      case 1: l += words[rng() % words.size()]; break;
      default: l = "\t" + l + "  "; break;
      }
    }
    repo.write("R.java", join());
    const auto sha = repo.commit("edit");
    const auto out = repo.git({"diff", "--no-color", "--no-ext-diff", "--word-diff=plain",
                               "--unified=0", "--ignore-all-space", parent, sha, "--", "R.java"});
    for (const auto &h : parse_word_diff(out)) {
      std::string old_side, new_side, parent_text, child_text;
      for (const auto &l : h.lines) {
        old_side += l.old_text();
        new_side += l.new_text();
      }
      for (int k = 0; k < h.old_count; ++k) parent_text += before.at(h.old_start - 1 + k);
      for (int k = 0; k < h.new_count; ++k) child_text += lines.at(h.new_start - 1 + k);
      EXPECT_EQ(strip_ws(old_side), strip_ws(parent_text)) << out;
      EXPECT_EQ(strip_ws(new_side), strip_ws(child_text)) << out;
    }
    parent = sha;
  }
}

TEST(History, FirstParentProperty)
{
  TempDir tmp;
  ScratchRepo repo(tmp / "r");
  for (int i = 0; i < 8; ++i) {
    repo.write("F" + std::to_string(i % 3) + ".java", "class F { int v = " + std::to_string(i) + "; }\n");
    repo.commit("c" + std::to_string(i));
    if (i == 4) {
      repo.git({"checkout", "-q", "-b", "topic"});
      repo.write("T.java", "class T {}\n");
      repo.commit("t");
      repo.git({"checkout", "-q", "main"});
      repo.git({"merge", "-q", "--no-ff", "-m", "merge topic", "topic"});
    }
  }
  const auto steps = linear_history(repo.handle(), "o/r");
  ASSERT_GE(steps.size(), 8u);
  for (std::size_t k = 0; k + 1 < steps.size(); ++k) {
    EXPECT_EQ(steps[k + 1].parent_sha, steps[k].sha);
  }
}

TEST(Snapshot, AdditivityOverFiles)
{
  TempDir tmp;
  ScratchRepo repo(tmp / "r");
  repo.write("F1.java", "class F1 { void a() {} }\n");
  repo.write("F2.java", "class F2 { void b() { a(); } int c(int x) { return x; } }\n");
  repo.write("README.md", "not java\n");
  const auto sha = repo.commit("init");
  ParseCache cache;
  SnapshotBuilder builder(repo.handle(), cache);
  const auto index = builder.build(sha);
  EXPECT_EQ(index.declaration_count(), 3u);
  EXPECT_EQ(index.invocation_count(), 1u);
  EXPECT_EQ(index.files().size(), 2u);
  EXPECT_EQ(index.count_declarations("c", 1), 1u);
  EXPECT_EQ(index.count_declarations("c", 2), 0u);
  EXPECT_EQ(index.count_invocations("a"), 1u);
  const auto c = index.find_declaration("c", 1);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->file_path, "F2.java");
}

TEST(Snapshot, IncrementalEqualsFullRebuild)
{
  TempDir tmp;
  ScratchRepo repo(tmp / "r");
  repo.write("F1.java", "class F1 { void a() { x(); } }\n");
  repo.write("F2.java", "class F2 { void b() {} void c() {} }\n");
  repo.commit("init");
  repo.write("F1.java", "class F1 { void a() { x(); y(1); } void z() {} }\n");
  repo.commit("touch F1");
  repo.move("F2.java", "pkg/F2.java");
  repo.write("F3.java", "class F3 { }\n");
  repo.commit("move F2");
  repo.remove("F1.java");
  repo.commit("drop F1");

  const auto steps = linear_history(repo.handle(), "o/r");
  ParseCache cache;
  SnapshotBuilder builder(repo.handle(), cache);
  auto current = builder.build(steps.front().parent_sha);
  for (const auto &step : steps) {
    builder.advance(current, step.sha, step.changed_java_files);
    ParseCache fresh_cache;
    SnapshotBuilder fresh(repo.handle(), fresh_cache);
    EXPECT_EQ(current.serialize(), fresh.build(step.sha).serialize()) << step.message;
  }
  EXPECT_GT(cache.hits(), 0u);
}

TEST(Snapshot, CustomIndexOfBeforeReplacement)
{
  TempDir tmp;
  ScratchRepo repo(tmp / "r");
  repo.write("src/Util.java", "public class Util {\n  public static int indexOf(String[] array, String name) {\n"
                              "    for (int i = 0; i < array.length; i++) { if (array[i].equals(name)) return i; }\n"
                              "    return -1;\n  }\n}\n");
  repo.write("src/Users.java", "class Users {\n  boolean has(String[] u, String n) { return Util.indexOf(u, n) != -1; }\n}\n");
  const auto sha = repo.commit("home-grown routines");
  ParseCache cache;
  const auto index = SnapshotBuilder(repo.handle(), cache).build(sha);
  EXPECT_EQ(index.count_declarations("indexOf", 2), 1u);
  EXPECT_GE(index.count_invocations("indexOf"), 1u);
}

TEST(Snapshot, OversizedFilesSkipped)
{
  TempDir tmp;
  ScratchRepo repo(tmp / "r");
  repo.write("Small.java", "class Small { void f() {} }\n");
  repo.write("Huge.java", "class Huge { void g() {} }\n" + std::string(4096, ' ') + "\n");
  const auto sha = repo.commit("init");
  ParseCache cache;
  SnapshotBuilder builder(repo.handle(), cache, {1024});
  const auto index = builder.build(sha);
  EXPECT_EQ(index.files().size(), 1u);
  ASSERT_EQ(builder.skipped().size(), 1u);
  EXPECT_NE(builder.skipped()[0].find("Huge.java"), std::string::npos);
}

TEST(Snapshot, MissingCommit)
{
  TempDir tmp;
  ScratchRepo repo(tmp / "r");
  repo.write("A.java", "class A {}\n");
  repo.commit("A");
  ParseCache cache;
  try {
    SnapshotBuilder(repo.handle(), cache).build(std::string(40, 'a'));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::MissingCommit);
  }
}
