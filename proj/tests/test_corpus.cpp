#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "zipcal/corpus.hpp"
#include "zipcal/errors.hpp"

using namespace zipcal;
using zipcal::test::TempDir;
using zipcal::test::whitespace_config;
using zipcal::test::write_file;

namespace {

std::string random_token(std::mt19937_64& gen) {
  static const std::string alphabet = "abcdefgh";
  std::uniform_int_distribution<std::size_t> len(1, 5);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string out;
  for (std::size_t i = len(gen); i > 0; --i) out += alphabet[pick(gen)];
  return out;
}

}  // namespace

TEST_CASE("intern table is a bijection in assignment order") {
  InternTable intern;
  CHECK(intern.intern("a") == 0);
  CHECK(intern.intern("b") == 1);
  CHECK(intern.intern("a") == 0);
  CHECK(intern.size() == 2);
  CHECK(intern.text(0) == "a");
  CHECK(intern.find("b") == TokenId{1});
  CHECK(intern.find("zzz") == std::nullopt);

  SUBCASE("random workload against a map oracle") {
    std::mt19937_64 gen(7);
    InternTable table;
    std::map<std::string, TokenId> oracle;
    for (int i = 0; i < 500; ++i) {
      const std::string token = random_token(gen);
      const TokenId id = table.intern(token);
      auto [it, fresh] = oracle.emplace(token, id);
      CHECK(it->second == id);
      if (fresh) CHECK(id == oracle.size() - 1);
      CHECK(table.text(id) == token);
    }
    CHECK(table.size() == oracle.size());
  }
}

TEST_CASE("build_vocab merges case, drops specials, dedups") {
  Tokenizer tok{whitespace_config()};
  InternTable intern;
  const std::vector<std::string> tokens = {"a", "A", "<eos>", "b"};
  const std::vector<TokenId> vocab = build_vocab(tokens, tok, intern);
  CHECK(vocab.size() == 2);
  CHECK(intern.find("a").has_value());
  CHECK(intern.find("b").has_value());
  CHECK_FALSE(intern.find("<eos>").has_value());

  CHECK(build_vocab(std::vector<std::string>{}, tok, intern).empty());
}

TEST_CASE("build_vocab is order-insensitive") {
  Tokenizer tok{whitespace_config()};
  InternTable intern;
  std::mt19937_64 gen(11);
  std::vector<std::string> tokens;
  for (int i = 0; i < 300; ++i) tokens.push_back(random_token(gen));
  const std::vector<TokenId> base = build_vocab(tokens, tok, intern);

  std::vector<std::string> shuffled = tokens;
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  CHECK(build_vocab(shuffled, tok, intern) == base);

  // Independent set-comprehension oracle over sanitized strings.
  std::set<std::string> expected;
  for (const std::string& t : tokens) {
    if (auto clean = tok.sanitize(t)) expected.insert(*clean);
  }
  CHECK(base.size() == expected.size());
  for (TokenId id : base) CHECK(expected.count(std::string(intern.text(id))) == 1);
}

TEST_CASE("build_dataset over three toy lines") {
  Tokenizer tok{whitespace_config()};
  InternTable intern;
  const Dataset dataset = build_dataset({"a b", "b c", "c d"}, tok, intern, "toy");
  REQUIRE(dataset.size() == 3);
  CHECK(dataset.full_vocab.size() == 4);
  for (std::size_t i = 0; i < 3; ++i) CHECK(dataset.samples[i].id == i);

  // full_vocab equals the union of sample vocabularies.
  std::set<TokenId> expected;
  for (const Sample& s : dataset.samples) expected.insert(s.vocab.begin(), s.vocab.end());
  CHECK(dataset.full_vocab == std::vector<TokenId>(expected.begin(), expected.end()));
}

TEST_CASE("plain-lines loading keeps empty documents and strips CR") {
  TempDir dir("plain");
  write_file(dir.file("data.txt"), "a b\r\n\nc\n");
  Tokenizer tok{whitespace_config()};
  InternTable intern;
  const Dataset dataset =
      load_dataset(dir.file("data.txt"), DatasetFormat::PlainLines, tok, intern);
  REQUIRE(dataset.size() == 3);
  CHECK(dataset.name == "data.txt");
  CHECK(dataset.samples[0].text == "a b");
  CHECK(dataset.samples[1].vocab.empty());
  CHECK(dataset.samples[2].text == "c");

  SUBCASE("empty file gives an empty dataset") {
    write_file(dir.file("empty.txt"), "");
    const Dataset empty =
        load_dataset(dir.file("empty.txt"), DatasetFormat::PlainLines, tok, intern);
    CHECK(empty.size() == 0);
    CHECK(empty.full_vocab.empty());
  }
  SUBCASE("unreadable path is a data error") {
    CHECK_THROWS_AS(
        load_dataset(dir.file("absent.txt"), DatasetFormat::PlainLines, tok, intern),
        DataError);
  }
}

TEST_CASE("thousand-line file matches a brute-force union oracle") {
  TempDir dir("thousand");
  std::mt19937_64 gen(3);
  std::string content;
  std::vector<std::string> docs;
  std::uniform_int_distribution<int> words(0, 12);
  for (int i = 0; i < 1000; ++i) {
    std::string line;
    for (int j = words(gen); j > 0; --j) {
      line += random_token(gen);
      line += ' ';
    }
    docs.push_back(line);
    content += line;
    content += '\n';
  }
  write_file(dir.file("big.txt"), content);

  Tokenizer tok{whitespace_config()};
  InternTable intern;
  const Dataset dataset = load_dataset(dir.file("big.txt"), DatasetFormat::PlainLines,
                                       tok, intern, "text", "big");
  REQUIRE(dataset.size() == 1000);
  CHECK(dataset.name == "big");

  // Independent one-pass oracle on the raw strings, bypassing the library's
  // tokenize/vocab pipeline.
  std::set<std::string> expected;
  for (const std::string& doc : docs) {
    std::size_t pos = 0;
    while (pos < doc.size()) {
      std::size_t end = doc.find(' ', pos);
      if (end == std::string::npos) end = doc.size();
      if (end > pos) expected.insert(doc.substr(pos, end - pos));
      pos = end + 1;
    }
  }
  REQUIRE(dataset.full_vocab.size() == expected.size());
  for (TokenId id : dataset.full_vocab) {
    CHECK(expected.count(std::string(intern.text(id))) == 1);
  }

  SUBCASE("per-sample invariants hold") {
    for (const Sample& s : dataset.samples) {
      CHECK(s.tokens.size() <= tok.config().context_window);
      CHECK(std::is_sorted(s.vocab.begin(), s.vocab.end()));
      const std::set<TokenId> dedup(s.tokens.begin(), s.tokens.end());
      CHECK(s.vocab == std::vector<TokenId>(dedup.begin(), dedup.end()));
    }
  }
  SUBCASE("reloading assigns identical ids") {
    InternTable intern2;
    const Dataset again = load_dataset(dir.file("big.txt"), DatasetFormat::PlainLines,
                                       tok, intern2, "text", "big");
    REQUIRE(again.size() == dataset.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
      CHECK(again.samples[i].tokens == dataset.samples[i].tokens);
    }
    CHECK(again.full_vocab == dataset.full_vocab);
  }
}

TEST_CASE("json-records loading") {
  TempDir dir("jsonl");
  Tokenizer tok{whitespace_config()};
  InternTable intern;

  write_file(dir.file("ok.jsonl"),
             "{\"text\": \"a b\", \"meta\": 1}\n{\"text\": \"\"}\n{\"text\": \"c\"}\n");
  const Dataset dataset =
      load_dataset(dir.file("ok.jsonl"), DatasetFormat::JsonRecords, tok, intern);
  REQUIRE(dataset.size() == 3);
  CHECK(dataset.samples[0].text == "a b");
  CHECK(dataset.samples[1].vocab.empty());

  SUBCASE("alternate text field") {
    write_file(dir.file("body.jsonl"), "{\"body\": \"x y\"}\n");
    const Dataset alt = load_dataset(dir.file("body.jsonl"), DatasetFormat::JsonRecords,
                                     tok, intern, "body");
    REQUIRE(alt.size() == 1);
    CHECK(alt.samples[0].text == "x y");
  }
  SUBCASE("parse failures carry the line number") {
    write_file(dir.file("bad.jsonl"), "{\"text\": \"a\"}\nnot json\n");
    try {
      load_dataset(dir.file("bad.jsonl"), DatasetFormat::JsonRecords, tok, intern);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("missing or non-string field fails") {
    write_file(dir.file("nofield.jsonl"), "{\"other\": \"a\"}\n");
    CHECK_THROWS_AS(
        load_dataset(dir.file("nofield.jsonl"), DatasetFormat::JsonRecords, tok, intern),
        DataError);
    write_file(dir.file("numfield.jsonl"), "{\"text\": 3}\n");
    CHECK_THROWS_AS(
        load_dataset(dir.file("numfield.jsonl"), DatasetFormat::JsonRecords, tok, intern),
        DataError);
  }
}

TEST_CASE("dataset format names") {
  CHECK(dataset_format_from_string("plain-lines") == DatasetFormat::PlainLines);
  CHECK(dataset_format_from_string("json-records") == DatasetFormat::JsonRecords);
  CHECK_THROWS_AS(dataset_format_from_string("parquet"), UsageError);
}
