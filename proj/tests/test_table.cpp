#include <doctest.h>

#include <random>

#include "d2t/errors.hpp"
#include "d2t/table.hpp"
#include "test_fixtures.hpp"

using namespace d2t;

TEST_CASE("parse_linearized_table reads one bracket group per record") {
  const Table table = parse_linearized_table("Period[723 – 732]");
  REQUIRE(table.records.size() == 1);
  CHECK(table.records[0].attribute == TokenSeq{"period"});
  CHECK(table.records[0].value == TokenSeq{"723", "–", "732"});
}

TEST_CASE("parse_linearized_table splits attribute names on underscores") {
  const Table table = parse_linearized_table("Page_Title[Hudson Line (Metro-North)]");
  REQUIRE(table.records.size() == 1);
  CHECK(table.records[0].attribute == TokenSeq{"page", "title"});
  CHECK(table.records[0].value == TokenSeq{"hudson", "line", "(metro-north)"});
}

TEST_CASE("parse_linearized_table keeps groups in order, duplicates included") {
  const Table table = parse_linearized_table("Zone[a] Zone[b] Other[c d]");
  REQUIRE(table.records.size() == 3);
  CHECK(table.records[0].value == TokenSeq{"a"});
  CHECK(table.records[1].value == TokenSeq{"b"});
  CHECK(table.records[1].attribute == TokenSeq{"zone"});
  CHECK(table.records[2].value == TokenSeq{"c", "d"});
}

TEST_CASE("parse_linearized_table drops a bracket-free tail") {
  const Table table = parse_linearized_table(
      "Page_Title[Herculaneum, Missouri] Section_Title[Demographics] "
      "Historical population[2010] Census Historical population[3,468] Pop");
  REQUIRE(table.records.size() == 4);
  CHECK(table.records[2].attribute == TokenSeq{"historical", "population"});
  CHECK(table.records[2].value == TokenSeq{"2010"});
  CHECK(table.records[3].attribute == TokenSeq{"census", "historical", "population"});
  CHECK(table.records[3].value == TokenSeq{"3,468"});
}

TEST_CASE("parse_linearized_table accepts an empty attribute") {
  const Table table = parse_linearized_table("[value only]");
  REQUIRE(table.records.size() == 1);
  CHECK(table.records[0].attribute.empty());
  CHECK(table.records[0].value == TokenSeq{"value", "only"});
}

TEST_CASE("parse_linearized_table rejects malformed brackets with offsets") {
  CHECK_THROWS_AS(parse_linearized_table("A[x"), ParseError);
  CHECK_THROWS_AS(parse_linearized_table("]x"), ParseError);
  CHECK_THROWS_AS(parse_linearized_table("A[x[y]z]"), ParseError);
  CHECK_THROWS_AS(parse_linearized_table("A[]"), ParseError);
  CHECK_THROWS_AS(parse_linearized_table("A[   ]"), ParseError);
  CHECK_THROWS_AS(parse_linearized_table("A[x] stray ] text"), ParseError);

  try {
    parse_linearized_table("ab[x");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
  try {
    parse_linearized_table("]x");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 0);
  }
}

TEST_CASE("linearize renders canonical groups") {
  Table table;
  table.records.push_back({{"page", "title"}, {"hudson", "line"}});
  table.records.push_back({{}, {"x"}});
  CHECK(linearize(table) == "page title[hudson line] [x]");
  CHECK(linearize(Table{}) == "");
}

TEST_CASE("parse and linearize reach a fixed point") {
  std::mt19937 rng(7101);
  const auto vocab = testing::small_vocab(8);
  for (int i = 0; i < 100; ++i) {
    const Table table = testing::random_table(rng, vocab, 5, 4);
    const std::string flat = linearize(table);
    const Table reparsed = parse_linearized_table(flat);
    REQUIRE(reparsed.records.size() == table.records.size());
    for (std::size_t r = 0; r < table.records.size(); ++r) {
      CHECK(reparsed.records[r].attribute == table.records[r].attribute);
      CHECK(reparsed.records[r].value == table.records[r].value);
    }
    CHECK(linearize(reparsed) == flat);
  }
}

TEST_CASE("table_token_set unions attribute and value tokens") {
  const Table table = parse_linearized_table("Pop[3,468] Pop[2010]");
  const TokenSet tokens = table_token_set(table);
  CHECK(tokens.size() == 3);
  CHECK(tokens.contains("pop"));
  CHECK(tokens.contains("3,468"));
  CHECK(tokens.contains("2010"));
  CHECK_FALSE(tokens.contains("census"));
  CHECK(table_token_set(Table{}).empty());
}

TEST_CASE("tokenize_attribute treats underscores as separators") {
  CHECK(tokenize_attribute("Page_Title") == TokenSeq{"page", "title"});
  CHECK(tokenize_attribute("census  count") == TokenSeq{"census", "count"});
  CHECK(tokenize_attribute("") == TokenSeq{});
  CHECK(tokenize_attribute("___") == TokenSeq{});
}
