#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>

#include "aliento/parser.hpp"
#include "aliento/structure.hpp"
#include "fixtures.hpp"

using namespace aliento;

TEST_CASE("poetic descriptor: counts and assonance") {
  PoeticStructure p = parse_poetic("8 / 8 ass a/o");
  CHECK(p.syllable_counts == std::vector<int>{8, 8});
  REQUIRE(p.assonance.has_value());
  CHECK(*p.assonance == "a/o");
  CHECK(p.raw == "8 / 8 ass a/o");
}

TEST_CASE("poetic descriptor variants") {
  CHECK(parse_poetic("7/7").syllable_counts == std::vector<int>{7, 7});
  CHECK(parse_poetic("12").syllable_counts == std::vector<int>{12});
  CHECK(parse_poetic("6 / 6 / 6").syllable_counts == std::vector<int>{6, 6, 6});
  CHECK_FALSE(parse_poetic("8 / 8").assonance.has_value());

  PoeticStructure spaced = parse_poetic("10 ass e");
  CHECK(spaced.syllable_counts == std::vector<int>{10});
  CHECK(*spaced.assonance == "e");
}

TEST_CASE("poetic descriptor failures") {
  CHECK_THROWS_AS(parse_poetic("ballad meter"), PoeticFormatError);
  CHECK_THROWS_AS(parse_poetic("0 / 8"), PoeticFormatError);
  CHECK_THROWS_AS(parse_poetic("8 / x"), PoeticFormatError);
  CHECK_THROWS_AS(parse_poetic(""), PoeticFormatError);

  PoeticStructure fallback = parse_poetic("ballad meter", ParseMode::Lenient);
  CHECK(fallback.syllable_counts.empty());
  CHECK(fallback.raw == "ballad meter");
}

TEST_CASE("formal descriptor: binary parallelism with oppositions") {
  FormalStructure f = parse_formal("parallélisme binaire : avant/après haut/bas");
  CHECK(f.kind == FormalKind::BinaryParallelism);
  REQUIRE(f.oppositions.size() == 2);
  CHECK(f.oppositions[0] == std::pair<std::string, std::string>{"avant", "après"});
  CHECK(f.oppositions[1] == std::pair<std::string, std::string>{"haut", "bas"});
}

TEST_CASE("formal descriptor: label lookup is accent and case tolerant") {
  CHECK(parse_formal("Parallelisme Binaire : a/b").kind == FormalKind::BinaryParallelism);
  CHECK(parse_formal("dialogue").kind == FormalKind::Dialogue);
  CHECK(parse_formal("question/réponse").kind == FormalKind::Dialogue);
  CHECK(parse_formal("impératif").kind == FormalKind::Imperative);
  CHECK(parse_formal("exhortation").kind == FormalKind::Imperative);
  CHECK(parse_formal("comparaison").kind == FormalKind::Comparative);
}

TEST_CASE("formal descriptor: prefix rules for conditionals and comparatives") {
  CHECK(parse_formal("si aujourd'hui X alors demain Y").kind == FormalKind::Conditional);
  CHECK(parse_formal("Si vis pacem").kind == FormalKind::Conditional);
  CHECK(parse_formal("quanto alto tanto baxo").kind == FormalKind::Comparative);
  CHECK(parse_formal("Cuanto más alto...").kind == FormalKind::Comparative);
  // "si" must be a word prefix, not a letter prefix.
  CHECK(parse_formal("silence et sagesse").kind == FormalKind::Other);
}

TEST_CASE("formal descriptor: unknown labels stay Other with the label kept") {
  FormalStructure f = parse_formal("structure gnomique : x/y");
  CHECK(f.kind == FormalKind::Other);
  CHECK(f.other_label == "structure gnomique");
  CHECK(f.oppositions.empty()); // only binary parallelism takes oppositions
}

TEST_CASE("formal kind slugs round-trip") {
  for (FormalKind kind : {FormalKind::BinaryParallelism, FormalKind::Dialogue,
                          FormalKind::Imperative, FormalKind::Conditional,
                          FormalKind::Comparative, FormalKind::Other}) {
    auto slug = formal_kind_slug(kind);
    auto back = formal_kind_from_slug(slug);
    REQUIRE(back.has_value());
    CHECK(*back == kind);
  }
  CHECK_FALSE(formal_kind_from_slug("no-such-kind").has_value());
}

TEST_CASE("linguistic descriptor: hemistichs, symbols and opposition links") {
  LinguisticStructure l = parse_linguistic("Sadv1 SV Sadv2 / Sadv opp à 1 SV Sadv opp à 2");
  REQUIRE(l.hemistichs.size() == 2);
  CHECK(l.hemistichs[0].size() == 3);
  CHECK(l.hemistichs[0][0].name == "Sadv1");
  CHECK_FALSE(l.hemistichs[0][0].opposition.has_value());
  REQUIRE(l.hemistichs[1].size() == 3);
  CHECK(l.hemistichs[1][0].name == "Sadv");
  REQUIRE(l.hemistichs[1][0].opposition.has_value());
  CHECK(*l.hemistichs[1][0].opposition == 1);
  CHECK(*l.hemistichs[1][2].opposition == 2);
  CHECK(l.symbol_count() == 6);
  CHECK(l.opposition_count() == 2);
}

TEST_CASE("linguistic descriptor tolerates the unaccented opp spelling") {
  LinguisticStructure l = parse_linguistic("S opp a 1 / V");
  CHECK(l.opposition_count() == 1);
  CHECK(l.hemistichs[0][0].opposition.value() == 1);
}

TEST_CASE("label table parsing") {
  StructureLabelTable table = StructureLabelTable::parse("# labels\n"
                                                         "epigramme\tother\n"
                                                         "Sentence Conditionnelle\tconditional\n");
  CHECK(table.size() == 2);
  CHECK(table.find("SENTENCE  conditionnelle") == FormalKind::Conditional);
  CHECK_FALSE(table.find("inconnu").has_value());

  CHECK_THROWS_AS(StructureLabelTable::parse("x\tnot-a-kind\n"), FormatError);
  CHECK_THROWS_AS(StructureLabelTable::parse("x\tother\nx\tdialogue\n"), ConflictError);
}

TEST_CASE("structure features match the annotated Spanish unit") {
  UnitContainer unit = parse_container(fixtures::paper_container_markup());
  std::set<std::string> expected{"form:binary-parallelism", "hemistichs:2", "syllables:8-8",
                                 "assonance:a/o", "opp-count:2"};
  CHECK(structure_features(unit) == expected);
}

TEST_CASE("features degrade gracefully with partial descriptors") {
  UnitContainer only_ling = parse_container(
      "<pr.all><pr>x</pr><str.ling>S V / V S opp à 1</str.ling></pr.all>");
  std::set<std::string> expected{"hemistichs:2", "opp-count:1"};
  CHECK(structure_features(only_ling) == expected);

  UnitContainer none = parse_container("<pr.all><pr>x</pr></pr.all>");
  CHECK(structure_features(none).empty());

  UnitContainer only_form =
      parse_container("<pr.all><pr>x</pr><str.form>dialogue</str.form></pr.all>");
  CHECK(structure_features(only_form) == std::set<std::string>{"form:dialogue"});
}

TEST_CASE("unparseable poetic text contributes nothing to features") {
  UnitContainer unit = parse_container(
      "<pr.all><pr>x</pr><str.poet>meter unclear</str.poet></pr.all>");
  CHECK(structure_features(unit).empty());
}
