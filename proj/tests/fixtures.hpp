// Shared corpus fixtures: the 18-entity Spanish container, the five
// cross-lingual units built around it, and synthetic work datings.
#ifndef ALIENTO_TESTS_FIXTURES_HPP
#define ALIENTO_TESTS_FIXTURES_HPP

#include <map>
#include <string>
#include <vector>

#include "aliento/parser.hpp"
#include "aliento/posterity.hpp"

namespace fixtures {

/// The fully annotated Spanish unit in canonical layout, stray spaces
/// inside entity bodies included.
inline std::string paper_container_markup() {
  return R"(<pr.all>
<pr>e ante érades mucho alto, e agora sodes mucho baxo</pr>
<pr.type.es>cuanto más alto subas mayor será la caída</pr.type.es>
<pr.type.fr>...plus dure sera la chute</pr.type.fr>
<sl.fr>et avant tu étais très haut, et maintenant tu es très bas</sl.fr>
<sl.en>And before you were very high, and now you are very low</sl.en>
<sf.fr>Vivant vous étiez au sommet, mort vous êtes en dessous de tous</sf.fr>
<sf.es>Vivo estabas en la cumbre, muerto estas debajo de todos</sf.es>
<sf.en>Alive you were above all, dead you are below everyone</sf.en>
<lec.fr>La mort réduit le puissant à rien</lec.fr>
<lec.es>La muerte aniquila al potente</lec.es>
<lec.en> death annihilates the mighty</lec.en>
<key.fr> puissance déchéance mort chute </key.fr>
<key.es> potencia decadencia caída muerte </key.es>
<key.en> might decay fall death </key.en>
<lem.es>y antes ser muy alto ahora ser muy bajo</lem.es>
<str.ling>Sadv1 SV Sadv2 / Sadv opp à 1 SV Sadv opp à 2</str.ling>
<str.form>parallélisme binaire : avant/après haut/bas </str.form>
<str.poet>8 / 8 ass a/o</str.poet>
</pr.all>)";
}

/// Unit texts of the five-way cluster: Arabic, the annotated Spanish
/// unit, a second Spanish attestation, Latin, Hebrew.
inline std::string unit1_text() { return "وقد كنت مرتفعاً فأصبحت متضعاً."; }
inline std::string unit3_text() {
  return "Quanto fue alta la su sobida tanto fue mas baxa la su cayda.";
}
inline std::string unit4_text() {
  return "Quanto altitudo Alexandri excellencior fuit, tanto gravior est casus.";
}
inline std::string unit5_text() { return "והיית נכבד והינך שפל ."; }

inline std::string unit1_markup() {
  return "<pr.all>\n"
         "<pr>" + unit1_text() + "</pr>\n"
         "<lem.ar>وقد كنت مرتفعا فأصبحت متضعا</lem.ar>\n"
         "<key.en>might decay fall</key.en>\n"
         "<lec.en>the mighty fall into decay</lec.en>\n"
         "</pr.all>\n";
}

inline std::string unit2_markup() { return paper_container_markup(); }

inline std::string unit3_markup() {
  return "<pr.all>\n"
         "<pr>" + unit3_text() + "</pr>\n"
         "<lem.es>cuanto más alto ser más bajo ser caída</lem.es>\n"
         "<key.en>might fall decay height</key.en>\n"
         "<lec.en>the higher the rise the harder the fall</lec.en>\n"
         "</pr.all>\n";
}

inline std::string unit4_markup() {
  return "<pr.all>\n"
         "<pr>" + unit4_text() + "</pr>\n"
         "<lem.la>quantus altitudo excellens sum tantus gravis sum casus</lem.la>\n"
         "<key.en>pride fall height decay might</key.en>\n"
         "<lec.en>pride of the great ends in a painful fall</lec.en>\n"
         "</pr.all>\n";
}

inline std::string unit5_markup() {
  return "<pr.all>\n"
         "<pr>" + unit5_text() + "</pr>\n"
         "<lem.he>והיית נכבד והינך שפל</lem.he>\n"
         "<key.en>might death decay</key.en>\n"
         "<lec.en>death humbles the eminent</lec.en>\n"
         "</pr.all>\n";
}

inline std::vector<std::string> five_unit_markups() {
  return {unit1_markup(), unit2_markup(), unit3_markup(), unit4_markup(), unit5_markup()};
}

/// Work ids paired with the units above, in unit order.
inline std::vector<std::string> five_work_ids() {
  return {"work-ar", "work-es-1", "work-es-2", "work-la", "work-he"};
}

/// Parsed five-unit corpus with ids u1..u5 and work references.
inline std::vector<aliento::UnitContainer> five_units() {
  std::vector<aliento::UnitContainer> units;
  std::vector<std::string> works = five_work_ids();
  std::vector<std::string> markups = five_unit_markups();
  for (std::size_t i = 0; i < markups.size(); ++i) {
    aliento::UnitContainer unit = aliento::parse_container(markups[i]);
    unit.set_id("u" + std::to_string(i + 1));
    unit.set_work_ref(works[i]);
    units.push_back(std::move(unit));
  }
  return units;
}

/// Synthetic datings: plausible for the corpus, chosen so the Arabic
/// work strictly precedes everything except the Hebrew one, which only
/// overlaps the annotated Spanish work.
inline std::map<std::string, aliento::WorkMetadata> five_works() {
  using aliento::Area;
  using aliento::LanguageCode;
  using aliento::WorkMetadata;
  std::map<std::string, aliento::WorkMetadata> works;
  works["work-ar"] = WorkMetadata{"work-ar",
                                  "Kitab adab al-falasifa",
                                  LanguageCode::ar(),
                                  {1000, 1080},
                                  Area::outside("al-Andalus"),
                                  std::nullopt,
                                  std::nullopt,
                                  std::nullopt};
  works["work-es-1"] = WorkMetadata{"work-es-1",
                                    "Libro de los buenos proverbios",
                                    LanguageCode::es(),
                                    {1250, 1290},
                                    Area::iberian_peninsula(),
                                    std::nullopt,
                                    std::nullopt,
                                    std::nullopt};
  works["work-es-2"] = WorkMetadata{"work-es-2",
                                    "Libro de Alexandre",
                                    LanguageCode::es(),
                                    {1300, 1380},
                                    Area::iberian_peninsula(),
                                    std::nullopt,
                                    std::nullopt,
                                    std::nullopt};
  works["work-la"] = WorkMetadata{"work-la",
                                  "Alexandreis",
                                  LanguageCode::la(),
                                  {1100, 1180},
                                  Area::outside("France"),
                                  std::nullopt,
                                  std::nullopt,
                                  std::nullopt};
  works["work-he"] = WorkMetadata{"work-he",
                                  "Musre ha-filosofim",
                                  LanguageCode::he(),
                                  {1200, 1260},
                                  Area::iberian_peninsula(),
                                  std::nullopt,
                                  std::nullopt,
                                  std::nullopt};
  return works;
}

/// Metadata document matching five_works(), for index builds.
inline std::string five_works_json() {
  return R"({"works": [
  {"work_id": "work-ar", "title": "Kitab adab al-falasifa", "language": "ar",
   "year_from": 1000, "year_to": 1080, "area": "outside:al-Andalus"},
  {"work_id": "work-es-1", "title": "Libro de los buenos proverbios", "language": "es",
   "year_from": 1250, "year_to": 1290, "area": "iberian-peninsula"},
  {"work_id": "work-es-2", "title": "Libro de Alexandre", "language": "es",
   "year_from": 1300, "year_to": 1380, "area": "iberian-peninsula"},
  {"work_id": "work-la", "title": "Alexandreis", "language": "la",
   "year_from": 1100, "year_to": 1180, "area": "outside:France"},
  {"work_id": "work-he", "title": "Musre ha-filosofim", "language": "he",
   "year_from": 1200, "year_to": 1260, "area": "iberian-peninsula"}
]}
)";
}

} // namespace fixtures

#endif
