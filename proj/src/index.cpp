#include "aliento/index.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "aliento/builtin_resources.hpp"

namespace aliento {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t hash = 14695981039346656037ULL) {
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string hex16(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::optional<double> parse_double(std::string_view value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) return std::nullopt;
  return out;
}

std::optional<int> parse_int(std::string_view value) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) return std::nullopt;
  return out;
}

bool known_config_key(std::string_view key) {
  if (key == "threshold" || key == "labels") return true;
  if (key == "weight.keyword" || key == "weight.lesson" || key == "weight.lemma" ||
      key == "weight.structure")
    return true;
  for (std::string_view prefix : {"stoplist.", "dictionary."}) {
    if (key.size() > prefix.size() && key.substr(0, prefix.size()) == prefix &&
        LanguageCode::from_tag(key.substr(prefix.size())))
      return true;
  }
  return key == "romanization.hebrew" || key == "romanization.arabic";
}

std::string area_to_string(const Area& area) {
  if (area.iberian) return "iberian-peninsula";
  return area.label.empty() ? "outside" : "outside:" + area.label;
}

Area area_from_string(std::string_view value) {
  if (value == "iberian-peninsula") return Area::iberian_peninsula();
  if (value == "outside") return Area::outside("");
  if (value.size() > 8 && value.substr(0, 8) == "outside:")
    return Area::outside(std::string(value.substr(8)));
  throw Error("unknown area \"" + std::string(value) +
              "\" (expected \"iberian-peninsula\" or \"outside:<label>\")");
}

WorkMetadata work_from_json(const json& j) {
  WorkMetadata work;
  try {
    work.work_id = j.at("work_id").get<std::string>();
    work.title = j.at("title").get<std::string>();
    auto lang = LanguageCode::from_tag(j.at("language").get<std::string>());
    if (!lang) throw Error("work \"" + work.work_id + "\": bad language tag");
    work.language = *lang;
    work.dating.from = j.at("year_from").get<int>();
    work.dating.to = j.at("year_to").get<int>();
    work.area = area_from_string(j.at("area").get<std::string>());
    if (j.contains("author")) work.author = j.at("author").get<std::string>();
    if (j.contains("translator")) work.translator = j.at("translator").get<std::string>();
    if (j.contains("compiler")) work.compiler = j.at("compiler").get<std::string>();
  } catch (const json::exception& e) {
    throw Error("work metadata record: " + std::string(e.what()));
  }
  validate(work);
  return work;
}

json work_to_json(const WorkMetadata& work) {
  json j;
  j["work_id"] = work.work_id;
  j["title"] = work.title;
  j["language"] = work.language.tag();
  j["year_from"] = work.dating.from;
  j["year_to"] = work.dating.to;
  j["area"] = area_to_string(work.area);
  if (work.author) j["author"] = *work.author;
  if (work.translator) j["translator"] = *work.translator;
  if (work.compiler) j["compiler"] = *work.compiler;
  return j;
}

json string_sets_to_json(const std::map<std::string, std::set<std::string>>& sets) {
  json j = json::object();
  for (const auto& [lang, values] : sets) j[lang] = values;
  return j;
}

std::map<std::string, std::set<std::string>> string_sets_from_json(const json& j) {
  std::map<std::string, std::set<std::string>> out;
  for (auto it = j.begin(); it != j.end(); ++it)
    out[it.key()] = it.value().get<std::set<std::string>>();
  return out;
}

/// Run fn(i) for i in [0, count) on `jobs` workers. Results land by
/// index, so the outcome is independent of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&fn, w, jobs, count] {
      for (std::size_t i = w; i < count; i += jobs) fn(i);
    }));
  }
  for (auto& worker : workers) worker.get();
}

UnitRecord derive_record(UnitContainer unit, const ResourceSet& resources) {
  UnitRecord record{std::move(unit), {}, {}, {}, {}};
  record.markup = serialize_container(record.unit);
  record.profile = UnitProfile::of(record.unit, resources.stoplists, resources.labels);

  for (const auto& [lang, lemmas] : record.profile.lemmas)
    record.search_lemmas.insert(lemmas.begin(), lemmas.end());
  const auto& source_lang = record.unit.source_lang();
  std::vector<std::string> tokens =
      tokenize(record.unit.unit_text(), source_lang.value_or(LanguageCode::es()));
  record.search_lemmas.insert(tokens.begin(), tokens.end());
  if (source_lang) {
    if (const LemmaDictionary* dict = resources.dictionary(*source_lang)) {
      for (const std::string& lemma : lemmatize(tokens, *dict).lemmas)
        if (!lemma.empty()) record.search_lemmas.insert(lemma);
    }
    if (source_lang->tag() == "he")
      record.romanized = romanize(record.unit.unit_text(), resources.hebrew);
    else if (source_lang->tag() == "ar")
      record.romanized = romanize(record.unit.unit_text(), resources.arabic);
  }
  return record;
}

json record_to_json(const UnitRecord& record) {
  json j;
  j["id"] = record.unit.id();
  j["work"] = record.unit.work_ref().value_or("");
  j["degree"] = std::string(degree_attribute(record.unit.degree()));
  if (record.unit.source_lang()) j["source_lang"] = record.unit.source_lang()->tag();
  j["markup"] = record.markup;
  json derived;
  derived["keywords"] = string_sets_to_json(record.profile.keywords);
  derived["lessons"] = string_sets_to_json(record.profile.lessons);
  derived["lemmas"] = string_sets_to_json(record.profile.lemmas);
  derived["features"] = record.profile.features;
  derived["search_lemmas"] = record.search_lemmas;
  derived["romanized"] = record.romanized;
  j["derived"] = derived;
  return j;
}

UnitRecord record_from_json(const json& j) {
  UnitContainer unit = parse_container(j.at("markup").get<std::string>(), ParseMode::Lenient);
  unit.set_id(j.at("id").get<std::string>());
  if (auto work = j.at("work").get<std::string>(); !work.empty()) unit.set_work_ref(work);
  UnitRecord record{std::move(unit), j.at("markup").get<std::string>(), {}, {}, {}};
  const json& derived = j.at("derived");
  record.profile.keywords = string_sets_from_json(derived.at("keywords"));
  record.profile.lessons = string_sets_from_json(derived.at("lessons"));
  record.profile.lemmas = string_sets_from_json(derived.at("lemmas"));
  record.profile.features = derived.at("features").get<std::set<std::string>>();
  record.search_lemmas = derived.at("search_lemmas").get<std::set<std::string>>();
  record.romanized = derived.at("romanized").get<std::string>();
  return record;
}

} // namespace

UniquenessViolationError::UniquenessViolationError(DuplicateReport report)
    : Error([&report] {
        std::string msg = "duplicate unit texts:";
        for (const DuplicateGroup& group : report.groups) {
          msg += " [";
          for (std::size_t i = 0; i < group.unit_ids.size(); ++i) {
            if (i) msg += ", ";
            msg += group.unit_ids[i];
          }
          msg += "]";
        }
        return msg;
      }()),
      report_(std::move(report)) {}

IndexBuildError::IndexBuildError(std::vector<std::string> messages)
    : Error([&messages] {
        std::string msg = "corpus build failed:";
        for (const std::string& m : messages) {
          msg += "\n  ";
          msg += m;
        }
        return msg;
      }()),
      messages_(std::move(messages)) {}

CorpusConfig CorpusConfig::parse_text(std::string_view content) {
  std::map<std::string, std::string> entries;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t nl = content.find('\n', pos);
    std::string_view line =
        content.substr(pos, nl == std::string_view::npos ? content.size() - pos : nl - pos);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string trimmed = text::trim(line);
    if (!trimmed.empty() && trimmed.front() != '#') {
      std::size_t eq = trimmed.find('=');
      if (eq == std::string::npos) throw FormatError(lineno, "expected key = value");
      std::string key = text::trim(std::string_view(trimmed).substr(0, eq));
      std::string value = text::trim(std::string_view(trimmed).substr(eq + 1));
      if (key.empty() || value.empty()) throw FormatError(lineno, "empty key or value");
      if (!known_config_key(key)) throw FormatError(lineno, "unknown config key \"" + key + "\"");
      if (!entries.emplace(key, value).second)
        throw FormatError(lineno, "duplicate config key \"" + key + "\"");
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return from_entries(std::move(entries));
}

CorpusConfig CorpusConfig::from_entries(std::map<std::string, std::string> entries) {
  CorpusConfig config;
  config.entries = std::move(entries);
  auto number = [&](const char* key, double& slot, double lo, double hi) {
    auto it = config.entries.find(key);
    if (it == config.entries.end()) return;
    auto value = parse_double(it->second);
    if (!value || *value < lo || *value > hi)
      throw FormatError(0, std::string(key) + " must be a number in [" + std::to_string(lo) +
                               ", " + std::to_string(hi) + "]");
    slot = *value;
  };
  number("weight.keyword", config.weights.keyword, 0.0, 1e9);
  number("weight.lesson", config.weights.lesson, 0.0, 1e9);
  number("weight.lemma", config.weights.lemma, 0.0, 1e9);
  number("weight.structure", config.weights.structure, 0.0, 1e9);
  validate(config.weights);
  auto it = config.entries.find("threshold");
  if (it != config.entries.end()) {
    auto value = parse_double(it->second);
    if (!value || !(*value > 0.0) || *value > 1.0)
      throw FormatError(0, "threshold must be in (0, 1]");
    config.threshold = *value;
  }
  for (const auto& [key, value] : config.entries) {
    if (!known_config_key(key)) throw FormatError(0, "unknown config key \"" + key + "\"");
  }
  return config;
}

CorpusConfig CorpusConfig::load_file(const std::filesystem::path& path) {
  return parse_text(read_file(path));
}

std::string CorpusConfig::canonical_text() const {
  std::string out;
  for (const auto& [key, value] : entries) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

ResourceSet ResourceSet::builtins() { return resolve(CorpusConfig{}, "."); }

ResourceSet ResourceSet::resolve(const CorpusConfig& config,
                                 const std::filesystem::path& base_dir) {
  ResourceSet resources;
  std::map<std::string, std::string> material;

  auto override_path = [&](const std::string& key) -> std::optional<std::string> {
    auto it = config.entries.find(key);
    if (it == config.entries.end()) return std::nullopt;
    std::filesystem::path p(it->second);
    if (p.is_relative()) p = base_dir / p;
    return read_file(p);
  };

  // Stoplists: builtins for the interrogation languages, plus overrides
  // and additions from the config.
  for (const char* tag : {"en", "es", "fr"}) {
    std::string content(builtin::resource(std::string("stopwords_") + tag + ".txt"));
    material["stoplist." + std::string(tag)] = content;
    resources.stoplists.set(*LanguageCode::from_tag(tag), Stoplist::parse(content));
  }
  for (const auto& [key, value] : config.entries) {
    if (key.rfind("stoplist.", 0) != 0) continue;
    std::string tag = key.substr(9);
    std::string content = *override_path(key);
    material[key] = content;
    resources.stoplists.set(*LanguageCode::from_tag(tag), Stoplist::parse(content));
  }

  {
    std::string content(builtin::resource("lemmas_es.tsv"));
    if (auto o = override_path("dictionary.es")) content = *o;
    material["dictionary.es"] = content;
    resources.dictionaries.emplace("es",
                                   parse_lemma_dictionary(content, LanguageCode::es()));
  }
  for (const auto& [key, value] : config.entries) {
    if (key.rfind("dictionary.", 0) != 0 || key == "dictionary.es") continue;
    std::string tag = key.substr(11);
    std::string content = *override_path(key);
    material[key] = content;
    resources.dictionaries.emplace(
        tag, parse_lemma_dictionary(content, *LanguageCode::from_tag(tag)));
  }

  {
    std::string content(builtin::resource("romanization_he.tsv"));
    if (auto o = override_path("romanization.hebrew")) content = *o;
    material["romanization.hebrew"] = content;
    resources.hebrew = parse_romanization_table(content, Script::Hebrew);
  }
  {
    std::string content(builtin::resource("romanization_ar.tsv"));
    if (auto o = override_path("romanization.arabic")) content = *o;
    material["romanization.arabic"] = content;
    resources.arabic = parse_romanization_table(content, Script::Arabic);
  }
  {
    std::string content(builtin::resource("structure_labels.tsv"));
    if (auto o = override_path("labels")) content = *o;
    material["labels"] = content;
    resources.labels = StructureLabelTable::parse(content);
  }

  for (const auto& [key, content] : material) {
    resources.fingerprint_material += key;
    resources.fingerprint_material += '\n';
    resources.fingerprint_material += content;
    resources.fingerprint_material += '\0';
  }
  return resources;
}

const LemmaDictionary* ResourceSet::dictionary(const LanguageCode& lang) const {
  auto it = dictionaries.find(lang.tag());
  return it == dictionaries.end() ? nullptr : &it->second;
}

std::string config_fingerprint(const CorpusConfig& config, const ResourceSet& resources) {
  std::uint64_t hash = fnv1a64(config.canonical_text());
  hash = fnv1a64(std::string_view("\0", 1), hash);
  hash = fnv1a64(resources.fingerprint_material, hash);
  return hex16(hash);
}

const UnitRecord* CorpusIndex::find_unit(std::string_view id) const {
  for (const UnitRecord& record : units)
    if (record.unit.id() == id) return &record;
  return nullptr;
}

std::string CorpusIndex::to_json() const {
  json doc;
  doc["version"] = std::string(version);
  doc["config"] = config_entries;
  doc["config_fingerprint"] = fingerprint;
  json works_array = json::array();
  for (const auto& [id, work] : works) works_array.push_back(work_to_json(work));
  doc["works"] = works_array;
  json units_array = json::array();
  for (const UnitRecord& record : units) units_array.push_back(record_to_json(record));
  doc["units"] = units_array;
  return doc.dump(2) + "\n";
}

CorpusIndex CorpusIndex::from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error("index document: " + std::string(e.what()));
  }
  CorpusIndex index;
  try {
    if (doc.at("version").get<std::string>() != version)
      throw Error("unsupported index version " + doc.at("version").get<std::string>());
    index.config_entries = doc.at("config").get<std::map<std::string, std::string>>();
    index.fingerprint = doc.at("config_fingerprint").get<std::string>();
    for (const json& j : doc.at("works")) {
      WorkMetadata work = work_from_json(j);
      std::string id = work.work_id;
      index.works.emplace(std::move(id), std::move(work));
    }
    for (const json& j : doc.at("units")) index.units.push_back(record_from_json(j));
  } catch (const json::exception& e) {
    throw Error("index document: " + std::string(e.what()));
  }
  return index;
}

void CorpusIndex::save(const std::filesystem::path& path) const {
  write_file_atomic(path, to_json());
  if (!duplicates.clean()) {
    json report;
    json groups = json::array();
    for (const DuplicateGroup& group : duplicates.groups) {
      json g;
      g["key"] = group.key;
      g["unit_ids"] = group.unit_ids;
      groups.push_back(g);
    }
    report["groups"] = groups;
    std::filesystem::path side = path;
    side += ".duplicates.json";
    write_file_atomic(side, report.dump(2) + "\n");
  }
}

CorpusIndex CorpusIndex::load(const std::filesystem::path& path) {
  return from_json(read_file(path));
}

std::map<std::string, WorkMetadata> parse_work_metadata(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error("work metadata: " + std::string(e.what()));
  }
  if (!doc.is_object() || !doc.contains("works") || !doc.at("works").is_array())
    throw Error("work metadata: expected {\"works\": [...]}");
  std::map<std::string, WorkMetadata> works;
  for (const json& j : doc.at("works")) {
    WorkMetadata work = work_from_json(j);
    std::string id = work.work_id;
    if (!works.emplace(id, std::move(work)).second)
      throw Error("work metadata: duplicate work_id \"" + id + "\"");
  }
  return works;
}

std::map<std::string, WorkMetadata> load_work_metadata(const std::filesystem::path& path) {
  return parse_work_metadata(read_file(path));
}

CorpusIndex build_index(std::vector<std::filesystem::path> sources,
                        const std::filesystem::path& metadata_file, const CorpusConfig& config,
                        const BuildOptions& options) {
  std::sort(sources.begin(), sources.end(),
            [](const auto& a, const auto& b) { return a.generic_string() < b.generic_string(); });

  ResourceSet resources = ResourceSet::resolve(config, options.config_base_dir);
  CorpusIndex index;
  index.works = load_work_metadata(metadata_file);
  for (const auto& [id, work] : index.works) {
    for (std::string& warning : plausibility_warnings(work))
      index.warnings.push_back(std::move(warning));
  }

  struct FileResult {
    std::vector<UnitContainer> units;
    std::string error;
  };
  std::vector<FileResult> parsed(sources.size());
  parallel_for(sources.size(), options.jobs, [&](std::size_t i) {
    try {
      AnnotatedDocument doc = parse_document(read_file(sources[i]), options.mode);
      for (UnitContainer* unit : doc.units()) parsed[i].units.push_back(std::move(*unit));
    } catch (const Error& e) {
      parsed[i].error = sources[i].generic_string() + ": " + e.what();
    }
  });

  std::vector<std::string> errors;
  for (const FileResult& result : parsed)
    if (!result.error.empty()) errors.push_back(result.error);
  if (!errors.empty()) throw IndexBuildError(std::move(errors));

  std::vector<UnitContainer> all_units;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    std::string work = sources[i].stem().string();
    if (!parsed[i].units.empty() && index.works.find(work) == index.works.end())
      index.warnings.push_back("no work metadata for \"" + work + "\"");
    std::size_t ordinal = 0;
    for (UnitContainer& unit : parsed[i].units) {
      unit.set_id(work + ":" + std::to_string(++ordinal));
      unit.set_work_ref(work);
      all_units.push_back(std::move(unit));
    }
  }

  DuplicateReport report = validate_corpus_uniqueness(all_units);
  if (!report.clean()) {
    if (!options.allow_duplicates) throw UniquenessViolationError(std::move(report));
    index.duplicates = std::move(report);
  }

  std::vector<std::optional<UnitRecord>> records(all_units.size());
  std::vector<std::string> derive_errors(all_units.size());
  parallel_for(all_units.size(), options.jobs, [&](std::size_t i) {
    try {
      records[i] = derive_record(std::move(all_units[i]), resources);
    } catch (const Error& e) {
      derive_errors[i] = e.what();
    }
  });
  errors.clear();
  for (std::size_t i = 0; i < records.size(); ++i)
    if (!derive_errors[i].empty()) errors.push_back(derive_errors[i]);
  if (!errors.empty()) throw IndexBuildError(std::move(errors));

  index.units.reserve(records.size());
  for (std::optional<UnitRecord>& record : records) index.units.push_back(std::move(*record));

  index.config_entries = config.entries;
  index.fingerprint = config_fingerprint(config, resources);
  return index;
}

std::vector<std::string> query(const CorpusIndex& index,
                               const std::map<std::string, std::string>& filters) {
  static const std::set<std::string, std::less<>> allowed = {"keyword", "lang", "degree",
                                                             "work",    "from", "to"};
  for (const auto& [field, value] : filters)
    if (allowed.find(field) == allowed.end()) throw UnknownFilterFieldError(field);

  auto get = [&](const char* key) -> std::optional<std::string> {
    auto it = filters.find(key);
    if (it == filters.end()) return std::nullopt;
    return it->second;
  };

  std::optional<std::string> keyword = get("keyword");
  if (keyword) *keyword = text::canonical_key(*keyword);
  std::optional<std::string> lang = get("lang");
  std::optional<ProverbialityDegree> degree;
  if (auto value = get("degree")) {
    degree = degree_from_attribute(*value);
    if (!degree)
      throw Error("invalid degree \"" + *value +
                  "\" (expected potential, candidate or established)");
  }
  std::optional<std::string> work = get("work");
  std::optional<int> from, to;
  if (auto value = get("from")) {
    from = parse_int(*value);
    if (!from) throw Error("invalid from year \"" + *value + "\"");
  }
  if (auto value = get("to")) {
    to = parse_int(*value);
    if (!to) throw Error("invalid to year \"" + *value + "\"");
  }

  std::vector<std::string> ids;
  for (const UnitRecord& record : index.units) {
    if (keyword) {
      bool hit = record.search_lemmas.find(*keyword) != record.search_lemmas.end();
      for (auto it = record.profile.keywords.begin(); !hit && it != record.profile.keywords.end();
           ++it)
        hit = it->second.find(*keyword) != it->second.end();
      if (!hit) continue;
    }
    if (lang) {
      if (!record.unit.source_lang() || record.unit.source_lang()->tag() != *lang) continue;
    }
    if (degree && record.unit.degree() != *degree) continue;
    if (work && record.unit.work_ref().value_or("") != *work) continue;
    if (from || to) {
      auto it = index.works.find(record.unit.work_ref().value_or(""));
      if (it == index.works.end()) continue;
      const YearInterval& dating = it->second.dating;
      if (from && dating.to < *from) continue;
      if (to && dating.from > *to) continue;
    }
    ids.push_back(record.unit.id());
  }
  return ids;
}

} // namespace aliento
