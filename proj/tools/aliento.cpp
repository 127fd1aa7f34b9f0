// Corpus toolkit entry point. Subcommands: validate, index, query,
// similar, cluster, posterity. Exit codes: 0 success, 1 validation
// failure, 2 usage error.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "aliento/index.hpp"

namespace {

using nlohmann::json;

struct Options {
  bool json_output = false;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw aliento::Error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

std::string format_score(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", value);
  return buffer;
}

std::string slot_name(const aliento::RequiredEntity& slot) {
  std::string name(aliento::root_tag(slot.root));
  if (slot.lang) {
    name += '.';
    name += slot.lang->tag();
  }
  return name;
}

void emit(const Options& options, const json& machine, const std::string& human) {
  if (options.json_output)
    std::cout << machine.dump(2) << "\n";
  else
    std::cout << human;
}

aliento::SimilarityWeights parse_weights(const std::string& spec) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t comma = spec.find(',', pos);
    std::string part = spec.substr(pos, comma == std::string::npos ? spec.size() - pos
                                                                   : comma - pos);
    try {
      std::size_t used = 0;
      values.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--weights", "expected four comma-separated numbers");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (values.size() != 4)
    throw CLI::ValidationError("--weights", "expected four comma-separated numbers");
  aliento::SimilarityWeights weights{values[0], values[1], values[2], values[3]};
  try {
    aliento::validate(weights);
  } catch (const aliento::Error& e) {
    throw CLI::ValidationError("--weights", e.what());
  }
  return weights;
}

std::vector<aliento::ProfiledUnit> profiled(const aliento::CorpusIndex& index) {
  std::vector<aliento::ProfiledUnit> units;
  units.reserve(index.units.size());
  for (const aliento::UnitRecord& record : index.units)
    units.push_back({record.unit.id(), record.unit.work_ref().value_or(""), record.profile});
  return units;
}

int run_validate(const std::vector<std::string>& files, aliento::ParseMode mode,
                 const Options& options) {
  bool failed = false;
  json report;
  report["files"] = json::array();
  std::ostringstream text;
  std::vector<aliento::UnitContainer> all_units;

  for (const std::string& file : files) {
    json entry;
    entry["path"] = file;
    try {
      aliento::AnnotatedDocument doc = aliento::parse_document(read_file(file), mode);
      std::size_t ordinal = 0;
      std::string stem = std::filesystem::path(file).stem().string();
      json incomplete = json::array();
      for (aliento::UnitContainer* unit : doc.units()) {
        unit->set_id(stem + ":" + std::to_string(++ordinal));
        auto missing =
            aliento::missing_required(*unit, aliento::CompletenessProfile::default_profile());
        if (!missing.empty()) {
          json m;
          m["id"] = unit->id();
          json slots = json::array();
          for (const auto& slot : missing) slots.push_back(slot_name(slot));
          m["missing"] = slots;
          incomplete.push_back(m);
        }
        all_units.push_back(std::move(*unit));
      }
      entry["ok"] = true;
      entry["units"] = ordinal;
      entry["incomplete"] = incomplete;
      text << file << ": ok, " << ordinal << " unit(s)\n";
      for (const json& m : incomplete) {
        text << "  " << m.at("id").get<std::string>() << " missing:";
        for (const json& slot : m.at("missing")) text << " " << slot.get<std::string>();
        text << "\n";
      }
    } catch (const aliento::Error& e) {
      entry["ok"] = false;
      entry["error"] = e.what();
      text << file << ": " << e.what() << "\n";
      failed = true;
    }
    report["files"].push_back(entry);
  }

  aliento::DuplicateReport duplicates = aliento::validate_corpus_uniqueness(all_units);
  json groups = json::array();
  for (const aliento::DuplicateGroup& group : duplicates.groups) {
    json g;
    g["key"] = group.key;
    g["unit_ids"] = group.unit_ids;
    groups.push_back(g);
    text << "duplicate text:";
    for (const std::string& id : group.unit_ids) text << " " << id;
    text << "\n";
    failed = true;
  }
  report["duplicates"] = groups;
  report["ok"] = !failed;

  emit(options, report, text.str());
  return failed ? 1 : 0;
}

int run_index(const std::string& out, const std::string& meta,
              const std::optional<std::string>& config_path,
              const std::vector<std::string>& files, const aliento::BuildOptions& build,
              const Options& options) {
  aliento::CorpusConfig config;
  aliento::BuildOptions effective = build;
  if (config_path) {
    config = aliento::CorpusConfig::load_file(*config_path);
    effective.config_base_dir = std::filesystem::path(*config_path).parent_path();
    if (effective.config_base_dir.empty()) effective.config_base_dir = ".";
  }
  std::vector<std::filesystem::path> sources(files.begin(), files.end());
  aliento::CorpusIndex index = aliento::build_index(sources, meta, config, effective);
  index.save(out);
  for (const std::string& warning : index.warnings) std::cerr << "warning: " << warning << "\n";

  json machine;
  machine["out"] = out;
  machine["units"] = index.units.size();
  machine["works"] = index.works.size();
  machine["config_fingerprint"] = index.fingerprint;
  machine["warnings"] = index.warnings;
  std::ostringstream text;
  text << "indexed " << index.units.size() << " unit(s), " << index.works.size()
       << " work(s) -> " << out << "\n";
  emit(options, machine, text.str());
  return 0;
}

int run_query(const std::string& index_path, const std::map<std::string, std::string>& filters,
              const Options& options) {
  aliento::CorpusIndex index = aliento::CorpusIndex::load(index_path);
  std::vector<std::string> ids = aliento::query(index, filters);
  json machine;
  machine["ids"] = ids;
  std::ostringstream text;
  for (const std::string& id : ids) text << id << "\n";
  emit(options, machine, text.str());
  return 0;
}

int run_similar(const std::string& index_path, const std::string& unit_id, std::size_t top,
                const std::optional<aliento::SimilarityWeights>& weights,
                const Options& options) {
  aliento::CorpusIndex index = aliento::CorpusIndex::load(index_path);
  const aliento::UnitRecord* target = index.find_unit(unit_id);
  if (!target) throw aliento::Error("no unit \"" + unit_id + "\" in the index");
  aliento::SimilarityWeights effective = weights.value_or(index.config().weights);

  struct Neighbor {
    std::string id;
    aliento::SimilarityScore score;
  };
  std::vector<Neighbor> neighbors;
  for (const aliento::UnitRecord& record : index.units) {
    if (record.unit.id() == unit_id) continue;
    neighbors.push_back(
        {record.unit.id(),
         aliento::aggregate_similarity(target->profile, record.profile, effective)});
  }
  std::sort(neighbors.begin(), neighbors.end(), [](const Neighbor& a, const Neighbor& b) {
    if (a.score.aggregate != b.score.aggregate) return a.score.aggregate > b.score.aggregate;
    return a.id < b.id;
  });
  if (neighbors.size() > top) neighbors.resize(top);

  json machine;
  machine["unit"] = unit_id;
  json list = json::array();
  std::ostringstream text;
  for (const Neighbor& neighbor : neighbors) {
    json j;
    j["id"] = neighbor.id;
    j["aggregate"] = neighbor.score.aggregate;
    json components = json::object();
    if (neighbor.score.keyword) components["keyword"] = *neighbor.score.keyword;
    if (neighbor.score.lesson) components["lesson"] = *neighbor.score.lesson;
    if (neighbor.score.lemma) components["lemma"] = *neighbor.score.lemma;
    if (neighbor.score.structure) components["structure"] = *neighbor.score.structure;
    j["components"] = components;
    j["weights_used"] = neighbor.score.weights_used;
    list.push_back(j);

    auto cell = [](const std::optional<double>& value) {
      return value ? format_score(*value) : std::string("-");
    };
    text << neighbor.id << "\t" << format_score(neighbor.score.aggregate) << "\tkw="
         << cell(neighbor.score.keyword) << "\tles=" << cell(neighbor.score.lesson)
         << "\tlem=" << cell(neighbor.score.lemma)
         << "\tstr=" << cell(neighbor.score.structure) << "\n";
  }
  machine["neighbors"] = list;
  emit(options, machine, text.str());
  return 0;
}

int run_cluster(const std::string& index_path, std::optional<double> threshold,
                const std::optional<aliento::SimilarityWeights>& weights,
                const Options& options) {
  aliento::CorpusIndex index = aliento::CorpusIndex::load(index_path);
  aliento::CorpusConfig config = index.config();
  std::vector<aliento::ProfiledUnit> units = profiled(index);
  std::vector<std::vector<std::string>> clusters = aliento::cluster(
      units, threshold.value_or(config.threshold), weights.value_or(config.weights));

  json machine;
  machine["clusters"] = clusters;
  std::ostringstream text;
  for (const auto& members : clusters) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) text << " ";
      text << members[i];
    }
    text << "\n";
  }
  emit(options, machine, text.str());
  return 0;
}

int run_posterity(const std::string& index_path, std::optional<double> threshold,
                  const std::string& strictness_name, const std::optional<std::string>& seed,
                  std::size_t depth, const std::optional<aliento::SimilarityWeights>& weights,
                  const Options& options) {
  auto strictness = aliento::strictness_from_name(strictness_name);
  if (!strictness)
    throw CLI::ValidationError("--strictness", "expected strict or overlap-ok");
  aliento::CorpusIndex index = aliento::CorpusIndex::load(index_path);
  aliento::CorpusConfig config = index.config();
  std::vector<aliento::ProfiledUnit> units = profiled(index);
  std::vector<aliento::PosterityEdge> edges =
      aliento::posterity_edges(units, index.works, threshold.value_or(config.threshold),
                               *strictness, weights.value_or(config.weights));

  json machine;
  std::ostringstream text;
  if (seed) {
    std::vector<std::string> universe;
    universe.reserve(units.size());
    for (const aliento::ProfiledUnit& unit : units) universe.push_back(unit.id);
    std::vector<std::vector<std::string>> chains =
        aliento::transmission_chains(edges, *seed, depth, universe);
    machine["seed"] = *seed;
    machine["chains"] = chains;
    for (const auto& chain : chains) {
      for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) text << " -> ";
        text << chain[i];
      }
      text << "\n";
    }
  } else {
    json list = json::array();
    for (const aliento::PosterityEdge& edge : edges) {
      json j;
      j["from"] = edge.from_id;
      j["to"] = edge.to_id;
      j["gap_years"] = edge.gap_years;
      j["score"] = edge.score.aggregate;
      list.push_back(j);
      text << edge.from_id << " -> " << edge.to_id << "\tgap=" << edge.gap_years
           << "\tscore=" << format_score(edge.score.aggregate) << "\n";
    }
    machine["edges"] = list;
  }
  emit(options, machine, text.str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sapiential corpus annotation, similarity and posterity toolkit"};
  app.require_subcommand(1);
  Options options;
  std::string format = "text";
  app.add_option("--format", format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* validate_cmd = app.add_subcommand("validate", "Parse and check annotation files");
  validate_cmd->fallthrough();
  std::vector<std::string> validate_files;
  bool strict = false, lenient = false;
  validate_cmd->add_option("files", validate_files, "Annotation files")->required();
  validate_cmd->add_flag("--strict", strict, "Reject unknown tags and legacy forms (default)");
  validate_cmd->add_flag("--lenient", lenient, "Recover from unknown tags and legacy forms");

  auto* index_cmd = app.add_subcommand("index", "Build a corpus index");
  index_cmd->fallthrough();
  std::string index_out, index_meta;
  std::optional<std::string> index_config;
  std::vector<std::string> index_files;
  bool index_strict = false, index_lenient = false, allow_duplicates = false;
  unsigned jobs = 1;
  index_cmd->add_option("--out", index_out, "Index output path")->required();
  index_cmd->add_option("--meta", index_meta, "Work metadata JSON")->required();
  index_cmd->add_option("--config", index_config, "key = value config file");
  index_cmd->add_option("files", index_files, "Annotation files");
  index_cmd->add_flag("--strict", index_strict, "Parse in strict mode");
  index_cmd->add_flag("--lenient", index_lenient, "Parse in lenient mode (default)");
  index_cmd->add_flag("--allow-duplicates", allow_duplicates,
                      "Accept duplicate unit texts; writes a side report");
  index_cmd->add_option("--jobs", jobs, "Worker count (0 = hardware)");

  auto* query_cmd = app.add_subcommand("query", "Filter unit ids from an index");
  query_cmd->fallthrough();
  std::string query_index;
  std::optional<std::string> q_keyword, q_lang, q_degree, q_work;
  std::optional<int> q_from, q_to;
  query_cmd->add_option("--index", query_index, "Index path")->required();
  query_cmd->add_option("--keyword", q_keyword, "Keyword or lemma to match");
  query_cmd->add_option("--lang", q_lang, "Source language tag");
  query_cmd->add_option("--degree", q_degree, "potential, candidate or established");
  query_cmd->add_option("--work", q_work, "Work id");
  query_cmd->add_option("--from", q_from, "Dating range start (year)");
  query_cmd->add_option("--to", q_to, "Dating range end (year)");

  auto* similar_cmd = app.add_subcommand("similar", "Rank nearest units");
  similar_cmd->fallthrough();
  std::string similar_index, similar_unit;
  std::size_t top = 10;
  std::optional<std::string> weights_spec;
  similar_cmd->add_option("--index", similar_index, "Index path")->required();
  similar_cmd->add_option("--unit", similar_unit, "Seed unit id")->required();
  similar_cmd->add_option("--top", top, "Neighbors to list");
  similar_cmd->add_option("--weights", weights_spec, "kw,les,lem,str weights");

  auto* cluster_cmd = app.add_subcommand("cluster", "Single-linkage similarity clusters");
  cluster_cmd->fallthrough();
  std::string cluster_index;
  std::optional<double> cluster_threshold;
  std::optional<std::string> cluster_weights_spec;
  cluster_cmd->add_option("--index", cluster_index, "Index path")->required();
  cluster_cmd->add_option("--threshold", cluster_threshold, "Similarity threshold in (0, 1]");
  cluster_cmd->add_option("--weights", cluster_weights_spec, "kw,les,lem,str weights");

  auto* posterity_cmd = app.add_subcommand("posterity", "Diachronic posterity edges or chains");
  posterity_cmd->fallthrough();
  std::string posterity_index, strictness = "strict";
  std::optional<double> posterity_threshold;
  std::optional<std::string> seed, posterity_weights_spec;
  std::size_t depth = 8;
  posterity_cmd->add_option("--index", posterity_index, "Index path")->required();
  posterity_cmd->add_option("--threshold", posterity_threshold, "Similarity threshold");
  posterity_cmd->add_option("--strictness", strictness, "strict or overlap-ok");
  posterity_cmd->add_option("--seed", seed, "List transmission chains from this unit");
  posterity_cmd->add_option("--depth", depth, "Maximum chain length in edges");
  posterity_cmd->add_option("--weights", posterity_weights_spec, "kw,les,lem,str weights");

  try {
    app.parse(argc, argv);
    options.json_output = options.json_output || format == "json";

    if (validate_cmd->parsed()) {
      if (strict && lenient)
        throw CLI::ValidationError("--strict", "conflicts with --lenient");
      return run_validate(validate_files,
                          lenient ? aliento::ParseMode::Lenient : aliento::ParseMode::Strict,
                          options);
    }
    if (index_cmd->parsed()) {
      if (index_strict && index_lenient)
        throw CLI::ValidationError("--strict", "conflicts with --lenient");
      aliento::BuildOptions build;
      build.mode = index_strict ? aliento::ParseMode::Strict : aliento::ParseMode::Lenient;
      build.allow_duplicates = allow_duplicates;
      build.jobs = jobs;
      return run_index(index_out, index_meta, index_config, index_files, build, options);
    }
    if (query_cmd->parsed()) {
      std::map<std::string, std::string> filters;
      if (q_keyword) filters["keyword"] = *q_keyword;
      if (q_lang) filters["lang"] = *q_lang;
      if (q_degree) filters["degree"] = *q_degree;
      if (q_work) filters["work"] = *q_work;
      if (q_from) filters["from"] = std::to_string(*q_from);
      if (q_to) filters["to"] = std::to_string(*q_to);
      return run_query(query_index, filters, options);
    }
    if (similar_cmd->parsed()) {
      std::optional<aliento::SimilarityWeights> weights;
      if (weights_spec) weights = parse_weights(*weights_spec);
      return run_similar(similar_index, similar_unit, top, weights, options);
    }
    if (cluster_cmd->parsed()) {
      if (cluster_threshold && !(*cluster_threshold > 0.0 && *cluster_threshold <= 1.0))
        throw CLI::ValidationError("--threshold", "expected a number in (0, 1]");
      std::optional<aliento::SimilarityWeights> weights;
      if (cluster_weights_spec) weights = parse_weights(*cluster_weights_spec);
      return run_cluster(cluster_index, cluster_threshold, weights, options);
    }
    if (posterity_cmd->parsed()) {
      std::optional<aliento::SimilarityWeights> weights;
      if (posterity_weights_spec) weights = parse_weights(*posterity_weights_spec);
      return run_posterity(posterity_index, posterity_threshold, strictness, seed, depth,
                           weights, options);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const aliento::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
