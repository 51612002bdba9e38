#include "rwg/dataset_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rwg {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

void append_json_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

std::string sample_record_line(const GraphSample& s, int id) {
  std::string o = "{";
  o += "\"id\":" + std::to_string(id);
  o += ",\"split\":\"" + split_name(s.split) + "\"";
  o += ",\"label\":" + std::to_string(s.label);
  o += ",\"num_nodes\":" + std::to_string(s.graph.num_nodes);
  o += ",\"directed\":" + std::string(s.graph.directed ? "true" : "false");
  o += ",\"edges\":[";
  for (std::size_t i = 0; i < s.graph.edges.size(); ++i) {
    if (i) o += ',';
    o += '[' + std::to_string(s.graph.edges[i].u) + ',' + std::to_string(s.graph.edges[i].v) + ']';
  }
  o += "],\"features\":[";
  for (std::size_t i = 0; i < s.graph.features.size(); ++i) {
    if (i) o += ',';
    o += format_double(s.graph.features[i]);
  }
  o += "],\"node_tags\":[";
  for (std::size_t i = 0; i < s.graph.node_tags.size(); ++i) {
    if (i) o += ',';
    append_json_string(o, s.graph.node_tags[i]);
  }
  o += "],\"provenance\":{";
  const Provenance& p = s.provenance;
  o += "\"causal_element_ids\":[";
  for (std::size_t i = 0; i < p.causal_element_ids.size(); ++i) {
    if (i) o += ',';
    append_json_string(o, p.causal_element_ids[i]);
  }
  o += "],\"confounder_element_ids\":[";
  for (std::size_t i = 0; i < p.confounder_element_ids.size(); ++i) {
    if (i) o += ',';
    append_json_string(o, p.confounder_element_ids[i]);
  }
  o += "],\"filler_element_ids\":[";
  for (std::size_t i = 0; i < p.filler_element_ids.size(); ++i) {
    if (i) o += ',';
    append_json_string(o, p.filler_element_ids[i]);
  }
  o += "],\"intervention_applied\":" + std::string(p.intervention_applied ? "true" : "false");
  o += ",\"sample_seed\":" + std::to_string(p.sample_seed);
  o += ",\"causal_nodes\":[";
  for (std::size_t i = 0; i < p.causal_nodes.size(); ++i) {
    if (i) o += ',';
    o += std::to_string(p.causal_nodes[i]);
  }
  o += "],\"confounder_nodes\":[";
  for (std::size_t i = 0; i < p.confounder_nodes.size(); ++i) {
    if (i) o += ',';
    o += std::to_string(p.confounder_nodes[i]);
  }
  o += "],\"confounder_edges\":[";
  for (std::size_t i = 0; i < p.confounder_edges.size(); ++i) {
    if (i) o += ',';
    o += '[' + std::to_string(p.confounder_edges[i].u) + ',' + std::to_string(p.confounder_edges[i].v) + ']';
  }
  o += "],\"confounder_channel\":" + std::to_string(p.confounder_channel);
  o += ",\"confounder_anchor\":" + std::to_string(p.confounder_anchor);
  o += ",\"causal_stat\":" + format_double(p.causal_stat);
  o += "}}";
  return o;
}

}  // namespace

void write_dataset(const Dataset& ds, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  std::string m = "{\n";
  m += "  \"num_classes\": " + std::to_string(ds.manifest.num_classes) + ",\n";
  m += "  \"feature_dim\": " + std::to_string(ds.manifest.feature_dim) + ",\n";
  m += "  \"split_counts\": {\"train\": " + std::to_string(ds.manifest.train_count) +
       ", \"val\": " + std::to_string(ds.manifest.val_count) +
       ", \"test\": " + std::to_string(ds.manifest.test_count) + "},\n";
  m += "  \"master_seed\": " + std::to_string(ds.manifest.master_seed) + ",\n";
  m += "  \"config_digest\": \"" + ds.manifest.config_digest + "\",\n";
  m += "  \"generator_version\": \"" + ds.manifest.generator_version + "\"\n";
  m += "}\n";
  {
    std::ofstream f(fs::path(dir) / "manifest.json", std::ios::binary);
    if (!f) throw ConfigError("write_dataset: cannot open manifest for writing in " + dir);
    f << m;
  }
  std::ofstream f(fs::path(dir) / "samples.jsonl", std::ios::binary);
  if (!f) throw ConfigError("write_dataset: cannot open samples.jsonl for writing in " + dir);
  for (std::size_t i = 0; i < ds.samples.size(); ++i)
    f << sample_record_line(ds.samples[i], static_cast<int>(i)) << '\n';
}

namespace {

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON in " + what);
  return j;
}

}  // namespace

Dataset read_dataset(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream mf(fs::path(dir) / "manifest.json", std::ios::binary);
  if (!mf) throw ParseError("read_dataset: missing manifest.json in " + dir);
  std::stringstream mbuf;
  mbuf << mf.rdbuf();
  json jm = parse_json(mbuf.str(), "manifest.json");

  Dataset ds;
  try {
    ds.manifest.num_classes = jm.at("num_classes").get<int>();
    ds.manifest.feature_dim = jm.at("feature_dim").get<int>();
    ds.manifest.train_count = jm.at("split_counts").at("train").get<int>();
    ds.manifest.val_count = jm.at("split_counts").at("val").get<int>();
    ds.manifest.test_count = jm.at("split_counts").at("test").get<int>();
    ds.manifest.master_seed = jm.at("master_seed").get<std::uint64_t>();
    ds.manifest.config_digest = jm.at("config_digest").get<std::string>();
    ds.manifest.generator_version = jm.at("generator_version").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest.json: ") + e.what());
  }

  std::ifstream sf(fs::path(dir) / "samples.jsonl", std::ios::binary);
  if (!sf) throw ParseError("read_dataset: missing samples.jsonl in " + dir);
  std::string line;
  int lineno = 0;
  while (std::getline(sf, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw ParseError("samples.jsonl line " + std::to_string(lineno) + ": malformed record");
    GraphSample s;
    try {
      s.split = split_from_name(j.at("split").get<std::string>());
      s.label = j.at("label").get<int>();
      s.graph.num_nodes = j.at("num_nodes").get<int>();
      s.graph.directed = j.at("directed").get<bool>();
      s.graph.feature_dim = ds.manifest.feature_dim;
      for (const auto& e : j.at("edges")) s.graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
      s.graph.features = j.at("features").get<std::vector<double>>();
      s.graph.node_tags = j.at("node_tags").get<std::vector<std::string>>();
      const json& jp = j.at("provenance");
      s.provenance.causal_element_ids = jp.at("causal_element_ids").get<std::vector<std::string>>();
      s.provenance.confounder_element_ids = jp.at("confounder_element_ids").get<std::vector<std::string>>();
      s.provenance.filler_element_ids = jp.at("filler_element_ids").get<std::vector<std::string>>();
      s.provenance.intervention_applied = jp.at("intervention_applied").get<bool>();
      s.provenance.sample_seed = jp.at("sample_seed").get<std::uint64_t>();
      s.provenance.causal_nodes = jp.at("causal_nodes").get<std::vector<int>>();
      s.provenance.confounder_nodes = jp.at("confounder_nodes").get<std::vector<int>>();
      for (const auto& e : jp.at("confounder_edges"))
        s.provenance.confounder_edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
      s.provenance.confounder_channel = jp.at("confounder_channel").get<int>();
      s.provenance.confounder_anchor = jp.at("confounder_anchor").get<int>();
      s.provenance.causal_stat = jp.at("causal_stat").get<double>();
    } catch (const json::exception& e) {
      throw ParseError("samples.jsonl line " + std::to_string(lineno) + ": " + e.what());
    }
    ds.samples.push_back(std::move(s));
  }
  int total = ds.manifest.train_count + ds.manifest.val_count + ds.manifest.test_count;
  if (static_cast<int>(ds.samples.size()) != total)
    throw ConfigError("read_dataset: integrity error, manifest declares " + std::to_string(total) +
                      " samples but file holds " + std::to_string(ds.samples.size()));
  return ds;
}

}  // namespace rwg
