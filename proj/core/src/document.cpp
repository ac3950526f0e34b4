#include "lsskit/document.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace lsskit {

using nlohmann::json;

namespace {

// Line/column of a byte offset, for syntax diagnostics.
std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(origin + ": " + e.what(), line, col);
  }
}

[[noreturn]] void field_error(const std::string& field, const std::string& message) {
  throw ParseError(message, 0, 0, field);
}

std::uint32_t resolve_label(const GroundPtr& ground, const json& value, const std::string& field) {
  if (!value.is_string()) field_error(field, "expected a ground label string");
  auto id = ground->find(value.get<std::string>());
  if (!id) field_error(field, "unknown label '" + value.get<std::string>() + "'");
  return *id;
}

Subset subset_from_json(const GroundPtr& ground, const json& value, const std::string& field) {
  if (!value.is_array()) field_error(field, "expected an array of labels");
  std::vector<std::uint32_t> ids;
  for (std::size_t i = 0; i < value.size(); ++i) {
    ids.push_back(resolve_label(ground, value[i], field + "[" + std::to_string(i) + "]"));
  }
  return Subset(ground, ids);
}

SetFamily family_from_json(const GroundPtr& ground, const json& value, const std::string& field) {
  if (!value.is_array()) field_error(field, "expected an array of label arrays");
  std::vector<Subset> elems;
  for (std::size_t i = 0; i < value.size(); ++i) {
    elems.push_back(subset_from_json(ground, value[i], field + "[" + std::to_string(i) + "]"));
  }
  return SetFamily(ground, std::move(elems));
}

Scale scale_from_json(const GroundPtr& ground, const json& value, const std::string& field) {
  try {
    return Scale(family_from_json(ground, value, field));
  } catch (const InvariantError& e) {
    field_error(field, e.what());
  }
}

json family_to_json(const SetFamily& family) {
  json out = json::array();
  for (const auto& e : family.elements()) out.push_back(e.labels());
  return out;
}

std::uint64_t distance_from_json(const json& value, const std::string& field) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") return kInfDist;
    field_error(field, "the only non-numeric distance token is \"inf\"");
  }
  if (!value.is_number_unsigned()) field_error(field, "distances must be non-negative integers or \"inf\"");
  return value.get<std::uint64_t>();
}

}  // namespace

SpaceDocument parse_space(const std::string& text, const std::string& origin) {
  json j = parse_json(text, origin);
  if (!j.is_object()) throw ParseError(origin + ": document must be a JSON object");
  if (!j.contains("format") || !j["format"].is_string() || j["format"] != kSpaceFormat) {
    field_error("format", std::string("expected format \"") + kSpaceFormat + "\"");
  }
  if (!j.contains("ground") || !j["ground"].is_array() || j["ground"].empty()) {
    field_error("ground", "expected a nonempty array of labels");
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j["ground"].size(); ++i) {
    const auto& l = j["ground"][i];
    if (!l.is_string()) field_error("ground[" + std::to_string(i) + "]", "labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  SpaceDocument doc;
  try {
    doc.ground = make_ground(std::move(labels));
  } catch (const InvariantError& e) {
    field_error("ground", e.what());
  }

  const bool has_metric = j.contains("metric");
  const bool has_generators = j.contains("generators");
  if (has_metric == has_generators) {
    field_error("metric", "exactly one of \"metric\" and \"generators\" must be present");
  }

  if (has_metric) {
    const auto& m = j["metric"];
    if (!m.is_array()) field_error("metric", "expected a square matrix");
    std::vector<std::vector<std::uint64_t>> dist;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (!m[r].is_array()) field_error("metric[" + std::to_string(r) + "]", "expected a matrix row");
      std::vector<std::uint64_t> row;
      for (std::size_t c = 0; c < m[r].size(); ++c) {
        row.push_back(distance_from_json(
            m[r][c], "metric[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
      }
      dist.push_back(std::move(row));
    }
    try {
      doc.metric.emplace(doc.ground, std::move(dist));
    } catch (const InvariantError& e) {
      field_error("metric", e.what());
    }
  } else {
    const auto& g = j["generators"];
    if (!g.is_array() || g.empty()) field_error("generators", "expected a nonempty array of scales");
    for (std::size_t i = 0; i < g.size(); ++i) {
      doc.generators.push_back(
          scale_from_json(doc.ground, g[i], "generators[" + std::to_string(i) + "]"));
    }
  }

  if (j.contains("scales")) {
    if (!j["scales"].is_object()) field_error("scales", "expected an object of named scales");
    for (const auto& [name, value] : j["scales"].items()) {
      doc.scales.push_back({name, scale_from_json(doc.ground, value, "scales." + name)});
    }
  }
  if (j.contains("maps")) {
    if (!j["maps"].is_object()) field_error("maps", "expected an object of named maps");
    for (const auto& [name, value] : j["maps"].items()) {
      if (!value.is_object() || !value.contains("table") || !value["table"].is_object()) {
        field_error("maps." + name, "expected an object with a \"table\" of label pairs");
      }
      std::vector<std::pair<std::string, std::string>> table;
      for (const auto& [from, to] : value["table"].items()) {
        if (!doc.ground->find(from)) {
          field_error("maps." + name + ".table", "unknown source label '" + from + "'");
        }
        if (!to.is_string()) field_error("maps." + name + ".table." + from, "targets must be strings");
        table.push_back({from, to.get<std::string>()});
      }
      doc.maps.push_back({name, std::move(table)});
    }
  }
  return doc;
}

SpaceDocument parse_space_file(const std::string& path) {
  return parse_space(read_text_file(path), path);
}

std::string emit_space(const SpaceDocument& doc) {
  json j;
  j["format"] = kSpaceFormat;
  j["ground"] = doc.ground->labels();
  if (doc.metric) {
    json m = json::array();
    const std::size_t n = doc.ground->size();
    for (std::uint32_t r = 0; r < n; ++r) {
      json row = json::array();
      for (std::uint32_t c = 0; c < n; ++c) {
        std::uint64_t d = (*doc.metric)(r, c);
        if (d == kInfDist) {
          row.push_back("inf");
        } else {
          row.push_back(d);
        }
      }
      m.push_back(std::move(row));
    }
    j["metric"] = std::move(m);
  } else {
    json g = json::array();
    for (const auto& gen : doc.generators) g.push_back(family_to_json(gen));
    j["generators"] = std::move(g);
  }
  if (!doc.scales.empty()) {
    json s = json::object();
    for (const auto& [name, scale] : doc.scales) s[name] = family_to_json(scale);
    j["scales"] = std::move(s);
  }
  if (!doc.maps.empty()) {
    json m = json::object();
    for (const auto& [name, table] : doc.maps) {
      json t = json::object();
      for (const auto& [from, to] : table) t[from] = to;
      m[name] = json::object({{"table", std::move(t)}});
    }
    j["maps"] = std::move(m);
  }
  return j.dump(2) + "\n";
}

SpacePtr realize(const SpaceDocument& doc) {
  if (doc.metric) {
    return std::make_shared<const LssSpace>(metric_lss(*doc.metric));
  }
  return make_space(doc.ground, doc.generators);
}

Scale resolve_scale(const SpaceDocument& doc, const SpacePtr& space, const std::string& name) {
  if (name == "@points") return singleton_cover(doc.ground);
  if (name == "@maximal") return space->maximal_bounded();
  if (name.rfind("@balls", 0) == 0) {
    if (!doc.metric) throw ParseError("ball scales need a metric document", 0, 0, name);
    std::uint64_t r = std::strtoull(name.substr(6).c_str(), nullptr, 10);
    if (r == 0) throw ParseError("ball scale radius must be positive", 0, 0, name);
    return ball_cover(*doc.metric, r);
  }
  for (const auto& [n, s] : doc.scales) {
    if (n == name) return s;
  }
  throw ParseError("unknown scale '" + name + "'", 0, 0, "scales");
}

SpaceMap resolve_map(const SpaceDocument& doc, const SpacePtr& source, const SpacePtr& target,
                     const std::string& name) {
  for (const auto& [n, table] : doc.maps) {
    if (n != name) continue;
    std::vector<std::uint32_t> tbl(source->ground()->size(), ~std::uint32_t(0));
    for (const auto& [from, to] : table) {
      auto from_id = source->ground()->find(from);
      auto to_id = target->ground()->find(to);
      if (!from_id) field_error("maps." + name, "label '" + from + "' is not in the source ground");
      if (!to_id) field_error("maps." + name, "label '" + to + "' is not in the target ground");
      tbl[*from_id] = *to_id;
    }
    for (std::uint32_t x = 0; x < tbl.size(); ++x) {
      if (tbl[x] == ~std::uint32_t(0)) {
        field_error("maps." + name, "no image for label '" + source->ground()->label(x) + "'");
      }
    }
    return SpaceMap(source, target, std::move(tbl));
  }
  throw ParseError("unknown map '" + name + "'", 0, 0, "maps");
}

Subset parse_label_list(const GroundPtr& ground, const std::string& csv) {
  std::vector<std::uint32_t> ids;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    std::string token = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!token.empty()) {
      auto id = ground->find(token);
      if (!id) throw ParseError("unknown label '" + token + "' in label list");
      ids.push_back(*id);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Subset(ground, ids);
}

namespace {

Scale scale_ref_from_json(const json& value, const SpaceDocument& doc, const SpacePtr& space,
                          const std::string& field) {
  if (value.is_string()) return resolve_scale(doc, space, value.get<std::string>());
  return scale_from_json(doc.ground, value, field);
}

json scale_to_json(const Scale& scale) { return family_to_json(scale); }

std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> level_sets_from_json(
    const json& value, std::size_t count, const std::string& field,
    const std::function<std::uint32_t(const json&, const std::string&)>& first_of_pair) {
  if (!value.is_array() || value.size() != count) {
    field_error(field, "expected an array with one entry per indexed set");
  }
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> sets(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& entry = value[i];
    const std::string at = field + "[" + std::to_string(i) + "]";
    if (!entry.is_array()) field_error(at, "expected an array of [ref, level] pairs");
    for (const auto& pair : entry) {
      if (!pair.is_array() || pair.size() != 2 || !pair[1].is_number_unsigned()) {
        field_error(at, "entries must be [ref, level] with level a positive integer");
      }
      std::uint32_t ref = first_of_pair(pair[0], at);
      std::uint32_t lvl = pair[1].get<std::uint32_t>();
      if (lvl < 1) field_error(at, "levels start at one");
      sets[i].push_back({ref, lvl});
    }
    std::sort(sets[i].begin(), sets[i].end());
    sets[i].erase(std::unique(sets[i].begin(), sets[i].end()), sets[i].end());
  }
  return sets;
}

}  // namespace

PropertyAWitness parse_plain_witness(const std::string& text, const SpaceDocument& doc,
                                     const SpacePtr& space, const std::string& origin) {
  json j = parse_json(text, origin);
  if (!j.is_object() || !j.contains("epsilon") || !j.contains("test") || !j.contains("support") ||
      !j.contains("sets")) {
    throw ParseError(origin + ": witness needs epsilon, test, support and sets");
  }
  PropertyAWitness w{parse_rational(j["epsilon"].get<std::string>()),
                     scale_ref_from_json(j["test"], doc, space, "test"),
                     scale_ref_from_json(j["support"], doc, space, "support"),
                     {}};
  w.sets = level_sets_from_json(
      j["sets"], doc.ground->size(), "sets",
      [&](const json& v, const std::string& at) { return resolve_label(doc.ground, v, at); });
  return w;
}

std::string emit_plain_witness(const PropertyAWitness& witness) {
  json j;
  j["epsilon"] = format_rational(witness.epsilon);
  j["test"] = scale_to_json(witness.test_scale);
  j["support"] = scale_to_json(witness.support_scale);
  json sets = json::array();
  const auto& ground = witness.test_scale.ground();
  for (const auto& ax : witness.sets) {
    json entry = json::array();
    for (const auto& [z, lvl] : ax) entry.push_back(json::array({ground->label(z), lvl}));
    sets.push_back(std::move(entry));
  }
  j["sets"] = std::move(sets);
  return j.dump(2) + "\n";
}

ScaledPropertyAWitness parse_scaled_witness(const std::string& text, const SpaceDocument& doc,
                                            const SpacePtr& space, const std::string& origin) {
  json j = parse_json(text, origin);
  if (!j.is_object() || !j.contains("epsilon") || !j.contains("base") || !j.contains("queried") ||
      !j.contains("horizon") || !j.contains("sets")) {
    throw ParseError(origin + ": scaled witness needs epsilon, base, queried, horizon and sets");
  }
  ScaledPropertyAWitness w{scale_ref_from_json(j["base"], doc, space, "base"),
                           parse_rational(j["epsilon"].get<std::string>()),
                           scale_ref_from_json(j["queried"], doc, space, "queried"),
                           scale_ref_from_json(j["horizon"], doc, space, "horizon"),
                           {}};
  const std::size_t base_count = w.base.size();
  w.sets = level_sets_from_json(j["sets"], base_count, "sets",
                                [&](const json& v, const std::string& at) -> std::uint32_t {
                                  if (!v.is_number_unsigned()) {
                                    field_error(at, "scaled witness entries reference base indices");
                                  }
                                  auto idx = v.get<std::uint32_t>();
                                  if (idx >= base_count) field_error(at, "base index out of range");
                                  return idx;
                                });
  return w;
}

std::string emit_scaled_witness(const ScaledPropertyAWitness& witness) {
  json j;
  j["epsilon"] = format_rational(witness.epsilon);
  j["base"] = scale_to_json(witness.base);
  j["queried"] = scale_to_json(witness.queried);
  j["horizon"] = scale_to_json(witness.horizon_scale);
  json sets = json::array();
  for (const auto& a : witness.sets) {
    json entry = json::array();
    for (const auto& [idx, lvl] : a) entry.push_back(json::array({idx, lvl}));
    sets.push_back(std::move(entry));
  }
  j["sets"] = std::move(sets);
  return j.dump(2) + "\n";
}

SakoWitness parse_sako_witness(const std::string& text, const GroundPtr& ground,
                               const std::string& origin) {
  json j = parse_json(text, origin);
  if (!j.is_object() || !j.contains("epsilon") || !j.contains("T") || !j.contains("S") ||
      !j.contains("A")) {
    throw ParseError(origin + ": entourage witness needs epsilon, T, S and A");
  }
  auto entourage_of = [&](const json& value, const std::string& field) {
    if (!value.is_array()) field_error(field, "expected an array of [x, y] label pairs");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (const auto& p : value) {
      if (!p.is_array() || p.size() != 2) field_error(field, "pairs must be [x, y]");
      pairs.push_back({resolve_label(ground, p[0], field), resolve_label(ground, p[1], field)});
    }
    return Entourage(ground, pairs);
  };
  SakoWitness w{parse_rational(j["epsilon"].get<std::string>()), entourage_of(j["T"], "T"),
                entourage_of(j["S"], "S"), {}};
  if (!j["A"].is_array()) field_error("A", "expected an array of [x, y, level] triples");
  for (const auto& t : j["A"]) {
    if (!t.is_array() || t.size() != 3 || !t[2].is_number_unsigned()) {
      field_error("A", "triples must be [x, y, level]");
    }
    w.triples.push_back({resolve_label(ground, t[0], "A"), resolve_label(ground, t[1], "A"),
                         t[2].get<std::uint32_t>()});
  }
  std::sort(w.triples.begin(), w.triples.end());
  w.triples.erase(std::unique(w.triples.begin(), w.triples.end()), w.triples.end());
  return w;
}

std::string emit_sako_witness(const SakoWitness& witness) {
  const auto& ground = witness.test.ground();
  json j;
  j["epsilon"] = format_rational(witness.epsilon);
  auto pairs_json = [&](const Entourage& e) {
    json out = json::array();
    for (const auto& [x, y] : e.pairs()) {
      out.push_back(json::array({ground->label(x), ground->label(y)}));
    }
    return out;
  };
  j["T"] = pairs_json(witness.test);
  j["S"] = pairs_json(witness.support);
  json a = json::array();
  for (const auto& t : witness.triples) {
    a.push_back(json::array({ground->label(t[0]), ground->label(t[1]), t[2]}));
  }
  j["A"] = std::move(a);
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

}  // namespace lsskit
