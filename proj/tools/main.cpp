// lsskit command line tool: loads space documents, runs the library
// operations, and emits self-contained certificates that `lsskit verify`
// can re-run.

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "lsskit/coarse.hpp"
#include "lsskit/document.hpp"
#include "lsskit/fixtures.hpp"
#include "lsskit/nets.hpp"
#include "lsskit/property_a.hpp"
#include "lsskit/property_a_scaled.hpp"
#include "lsskit/version.hpp"

using nlohmann::json;
using namespace lsskit;

namespace {

// Exit codes: 0 verdict true / success, 1 verdict false (with witnesses),
// 2 error (parse problems, oracle limits, bad flags), 3 search exhausted.
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;
constexpr int kExitExhausted = 3;

// Resolves input paths either from disk or, when re-verifying a
// certificate, from the documents inlined in the certificate itself.
class DocumentStore {
 public:
  void preload(const std::string& name, std::string text) { inline_[name] = std::move(text); }

  std::string text(const std::string& path) {
    auto it = inline_.find(path);
    if (it != inline_.end()) return it->second;
    std::string content = read_text_file(path);
    loaded_[path] = content;
    return content;
  }

  const std::map<std::string, std::string>& loaded() const { return loaded_; }

 private:
  std::map<std::string, std::string> inline_;
  std::map<std::string, std::string> loaded_;
};

struct CommandResult {
  json certificate;
  int exit_code = kExitTrue;
};

using Handler = std::function<CommandResult(const json& args, DocumentStore& store)>;

std::map<std::string, Handler>& registry() {
  static std::map<std::string, Handler> handlers;
  return handlers;
}

json limits_json(const OracleLimits& limits) {
  return json{{"net_enumeration_ambient", limits.net_enumeration_ambient},
              {"cover_universe", limits.cover_universe},
              {"cover_base", limits.cover_base},
              {"search_ground", limits.search_ground},
              {"search_max_level", limits.search_max_level},
              {"search_candidates", limits.search_candidates}};
}

json labels_json(const GroundPtr& ground, const std::vector<std::uint32_t>& ids) {
  json out = json::array();
  for (auto id : ids) out.push_back(ground->label(id));
  return out;
}

json subset_json(const Subset& s) { return labels_json(s.ground(), s.ids()); }

json family_json(const SetFamily& family) {
  json out = json::array();
  for (const auto& e : family.elements()) out.push_back(subset_json(e));
  return out;
}

json sets_json(const GroundPtr& ground,
               const std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>>& sets) {
  json out = json::array();
  for (const auto& a : sets) {
    json entry = json::array();
    for (const auto& [z, lvl] : a) entry.push_back(json::array({ground->label(z), lvl}));
    out.push_back(std::move(entry));
  }
  return out;
}

json violations_json(const GroundPtr& ground, const std::vector<WitnessViolation>& violations,
                     bool label_form) {
  json out = json::array();
  for (const auto& v : violations) {
    json row;
    switch (v.kind) {
      case WitnessViolationKind::Support: row["kind"] = "support"; break;
      case WitnessViolationKind::Diagonal: row["kind"] = "diagonal"; break;
      case WitnessViolationKind::Ratio: row["kind"] = "ratio"; break;
    }
    if (label_form) {
      row["x"] = ground->label(v.x);
      if (v.kind == WitnessViolationKind::Ratio) row["y"] = ground->label(v.y);
    } else {
      row["x"] = v.x;
      if (v.kind == WitnessViolationKind::Ratio) row["y"] = v.y;
    }
    if (v.kind == WitnessViolationKind::Ratio) {
      row["sym_diff"] = v.sym_diff;
      row["intersection"] = v.intersection;
    }
    out.push_back(std::move(row));
  }
  return out;
}

struct LoadedSpace {
  SpaceDocument doc;
  SpacePtr space;
};

LoadedSpace load_space(DocumentStore& store, const std::string& path) {
  auto doc = parse_space(store.text(path), path);
  auto space = realize(doc);
  return {std::move(doc), std::move(space)};
}

// ---- command handlers -----------------------------------------------------

CommandResult cmd_space_validate(const json& args, DocumentStore& store) {
  auto loaded = load_space(store, args.at("space"));
  json cert;
  cert["verdict"] = true;
  cert["constants"] = {{"points", loaded.space->ground()->size()},
                       {"maximal_bounded_sets", loaded.space->component_count()},
                       {"bounded_geometry", has_bounded_geometry(*loaded.space).constant}};
  cert["witnesses"] = {{"maximal_bounded", family_json(loaded.space->maximal_bounded())}};
  return {std::move(cert), kExitTrue};
}

CommandResult cmd_star(const json& args, DocumentStore& store) {
  auto loaded = load_space(store, args.at("space"));
  Subset target = parse_label_list(loaded.doc.ground, args.at("target"));
  Scale family = resolve_scale(loaded.doc, loaded.space, args.at("family"));
  Subset result = star(target, family);
  json cert;
  cert["verdict"] = true;
  cert["witnesses"] = {{"star", subset_json(result)},
                       {"horizon", horizon(target, family)}};
  return {std::move(cert), kExitTrue};
}

CommandResult cmd_net_compute(const json& args, DocumentStore& store) {
  auto loaded = load_space(store, args.at("space"));
  Scale base = resolve_scale(loaded.doc, loaded.space, args.at("scale"));
  Subset ambient = args.contains("ambient")
                       ? parse_label_list(loaded.doc.ground, args.at("ambient"))
                       : Subset::full(loaded.doc.ground);
  auto limits = OracleLimits::from_env();
  json cert;
  if (args.value("all", false)) {
    auto nets = enumerate_nets(ambient, base, limits);
    json list = json::array();
    for (const auto& n : nets) list.push_back(subset_json(n));
    cert["constants"] = {{"nets", nets.size()}};
    cert["witnesses"] = {{"nets", std::move(list)}};
  } else {
    auto net = greedy_net(ambient, base);
    cert["constants"] = {{"size", net.members.count()}};
    cert["witnesses"] = {{"net", subset_json(net.members)}};
  }
  cert["verdict"] = true;
  cert["limits"] = limits_json(limits);
  return {std::move(cert), kExitTrue};
}

CommandResult cmd_bsm_check(const json& args, DocumentStore& store) {
  auto loaded = load_space(store, args.at("space"));
  Scale base = resolve_scale(loaded.doc, loaded.space, args.at("base"));
  BsmMode mode = bsm_mode_from_string(args.at("mode"));
  auto limits = OracleLimits::from_env();
  auto cert_data = check_bsm(*loaded.space, base, mode, limits);
  json cert;
  cert["verdict"] = true;
  cert["constants"] = {{"bound", cert_data.bound}, {"mode", to_string(mode)}};
  json witnesses = json::array();
  for (std::uint32_t i = 0; i < cert_data.witnesses.size(); ++i) {
    json row;
    row["element"] = subset_json(cert_data.queried.element(i));
    if (mode == BsmMode::Covering) {
      row["cover_indices"] = cert_data.witnesses[i];
    } else {
      row["net"] = labels_json(loaded.doc.ground, cert_data.witnesses[i]);
    }
    witnesses.push_back(std::move(row));
  }
  cert["witnesses"] = {{"per_element", std::move(witnesses)},
                       {"queried", family_json(cert_data.queried)}};
  cert["limits"] = limits_json(limits);
  return {std::move(cert), kExitTrue};
}

CommandResult cmd_map_classify(const json& args, DocumentStore& store) {
  auto src = load_space(store, args.at("source"));
  auto tgt = load_space(store, args.at("target"));
  SpaceMap f = resolve_map(src.doc, src.space, tgt.space, args.at("map"));
  auto report = is_coarse_equivalence(f);
  json cert;
  cert["verdict"] = report.equivalence;
  json w;
  w["bornologous"] = report.bornologous.ok;
  if (report.bornologous.counterexample) {
    w["bornologous_counterexample"] = subset_json(*report.bornologous.counterexample);
  }
  w["coarse_embedding"] = report.embedding.ok;
  if (report.embedding.counterexample) {
    w["embedding_counterexample"] = subset_json(*report.embedding.counterexample);
  }
  w["coarsely_surjective"] = report.surjectivity.ok;
  if (report.surjectivity.missed) {
    w["missed_component"] = subset_json(*report.surjectivity.missed);
  }
  if (report.surjectivity.witness) {
    w["surjectivity_scale"] = family_json(*report.surjectivity.witness);
  }
  if (report.inverse) {
    json table = json::object();
    for (std::uint32_t y = 0; y < report.inverse->table.size(); ++y) {
      table[tgt.space->ground()->label(y)] = src.space->ground()->label(report.inverse->table[y]);
    }
    w["inverse"] = std::move(table);
  }
  cert["witnesses"] = std::move(w);
  return {std::move(cert), report.equivalence ? kExitTrue : kExitFalse};
}

CommandResult cmd_map_invert(const json& args, DocumentStore& store) {
  auto src = load_space(store, args.at("source"));
  auto tgt = load_space(store, args.at("target"));
  SpaceMap f = resolve_map(src.doc, src.space, tgt.space, args.at("map"));
  auto report = is_coarse_equivalence(f);
  json cert;
  if (!report.equivalence) {
    cert["verdict"] = false;
    cert["witnesses"] = {{"bornologous", report.bornologous.ok},
                         {"coarse_embedding", report.embedding.ok},
                         {"coarsely_surjective", report.surjectivity.ok}};
    return {std::move(cert), kExitFalse};
  }
  auto g = construct_coarse_inverse(f);
  json table = json::object();
  for (std::uint32_t y = 0; y < g.table.size(); ++y) {
    table[tgt.space->ground()->label(y)] = src.space->ground()->label(g.table[y]);
  }
  cert["verdict"] = true;
  cert["witnesses"] = {{"inverse", std::move(table)}};
  return {std::move(cert), kExitTrue};
}

CommandResult cmd_propa_verify(const json& args, DocumentStore& store) {
  auto loaded = load_space(store, args.at("space"));
  auto witness =
      parse_plain_witness(store.text(args.at("witness")), loaded.doc, loaded.space, args.at("witness"));
  auto report = verify_witness(*loaded.space, witness);
  json cert;
  cert["verdict"] = report.ok;
  cert["constants"] = {{"epsilon", format_rational(witness.epsilon)},
                       {"pairs_checked", report.pairs_checked}};
  if (report.max_ratio) cert["constants"]["max_ratio"] = format_rational(*report.max_ratio);
  cert["witnesses"] = {{"violations", violations_json(loaded.doc.ground, report.violations, true)}};
  return {std::move(cert), report.ok ? kExitTrue : kExitFalse};
}

CommandResult cmd_propa_search(const json& args, DocumentStore& store) {
  auto loaded = load_space(store, args.at("space"));
  Rational epsilon = parse_rational(args.at("epsilon"));
  Scale test = resolve_scale(loaded.doc, loaded.space, args.at("test"));
  Scale support = resolve_scale(loaded.doc, loaded.space, args.at("support"));
  unsigned max_level = args.value("max_level", 1u);
  auto limits = OracleLimits::from_env();
  auto result = search_witness(*loaded.space, epsilon, test, support, max_level, limits);
  json cert;
  cert["limits"] = limits_json(limits);
  cert["constants"] = {{"epsilon", format_rational(epsilon)}, {"max_level", max_level}};
  if (result.witness) {
    cert["verdict"] = true;
    cert["witnesses"] = {{"sets", sets_json(loaded.doc.ground, result.witness->sets)}};
    return {std::move(cert), kExitTrue};
  }
  // Exhaustion of this support and level budget is not a disproof.
  cert["verdict"] = "exhausted";
  return {std::move(cert), kExitExhausted};
}

CommandResult cmd_propa_construct_asdim(const json& args, DocumentStore& store) {
  auto loaded = load_space(store, args.at("space"));
  std::size_t n = args.at("dimension");
  Rational epsilon = parse_rational(args.at("epsilon"));
  Scale test = resolve_scale(loaded.doc, loaded.space, args.at("test"));
  auto asdim = check_asdim_at_most(*loaded.space, n);
  json cert;
  if (!asdim.certificate) {
    cert["verdict"] = false;
    cert["witnesses"] = {{"failed_generator", *asdim.failed_generator}};
    return {std::move(cert), kExitFalse};
  }
  auto built = construct_witness_asdim(*loaded.space, *asdim.certificate, epsilon, test);
  auto report = verify_witness(*loaded.space, built.witness);
  cert["verdict"] = report.ok;
  cert["constants"] = {{"dimension", n},
                       {"tower_height", built.tower_height},
                       {"ratio_bound", format_rational(built.ratio_bound)},
                       {"epsilon", format_rational(epsilon)}};
  if (report.max_ratio) cert["constants"]["max_ratio"] = format_rational(*report.max_ratio);
  cert["witnesses"] = {{"sets", sets_json(loaded.doc.ground, built.witness.sets)},
                       {"coarsening", family_json(built.coarsening)},
                       {"violations", violations_json(loaded.doc.ground, report.violations, true)}};
  return {std::move(cert), report.ok ? kExitTrue : kExitFalse};
}

CommandResult cmd_propa_transfer(const json& args, DocumentStore& store) {
  auto src = load_space(store, args.at("source"));
  auto tgt = load_space(store, args.at("target"));
  SpaceMap f = resolve_map(src.doc, src.space, tgt.space, args.at("map"));
  auto witness = parse_plain_witness(store.text(args.at("witness")), tgt.doc, tgt.space,
                                     args.at("witness"));
  Rational epsilon = parse_rational(args.at("epsilon"));
  auto moved = transfer_witness(f, witness, epsilon);
  json cert;
  cert["verdict"] = moved.recheck.ok;
  cert["constants"] = {{"epsilon", format_rational(epsilon)},
                       {"max_fiber", moved.max_fiber},
                       {"budget", format_rational(epsilon / Rational(static_cast<long long>(
                                                                moved.max_fiber)))}};
  cert["witnesses"] = {
      {"sets", sets_json(src.doc.ground, moved.witness.sets)},
      {"violations", violations_json(src.doc.ground, moved.recheck.violations, true)}};
  return {std::move(cert), moved.recheck.ok ? kExitTrue : kExitFalse};
}

CommandResult cmd_scaled_verify(const json& args, DocumentStore& store) {
  auto loaded = load_space(store, args.at("space"));
  auto witness = parse_scaled_witness(store.text(args.at("witness")), loaded.doc, loaded.space,
                                      args.at("witness"));
  auto report = verify_scaled_witness(*loaded.space, witness);
  json cert;
  cert["verdict"] = report.ok;
  cert["constants"] = {{"epsilon", format_rational(witness.epsilon)},
                       {"pairs_checked", report.pairs_checked}};
  if (report.max_ratio) cert["constants"]["max_ratio"] = format_rational(*report.max_ratio);
  cert["witnesses"] = {{"violations", violations_json(loaded.doc.ground, report.violations, false)}};
  return {std::move(cert), report.ok ? kExitTrue : kExitFalse};
}

CommandResult cmd_scaled_reduce(const json& args, DocumentStore& store) {
  auto loaded = load_space(store, args.at("space"));
  auto witness = parse_scaled_witness(store.text(args.at("witness")), loaded.doc, loaded.space,
                                      args.at("witness"));
  auto plain = reduce_trivial_base(witness);
  auto report = verify_witness(*loaded.space, plain);
  json cert;
  cert["verdict"] = report.ok;
  cert["constants"] = {{"epsilon", format_rational(plain.epsilon)}};
  cert["witnesses"] = {
      {"plain_witness", json::parse(emit_plain_witness(plain))},
      // Over the singleton base the triggers translate exactly: two points
      // have intersecting horizons against the queried scale precisely when
      // they share one of its elements, so the reduced witness keeps the
      // queried scale as its test scale and is tested on the same pairs.
      {"trigger_translation",
       "test scale = queried scale; one-point horizons intersect exactly on shared elements"},
      {"violations", violations_json(loaded.doc.ground, report.violations, true)}};
  return {std::move(cert), report.ok ? kExitTrue : kExitFalse};
}

CommandResult cmd_scaled_transfer(const json& args, DocumentStore& store) {
  auto src = load_space(store, args.at("source"));
  auto tgt = load_space(store, args.at("target"));
  SpaceMap f = resolve_map(src.doc, src.space, tgt.space, args.at("map"));
  auto witness = parse_scaled_witness(store.text(args.at("witness")), tgt.doc, tgt.space,
                                      args.at("witness"));
  Scale base_x = resolve_scale(src.doc, src.space, args.at("base"));
  Scale queried_x = resolve_scale(src.doc, src.space, args.at("queried"));
  Rational epsilon = parse_rational(args.at("epsilon"));
  auto limits = OracleLimits::from_env();
  auto moved = transfer_scaled_witness(f, witness, base_x, queried_x, epsilon, limits);
  json cert;
  cert["verdict"] = moved.recheck.ok;
  cert["constants"] = {{"epsilon", format_rational(epsilon)},
                       {"m", moved.cover_m},
                       {"n", moved.cover_n},
                       {"budget", format_rational(moved.budget)}};
  json counting = json::array();
  for (const auto& row : moved.counting) {
    counting.push_back(json{{"i", row.i},
                            {"j", row.j},
                            {"a_sym_diff", row.a_sym_diff},
                            {"a_intersection", row.a_intersection},
                            {"b_max_sym_diff", row.b_max_sym_diff},
                            {"b_min_intersection", row.b_min_intersection}});
  }
  cert["witnesses"] = {{"sets", json::parse(emit_scaled_witness(moved.witness))["sets"]},
                       {"counting", std::move(counting)},
                       {"violations", violations_json(src.doc.ground, moved.recheck.violations,
                                                      false)}};
  cert["limits"] = limits_json(limits);
  return {std::move(cert), moved.recheck.ok ? kExitTrue : kExitFalse};
}

CommandResult cmd_coarse_convert(const json& args, DocumentStore& store) {
  auto loaded = load_space(store, args.at("space"));
  auto cs = lss_to_coarse(*loaded.space);
  auto back = coarse_to_lss(cs);
  const bool round_trip_exact = back.maximal_bounded() == loaded.space->maximal_bounded();
  json cert;
  cert["verdict"] = round_trip_exact;
  json pairs = json::array();
  for (const auto& [x, y] : cs.max_controlled().pairs()) {
    pairs.push_back(json::array(
        {loaded.space->ground()->label(x), loaded.space->ground()->label(y)}));
  }
  cert["constants"] = {{"local_finiteness", is_uniformly_locally_finite(cs).constant}};
  cert["witnesses"] = {{"max_controlled", std::move(pairs)},
                       {"round_trip_maximal_bounded", family_json(back.maximal_bounded())}};
  return {std::move(cert), round_trip_exact ? kExitTrue : kExitFalse};
}

CommandResult cmd_coarse_verify_sako(const json& args, DocumentStore& store) {
  auto loaded = load_space(store, args.at("space"));
  auto witness =
      parse_sako_witness(store.text(args.at("witness")), loaded.doc.ground, args.at("witness"));
  auto cs = lss_to_coarse(*loaded.space);
  auto report = verify_sako_witness(cs, witness);
  json cert;
  cert["verdict"] = report.ok;
  cert["constants"] = {{"epsilon", format_rational(witness.epsilon)},
                       {"pairs_checked", report.pairs_checked}};
  if (report.max_ratio) cert["constants"]["max_ratio"] = format_rational(*report.max_ratio);
  cert["witnesses"] = {{"violations", violations_json(loaded.doc.ground, report.violations, true)}};
  return {std::move(cert), report.ok ? kExitTrue : kExitFalse};
}

CommandResult cmd_coarse_convert_witness(const json& args, DocumentStore& store) {
  auto loaded = load_space(store, args.at("space"));
  std::string direction = args.at("direction");
  json cert;
  if (direction == "to-entourage") {
    auto witness = parse_plain_witness(store.text(args.at("witness")), loaded.doc, loaded.space,
                                       args.at("witness"));
    auto sako = witness_lss_to_sako(*loaded.space, witness);
    auto report = verify_sako_witness(lss_to_coarse(*loaded.space), sako);
    cert["verdict"] = report.ok;
    cert["witnesses"] = {{"entourage_witness", json::parse(emit_sako_witness(sako))}};
    return {std::move(cert), report.ok ? kExitTrue : kExitFalse};
  }
  if (direction == "to-star") {
    auto witness =
        parse_sako_witness(store.text(args.at("witness")), loaded.doc.ground, args.at("witness"));
    auto cs = lss_to_coarse(*loaded.space);
    auto plain = witness_sako_to_lss(cs, witness);
    auto report = verify_witness(coarse_to_lss(cs), plain);
    cert["verdict"] = report.ok;
    cert["witnesses"] = {{"star_witness", json::parse(emit_plain_witness(plain))}};
    return {std::move(cert), report.ok ? kExitTrue : kExitFalse};
  }
  throw ParseError("direction must be to-entourage or to-star");
}

// Unlike the decision commands, this one emits a plain space document.
std::string generate_fixture(const json& args) {
  std::string kind = args.at("kind");
  SpaceDocument doc;
  if (kind == "path") {
    std::size_t n = args.at("n");
    doc.metric = path_metric(n);
  } else if (kind == "components") {
    std::vector<std::size_t> sizes;
    for (const auto& s : args.at("sizes")) sizes.push_back(s.get<std::size_t>());
    doc.metric = components_metric(sizes);
  } else if (kind == "grid") {
    doc.metric = grid_metric(args.at("side"), args.at("dim"));
  } else if (kind == "product") {
    doc.metric = product_metric(args.at("side"), args.at("blocks"));
  } else {
    throw ParseError("unknown fixture kind '" + kind + "'");
  }
  doc.ground = doc.metric->ground();
  std::uint64_t d = doc.metric->max_finite();
  for (std::uint64_t r = 1; r <= std::min<std::uint64_t>(d == 0 ? 1 : d, 4); ++r) {
    doc.scales.push_back({"Balls" + std::to_string(r), ball_cover(*doc.metric, r)});
  }
  auto space = realize(doc);
  if (kind == "components") doc.scales.push_back({"Comp", space->maximal_bounded()});
  doc.scales.push_back({"Maximal", space->maximal_bounded()});
  return emit_space(doc);
}

// ---- certificate envelope and re-verification ------------------------------

json make_certificate(const std::string& command, const json& args, DocumentStore& store,
                      CommandResult& result) {
  json cert;
  cert["tool"] = kToolVersion;
  cert["command"] = command;
  cert["args"] = args;
  json inputs = json::object();
  for (const auto& [path, text] : store.loaded()) inputs[path] = json::parse(text);
  cert["inputs"] = std::move(inputs);
  for (const auto& [key, value] : result.certificate.items()) cert[key] = value;
  return cert;
}

int run_command(const std::string& command, const json& args, DocumentStore& store,
                const std::optional<std::string>& out_path) {
  auto it = registry().find(command);
  if (it == registry().end()) throw ParseError("unknown command '" + command + "'");
  CommandResult result = it->second(args, store);
  json cert = make_certificate(command, args, store, result);
  std::string text = cert.dump(2) + "\n";
  if (out_path) {
    write_text_file(*out_path, text);
  } else {
    std::cout << text;
  }
  return result.exit_code;
}

int cmd_verify_certificate(const std::string& path, const std::optional<std::string>& out_path) {
  json cert = json::parse(read_text_file(path));
  DocumentStore store;
  for (const auto& [name, value] : cert.at("inputs").items()) {
    store.preload(name, value.dump());
  }
  auto it = registry().find(cert.at("command"));
  if (it == registry().end()) {
    throw ParseError("certificate names unknown command '" + cert["command"].get<std::string>() + "'");
  }
  CommandResult rerun = it->second(cert.at("args"), store);
  bool reproduced = rerun.certificate.at("verdict") == cert.at("verdict");
  if (reproduced && rerun.certificate.contains("constants") && cert.contains("constants")) {
    reproduced = rerun.certificate["constants"] == cert["constants"];
  }
  json report;
  report["tool"] = kToolVersion;
  report["command"] = "verify";
  report["verdict"] = reproduced;
  report["constants"] = {{"original_verdict", cert.at("verdict")},
                         {"reproduced_verdict", rerun.certificate.at("verdict")}};
  std::string text = report.dump(2) + "\n";
  if (out_path) {
    write_text_file(*out_path, text);
  } else {
    std::cout << text;
  }
  return reproduced ? kExitTrue : kExitFalse;
}

void register_handlers() {
  auto& reg = registry();
  reg["space validate"] = cmd_space_validate;
  reg["star"] = cmd_star;
  reg["net compute"] = cmd_net_compute;
  reg["bsm check"] = cmd_bsm_check;
  reg["map classify"] = cmd_map_classify;
  reg["map invert"] = cmd_map_invert;
  reg["propa verify"] = cmd_propa_verify;
  reg["propa search"] = cmd_propa_search;
  reg["propa construct-asdim"] = cmd_propa_construct_asdim;
  reg["propa transfer"] = cmd_propa_transfer;
  reg["propa-scaled verify"] = cmd_scaled_verify;
  reg["propa-scaled reduce"] = cmd_scaled_reduce;
  reg["propa-scaled transfer"] = cmd_scaled_transfer;
  reg["coarse convert"] = cmd_coarse_convert;
  reg["coarse verify-sako"] = cmd_coarse_verify_sako;
  reg["coarse convert-witness"] = cmd_coarse_convert_witness;
}

}  // namespace

int main(int argc, char** argv) {
  register_handlers();

  CLI::App app{"Certificates for coarse geometry on finite spaces"};
  app.require_subcommand(1);
  std::string out;

  std::string pending_command;
  json pending_args;

  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out, "write the certificate here"); };

  // space validate
  {
    auto* space_cmd = app.add_subcommand("space", "space document operations");
    space_cmd->require_subcommand(1);
    auto* validate = space_cmd->add_subcommand("validate", "parse and validate a space document");
    static std::string path;
    validate->add_option("space", path, "space document")->required();
    add_out(validate);
    validate->callback([&] {
      pending_command = "space validate";
      pending_args = {{"space", path}};
    });
  }

  // star
  {
    auto* star_cmd = app.add_subcommand("star", "star of a set against a scale");
    static std::string path, target, family;
    star_cmd->add_option("--space", path)->required();
    star_cmd->add_option("--target", target, "comma separated labels")->required();
    star_cmd->add_option("--family", family, "scale name")->required();
    add_out(star_cmd);
    star_cmd->callback([&] {
      pending_command = "star";
      pending_args = {{"space", path}, {"target", target}, {"family", family}};
    });
  }

  // net compute
  {
    auto* net_cmd = app.add_subcommand("net", "net operations");
    net_cmd->require_subcommand(1);
    auto* compute = net_cmd->add_subcommand("compute", "compute a net (greedy, or all with --all)");
    static std::string path, scale_name, ambient;
    static bool all = false;
    compute->add_option("--space", path)->required();
    compute->add_option("--scale", scale_name)->required();
    compute->add_option("--ambient", ambient, "comma separated labels (default: everything)");
    compute->add_flag("--all", all, "enumerate every net");
    add_out(compute);
    compute->callback([&] {
      pending_command = "net compute";
      pending_args = {{"space", path}, {"scale", scale_name}, {"all", all}};
      if (!ambient.empty()) pending_args["ambient"] = ambient;
    });
  }

  // bsm check
  {
    auto* bsm_cmd = app.add_subcommand("bsm", "bounded scale measure");
    bsm_cmd->require_subcommand(1);
    auto* check = bsm_cmd->add_subcommand("check", "certify a bound against the coarsest scale");
    static std::string path, base, mode;
    check->add_option("--space", path)->required();
    check->add_option("--base", base, "base scale name")->required();
    check->add_option("--mode", mode, "all-nets | exists-net | covering")->required();
    add_out(check);
    check->callback([&] {
      pending_command = "bsm check";
      pending_args = {{"space", path}, {"base", base}, {"mode", mode}};
    });
  }

  // map classify / invert
  {
    auto* map_cmd = app.add_subcommand("map", "map classification");
    map_cmd->require_subcommand(1);
    static std::string src, tgt, name;
    auto* classify = map_cmd->add_subcommand("classify", "classify a map between two spaces");
    classify->add_option("--source", src)->required();
    classify->add_option("--target", tgt)->required();
    classify->add_option("--map", name, "map name in the source document")->required();
    add_out(classify);
    classify->callback([&] {
      pending_command = "map classify";
      pending_args = {{"source", src}, {"target", tgt}, {"map", name}};
    });
    auto* invert = map_cmd->add_subcommand("invert", "construct the canonical coarse inverse");
    invert->add_option("--source", src)->required();
    invert->add_option("--target", tgt)->required();
    invert->add_option("--map", name)->required();
    add_out(invert);
    invert->callback([&] {
      pending_command = "map invert";
      pending_args = {{"source", src}, {"target", tgt}, {"map", name}};
    });
  }

  // propa
  {
    auto* propa = app.add_subcommand("propa", "property A operations");
    propa->require_subcommand(1);
    static std::string path, witness, eps, test, support, src, tgt, name;
    static unsigned max_level = 1;
    static std::size_t dimension = 0;

    auto* verify = propa->add_subcommand("verify", "verify a witness document");
    verify->add_option("--space", path)->required();
    verify->add_option("--witness", witness)->required();
    add_out(verify);
    verify->callback([&] {
      pending_command = "propa verify";
      pending_args = {{"space", path}, {"witness", witness}};
    });

    auto* search = propa->add_subcommand("search", "exhaustive witness search at a fixed support");
    search->add_option("--space", path)->required();
    search->add_option("--epsilon", eps)->required();
    search->add_option("--test", test)->required();
    search->add_option("--support", support)->required();
    search->add_option("--max-level", max_level, "level budget (default 1)");
    add_out(search);
    search->callback([&] {
      pending_command = "propa search";
      pending_args = {{"space", path}, {"epsilon", eps},       {"test", test},
                      {"support", support}, {"max_level", max_level}};
    });

    auto* construct = propa->add_subcommand("construct-asdim",
                                            "build a witness from a dimension certificate");
    construct->add_option("--space", path)->required();
    construct->add_option("--dimension", dimension)->required();
    construct->add_option("--epsilon", eps)->required();
    construct->add_option("--test", test)->required();
    add_out(construct);
    construct->callback([&] {
      pending_command = "propa construct-asdim";
      pending_args = {{"space", path}, {"dimension", dimension}, {"epsilon", eps}, {"test", test}};
    });

    auto* transfer = propa->add_subcommand("transfer", "pull a witness back along an equivalence");
    transfer->add_option("--source", src)->required();
    transfer->add_option("--target", tgt)->required();
    transfer->add_option("--map", name)->required();
    transfer->add_option("--witness", witness, "witness document on the target")->required();
    transfer->add_option("--epsilon", eps)->required();
    add_out(transfer);
    transfer->callback([&] {
      pending_command = "propa transfer";
      pending_args = {{"source", src},   {"target", tgt},   {"map", name},
                      {"witness", witness}, {"epsilon", eps}};
    });
  }

  // propa-scaled
  {
    auto* scaled = app.add_subcommand("propa-scaled", "property A at a scale");
    scaled->require_subcommand(1);
    static std::string path, witness, src, tgt, name, base, queried, eps;

    auto* verify = scaled->add_subcommand("verify", "verify a scaled witness document");
    verify->add_option("--space", path)->required();
    verify->add_option("--witness", witness)->required();
    add_out(verify);
    verify->callback([&] {
      pending_command = "propa-scaled verify";
      pending_args = {{"space", path}, {"witness", witness}};
    });

    auto* reduce = scaled->add_subcommand("reduce", "reduce a singleton-base witness to a plain one");
    reduce->add_option("--space", path)->required();
    reduce->add_option("--witness", witness)->required();
    add_out(reduce);
    reduce->callback([&] {
      pending_command = "propa-scaled reduce";
      pending_args = {{"space", path}, {"witness", witness}};
    });

    auto* transfer = scaled->add_subcommand("transfer", "transfer a scaled witness backward");
    transfer->add_option("--source", src)->required();
    transfer->add_option("--target", tgt)->required();
    transfer->add_option("--map", name)->required();
    transfer->add_option("--witness", witness)->required();
    transfer->add_option("--base", base, "base scale on the source")->required();
    transfer->add_option("--queried", queried, "queried scale on the source")->required();
    transfer->add_option("--epsilon", eps)->required();
    add_out(transfer);
    transfer->callback([&] {
      pending_command = "propa-scaled transfer";
      pending_args = {{"source", src}, {"target", tgt},       {"map", name},    {"witness", witness},
                      {"base", base},  {"queried", queried}, {"epsilon", eps}};
    });
  }

  // coarse
  {
    auto* coarse = app.add_subcommand("coarse", "entourage-side operations");
    coarse->require_subcommand(1);
    static std::string path, witness, direction;

    auto* convert = coarse->add_subcommand("convert", "entourage picture of a space, with round trip");
    convert->add_option("--space", path)->required();
    add_out(convert);
    convert->callback([&] {
      pending_command = "coarse convert";
      pending_args = {{"space", path}};
    });

    auto* verify = coarse->add_subcommand("verify-sako", "verify an entourage-side witness");
    verify->add_option("--space", path)->required();
    verify->add_option("--witness", witness)->required();
    add_out(verify);
    verify->callback([&] {
      pending_command = "coarse verify-sako";
      pending_args = {{"space", path}, {"witness", witness}};
    });

    auto* cw = coarse->add_subcommand("convert-witness", "convert a witness between the two pictures");
    cw->add_option("--space", path)->required();
    cw->add_option("--witness", witness)->required();
    cw->add_option("--direction", direction, "to-entourage | to-star")->required();
    add_out(cw);
    cw->callback([&] {
      pending_command = "coarse convert-witness";
      pending_args = {{"space", path}, {"witness", witness}, {"direction", direction}};
    });
  }

  // fixtures generate
  {
    auto* fixtures = app.add_subcommand("fixtures", "deterministic fixture documents");
    fixtures->require_subcommand(1);
    auto* gen = fixtures->add_subcommand("generate", "emit a fixture space document");
    static std::string kind, sizes;
    static std::size_t n = 5, side = 5, dim = 1, blocks = 1;
    gen->add_option("kind", kind, "path | components | grid | product")->required();
    gen->add_option("--n", n, "points of a path");
    gen->add_option("--sizes", sizes, "comma separated group sizes");
    gen->add_option("--side", side, "grid or product side");
    gen->add_option("--dim", dim, "grid dimension");
    gen->add_option("--blocks", blocks, "product blocks");
    add_out(gen);
    gen->callback([&] {
      pending_command = "fixtures generate";
      pending_args = {{"kind", kind}};
      if (kind == "path") pending_args["n"] = n;
      if (kind == "grid") {
        pending_args["side"] = side;
        pending_args["dim"] = dim;
      }
      if (kind == "product") {
        pending_args["side"] = side;
        pending_args["blocks"] = blocks;
      }
      if (kind == "components") {
        json arr = json::array();
        std::size_t start = 0;
        while (start <= sizes.size() && !sizes.empty()) {
          auto comma = sizes.find(',', start);
          auto token = sizes.substr(start, comma == std::string::npos ? std::string::npos
                                                                      : comma - start);
          if (!token.empty()) arr.push_back(std::stoull(token));
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
        pending_args["sizes"] = std::move(arr);
      }
    });
  }

  // verify (certificate re-run)
  static std::string cert_path;
  {
    auto* verify = app.add_subcommand("verify", "re-run a certificate and compare verdicts");
    verify->add_option("certificate", cert_path, "certificate file")->required();
    add_out(verify);
    verify->callback([&] { pending_command = "verify"; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitTrue : kExitError;
  }

  std::optional<std::string> out_path;
  if (!out.empty()) out_path = out;

  try {
    if (pending_command == "verify") {
      return cmd_verify_certificate(cert_path, out_path);
    }
    if (pending_command == "fixtures generate") {
      std::string text = generate_fixture(pending_args);
      if (out_path) {
        write_text_file(*out_path, text);
      } else {
        std::cout << text;
      }
      return kExitTrue;
    }
    DocumentStore store;
    return run_command(pending_command, pending_args, store, out_path);
  } catch (const OracleLimitError& e) {
    std::cerr << "oracle-limit: " << e.what() << "\n";
    return kExitError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitError;
  }
}
