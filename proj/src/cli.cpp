#include "prefsom/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "prefsom/dataset.hpp"
#include "prefsom/error.hpp"
#include "prefsom/global_pref.hpp"
#include "prefsom/inclusion_checker.hpp"
#include "prefsom/revision.hpp"
#include "prefsom/semantic_model.hpp"
#include "prefsom/serialize.hpp"
#include "prefsom/som.hpp"

namespace prefsom::cli {
namespace fs = std::filesystem;

namespace {

struct GridOptions {
  std::size_t rows = 6;
  std::size_t cols = 6;
  std::uint64_t seed = 42;
};

struct Options {
  std::string data;
  std::string map;
  std::string model;
  std::string probes;
  std::string out;
  std::string query;
  GridOptions grid;
  TrainConfig train;
  std::size_t depth = 3;
  bool no_shuffle = false;
};

void add_grid_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--rows", o.grid.rows, "Map rows")->capture_default_str();
  cmd->add_option("--cols", o.grid.cols, "Map columns")->capture_default_str();
  cmd->add_option("--seed", o.grid.seed, "Seed for initialization and shuffling")->capture_default_str();
  cmd->add_option("--lr-start", o.train.lr_start, "Initial learning rate")->capture_default_str();
  cmd->add_option("--lr-end", o.train.lr_end, "Final learning rate")->capture_default_str();
  cmd->add_option("--radius-start", o.train.radius_start, "Initial neighborhood radius")->capture_default_str();
  cmd->add_option("--radius-end", o.train.radius_end, "Final neighborhood radius")->capture_default_str();
}

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

SomMap initial_map_for(const Dataset& data, const GridOptions& grid) {
  const auto ranges = feature_ranges(data.rows);
  return init_map(grid.rows, grid.cols, data.input_dim(), grid.seed, ranges);
}

std::string status_line(const SemanticModel& model, const CheckReport& r) {
  std::ostringstream s;
  s << to_string(r.inclusion) << ": " << to_string(r.status) << " (" << to_string(r.method);
  if (r.plausibility) s << ", plausibility " << format_double(*r.plausibility);
  if (r.exact_holds) s << ", exact set inclusion " << (*r.exact_holds ? "holds" : "fails");
  s << ")";
  if (!r.witnesses.empty()) {
    s << " counterexamples:";
    for (std::size_t i = 0; i < r.witnesses.size() && i < 5; ++i) s << ' ' << model.element(r.witnesses[i]).id;
    if (r.witnesses.size() > 5) s << " ...";
  }
  return s.str();
}

int cmd_train(const Options& o, std::ostream& out) {
  TrainConfig cfg = o.train;
  cfg.seed = o.grid.seed;
  cfg.shuffle = !o.no_shuffle;
  cfg.validate();
  const Dataset data = read_dataset(o.data);
  SomMap map = initial_map_for(data, o.grid);
  const double initial_qe = quantization_error(map, data.rows);
  TrainResult result = train(std::move(map), data.rows, cfg);

  const fs::path dir = prepare_out_dir(o.out);
  write_text_file(dir / "map.json", to_json(result.map).dump(2) + "\n");
  std::ostringstream qe;
  qe << "epoch,quantization_error\n";
  for (std::size_t e = 0; e < result.qe_log.size(); ++e) {
    qe << e + 1 << ',' << format_double(result.qe_log[e]) << '\n';
  }
  write_text_file(dir / "qe.csv", qe.str());

  out << "trained " << o.grid.rows << "x" << o.grid.cols << " map on " << data.rows.size()
      << " stimuli for " << cfg.epochs << " epochs\n";
  out << "quantization error: " << format_double(initial_qe) << " -> "
      << format_double(result.qe_log.empty() ? initial_qe : result.qe_log.back()) << "\n";
  return kOk;
}

int cmd_extract(const Options& o, std::ostream& out, std::ostream& err) {
  const SomMap map = read_map_file(o.map);
  const Dataset data = read_dataset(o.data);
  if (data.input_dim() != map.input_dim()) {
    throw InputError("data has " + std::to_string(data.input_dim()) + " features, map expects " +
                     std::to_string(map.input_dim()));
  }
  std::vector<FeatureVector> probes;
  if (!o.probes.empty()) probes = read_probes(o.probes, map.input_dim());

  const SemanticModel model = build_semantic_model(map, data.rows, data.categories(), probes);
  const KbExtraction kb = extract_kb(model);

  const fs::path dir = prepare_out_dir(o.out);
  write_text_file(dir / "model.json", to_json(model).dump(2) + "\n");
  write_text_file(dir / "kb.txt", format_knowledge_base(model, kb));
  std::string lines;
  for (const CheckReport& r : kb.reports) lines += to_json(model, r).dump() + "\n";
  for (const CheckReport& r : kb.emptiness) lines += to_json(model, r).dump() + "\n";
  write_text_file(dir / "reports.jsonl", lines);

  out << std::left << std::setw(11) << "kind" << std::setw(34) << "inclusion" << std::setw(9)
      << "status" << std::setw(22) << "plausibility" << "method\n";
  for (const CheckReport& r : kb.reports) {
    out << std::setw(11) << to_string(r.inclusion.kind) << std::setw(34) << to_string(r.inclusion)
        << std::setw(9) << to_string(r.status) << std::setw(22)
        << (r.plausibility ? format_double(*r.plausibility) : "-") << to_string(r.method) << '\n';
  }

  try {
    const Specificity spec = derive_specificity(model);
    write_text_file(dir / "specificity.json", to_json(model, spec).dump(2) + "\n");
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << "\n";
    return kSemantic;
  }
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  const Inclusion query = parse_inclusion(o.query);
  SemanticModel model = read_model_file(o.model);
  resolve(model, query.lhs);
  resolve(model, query.rhs);
  Specificity spec = derive_specificity(model);
  const CwmModel cwm = build_cwm(std::move(model), std::move(spec));
  const CheckReport r = check_query(cwm, query);
  out << to_json(cwm.base, r).dump() << "\n";
  out << status_line(cwm.base, r) << "\n";
  return r.status == CheckStatus::fails ? kNotHolds : kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  SemanticModel model = read_model_file(o.model);

  PropertyCheck tables{"model_tables"};
  ++tables.instances;
  for (std::string& v : table_violations(model)) tables.add_violation({std::move(v), {}});

  PropertyCheck specificity{"specificity"};
  ++specificity.instances;
  Specificity spec(model.category_count(), {});
  try {
    spec = derive_specificity(model);
  } catch (const SemanticError& e) {
    specificity.add_violation({e.what(), {}});
  }

  const CwmModel cwm = assemble_cwm(std::move(model), std::move(spec));
  PropertyReport order = verify_preferential(cwm);
  order.checks.insert(order.checks.begin(), {std::move(tables), std::move(specificity)});
  const auto pool = concept_pool(cwm.base, o.depth);
  const PropertyReport klm = verify_klm(cwm, pool);

  const bool ok = order.ok() && klm.ok();
  Json report = {{"ok", ok},
                 {"domain_size", cwm.base.size()},
                 {"categories", cwm.base.category_names()},
                 {"concept_pool_size", pool.size()},
                 {"order", to_json(order)},
                 {"klm", to_json(klm)}};
  if (!o.out.empty()) {
    write_text_file(prepare_out_dir(o.out) / "verify.json", report.dump(2) + "\n");
  }
  out << report.dump(2) << "\n";
  return ok ? kOk : kSemantic;
}

int cmd_trace(const Options& o, std::ostream& out) {
  RevisionConfig cfg{o.train.lr_start, o.train.lr_end, o.train.radius_start, o.train.radius_end};
  cfg.validate();
  const Dataset data = read_dataset(o.data);
  RevisionState state(initial_map_for(data, o.grid), data.categories(), cfg, data.rows.size());
  std::vector<RevisionStep> trace;
  for (const Stimulus& s : data.rows) trace.push_back(state.revise(s));

  const fs::path dir = prepare_out_dir(o.out);
  std::string lines;
  for (const RevisionStep& step : trace) lines += to_json(step).dump() + "\n";
  write_text_file(dir / "trace.jsonl", lines);
  write_text_file(dir / "map.json", to_json(state.map()).dump(2) + "\n");
  out << "revision trace of " << trace.size() << " steps; final knowledge base has "
      << trace.back().kb_after.size() << " inclusions\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Self-organising maps as concept-wise multipreference models"};
  app.name("prefsom");
  app.require_subcommand(1);

  auto* train_cmd = app.add_subcommand("train", "Train a map on labeled CSV data");
  train_cmd->add_option("--data", o.data, "Labeled CSV (last column is the label)")->required();
  train_cmd->add_option("--out", o.out, "Output directory")->required();
  train_cmd->add_option("--epochs", o.train.epochs, "Passes over the data")->capture_default_str();
  train_cmd->add_flag("--no-shuffle", o.no_shuffle, "Present stimuli in file order");
  add_grid_flags(train_cmd, o);

  auto* extract_cmd = app.add_subcommand("extract", "Build the model and extract its knowledge base");
  extract_cmd->add_option("--map", o.map, "Map snapshot (map.json)")->required();
  extract_cmd->add_option("--data", o.data, "Labeled CSV the map was trained on")->required();
  extract_cmd->add_option("--probes", o.probes, "Extra unlabeled stimuli (CSV)");
  extract_cmd->add_option("--out", o.out, "Output directory")->required();

  auto* check_cmd = app.add_subcommand("check", "Model-check one inclusion");
  check_cmd->add_option("--model", o.model, "Model snapshot (model.json)")->required();
  check_cmd->add_option("--query", o.query, "Inclusion, e.g. \"T(A & B) <= C\"")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Check order properties and KLM postulates");
  verify_cmd->add_option("--model", o.model, "Model snapshot (model.json)")->required();
  verify_cmd->add_option("--depth", o.depth, "Max names per pooled conjunction")->capture_default_str();
  verify_cmd->add_option("--out", o.out, "Also write verify.json into this directory");

  auto* trace_cmd = app.add_subcommand("trace", "Record learning as a revision trace");
  trace_cmd->add_option("--data", o.data, "Labeled CSV, presented once in file order")->required();
  trace_cmd->add_option("--out", o.out, "Output directory")->required();
  add_grid_flags(trace_cmd, o);

  std::vector<const char*> argv{"prefsom"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (train_cmd->parsed()) return cmd_train(o, out);
    if (extract_cmd->parsed()) return cmd_extract(o, out, err);
    if (check_cmd->parsed()) return cmd_check(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (trace_cmd->parsed()) return cmd_trace(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << "\n";
    return kSemantic;
  } catch (const ConsistencyError& e) {
    err << "internal error: " << e.what() << "\n";
    return kSemantic;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kValidation;
}

}  // namespace prefsom::cli
