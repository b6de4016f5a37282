#include "dam/service/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <csignal>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>

#include "dam/datagen/generator.hpp"
#include "dam/datagen/split.hpp"
#include "dam/errors.hpp"
#include "dam/service/checkpoint.hpp"
#include "dam/service/config_file.hpp"
#include "dam/service/http_server.hpp"
#include "dam/service/inference.hpp"
#include "dam/service/pipeline.hpp"
#include "dam/text/dataset_io.hpp"

namespace dam::service {

using nlohmann::json;

namespace {

// Knobs may come from --config or from flags; flags win. Flag names are the
// keys with '_' spelled '-'.
const char* const kGenKnobs[] = {"seed", "records", "noise_rate"};
const char* const kTrainKnobs[] = {
    "seed",          "task",          "pooling",      "wide",          "model",
    "multiclass_loss", "learning_rate", "batch_size", "max_epochs",    "patience",
    "threads",       "embedding_dim", "model_dim",    "attention_dim", "head_hidden",
    "mlp_hidden",    "max_length",    "min_frequency", "section_markers", "val_fraction"};

std::string flag_name(const std::string& key) {
  std::string s = "--" + key;
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

class Knobs {
 public:
  void attach(CLI::App* app, std::span<const char* const> keys) {
    for (const char* k : keys) {
      options_.emplace_back(k, app->add_option(flag_name(k), raw_[k]));
    }
    app->add_option("--config", config_path_, "key=value config file");
  }

  // Config file first, then any flag given on the command line.
  ConfigMap resolve() const {
    ConfigMap out;
    if (!config_path_.empty()) out = read_config_file(config_path_);
    std::set<std::string> known;
    for (const auto& [k, opt] : options_) known.insert(k);
    for (const auto& [k, v] : out) {
      if (!known.count(k)) throw ArgumentError("unknown config key '" + k + "'");
    }
    for (const auto& [k, opt] : options_) {
      if (opt->count() > 0) out[k] = raw_.at(k);
    }
    return out;
  }

 private:
  std::map<std::string, std::string> raw_;
  std::vector<std::pair<std::string, CLI::Option*>> options_;
  std::string config_path_;
};

template <typename T>
T parse_number(const ConfigMap& m, const std::string& key, T fallback) {
  auto it = m.find(key);
  if (it == m.end()) return fallback;
  try {
    std::size_t used = 0;
    T v;
    if constexpr (std::is_floating_point_v<T>) {
      v = static_cast<T>(std::stod(it->second, &used));
    } else {
      if (!it->second.empty() && it->second[0] == '-') throw std::invalid_argument("negative");
      v = static_cast<T>(std::stoull(it->second, &used));
    }
    if (used != it->second.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ArgumentError("invalid value for " + key + ": '" + it->second + "'");
  }
}

bool parse_switch(const ConfigMap& m, const std::string& key, bool fallback) {
  auto it = m.find(key);
  if (it == m.end()) return fallback;
  const auto& v = it->second;
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ArgumentError("invalid value for " + key + ": '" + v + "' (expected on/off)");
}

PipelineOptions pipeline_options(const ConfigMap& m) {
  PipelineOptions o;
  auto& c = o.model;
  if (auto it = m.find("model"); it != m.end()) c.kind = model::parse_model_kind(it->second);
  if (auto it = m.find("task"); it != m.end()) c.task = model::parse_task(it->second);
  if (auto it = m.find("pooling"); it != m.end()) c.pooling = model::parse_pooling(it->second);
  if (auto it = m.find("multiclass_loss"); it != m.end()) {
    c.multiclass_loss = model::parse_multiclass_loss(it->second);
  }
  c.wide = parse_switch(m, "wide", c.wide);
  c.embedding_dim = parse_number(m, "embedding_dim", c.embedding_dim);
  c.model_dim = parse_number(m, "model_dim", c.model_dim);
  c.attention_dim = parse_number(m, "attention_dim", c.attention_dim);
  c.head_hidden = parse_number(m, "head_hidden", c.head_hidden);
  c.mlp_hidden = parse_number(m, "mlp_hidden", c.mlp_hidden);
  auto& t = o.train;
  t.seed = parse_number(m, "seed", t.seed);
  t.learning_rate = parse_number(m, "learning_rate", t.learning_rate);
  t.batch_size = parse_number(m, "batch_size", t.batch_size);
  t.max_epochs = parse_number(m, "max_epochs", t.max_epochs);
  t.patience = parse_number(m, "patience", t.patience);
  t.threads = parse_number(m, "threads", t.threads);
  o.max_length = parse_number(m, "max_length", o.max_length);
  o.min_frequency = parse_number(m, "min_frequency", o.min_frequency);
  o.note_format.section_markers = parse_switch(m, "section_markers", true);
  return o;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write '" + path + "'");
  return f;
}

// Writes to `path`, or to `fallback` when the path is empty.
void with_output(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  auto f = open_out(path);
  fn(f);
  if (!f) throw IoError("failed writing '" + path + "'");
}

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw ArgumentError(std::string("--") + what + " is required");
  if (!std::filesystem::exists(path)) {
    throw IoError(std::string(what) + " file '" + path + "' does not exist");
  }
}

void print_error(std::ostream& err, const std::string& code, const std::string& message) {
  err << json{{"error", {{"code", code}, {"message", message}}}}.dump() << '\n';
}

HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Triage resource prediction with attention over nurse notes", "dam"};
  app.require_subcommand(1);

  // gen-data
  auto* gen = app.add_subcommand("gen-data", "write a synthetic triage dataset");
  std::string gen_out;
  Knobs gen_knobs;
  gen->add_option("--out", gen_out, "output dataset path")->required();
  gen_knobs.attach(gen, kGenKnobs);

  // train
  auto* train = app.add_subcommand("train", "train a model and write a checkpoint");
  std::string train_data, train_val, train_out, train_history;
  Knobs train_knobs;
  train->add_option("--data", train_data, "training dataset")->required();
  train->add_option("--val", train_val, "validation dataset (default: hold out from --data)");
  train->add_option("--out", train_out, "checkpoint path")->required();
  train->add_option("--history", train_history, "history JSONL (default: <out>.history.jsonl)");
  train_knobs.attach(train, kTrainKnobs);

  // evaluate / predict / explain
  std::string ckpt_path, data_path, out_path, eval_task;
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--checkpoint", ckpt_path, "checkpoint path")->required();
    sub->add_option("--data", data_path, "dataset path")->required();
    sub->add_option("--out", out_path, "output path (default: stdout)");
  };
  auto* evaluate = app.add_subcommand("evaluate", "write a metrics report");
  add_io(evaluate);
  evaluate->add_option("--task", eval_task, "expected task {binary,multiclass}");
  auto* predict = app.add_subcommand("predict", "write one prediction per record");
  add_io(predict);
  auto* explain = app.add_subcommand("explain", "write one attention map per record");
  add_io(explain);

  // serve
  auto* serve = app.add_subcommand("serve", "start the HTTP service");
  std::string serve_ckpt, serve_host = "0.0.0.0", feedback_path = "feedback.jsonl";
  std::optional<int> serve_port;
  serve->add_option("--checkpoint", serve_ckpt, "checkpoint to load at startup");
  serve->add_option("--host", serve_host, "bind address");
  serve->add_option("--port", serve_port, std::string("port (default: $") + kPortEnvVar + " or " +
                                              std::to_string(kDefaultPort) + ")");
  serve->add_option("--feedback", feedback_path, "feedback store path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "bad_flag", e.what());
    return 2;
  }

  try {
    if (gen->parsed()) {
      const auto m = gen_knobs.resolve();
      auto cfg = datagen::default_gen_config();
      cfg.seed = parse_number(m, "seed", cfg.seed);
      cfg.record_count = parse_number(m, "records", cfg.record_count);
      cfg.noise_rate = parse_number(m, "noise_rate", cfg.noise_rate);
      text::write_dataset(gen_out, datagen::generate_corpus(cfg));
      out << json{{"written", gen_out}, {"records", cfg.record_count}}.dump() << '\n';
      return 0;
    }

    if (train->parsed()) {
      const auto m = train_knobs.resolve();
      const auto options = pipeline_options(m);
      require_file(train_data, "data");
      auto records = text::read_dataset(train_data);
      std::vector<text::PatientRecord> val;
      if (!train_val.empty()) {
        require_file(train_val, "val");
        val = text::read_dataset(train_val);
      } else {
        const double f = parse_number(m, "val_fraction", 0.1);
        if (!(f > 0.0 && f < 1.0)) throw ArgumentError("val_fraction must be in (0, 1)");
        auto parts = datagen::split(records, {1.0 - f, f, 0.0}, options.train.seed);
        records = std::move(parts.train);
        val = std::move(parts.validation);
      }
      if (train_history.empty()) train_history = train_out + ".history.jsonl";
      auto history = open_out(train_history);
      auto result = train_pipeline(options, records, val, [&](const training::EpochRecord& e) {
        history << epoch_to_json(e).dump() << '\n';
        history.flush();
      });
      save_checkpoint(result.checkpoint, train_out);
      out << json{{"checkpoint", train_out},
                  {"history", train_history},
                  {"best_epoch", result.best_epoch},
                  {"epochs", result.history.size()},
                  {"model_version", model_version(result.checkpoint)}}
                 .dump()
          << '\n';
      return 0;
    }

    if (evaluate->parsed() || predict->parsed() || explain->parsed()) {
      require_file(ckpt_path, "checkpoint");
      require_file(data_path, "data");
      const auto ckpt = load_checkpoint(ckpt_path);
      if (!eval_task.empty()) require_task(ckpt, model::parse_task(eval_task));
      const auto records = text::read_dataset(data_path);
      const auto& config = ckpt.model.config;
      if (evaluate->parsed()) {
        const auto report = evaluate_checkpoint(ckpt, records);
        with_output(out_path, out,
                    [&](std::ostream& o) { o << metrics_to_json(report).dump() << '\n'; });
        return 0;
      }
      if (explain->parsed()) require_explainable(config);
      with_output(out_path, out, [&](std::ostream& o) {
        for (const auto& r : records) {
          const auto p = predict_record(ckpt, r);
          o << (explain->parsed() ? explanation_json(p, config) : prediction_json(p, config)).dump()
            << '\n';
        }
      });
      return 0;
    }

    if (serve->parsed()) {
      InferenceService service(feedback_path);
      if (!serve_ckpt.empty()) {
        require_file(serve_ckpt, "checkpoint");
        service.load_file(serve_ckpt);
      }
      const int port = resolve_port(serve_port);
      HttpServer server(service);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      out << json{{"listening", serve_host}, {"port", port}}.dump() << std::endl;
      const bool ok = server.listen(serve_host, port);
      g_server = nullptr;
      if (!ok) throw IoError("cannot listen on " + serve_host + ":" + std::to_string(port));
      return 0;
    }
  } catch (const Error& e) {
    print_error(err, e.code(), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error(err, "internal_error", e.what());
    return 1;
  }
  return 1;
}

}  // namespace dam::service
