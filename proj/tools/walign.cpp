// walign: command-line front end for training aligners, extracting,
// symmetrizing and scoring alignments, projecting tags and running the
// subset / length / bootstrap analyses.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "walign/walign.hpp"

namespace {

using namespace walign;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << content;
  if (!out) throw DataError("failed writing '" + path + "'");
}

// `path` or stdout when empty.
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

// Prefixes every error with the file it came from.
template <class Fn>
auto with_file(const std::string& path, Fn&& fn) {
  try {
    return fn(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

ParallelCorpus load_bitext(const std::string& path) {
  return with_file(path, [](const std::string& s) { return parse_bitext(s); });
}

AlignmentSet load_pharaoh(const std::string& path, const PharaohOptions& opts = {}) {
  return with_file(path, [&](const std::string& s) { return parse_pharaoh(s, opts); });
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto v = text::parse_index(item);
    if (!v) throw CLI::ValidationError("--sizes", "'" + item + "' is not a non-negative integer");
    out.push_back(*v);
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// One-line `#` comment identifying the tool version, command, seed and a
// fingerprint of every resolved option value.
std::string provenance(const CLI::App& app, const CLI::App& cmd, std::uint64_t seed) {
  std::string path = cmd.get_name();
  for (const CLI::App* p = cmd.get_parent(); p && p->get_parent(); p = p->get_parent())
    path = p->get_name() + " " + path;
  return std::string("# walign ") + kVersion + " cmd=" + path + " seed=" + std::to_string(seed) +
         " config=" + hex64(text::fnv1a(app.config_to_str(true, false))) + "\n";
}

// Merges `key=value` lines from --config into argv. Values already given on
// the command line win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) {
      config_path = args[k + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(k), args.begin() + static_cast<std::ptrdiff_t>(k) + 2);
      break;
    }
    if (args[k].rfind("--config=", 0) == 0) {
      config_path = args[k].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(k));
      break;
    }
  }
  if (config_path.empty()) return args;
  std::ifstream in(config_path);
  if (!in) throw CLI::ValidationError("--config", "cannot open '" + config_path + "'");
  std::string line;
  std::vector<std::string> extra;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--config", "expected key=value, got '" + line + "'");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    bool given = false;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
    if (!given) extra.push_back(flag + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

struct TrainOpts {
  std::string model = "diag";
  int iters = 5;
  double alpha = 0.01;
  double p0 = 0.08;
  double lambda = 4.0;
  bool no_lambda_search = false;

  ibm::TrainConfig config(std::uint64_t seed, unsigned workers) const {
    ibm::TrainConfig c;
    c.kind = ibm::parse_model_kind(model);
    c.iterations = iters;
    c.alpha = alpha;
    c.p0 = p0;
    c.initial_lambda = lambda;
    c.lambda_search = !no_lambda_search;
    c.seed = seed;
    c.workers = workers;
    return c;
  }
};

void add_train_options(CLI::App* cmd, TrainOpts& o) {
  cmd->add_option("--model", o.model, "Model kind: ibm1 or diag (diagonal-tension Model 2)")
      ->check(CLI::IsMember({"ibm1", "diag"}))
      ->capture_default_str();
  cmd->add_option("--iters", o.iters, "EM iterations (>= 1)")->check(CLI::Range(1, 1000000))->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Add-alpha smoothing of t(f|e) (>= 0)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--p0", o.p0, "NULL link probability in [0, 1)")->check(CLI::Range(0.0, 0.999999))->capture_default_str();
  cmd->add_option("--lambda", o.lambda, "Initial diagonal tension in [0, 20]")
      ->check(CLI::Range(0.0, 20.0))
      ->capture_default_str();
  cmd->add_flag("--no-lambda-search", o.no_lambda_search,
                "Keep lambda fixed instead of re-fitting it by golden-section search on [0, 20] after each E-step");
}

ibm::Direction parse_direction(const std::string& d) {
  return d == "rev" ? ibm::Direction::Reverse : ibm::Direction::Forward;
}

std::vector<std::string> directions(const std::string& d) {
  if (d == "both") return {"fwd", "rev"};
  return {d};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"walign: word alignment toolkit for low-resource language pairs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.footer("Any subcommand accepts --config FILE with key=value lines (e.g. iters=10); command-line flags win.");

  std::uint64_t seed = 0;
  unsigned workers = 1;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Random seed, recorded in report headers")->capture_default_str();
    cmd->add_option("--workers", workers, "Worker threads; never changes outputs")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
  };

  // train
  auto* train = app.add_subcommand("train", "Train IBM Model 1 or the diagonal aligner and write model file(s)");
  std::string train_bitext, train_out, train_direction = "both";
  TrainOpts train_opts;
  train->add_option("bitext", train_bitext, "Bitext: 'src ||| tgt' per line")->required()->check(CLI::ExistingFile);
  add_train_options(train, train_opts);
  train->add_option("--direction", train_direction, "fwd, rev or both (both writes OUT.fwd and OUT.rev)")
      ->check(CLI::IsMember({"fwd", "rev", "both"}))
      ->capture_default_str();
  train->add_option("--out", train_out, "Model path (prefix when --direction both)")->required();
  add_common(train);

  // align
  auto* align = app.add_subcommand("align", "Viterbi-decode a bitext with trained model(s) into Pharaoh links");
  std::string align_bitext, align_model, align_out, align_direction = "fwd";
  align->add_option("bitext", align_bitext, "Bitext to align")->required()->check(CLI::ExistingFile);
  align->add_option("--model", align_model, "Model file (prefix of MODEL.fwd/MODEL.rev when --direction both)")
      ->required();
  align->add_option("--direction", align_direction, "fwd, rev or both (both writes OUT.fwd and OUT.rev)")
      ->check(CLI::IsMember({"fwd", "rev", "both"}))
      ->capture_default_str();
  align->add_option("--out", align_out, "Output path; stdout when omitted (required for both)");
  add_common(align);

  // symmetrize
  auto* sym = app.add_subcommand("symmetrize", "Combine forward and reverse alignments");
  std::string sym_fwd, sym_rev, sym_heuristic = "union", sym_bitext, sym_out;
  sym->add_option("forward", sym_fwd, "Forward alignment (Pharaoh)")->required()->check(CLI::ExistingFile);
  sym->add_option("reverse", sym_rev, "Reverse alignment (Pharaoh, source-target orientation)")
      ->required()
      ->check(CLI::ExistingFile);
  sym->add_option("--heuristic", sym_heuristic,
                  "forward, reverse, union, intersection, grow-diag or grow-diag-final")
      ->check(CLI::IsMember({"forward", "reverse", "union", "intersection", "grow-diag", "grow-diag-final"}))
      ->capture_default_str();
  sym->add_option("--bitext", sym_bitext, "Bitext supplying sentence lengths for bounds checks")
      ->check(CLI::ExistingFile);
  sym->add_option("--out", sym_out, "Output path; stdout when omitted");
  add_common(sym);

  // embed-align
  auto* emb = app.add_subcommand("embed-align", "Extract alignments from exported subword embeddings (EMB1)");
  std::string emb_file, emb_out, emb_aggregation = "any";
  embed::ExtractorConfig emb_cfg;
  std::optional<int> emb_layer;
  emb->add_option("embeddings", emb_file, "EMB1 file")->required()->check(CLI::ExistingFile);
  emb->add_option("--threshold", emb_cfg.threshold, "Probability threshold c in (0, 1)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  emb->add_option("--temperature", emb_cfg.temperature, "Softmax temperature tau > 0")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  emb->add_option("--aggregation", emb_aggregation, "Subword-to-word rule: any or all")
      ->check(CLI::IsMember({"any", "all"}))
      ->capture_default_str();
  emb->add_option("--layer", emb_layer, "Require embeddings from this encoder layer");
  emb->add_option("--out", emb_out, "Output path; stdout when omitted");
  add_common(emb);

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Score predicted alignments against gold (AER, P, R, F)");
  std::string eval_gold, eval_pred, eval_json, eval_table, eval_out;
  bool eval_one_based = false;
  eval->add_option("--gold", eval_gold, "Gold alignment (Pharaoh; i?j marks possible links)")
      ->check(CLI::ExistingFile);
  eval->add_option("--pred", eval_pred, "Predicted alignment (Pharaoh)")->check(CLI::ExistingFile);
  eval->add_flag("--one-based", eval_one_based, "Gold and prediction use 1-based indices");
  eval->add_option("--json", eval_json, "Also write scores and raw counts as JSON");
  eval->add_option("--table", eval_table,
                   "TSV manifest 'method<TAB>language<TAB>gold<TAB>pred' per line; prints an AER table")
      ->check(CLI::ExistingFile);
  eval->add_option("--out", eval_out, "Output path; stdout when omitted");
  add_common(eval);

  // project
  auto* proj = app.add_subcommand("project", "Project POS/NER tags across alignments");
  std::string proj_tags, proj_alignment, proj_bitext, proj_task = "pos", proj_out, proj_stats, proj_priority;
  std::optional<std::string> proj_fallback;
  projection::ProjectionConfig proj_cfg;
  proj->add_option("--src-tags", proj_tags, "Source-side tags (CoNLL token<TAB>tag)")
      ->required()
      ->check(CLI::ExistingFile);
  proj->add_option("--alignment", proj_alignment, "Alignment (Pharaoh)")->required()->check(CLI::ExistingFile);
  proj->add_option("--bitext", proj_bitext, "Bitext the alignment refers to")->required()->check(CLI::ExistingFile);
  proj->add_option("--task", proj_task, "pos or ner")->check(CLI::IsMember({"pos", "ner"}))->capture_default_str();
  proj->add_option("--beta", proj_cfg.type_threshold, "Type threshold: keep tags with count >= beta * max")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  proj->add_option("--min-coverage", proj_cfg.min_coverage, "Drop sentences with aligned-token fraction below this")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  proj->add_option("--fallback", proj_fallback, "Tag for tokens without votes (default NOUN for pos, O for ner)");
  proj->add_option("--priority", proj_priority,
                   "Comma-separated tie-break order (default: descending source frequency, then lexicographic)");
  proj->add_option("--out", proj_out, "Projected CoNLL; stdout when omitted");
  proj->add_option("--stats", proj_stats, "Coverage summary path; standard error when omitted");
  add_common(proj);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Subset, length and bootstrap analyses");
  analyze->require_subcommand(1);

  std::string an_train, an_eval, an_gold, an_methods = "diag", an_heuristic = "union", an_out;
  std::string an_sizes = "50,100,200,400,800,1600,3200,6400,12800,25600";
  std::size_t an_group = 7508;
  TrainOpts an_train_opts;
  auto add_experiment = [&](CLI::App* cmd) {
    cmd->add_option("--train", an_train, "Training bitext to subsample or partition")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--eval", an_eval, "Evaluation bitext (appended to each training run)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--gold", an_gold, "Gold alignment of the evaluation bitext")->required()->check(CLI::ExistingFile);
    cmd->add_option("--methods", an_methods, "Comma-separated statistical methods: ibm1, diag")->capture_default_str();
    cmd->add_option("--heuristic", an_heuristic, "Symmetrization heuristic")
        ->check(CLI::IsMember({"forward", "reverse", "union", "intersection", "grow-diag", "grow-diag-final"}))
        ->capture_default_str();
    cmd->add_option("--iters", an_train_opts.iters, "EM iterations (>= 1)")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    cmd->add_option("--alpha", an_train_opts.alpha, "Add-alpha smoothing")->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd->add_option("--p0", an_train_opts.p0, "NULL link probability")->check(CLI::Range(0.0, 0.999999))->capture_default_str();
    cmd->add_option("--lambda", an_train_opts.lambda, "Initial diagonal tension")->check(CLI::Range(0.0, 20.0))->capture_default_str();
    cmd->add_option("--out", an_out, "Report path; stdout when omitted");
    add_common(cmd);
  };
  auto* subset = analyze->add_subcommand("subset", "AER against nested random subsamples of the training data");
  add_experiment(subset);
  subset->add_option("--sizes", an_sizes, "Strictly ascending comma-separated subset sizes")->capture_default_str();
  auto* length = analyze->add_subcommand("length", "AER per group of pairs sorted by character length");
  add_experiment(length);
  length->add_option("--group-size", an_group, "Pairs per length group")->check(CLI::PositiveNumber)->capture_default_str();

  auto* boot = analyze->add_subcommand("bootstrap", "AER distribution over random evaluation subsets");
  std::string boot_gold, boot_pred, boot_name = "pred", boot_out;
  std::size_t boot_samples = 100, boot_size = 50;
  bool boot_one_based = false;
  boot->add_option("--gold", boot_gold, "Gold alignment")->required()->check(CLI::ExistingFile);
  boot->add_option("--pred", boot_pred, "Predicted alignment")->required()->check(CLI::ExistingFile);
  boot->add_option("--samples", boot_samples, "Number of subsets")->check(CLI::PositiveNumber)->capture_default_str();
  boot->add_option("--size", boot_size, "Pairs per subset, drawn without replacement")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  boot->add_option("--name", boot_name, "Method label in the report")->capture_default_str();
  boot->add_flag("--one-based", boot_one_based, "Inputs use 1-based indices");
  boot->add_option("--out", boot_out, "Report path; stdout when omitted");
  add_common(boot);

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*train) {
      std::cerr << provenance(app, *train, seed);
      const auto corpus = load_bitext(train_bitext);
      const auto cfg = train_opts.config(seed, workers);
      for (const auto& d : directions(train_direction)) {
        const auto res = ibm::train(corpus, parse_direction(d), cfg);
        const std::string path = train_direction == "both" ? train_out + "." + d : train_out;
        write_file(path, ibm::serialize_model(res.model()));
        std::cerr << "# " << d << " lambda=" << res.params.lambda << " ll=";
        for (std::size_t k = 0; k < res.ll_trace.size(); ++k) std::cerr << (k ? "," : "") << res.ll_trace[k];
        std::cerr << "\n";
      }
    } else if (*align) {
      std::cerr << provenance(app, *align, seed);
      if (align_direction == "both" && align_out.empty())
        throw CLI::RequiredError("--out (required with --direction both)");
      const auto corpus = load_bitext(align_bitext);
      for (const auto& d : directions(align_direction)) {
        const std::string model_path = align_direction == "both" ? align_model + "." + d : align_model;
        const auto model = with_file(model_path, [](const std::string& s) { return ibm::parse_model(s); });
        const auto links = ibm::decode(corpus, model, parse_direction(d), workers);
        emit(align_direction == "both" ? align_out + "." + d : align_out, serialize_pharaoh(links));
      }
    } else if (*sym) {
      std::cerr << provenance(app, *sym, seed);
      const auto h = parse_heuristic(sym_heuristic);
      AlignmentSet out;
      if (!sym_bitext.empty()) {
        const auto corpus = load_bitext(sym_bitext);
        PharaohOptions opts;
        opts.corpus = &corpus;
        out = symmetrize(load_pharaoh(sym_fwd, opts), load_pharaoh(sym_rev, opts), h, corpus);
      } else {
        out = symmetrize(load_pharaoh(sym_fwd), load_pharaoh(sym_rev), h);
      }
      emit(sym_out, serialize_pharaoh(out));
    } else if (*emb) {
      std::cerr << provenance(app, *emb, seed);
      emb_cfg.layer = emb_layer;
      emb_cfg.aggregation = emb_aggregation == "all" ? embed::Aggregation::All : embed::Aggregation::Any;
      emb_cfg.validate();
      const auto pairs = with_file(emb_file, [](const std::string& s) { return parse_embeddings(s); });
      const auto links = embed::align(pairs, emb_cfg, workers);
      // One line per pair id; ids missing from the file get empty lines.
      AlignmentSet by_id(pairs.empty() ? 0 : pairs.back().id + 1);
      for (std::size_t k = 0; k < pairs.size(); ++k) by_id[pairs[k].id] = links[k];
      emit(emb_out, serialize_pharaoh(by_id));
    } else if (*eval) {
      std::string report = provenance(app, *eval, seed);
      PharaohOptions opts;
      opts.one_based = eval_one_based;
      if (!eval_table.empty()) {
        ReportGrid grid;
        const auto manifest = read_file(eval_table);
        auto lines = text::split_lines(manifest);
        for (std::size_t k = 0; k < lines.size(); ++k) {
          if (lines[k].empty() || lines[k][0] == '#') continue;
          auto f = text::split_ws(lines[k]);
          if (f.size() != 4) throw ParseError(eval_table + ": expected 'method language gold pred'", k + 1);
          grid[std::string(f[0])][std::string(f[1])] =
              evaluate(load_pharaoh(std::string(f[3]), opts), load_pharaoh(std::string(f[2]), opts));
        }
        report += report_table(grid);
      } else {
        if (eval_gold.empty() || eval_pred.empty()) throw CLI::RequiredError("--gold and --pred (or --table)");
        const auto gold = load_pharaoh(eval_gold, opts);
        const auto pred = load_pharaoh(eval_pred, opts);
        const auto r = evaluate(pred, gold);
        report += "AER " + percent(r.aer) + "\n";
        report += "Precision " + percent(r.precision) + "\n";
        report += "Recall " + percent(r.recall) + "\n";
        report += "F " + percent(r.f_measure) + "\n";
        report += "Counts A=" + std::to_string(r.counts.predicted) + " S=" + std::to_string(r.counts.sure) +
                  " P=" + std::to_string(r.counts.possible) + " A&S=" + std::to_string(r.counts.hit_sure) +
                  " A&P=" + std::to_string(r.counts.hit_possible) + "\n";
        if (!eval_json.empty()) write_file(eval_json, to_json(r).dump(2) + "\n");
      }
      emit(eval_out, report);
    } else if (*proj) {
      const std::string header = provenance(app, *proj, seed);
      std::cerr << header;
      proj_cfg.task = proj_task == "ner" ? TagTask::NER : TagTask::POS;
      proj_cfg.fallback_tag = proj_fallback;
      proj_cfg.tag_priority = split_csv(proj_priority);
      const auto corpus = load_bitext(proj_bitext);
      ConllOptions copts;
      copts.task = proj_cfg.task;
      const auto tags = with_file(proj_tags, [&](const std::string& s) { return parse_conll(s, copts); });
      PharaohOptions popts;
      popts.corpus = &corpus;
      const auto alignment = load_pharaoh(proj_alignment, popts);
      if (tags.sentences.size() != corpus.size())
        throw DataError("source tags have " + std::to_string(tags.sentences.size()) + " sentences, bitext has " +
                        std::to_string(corpus.size()) + " pairs");
      std::vector<Sentence> targets;
      for (std::size_t k = 0; k < corpus.size(); ++k) {
        if (tags.sentences[k].tokens != corpus[k].src)
          throw DataError("sentence " + std::to_string(k) + ": tagged tokens differ from the bitext source side");
        targets.push_back(corpus[k].tgt);
      }
      const auto res = projection::project(tags, alignment, targets, proj_cfg);
      emit(proj_out, serialize_conll(res.corpus));
      std::string stats = header + "sentences_kept\t" + std::to_string(res.stats.sentences_kept) + "\n" +
                          "sentences_dropped\t" + std::to_string(res.stats.sentences_dropped) + "\n" +
                          "tokens\t" + std::to_string(res.stats.tokens) + "\n" + "aligned_tokens\t" +
                          std::to_string(res.stats.aligned_tokens) + "\n" + "token_coverage\t" +
                          text::format_fixed(res.stats.token_coverage(), 4) + "\n";
      if (proj_stats.empty())
        std::cerr << stats;
      else
        write_file(proj_stats, stats);
    } else if (*analyze) {
      if (*boot) {
        PharaohOptions opts;
        opts.one_based = boot_one_based;
        const auto gold = load_pharaoh(boot_gold, opts);
        const auto pred = load_pharaoh(boot_pred, opts);
        const auto s = analysis::bootstrap_aer(pred, gold, boot_samples, boot_size, seed);
        emit(boot_out, provenance(app, *boot, seed) + analysis::bootstrap_tsv(boot_name, s));
      } else {
        const auto train_corpus = load_bitext(an_train);
        const auto eval_corpus = load_bitext(an_eval);
        PharaohOptions opts;
        opts.corpus = &eval_corpus;
        const auto gold = load_pharaoh(an_gold, opts);
        const auto h = parse_heuristic(an_heuristic);
        std::vector<analysis::Method> methods;
        for (const auto& name : split_csv(an_methods)) {
          TrainOpts o = an_train_opts;
          o.model = name;
          methods.push_back(statistical_method(name, eval_corpus, o.config(seed, workers), h));
        }
        if (methods.empty()) throw CLI::ValidationError("--methods", "no methods given");
        if (*subset) {
          const auto rep = analysis::subset_analysis(train_corpus, gold, parse_sizes(an_sizes), methods, seed);
          emit(an_out, provenance(app, *subset, seed) + analysis::subset_tsv(rep));
        } else {
          const auto rep = analysis::length_analysis(train_corpus, gold, an_group, methods);
          emit(an_out, provenance(app, *length, seed) + analysis::length_tsv(rep));
        }
      }
    }
  } catch (const CLI::Error& e) {
    std::cerr << "walign: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "walign: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
