#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subword/bpe_apply.hpp"
#include "subword/bpe_learn.hpp"
#include "subword/core.hpp"
#include "subword/formats.hpp"
#include "subword/joint.hpp"
#include "subword/metrics.hpp"
#include "subword/ngram.hpp"
#include "subword/stats.hpp"
#include "subword/translit.hpp"
#include "subword/unicode.hpp"

namespace {

using namespace subword;

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "-" means the standard stream.
class InputFile {
 public:
  explicit InputFile(const std::string& path) : path_(path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_)
        throw UsageError("cannot open input file '" + path + "'");
    }
  }
  std::istream& stream() { return path_ == "-" ? std::cin : file_; }
  const std::string& name() const { return path_; }

 private:
  std::string path_;
  std::ifstream file_;
};

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) : path_(path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_)
        throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return path_ == "-" ? std::cout : file_; }

 private:
  std::string path_;
  std::ofstream file_;
};

std::vector<std::string> read_lines(const std::string& path) {
  InputFile in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in.stream(), line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

WordFrequencyTable load_table(const std::vector<std::string>& inputs, bool dict_input) {
  WordFrequencyTable table;
  for (const auto& path : inputs) {
    InputFile in(path);
    if (dict_input) {
      const WordFrequencyTable part = read_word_frequency_table(in.stream(), path);
      for (const auto& [word, count] : part.entries)
        table.entries[word] += count;
    } else {
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in.stream(), line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
          line.pop_back();
        if (!unicode::is_valid_utf8(line))
          throw FormatError(path + ":" + std::to_string(line_no) + ": invalid UTF-8 byte sequence");
        for (const auto& token : split_tokens(line))
          table.add(token);
      }
    }
  }
  return table;
}

MergeTable load_merges(const std::string& path) {
  InputFile in(path);
  return read_merge_table(in.stream(), path);
}

TransliterationTable load_translit(const std::string& path) {
  if (path.empty())
    return TransliterationTable::iso9();
  InputFile in(path);
  return TransliterationTable::parse(in.stream(), path);
}

std::string format_score(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

void print_unknown_report(const UnknownReport& report) {
  if (report.empty())
    return;
  std::cerr << "unknown symbols: " << report.counts.size() << " types, " << report.total()
            << " tokens\n";
  for (const auto& [symbol, count] : report.counts)
    std::cerr << "unknown: " << symbol << " " << count << "\n";
}

// ---- subcommands ----

struct LearnArgs {
  std::vector<std::string> inputs;
  std::string output;
  std::uint32_t merges = 0;
  std::uint64_t min_frequency = 2;
  bool dict_input = false;
};

int run_learn(const LearnArgs& args) {
  LearnConfig cfg;
  cfg.num_merges = args.merges;
  cfg.min_frequency = args.min_frequency;
  const WordFrequencyTable table = load_table(args.inputs, args.dict_input);
  if (table.empty())
    throw UsageError("input contains no tokens");
  const LearnResult learned = learn_bpe_indexed(table, cfg);
  if (learned.table.size() < args.merges)
    std::cerr << "early stop: no pair reaches min frequency " << args.min_frequency << " after "
              << learned.table.size() << " merges\n";
  OutputFile out(args.output);
  write_merge_table(learned.table, out.stream());
  return 0;
}

struct ApplyArgs {
  std::string merges;
  std::string input;
  std::string output;
  std::string vocabulary;
  std::uint64_t vocab_threshold = 0;
};

int run_apply(const ApplyArgs& args) {
  const BpeApplier applier(load_merges(args.merges));
  std::unique_ptr<SymbolVocabulary> vocab;
  if (!args.vocabulary.empty()) {
    InputFile in(args.vocabulary);
    vocab = std::make_unique<SymbolVocabulary>();
    vocab->counts = read_symbol_counts(in.stream(), args.vocabulary);
    vocab->threshold = args.vocab_threshold;
    for (auto it = vocab->counts.begin(); it != vocab->counts.end();) {
      if (it->second < vocab->threshold)
        it = vocab->counts.erase(it);
      else
        ++it;
    }
  }

  InputFile in(args.input);
  OutputFile out(args.output);
  UnknownReport unknown;

  struct CachedWord {
    std::string text;
    std::map<std::string, std::uint64_t> unknown;
  };
  std::unordered_map<std::string, CachedWord> cache;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in.stream(), line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (!unicode::is_valid_utf8(line))
      throw FormatError(args.input + ":" + std::to_string(line_no) + ": invalid UTF-8 byte sequence");
    std::string out_line;
    for (const auto& token : split_tokens(line)) {
      check_no_marker(token, line_no);
      auto it = cache.find(token);
      if (it == cache.end()) {
        CachedWord entry;
        SymbolSequence syms = applier.apply_merges(token);
        if (vocab) {
          SymbolSequence constrained;
          for (const auto& sym : syms) {
            SymbolSequence pieces = applier.split_to_known(sym, *vocab, &entry.unknown);
            constrained.insert(constrained.end(), pieces.begin(), pieces.end());
          }
          syms = std::move(constrained);
        }
        entry.text = join_units(serialize_segmentation(syms));
        it = cache.emplace(token, std::move(entry)).first;
      }
      if (!out_line.empty())
        out_line += ' ';
      out_line += it->second.text;
      for (const auto& [symbol, count] : it->second.unknown)
        unknown.counts[symbol] += count;
    }
    out.stream() << out_line << "\n";
  }
  print_unknown_report(unknown);
  return 0;
}

int run_revert(const std::string& input, const std::string& output) {
  InputFile in(input);
  OutputFile out(output);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in.stream(), line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (!unicode::is_valid_utf8(line))
      throw FormatError(input + ":" + std::to_string(line_no) + ": invalid UTF-8 byte sequence");
    try {
      out.stream() << revert_line(line) << "\n";
    } catch (const FormatError& e) {
      throw FormatError(input + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return 0;
}

struct NgramArgs {
  std::string input;
  std::string output;
  std::uint32_t n = 0;
  std::uint32_t shortlist = 0;
  std::string train;
};

int run_segment_ngrams(const NgramArgs& args) {
  NgramConfig cfg;
  cfg.n = args.n;
  if (args.shortlist > 0) {
    const std::string source = args.train.empty() ? args.input : args.train;
    InputFile in(source);
    const WordFrequencyTable table = build_word_frequency_table(in.stream());
    cfg.shortlist = make_shortlist(table, args.shortlist);
  }
  InputFile in(args.input);
  OutputFile out(args.output);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in.stream(), line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (!unicode::is_valid_utf8(line))
      throw FormatError(args.input + ":" + std::to_string(line_no) + ": invalid UTF-8 byte sequence");
    std::string out_line;
    for (const auto& token : split_tokens(line)) {
      check_no_marker(token, line_no);
      const auto units = serialize_segmentation(segment_ngrams(token, cfg));
      for (const auto& unit : units) {
        if (!out_line.empty())
          out_line += ' ';
        out_line += unit;
      }
    }
    out.stream() << out_line << "\n";
  }
  return 0;
}

struct JointArgs {
  std::string source;
  std::string target;
  std::string output;
  std::uint32_t merges = 0;
  std::uint64_t min_frequency = 2;
  std::string bridge;
  std::string table;
  bool dict_input = false;
};

int run_joint_learn(const JointArgs& args) {
  LearnConfig cfg;
  cfg.num_merges = args.merges;
  cfg.min_frequency = args.min_frequency;
  const WordFrequencyTable src = load_table({args.source}, args.dict_input);
  const WordFrequencyTable tgt = load_table({args.target}, args.dict_input);
  const TransliterationTable translit = load_translit(args.table);
  const Bridge bridge = args.bridge.empty() ? Bridge::None : Bridge::Iso9;
  const JointLearnResult result = learn_joint(src, tgt, cfg, bridge, translit);
  if (!result.dropped.empty())
    std::cerr << "dropped " << result.dropped.size()
              << " rules whose back-transliteration does not round-trip\n";
  if (bridge == Bridge::None) {
    OutputFile out(args.output);
    write_merge_table(result.source, out.stream());
  } else {
    OutputFile src_out(args.output + ".src");
    write_merge_table(result.source, src_out.stream());
    OutputFile tgt_out(args.output + ".tgt");
    write_merge_table(result.target, tgt_out.stream());
  }
  return 0;
}

struct TranslitArgs {
  std::string direction;
  std::string input;
  std::string output;
  std::string merges;
  std::string table;
};

int run_translit(const TranslitArgs& args) {
  const TransliterationTable table = load_translit(args.table);
  const bool to_latin = args.direction == "cyr2lat";

  if (!args.merges.empty()) {
    const MergeTable merges = load_merges(args.merges);
    const auto direction =
        to_latin ? TranslitDirection::CyrillicToLatin : TranslitDirection::LatinToCyrillic;
    const MergeTranslitResult result = transliterate_merge_table(merges, direction, table);
    if (!result.dropped.empty())
      std::cerr << "dropped " << result.dropped.size()
                << " rules whose transliteration does not round-trip\n";
    OutputFile out(args.output);
    write_merge_table(result.table, out.stream());
    return 0;
  }

  InputFile in(args.input);
  OutputFile out(args.output);
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::uint64_t> untranslatable;
  while (std::getline(in.stream(), line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (!unicode::is_valid_utf8(line))
      throw FormatError(args.input + ":" + std::to_string(line_no) + ": invalid UTF-8 byte sequence");
    if (to_latin) {
      out.stream() << table.to_latin(line) << "\n";
    } else {
      TranslitResult result = table.to_cyrillic(line);
      for (const auto& [span, count] : result.untranslatable)
        untranslatable[span] += count;
      out.stream() << result.text << "\n";
    }
  }
  for (const auto& [span, count] : untranslatable)
    std::cerr << "untranslatable: " << span << " " << count << "\n";
  return 0;
}

struct StatsArgs {
  std::string train;
  std::string test;
  std::vector<std::string> schemes;
  bool tsv = false;
};

Scheme parse_scheme(const std::string& spec) {
  Scheme scheme;
  if (spec == "none") {
    scheme.kind = Scheme::Kind::None;
    scheme.name = "none";
    return scheme;
  }
  const auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t colon = s.find(':', start);
      if (colon == std::string::npos) {
        parts.push_back(s.substr(start));
        return parts;
      }
      parts.push_back(s.substr(start, colon - start));
      start = colon + 1;
    }
  };
  const auto parts = split(spec);
  if (parts[0] == "ngram" && (parts.size() == 2 || parts.size() == 3)) {
    scheme.kind = Scheme::Kind::CharNgram;
    scheme.n = static_cast<std::uint32_t>(std::stoul(parts[1]));
    if (parts.size() == 3)
      scheme.shortlist_size = static_cast<std::uint32_t>(std::stoul(parts[2]));
    scheme.name = "char-" + parts[1] + "gram";
    if (scheme.shortlist_size > 0)
      scheme.name += "-sl" + parts[2];
    return scheme;
  }
  if (parts[0] == "bpe" && parts.size() == 2) {
    scheme.kind = Scheme::Kind::Bpe;
    scheme.merges = load_merges(parts[1]);
    scheme.name = "bpe(" + std::to_string(scheme.merges.size()) + " merges)";
    return scheme;
  }
  if (parts[0] == "preseg" && (parts.size() == 3 || parts.size() == 4)) {
    scheme.kind = Scheme::Kind::PreSegmented;
    scheme.train_lines = read_lines(parts[1]);
    scheme.test_lines = read_lines(parts[2]);
    scheme.name = parts.size() == 4 ? parts[3] : "preseg";
    return scheme;
  }
  throw UsageError("unrecognized scheme '" + spec +
                   "' (expected none, ngram:N[:K], bpe:FILE, or preseg:TRAIN:TEST[:NAME])");
}

int run_stats(const StatsArgs& args) {
  std::vector<Scheme> schemes;
  schemes.reserve(args.schemes.size());
  for (const auto& spec : args.schemes)
    schemes.push_back(parse_scheme(spec));
  const auto results = compare_schemes(read_lines(args.train), read_lines(args.test), schemes);
  std::cout << format_scheme_table(results, args.tsv);
  return 0;
}

struct EvalArgs {
  std::string hyp;
  std::string ref;
  std::string train;
  std::string metric = "f1";
  double beta = 3.0;
  std::uint32_t max_n = 6;
  std::uint64_t rare_rank = 50000;
};

TokenLines tokenized_lines(const std::vector<std::string>& reverted) {
  TokenLines out;
  out.reserve(reverted.size());
  for (const auto& line : reverted)
    out.push_back(split_tokens(line));
  return out;
}

int run_eval(const EvalArgs& args) {
  // Metrics consume reverted text, so segmentation markers never affect them.
  const std::vector<std::string> hyp = revert_segmentation(read_lines(args.hyp));
  const std::vector<std::string> ref = revert_segmentation(read_lines(args.ref));
  if (hyp.size() != ref.size())
    throw FormatError("hypothesis has " + std::to_string(hyp.size()) + " lines but reference has " +
                      std::to_string(ref.size()));

  if (args.metric == "chrf") {
    ChrfConfig cfg;
    cfg.beta = args.beta;
    cfg.max_n = args.max_n;
    std::cout << "chrf\t" << format_score(chrf_corpus(hyp, ref, cfg)) << "\n";
    return 0;
  }
  if (args.metric == "f1") {
    const auto hyp_tokens = tokenized_lines(hyp);
    const auto ref_tokens = tokenized_lines(ref);
    const PrecisionRecallF1 scores = scores_from(corpus_unigram_stats(hyp_tokens, ref_tokens));
    std::cout << "precision\t" << format_score(scores.precision) << "\n";
    std::cout << "recall\t" << format_score(scores.recall) << "\n";
    std::cout << "f1\t" << format_score(scores.f1) << "\n";
    if (!args.train.empty()) {
      InputFile train_in(args.train);
      const WordFrequencyTable train = build_word_frequency_table(train_in.stream());
      const CategoryScores categories =
          per_category_f1(hyp_tokens, ref_tokens, train, args.rare_rank);
      std::cout << "f1_all\t" << format_score(categories.all.f1) << "\n";
      std::cout << "f1_rare\t" << format_score(categories.rare.f1) << "\n";
      std::cout << "f1_oov\t" << format_score(categories.oov.f1) << "\n";
    }
    return 0;
  }
  if (args.metric == "bins") {
    if (args.train.empty())
      throw UsageError("--metric bins requires --train");
    InputFile train_in(args.train);
    const WordFrequencyTable train = build_word_frequency_table(train_in.stream());
    const auto rows = f1_by_frequency_rank(tokenized_lines(hyp), tokenized_lines(ref), train);
    std::cout << "rank\tfreq\tf1\tn_types\tn_tokens\n";
    for (const auto& row : rows)
      std::cout << row.rank << "\t" << row.frequency << "\t" << format_score(row.f1) << "\t"
                << row.n_types << "\t" << row.n_tokens << "\n";
    return 0;
  }
  throw UsageError("unknown metric '" + args.metric + "'");
}

struct PlotArgs {
  std::string hyp;
  std::string ref;
  std::string train;
  std::string output;
};

int run_plot_data(const PlotArgs& args) {
  const std::vector<std::string> hyp = revert_segmentation(read_lines(args.hyp));
  const std::vector<std::string> ref = revert_segmentation(read_lines(args.ref));
  InputFile train_in(args.train);
  const WordFrequencyTable train = build_word_frequency_table(train_in.stream());
  const auto rows = f1_by_frequency_rank(tokenized_lines(hyp), tokenized_lines(ref), train);
  OutputFile out(args.output);
  for (const auto& row : rows)
    out.stream() << row.rank << "\t" << row.frequency << "\t" << format_score(row.f1) << "\t"
                 << row.n_types << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subword segmentation toolkit: learn and apply BPE merge tables, segment with "
               "character n-grams, bridge alphabets via ISO 9 transliteration, and evaluate "
               "segmented MT output."};
  app.require_subcommand(1);

  LearnArgs learn_args;
  auto* learn = app.add_subcommand("learn", "Learn a BPE merge table from tokenized text");
  learn->add_option("--input", learn_args.inputs, "Tokenized input file(s); '-' for stdin")
      ->required();
  learn->add_option("--output", learn_args.output, "Merge file to write")->required();
  learn->add_option("--merges", learn_args.merges, "Number of merge operations")
      ->required()
      ->check(CLI::PositiveNumber);
  learn->add_option("--min-frequency", learn_args.min_frequency,
                    "Stop when the best pair is rarer than this (default 2)");
  learn->add_flag("--dict-input", learn_args.dict_input,
                  "Inputs are 'word count' frequency files");

  ApplyArgs apply_args;
  auto* apply = app.add_subcommand("apply", "Apply a merge table to tokenized text");
  apply->add_option("--merges", apply_args.merges, "Merge file")->required();
  apply->add_option("--input", apply_args.input, "Tokenized input; '-' for stdin")->required();
  apply->add_option("--output", apply_args.output, "Segmented output; '-' for stdout")->required();
  apply->add_option("--vocabulary", apply_args.vocabulary, "Symbol vocabulary file");
  apply->add_option("--vocab-threshold", apply_args.vocab_threshold,
                    "Minimum count for a vocabulary symbol");

  std::string revert_input, revert_output;
  auto* revert = app.add_subcommand("revert", "Undo segmentation markers");
  revert->add_option("--input", revert_input, "Segmented input; '-' for stdin")->required();
  revert->add_option("--output", revert_output, "Tokenized output; '-' for stdout")->required();

  NgramArgs ngram_args;
  auto* ngrams = app.add_subcommand("segment-ngrams", "Character n-gram segmentation");
  ngrams->add_option("--input", ngram_args.input, "Tokenized input; '-' for stdin")->required();
  ngrams->add_option("--output", ngram_args.output, "Segmented output; '-' for stdout")->required();
  ngrams->add_option("--n", ngram_args.n, "Chunk size in characters")
      ->required()
      ->check(CLI::PositiveNumber);
  ngrams->add_option("--shortlist", ngram_args.shortlist,
                     "Leave the k most frequent words unsegmented");
  ngrams->add_option("--train", ngram_args.train,
                     "Corpus the shortlist is counted on (default: the input)");

  JointArgs joint_args;
  auto* joint = app.add_subcommand("joint-learn", "Learn one encoding on two vocabularies");
  joint->add_option("--source", joint_args.source, "Source-side tokenized text")->required();
  joint->add_option("--target", joint_args.target, "Target-side tokenized text")->required();
  joint->add_option("--output", joint_args.output,
                    "Merge file (with --bridge: BASE.src and BASE.tgt)")
      ->required();
  joint->add_option("--merges", joint_args.merges, "Number of merge operations")
      ->required()
      ->check(CLI::PositiveNumber);
  joint->add_option("--min-frequency", joint_args.min_frequency,
                    "Stop when the best pair is rarer than this (default 2)");
  joint->add_option("--bridge", joint_args.bridge, "Alphabet bridge: iso9 (target is Cyrillic)")
      ->check(CLI::IsMember({"iso9"}));
  joint->add_option("--table", joint_args.table, "Transliteration table override");
  joint->add_flag("--dict-input", joint_args.dict_input,
                  "Inputs are 'word count' frequency files");

  TranslitArgs translit_args;
  auto* translit = app.add_subcommand("translit", "ISO 9 Cyrillic <-> Latin transliteration");
  translit->add_option("--direction", translit_args.direction, "cyr2lat or lat2cyr")
      ->required()
      ->check(CLI::IsMember({"cyr2lat", "lat2cyr"}));
  translit->add_option("--input", translit_args.input, "Text input; '-' for stdin");
  translit->add_option("--output", translit_args.output, "Output; '-' for stdout");
  translit->add_option("--merges", translit_args.merges,
                       "Transliterate a merge file instead of text");
  translit->add_option("--table", translit_args.table, "Transliteration table override");

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "Token/type/UNK accounting per segmentation scheme");
  stats->add_option("--train", stats_args.train, "Training corpus")->required();
  stats->add_option("--test", stats_args.test, "Test corpus")->required();
  stats->add_option("--scheme", stats_args.schemes,
                    "none | ngram:N[:K] | bpe:FILE | preseg:TRAIN:TEST[:NAME]")
      ->required();
  stats->add_flag("--tsv", stats_args.tsv, "Tab-separated output");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate hypothesis against reference");
  eval->add_option("--hyp", eval_args.hyp, "Hypothesis file")->required();
  eval->add_option("--ref", eval_args.ref, "Reference file")->required();
  eval->add_option("--train", eval_args.train, "Training corpus for rank-based categories");
  eval->add_option("--metric", eval_args.metric, "chrf, f1, or bins (default f1)")
      ->check(CLI::IsMember({"chrf", "f1", "bins"}));
  eval->add_option("--beta", eval_args.beta, "chrF beta (default 3)");
  eval->add_option("--max-n", eval_args.max_n, "chrF maximum n-gram order (default 6)");
  eval->add_option("--rare-rank", eval_args.rare_rank,
                   "Rank threshold for the rare category (default 50000)");

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot-data", "Unigram F1 by training frequency rank");
  plot->add_option("--hyp", plot_args.hyp, "Hypothesis file")->required();
  plot->add_option("--ref", plot_args.ref, "Reference file")->required();
  plot->add_option("--train", plot_args.train, "Training corpus")->required();
  plot->add_option("--output", plot_args.output, "Plot data file; '-' for stdout")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (learn->parsed())
      return run_learn(learn_args);
    if (apply->parsed())
      return run_apply(apply_args);
    if (revert->parsed())
      return run_revert(revert_input, revert_output);
    if (ngrams->parsed())
      return run_segment_ngrams(ngram_args);
    if (joint->parsed())
      return run_joint_learn(joint_args);
    if (translit->parsed())
      return run_translit(translit_args);
    if (stats->parsed())
      return run_stats(stats_args);
    if (eval->parsed())
      return run_eval(eval_args);
    if (plot->parsed())
      return run_plot_data(plot_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
