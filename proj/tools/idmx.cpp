// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
//
// idmx command line front end. Every file this tool writes is stamped with a
// hash of the options that produced it: CSVs carry a leading
// `# config_hash=<hex>` comment, JSON files a `config_hash` key, Newick files
// a `[config_hash=<hex>]` bracket comment. Exit codes: 0 success, 1 usage,
// 2 malformed input data, 3 internal error.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "idmx/idmx.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// one writer for every artifact so failures surface as data errors, not
// silently empty files
std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open())
    throw idmx::ValidationError("cannot open output file: " + path.string());
  return out;
}

idmx::Corpus load_corpus(const fs::path& dir) {
  return idmx::Corpus::load(dir / "categories.csv", dir / "journals.csv",
                            dir / "publications.jsonl");
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open())
    throw idmx::ValidationError("cannot open input file: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw idmx::ParseError(path.string(), 0, e.what());
  }
}

idmx::MeasureReport read_report(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open())
    throw idmx::ValidationError("cannot open report file: " + path.string());
  return idmx::MeasureReport::read_csv(in, path.string());
}

std::string params_hash(const json& params) {
  return idmx::fnv1a64_hex(params.dump());
}

void write_json_file(const fs::path& path, json j, const std::string& hash) {
  j["config_hash"] = hash;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

idmx::Counting parse_counting(const std::string& s) {
  if (s == "fractional") return idmx::Counting::fractional;
  if (s == "full") return idmx::Counting::full;
  throw idmx::ValidationError("unknown counting mode '" + s + "'");
}

idmx::SimilarityKind parse_similarity(const std::string& s) {
  if (s == "cosine_vector") return idmx::SimilarityKind::cosine_vector;
  if (s == "ochiai") return idmx::SimilarityKind::ochiai;
  throw idmx::ValidationError("unknown similarity '" + s + "'");
}

idmx::DissimTransform parse_transform(const std::string& s) {
  if (s == "one_minus") return idmx::DissimTransform::one_minus;
  if (s == "reciprocal") return idmx::DissimTransform::reciprocal;
  throw idmx::ValidationError("unknown transform '" + s + "'");
}

idmx::CorrelationMethod parse_method(const std::string& s) {
  if (s == "pearson") return idmx::CorrelationMethod::pearson;
  if (s == "spearman") return idmx::CorrelationMethod::spearman;
  throw idmx::ValidationError("unknown correlation method '" + s + "'");
}

idmx::Linkage parse_linkage(const std::string& s) {
  if (s == "average") return idmx::Linkage::average;
  if (s == "single") return idmx::Linkage::single;
  if (s == "complete") return idmx::Linkage::complete;
  throw idmx::ValidationError("unknown linkage '" + s + "'");
}

idmx::SimilarityMatrix build_similarity(const idmx::TransactionMatrix& tm,
                                        idmx::SimilarityKind kind) {
  return kind == idmx::SimilarityKind::cosine_vector ? idmx::cosine_vector_similarity(tm)
                                                     : idmx::ochiai_similarity(tm);
}

int cmd_generate(const fs::path& spec_path, const fs::path& out_dir) {
  const idmx::GenSpec spec = idmx::GenSpec::from_json(read_json_file(spec_path));
  const idmx::Corpus corpus = idmx::generate(spec);
  fs::create_directories(out_dir);
  corpus.save(out_dir / "categories.csv", out_dir / "journals.csv",
              out_dir / "publications.jsonl");
  json meta = {{"spec", spec.to_json()},
               {"rng", idmx::kGeneratorRng},
               {"version", idmx::kVersion},
               {"categories", corpus.n_categories()},
               {"journals", corpus.n_journals()},
               {"publications", corpus.n_publications()},
               {"internal_references", corpus.internal_reference_count()},
               {"external_references", corpus.external_reference_count()}};
  write_json_file(out_dir / "genmeta.json", std::move(meta),
                  params_hash(spec.to_json()));
  std::cout << "wrote corpus to " << out_dir.string() << "\n";
  return 0;
}

struct IngestOpts {
  std::string corpus_dir;
  std::string counting = "fractional";
  std::string matrix_out, sc_out, so_out, graph_out, dissim_hist_out;
  std::string graph_weight = "raw";
  std::string transform = "one_minus";
  std::string similarity = "cosine_vector";
  std::size_t bins = 10;
};

int cmd_ingest(const IngestOpts& o) {
  const idmx::Corpus corpus = load_corpus(o.corpus_dir);
  const auto counting = parse_counting(o.counting);
  const auto tm = idmx::TransactionMatrix::build(corpus, counting);

  json params = {{"command", "ingest"},
                 {"counting", o.counting},
                 {"graph_weight", o.graph_weight},
                 {"transform", o.transform},
                 {"similarity", o.similarity},
                 {"bins", o.bins}};
  const std::string hash = params_hash(params);

  json summary = {{"version", idmx::kVersion},
                  {"config_hash", hash},
                  {"counting", o.counting},
                  {"categories", corpus.n_categories()},
                  {"journals", corpus.n_journals()},
                  {"publications", corpus.n_publications()},
                  {"internal_references", corpus.internal_reference_count()},
                  {"external_references", corpus.external_reference_count()}};
  json written = json::array();

  if (!o.matrix_out.empty()) {
    auto out = open_out(o.matrix_out);
    out << "# config_hash=" << hash << "\n";
    tm.write_triplets_csv(out);
    written.push_back(o.matrix_out);
  }
  if (!o.sc_out.empty()) {
    auto out = open_out(o.sc_out);
    out << "# config_hash=" << hash << "\n";
    idmx::cosine_vector_similarity(tm).write_dense_csv(out);
    written.push_back(o.sc_out);
  }
  if (!o.so_out.empty()) {
    auto out = open_out(o.so_out);
    out << "# config_hash=" << hash << "\n";
    idmx::ochiai_similarity(tm).write_dense_csv(out);
    written.push_back(o.so_out);
  }
  if (!o.graph_out.empty()) {
    const auto weight = o.graph_weight == "raw" ? idmx::WeightTransform::raw
                        : o.graph_weight == "inverse"
                            ? idmx::WeightTransform::inverse
                            : throw idmx::ValidationError("unknown graph weight '" +
                                                          o.graph_weight + "'");
    auto out = open_out(o.graph_out);
    out << "# config_hash=" << hash << "\n";
    idmx::build_citation_graph(tm, weight).write_edge_list_csv(out);
    written.push_back(o.graph_out);
  }
  if (!o.dissim_hist_out.empty()) {
    const auto sim = build_similarity(tm, parse_similarity(o.similarity));
    const auto dis = idmx::to_dissimilarity(sim, parse_transform(o.transform));
    const auto hist = idmx::dissimilarity_histogram(dis, o.bins);
    json h = {{"edges", hist.edges},
              {"counts", hist.counts},
              {"excluded", hist.excluded},
              {"transform", o.transform},
              {"similarity", o.similarity}};
    if (dis.cap()) h["cap"] = *dis.cap();
    write_json_file(o.dissim_hist_out, std::move(h), hash);
    written.push_back(o.dissim_hist_out);
  }

  summary["written"] = std::move(written);
  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_measures(const fs::path& corpus_dir, const std::string& config_path,
                 const fs::path& out_path) {
  idmx::Config cfg;
  if (!config_path.empty()) cfg = idmx::Config::from_json(read_json_file(config_path));
  const idmx::Corpus corpus = load_corpus(corpus_dir);
  idmx::MeasureReport report = idmx::compute_report(corpus, cfg);
  {
    auto out = open_out(out_path);
    report.write_csv(out, cfg.hash());
  }
  const fs::path meta_path = out_path.string() + ".meta.json";
  {
    auto out = open_out(meta_path);
    out << report.metadata.dump(2) << "\n";
  }
  std::cout << "wrote " << out_path.string() << " and " << meta_path.string() << "\n";
  return 0;
}

int cmd_correlate(const std::string& report_path, const std::string& corpus_dir,
                  const std::string& counting, const std::string& method_name,
                  const fs::path& out_path, const std::string& details_path) {
  const auto method = parse_method(method_name);
  std::optional<idmx::CorrelationMatrix> cm;
  json params = {{"command", "correlate"}, {"method", method_name}};
  if (!report_path.empty()) {
    params["source"] = "report";
    cm = idmx::correlation_matrix(read_report(report_path), method);
  } else {
    params["source"] = "dissimilarity";
    params["counting"] = counting;
    const idmx::Corpus corpus = load_corpus(corpus_dir);
    const auto tm = idmx::TransactionMatrix::build(corpus, parse_counting(counting));
    const auto sc = idmx::cosine_vector_similarity(tm);
    const auto so = idmx::ochiai_similarity(tm);
    const auto d1 = idmx::to_dissimilarity(sc, idmx::DissimTransform::one_minus);
    const auto d2 = idmx::to_dissimilarity(sc, idmx::DissimTransform::reciprocal);
    const auto d3 = idmx::to_dissimilarity(so, idmx::DissimTransform::one_minus);
    const auto d4 = idmx::to_dissimilarity(so, idmx::DissimTransform::reciprocal);
    cm = idmx::dissimilarity_correlations({&d1, &d2, &d3, &d4}, method);
  }
  const std::string hash = params_hash(params);
  {
    auto out = open_out(out_path);
    cm->write_csv(out, hash);
  }
  if (!details_path.empty()) write_json_file(details_path, cm->details_json(), hash);
  std::cout << "wrote " << out_path.string() << "\n";
  return 0;
}

int cmd_cluster(const fs::path& report_path, const std::string& method_name,
                const std::string& linkage_name, const fs::path& out_path,
                const std::string& newick_path) {
  const auto method = parse_method(method_name);
  const auto linkage = parse_linkage(linkage_name);
  const auto report = read_report(report_path);
  const auto cm = idmx::correlation_matrix(report, method);
  const auto dg = idmx::cluster_measures(cm, linkage);
  json params = {{"command", "cluster"},
                 {"method", method_name},
                 {"linkage", linkage_name}};
  const std::string hash = params_hash(params);
  json j = dg.to_json();
  j["newick"] = dg.newick();
  write_json_file(out_path, std::move(j), hash);
  if (!newick_path.empty()) {
    auto out = open_out(newick_path);
    out << "[config_hash=" << hash << "]\n" << dg.newick() << "\n";
  }
  std::cout << "wrote " << out_path.string() << "\n";
  return 0;
}

int cmd_rank(const fs::path& report_path, const fs::path& out_path,
             const std::vector<std::string>& category_filter) {
  const auto report = read_report(report_path);
  std::vector<std::size_t> show;
  if (category_filter.empty()) {
    for (std::size_t c = 0; c < report.categories().size(); ++c) show.push_back(c);
  } else {
    for (const auto& id : category_filter) {
      const auto idx = report.category_index(id);
      if (!idx)
        throw idmx::ValidationError("category '" + id + "' not present in report");
      show.push_back(*idx);
    }
  }
  json params = {{"command", "rank"}, {"categories", category_filter}};
  const std::string hash = params_hash(params);

  auto out = open_out(out_path);
  out << "# config_hash=" << hash << "\n";
  out << "measure";
  for (const std::size_t c : show) out << "," << idmx::csv_escape(report.categories()[c]);
  out << ",unranked\n";
  for (std::size_t m = 0; m < report.measures().size(); ++m) {
    // ranks are global over every category in the report; the category list
    // only restricts which columns are printed
    const auto ranks = idmx::rank_categories(report, m);
    out << idmx::csv_escape(report.measures()[m]);
    for (const std::size_t c : show) {
      out << ",";
      if (ranks.ranks[c]) out << *ranks.ranks[c];
    }
    std::string unranked;
    for (const std::size_t c : ranks.unranked) {
      if (!unranked.empty()) unranked += ";";
      unranked += report.categories()[c];
    }
    out << "," << idmx::csv_escape(unranked) << "\n";
  }
  std::cout << "wrote " << out_path.string() << "\n";
  return 0;
}

int cmd_hist(const fs::path& report_path, std::size_t bins, const fs::path& out_path) {
  const auto report = read_report(report_path);
  const auto hists = idmx::value_histograms(report, bins);
  json params = {{"command", "hist"}, {"bins", bins}};
  json measures = json::object();
  for (std::size_t m = 0; m < report.measures().size(); ++m) {
    measures[report.measures()[m]] = {{"edges", hists[m].edges},
                                      {"counts", hists[m].counts},
                                      {"excluded", hists[m].excluded}};
  }
  write_json_file(out_path, {{"bins", bins}, {"measures", std::move(measures)}},
                  params_hash(params));
  std::cout << "wrote " << out_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interdisciplinarity measures over publication corpora"};
  app.require_subcommand(1);

  auto* version = app.add_subcommand("version", "print the tool version");

  std::string gen_spec, gen_out;
  auto* generate = app.add_subcommand("generate", "synthesize a corpus from a spec");
  generate->add_option("--spec", gen_spec, "generator spec JSON")->required();
  generate->add_option("--out", gen_out, "output corpus directory")->required();

  IngestOpts ing;
  auto* ingest = app.add_subcommand("ingest", "load a corpus and export derived data");
  ingest->add_option("--corpus", ing.corpus_dir, "corpus directory")->required();
  ingest->add_option("--counting", ing.counting, "fractional|full");
  ingest->add_option("--matrix-out", ing.matrix_out, "transaction matrix triplet CSV");
  ingest->add_option("--sc-out", ing.sc_out, "cosine similarity CSV");
  ingest->add_option("--so-out", ing.so_out, "Ochiai similarity CSV");
  ingest->add_option("--graph-out", ing.graph_out, "citation graph edge list CSV");
  ingest->add_option("--graph-weight", ing.graph_weight, "raw|inverse");
  ingest->add_option("--dissim-hist-out", ing.dissim_hist_out,
                     "dissimilarity histogram JSON");
  ingest->add_option("--transform", ing.transform, "one_minus|reciprocal");
  ingest->add_option("--similarity", ing.similarity, "cosine_vector|ochiai");
  ingest->add_option("--bins", ing.bins, "histogram bin count");

  std::string mea_corpus, mea_config, mea_out;
  auto* measures = app.add_subcommand("measures", "compute the measure report");
  measures->add_option("--corpus", mea_corpus, "corpus directory")->required();
  measures->add_option("--config", mea_config, "config JSON (defaults when omitted)");
  measures->add_option("--out", mea_out, "report CSV path")->required();

  std::string cor_report, cor_corpus, cor_counting = "fractional";
  std::string cor_method = "pearson", cor_out, cor_details;
  auto* correlate = app.add_subcommand("correlate", "correlate measure columns");
  correlate->add_option("--report", cor_report, "measure report CSV");
  correlate->add_option("--corpus", cor_corpus,
                        "corpus directory (dissimilarity-matrix mode)");
  correlate->add_option("--counting", cor_counting, "fractional|full");
  correlate->add_option("--method", cor_method, "pearson|spearman");
  correlate->add_option("--out", cor_out, "correlation matrix CSV")->required();
  correlate->add_option("--details", cor_details, "details JSON (effective n, reasons)");

  std::string clu_report, clu_method = "pearson", clu_linkage = "average";
  std::string clu_out, clu_newick;
  auto* cluster = app.add_subcommand("cluster", "agglomerate measures by correlation");
  cluster->add_option("--report", clu_report, "measure report CSV")->required();
  cluster->add_option("--method", clu_method, "pearson|spearman");
  cluster->add_option("--linkage", clu_linkage, "average|single|complete");
  cluster->add_option("--out", clu_out, "dendrogram JSON")->required();
  cluster->add_option("--newick", clu_newick, "Newick tree file");

  std::string rank_report, rank_out;
  std::vector<std::string> rank_categories;
  auto* rank = app.add_subcommand("rank", "rank categories per measure");
  rank->add_option("--report", rank_report, "measure report CSV")->required();
  rank->add_option("--out", rank_out, "rank table CSV")->required();
  rank->add_option("--categories", rank_categories,
                   "category columns to print (ranks stay global)")
      ->delimiter(',');

  std::string hist_report, hist_out;
  std::size_t hist_bins = 10;
  auto* hist = app.add_subcommand("hist", "per-measure value histograms");
  hist->add_option("--report", hist_report, "measure report CSV")->required();
  hist->add_option("--bins", hist_bins, "bin count");
  hist->add_option("--out", hist_out, "histogram JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the usage message
    return code == 0 ? 0 : 1;     // --help and --version exit cleanly
  }

  try {
    if (version->parsed()) {
      std::cout << "idmx " << idmx::kVersion << "\n";
      return 0;
    }
    if (generate->parsed()) return cmd_generate(gen_spec, gen_out);
    if (ingest->parsed()) return cmd_ingest(ing);
    if (measures->parsed()) return cmd_measures(mea_corpus, mea_config, mea_out);
    if (correlate->parsed()) {
      if (cor_report.empty() == cor_corpus.empty())
        throw idmx::ValidationError("pass exactly one of --report or --corpus");
      return cmd_correlate(cor_report, cor_corpus, cor_counting, cor_method, cor_out,
                           cor_details);
    }
    if (cluster->parsed())
      return cmd_cluster(clu_report, clu_method, clu_linkage, clu_out, clu_newick);
    if (rank->parsed()) return cmd_rank(rank_report, rank_out, rank_categories);
    if (hist->parsed()) return cmd_hist(hist_report, hist_bins, hist_out);
  } catch (const idmx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
