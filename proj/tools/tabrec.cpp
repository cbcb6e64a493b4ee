#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reclaim/benchgen.hpp"
#include "reclaim/errors.hpp"
#include "reclaim/io.hpp"
#include "reclaim/lake_index.hpp"
#include "reclaim/metrics.hpp"
#include "reclaim/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
/// Reclaim only: discovery/expansion produced nothing to integrate.
constexpr int kExitNoCandidates = 2;

struct IoFlags {
    std::string delimiter = ",";
    std::vector<std::string> null_tokens;
    bool case_fold = false;
};

void add_io_flags(CLI::App* cmd, IoFlags& flags) {
    cmd->add_option("--delimiter", flags.delimiter, "Field delimiter (one character)")
        ->check(CLI::Validator(
            [](std::string& value) -> std::string {
                return value.size() == 1 ? "" : "delimiter must be exactly one character";
            },
            "CHAR"));
    cmd->add_option("--null-token", flags.null_tokens,
                    "Token read as Null (repeatable; replaces the default set)");
    cmd->add_flag("--case-fold", flags.case_fold, "Lower-case ASCII letters on read");
}

reclaim::IoOptions make_io(const IoFlags& flags) {
    reclaim::IoOptions io;
    io.delimiter = flags.delimiter[0];
    if (!flags.null_tokens.empty()) io.null_tokens = flags.null_tokens;
    io.case_fold = flags.case_fold;
    return io;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& warning : warnings) std::cerr << "warning: " << warning << "\n";
}

int cmd_index(const fs::path& lake_dir, const fs::path& out_path, const IoFlags& flags) {
    std::vector<std::string> warnings;
    const auto index = reclaim::LakeIndex::build(lake_dir, make_io(flags), &warnings);
    print_warnings(warnings);
    index.save(out_path);
    std::cout << "indexed " << index.tables().size() << " tables, " << index.posting_count()
              << " postings -> " << out_path.string() << "\n";
    return kExitOk;
}

int cmd_reclaim(const fs::path& source_path, const fs::path& lake, const fs::path& out_dir,
                const std::vector<std::string>& key, double tau, std::size_t top_k,
                bool no_pruning, const IoFlags& flags) {
    reclaim::pipeline::ReclaimOptions opts;
    opts.io = make_io(flags);
    opts.discovery.tau = tau;
    opts.discovery.top_k = top_k;
    opts.no_pruning = no_pruning;

    const auto outcome = reclaim::pipeline::run_reclaim(source_path, key, lake, out_dir, opts);
    print_warnings(outcome.report.warnings);
    if (!outcome.reclaimable) {
        std::cerr << "error: no usable candidate tables for '" << source_path.string() << "'\n";
        return kExitNoCandidates;
    }
    const auto& m = outcome.report.metrics;
    std::cout << "reclaimed " << outcome.reclaimed.row_count() << " rows from "
              << outcome.report.originating_tables.size() << " originating tables"
              << " (ise " << m.ise << ", recall " << m.recall << ", precision " << m.precision
              << ") -> " << outcome.report.reclaimed_path << "\n";
    return kExitOk;
}

int cmd_eval(const fs::path& source_path, const fs::path& reclaimed_path,
             const std::vector<std::string>& key, const IoFlags& flags) {
    const auto io = make_io(flags);
    const auto source = reclaim::read_table(source_path, io);
    const auto reclaimed = reclaim::read_table(reclaimed_path, io);
    const auto report =
        reclaim::metrics::evaluate_all(source, reclaimed, reclaim::KeySpec{key});

    nlohmann::json doc{{"ise", report.ise},
                       {"instance_similarity", report.instance_similarity},
                       {"recall", report.recall},
                       {"precision", report.precision},
                       {"instance_divergence", report.instance_divergence}};
    if (std::isfinite(report.kl_divergence)) {
        doc["kl_divergence"] = report.kl_divergence;
    } else {
        doc["kl_divergence"] = nullptr;
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int cmd_benchgen(const reclaim::benchgen::BenchSpec& spec, const fs::path& out_dir,
                 const IoFlags& flags) {
    const auto layout = reclaim::benchgen::write_benchmark(spec, out_dir, make_io(flags));
    const auto& manifest = layout.manifest;
    print_warnings(manifest.at("warnings").get<std::vector<std::string>>());
    std::cout << "wrote " << manifest.at("variants").size() << " lake tables and "
              << manifest.at("sources").size() << " sources -> " << layout.root.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reclaim source tables from a data lake"};
    app.require_subcommand(1);

    // index
    auto* index = app.add_subcommand("index", "Build and save a lake index");
    fs::path index_lake_dir;
    fs::path index_out = "lake_index.json";
    IoFlags index_io;
    index->add_option("lake_dir", index_lake_dir, "Directory of lake CSV files")->required();
    index->add_option("--out", index_out, "Index output path");
    add_io_flags(index, index_io);

    // reclaim
    auto* rec = app.add_subcommand("reclaim", "Reclaim a source table from the lake");
    fs::path rec_source;
    fs::path rec_lake;
    fs::path rec_out = "reclaim_out";
    std::vector<std::string> rec_key;
    double rec_tau = 0.2;
    std::size_t rec_top_k = 0;
    bool rec_no_pruning = false;
    IoFlags rec_io;
    rec->add_option("source", rec_source, "Source table CSV")->required();
    rec->add_option("lake", rec_lake, "Lake directory or saved index")->required();
    rec->add_option("--key", rec_key, "Key column (repeatable)")->required();
    rec->add_option("--tau", rec_tau, "Column-containment threshold");
    rec->add_option("--top-k", rec_top_k, "Max candidates per source column (0 = unlimited)");
    rec->add_option("--out", rec_out, "Output directory");
    rec->add_flag("--no-pruning", rec_no_pruning,
                  "Integrate every candidate (skip traversal selection)");
    add_io_flags(rec, rec_io);

    // eval
    auto* ev = app.add_subcommand("eval", "Score a reclaimed table against its source");
    fs::path ev_source;
    fs::path ev_reclaimed;
    std::vector<std::string> ev_key;
    IoFlags ev_io;
    ev->add_option("source", ev_source, "Source table CSV")->required();
    ev->add_option("reclaimed", ev_reclaimed, "Reclaimed table CSV")->required();
    ev->add_option("--key", ev_key, "Key column (repeatable)")->required();
    add_io_flags(ev, ev_io);

    // benchgen
    auto* gen = app.add_subcommand("benchgen", "Generate a reclamation benchmark");
    fs::path gen_out;
    reclaim::benchgen::BenchSpec spec;
    IoFlags gen_io;
    gen->add_option("out_dir", gen_out, "Benchmark output directory")->required();
    gen->add_option("--seed", spec.seed, "Generator seed");
    gen->add_option("--bases", spec.base_tables, "Number of base tables");
    gen->add_option("--rows", spec.rows, "Rows per base table");
    gen->add_option("--columns", spec.columns, "Columns per base table");
    gen->add_option("--null-rate", spec.null_rate, "Nullification probability")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--error-rate", spec.error_rate, "Error-injection probability")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--queries", spec.query_count, "Number of generated sources");
    gen->add_flag("--complementary", spec.complementary_mode,
                  "Complementary split variants (lossless by construction)");
    add_io_flags(gen, gen_io);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand(index)) return cmd_index(index_lake_dir, index_out, index_io);
        if (app.got_subcommand(rec)) {
            return cmd_reclaim(rec_source, rec_lake, rec_out, rec_key, rec_tau, rec_top_k,
                               rec_no_pruning, rec_io);
        }
        if (app.got_subcommand(ev)) return cmd_eval(ev_source, ev_reclaimed, ev_key, ev_io);
        if (app.got_subcommand(gen)) return cmd_benchgen(spec, gen_out, gen_io);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
