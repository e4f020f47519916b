// Batch CLI: embed/extract stego payloads, simulate the re-compression
// channel, and run the benchmark/analysis sweeps.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "rsteg/bench/bench.hpp"
#include "rsteg/channel/recompress.hpp"
#include "rsteg/jpeg/jcof.hpp"
#include "rsteg/jpeg/jfif.hpp"
#include "rsteg/jpeg/pgm.hpp"
#include "rsteg/scheme/scheme.hpp"

namespace {

using namespace rsteg;

std::string ext_of(const std::string& path) {
    return std::filesystem::path(path).extension().string();
}

CoefImage load_coef(const std::string& path) {
    std::string ext = ext_of(path);
    if (ext == ".jcof") return decode_jcof(read_binary_file(path));
    if (ext == ".jpg" || ext == ".jpeg") return read_jfif_file(path);
    throw Error("unsupported coefficient file type: " + path);
}

void save_coef(const std::string& path, const CoefImage& img) {
    std::string ext = ext_of(path);
    if (ext == ".jcof") {
        write_binary_file(path, encode_jcof(img));
    } else if (ext == ".jpg" || ext == ".jpeg") {
        write_jfif_file(path, img);
    } else {
        throw Error("unsupported coefficient file type: " + path);
    }
}

// A .pgm cover is compressed here at the channel quality (and doubles as the
// rounding side information); anything else must already be at that quality.
CoefImage load_cover(const std::string& path, int qc, PixelImage* precover,
                     bool* have_precover) {
    *have_precover = false;
    if (ext_of(path) == ".pgm") {
        *precover = read_pgm_file(path);
        *have_precover = true;
        return compress(*precover, qc);
    }
    return load_coef(path);
}

struct CommonOpts {
    std::string scheme = "proposed";
    int qc = 65;
    double payload = 0.05;
    std::uint64_t key = 0;
    std::uint64_t seed = 1;
    int stc_h = 10;
    double alpha = 0.7;
    int passes = 2;
    std::string domain;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_payload) {
    cmd->add_option("--scheme", o.scheme, "proposed | gmas | edmas")
        ->check(CLI::IsMember({"proposed", "gmas", "edmas"}));
    cmd->add_option("--qc", o.qc, "channel quality factor")->check(CLI::Range(1, 100));
    if (with_payload)
        cmd->add_option("--payload", o.payload, "bits per nonzero AC coefficient");
    cmd->add_option("--key", o.key, "shared embedding key");
    cmd->add_option("--seed", o.seed, "seed for generated message bits");
    cmd->add_option("--stc-h", o.stc_h, "STC constraint height");
    cmd->add_option("--alpha", o.alpha, "gmas cost asymmetry factor");
    cmd->add_option("--passes", o.passes, "modification-with-re-compression passes");
    cmd->add_option("--domain", o.domain, "embedding domain, e.g. E_45");
}

SchemeConfig to_config(const CommonOpts& o) {
    SchemeConfig cfg = default_config(parse_scheme(o.scheme));
    if (!o.domain.empty()) cfg.domain = parse_domain(o.domain);
    cfg.quality = o.qc;
    cfg.payload = o.payload;
    cfg.key = o.key;
    cfg.stc.h = o.stc_h;
    cfg.alpha = o.alpha;
    cfg.modification_passes = o.passes;
    return cfg;
}

int cmd_embed(const CommonOpts& o, const std::string& cover_path,
              const std::string& out_path, const std::string& message_path) {
    PixelImage precover;
    bool have_precover = false;
    CoefImage cover = load_cover(cover_path, o.qc, &precover, &have_precover);
    SchemeConfig cfg = to_config(o);

    BitVec message;
    if (!message_path.empty()) {
        auto bytes = read_binary_file(message_path);
        message = unpack_bits(bytes, bytes.size() * 8);
    } else {
        std::size_t msg_len = message_length(cover, o.payload);
        message = Rng(o.seed).next_bits(msg_len);
    }
    EmbedResult res = embed(cover, message, cfg, have_precover ? &precover : nullptr);
    save_coef(out_path, res.stego);

    std::size_t flips = 0;
    for (std::size_t e = 0; e < res.stego_bits.size(); ++e)
        if (res.stego_bits[e] != res.cover_bits[e]) ++flips;
    std::printf("{\"msg_len\": %zu, \"sequence_len\": %zu, \"flips\": %zu}\n",
                message.size(), res.stego_bits.size(), flips);
    return 0;
}

int cmd_extract(const CommonOpts& o, const std::string& stego_path,
                const std::string& out_path, std::size_t msg_len) {
    CoefImage stego = load_coef(stego_path);
    SchemeConfig cfg = to_config(o);
    ExtractResult res = extract(stego, cfg, msg_len);
    if (!out_path.empty()) write_binary_file(out_path, pack_bits(res.message));
    std::printf("{\"ok\": %s, \"rs_failures\": %d, \"msg_len\": %zu}\n",
                res.ok ? "true" : "false", res.rs_failures, res.message.size());
    return 0; // decode failures are a reported status, not a process error
}

int cmd_attack(const std::string& in_path, const std::string& out_path, int quality,
               int iterations, bool verbose) {
    CoefImage img = load_coef(in_path);
    ChannelSpec spec{quality, 1};
    CoefImage cur = img;
    for (int it = 0; it < iterations; ++it) {
        CoefImage next = recompress(cur, spec);
        if (verbose) {
            std::fprintf(stderr, "iteration %d: %zu coefficients changed\n", it + 1,
                         coef_diff_count(cur, next));
        }
        cur = std::move(next);
    }
    save_coef(out_path, cur);
    return 0;
}

BenchConfig bench_config_from(const std::string& config_path) {
    if (!config_path.empty()) return load_bench_config(config_path);
    BenchConfig cfg;
    if (const char* env = std::getenv("RSTEG_CORPUS")) cfg.corpus_path = env;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust JPEG steganography toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string cover_path, stego_path, out_path, message_path, in_path;
    std::size_t msg_len = 0;

    auto* embed_cmd = app.add_subcommand("embed", "embed a message into a cover image");
    embed_cmd->add_option("--cover", cover_path, ".pgm cover or .jpg/.jcof at Q_c")
        ->required();
    embed_cmd->add_option("--out", out_path, "stego output (.jpg or .jcof)")->required();
    embed_cmd->add_option("--message", message_path, "message file (default: seeded random)");
    add_common(embed_cmd, opts, true);

    auto* extract_cmd = app.add_subcommand("extract", "extract a message from a stego image");
    extract_cmd->add_option("--stego", stego_path, "stego image (.jpg or .jcof)")->required();
    extract_cmd->add_option("--msg-len", msg_len, "message length in bits")->required();
    extract_cmd->add_option("--out", out_path, "write recovered message bytes here");
    add_common(extract_cmd, opts, false);

    int attack_quality = 65, attack_iterations = 1;
    bool attack_verbose = false;
    auto* attack_cmd = app.add_subcommand("attack", "re-compress an image (channel simulation)");
    attack_cmd->add_option("--in", in_path, "input image (.jpg or .jcof)")->required();
    attack_cmd->add_option("--out", out_path, "output image")->required();
    attack_cmd->add_option("--quality", attack_quality, "re-compression quality")
        ->check(CLI::Range(1, 100));
    attack_cmd->add_option("--iterations", attack_iterations, "number of re-compressions")
        ->check(CLI::PositiveNumber);
    attack_cmd->add_flag("--verbose", attack_verbose, "report changed coefficients per pass");

    std::string config_path, out_report, out_rows, out_curves;
    std::uint64_t bench_seed = 0;
    int bench_jobs = 0, bench_passes = -1;
    std::string bench_domain;
    bool no_attack = false;
    auto add_bench_opts = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--seed", bench_seed, "override master seed");
        cmd->add_option("--jobs", bench_jobs, "worker threads");
        cmd->add_option("--passes", bench_passes, "override modification passes");
        cmd->add_option("--domain", bench_domain, "override embedding domain");
        cmd->add_option("--out-report", out_report, "report JSON path");
        cmd->add_option("--out-rows", out_rows, "per-image CSV path");
        cmd->add_option("--out-curves", out_curves, "per-curve CSV path");
    };
    auto* bench_cmd = app.add_subcommand("bench", "run the robustness sweep");
    add_bench_opts(bench_cmd);
    bench_cmd->add_flag("--no-attack", no_attack, "skip the channel (round-trip check)");
    auto* analyze_cmd = app.add_subcommand("analyze", "run the sequence-error analysis");
    add_bench_opts(analyze_cmd);

    std::string corpus_dir;
    CorpusSpec corpus_spec;
    auto* corpus_cmd = app.add_subcommand("gen-corpus", "write the synthetic corpus as .pgm");
    corpus_cmd->add_option("--out-dir", corpus_dir, "output directory")->required();
    corpus_cmd->add_option("--count", corpus_spec.count, "number of images");
    corpus_cmd->add_option("--width", corpus_spec.width, "image width");
    corpus_cmd->add_option("--height", corpus_spec.height, "image height");
    corpus_cmd->add_option("--seed", corpus_spec.seed, "corpus seed");
    corpus_cmd->add_option("--noise", corpus_spec.noise, "noise amplitude");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (embed_cmd->parsed()) return cmd_embed(opts, cover_path, out_path, message_path);
        if (extract_cmd->parsed()) return cmd_extract(opts, stego_path, out_path, msg_len);
        if (attack_cmd->parsed())
            return cmd_attack(in_path, out_path, attack_quality, attack_iterations,
                              attack_verbose);
        if (bench_cmd->parsed() || analyze_cmd->parsed()) {
            BenchConfig cfg = bench_config_from(config_path);
            if (bench_seed != 0) cfg.seed = bench_seed;
            if (bench_jobs > 0) cfg.jobs = bench_jobs;
            if (bench_passes >= 0) cfg.modification_passes = bench_passes;
            if (!bench_domain.empty()) cfg.domain = bench_domain;
            if (!out_report.empty()) cfg.out_report = out_report;
            if (!out_rows.empty()) cfg.out_rows = out_rows;
            if (!out_curves.empty()) cfg.out_curves = out_curves;
            if (no_attack) cfg.attack = false;
            if (bench_cmd->parsed()) {
                RobustnessReport rep = run_robustness(cfg);
                write_rows_csv(rep.rows, cfg.out_rows);
                write_curves_csv(rep.curves, cfg.out_curves);
                std::ofstream out(cfg.out_report);
                out << report_json(rep).dump(2) << '\n';
                std::printf("rows: %zu, errors: %zu, runtime: %.1fs\n", rep.rows.size(),
                            rep.errors.size(), rep.runtime_seconds);
            } else {
                AnalysisReport rep = run_sequence_error_analysis(cfg);
                write_analysis_csv(rep, cfg.out_rows);
                std::ofstream out(cfg.out_report);
                out << analysis_json(rep).dump(2) << '\n';
                std::printf("rows: %zu, errors: %zu, runtime: %.1fs\n", rep.rows.size(),
                            rep.errors.size(), rep.runtime_seconds);
            }
            return 0;
        }
        if (corpus_cmd->parsed()) {
            std::filesystem::create_directories(corpus_dir);
            for (int i = 0; i < corpus_spec.count; ++i) {
                char name[32];
                std::snprintf(name, sizeof(name), "img_%04d.pgm", i);
                write_pgm_file((std::filesystem::path(corpus_dir) / name).string(),
                               synth_image(corpus_spec, i));
            }
            std::printf("wrote %d images to %s\n", corpus_spec.count, corpus_dir.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
