#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "rsteg/bench/corpus.hpp"
#include "rsteg/channel/recompress.hpp"
#include "rsteg/jpeg/pgm.hpp"
#include "rsteg/scheme/scheme.hpp"

// Experiment orchestration: robustness sweeps (embed, attack, extract, count
// bit errors) and the sequence-error analysis that splits post-channel stego
// errors by whether the coefficient was touched during embedding. Everything
// is keyed off a master seed so reruns are byte-identical apart from
// runtimes.

namespace rsteg {

struct BenchConfig {
    CorpusSpec corpus;
    std::string corpus_path; // directory of .pgm files; empty = synthetic
    std::vector<std::string> schemes{"proposed", "gmas", "edmas"};
    std::vector<double> payloads{0.01, 0.02, 0.03, 0.04, 0.05,
                                 0.06, 0.07, 0.08, 0.09, 0.10};
    std::vector<int> qualities{65, 75};
    std::uint64_t seed = 1;
    int jobs = 1;
    int stc_h = 10;
    double alpha = 0.7;
    int rs_t = 2;
    int gmas_rs_t = 16;
    bool double_layer = true;
    int modification_passes = 2;
    bool attack = true;
    std::string domain;             // overrides every scheme's default domain
    double analysis_payload = 0.05; // payload for the sequence-error analysis
    std::string out_report = "bench_report.json";
    std::string out_rows = "bench_rows.csv";
    std::string out_curves = "bench_curves.csv";
};

inline void from_json_file(const nlohmann::json& j, BenchConfig& cfg) {
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) j.at(key).get_to(field);
    };
    get("corpus_path", cfg.corpus_path);
    if (j.contains("corpus")) {
        const auto& c = j.at("corpus");
        auto getc = [&](const char* key, auto& field) {
            if (c.contains(key)) c.at(key).get_to(field);
        };
        getc("width", cfg.corpus.width);
        getc("height", cfg.corpus.height);
        getc("count", cfg.corpus.count);
        getc("seed", cfg.corpus.seed);
        getc("noise", cfg.corpus.noise);
        getc("blobs", cfg.corpus.blobs);
        getc("rects", cfg.corpus.rects);
    }
    get("schemes", cfg.schemes);
    get("payloads", cfg.payloads);
    get("qualities", cfg.qualities);
    get("seed", cfg.seed);
    get("jobs", cfg.jobs);
    get("stc_h", cfg.stc_h);
    get("alpha", cfg.alpha);
    get("rs_t", cfg.rs_t);
    get("gmas_rs_t", cfg.gmas_rs_t);
    get("double_layer", cfg.double_layer);
    get("modification_passes", cfg.modification_passes);
    get("attack", cfg.attack);
    get("domain", cfg.domain);
    get("analysis_payload", cfg.analysis_payload);
    get("out_report", cfg.out_report);
    get("out_rows", cfg.out_rows);
    get("out_curves", cfg.out_curves);
}

inline nlohmann::json to_json(const BenchConfig& cfg) {
    nlohmann::json j;
    j["corpus"] = {{"width", cfg.corpus.width},   {"height", cfg.corpus.height},
                   {"count", cfg.corpus.count},   {"seed", cfg.corpus.seed},
                   {"noise", cfg.corpus.noise},   {"blobs", cfg.corpus.blobs},
                   {"rects", cfg.corpus.rects}};
    j["corpus_path"] = cfg.corpus_path;
    j["schemes"] = cfg.schemes;
    j["payloads"] = cfg.payloads;
    j["qualities"] = cfg.qualities;
    j["seed"] = cfg.seed;
    j["jobs"] = cfg.jobs;
    j["stc_h"] = cfg.stc_h;
    j["alpha"] = cfg.alpha;
    j["rs_t"] = cfg.rs_t;
    j["gmas_rs_t"] = cfg.gmas_rs_t;
    j["double_layer"] = cfg.double_layer;
    j["modification_passes"] = cfg.modification_passes;
    j["attack"] = cfg.attack;
    j["domain"] = cfg.domain;
    j["analysis_payload"] = cfg.analysis_payload;
    j["out_report"] = cfg.out_report;
    j["out_rows"] = cfg.out_rows;
    j["out_curves"] = cfg.out_curves;
    return j;
}

// RSTEG_CORPUS overrides the corpus directory regardless of the config file.
inline BenchConfig load_bench_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("bench: cannot open config " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    BenchConfig cfg;
    from_json_file(j, cfg);
    if (const char* env = std::getenv("RSTEG_CORPUS")) cfg.corpus_path = env;
    return cfg;
}

inline std::vector<PixelImage> bench_corpus(const BenchConfig& cfg) {
    if (cfg.corpus_path.empty()) return synth_corpus(cfg.corpus);
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(cfg.corpus_path)) {
        if (e.path().extension() == ".pgm") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error("bench: no .pgm files in " + cfg.corpus_path);
    if (cfg.corpus.count > 0 && files.size() > static_cast<std::size_t>(cfg.corpus.count))
        files.resize(static_cast<std::size_t>(cfg.corpus.count));
    std::vector<PixelImage> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back(read_pgm_file(f.string()));
    return out;
}

inline SchemeConfig make_scheme_config(const BenchConfig& cfg, Scheme s, int qc,
                                       double payload, std::uint64_t key) {
    SchemeConfig sc = default_config(s);
    if (!cfg.domain.empty()) sc.domain = parse_domain(cfg.domain);
    sc.quality = qc;
    sc.payload = payload;
    sc.key = key;
    sc.stc.h = cfg.stc_h;
    sc.alpha = cfg.alpha;
    sc.rs_t = cfg.rs_t;
    sc.gmas_rs_t = cfg.gmas_rs_t;
    sc.double_layer = cfg.double_layer;
    sc.modification_passes = cfg.modification_passes;
    return sc;
}

struct BenchRow {
    std::string scheme;
    int qc = 0;
    double payload = 0.0;
    int image_id = 0;
    std::size_t bit_errors = 0;
    std::size_t msg_len = 0;
    int rs_failures = 0;
    std::size_t seq_errors_modified = 0;
    std::size_t seq_errors_unmodified = 0;
    bool valid = false;
};

struct BenchCurvePoint {
    std::string scheme;
    int qc = 0;
    double payload = 0.0;
    int images = 0;
    double avg_error_rate = 0.0;
    std::size_t seq_errors_modified = 0;
    std::size_t seq_errors_unmodified = 0;
    int rs_failures = 0;
};

struct RobustnessReport {
    std::vector<BenchRow> rows; // only valid rows
    std::vector<BenchCurvePoint> curves;
    std::vector<std::string> errors;
    double runtime_seconds = 0.0;
    BenchConfig config;
};

namespace bench_detail {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Per-task seed: stable under any execution order or job count.
inline std::uint64_t task_seed(std::uint64_t master, int image, int qc, std::size_t si,
                               std::size_t pi) {
    std::uint64_t s = derive_seed(master, static_cast<std::uint64_t>(image));
    s = derive_seed(s, static_cast<std::uint64_t>(qc));
    s = derive_seed(s, static_cast<std::uint64_t>(si));
    return derive_seed(s, static_cast<std::uint64_t>(pi));
}

inline void parallel_images(int n, int jobs, const std::function<void(int)>& work) {
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) work(i);
        return;
    }
    std::atomic<int> next{0};
    int nthreads = jobs < n ? jobs : n;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Post-channel sequence errors at the domain positions, split by whether the
// element was flipped during embedding.
inline void count_seq_errors(const EmbedResult& er, const CoefImage& attacked,
                             const SchemeConfig& sc, std::size_t& modified,
                             std::size_t& unmodified) {
    BitVec got = extract_bits(attacked, sc.domain, quant_table(sc.quality));
    modified = unmodified = 0;
    for (std::size_t e = 0; e < got.size(); ++e) {
        if (got[e] == er.stego_bits[e]) continue;
        if (er.stego_bits[e] != er.cover_bits[e])
            ++modified;
        else
            ++unmodified;
    }
}

} // namespace bench_detail

inline RobustnessReport run_robustness(const BenchConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RobustnessReport rep;
    rep.config = cfg;
    std::vector<PixelImage> corpus = bench_corpus(cfg);
    const int nimg = static_cast<int>(corpus.size());
    std::vector<Scheme> schemes;
    for (const auto& name : cfg.schemes) schemes.push_back(parse_scheme(name));

    const std::size_t cells = cfg.schemes.size() * cfg.qualities.size() * cfg.payloads.size();
    std::vector<BenchRow> rows(cells * static_cast<std::size_t>(nimg));
    std::mutex errors_mu;

    bench_detail::parallel_images(nimg, cfg.jobs, [&](int img) {
        for (std::size_t qi = 0; qi < cfg.qualities.size(); ++qi) {
            const int qc = cfg.qualities[qi];
            CoefImage cover;
            Plane rho;
            try {
                cover = compress(corpus[static_cast<std::size_t>(img)], qc);
                rho = juniward_costs(cover);
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lk(errors_mu);
                rep.errors.push_back("image " + std::to_string(img) + " qc " +
                                     std::to_string(qc) + ": " + ex.what());
                continue;
            }
            const std::size_t nnz = nonzero_ac_count(cover);
            for (std::size_t si = 0; si < schemes.size(); ++si) {
                for (std::size_t pi = 0; pi < cfg.payloads.size(); ++pi) {
                    const double payload = cfg.payloads[pi];
                    std::uint64_t ts = bench_detail::task_seed(cfg.seed, img, qc, si, pi);
                    std::size_t msg_len =
                        static_cast<std::size_t>(payload * static_cast<double>(nnz));
                    BitVec message = Rng(ts).next_bits(msg_len);
                    SchemeConfig sc = make_scheme_config(cfg, schemes[si], qc, payload,
                                                         derive_seed(ts, 99));
                    BenchRow row;
                    row.scheme = cfg.schemes[si];
                    row.qc = qc;
                    row.payload = payload;
                    row.image_id = img;
                    row.msg_len = msg_len;
                    try {
                        EmbedResult er = embed(cover, message, sc,
                                               &corpus[static_cast<std::size_t>(img)], &rho);
                        CoefImage attacked =
                            cfg.attack ? recompress(er.stego, ChannelSpec{qc, 1}) : er.stego;
                        ExtractResult ex = extract(attacked, sc, msg_len);
                        row.bit_errors = hamming_distance(message, ex.message);
                        row.rs_failures = ex.rs_failures;
                        bench_detail::count_seq_errors(er, attacked, sc,
                                                       row.seq_errors_modified,
                                                       row.seq_errors_unmodified);
                        row.valid = true;
                    } catch (const std::exception& ex) {
                        std::lock_guard<std::mutex> lk(errors_mu);
                        rep.errors.push_back(row.scheme + " qc " + std::to_string(qc) +
                                             " payload " +
                                             bench_detail::format_double(payload) +
                                             " image " + std::to_string(img) + ": " +
                                             ex.what());
                    }
                    std::size_t idx =
                        ((si * cfg.qualities.size() + qi) * cfg.payloads.size() + pi) *
                            static_cast<std::size_t>(nimg) +
                        static_cast<std::size_t>(img);
                    rows[idx] = std::move(row);
                }
            }
        }
    });

    // deterministic order: scheme, qc, payload, image
    for (auto& r : rows)
        if (r.valid) rep.rows.push_back(std::move(r));

    for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
        for (std::size_t qi = 0; qi < cfg.qualities.size(); ++qi) {
            for (std::size_t pi = 0; pi < cfg.payloads.size(); ++pi) {
                BenchCurvePoint pt;
                pt.scheme = cfg.schemes[si];
                pt.qc = cfg.qualities[qi];
                pt.payload = cfg.payloads[pi];
                double rate_sum = 0.0;
                for (const auto& r : rep.rows) {
                    if (r.scheme != pt.scheme || r.qc != pt.qc || r.payload != pt.payload)
                        continue;
                    ++pt.images;
                    if (r.msg_len > 0)
                        rate_sum += static_cast<double>(r.bit_errors) /
                                    static_cast<double>(r.msg_len);
                    pt.seq_errors_modified += r.seq_errors_modified;
                    pt.seq_errors_unmodified += r.seq_errors_unmodified;
                    pt.rs_failures += r.rs_failures;
                }
                if (pt.images > 0) pt.avg_error_rate = rate_sum / pt.images;
                rep.curves.push_back(std::move(pt));
            }
        }
    }

    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline void write_rows_csv(const std::vector<BenchRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("bench: cannot write " + path);
    out << "scheme,qc,payload,image_id,bit_errors,msg_len,rs_failures,"
           "seq_errors_modified,seq_errors_unmodified\n";
    for (const auto& r : rows) {
        out << r.scheme << ',' << r.qc << ',' << bench_detail::format_double(r.payload)
            << ',' << r.image_id << ',' << r.bit_errors << ',' << r.msg_len << ','
            << r.rs_failures << ',' << r.seq_errors_modified << ','
            << r.seq_errors_unmodified << '\n';
    }
}

inline void write_curves_csv(const std::vector<BenchCurvePoint>& curves,
                             const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("bench: cannot write " + path);
    out << "scheme,qc,payload,images,avg_error_rate,seq_errors_modified,"
           "seq_errors_unmodified,rs_failures\n";
    for (const auto& c : curves) {
        out << c.scheme << ',' << c.qc << ',' << bench_detail::format_double(c.payload)
            << ',' << c.images << ',' << bench_detail::format_double(c.avg_error_rate)
            << ',' << c.seq_errors_modified << ',' << c.seq_errors_unmodified << ','
            << c.rs_failures << '\n';
    }
}

inline nlohmann::json report_json(const RobustnessReport& rep) {
    nlohmann::json j;
    j["config"] = to_json(rep.config);
    nlohmann::json curves = nlohmann::json::array();
    for (const auto& c : rep.curves) {
        curves.push_back({{"scheme", c.scheme},
                          {"qc", c.qc},
                          {"payload", c.payload},
                          {"images", c.images},
                          {"avg_error_rate", c.avg_error_rate},
                          {"seq_errors_modified", c.seq_errors_modified},
                          {"seq_errors_unmodified", c.seq_errors_unmodified},
                          {"rs_failures", c.rs_failures}});
    }
    j["curves"] = curves;
    j["errors"] = rep.errors;
    j["runtime_seconds"] = rep.runtime_seconds;
    return j;
}

// Sequence-error analysis: how many domain elements come back wrong after the
// channel, split by modified/unmodified, for the raw embed, the stabilized
// embed, and a zero-payload embed (pure codec instability).
struct AnalysisRow {
    int image_id = 0;
    std::string variant;
    std::size_t seq_errors_modified = 0;
    std::size_t seq_errors_unmodified = 0;
    std::size_t modified_count = 0;
    std::size_t sequence_len = 0;
};

struct AnalysisReport {
    std::vector<AnalysisRow> rows;
    std::vector<std::string> errors;
    double runtime_seconds = 0.0;
    BenchConfig config;
};

inline AnalysisReport run_sequence_error_analysis(const BenchConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    AnalysisReport rep;
    rep.config = cfg;
    std::vector<PixelImage> corpus = bench_corpus(cfg);
    const int nimg = static_cast<int>(corpus.size());
    const int qc = cfg.qualities.empty() ? 65 : cfg.qualities.front();
    const std::string domain = cfg.domain.empty() ? "E_2345" : cfg.domain;

    std::vector<std::array<AnalysisRow, 3>> slots(static_cast<std::size_t>(nimg));
    std::mutex errors_mu;
    bench_detail::parallel_images(nimg, cfg.jobs, [&](int img) {
        try {
            CoefImage cover = compress(corpus[static_cast<std::size_t>(img)], qc);
            Plane rho = juniward_costs(cover);
            std::uint64_t ts = bench_detail::task_seed(cfg.seed, img, qc, 0, 0);
            std::size_t msg_len = static_cast<std::size_t>(
                cfg.analysis_payload * static_cast<double>(nonzero_ac_count(cover)));
            BitVec message = Rng(ts).next_bits(msg_len);

            SchemeConfig sc = make_scheme_config(cfg, Scheme::proposed, qc,
                                                 cfg.analysis_payload, derive_seed(ts, 99));
            sc.domain = parse_domain(domain);
            ChannelSpec ch{qc, 1};

            auto fill = [&](int slot, const char* variant, const EmbedResult& er) {
                AnalysisRow row;
                row.image_id = img;
                row.variant = variant;
                row.sequence_len = er.stego_bits.size();
                for (std::size_t e = 0; e < er.stego_bits.size(); ++e)
                    if (er.stego_bits[e] != er.cover_bits[e]) ++row.modified_count;
                CoefImage attacked = recompress(er.stego, ch);
                bench_detail::count_seq_errors(er, attacked, sc, row.seq_errors_modified,
                                               row.seq_errors_unmodified);
                slots[static_cast<std::size_t>(img)][static_cast<std::size_t>(slot)] =
                    std::move(row);
            };

            SchemeConfig raw = sc;
            raw.modification_passes = 0;
            fill(0, "raw", embed_proposed(cover, message, raw, &rho));
            fill(1, "stabilized", embed_proposed(cover, message, sc, &rho));

            // zero payload: untouched cover through the channel
            EmbedResult zero;
            zero.stego = cover;
            zero.meta = extract_cover(cover, sc.domain);
            zero.cover_bits = zero.meta.bits;
            zero.stego_bits = zero.meta.bits;
            fill(2, "zero_payload", zero);
        } catch (const std::exception& ex) {
            std::lock_guard<std::mutex> lk(errors_mu);
            rep.errors.push_back("image " + std::to_string(img) + ": " + ex.what());
        }
    });

    for (const auto& s : slots)
        for (const auto& row : s)
            if (!row.variant.empty()) rep.rows.push_back(row);
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline void write_analysis_csv(const AnalysisReport& rep, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("bench: cannot write " + path);
    out << "image_id,variant,seq_errors_modified,seq_errors_unmodified,"
           "modified_count,sequence_len\n";
    for (const auto& r : rep.rows) {
        out << r.image_id << ',' << r.variant << ',' << r.seq_errors_modified << ','
            << r.seq_errors_unmodified << ',' << r.modified_count << ','
            << r.sequence_len << '\n';
    }
}

inline nlohmann::json analysis_json(const AnalysisReport& rep) {
    nlohmann::json j;
    j["config"] = to_json(rep.config);
    nlohmann::json totals;
    for (const char* variant : {"raw", "stabilized", "zero_payload"}) {
        std::size_t mod = 0, unmod = 0, flips = 0;
        for (const auto& r : rep.rows) {
            if (r.variant != variant) continue;
            mod += r.seq_errors_modified;
            unmod += r.seq_errors_unmodified;
            flips += r.modified_count;
        }
        totals[variant] = {{"seq_errors_modified", mod},
                           {"seq_errors_unmodified", unmod},
                           {"seq_errors_total", mod + unmod},
                           {"modified_count", flips}};
    }
    j["totals"] = totals;
    j["errors"] = rep.errors;
    j["runtime_seconds"] = rep.runtime_seconds;
    return j;
}

} // namespace rsteg
