#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rsteg/bench/bench.hpp"

using namespace rsteg;

namespace {

BenchConfig small_config() {
    BenchConfig cfg;
    cfg.corpus.count = 4;
    cfg.corpus.seed = 0xb3ac4;
    cfg.payloads = {0.03, 0.05};
    cfg.qualities = {65};
    cfg.seed = 77;
    return cfg;
}

std::string rows_string(const RobustnessReport& rep) {
    auto path = std::filesystem::temp_directory_path() / "rsteg_rows_tmp.csv";
    write_rows_csv(rep.rows, path.string());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("robustness runs with the same seed produce identical rows") {
    BenchConfig cfg = small_config();
    RobustnessReport a = run_robustness(cfg);
    std::string rows_a = rows_string(a);
    RobustnessReport b = run_robustness(cfg);
    std::string rows_b = rows_string(b);

    REQUIRE(a.errors.empty());
    REQUIRE(rows_a == rows_b);
    REQUIRE(a.rows.size() == 3 * 1 * 2 * 4);
    REQUIRE(a.curves.size() == 3 * 1 * 2);
}

TEST_CASE("a disabled channel leaves every row error free") {
    BenchConfig cfg = small_config();
    cfg.attack = false;
    RobustnessReport rep = run_robustness(cfg);
    REQUIRE(rep.errors.empty());
    REQUIRE(rep.rows.size() == 3 * 1 * 2 * 4);
    for (const auto& r : rep.rows) {
        REQUIRE(r.bit_errors == 0);
        REQUIRE(r.rs_failures == 0);
        REQUIRE(r.msg_len > 0);
    }
    for (const auto& c : rep.curves) REQUIRE(c.avg_error_rate == 0.0);
}

TEST_CASE("curve points aggregate their rows") {
    BenchConfig cfg = small_config();
    RobustnessReport rep = run_robustness(cfg);
    for (const auto& pt : rep.curves) {
        int images = 0;
        double rate = 0.0;
        std::size_t mod = 0, unmod = 0;
        for (const auto& r : rep.rows) {
            if (r.scheme != pt.scheme || r.qc != pt.qc || r.payload != pt.payload) continue;
            ++images;
            rate += static_cast<double>(r.bit_errors) / static_cast<double>(r.msg_len);
            mod += r.seq_errors_modified;
            unmod += r.seq_errors_unmodified;
        }
        REQUIRE(pt.images == images);
        REQUIRE(pt.seq_errors_modified == mod);
        REQUIRE(pt.seq_errors_unmodified == unmod);
        REQUIRE(pt.avg_error_rate == Catch::Approx(rate / images).epsilon(1e-12));
    }
}

TEST_CASE("bench config round trips through json") {
    BenchConfig cfg = small_config();
    cfg.domain = "E_345";
    cfg.attack = false;
    cfg.alpha = 0.5;
    nlohmann::json j = to_json(cfg);
    BenchConfig back;
    from_json_file(j, back);
    REQUIRE(back.corpus.count == cfg.corpus.count);
    REQUIRE(back.corpus.seed == cfg.corpus.seed);
    REQUIRE(back.payloads == cfg.payloads);
    REQUIRE(back.qualities == cfg.qualities);
    REQUIRE(back.domain == cfg.domain);
    REQUIRE(back.attack == cfg.attack);
    REQUIRE(back.alpha == cfg.alpha);

    auto path = std::filesystem::temp_directory_path() / "rsteg_bench_cfg.json";
    std::ofstream(path) << j.dump();
    setenv("RSTEG_CORPUS", "/tmp/rsteg_corpus_override", 1);
    BenchConfig loaded = load_bench_config(path.string());
    unsetenv("RSTEG_CORPUS");
    REQUIRE(loaded.corpus_path == "/tmp/rsteg_corpus_override");
    REQUIRE(loaded.payloads == cfg.payloads);
}

TEST_CASE("directory corpora load sorted and honor the count cap") {
    auto dir = std::filesystem::temp_directory_path() / "rsteg_corpus_dir";
    std::filesystem::create_directories(dir);
    CorpusSpec spec;
    spec.width = 48;
    spec.height = 40;
    for (int i = 0; i < 3; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "img_%02d.pgm", i);
        write_pgm_file((dir / name).string(), synth_image(spec, i));
    }
    BenchConfig cfg;
    cfg.corpus_path = dir.string();
    cfg.corpus.count = 0;
    auto all = bench_corpus(cfg);
    REQUIRE(all.size() == 3);
    REQUIRE(all[0].pixels == synth_image(spec, 0).pixels);
    REQUIRE(all[2].pixels == synth_image(spec, 2).pixels);

    cfg.corpus.count = 2;
    REQUIRE(bench_corpus(cfg).size() == 2);
}

TEST_CASE("sequence error analysis separates touched and untouched elements") {
    BenchConfig cfg;
    cfg.corpus.count = 3;
    cfg.seed = 5;
    AnalysisReport rep = run_sequence_error_analysis(cfg);
    REQUIRE(rep.errors.empty());
    REQUIRE(rep.rows.size() == 9);

    std::size_t raw_total = 0, stab_total = 0;
    for (const auto& r : rep.rows) {
        REQUIRE(r.sequence_len > 0);
        if (r.variant == "zero_payload") {
            REQUIRE(r.modified_count == 0);
            REQUIRE(r.seq_errors_modified == 0);
        } else {
            REQUIRE(r.modified_count > 0);
        }
        if (r.variant == "raw") raw_total += r.seq_errors_modified + r.seq_errors_unmodified;
        if (r.variant == "stabilized")
            stab_total += r.seq_errors_modified + r.seq_errors_unmodified;
    }
    REQUIRE(stab_total <= raw_total);

    nlohmann::json j = analysis_json(rep);
    REQUIRE(j["totals"]["raw"]["seq_errors_total"].get<std::size_t>() == raw_total);
    REQUIRE(j["totals"]["zero_payload"]["modified_count"].get<std::size_t>() == 0);
}
