#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "encoding.hpp"
#include "experiment.hpp"
#include "io.hpp"
#include "synthgen.hpp"

using namespace bovw;
namespace fs = std::filesystem;

namespace {

SynthResult tiny_synth(std::uint64_t seed) {
    SynthConfig cfg;
    cfg.labels = 3;
    cfg.images_per_label = 9;
    cfg.features_per_image = 30;
    cfg.background_fraction = 0.4;
    cfg.words_per_label = 2;
    cfg.background_centers = 6;
    cfg.dim = 6;
    cfg.center_spread = 8.0;
    cfg.within_spread = 0.4;
    cfg.seed = Seed{seed};
    return generate(cfg);
}

Config tiny_config(const fs::path& out_dir) {
    Config cfg;
    cfg.set("out_dir", out_dir.string());
    cfg.set("strategies", "random,random_km,model,filt_model");
    cfg.set("vocab_sizes", "9,12");
    cfg.set("protocols", "holdout_clustering,class_balanced_svm");
    cfg.set("nc_values", "3,6");
    cfg.set("clustering_repeats", "2");
    cfg.set("repetitions", "2");
    cfg.set("per_class_learn", "6");
    cfg.set("per_class_labeled", "3");
    cfg.set("seed", "99");
    cfg.set("svm_epochs", "50");
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "bovw_test_experiment" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("experiment config parsing applies defaults and ranges") {
    Config cfg;
    cfg.set("vocab_sizes", "100");
    cfg.set("nc_values", "50:200:50");
    const auto ec = ExperimentConfig::from_config(cfg);
    CHECK(ec.strategies.size() == 4);
    CHECK(ec.protocols.size() == 2);
    CHECK(ec.nc_values == std::vector<std::size_t>{50, 100, 150, 200});
    CHECK(ec.construction_repeats == 3);
    CHECK(ec.clustering_repeats == 25);
    CHECK(ec.filter.alpha == 1.0);
    CHECK(ec.filter.max_files == 20);
    CHECK(ec.root_seed.value == 42);
    CHECK(ec.alpha_sweep.empty());

    cfg.set("alpha_sweep", "1");
    const auto swept = ExperimentConfig::from_config(cfg);
    CHECK(swept.alpha_sweep == std::vector<double>{0.8, 1.0, 1.25, 1.5});

    Config bad;
    CHECK_THROWS_AS(ExperimentConfig::from_config(bad), std::runtime_error);
    bad.set("vocab_sizes", "200,100");
    CHECK_THROWS_AS(ExperimentConfig::from_config(bad), std::runtime_error);

    Config unknown;
    unknown.set("vocab_sizes", "10");
    unknown.set("strategies", "bogus");
    CHECK_THROWS_AS(ExperimentConfig::from_config(unknown), std::invalid_argument);
}

TEST_CASE("config hash ignores workers and out_dir") {
    Config a;
    a.set("vocab_sizes", "10");
    a.set("workers", "1");
    a.set("out_dir", "x");
    Config b;
    b.set("vocab_sizes", "10");
    b.set("workers", "4");
    b.set("out_dir", "y");
    CHECK(ExperimentConfig::from_config(a).config_hash ==
          ExperimentConfig::from_config(b).config_hash);
    Config c;
    c.set("vocab_sizes", "20");
    CHECK(ExperimentConfig::from_config(a).config_hash !=
          ExperimentConfig::from_config(c).config_hash);
}

TEST_CASE("a sweep yields the full row grid") {
    const auto synth = tiny_synth(5);
    const auto out = fresh_dir("grid");
    const auto ec = ExperimentConfig::from_config(tiny_config(out));
    const auto result = run_experiment(synth.dataset, ec);
    CHECK(result.failures.empty());
    // strategies x sizes x reps x (|nc| for clustering + 1 for svm)
    CHECK(result.rows.size() == 4 * 2 * 2 * (2 + 1));
    CHECK(result.per_class.size() == result.rows.size() * 3);
    CHECK(fs::exists(out / "results.csv"));
    CHECK(fs::exists(out / "per_class.csv"));
    CHECK(fs::exists(out / "curve_aggregated_f.csv"));
    CHECK(fs::exists(out / "curve_tpr.csv"));
    CHECK(fs::exists(out / "roc.csv"));
    CHECK(fs::exists(out / "filter_report_a1_r0.csv"));

    // header comment carries the hash and seed
    const auto results = slurp(out / "results.csv");
    CHECK(results.find("# config_hash=" + ec.config_hash + " root_seed=99") == 0);
}

TEST_CASE("reruns and worker counts do not change the bytes") {
    const auto synth = tiny_synth(6);

    const auto out1 = fresh_dir("det1");
    auto cfg1 = tiny_config(out1);
    cfg1.set("workers", "1");
    run_experiment(synth.dataset, ExperimentConfig::from_config(cfg1));

    const auto out2 = fresh_dir("det2");
    auto cfg2 = tiny_config(out2);
    cfg2.set("workers", "4");
    run_experiment(synth.dataset, ExperimentConfig::from_config(cfg2));

    CHECK(slurp(out1 / "results.csv") == slurp(out2 / "results.csv"));
    CHECK(slurp(out1 / "per_class.csv") == slurp(out2 / "per_class.csv"));
    CHECK(slurp(out1 / "roc.csv") == slurp(out2 / "roc.csv"));
}

TEST_CASE("completed cells are reused on rerun") {
    const auto synth = tiny_synth(7);
    const auto out = fresh_dir("resume");
    auto cfg = tiny_config(out);
    cfg.set("strategies", "random");
    cfg.set("vocab_sizes", "9");
    cfg.set("repetitions", "1");
    const auto ec = ExperimentConfig::from_config(cfg);
    run_experiment(synth.dataset, ec);
    const auto first = slurp(out / "results.csv");

    const auto cell = out / "cells" / "random_m9_r0.csv";
    REQUIRE(fs::exists(cell));
    const auto cell_mtime = fs::last_write_time(cell);

    run_experiment(synth.dataset, ec);
    CHECK(slurp(out / "results.csv") == first);
    CHECK(fs::last_write_time(cell) == cell_mtime); // untouched, so reused

    // a stale cell from another config is recomputed
    std::ofstream(cell) << "# config_hash=deadbeef\nrow,bogus\n";
    run_experiment(synth.dataset, ec);
    CHECK(slurp(out / "results.csv") == first);
}

TEST_CASE("failing cells are recorded and the sweep continues") {
    const auto synth = tiny_synth(8);
    const auto out = fresh_dir("failures");
    auto cfg = tiny_config(out);
    // 9 features per label block would be fine, but 100000 words cannot be drawn
    cfg.set("vocab_sizes", "9,100000");
    cfg.set("repetitions", "1");
    const auto result = run_experiment(synth.dataset, ExperimentConfig::from_config(cfg));
    CHECK(result.partial());
    CHECK(result.failures.size() == 4); // one per strategy at m=100000
    CHECK(fs::exists(out / "failures.csv"));
    // the m=9 rows all survived
    CHECK(result.rows.size() == 4 * 1 * 1 * (2 + 1));
}

TEST_CASE("experiment cells encode the original features even for filt_model") {
    const auto synth = tiny_synth(9);
    const auto out = fresh_dir("encode_original");
    auto cfg = tiny_config(out);
    cfg.set("strategies", "filt_model");
    cfg.set("vocab_sizes", "9");
    cfg.set("repetitions", "1");
    const auto ec = ExperimentConfig::from_config(cfg);
    const auto result = run_experiment(synth.dataset, ec);
    REQUIRE(result.failures.empty());

    // replicate the cell by hand: filtered vocabulary, original encoding
    FilterParams filter = ec.filter;
    filter.seed = ec.root_seed.derive("filter/rep", 0);
    const auto filtered = filter_dataset(synth.dataset, filter);
    KMeansParams km = ec.kmeans;
    km.seed = ec.root_seed.derive("vocab").derive("filt_model").derive("m", 9).derive("rep", 0);
    auto vocab = build_dedicated(9, filtered.dataset, km);
    vocab.strategy = Strategy::filt_model;

    const auto encodings = encode_dataset(synth.dataset, vocab);
    const auto expect = evaluate_encodings(synth.dataset, encodings, ec, "filt_model");
    REQUIRE(expect.rows.size() >= result.rows.size());
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        CHECK(result.rows[i].macro_f == expect.rows[i].macro_f);
        CHECK(result.rows[i].macro_tpr == expect.rows[i].macro_tpr);
        CHECK(result.rows[i].nc == expect.rows[i].nc);
    }
}

TEST_CASE("alpha sweep rows land in their own table") {
    const auto synth = tiny_synth(10);
    const auto out = fresh_dir("alpha");
    auto cfg = tiny_config(out);
    cfg.set("strategies", "random");
    cfg.set("vocab_sizes", "9");
    cfg.set("repetitions", "1");
    cfg.set("alpha_sweep", "1");
    cfg.set("alpha_sweep_values", "0.8,1.5");
    const auto result = run_experiment(synth.dataset, ExperimentConfig::from_config(cfg));
    CHECK(result.failures.empty());
    CHECK(result.rows.size() == 1 * 1 * 1 * 3);
    CHECK(result.alpha_rows.size() == 2 * 1 * 1 * 3);
    CHECK(fs::exists(out / "alpha_sweep.csv"));
}
