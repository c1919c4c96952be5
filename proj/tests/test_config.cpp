#include <string>

#include "ctembed/errors.hpp"
#include "ctembed/pipeline.hpp"
#include "doctest.h"

using namespace ctembed;

TEST_SUITE("config") {

TEST_CASE("default config round-trips through its own text") {
  PipelineConfig cfg;
  const std::string text = effective_config_text(cfg);
  const PipelineConfig reparsed = parse_pipeline_config(text);
  CHECK(effective_config_text(reparsed) == text);

  // defaults survive the trip
  CHECK(reparsed.input_format == "fts");
  CHECK(reparsed.output_dir == ".");
  CHECK(reparsed.seed == 0);
  CHECK(reparsed.graph.n_neighbors == 9);
  CHECK(reparsed.graph.sigma_multiplier == 2.0);
  CHECK_FALSE(reparsed.graph.sigma.has_value());
  CHECK_FALSE(reparsed.embedding.k_auto);
  CHECK(reparsed.embedding.k == 2);
  CHECK(reparsed.synth.n_samples == 80);
  CHECK(reparsed.roc.realizations == 20);
  CHECK(reparsed.baseline.method == "pca");
  CHECK(reparsed.oracle.n_graphs == 100);
}

TEST_CASE("non-default config round-trips byte for byte") {
  PipelineConfig cfg;
  cfg.input_path = "data/run.fts";
  cfg.input_format = "csv";
  cfg.mask_path = "data/mask.csv";
  cfg.stimulus_path = "data/stim.csv";
  cfg.output_dir = "out/run-3";
  cfg.seed = 987654321;
  cfg.preprocess.detrend = true;
  cfg.preprocess.svd_modes = 3;
  cfg.graph.n_neighbors = 12;
  cfg.graph.sigma_multiplier = 1.75;
  cfg.graph.sigma = 16.949119967257985;
  cfg.embedding.k_auto = true;
  cfg.embedding.k_max = 15;
  cfg.embedding.knee_theta = 0.22;
  cfg.cluster.n_clusters = 4;
  cfg.cluster.radius_quantile = 0.88;
  cfg.cluster.min_cluster_fraction = 0.02;
  cfg.cluster.n_restarts = 7;
  cfg.synth.phantom.grid_width = 24;
  cfg.synth.phantom.grid_height = 26;
  cfg.synth.phantom.center_x = 11.53;
  cfg.synth.phantom.b1_range = {5.0 / 6.0, 10.0 / 6.0};
  cfg.synth.phantom.background = PhantomSpec::Background::pool;
  cfg.synth.phantom.pool_path = "pool.fts";
  cfg.synth.tr_seconds = 2.5;
  cfg.synth.realizations = 3;
  cfg.roc.realizations = 5;
  cfg.baseline.method = "glm";
  cfg.baseline.dale_regressor = true;
  cfg.oracle.max_nodes = 12;

  const std::string text = effective_config_text(cfg);
  const PipelineConfig reparsed = parse_pipeline_config(text);
  CHECK(effective_config_text(reparsed) == text);

  CHECK(reparsed.input_path == "data/run.fts");
  CHECK(reparsed.input_format == "csv");
  CHECK(reparsed.seed == 987654321);
  CHECK(reparsed.preprocess.detrend);
  CHECK(reparsed.preprocess.svd_modes == 3);
  REQUIRE(reparsed.graph.sigma.has_value());
  CHECK(*reparsed.graph.sigma == 16.949119967257985);
  CHECK(reparsed.embedding.k_auto);
  CHECK(reparsed.embedding.k_max == 15);
  CHECK(reparsed.cluster.radius_quantile == 0.88);
  CHECK(reparsed.synth.phantom.b1_range.first == 5.0 / 6.0);
  CHECK(reparsed.synth.phantom.b1_range.second == 10.0 / 6.0);
  CHECK(reparsed.synth.phantom.background == PhantomSpec::Background::pool);
  CHECK(reparsed.synth.tr_seconds == 2.5);
  CHECK(reparsed.baseline.method == "glm");
  CHECK(reparsed.baseline.dale_regressor);
  CHECK(reparsed.oracle.max_nodes == 12);
}

TEST_CASE("parser tolerates comments, blank lines, and loose spacing") {
  const std::string text =
      "# run configuration\n"
      "\n"
      "seed = 7   # inline comment\n"
      "  input=  a b.csv  \n"
      "[ graph ]\n"
      "\tn_neighbors\t=\t4\n"
      "sigma = 2.5\n"
      "\n"
      "[embedding]\n"
      "k = auto\n";
  const PipelineConfig cfg = parse_pipeline_config(text);
  CHECK(cfg.seed == 7);
  CHECK(cfg.input_path == "a b.csv");
  CHECK(cfg.graph.n_neighbors == 4);
  REQUIRE(cfg.graph.sigma.has_value());
  CHECK(*cfg.graph.sigma == 2.5);
  CHECK(cfg.embedding.k_auto);
}

TEST_CASE("later entries override earlier ones") {
  const PipelineConfig cfg = parse_pipeline_config("seed = 1\nseed = 2\n");
  CHECK(cfg.seed == 2);
}

TEST_CASE("k accepts auto or an explicit integer") {
  PipelineConfig a = parse_pipeline_config("[embedding]\nk = auto\n");
  CHECK(a.embedding.k_auto);
  PipelineConfig b = parse_pipeline_config("[embedding]\nk = 7\n");
  CHECK_FALSE(b.embedding.k_auto);
  CHECK(b.embedding.k == 7);
  // explicit k after auto switches back
  PipelineConfig c = parse_pipeline_config("[embedding]\nk = auto\nk = 3\n");
  CHECK_FALSE(c.embedding.k_auto);
  CHECK(c.embedding.k == 3);
}

TEST_CASE("structural errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_pipeline_config("seed = 1\n[graph\n"),
                       doctest::Contains("line 2"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config("seed = 1\n[graph\n"),
                       doctest::Contains("unterminated"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config("\n\njust words\n"),
                       doctest::Contains("line 3"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config("= 5\n"), doctest::Contains("empty key"), Error);
}

TEST_CASE("unknown keys and sections are rejected") {
  CHECK_THROWS_WITH_AS(parse_pipeline_config("bogus = 1\n"),
                       doctest::Contains("unknown config key 'bogus'"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config("[graph]\nbogus = 1\n"),
                       doctest::Contains("unknown key 'bogus' in [graph]"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config("[nope]\nx = 1\n"),
                       doctest::Contains("unknown config section [nope]"), Error);
}

TEST_CASE("values must parse whole") {
  CHECK_THROWS_WITH_AS(parse_pipeline_config("[graph]\nn_neighbors = 3.5\n"),
                       doctest::Contains("as an integer"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config("[graph]\nsigma = 1.0x\n"),
                       doctest::Contains("as a number"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config("[preprocess]\ndetrend = yes\n"),
                       doctest::Contains("true or false"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config("seed = -1\n"),
                       doctest::Contains("nonnegative integer"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config("format = tsv\n"),
                       doctest::Contains("fts or csv"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config("[synth]\nbackground = white\n"),
                       doctest::Contains("ar1 or pool"), Error);
  CHECK_THROWS_WITH_AS(parse_pipeline_config("[baseline]\nmethod = tsne\n"),
                       doctest::Contains("pca, isomap, or glm"), Error);
  // exceptions map to the invalid-input error code
  try {
    parse_pipeline_config("seed = x\n");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == errc::invalid_input);
  }
}

TEST_CASE("set_config_value addresses keys with optional section prefix") {
  PipelineConfig cfg;
  set_config_value(cfg, "seed", "42");
  CHECK(cfg.seed == 42);
  set_config_value(cfg, "graph.n_neighbors", "5");
  CHECK(cfg.graph.n_neighbors == 5);
  set_config_value(cfg, "embedding.k", "auto");
  CHECK(cfg.embedding.k_auto);
  set_config_value(cfg, "synth.b1_min", "0.75");
  CHECK(cfg.synth.phantom.b1_range.first == 0.75);
  set_config_value(cfg, " graph . sigma ", " 1.25 ");
  REQUIRE(cfg.graph.sigma.has_value());
  CHECK(*cfg.graph.sigma == 1.25);

  CHECK_THROWS_WITH_AS(set_config_value(cfg, "graph.", "1"),
                       doctest::Contains("empty config key"), Error);
  CHECK_THROWS_WITH_AS(set_config_value(cfg, "graph.bogus", "1"),
                       doctest::Contains("unknown key 'bogus' in [graph]"), Error);
  CHECK_THROWS_WITH_AS(set_config_value(cfg, "bogus.x", "1"),
                       doctest::Contains("unknown config section"), Error);
}

}  // TEST_SUITE
