#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "berlab/campaign.hpp"
#include "support.hpp"

using namespace berlab;
using testing::max_abs;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::bad_params;
}

CampaignConfig small(std::vector<std::string> filter, int trials) {
  CampaignConfig config;
  config.checker_filter = std::move(filter);
  config.trials_per_checker = trials;
  return config;
}

const Aggregate* find(const Report& report, const std::string& label, std::optional<BerConvention> convention) {
  for (const auto& a : report.results) {
    if (a.label() == label && a.convention == convention) return &a;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("ensembles") {
  for (Ensemble kind : all_ensembles()) {
    CHECK(ensemble_from_string(to_string(kind)) == kind);
    for (Eigen::Index n : {1, 3, 6}) {
      const ComplexMatrix a = generate_operator(kind, n, 7);
      CHECK(a.rows() == n);
      CHECK(a == generate_operator(kind, n, 7));
      CHECK(all_finite(a));
    }
  }
  CHECK_FALSE(ensemble_from_string("wigner").has_value());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix p = generate_operator(Ensemble::psd, 5, seed);
    CHECK(hermitian_eig(p).eigenvalues.minCoeff() >= -1e-12 * operator_norm(p));
    const ComplexMatrix u = generate_operator(Ensemble::unitary, 5, seed);
    CHECK(max_abs(u.adjoint() * u - ComplexMatrix::Identity(5, 5)) <= 1e-12);
    const ComplexMatrix v = generate_operator(Ensemble::partial_isometry, 5, seed);
    CHECK(max_abs(v * v.adjoint() * v - v) <= 1e-12);
    CHECK(operator_norm(generate_operator(Ensemble::contraction, 5, seed)) <= 1 + 1e-12);
    const ComplexMatrix h = generate_operator(Ensemble::hermitian, 5, seed);
    CHECK(max_abs(h - h.adjoint()) == 0.0);
    const ComplexMatrix z = generate_operator(Ensemble::nilpotent, 5, seed);
    CHECK(max_abs(z.diagonal()) == 0.0);
    CHECK(max_abs(z.triangularView<Eigen::Lower>().toDenseMatrix()) == 0.0);
  }
  Rng rng(1);
  CHECK(kind_of([&] { draw_operator(Ensemble::ginibre, 0, rng); }) == ErrorKind::bad_params);
  CHECK(draw_operator(Ensemble::ginibre, 3, 2, rng).cols() == 2);
}

TEST_CASE("draw_space") {
  Rng rng(3);
  for (KernelTag tag : {KernelTag::identity, KernelTag::szego, KernelTag::bergman, KernelTag::gaussian}) {
    for (Eigen::Index n : {1, 4, 6}) {
      const auto space = draw_space({tag, 1.0}, n, rng);
      CHECK(space->dim() == n);
      for (const Point& z : space->points()) {
        if (tag == KernelTag::szego || tag == KernelTag::bergman) CHECK(std::abs(z) < 1);
      }
    }
  }
}

TEST_CASE("config parsing") {
  CampaignConfig config;
  apply_config_text(config,
                    "# comment\n"
                    "seed = 7\n"
                    "trials = 12   # trailing\n"
                    "dims = 2x2, 3x1\n"
                    "kernel = szego,gaussian\n"
                    "gaussian_sigma = 0.5\n"
                    "theorems = T24a,L21b\n"
                    "r = 1, 2\n"
                    "jobs = 2\n");
  CHECK(config.master_seed == 7);
  CHECK(config.trials_per_checker == 12);
  REQUIRE(config.dims.size() == 2);
  CHECK(config.dims[1] == Dims{3, 1});
  REQUIRE(config.kernel_families.size() == 2);
  CHECK(config.kernel_families[1].sigma == 0.5);
  CHECK(config.checker_filter == std::vector<std::string>{"T24a", "L21b"});
  CHECK(config.grid.r == std::vector<double>{1, 2});
  CHECK(config.jobs == 2);
  validate(config);

  const auto invalid = [](const char* text) {
    return kind_of([&] {
      CampaignConfig c;
      apply_config_text(c, text);
      validate(c);
    });
  };
  CHECK(invalid("bogus = 1") == ErrorKind::config_invalid);
  CHECK(invalid("trials = 0") == ErrorKind::config_invalid);
  CHECK(invalid("trials = many") == ErrorKind::config_invalid);
  CHECK(invalid("dims = 2by2") == ErrorKind::config_invalid);
  CHECK(invalid("dims = 0x2") == ErrorKind::config_invalid);
  CHECK(invalid("kernel = hardy") == ErrorKind::config_invalid);
  CHECK(invalid("theorems = T99") == ErrorKind::config_invalid);
  CHECK(invalid("r = 0.5") == ErrorKind::config_invalid);
  CHECK(invalid("p = 1.5") == ErrorKind::config_invalid);
  CHECK(invalid("format = xml") == ErrorKind::config_invalid);
  CHECK(invalid("jobs = 0") == ErrorKind::config_invalid);
  CHECK(invalid("tol = -1") == ErrorKind::config_invalid);
  CHECK(invalid("no equals sign") == ErrorKind::config_invalid);
  CHECK(kind_of([] {
          CampaignConfig c;
          apply_config_file(c, "/nonexistent/berlab.conf");
        }) == ErrorKind::io_error);
  CHECK(to_json(CampaignConfig{})["master_seed"] == 42);
}

TEST_CASE("trial seeds") {
  CHECK(trial_seed(42, "T24a", 0) == trial_seed(42, "T24a", 0));
  CHECK(trial_seed(42, "T24a", 0) != trial_seed(42, "T24a", 1));
  CHECK(trial_seed(42, "T24a", 0) != trial_seed(42, "T24b", 0));
  CHECK(trial_seed(42, "T24a", 0) != trial_seed(43, "T24a", 0));
}

TEST_CASE("small campaign on the off-diagonal bound") {
  CampaignConfig config = small({"L21b"}, 10);
  config.dims = {{2, 2}};
  config.kernel_families = {{KernelTag::identity, 1.0}};
  const Report report = run_campaign(config);
  CHECK(report.gating_failures == 0);
  CHECK(report.anomalies.empty());
  CHECK_FALSE(report.wall_time_ms.has_value());
  REQUIRE_FALSE(report.results.empty());
  for (const auto& a : report.results) {
    CHECK(a.theorem_id == "L21b");
    CHECK(a.trials == 10);
    CHECK(a.failures == 0);
    CHECK(a.min_slack <= a.mean_slack);
  }
  CHECK(find(report, "L21b:general", BerConvention::joint) != nullptr);
}

TEST_CASE("empty filter covers every checker") {
  const CampaignConfig config = small({}, 1);
  CHECK(selected_checkers(config).size() == checker_registry().size());
  const Report report = run_campaign(config);
  std::set<std::string> ids;
  for (const auto& a : report.results) ids.insert(a.theorem_id);
  CHECK(ids.size() == checker_registry().size());
}

TEST_CASE("campaigns are deterministic") {
  CampaignConfig config = small({"T24a", "C27", "P39", "YOUNG2", "T31"}, 25);
  const std::string one = dump_json(to_json(run_campaign(config)));
  CHECK(one == dump_json(to_json(run_campaign(config))));
  config.jobs = 3;
  const std::string threaded = dump_json(to_json(run_campaign(config)));
  // The config block records jobs; the results must match exactly.
  CHECK(Json::parse(one)["results"] == Json::parse(threaded)["results"]);
}

TEST_CASE("seed isolation") {
  // Adding a checker leaves the trials of the others untouched.
  const Report alone = run_campaign(small({"T24a"}, 20));
  const Report both = run_campaign(small({"T24a", "C28"}, 20));
  const Aggregate* a = find(alone, "T24a", BerConvention::pair);
  const Aggregate* b = find(both, "T24a", BerConvention::pair);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->min_slack == b->min_slack);
  CHECK(a->mean_slack == b->mean_slack);
  CHECK(a->witness.input_digest == b->witness.input_digest);
}

TEST_CASE("case reproduces a witness") {
  const CampaignConfig config = small({"T29"}, 30);
  const Report report = run_campaign(config);
  for (const auto& a : report.results) {
    const CheckerInfo& info = checker_info(a.theorem_id);
    const auto certs = evaluate_trial(info, draw_trial(config, info, a.witness.witness.seed));
    bool matched = false;
    for (const auto& c : certs) {
      if (c.label() == a.label() && c.convention == a.convention) {
        CHECK(c.slack == a.min_slack);
        CHECK(c.input_digest == a.witness.input_digest);
        matched = true;
      }
    }
    CHECK(matched);
  }
}

TEST_CASE("explore") {
  CampaignConfig config = small({"T24a"}, 20);
  for (const char* id : {"T24a", "C28", "P39", "I37"}) {
    const Report start = run_campaign(small({id}, 20));
    double start_slack = INFINITY;
    for (const auto& a : start.results) {
      if (a.mode == Mode::gating) start_slack = std::min(start_slack, a.min_slack);
    }
    const Certificate found = explore(small({id}, 20), id, 40);
    CHECK(found.theorem_id == id);
    CHECK(found.slack <= start_slack);
    const Certificate unchanged = explore(small({id}, 20), id, 0);
    CHECK(unchanged.slack == start_slack);
  }

  config.dims = {{1, 1}};
  config.kernel_families = {{KernelTag::identity, 1.0}};
  config.grid.r = {1.0};
  config.grid.p = {0.5};
  CHECK(explore(config, "T24a", 200).slack <= 1e-6);

  CampaignConfig scalar = small({"YOUNG2"}, 20);
  CHECK(std::abs(explore(scalar, "YOUNG2", 200).slack) <= 1e-12);
  CHECK(kind_of([&] { explore(scalar, "YOUNG2", -1); }) == ErrorKind::bad_params);
  CHECK(kind_of([&] { explore(scalar, "T99", 10); }) == ErrorKind::bad_params);
}

TEST_CASE("report output") {
  Report empty;
  empty.config = to_json(CampaignConfig{});
  const Json parsed = Json::parse(dump_json(to_json(empty)));
  CHECK(parsed["results"].empty());
  CHECK(parsed["gating_failures"] == 0);
  CHECK(parsed["wall_time_ms"].is_null());
  CHECK(parsed["version"] == version_string);

  const Report report = run_campaign(small({"C27", "YOUNG2"}, 5));
  std::ostringstream csv;
  write_csv(csv, report);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "theorem_id,convention,trials,failures,min_slack,mean_slack,witness_digest");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
    ++rows;
  }
  CHECK(rows == report.results.size());

  const std::string text = dump_json(to_json(report));
  CHECK(dump_json(to_json(report_from_json(Json::parse(text)))) == text);

  std::ostringstream sink;
  CHECK(kind_of([&] { emit_report(report, "xml", "", sink); }) == ErrorKind::config_invalid);
  CHECK(kind_of([&] { emit_report(report, "json", "/nonexistent/dir/out.json", sink); }) == ErrorKind::io_error);
  emit_report(report, "json", "", sink);
  CHECK(Json::parse(sink.str())["results"].size() == report.results.size());
}
