#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "pgt/error.hpp"
#include "pgt/io/cache.hpp"
#include "pgt/io/experiments.hpp"
#include "pgt/io/formats.hpp"
#include "pgt/io/ingest.hpp"
#include "pgt/nf/units.hpp"
#include "support.hpp"

using namespace pgt;
using namespace pgt::io;

namespace {

const std::string kGood49 = "0,-7,-7,49,1,0.5254546821225724,4,2,-1,4,1,-1";
const std::string kGood81 = "0,-3,-1,81,1,0.8492874506461927,1,1,-1,1,1,0";

std::string table_text(const std::vector<std::string>& rows) {
  std::string s = std::string(kFieldTableHeader) + "\n";
  for (const auto& r : rows) s += r + "\n";
  return s;
}

IngestReport ingest_rows(const std::vector<std::string>& rows, IngestOptions opt = {}) {
  std::istringstream in(table_text(rows));
  return ingest_field_table(in, opt);
}

std::string reason_for(const std::string& row) {
  const auto rep = ingest_rows({row});
  if (rep.rejected.size() != 1) return "<accepted>";
  return rep.rejected[0].reason;
}

std::vector<nf::FieldRecord> data_table() {
  return ingest_field_table(std::string(PGT_DATA_DIR) + "/cubic_fields_disc_lt_1957.csv").accepted;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("pgt_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST(Formats, Doubles) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.0), "1");
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 4.618802153517006}) {
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_THROW(parse_double("1.0x"), InvalidInput);
  EXPECT_THROW(parse_double(""), InvalidInput);
  EXPECT_THROW(parse_integer("12.5"), InvalidInput);
  EXPECT_EQ(parse_integer(" -42 "), -42);
}

TEST(Formats, SpectrumRoundTrip) {
  testing_support::Gen g(61);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = g.spectrum(1 + trial % 3, 40);
    std::stringstream buf;
    write_spectrum(buf, s);
    const auto back = read_spectrum(buf);
    ASSERT_EQ(back.size(), s.size());
    ASSERT_EQ(back.rank(), s.rank());
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_EQ(back.label(i), s.label(i));
      EXPECT_EQ(back.flat_volume(i), s.flat_volume(i));
      EXPECT_EQ(back.det_factor(i), s.det_factor(i));
      for (std::size_t k = 0; k < s.rank(); ++k) EXPECT_EQ(back.lengths(i)[k], s.lengths(i)[k]);
    }
    std::stringstream again;
    write_spectrum(again, back);
    std::stringstream first;
    write_spectrum(first, s);
    EXPECT_EQ(again.str(), first.str());
  }
}

TEST(Formats, SpectrumErrors) {
  const std::string ok = "# pgt-spectrum 1\n# rank 1\n# provenance manual\nlabel,l1,flat_volume,det_factor\na,1.5,1,0.5\n";
  std::istringstream good(ok);
  EXPECT_EQ(read_spectrum(good).size(), 1u);
  for (const auto& bad : {
           std::string("# pgt-spectrum 2\n# rank 1\n# provenance manual\nlabel,l1,flat_volume,det_factor\n"),
           std::string("# pgt-polemodel 1\n# rank 1\n"),
           std::string("label,l1,flat_volume,det_factor\na,1.5,1,0.5\n"),
           std::string("# pgt-spectrum 1\n# rank 1\n# provenance manual\nlabel,l1,flat_volume,det_factor\na,1.5,1\n"),
           std::string("# pgt-spectrum 1\n# rank 1\n# provenance manual\nlabel,l1,flat_volume,det_factor\na,-1.5,1,0.5\n"),
           std::string("# pgt-spectrum 1\n# rank 1\n# provenance manual\nlabel,l1,flat_volume,det_factor\na,1.5,1,1.5\n"),
           std::string("# pgt-spectrum 1\n# rank 2\n# provenance manual\nlabel,l1,flat_volume,det_factor\na,1.5,1,0.5\n"),
       }) {
    std::istringstream in(bad);
    EXPECT_THROW(read_spectrum(in), InvalidInput) << bad;
  }
  const Spectrum s(ChamberBasis(1), {{{1.0}, 1.0, 0.5, "a,b"}}, Provenance::kManual);
  std::ostringstream out;
  EXPECT_THROW(write_spectrum(out, s), InvalidInput);
}

TEST(Formats, PoleModelRoundTrip) {
  const PoleModel m(2, 1, {{{Complex{0.5, 14.1}, Complex{1, 0}}, -2}, {{Complex{0.25, 0}, Complex{0.5, -3}}, 5}});
  std::stringstream buf;
  write_pole_model(buf, m);
  const auto back = read_pole_model(buf);
  ASSERT_EQ(back.terms().size(), m.terms().size());
  EXPECT_EQ(back.rank(), 2u);
  EXPECT_EQ(back.j(), 1);
  for (std::size_t i = 0; i < m.terms().size(); ++i) {
    EXPECT_EQ(back.terms()[i].coeff, m.terms()[i].coeff);
    EXPECT_EQ(back.terms()[i].theta, m.terms()[i].theta);
  }
}

TEST(Formats, FieldTableRoundTrip) {
  const auto records = data_table();
  std::ostringstream out;
  write_field_table(out, records);
  EXPECT_EQ(out.str(), read_file(std::string(PGT_DATA_DIR) + "/cubic_fields_disc_lt_1957.csv"));
}

TEST(Formats, WriteFileIsAtomicReplace) {
  const auto dir = scratch("write");
  const auto path = (dir / "sub" / "x.txt").string();
  write_file(path, "one\n");
  write_file(path, "two\n");
  EXPECT_EQ(read_file(path), "two\n");
  std::size_t n = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir / "sub")) (void)e, ++n;
  EXPECT_EQ(n, 1u);
  EXPECT_THROW(read_file((dir / "missing").string()), InvalidInput);
  std::filesystem::remove_all(dir);
}

TEST(Cache, RoundTripAndAppendOnly) {
  const auto dir = scratch("cache");
  const FieldCache cache(dir.string());
  const auto records = data_table();
  for (const auto& r : records) EXPECT_TRUE(cache.store(r));
  auto modified = records[0];
  modified.h = 7;
  EXPECT_FALSE(cache.store(modified));
  const auto back = cache.load(records[0].poly);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(back->h, 1);
  EXPECT_EQ(record_to_json(*back), record_to_json(records[0]));
  EXPECT_FALSE(cache.load({5, 5, 5}).has_value());
  const auto all = cache.load_all();
  ASSERT_EQ(all.size(), records.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(all[i].poly, records[i].poly);
    EXPECT_EQ(all[i].R, records[i].R);
    EXPECT_EQ(all[i].fundamental_units, records[i].fundamental_units);
    EXPECT_EQ(all[i].embeddings[1].value, records[i].embeddings[1].value);
  }
  EXPECT_EQ(cache.path_for({0, -7, -7}), (dir / "0_-7_-7.json").string());
  std::filesystem::remove_all(dir);
}

TEST(Cache, ComputedRecordRoundTrip) {
  auto r = nf::make_field_record({-1, -2, 1});
  const auto fu = nf::find_fundamental_units(r, 2);
  r.fundamental_units = {fu.units[0], fu.units[1]};
  r.R = fu.regulator;
  r.unit_status = fu.status;
  r.splitting[2] = nf::splitting_type(r.poly, 2);
  const auto text = record_to_json(r);
  const auto back = record_from_json(text);
  EXPECT_EQ(record_to_json(back), text);
  EXPECT_EQ(back.unit_status, nf::UnitStatus::kCandidate);
  EXPECT_EQ(back.splitting.at(2).f_p, 3);
  EXPECT_THROW(record_from_json("{\"format\":\"pgt-field\",\"version\":99}"), InvalidInput);
  EXPECT_THROW(record_from_json("not json"), InvalidInput);
}

TEST(Ingest, AcceptsTheBundledTable) {
  const auto records = data_table();
  ASSERT_EQ(records.size(), 58u);
  EXPECT_EQ(records.front().disc_field, 49);
  for (const auto& r : records) {
    EXPECT_EQ(r.source, nf::RecordSource::kIngested);
    EXPECT_TRUE(r.cert.units_verified);
    EXPECT_TRUE(r.cert.R_recomputed);
    EXPECT_TRUE(r.cert.maximal);
    EXPECT_EQ(r.h, 1);
  }
}

TEST(Ingest, RejectionReasons) {
  EXPECT_EQ(reason_for(kGood49), "<accepted>");
  EXPECT_EQ(reason_for("0,-7,x,49,1,0.52,4,2,-1,4,1,-1"), "malformed row");
  EXPECT_EQ(reason_for("0,-7,-7,49,1,0.52"), "malformed row");
  EXPECT_EQ(reason_for("0,0,-2,49,1,0.52,4,2,-1,4,1,-1"), "not a totally real cubic");
  EXPECT_EQ(reason_for("-2,-8,8,3136,1,0.52,4,2,-1,4,1,-1"), "order not maximal");
  EXPECT_EQ(reason_for("0,-7,-7,50,1,0.5254546821225724,4,2,-1,4,1,-1"), "discriminant mismatch");
  EXPECT_EQ(reason_for("0,-7,-7,49,0,0.5254546821225724,4,2,-1,4,1,-1"), "class number must be positive");
  EXPECT_EQ(reason_for("0,-7,-7,49,1,0.5254546821225724,4,2,0,4,1,-1"), "norm ≠ ±1");
  EXPECT_EQ(reason_for("0,-7,-7,49,1,0.5254546821225724,4,2,-1,4,2,-1"), "dependent units");
  EXPECT_EQ(reason_for("0,-7,-7,49,1,0.6,4,2,-1,4,1,-1"), "regulator mismatch");
  EXPECT_EQ(reason_for("0,-7,-7,49,2,0.5254546821225724,4,2,-1,4,1,-1"),
            "class number contradicts Minkowski certificate");

  IngestOptions s_opt;
  s_opt.S = {2, 13};
  const auto s_rep = ingest_rows({kGood49, kGood81}, s_opt);
  ASSERT_EQ(s_rep.rejected.size(), 1u);
  EXPECT_EQ(s_rep.rejected[0].reason, "S-condition fails");
  EXPECT_EQ(s_rep.rejected[0].line, 2u);

  const auto dup = ingest_rows({kGood49, kGood81, kGood49});
  ASSERT_EQ(dup.rejected.size(), 1u);
  EXPECT_EQ(dup.rejected[0].reason, "duplicate field");
  EXPECT_EQ(dup.rejected[0].line, 4u);
  EXPECT_EQ(dup.accepted.size(), 2u);

  std::ostringstream out;
  write_rejections(out, dup.rejected);
  EXPECT_NE(out.str().find("4,\"0,-7,-7\",duplicate field"), std::string::npos) << out.str();
}

TEST(Ingest, HeaderErrors) {
  std::istringstream none("");
  EXPECT_THROW(ingest_field_table(none), InvalidInput);
  std::istringstream wrong("poly_a,poly_b\n0,-7\n");
  EXPECT_THROW(ingest_field_table(wrong), InvalidInput);
  EXPECT_THROW(ingest_field_table(std::string("/nonexistent/table.csv")), InvalidInput);
}

TEST(Ingest, MinkowskiConsistency) {
  for (const auto& r : data_table()) {
    if (nf::minkowski_h1_certificate(r) == nf::MinkowskiVerdict::kHIsOne) {
      EXPECT_EQ(r.h, 1);
      EXPECT_TRUE(r.cert.h_certified_minkowski);
    }
  }
}

TEST(Drivers, GridPoints) {
  const auto g = grid_points({{1, 2}, {3, 4, 5}});
  ASSERT_EQ(g.size(), 6u);
  EXPECT_EQ(g[0], (std::vector<double>{1, 3}));
  EXPECT_EQ(g[1], (std::vector<double>{1, 4}));
  EXPECT_EQ(g[5], (std::vector<double>{2, 5}));
  EXPECT_THROW(grid_points({{1, 1}}), InvalidInput);
  EXPECT_THROW(grid_points({{2, 1}}), InvalidInput);
  EXPECT_THROW(grid_points({{}}), InvalidInput);
}

TEST(Drivers, ThetaMatchesBruteForce) {
  auto records = data_table();
  records.resize(3);  // discriminants 49, 81, 148
  ThetaConfig cfg;
  cfg.axes = {{2.0, 4.0}, {2.0, 4.0}};
  cfg.allow_small_S = true;
  const auto rep = run_theta(records, cfg);
  ASSERT_EQ(rep.rows.size(), 4u);
  EXPECT_EQ(rep.label, kThetaLabel);
  for (const auto& row : rep.rows) {
    double expected = 0.0;
    for (const auto& r : records) {
      const auto units = oracle::units_in_box({r.poly.a, r.poly.b, r.poly.c}, 40, {row.bounds[0], row.bounds[1]});
      expected += static_cast<double>(units.size()) * r.R;
    }
    EXPECT_NEAR(row.count, expected, 1e-9 * (1 + expected));
    EXPECT_NEAR(row.normalizer, 8.0 / std::sqrt(3.0) * row.bounds[0] * row.bounds[1], 1e-12);
  }
  EXPECT_TRUE(run_theta({}, cfg).rows.size() == 4u);
  for (const auto& row : run_theta({}, cfg).rows) EXPECT_EQ(row.count, 0.0);
  cfg.allow_small_S = false;
  EXPECT_THROW(run_theta(records, cfg), InvalidInput);
}

TEST(Drivers, ThetaWithSWeightsByLambda) {
  auto records = data_table();
  ThetaConfig cfg;
  cfg.axes = {{3.0}, {3.0}};
  cfg.S = {2, 3};
  const auto rep = run_theta(records, cfg);
  double expected = 0.0;
  for (const auto& r : records) {
    if (!nf::satisfies_S(r.poly, {2, 3})) continue;
    const auto units = oracle::units_in_box({r.poly.a, r.poly.b, r.poly.c}, 40, {3.0, 3.0});
    expected += static_cast<double>(units.size()) * r.R * static_cast<double>(nf::lambda_S(r.poly, {2, 3}));
  }
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_NEAR(rep.rows[0].count, expected, 1e-9 * (1 + expected));
}

TEST(Drivers, ChebyshevVerdictIncreases) {
  SynthSpec spec;
  spec.generator = Generator::kChebyshev;
  spec.cutoff = 13.0;
  const auto source = counting_function(spec);
  TauberianConfig cfg;
  cfg.radii = {8.0, 10.0, 13.0};
  const auto res = run_tauberian_experiment(source, cfg);
  EXPECT_EQ(res.status, kExitOk);
  std::istringstream in(res.output);
  const auto t = read_table(in, "verdict");
  ASSERT_EQ(t.rows.size(), 3u);
  double prev = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double b = parse_double(t.rows[i][1]);
    const double x = parse_double(t.rows[i][0]);
    EXPECT_NEAR(b, oracle::chebyshev_A(x) / (x * std::exp(x)), 1e-9);
    EXPECT_GT(b, prev);
    prev = b;
  }
}

TEST(Drivers, ContinuumVerdictIsOne) {
  const auto source = CountingFunction::exact_continuum(2);
  TauberianConfig cfg;
  cfg.j = 1;
  cfg.radii = {1.0, 5.0, 20.0};
  const auto res = run_tauberian_experiment(source, cfg);
  std::istringstream in(res.output);
  const auto t = read_table(in, "verdict");
  ASSERT_EQ(t.rows.size(), 3u);
  for (const auto& row : t.rows) EXPECT_NEAR(parse_double(row[1]), 1.0, 1e-12);
}

TEST(Drivers, BadConfigsThrowBeforeOutput) {
  const auto source = CountingFunction::exact_continuum(1);
  TauberianConfig cfg;
  cfg.mode = TauberianMode::kMoment;
  cfg.ys = {10.0};
  cfg.tolerance = 0.0;
  EXPECT_THROW(run_tauberian_experiment(source, cfg), InvalidInput);
  cfg.tolerance = 0.02;
  cfg.ys = {};
  EXPECT_THROW(run_tauberian_experiment(source, cfg), InvalidInput);
  TauberianConfig verdict;
  EXPECT_THROW(run_tauberian_experiment(source, verdict), InvalidInput);  // no radii
  DirichletConfig d;
  d.tolerance = -1.0;
  EXPECT_THROW(run_dirichlet_check(d), InvalidInput);
  EnumerateConfig e;
  EXPECT_THROW(run_enumerate(e), InvalidInput);
}

TEST(Drivers, MomentStatus) {
  const auto source = CountingFunction::exact_continuum(1);
  TauberianConfig cfg;
  cfg.mode = TauberianMode::kMoment;
  cfg.ys = {40.0, 80.0};
  EXPECT_EQ(run_tauberian_experiment(source, cfg).status, kExitOk);
  cfg.ys = {5.0};
  cfg.tolerance = 1e-6;
  EXPECT_EQ(run_tauberian_experiment(source, cfg).status, kExitTolerance);
}

TEST(Drivers, DirichletStatus) {
  const auto ok = run_dirichlet_check({});
  EXPECT_EQ(ok.status, kExitOk);
  std::istringstream in(ok.output);
  const auto t = read_table(in, "dirichlet");
  EXPECT_EQ(t.rows.size(), 3u * 3 + 3u * 9);
  DirichletConfig tight;
  tight.tolerance = 1e-300;
  EXPECT_EQ(run_dirichlet_check(tight).status, kExitTolerance);
}

TEST(Drivers, EnumerateReport) {
  EnumerateConfig cfg;
  cfg.disc_bound = 100;
  cfg.S = {2, 3};
  const auto res = run_enumerate(cfg);
  std::istringstream in(res.output);
  const auto t = read_table(in, "enumeration");
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.header.back(), "split_3");
  EXPECT_EQ(t.rows[0][0], "49");
  EXPECT_EQ(t.rows[1][0], "81");
  EXPECT_EQ(t.rows[0][t.rows[0].size() - 2], "e1f3");
}

TEST(Drivers, PgtRatioOnLattice) {
  SynthSpec spec;
  spec.rank = 2;
  spec.step = 0.25;
  spec.cutoff = 6.0;
  const auto s = synth_spectrum(spec);
  PgtConfig cfg;
  cfg.kind = CountKind::kA;
  cfg.axes = {{2.0, 4.0, 6.0}, {2.0, 4.0, 6.0}};
  cfg.normalizer = Normalizer::kPntProfile;
  const auto rep = run_pgt(s, cfg);
  for (const auto& row : rep.rows) EXPECT_NEAR(row.ratio, 1.0, 1e-9);
}
