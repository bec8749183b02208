#include "pgt/io/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pgt/dirichlet.hpp"
#include "pgt/error.hpp"
#include "pgt/io/formats.hpp"
#include "pgt/nf/units.hpp"
#include "pgt/parallel.hpp"

namespace pgt::io {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput(std::string(what) + " must be positive");
}

void require_threads(unsigned threads) {
  if (threads == 0) throw InvalidInput("thread count must be at least 1");
}

std::string join(std::span<const double> v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_double(v[i]);
  }
  return out;
}

std::string pattern_string(const nf::SplittingType& st) {
  std::string out;
  for (const auto& f : st.factors) {
    if (!out.empty()) out += ' ';
    out += "e" + std::to_string(f.e) + "f" + std::to_string(f.f);
  }
  return out;
}

}  // namespace

std::vector<std::vector<double>> grid_points(const std::vector<std::vector<double>>& axes) {
  if (axes.empty()) throw InvalidInput("grid needs at least one axis");
  for (const auto& axis : axes) {
    if (axis.empty()) throw InvalidInput("grid axis is empty");
    for (std::size_t i = 0; i < axis.size(); ++i) {
      if (!std::isfinite(axis[i])) throw InvalidInput("grid values must be finite");
      if (i > 0 && !(axis[i] > axis[i - 1])) {
        throw InvalidInput("grid values must be strictly increasing per axis");
      }
    }
  }
  std::vector<std::vector<double>> out{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    next.reserve(out.size() * axis.size());
    for (const auto& prefix : out) {
      for (double v : axis) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

// ------------------------------------------------------------ theta

RatioReport run_theta(std::span<const nf::FieldRecord> records, const ThetaConfig& config) {
  require_threads(config.threads);
  if (config.axes.size() != 2) throw InvalidInput("theta grid needs two axes (T_1, T_2)");
  const auto points = grid_points(config.axes);
  for (const auto& axis : config.axes) {
    if (!(axis.front() >= 0.0)) throw InvalidInput("theta bounds must be nonnegative");
  }
  if (config.S.size() < 2 && !config.allow_small_S) {
    throw InvalidInput("S must contain at least two primes (override for toy runs)");
  }
  const std::array<double, 2> box{config.axes[0].back(), config.axes[1].back()};

  // Only fields in which every p in S is non-decomposed contribute.
  std::vector<const nf::FieldRecord*> admissible;
  for (const auto& r : records) {
    if (nf::satisfies_S(r.poly, config.S)) admissible.push_back(&r);
  }
  std::vector<FieldUnitSet> sets(admissible.size());
  parallel_for(admissible.size(), config.threads, [&](std::size_t i) {
    const auto& r = *admissible[i];
    const long lambda = nf::lambda_S(r.poly, config.S, config.allow_small_S);
    sets[i] = nf::unit_set(r, nf::enumerate_units_in_box(r, box, config.strict), lambda);
  });

  std::vector<CountPoint> counts;
  counts.reserve(points.size());
  for (const auto& p : points) {
    CountQuery q;
    q.bounds = p;
    q.scale = BoundScale::kLog;
    counts.push_back({p, theta_S(sets, q)});
  }
  return ratio_report(counts, BoundScale::kLog, Normalizer::kProductT,
                      nf::c_constant(3) / std::sqrt(3.0), 0, kThetaLabel);
}

RunResult run_theta_experiment(std::span<const nf::FieldRecord> records, const ThetaConfig& config) {
  const auto report = run_theta(records, config);
  std::ostringstream out;
  write_ratio_report(out, report);
  return {kExitOk, out.str()};
}

// ------------------------------------------------------------ counting

const char* to_string(CountKind k) noexcept {
  switch (k) {
    case CountKind::kPsi: return "psi";
    case CountKind::kPhi: return "phi";
    case CountKind::kPhiJ: return "phi_j";
    case CountKind::kPi: return "pi";
    case CountKind::kA: return "A";
  }
  return "?";
}

CountKind count_kind_from_string(const std::string& name) {
  for (auto k : {CountKind::kPsi, CountKind::kPhi, CountKind::kPhiJ, CountKind::kPi, CountKind::kA}) {
    if (name == to_string(k)) return k;
  }
  throw InvalidInput("unknown counting function '" + name + "'");
}

RatioReport run_pgt(const Spectrum& spectrum, const PgtConfig& config) {
  require_threads(config.threads);
  if (config.axes.size() != spectrum.rank()) {
    throw InvalidInput("grid has " + std::to_string(config.axes.size()) + " axes for a rank " +
                       std::to_string(spectrum.rank()) + " spectrum");
  }
  if (config.j < 0) throw InvalidInput("j must be nonnegative");
  require_positive(config.constant, "normalizer constant");
  if (config.epsilon) {
    if (!(*config.epsilon > 0.0 && *config.epsilon < 1.0)) {
      throw InvalidInput("epsilon must lie in (0, 1)");
    }
    if (config.kind != CountKind::kPsi && config.kind != CountKind::kPhi) {
      throw InvalidInput("epsilon applies to psi and phi only");
    }
  }
  if (config.kind == CountKind::kA && config.scale != BoundScale::kLog) {
    throw InvalidInput("A takes log-scale arguments");
  }
  const auto points = grid_points(config.axes);
  std::vector<CountPoint> counts;
  counts.reserve(points.size());
  for (const auto& p : points) {
    CountQuery q{p, config.scale, config.j, config.epsilon};
    double value = 0.0;
    switch (config.kind) {
      case CountKind::kPsi:
        value = config.epsilon ? psi_eps(spectrum, q, config.threads) : psi(spectrum, q, config.threads);
        break;
      case CountKind::kPhi:
        value = config.epsilon ? phi_eps(spectrum, q, config.threads) : phi(spectrum, q, config.threads);
        break;
      case CountKind::kPhiJ: value = phi_j(spectrum, q, config.threads); break;
      case CountKind::kPi: value = static_cast<double>(pi_count(spectrum, q)); break;
      case CountKind::kA: value = big_A(spectrum, p, config.j, config.threads); break;
    }
    counts.push_back({p, value});
  }
  std::string label = to_string(config.kind);
  if (config.epsilon) label += " eps=" + format_double(*config.epsilon);
  return ratio_report(counts, config.scale, config.normalizer, config.constant, config.j, label);
}

RunResult run_pgt_experiment(const Spectrum& spectrum, const PgtConfig& config) {
  const auto report = run_pgt(spectrum, config);
  std::ostringstream out;
  write_ratio_report(out, report);
  return {kExitOk, out.str()};
}

// ------------------------------------------------------------ tauberian

const char* to_string(TauberianMode m) noexcept {
  switch (m) {
    case TauberianMode::kVerdict: return "verdict";
    case TauberianMode::kMoment: return "moment";
    case TauberianMode::kSmoothed: return "smoothed";
  }
  return "?";
}

TauberianMode tauberian_mode_from_string(const std::string& name) {
  for (auto m : {TauberianMode::kVerdict, TauberianMode::kMoment, TauberianMode::kSmoothed}) {
    if (name == to_string(m)) return m;
  }
  throw InvalidInput("unknown tauberian mode '" + name + "'");
}

RunResult run_tauberian_experiment(const CountingFunction& source, const TauberianConfig& config) {
  require_threads(config.threads);
  if (config.j < 0) throw InvalidInput("j must be nonnegative");
  require_positive(config.s1, "kernel half-width");
  require_positive(config.tolerance, "tolerance");
  std::vector<double> ray = config.ray;
  if (ray.empty()) ray.assign(source.rank(), 1.0);
  if (ray.size() != source.rank()) throw InvalidInput("ray length does not match the rank");
  for (double v : ray) require_positive(v, "ray component");

  std::ostringstream out;
  int status = kExitOk;
  switch (config.mode) {
    case TauberianMode::kVerdict: {
      if (config.radii.empty()) throw InvalidInput("verdict needs at least one radius");
      grid_points({config.radii});
      for (double r : config.radii) require_positive(r, "radius");
      const auto rows = wiener_ikehara_verdict(source, config.j, ray, config.radii, config.threads);
      write_verdict(out, rows, {{"j", std::to_string(config.j)}, {"ray", join(ray, ' ')}});
      break;
    }
    case TauberianMode::kMoment: {
      if (config.ys.empty() || config.ks.empty()) throw InvalidInput("moment mode needs k and y values");
      for (double y : config.ys) require_positive(y, "y");
      for (int k : config.ks) {
        if (k < 0) throw InvalidInput("k must be nonnegative");
      }
      const Kernel kernel = make_kernel(KernelShape::kMollifierSquare, config.s1, config.resolution);
      const double target = 2.0 * std::numbers::pi * kernel.f_at_zero();
      const std::size_t n = config.ks.size() * config.ys.size();
      const auto values = evaluate_terms(n, config.threads, [&](std::size_t i) {
        return moment_check(kernel, config.ks[i / config.ys.size()], config.ys[i % config.ys.size()]);
      });
      out << "# pgt-moment " << kFormatVersion << "\n";
      out << "# s1 " << format_double(config.s1) << "\n";
      out << "# resolution " << config.resolution << "\n";
      out << "# tolerance " << format_double(config.tolerance) << "\n";
      out << "k,y,value,target,rel_deviation\n";
      for (std::size_t i = 0; i < n; ++i) {
        const double dev = values[i] / target - 1.0;
        if (!(std::fabs(dev) <= config.tolerance)) status = kExitTolerance;
        out << config.ks[i / config.ys.size()] << ',' << format_double(config.ys[i % config.ys.size()])
            << ',' << format_double(values[i]) << ',' << format_double(target) << ','
            << format_double(dev) << '\n';
      }
      break;
    }
    case TauberianMode::kSmoothed: {
      if (config.radii.empty()) throw InvalidInput("smoothed mode needs at least one radius");
      grid_points({config.radii});
      for (double r : config.radii) require_positive(r, "radius");
      const Kernel kernel = make_kernel(KernelShape::kMollifierSquare, config.s1, config.resolution);
      const double target =
          std::pow(2.0 * std::numbers::pi * kernel.f_at_zero(), static_cast<double>(source.rank()));
      out << "# pgt-smoothed " << kFormatVersion << "\n";
      out << "# j " << config.j << "\n";
      out << "# ray " << join(ray, ' ') << "\n";
      out << "# s1 " << format_double(config.s1) << "\n";
      out << "radius,value,target,ratio\n";
      for (double radius : config.radii) {
        std::vector<double> y(ray.size());
        for (std::size_t k = 0; k < y.size(); ++k) y[k] = radius * ray[k];
        const double v = smoothed_test(source, kernel, y, config.j, config.threads);
        out << format_double(radius) << ',' << format_double(v) << ',' << format_double(target)
            << ',' << format_double(v / target) << '\n';
      }
      break;
    }
  }
  return {status, out.str()};
}

// ------------------------------------------------------------ dirichlet

RunResult run_dirichlet_check(const DirichletConfig& config) {
  require_threads(config.threads);
  require_positive(config.tolerance, "tolerance");
  if (config.ranks.empty() || config.js.empty() || config.offsets.empty()) {
    throw InvalidInput("dirichlet grid is empty");
  }
  for (auto r : config.ranks) {
    if (r == 0 || r > 4) throw InvalidInput("rank must lie in 1..4");
  }
  for (int j : config.js) {
    if (j < 0) throw InvalidInput("j must be nonnegative");
  }
  for (double o : config.offsets) require_positive(o, "offset s - theta");
  if (!std::isfinite(config.theta)) throw InvalidInput("theta must be finite");
  if (config.panels == 0) throw InvalidInput("panels must be positive");

  struct Case {
    std::size_t rank;
    int j;
    std::vector<double> offsets;
  };
  std::vector<Case> cases;
  for (auto r : config.ranks) {
    const auto tuples = grid_points(std::vector<std::vector<double>>(r, config.offsets));
    for (int j : config.js) {
      for (const auto& t : tuples) cases.push_back({r, j, t});
    }
  }
  std::vector<ChamberIntegralCheck> results(cases.size());
  parallel_for(cases.size(), config.threads, [&](std::size_t i) {
    const auto& c = cases[i];
    std::vector<Complex> theta(c.rank, Complex{config.theta, 0.0});
    std::vector<Complex> s(c.rank);
    for (std::size_t k = 0; k < c.rank; ++k) s[k] = theta[k] + c.offsets[k];
    results[i] = chamber_integral_check(s, theta, c.j, config.panels);
  });

  std::ostringstream out;
  out << "# pgt-dirichlet " << kFormatVersion << "\n";
  out << "# theta " << format_double(config.theta) << "\n";
  out << "# tolerance " << format_double(config.tolerance) << "\n";
  out << "rank,j,offsets,numeric_re,numeric_im,closed_re,closed_im,rel_difference\n";
  int status = kExitOk;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const auto& r = results[i];
    if (!(r.rel_difference <= config.tolerance)) status = kExitTolerance;
    out << c.rank << ',' << c.j << ',' << join(c.offsets, ' ') << ','
        << format_double(r.numeric.real()) << ',' << format_double(r.numeric.imag()) << ','
        << format_double(r.closed_form.real()) << ',' << format_double(r.closed_form.imag()) << ','
        << format_double(r.rel_difference) << '\n';
  }
  return {status, out.str()};
}

// ------------------------------------------------------------ fields

RunResult run_enumerate(const EnumerateConfig& config) {
  if (config.disc_bound <= 0) throw InvalidInput("discriminant bound must be positive");
  if (config.unit_height && *config.unit_height <= 0) throw InvalidInput("unit height must be positive");
  require_threads(config.options.threads);
  auto options = config.options;
  const auto records = nf::enumerate_fields(config.disc_bound, config.S, options);
  std::ostringstream out;
  if (!config.unit_height) {
    out << "# pgt-enumeration " << kFormatVersion << "\n";
    out << "# disc_bound " << config.disc_bound << "\n";
    out << "disc_field,poly_a,poly_b,poly_c,h,minkowski";
    for (long long p : config.S) out << ",split_" << p;
    out << '\n';
    for (const auto& r : records) {
      out << r.disc_field << ',' << r.poly.a << ',' << r.poly.b << ',' << r.poly.c << ',' << r.h
          << ',' << (r.cert.h_certified_minkowski ? "h_is_1" : "inconclusive");
      for (long long p : config.S) out << ',' << pattern_string(r.splitting.at(p));
      out << '\n';
    }
    return {kExitOk, out.str()};
  }

  std::vector<nf::FieldRecord> with_units(records.size());
  std::vector<std::string> notes(records.size());
  parallel_for(records.size(), options.threads, [&](std::size_t i) {
    auto r = records[i];
    if (r.h <= 0) {
      notes[i] = "class number not certified";
      return;
    }
    try {
      const auto fu = nf::find_fundamental_units(r, *config.unit_height);
      r.fundamental_units = {fu.units[0], fu.units[1]};
      r.R = fu.regulator;
      r.unit_status = fu.status;
      with_units[i] = std::move(r);
    } catch (const InvalidInput& e) {
      notes[i] = e.what();
    }
  });
  std::vector<nf::FieldRecord> table;
  out << "# pgt-fields " << kFormatVersion << "\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!notes[i].empty()) {
      out << "# skipped " << records[i].poly.key() << " (disc " << records[i].disc_field
          << "): " << notes[i] << "\n";
    } else {
      table.push_back(with_units[i]);
    }
  }
  std::ostringstream body;
  write_field_table(body, table);
  // Drop the version line written by write_field_table; ours is already out.
  const std::string text = body.str();
  out << text.substr(text.find('\n') + 1);
  return {kExitOk, out.str()};
}

RunResult run_units_box(const nf::FieldRecord& record, const UnitsBoxConfig& config) {
  for (double t : config.T) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("box bounds must be nonnegative");
  }
  const auto box = nf::enumerate_units_in_box(record, config.T, config.strict);
  std::ostringstream out;
  out << "# pgt-units " << kFormatVersion << "\n";
  out << "# poly " << record.poly.key() << "\n";
  out << "# box " << format_double(box.box[0]) << ' ' << format_double(box.box[1]) << "\n";
  out << "# radii " << box.radii[0] << ' ' << box.radii[1] << "\n";
  out << "# unit_status " << nf::to_string(record.unit_status) << "\n";
  out << "c0,c1,c2,alpha1,alpha2,rho1,rho2,rho3\n";
  for (const auto& u : box.units) {
    out << u.coords[0] << ',' << u.coords[1] << ',' << u.coords[2] << ','
        << format_double(u.alpha[0]) << ',' << format_double(u.alpha[1]);
    for (double e : u.embeddings) out << ',' << format_double(e);
    out << '\n';
  }
  return {kExitOk, out.str()};
}

}  // namespace pgt::io
