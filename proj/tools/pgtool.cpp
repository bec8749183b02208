// pgtool: command line driver. Exit codes: 0 success, 1 usage or input
// error, 2 numeric tolerance breach in a checking command.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "pgt/error.hpp"
#include "pgt/io/cache.hpp"
#include "pgt/io/experiments.hpp"
#include "pgt/io/formats.hpp"
#include "pgt/io/ingest.hpp"
#include "pgt/nf/units.hpp"

namespace {

using namespace pgt;

// Options for a spectrum given either as a file or by a generator.
struct SourceOptions {
  std::string spectrum_path;
  std::string generator = "product_lattice";
  std::size_t rank = 1;
  double step = 0.5;
  double cutoff = 1.0;
  double scale = 1.0;
  std::string pole_model_path;

  void add(CLI::App* cmd) {
    cmd->add_option("--spectrum", spectrum_path, "Spectrum file (overrides the generator)");
    cmd->add_option("--generator", generator,
                    "product_lattice | chebyshev | exact_continuum | pole_model")
        ->capture_default_str();
    cmd->add_option("--rank", rank, "Rank")->capture_default_str();
    cmd->add_option("--step", step, "Lattice step")->capture_default_str();
    cmd->add_option("--cutoff", cutoff, "Largest length on the log scale")->capture_default_str();
    cmd->add_option("--scale", scale, "exact_continuum scale")->capture_default_str();
    cmd->add_option("--pole-model", pole_model_path, "Pole model file (pole_model generator)");
  }

  [[nodiscard]] SynthSpec spec(int j) const {
    SynthSpec s;
    s.generator = generator_from_string(generator);
    s.rank = rank;
    s.j = j;
    s.step = step;
    s.cutoff = cutoff;
    s.scale = scale;
    if (s.generator == Generator::kPoleModel) {
      if (pole_model_path.empty()) throw InvalidInput("pole_model needs --pole-model");
      std::istringstream in(io::read_file(pole_model_path));
      s.model = io::read_pole_model(in);
    }
    return s;
  }

  [[nodiscard]] Spectrum spectrum(int j) const {
    if (!spectrum_path.empty()) {
      std::istringstream in(io::read_file(spectrum_path));
      return io::read_spectrum(in);
    }
    return synth_spectrum(spec(j));
  }

  [[nodiscard]] CountingFunction counting(int j) const {
    if (!spectrum_path.empty()) return CountingFunction::of(std::make_shared<Spectrum>(spectrum(j)));
    return counting_function(spec(j));
  }
};

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& cell : io::split(text)) out.push_back(io::parse_double(cell));
  return out;
}

std::vector<std::vector<double>> parse_axes(const std::vector<std::string>& axes) {
  std::vector<std::vector<double>> out;
  for (const auto& a : axes) out.push_back(parse_list(a));
  return out;
}

nf::CubicPoly parse_poly(const std::string& text) {
  const auto cells = io::split(text);
  if (cells.size() != 3) throw InvalidInput("polynomial must be given as a,b,c");
  return {io::parse_integer(cells[0]), io::parse_integer(cells[1]), io::parse_integer(cells[2])};
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_file(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting experiments for geodesic spectra and cubic unit lattices"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  unsigned threads = 1;
  std::string output;
  std::function<int()> action;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
    cmd->add_option("--output", output, "Output file (default: stdout)");
  };

  // ---------------------------------------------------------------- fields
  auto* fields = app.add_subcommand("fields", "Totally real cubic fields");
  fields->require_subcommand(1);

  io::EnumerateConfig enum_cfg;
  std::vector<long long> primes;
  bool allow_small_S = false;
  long long unit_height = 0;
  auto* enumerate = fields->add_subcommand("enumerate", "Enumerate fields by discriminant");
  common(enumerate);
  enumerate->add_option("--disc-bound", enum_cfg.disc_bound, "Largest discriminant")->required();
  enumerate->add_option("--primes", primes, "The set S")->delimiter(',');
  enumerate->add_flag("--allow-small-s", allow_small_S, "Permit |S| < 2");
  enumerate->add_option("--a-bound", enum_cfg.options.a_bound)->capture_default_str();
  enumerate->add_option("--b-bound", enum_cfg.options.b_bound)->capture_default_str();
  enumerate->add_option("--c-bound", enum_cfg.options.c_bound)->capture_default_str();
  enumerate->add_option("--unit-height", unit_height,
                        "Also search fundamental units with |coords| <= H");
  enumerate->callback([&] {
    action = [&] {
      enum_cfg.S = {primes.begin(), primes.end()};
      enum_cfg.options.allow_small_S = allow_small_S;
      enum_cfg.options.threads = threads;
      if (unit_height != 0) enum_cfg.unit_height = unit_height;
      const auto result = io::run_enumerate(enum_cfg);
      emit(output, result.output);
      return result.status;
    };
  });

  std::string table_path, cache_dir, rejections_path;
  auto* ingest = fields->add_subcommand("ingest", "Validate a field table");
  common(ingest);
  ingest->add_option("--table", table_path, "Field table")->required();
  ingest->add_option("--primes", primes, "The set S")->delimiter(',');
  ingest->add_flag("--allow-small-s", allow_small_S, "Permit |S| < 2");
  ingest->add_option("--cache", cache_dir, "Store accepted records in this directory");
  ingest->add_option("--rejections", rejections_path, "Rejection report file (default: stderr)");
  ingest->callback([&] {
    action = [&] {
      io::IngestOptions opt{{primes.begin(), primes.end()}, allow_small_S};
      const auto report = io::ingest_field_table(table_path, opt);
      std::ostringstream table, rej;
      io::write_field_table(table, report.accepted);
      io::write_rejections(rej, report.rejected);
      if (!cache_dir.empty()) {
        const io::FieldCache cache(cache_dir);
        for (const auto& r : report.accepted) cache.store(r);
      }
      emit(output, table.str());
      if (rejections_path.empty()) {
        if (!report.rejected.empty()) std::cerr << rej.str();
      } else {
        io::write_file(rejections_path, rej.str());
      }
      std::cerr << report.accepted.size() << " accepted, " << report.rejected.size()
                << " rejected\n";
      return io::kExitOk;
    };
  });

  // ---------------------------------------------------------------- units
  auto* units = app.add_subcommand("units", "Unit lattices");
  units->require_subcommand(1);
  std::string poly_text;
  std::vector<double> box_T;
  io::UnitsBoxConfig box_cfg;
  auto* ubox = units->add_subcommand("box", "Units with 0 < alpha_k <= T_k");
  common(ubox);
  ubox->add_option("--poly", poly_text, "Defining polynomial a,b,c of x^3+ax^2+bx+c")->required();
  ubox->add_option("--box", box_T, "T_1,T_2")->delimiter(',')->required()->expected(2);
  ubox->add_option("--table", table_path, "Take units from this field table");
  ubox->add_option("--unit-height", unit_height, "Otherwise search units with |coords| <= H");
  ubox->add_flag("--strict", box_cfg.strict, "Refuse candidate unit systems");
  ubox->callback([&] {
    action = [&] {
      const auto poly = parse_poly(poly_text);
      nf::FieldRecord record;
      if (!table_path.empty()) {
        io::IngestOptions opt;
        opt.allow_small_S = true;
        const auto report = io::ingest_field_table(table_path, opt);
        bool found = false;
        for (const auto& r : report.accepted) {
          if (r.poly == poly) {
            record = r;
            found = true;
          }
        }
        if (!found) throw InvalidInput("polynomial " + poly.key() + " not accepted from the table");
      } else {
        if (unit_height <= 0) throw InvalidInput("give --table or a positive --unit-height");
        record = nf::make_field_record(poly);
        const auto fu = nf::find_fundamental_units(record, unit_height);
        record.fundamental_units = {fu.units[0], fu.units[1]};
        record.R = fu.regulator;
        record.unit_status = fu.status;
      }
      box_cfg.T = {box_T[0], box_T[1]};
      const auto result = io::run_units_box(record, box_cfg);
      emit(output, result.output);
      return result.status;
    };
  });

  // ---------------------------------------------------------------- theta
  auto* theta = app.add_subcommand("theta", "theta_S experiments");
  theta->require_subcommand(1);
  io::ThetaConfig theta_cfg;
  std::string t1, t2;
  auto* theta_run = theta->add_subcommand("run", "theta_S against (c / sqrt 3) T_1 T_2");
  common(theta_run);
  theta_run->add_option("--table", table_path, "Field table")->required();
  theta_run->add_option("--t1", t1, "T_1 values, comma separated")->required();
  theta_run->add_option("--t2", t2, "T_2 values, comma separated")->required();
  theta_run->add_option("--primes", primes, "The set S")->delimiter(',');
  theta_run->add_flag("--allow-small-s", allow_small_S, "Permit |S| < 2");
  theta_run->add_flag("--strict", theta_cfg.strict, "Refuse candidate unit systems");
  theta_run->callback([&] {
    action = [&] {
      theta_cfg.S = {primes.begin(), primes.end()};
      theta_cfg.allow_small_S = allow_small_S;
      theta_cfg.threads = threads;
      theta_cfg.axes = {parse_list(t1), parse_list(t2)};
      io::grid_points(theta_cfg.axes);
      // S is applied by the experiment: non-admissible fields simply do not count.
      const auto report = io::ingest_field_table(table_path);
      if (!report.rejected.empty()) {
        std::ostringstream rej;
        io::write_rejections(rej, report.rejected);
        std::cerr << rej.str();
      }
      const auto result = io::run_theta_experiment(report.accepted, theta_cfg);
      emit(output, result.output);
      return result.status;
    };
  });

  // ---------------------------------------------------------------- pgt
  auto* pgt_cmd = app.add_subcommand("pgt", "Counting functions over spectra");
  pgt_cmd->require_subcommand(1);
  SourceOptions source;
  io::PgtConfig pgt_cfg;
  std::string function = "psi", scale_name = "log", normalizer_name = "product_T";
  std::vector<std::string> axes;
  double epsilon = 0.0;
  auto* pgt_run = pgt_cmd->add_subcommand("run", "Ratio report for psi, phi, phi_j, pi or A");
  common(pgt_run);
  source.add(pgt_run);
  pgt_run->add_option("--function", function, "psi | phi | phi_j | pi | A")->capture_default_str();
  pgt_run->add_option("--axis", axes, "Grid values for one axis, comma separated (repeat per axis)")
      ->required();
  pgt_run->add_option("--bound-scale", scale_name, "log | multiplicative")->capture_default_str();
  pgt_run->add_option("--j", pgt_cfg.j, "Exponent j")->capture_default_str();
  pgt_run->add_option("--epsilon", epsilon, "Restrict psi / phi to 1 - eps < det < 1");
  pgt_run->add_option("--normalizer", normalizer_name,
                      "product_T | product_T_over_logs | pnt_profile")
      ->capture_default_str();
  pgt_run->add_option("--constant", pgt_cfg.constant, "Normalizer constant")->capture_default_str();
  pgt_run->callback([&] {
    action = [&] {
      pgt_cfg.kind = io::count_kind_from_string(function);
      if (scale_name == "log") {
        pgt_cfg.scale = BoundScale::kLog;
      } else if (scale_name == "multiplicative") {
        pgt_cfg.scale = BoundScale::kMultiplicative;
      } else {
        throw InvalidInput("unknown bound scale '" + scale_name + "'");
      }
      pgt_cfg.normalizer = normalizer_from_string(normalizer_name);
      if (pgt_run->count("--epsilon") > 0) pgt_cfg.epsilon = epsilon;
      pgt_cfg.axes = parse_axes(axes);
      pgt_cfg.threads = threads;
      io::grid_points(pgt_cfg.axes);
      const auto result = io::run_pgt_experiment(source.spectrum(pgt_cfg.j), pgt_cfg);
      emit(output, result.output);
      return result.status;
    };
  });

  // ---------------------------------------------------------------- tauberian
  auto* taub = app.add_subcommand("tauberian", "Tauberian checks");
  taub->require_subcommand(1);
  io::TauberianConfig taub_cfg;
  std::string mode = "verdict";
  std::vector<std::string> tval;
  auto* tcheck = taub->add_subcommand("check", "B along a ray, kernel moments, or smoothed integrals");
  common(tcheck);
  source.add(tcheck);
  tcheck->add_option("--mode", mode, "verdict | moment | smoothed")->capture_default_str();
  tcheck->add_option("--j", taub_cfg.j, "Exponent j")->capture_default_str();
  tcheck->add_option("--ray", taub_cfg.ray, "Direction")->delimiter(',');
  tcheck->add_option("--radii", taub_cfg.radii, "Radii along the ray")->delimiter(',');
  tcheck->add_option("--s1", taub_cfg.s1, "Kernel half-width")->capture_default_str();
  tcheck->add_option("--resolution", taub_cfg.resolution, "Kernel samples per half-width")
      ->capture_default_str();
  tcheck->add_option("--k", taub_cfg.ks, "moment exponents")->delimiter(',');
  tcheck->add_option("--y", taub_cfg.ys, "moment shifts")->delimiter(',');
  tcheck->add_option("--tolerance", taub_cfg.tolerance, "moment relative tolerance")
      ->capture_default_str();
  tcheck->callback([&] {
    action = [&] {
      taub_cfg.mode = io::tauberian_mode_from_string(mode);
      taub_cfg.threads = threads;
      if (!(taub_cfg.tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
      const bool needs_source = taub_cfg.mode != io::TauberianMode::kMoment;
      const CountingFunction counting =
          needs_source ? source.counting(taub_cfg.j) : CountingFunction::exact_continuum(1);
      const auto result = io::run_tauberian_experiment(counting, taub_cfg);
      emit(output, result.output);
      return result.status;
    };
  });

  // ---------------------------------------------------------------- dirichlet
  auto* dir = app.add_subcommand("dirichlet", "Dirichlet series checks");
  dir->require_subcommand(1);
  io::DirichletConfig dir_cfg;
  auto* dcheck = dir->add_subcommand("check", "Chamber integral against its closed form");
  common(dcheck);
  dcheck->add_option("--ranks", dir_cfg.ranks, "Ranks")->delimiter(',');
  dcheck->add_option("--j", dir_cfg.js, "Exponents j")->delimiter(',');
  dcheck->add_option("--offsets", dir_cfg.offsets, "Values of s_k - theta_k")->delimiter(',');
  dcheck->add_option("--theta", dir_cfg.theta, "Real part of theta")->capture_default_str();
  dcheck->add_option("--tolerance", dir_cfg.tolerance, "Relative tolerance")->capture_default_str();
  dcheck->add_option("--panels", dir_cfg.panels, "Quadrature panels per axis")->capture_default_str();
  dcheck->callback([&] {
    action = [&] {
      dir_cfg.threads = threads;
      const auto result = io::run_dirichlet_check(dir_cfg);
      emit(output, result.output);
      return result.status;
    };
  });

  // ---------------------------------------------------------------- spectrum
  auto* spec = app.add_subcommand("spectrum", "Spectrum files");
  spec->require_subcommand(1);
  int synth_j = 0;
  auto* synth = spec->add_subcommand("synth", "Generate a synthetic spectrum");
  common(synth);
  source.add(synth);
  synth->add_option("--j", synth_j, "Exponent j")->capture_default_str();
  synth->callback([&] {
    action = [&] {
      std::ostringstream out;
      io::write_spectrum(out, synth_spectrum(source.spec(synth_j)));
      emit(output, out.str());
      return io::kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : io::kExitInput;
  }
  try {
    if (threads == 0) throw InvalidInput("--threads must be at least 1");
    return action();
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return io::kExitTolerance;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io::kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io::kExitInput;
  }
}
