// Command-line front end: defect, spectrum, cm, flow, verify-family,
// search-families and catalog.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hadamard/catalog.hpp"
#include "hadamard/center_manifold.hpp"
#include "hadamard/family_search.hpp"
#include "hadamard/flow_sim.hpp"
#include "hadamard/io.hpp"
#include "hadamard/spectral.hpp"

namespace fs = std::filesystem;
using namespace hadamard;
using io::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

struct Input {
  std::string catalog;
  std::string matrix;
  std::vector<std::string> params;
};

struct Common {
  unsigned digits = 16;
  std::string tol;
  unsigned threads = 0;
  std::string out;
};

void add_input(CLI::App* sub, Input& in) {
  auto* cat = sub->add_option("--catalog", in.catalog, "catalog entry name");
  auto* mat = sub->add_option("--matrix", in.matrix, "phase-vector or exact-matrix JSON file")->check(CLI::ExistingFile);
  cat->excludes(mat);
  sub->add_option("--param", in.params, "parameter assignment name=value (value may use pi, e.g. 3pi/2)");
}

void add_precision(CLI::App* sub, Common& c) {
  sub->add_option("--digits", c.digits, "working precision in decimal digits (>17 selects MPFR)")
      ->check(CLI::Range(15u, 100000u));
  sub->add_option("--tol", c.tol, "zero threshold (default depends on precision)");
}

void add_output(CLI::App* sub, Common& c) { sub->add_option("--out", c.out, "write JSON here instead of stdout"); }

// Accepts decimals and multiples of pi: "0.3", "pi", "-pi/2", "3pi/2", "3*pi/4".
template <class Real>
Real parse_angle(std::string text) {
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  const auto pos = text.find("pi");
  if (pos == std::string::npos) return parse_real<Real>(text);
  std::string coeff = text.substr(0, pos);
  std::string rest = text.substr(pos + 2);
  if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  Real k(1);
  if (coeff == "-") k = Real(-1);
  else if (!coeff.empty() && coeff != "+") k = parse_real<Real>(coeff);
  Real value = k * pi<Real>();
  if (!rest.empty()) {
    if (rest[0] != '/') throw InvalidInput("cannot parse angle '" + text + "'");
    value /= parse_real<Real>(rest.substr(1));
  }
  return value;
}

template <class Real>
Assignment<Real> parse_assignment(const std::vector<std::string>& items) {
  Assignment<Real> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidInput("--param expects name=value, got '" + item + "'");
    out[item.substr(0, eq)] = parse_angle<Real>(item.substr(eq + 1));
  }
  return out;
}

struct Loaded {
  std::optional<ExactAffineMatrix> exact;
  std::optional<json> phases;
  std::string label;
};

Loaded load(const Input& in) {
  Loaded l;
  if (!in.catalog.empty()) {
    l.exact = catalog::get(in.catalog).matrix;
    l.label = in.catalog;
    return l;
  }
  if (in.matrix.empty()) throw InvalidInput("one of --catalog or --matrix is required");
  json j = io::read_file(in.matrix);
  l.label = in.matrix;
  if (j.contains("entries")) l.exact = io::exact_matrix_from_json(j);
  else if (j.contains("theta")) l.phases = std::move(j);
  else throw InvalidInput("'" + in.matrix + "' has neither \"theta\" nor \"entries\"");
  return l;
}

template <class Real>
BasicPhaseVector<Real> point_of(const Loaded& l, const Input& in) {
  if (l.phases) {
    if (!in.params.empty()) throw InvalidInput("--param only applies to exact matrices");
    return io::phase_vector_from_json<Real>(*l.phases);
  }
  const auto assignment = parse_assignment<Real>(in.params);
  for (const auto& [name, value] : assignment) {
    (void)value;
    if (std::find(l.exact->params.begin(), l.exact->params.end(), name) == l.exact->params.end())
      throw InvalidInput("matrix has no parameter '" + name + "'");
  }
  for (const auto& p : l.exact->params)
    if (!assignment.count(p)) throw InvalidInput("parameter '" + p + "' needs a value (--param " + p + "=...)");
  return to_phase_vector(*l.exact, assignment);
}

template <class Real>
std::optional<Real> parse_tol(const Common& c) {
  if (c.tol.empty()) return std::nullopt;
  Real t = parse_real<Real>(c.tol);
  if (!(t > 0)) throw InvalidInput("--tol must be positive");
  return t;
}

void emit(const Common& c, const json& j) {
  if (c.out.empty()) std::cout << j.dump(2) << '\n';
  else io::write_file(c.out, j);
}

void log_config(const std::string& sub, const Input* in, const Common& c, json extra = json::object()) {
  json cfg = {{"subcommand", sub}, {"digits", c.digits}, {"tol", c.tol.empty() ? json("default") : json(c.tol)}};
  if (in) {
    cfg["catalog"] = in->catalog;
    cfg["matrix"] = in->matrix;
    cfg["params"] = in->params;
  }
  cfg["threads"] = c.threads;
  for (auto& [k, v] : extra.items()) cfg[k] = v;
  std::cerr << "config " << cfg.dump() << '\n';
}

int digits_for_output(const Common& c) { return c.digits > 17 ? static_cast<int>(Precision::from_digits(c.digits).digits) : 17; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Center-subspace and flow tools for complex Hadamard matrices"};
  app.require_subcommand(1);
  Input in;
  Common common;

  auto* defect = app.add_subcommand("defect", "defect by flow kernel, linear system, or both");
  std::string method = "both";
  add_input(defect, in);
  add_precision(defect, common);
  add_output(defect, common);
  defect->add_option("--method", method, "flow | linsys | both");

  auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues of the flow Jacobian");
  add_input(spec_cmd, in);
  add_precision(spec_cmd, common);
  add_output(spec_cmd, common);

  auto* cm = app.add_subcommand("cm", "center-manifold expansion and flow verdict");
  int order = 3;
  std::string basis_file;
  std::string flow_tol;
  add_input(cm, in);
  add_precision(cm, common);
  add_output(cm, common);
  cm->add_option("--order", order, "expansion order K (>= 2)")->check(CLI::Range(2, 12));
  cm->add_option("--basis", basis_file, "JSON integer vectors spanning the center subspace")->check(CLI::ExistingFile);
  cm->add_option("--flow-tol", flow_tol, "threshold for nonzero alpha coefficients");

  auto* flow = app.add_subcommand("flow", "integrate a point cloud and export PCA snapshots");
  SimConfig sim;
  std::string times = "5,20,70,500";
  std::string out_dir;
  add_input(flow, in);
  add_precision(flow, common);
  flow->add_option("--n", sim.n_points, "number of points");
  flow->add_option("--radius", sim.radius, "half-width of the sampling box");
  flow->add_option("--seed", sim.seed, "random seed");
  flow->add_option("--times", times, "comma-separated snapshot times");
  flow->add_option("--rtol", sim.rel_tol, "integrator relative tolerance");
  flow->add_option("--max-step", sim.max_step, "largest step");
  flow->add_option("--threads", common.threads, "worker threads (0: all cores, 1: deterministic CI mode)");
  flow->add_option("--out", out_dir, "output directory")->required();

  auto* verify = app.add_subcommand("verify-family", "exact verification of an affine family");
  std::string family_file;
  std::int64_t max_modulus = kDefaultMaxModulus;
  auto* fam_opt = verify->add_option("--family", family_file, "exact-matrix JSON file")->check(CLI::ExistingFile);
  verify->add_option("--catalog", in.catalog, "catalog entry name")->excludes(fam_opt);
  verify->add_option("--max-modulus", max_modulus, "largest cyclotomic modulus tried");
  add_output(verify, common);

  auto* search = app.add_subcommand("search-families", "verified parameter subsets of an integer kernel basis");
  SearchOptions sopts;
  int height = 8;
  bool no_prefilter = false;
  add_input(search, in);
  add_precision(search, common);
  add_output(search, common);
  search->add_option("--basis", basis_file, "JSON integer vectors (default: computed kernel basis)")
      ->check(CLI::ExistingFile);
  search->add_option("--max-arity", sopts.max_arity, "largest subset size")->required();
  search->add_option("--budget", sopts.budget, "cap on subsets tested");
  search->add_option("--height", height, "entry bound for the computed integer basis");
  search->add_option("--threads", common.threads, "worker threads (0: all cores)");
  search->add_option("--seed", sopts.seed, "prefilter seed");
  search->add_flag("--no-prefilter", no_prefilter, "skip the numeric prefilter");

  auto* cat = app.add_subcommand("catalog", "list, print or export catalog entries");
  std::string cat_name;
  std::string format = "json";
  std::string export_dir;
  cat->add_option("--name", cat_name, "entry to print");
  cat->add_option("--format", format, "json | table")->check(CLI::IsMember({"json", "table"}));
  cat->add_option("--export", export_dir, "write every entry as <dir>/<name>.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*defect) {
      const DefectMethod m = parse_defect_method(method);
      log_config("defect", &in, common, {{"method", to_string(m)}});
      const Loaded l = load(in);
      DefectReport r = dispatch(Precision::from_digits(common.digits), [&](auto zero) {
        using Real = decltype(zero);
        const auto p = point_of<Real>(l, in);
        const auto tol = parse_tol<Real>(common);
        if (m == DefectMethod::flow_kernel) return defect_flow(p, tol);
        if (m == DefectMethod::linear_system) return defect_linear_system(build_matrix(p), tol);
        return cross_check_defect(p, tol);
      });
      emit(common, io::to_json(r));
      if (!r.agreement) std::cerr << r.diagnostic << '\n';
      return r.agreement ? 0 : kExitFailed;
    }

    if (*spec_cmd) {
      log_config("spectrum", &in, common);
      const Loaded l = load(in);
      json j = dispatch(Precision::from_digits(common.digits), [&](auto zero) {
        using Real = decltype(zero);
        const auto p = point_of<Real>(l, in);
        json out = io::to_json(spectrum(jacobian(p), parse_tol<Real>(common)), digits_for_output(common));
        out["potential"] = io::real_to_json(potential(p), digits_for_output(common));
        return out;
      });
      emit(common, j);
      return 0;
    }

    if (*cm) {
      log_config("cm", &in, common, {{"order", order}, {"basis", basis_file}});
      const Loaded l = load(in);
      json j = dispatch(Precision::from_digits(common.digits), [&](auto zero) {
        using Real = decltype(zero);
        const auto p = point_of<Real>(l, in);
        const auto tol = parse_tol<Real>(common);
        Mat<Real> basis;
        if (!basis_file.empty()) {
          const auto vecs = io::vectors_from_json(io::read_file(basis_file));
          basis.resize(static_cast<Eigen::Index>(p.size()), static_cast<Eigen::Index>(vecs.size()));
          for (std::size_t k = 0; k < vecs.size(); ++k) {
            if (vecs[k].size() != p.size()) throw InvalidInput("basis vectors must have length (d-1)^2");
            for (std::size_t r = 0; r < p.size(); ++r) basis(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = Real(vecs[k][r]);
          }
        } else {
          basis = spectrum(jacobian(p), tol).center_basis;
        }
        if (basis.cols() == 0) throw PreconditionFailed("the center subspace is trivial; nothing to expand");
        const auto e = expand(p, basis, order, tol);
        const Real ftol = flow_tol.empty() ? Real(e.kernel_tol) : parse_real<Real>(flow_tol);
        return io::to_json(e, detect_flow(e, ftol), digits_for_output(common));
      });
      emit(common, j);
      return 0;
    }

    if (*flow) {
      sim.times.clear();
      std::stringstream ss(times);
      for (std::string item; std::getline(ss, item, ',');) sim.times.push_back(parse_real<double>(item));
      sim.threads = common.threads;
      sim.validate();
      log_config("flow", &in, common,
                 {{"n", sim.n_points}, {"radius", sim.radius}, {"seed", sim.seed}, {"times", sim.times},
                  {"rtol", sim.rel_tol}, {"out", out_dir}});
      const Loaded l = load(in);
      fs::create_directories(out_dir);
      json manifest = dispatch(Precision::from_digits(common.digits), [&](auto zero) {
        using Real = decltype(zero);
        const auto center = point_of<Real>(l, in);
        const auto run = integrate(sample_neighborhood(center, sim), sim);
        for (std::size_t s = 0; s < run.snapshots.size(); ++s) {
          std::ostringstream name;
          name << "snapshot_" << std::setw(2) << std::setfill('0') << s << ".csv";
          std::ofstream os(fs::path(out_dir) / name.str());
          write_snapshot_csv(os, run.snapshots[s], true);
        }
        json m = flow_manifest(run, sim);
        m["center"] = io::to_json(center, digits_for_output(common));
        return m;
      });
      io::write_file((fs::path(out_dir) / "manifest.json").string(), manifest);
      std::cerr << "wrote " << sim.times.size() << " snapshots to " << out_dir << '\n';
      return manifest.at("integration_failures").get<std::size_t>() == 0 &&
                     manifest.at("monotonicity_violations").get<std::size_t>() == 0
                 ? 0
                 : kExitFailed;
    }

    if (*verify) {
      log_config("verify-family", nullptr, common, {{"family", family_file}, {"catalog", in.catalog}});
      ExactAffineMatrix m;
      if (!in.catalog.empty()) m = catalog::get(in.catalog).matrix;
      else if (!family_file.empty()) m = io::exact_matrix_from_json(io::read_file(family_file));
      else throw InvalidInput("one of --family or --catalog is required");
      const auto r = verify_affine_family(m, max_modulus);
      emit(common, io::to_json(r));
      return r.verdict ? 0 : kExitFailed;
    }

    if (*search) {
      sopts.threads = common.threads;
      sopts.prefilter = !no_prefilter;
      log_config("search-families", &in, common,
                 {{"max_arity", sopts.max_arity}, {"budget", sopts.budget}, {"basis", basis_file}});
      const Loaded l = load(in);
      if (!l.exact) throw InvalidInput("search-families needs an exact matrix (--catalog or exact-matrix JSON)");
      if (!l.exact->params.empty())
        throw InvalidInput("search-families needs a zero-parameter base; '" + l.label + "' has parameters");
      json out = json::object();
      std::vector<IntVector> basis;
      if (!basis_file.empty()) {
        basis = io::vectors_from_json(io::read_file(basis_file));
      } else {
        const auto ib = dispatch(Precision::from_digits(common.digits), [&](auto zero) {
          using Real = decltype(zero);
          const auto p = to_phase_vector(*l.exact, Assignment<Real>{});
          return integer_kernel_basis(jacobian(p), height, parse_tol<Real>(common));
        });
        out["basis"] = io::to_json(ib);
        if (!ib.integral) throw PreconditionFailed("no integer kernel basis found: " + ib.note);
        basis = ib.vectors;
      }
      out["search"] = io::to_json(search_subsets(*l.exact, basis, sopts));
      emit(common, out);
      return 0;
    }

    if (*cat) {
      if (!export_dir.empty()) {
        fs::create_directories(export_dir);
        for (const auto& e : catalog::entries()) {
          io::write_file((fs::path(export_dir) / (e.name + ".json")).string(), io::to_json(e));
          try {
            io::write_file((fs::path(export_dir) / (e.name + ".vectors.json")).string(),
                           json{{"vectors", catalog::known_vectors(e.name)}});
          } catch (const InvalidInput&) {
            // no recorded vectors for this entry
          }
        }
        std::cerr << "exported " << catalog::entries().size() << " entries to " << export_dir << '\n';
        return 0;
      }
      if (!cat_name.empty()) {
        const auto& e = catalog::get(cat_name);
        if (format == "json") {
          std::cout << io::to_json(e).dump(2) << '\n';
        } else {
          std::cout << e.name << " (d = " << e.matrix.d << ")\n" << e.provenance << '\n';
          for (int r = 0; r < e.matrix.d; ++r) {
            for (int c = 0; c < e.matrix.d; ++c) {
              const auto& ph = e.matrix.at(r, c);
              std::string cell = ph.base.str();
              for (const auto& [name, k] : ph.linear) cell += (k < 0 ? "-" : "+") + (std::llabs(k) == 1 ? "" : std::to_string(std::llabs(k))) + name;
              std::cout << std::setw(10) << cell;
            }
            std::cout << '\n';
          }
        }
        return 0;
      }
      if (format == "json") {
        json list = json::array();
        for (const auto& e : catalog::entries())
          list.push_back({{"name", e.name}, {"d", e.matrix.d}, {"params", e.matrix.params}, {"provenance", e.provenance}});
        std::cout << list.dump(2) << '\n';
      } else {
        for (const auto& e : catalog::entries())
          std::cout << std::left << std::setw(8) << e.name << " d=" << std::setw(3) << e.matrix.d << ' ' << e.provenance << '\n';
      }
      return 0;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return 0;
}
