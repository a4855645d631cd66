#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>

#include "specwave/catalog.hpp"
#include "specwave/cli.hpp"
#include "specwave/errors.hpp"
#include "specwave/operators.hpp"
#include "specwave/roots.hpp"
#include "specwave/wavepacket.hpp"

namespace specwave::cli {

namespace {

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

struct LineSetup {
  std::unique_ptr<LineOracle> oracle;
  RulePtr grid;
};

LineSetup line_setup(const RunConfig& c, std::optional<double> graded_eps = std::nullopt) {
  switch (c.op) {
    case OperatorKind::multiplication: {
      auto rule = graded_eps ? graded_rule_for_level(c.lambda.front(), *graded_eps)
                             : share(gauss_legendre(c.n, -1.0, 1.0));
      auto op = multiplication_resolvent(rule);
      return {std::move(op), rule};
    }
    case OperatorKind::rank_one: {
      auto rule = share(gauss_legendre(c.n, -1.0, 1.0));
      return {rank_one_perturbed_resolvent(rule), rule};
    }
    case OperatorKind::free_laplacian:
      return {free_laplacian_resolvent(c.k_max, c.n_k), share(uniform_grid(-c.L, c.L, c.n))};
    case OperatorKind::schrodinger: {
      auto op = schrodinger_resolvent(potential(c.potential).v, c.L, c.n);
      RulePtr grid = op->grid();
      return {std::move(op), grid};
    }
    case OperatorKind::strip: break;
  }
  throw InvalidArgument("line_setup: strip is not a line operator");
}

std::unique_ptr<StripOracle> strip_setup(const RunConfig& c) {
  return strip_laplacian_resolvent(c.k_max, c.n_k, c.n_y);
}

RulePtr strip_grid(const RunConfig& c) { return share(uniform_grid(-c.L, c.L, c.n)); }

void add_diagnostics(OutputTable& t, const std::vector<std::string>& d) {
  for (const auto& w : d)
    if (std::find(t.warnings.begin(), t.warnings.end(), w) == t.warnings.end()) t.warnings.push_back(w);
}

// Probe the pole closest to the axis: the hardest solve of the packet.
template <class V>
void collect_diagnostics(OutputTable& t, const ResolventOracle<V>& oracle, const RunConfig& c,
                         const V& f) {
  const double eps = *std::min_element(c.eps.begin(), c.eps.end());
  for (double lambda : c.lambda) add_diagnostics(t, oracle.diagnostics(cplx(lambda, -eps), f));
}

OutputTable base_table(const RunConfig& c) {
  OutputTable t;
  t.header = c.echo();
  return t;
}

}  // namespace

OutputTable cmd_kernel(const RunConfig& c) {
  OutputTable t = base_table(c);
  const RationalKernel K(equispaced_poles(c.m.front()));
  const Interval w = c.window.value_or(Interval{-c.L, c.L});
  t.columns = {"x", "K"};
  for (int i = 0; i < c.n; ++i) {
    const double x = w.lo + (w.hi - w.lo) * i / (c.n - 1);
    t.rows.push_back({x, eval_kernel(K, x)});
  }
  const MomentReport r = verify_moments(K, 1e-7);
  auto pairs = [](const std::vector<cplx>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (cplx z : v) a.push_back({z.real(), z.imag()});
    return a;
  };
  t.sidecar["poles"] = pairs(K.poles());
  t.sidecar["residues"] = pairs(K.residues());
  t.sidecar["normalization_error"] = r.normalization_error;
  t.sidecar["moment_errors"] = r.moment_errors;
  t.sidecar["decay_exponent_fit"] = r.decay_exponent_fit;
  t.sidecar["tail_bound"] = r.tail_bound;
  t.sidecar["moments_passed"] = r.passed;
  return t;
}

OutputTable cmd_eigenfunction(const RunConfig& c) {
  OutputTable t = base_table(c);
  const double lambda = c.lambda.front(), eps = c.eps.front();
  const RationalKernel K(equispaced_poles(c.m.front()));
  t.sidecar["lambda"] = lambda;
  t.sidecar["eps"] = eps;
  t.sidecar["m"] = c.m.front();

  if (c.op == OperatorKind::strip) {
    auto oracle = strip_setup(c);
    const StripGridFunction f = sample(strip_profile(c.f), strip_grid(c), c.n_y);
    collect_diagnostics(t, *oracle, c, f);
    const auto u = assemble(*oracle, K, eps, lambda, f);
    t.columns = {"x"};
    for (int n = 1; n <= c.n_y; ++n) {
      t.columns.push_back("re_c" + std::to_string(n));
      t.columns.push_back("im_c" + std::to_string(n));
    }
    const auto& x = u.values.x_grid().nodes;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (c.window && !c.window->contains(x[i])) continue;
      std::vector<double> row{x[i]};
      for (int n = 1; n <= c.n_y; ++n) {
        row.push_back(u.values.mode(n)[i].real());
        row.push_back(u.values.mode(n)[i].imag());
      }
      t.rows.push_back(std::move(row));
    }
    const auto energies = u.values.mode_energies(c.window);
    double total = 0.0;
    for (double e : energies) total += e;
    std::vector<double> fractions;
    for (double e : energies) fractions.push_back(total > 0.0 ? e / total : 0.0);
    t.sidecar["mode_energies"] = energies;
    t.sidecar["mode_fractions"] = fractions;
    return t;
  }

  LineSetup s = line_setup(c);
  const LineFunction& fdef = line_function(c.f);
  const GridFunction f = sample(fdef, s.grid);
  collect_diagnostics(t, *s.oracle, c, f);
  const auto u = assemble(*s.oracle, K, eps, lambda, f);

  std::optional<ReferenceEigenfunction> ref;
  if (c.op == OperatorKind::free_laplacian && fdef.transform && lambda > 0.0)
    ref = free_laplacian_reference(*fdef.transform, lambda);

  t.columns = {"x", "re_u", "im_u", "abs_u"};
  if (ref) t.columns.insert(t.columns.end(), {"re_ref", "im_ref", "abs_ref"});
  const auto& x = u.values.rule().nodes;
  double peak = 0.0, peak_x = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (c.window && !c.window->contains(x[i])) continue;
    const cplx v = u.values[i];
    std::vector<double> row{x[i], v.real(), v.imag(), std::abs(v)};
    if (ref) {
      const cplx r = ref->evaluate(x[i]);
      row.insert(row.end(), {r.real(), r.imag(), std::abs(r)});
    }
    if (std::abs(v) > peak) {
      peak = std::abs(v);
      peak_x = x[i];
    }
    t.rows.push_back(std::move(row));
  }
  t.sidecar["norm"] = norm(u.values);
  t.sidecar["peak_x"] = peak_x;
  if (c.op == OperatorKind::multiplication || c.op == OperatorKind::rank_one) {
    std::vector<double> roots;
    for (const CubicRoot& r : cubic_roots_in_interval(lambda, {-1.0, 1.0})) roots.push_back(r.x);
    t.sidecar["cubic_roots"] = roots;
  }
  if (ref) {
    const Interval w = c.window.value_or(Interval{-c.L, c.L});
    t.sidecar["sup_error_vs_reference"] = sup_error(u, *ref, w);
  }
  return t;
}

OutputTable cmd_measure(const RunConfig& c) {
  OutputTable t = base_table(c);
  t.columns = {"lambda"};
  std::vector<RationalKernel> kernels;
  for (int m : c.m) {
    kernels.emplace_back(equispaced_poles(m));
    for (double e : c.eps) t.columns.push_back("rho_m" + std::to_string(m) + "_eps" + short_number(e));
  }
  for (double lambda : c.lambda) t.rows.push_back({lambda});

  auto fill = [&](auto& oracle, const auto& f) {
    collect_diagnostics(t, oracle, c, f);
    for (std::size_t i = 0; i < c.lambda.size(); ++i)
      for (const auto& K : kernels)
        for (double e : c.eps) t.rows[i].push_back(smoothed_density(oracle, K, e, c.lambda[i], f));
  };
  if (c.op == OperatorKind::strip) {
    auto oracle = strip_setup(c);
    fill(*oracle, sample(strip_profile(c.f), strip_grid(c), c.n_y));
  } else {
    LineSetup s = line_setup(c);
    fill(*s.oracle, sample(line_function(c.f), s.grid));
  }
  return t;
}

OutputTable cmd_converge(const RunConfig& c) {
  OutputTable t = base_table(c);
  validate_sweep_eps(c.eps);
  const double lambda = c.lambda.front();
  const double min_eps = *std::min_element(c.eps.begin(), c.eps.end());
  std::vector<ErrorSweep> sweeps;

  if (c.mode == "sup") {
    if (c.op != OperatorKind::free_laplacian)
      throw NoReferenceAvailable("converge --mode sup needs a closed-form eigenfunction; only "
                                 "free_laplacian has one");
    const LineFunction& fdef = line_function(c.f);
    if (!fdef.transform)
      throw NoReferenceAvailable("converge --mode sup: function '" + c.f +
                                 "' has no analytic transform");
    LineSetup s = line_setup(c);
    SweepConfig<GridFunction> sc;
    sc.oracle = s.oracle.get();
    sc.f = sample(fdef, s.grid);
    sc.reference = free_laplacian_reference(*fdef.transform, lambda);
    sc.window = c.window;
    sc.lambda = lambda;
    sc.orders = c.m;
    sc.eps = c.eps;
    sc.mode = SweepMode::sup;
    collect_diagnostics(t, *s.oracle, c, *sc.f);
    sweeps = error_sweep(sc);
  } else if (c.op == OperatorKind::strip) {
    const StripProfile& f = strip_profile(c.f);
    const StripProfile& phi = strip_profile(c.phi);
    const double ref = rho_strip(strip_mode_transforms(f, c.n_y), strip_mode_transforms(phi, c.n_y),
                                 lambda);
    auto oracle = strip_setup(c);
    SweepConfig<StripGridFunction> sc;
    sc.oracle = oracle.get();
    sc.f = sample(f, strip_grid(c), c.n_y);
    sc.phi = sample(phi, strip_grid(c), c.n_y);
    sc.weak_reference = ref;
    sc.lambda = lambda;
    sc.orders = c.m;
    sc.eps = c.eps;
    collect_diagnostics(t, *oracle, c, *sc.f);
    sweeps = error_sweep(sc);
  } else {
    const LineFunction& f = line_function(c.f);
    const LineFunction& phi = line_function(c.phi);
    double ref = 0.0;
    if (c.op == OperatorKind::multiplication) {
      ref = rho_multiplication(f.f, phi.f, lambda);
    } else if (c.op == OperatorKind::free_laplacian) {
      if (!f.transform || !phi.transform)
        throw NoReferenceAvailable("converge: free_laplacian weak reference needs analytic transforms");
      ref = rho_free_laplacian(*f.transform, *phi.transform, lambda);
    } else {
      throw NoReferenceAvailable("converge: no closed-form density for operator '" + to_string(c.op) +
                                 "'");
    }
    // The multiplication packet concentrates on eps/|p'| around the roots.
    LineSetup s = c.op == OperatorKind::multiplication ? line_setup(c, min_eps) : line_setup(c);
    SweepConfig<GridFunction> sc;
    sc.oracle = s.oracle.get();
    sc.f = sample(f, s.grid);
    sc.phi = sample(phi, s.grid);
    sc.weak_reference = ref;
    sc.lambda = lambda;
    sc.orders = c.m;
    sc.eps = c.eps;
    collect_diagnostics(t, *s.oracle, c, *sc.f);
    sweeps = error_sweep(sc);
  }

  t.columns = {"m", "eps", "error"};
  nlohmann::json slopes = nlohmann::json::object();
  for (const auto& sw : sweeps) {
    for (const auto& p : sw.points) t.rows.push_back({static_cast<double>(sw.order), p.eps, p.error});
    slopes[std::to_string(sw.order)] = sw.slope;
  }
  t.sidecar["slopes"] = slopes;
  t.sidecar["lambda"] = lambda;
  return t;
}

OutputTable run(const RunConfig& c) {
  switch (c.command) {
    case Command::kernel: return cmd_kernel(c);
    case Command::eigenfunction: return cmd_eigenfunction(c);
    case Command::measure: return cmd_measure(c);
    case Command::converge: return cmd_converge(c);
  }
  throw ConfigError("unknown command");
}

}  // namespace specwave::cli
