#include "hyperfem/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"

namespace hyperfem
{

namespace
{

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0)
{
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double median(std::vector<double> v)
{
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1)
    return v[mid];
  const double upper = v[mid];
  return 0.5 * (upper + *std::max_element(v.begin(), v.begin() + mid));
}

double relative_difference(const std::vector<double>& a, const std::vector<double>& b)
{
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

template <int dim>
struct Problem
{
  ProblemSetup<dim> setup;
  std::shared_ptr<const Discretization<dim>> disc;
  int levels = 1;
};

template <int dim>
Problem<dim> make_problem(const BenchConfig& config, std::size_t degree_index)
{
  const int refines = config.refinements_for(degree_index);
  Problem<dim> pr;
  pr.setup = ProblemSetup<dim>::standard(config.model, config.coarse_cells, refines);
  pr.disc = std::make_shared<const Discretization<dim>>(pr.setup.mesh.finest(), pr.setup.materials,
                                                        config.degrees[degree_index],
                                                        GeometryLayout::PerQuadraturePoint, config.workers);
  pr.levels = refines + 1;
  return pr;
}

template <int dim>
BenchRecord base_record(const BenchConfig& config, const Problem<dim>& pr, TangentStrategy s, const char* kind)
{
  BenchRecord r;
  r.kind = kind;
  r.model = config.model;
  r.strategy = s;
  r.dim = dim;
  r.degree = pr.disc->degree();
  r.levels = pr.levels;
  r.cells_per_direction = pr.disc->level().cells_per_direction;
  r.n_dofs = pr.disc->n_dofs();
  r.n_qp = pr.disc->n_quadrature_points();
  r.qp_dof_ratio = quadrature_dof_ratio(pr.disc->level(), pr.disc->degree());
  return r;
}

template <int dim>
std::vector<BenchRecord> vmult_bench(const BenchConfig& config)
{
  std::vector<BenchRecord> out;
  for (std::size_t k = 0; k < config.degrees.size(); ++k)
  {
    const Problem<dim> pr = make_problem<dim>(config, k);
    const std::vector<double> u_bar = prescribed_state(*pr.disc, config.state_amplitude);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> src(pr.disc->n_dofs());
    for (auto& x : src)
      x = dist(rng);

    std::vector<std::unique_ptr<TangentOperator<dim>>> ops;
    std::vector<double> reference;
    for (const TangentStrategy s : config.strategies)
    {
      auto op = std::make_unique<TangentOperator<dim>>(pr.disc, s);
      op->prepare(u_bar);
      const std::vector<double> y = op->vmult(src);
      if (reference.empty())
        reference = y;
      else if (const double diff = relative_difference(y, reference); !(diff <= 1e-10))
        throw EquivalenceFailure(std::string(to_string(s)) + " differs from " +
                                 std::string(to_string(config.strategies.front())) + " by " +
                                 std::to_string(diff) + " at p = " + std::to_string(config.degrees[k]));
      ops.push_back(std::move(op));
    }

    // Repetitions are interleaved across strategies so that slow phases of
    // the machine hit all of them alike.
    std::vector<double> dst(src.size());
    for (int w = 0; w < config.warmups; ++w)
      for (const auto& op : ops)
        op->vmult(src, dst);
    std::vector<std::vector<double>> times(ops.size());
    for (int r = 0; r < config.repetitions; ++r)
      for (std::size_t i = 0; i < ops.size(); ++i)
      {
        const auto t0 = clock_type::now();
        ops[i]->vmult(src, dst);
        times[i].push_back(seconds_since(t0));
      }
    for (std::size_t i = 0; i < ops.size(); ++i)
    {
      BenchRecord rec = base_record(config, pr, config.strategies[i], "vmult");
      rec.median_seconds = median(times[i]);
      rec.throughput = static_cast<double>(rec.n_dofs) / rec.median_seconds;
      const OperatorMemory mem = ops[i]->memory();
      rec.constitutive_bytes_per_dof = static_cast<double>(mem.constitutive) / static_cast<double>(rec.n_dofs);
      rec.total_bytes_per_dof = static_cast<double>(mem.total()) / static_cast<double>(rec.n_dofs);
      out.push_back(rec);
    }
  }
  return out;
}

template <int dim>
std::vector<BenchRecord> flop_census(const BenchConfig& config)
{
  constexpr std::size_t max_cells = 4;
  std::vector<BenchRecord> out;
  for (std::size_t k = 0; k < config.degrees.size(); ++k)
  {
    const Problem<dim> pr = make_problem<dim>(config, k);
    const Discretization<dim>& d = *pr.disc;
    const std::vector<double> u_bar = prescribed_state(d, config.state_amplitude);
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> du(d.n_dofs());
    for (auto& x : du)
      x = dist(rng);
    d.zero_constrained(du);

    const std::size_t n_cells = std::min<std::size_t>(max_cells, static_cast<std::size_t>(d.n_cells()));
    std::vector<double> local_u(dim * d.dofs().nodes_per_cell), local_du(local_u.size());
    for (const TangentStrategy s : config.strategies)
    {
      if (s == TangentStrategy::SparseBaseline)
        continue; // no quadrature body
      std::uint64_t total = 0, points = 0;
      for (std::size_t c = 0; c < n_cells; ++c)
      {
        const CellGeometry<dim> geom = d.geometry().cell(c);
        d.dofs().gather(static_cast<index_t>(c), u_bar, local_u);
        d.dofs().gather(static_cast<index_t>(c), du, local_du);
        const auto h_u = evaluate_gradients<dim>(d.basis(), local_u, geom);
        const auto h_du = evaluate_gradients<dim>(d.basis(), local_du, geom);
        for (std::size_t q = 0; q < h_u.size(); ++q)
        {
          const Tensor2<double, dim>& inv_jac = geom.inv_jac(static_cast<int>(q));
          const Tensor2<double, dim> jac = inverse(inv_jac);
          total += count_qp_body<dim>(s, d.material(static_cast<index_t>(c)), dot(h_u[q], jac),
                                      dot(h_du[q], jac), inv_jac, geom.jxw[q])
                     .total();
          ++points;
        }
      }
      BenchRecord rec = base_record(config, pr, s, "flops");
      rec.flops_per_qp = static_cast<double>(total) / static_cast<double>(points);
      out.push_back(rec);
    }
  }
  return out;
}

template <int dim>
std::vector<BenchRecord> memory_census(const BenchConfig& config)
{
  std::vector<BenchRecord> out;
  for (std::size_t k = 0; k < config.degrees.size(); ++k)
  {
    const Problem<dim> pr = make_problem<dim>(config, k);
    const std::vector<double> u_bar = prescribed_state(*pr.disc, config.state_amplitude);
    for (const TangentStrategy s : config.strategies)
    {
      OperatorMemory mem;
      if (s == TangentStrategy::SparseBaseline && config.analytic_sparse_memory)
      {
        const auto n = static_cast<std::size_t>(pr.disc->n_dofs());
        const auto nnz = static_cast<std::size_t>(sparse_nonzeros(pr.disc->dofs()));
        mem.matrix = (n + 1) * sizeof(std::int64_t) + nnz * (sizeof(std::int32_t) + sizeof(double));
      }
      else
      {
        TangentOperator<dim> op(pr.disc, s);
        op.prepare(u_bar);
        mem = op.memory();
      }
      BenchRecord rec = base_record(config, pr, s, "memory");
      rec.constitutive_bytes_per_dof = static_cast<double>(mem.constitutive) / static_cast<double>(rec.n_dofs);
      rec.total_bytes_per_dof = static_cast<double>(mem.total()) / static_cast<double>(rec.n_dofs);
      out.push_back(rec);
    }
  }
  return out;
}

template <int dim>
std::vector<BenchRecord> time_to_solution(const BenchConfig& config,
                                          const SolverConfig& solver,
                                          std::vector<BenchRecord>* partial)
{
  std::vector<BenchRecord> out;
  for (std::size_t k = 0; k < config.degrees.size(); ++k)
  {
    const Problem<dim> pr = make_problem<dim>(config, k);
    for (const TangentStrategy s : config.strategies)
    {
      const NewtonResult res = newton_solve<dim>(pr.setup, config.degrees[k], s, solver, config.workers);
      BenchRecord rec = base_record(config, pr, s, "solve");
      rec.newton_iterations = res.newton_iterations;
      rec.cg_iterations = res.cg_iterations;
      rec.solve_seconds = res.seconds;
      out.push_back(rec);
      if (partial)
        partial->push_back(rec);
    }
  }
  return out;
}

template <typename F>
std::vector<BenchRecord> by_dim(const BenchConfig& config, F&& f)
{
  config.validate();
  if (config.dim == 2)
    return f(std::integral_constant<int, 2>{});
  return f(std::integral_constant<int, 3>{});
}

template <int dim>
StoreQpData<CountingScalar, dim> to_counting(const StoreQpData<double, dim>& d)
{
  StoreQpData<CountingScalar, dim> r;
  std::copy(d.c_spatial.data.begin(), d.c_spatial.data.end(), r.c_spatial.data.begin());
  std::copy(d.sigma.data.begin(), d.sigma.data.end(), r.sigma.data.begin());
  r.to_spatial = cast_tensor<CountingScalar>(d.to_spatial);
  return r;
}

const std::vector<std::string> csv_columns = {
  "kind", "model", "strategy", "dim", "degree", "levels", "cells_per_direction", "n_dofs", "n_qp",
  "median_seconds", "throughput", "constitutive_bytes_per_dof", "total_bytes_per_dof", "flops_per_qp",
  "qp_dof_ratio", "newton_iterations", "cg_iterations", "solve_seconds"};

std::string format_real(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real(const std::string& s)
{
  std::size_t pos = 0;
  const double x = std::stod(s, &pos);
  if (pos != s.size())
    throw IoError("malformed number '" + s + "'");
  return x;
}

std::vector<std::string> split(const std::string& line)
{
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ','))
    fields.push_back(f);
  if (!line.empty() && line.back() == ',')
    fields.emplace_back();
  return fields;
}

} // namespace

void BenchConfig::validate() const
{
  if (strategies.empty())
    throw ConfigError("no strategies selected");
  if (dim != 2 && dim != 3)
    throw ConfigError("dim must be 2 or 3");
  if (degrees.empty())
    throw ConfigError("no degrees selected");
  const int max_p = dim == 2 ? max_degree<2> : max_degree<3>;
  for (const int p : degrees)
    if (p < 1 || p > max_p)
      throw ConfigError("degree " + std::to_string(p) + " outside [1, " + std::to_string(max_p) + "] in " +
                        std::to_string(dim) + "D");
  if (refinements.empty() || (refinements.size() != 1 && refinements.size() != degrees.size()))
    throw ConfigError("give one refinement count or one per degree");
  for (const int r : refinements)
    if (r < 0 || r > 10)
      throw ConfigError("refinement count out of range");
  if (coarse_cells < 1)
    throw ConfigError("coarse_cells must be positive");
  if (repetitions < 1 || warmups < 0)
    throw ConfigError("repetitions must be positive");
  if (workers < 1)
    throw ConfigError("workers must be positive");
  if (!(state_amplitude >= 0.0 && state_amplitude * std::numbers::pi * dim < 0.5))
    throw ConfigError("state amplitude must be in [0, 0.5 / (pi dim))");
}

int BenchConfig::refinements_for(std::size_t degree_index) const
{
  return refinements.size() == 1 ? refinements[0] : refinements.at(degree_index);
}

BenchConfig apply_config_file(const std::filesystem::path& path, BenchConfig c)
{
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file " + path.string());
  nlohmann::json j;
  try
  {
    in >> j;
    if (!j.is_object())
      throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items())
    {
      if (key == "model")
        c.model = parse_material_model(value.get<std::string>());
      else if (key == "strategies")
      {
        c.strategies.clear();
        for (const auto& s : value)
          c.strategies.push_back(parse_strategy(s.get<std::string>()));
      }
      else if (key == "dim")
        c.dim = value.get<int>();
      else if (key == "degrees")
        c.degrees = value.get<std::vector<int>>();
      else if (key == "refinements")
        c.refinements = value.is_array() ? value.get<std::vector<int>>() : std::vector<int>{value.get<int>()};
      else if (key == "coarse_cells")
        c.coarse_cells = value.get<int>();
      else if (key == "reps")
        c.repetitions = value.get<int>();
      else if (key == "warmups")
        c.warmups = value.get<int>();
      else if (key == "workers")
        c.workers = value.get<int>();
      else if (key == "amplitude")
        c.state_amplitude = value.get<double>();
      else if (key == "out")
        c.output = value.get<std::string>();
      else
        throw ConfigError("unknown config key '" + key + "'");
    }
  }
  catch (const nlohmann::json::exception& e)
  {
    throw ConfigError(std::string("config file: ") + e.what());
  }
  return c;
}

template <int dim>
std::vector<double> prescribed_state(const Discretization<dim>& disc, double amplitude)
{
  const double l = disc.level().extent;
  const double pi = std::numbers::pi;
  const DofMap<dim>& dofs = disc.dofs();
  std::vector<double> u(dofs.n_dofs);
  for (index_t node = 0; node < dofs.n_nodes; ++node)
  {
    const Point<dim>& x = dofs.support_points[node];
    double shape = std::sin(pi * x[1] / l);
    if constexpr (dim == 3)
      shape *= std::sin(pi * x[2] / l);
    for (int c = 0; c < dim; ++c)
      u[node * dim + c] = amplitude * l * std::sin(pi * (c + 1) * x[0] / l) * shape;
  }
  disc.zero_constrained(u);
  return u;
}

template <int dim>
OpCounts count_qp_body(TangentStrategy strategy,
                       const MaterialParams& params,
                       const Tensor2<double, dim>& unit_grad_ubar,
                       const Tensor2<double, dim>& unit_grad_du,
                       const Tensor2<double, dim>& inv_jac,
                       double jxw)
{
  const auto ubar = cast_tensor<CountingScalar>(unit_grad_ubar);
  const auto du = cast_tensor<CountingScalar>(unit_grad_du);
  switch (strategy)
  {
    case TangentStrategy::Naive:
      return count_operations([&] { (void)naive_qp<CountingScalar, dim>(params, ubar, du, inv_jac, jxw); });
    case TangentStrategy::Recompute:
      return count_operations([&] { (void)recompute_qp<CountingScalar, dim>(params, ubar, du, inv_jac, jxw); });
    case TangentStrategy::Store:
    {
      const StoreQpData<CountingScalar, dim> data =
        to_counting(make_store_data<dim>(params, dot(unit_grad_ubar, inv_jac), inv_jac, jxw));
      return count_operations([&] { (void)store_qp<CountingScalar, dim>(data, du); });
    }
    case TangentStrategy::SparseBaseline:
      break;
  }
  return {};
}

std::vector<BenchRecord> run_vmult_bench(const BenchConfig& config)
{
  return by_dim(config, [&](auto d) { return vmult_bench<decltype(d)::value>(config); });
}

std::vector<BenchRecord> run_flop_census(const BenchConfig& config)
{
  return by_dim(config, [&](auto d) { return flop_census<decltype(d)::value>(config); });
}

std::vector<BenchRecord> run_memory_census(const BenchConfig& config)
{
  return by_dim(config, [&](auto d) { return memory_census<decltype(d)::value>(config); });
}

std::vector<BenchRecord> run_time_to_solution(const BenchConfig& config,
                                              const SolverConfig& solver,
                                              std::vector<BenchRecord>* partial)
{
  solver.validate();
  return by_dim(config, [&](auto d) { return time_to_solution<decltype(d)::value>(config, solver, partial); });
}

void write_csv(const std::vector<BenchRecord>& records, std::ostream& out)
{
  out << csv_version << '\n';
  for (std::size_t i = 0; i < csv_columns.size(); ++i)
    out << (i ? "," : "") << csv_columns[i];
  out << '\n';
  for (const BenchRecord& r : records)
  {
    out << r.kind << ',' << to_string(r.model) << ',' << to_string(r.strategy) << ',' << r.dim << ','
        << r.degree << ',' << r.levels << ',' << r.cells_per_direction << ',' << r.n_dofs << ',' << r.n_qp
        << ',' << format_real(r.median_seconds) << ',' << format_real(r.throughput) << ','
        << format_real(r.constitutive_bytes_per_dof) << ',' << format_real(r.total_bytes_per_dof) << ','
        << format_real(r.flops_per_qp) << ',' << format_real(r.qp_dof_ratio) << ',' << r.newton_iterations
        << ',' << r.cg_iterations << ',' << format_real(r.solve_seconds) << '\n';
  }
}

std::vector<BenchRecord> read_csv(std::istream& in)
{
  std::string line;
  if (!std::getline(in, line) || line != csv_version)
    throw IoError("missing or unsupported CSV version line");
  if (!std::getline(in, line) || split(line) != csv_columns)
    throw IoError("unexpected CSV header");
  std::vector<BenchRecord> records;
  while (std::getline(in, line))
  {
    if (line.empty())
      continue;
    const auto f = split(line);
    if (f.size() != csv_columns.size())
      throw IoError("wrong field count in CSV row: " + line);
    try
    {
      BenchRecord r;
      r.kind = f[0];
      r.model = parse_material_model(f[1]);
      r.strategy = parse_strategy(f[2]);
      r.dim = std::stoi(f[3]);
      r.degree = std::stoi(f[4]);
      r.levels = std::stoi(f[5]);
      r.cells_per_direction = std::stoi(f[6]);
      r.n_dofs = std::stoll(f[7]);
      r.n_qp = std::stoll(f[8]);
      r.median_seconds = parse_real(f[9]);
      r.throughput = parse_real(f[10]);
      r.constitutive_bytes_per_dof = parse_real(f[11]);
      r.total_bytes_per_dof = parse_real(f[12]);
      r.flops_per_qp = parse_real(f[13]);
      r.qp_dof_ratio = parse_real(f[14]);
      r.newton_iterations = std::stoi(f[15]);
      r.cg_iterations = std::stoi(f[16]);
      r.solve_seconds = parse_real(f[17]);
      records.push_back(r);
    }
    catch (const std::logic_error&)
    {
      throw IoError("malformed CSV row: " + line);
    }
    catch (const ConfigError&)
    {
      throw IoError("unknown model or strategy in CSV row: " + line);
    }
  }
  return records;
}

void write_svg(const std::vector<BenchRecord>& records, std::ostream& out)
{
  // Series keyed by (dim, model, strategy), throughput against degree.
  std::map<std::string, std::vector<std::pair<int, double>>> series;
  int p_min = 1, p_max = 1;
  double t_min = 0.0, t_max = 0.0;
  bool first = true;
  for (const BenchRecord& r : records)
  {
    if (r.kind != "vmult" || !(r.throughput > 0.0))
      continue;
    const std::string key = std::to_string(r.dim) + "D " + std::string(to_string(r.model)) + " " +
                            std::string(to_string(r.strategy));
    series[key].emplace_back(r.degree, r.throughput);
    if (first)
    {
      p_min = p_max = r.degree;
      t_min = t_max = r.throughput;
      first = false;
    }
    p_min = std::min(p_min, r.degree);
    p_max = std::max(p_max, r.degree);
    t_min = std::min(t_min, r.throughput);
    t_max = std::max(t_max, r.throughput);
  }
  const double w = 640, h = 400, left = 70, right = 200, top = 20, bottom = 50;
  double lo = first ? 0.0 : std::floor(std::log10(t_min));
  double hi = first ? 1.0 : std::ceil(std::log10(t_max));
  if (hi <= lo)
    hi = lo + 1.0;
  const auto sx = [&](double p) {
    return p_max == p_min ? left + 0.5 * (w - left - right)
                          : left + (p - p_min) / (p_max - p_min) * (w - left - right);
  };
  const auto sy = [&](double t) { return top + (hi - std::log10(t)) / (hi - lo) * (h - top - bottom); };
  const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right << "\" y2=\"" << h - bottom
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << h - bottom
      << "\" stroke=\"black\"/>\n";
  for (int p = p_min; p <= p_max; ++p)
    out << "<text x=\"" << sx(p) << "\" y=\"" << h - bottom + 18 << "\" font-size=\"12\" text-anchor=\"middle\">"
        << p << "</text>\n";
  for (int e = static_cast<int>(lo); e <= static_cast<int>(hi); ++e)
    out << "<text x=\"" << left - 6 << "\" y=\"" << sy(std::pow(10.0, e)) + 4
        << "\" font-size=\"12\" text-anchor=\"end\">1e" << e << "</text>\n";
  out << "<text x=\"" << left + 0.5 * (w - left - right) << "\" y=\"" << h - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">polynomial degree p</text>\n";
  out << "<text x=\"16\" y=\"" << top + 0.5 * (h - top - bottom)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << top + 0.5 * (h - top - bottom)
      << ")\">throughput [DoF/s]</text>\n";
  int k = 0;
  for (auto& [name, pts] : series)
  {
    std::sort(pts.begin(), pts.end());
    const char* color = colors[k % 8];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& [p, t] : pts)
      out << sx(p) << ',' << sy(t) << ' ';
    out << "\"/>\n";
    for (const auto& [p, t] : pts)
      out << "<circle cx=\"" << sx(p) << "\" cy=\"" << sy(t) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << w - right + 10 << "\" y=\"" << top + 16 * (k + 1) << "\" font-size=\"12\" fill=\""
        << color << "\">" << name << "</text>\n";
    ++k;
  }
  out << "</svg>\n";
}

void emit_report(const std::vector<BenchRecord>& records, const std::filesystem::path& path)
{
  if (records.empty())
    throw ConfigError("no records to report");
  std::filesystem::path svg = path;
  svg.replace_extension(".svg");
  {
    std::ofstream out(path, std::ios::binary);
    if (!out)
      throw IoError("cannot write " + path.string());
    write_csv(records, out);
    if (!out)
      throw IoError("write failed: " + path.string());
  }
  std::ofstream out(svg, std::ios::binary);
  if (!out)
    throw IoError("cannot write " + svg.string());
  write_svg(records, out);
  if (!out)
    throw IoError("write failed: " + svg.string());
}

template std::vector<double> prescribed_state<2>(const Discretization<2>&, double);
template std::vector<double> prescribed_state<3>(const Discretization<3>&, double);
template OpCounts count_qp_body<2>(TangentStrategy, const MaterialParams&, const Tensor2<double, 2>&,
                                   const Tensor2<double, 2>&, const Tensor2<double, 2>&, double);
template OpCounts count_qp_body<3>(TangentStrategy, const MaterialParams&, const Tensor2<double, 3>&,
                                   const Tensor2<double, 3>&, const Tensor2<double, 3>&, double);

} // namespace hyperfem
