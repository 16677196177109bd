#include "robust_synth/abstraction/builder.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "robust_synth/common/errors.hpp"
#include "robust_synth/common/parallel.hpp"
#include "robust_synth/models/gaussian.hpp"
#include "robust_synth/ssr/coupling.hpp"

namespace robust_synth::abstraction {

namespace {

constexpr double kWindowSigmas = 8.0;

struct AxisMass {
  std::size_t first = 0;
  std::vector<double> p;
};

using Entry = std::pair<std::uint32_t, double>;

// Cells of N(mean, diag(sigma^2)) with mass >= threshold, sorted by flat index,
// followed by the sink entry carrying the remainder.
std::vector<Entry> gaussian_row(const Grid& grid, const Eigen::VectorXd& mean, const Eigen::VectorXd& sigma,
                                double threshold) {
  const std::size_t n = grid.dim();
  std::vector<AxisMass> axes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = mean[static_cast<Eigen::Index>(i)];
    const double sd = sigma[static_cast<Eigen::Index>(i)];
    const double lo = grid.bounds().lo(i);
    const double h = grid.width(i);
    const auto cells = static_cast<double>(grid.cells_per_dim()[i]);
    const double k_lo = std::clamp(std::floor((m - kWindowSigmas * sd - lo) / h), 0.0, cells);
    const double k_hi = std::clamp(std::floor((m + kWindowSigmas * sd - lo) / h) + 1.0, 0.0, cells);
    auto& axis = axes[i];
    axis.first = static_cast<std::size_t>(k_lo);
    for (auto k = axis.first; k < static_cast<std::size_t>(k_hi); ++k) {
      const double a = lo + double(k) * h;
      const double b = k + 1 == grid.cells_per_dim()[i] ? grid.bounds().hi(i) : a + h;
      const double p = models::std_normal_interval((a - m) / sd, (b - m) / sd);
      axis.p.push_back(p >= threshold ? p : 0.0);
    }
  }

  std::vector<Entry> row;
  double total = 0.0;
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = 1; i < n; ++i) stride[i] = stride[i - 1] * grid.cells_per_dim()[i - 1];
  // Highest dimension outermost keeps flat indices increasing.
  std::function<void(std::size_t, std::size_t, double)> expand = [&](std::size_t dim, std::size_t base, double p) {
    const auto& axis = axes[dim];
    for (std::size_t j = 0; j < axis.p.size(); ++j) {
      if (axis.p[j] == 0.0) continue;
      const double q = p * axis.p[j];
      if (q < threshold) continue;
      const std::size_t idx = base + (axis.first + j) * stride[dim];
      if (dim == 0) {
        row.emplace_back(static_cast<std::uint32_t>(idx), q);
        total += q;
      } else {
        expand(dim - 1, idx, q);
      }
    }
  };
  expand(n - 1, 0, 1.0);
  const double rest = 1.0 - total;
  if (rest > 0.0) row.emplace_back(static_cast<std::uint32_t>(grid.num_cells()), rest);
  return row;
}

Eigen::VectorXd axis_sigma(const Eigen::MatrixXd& R) {
  const auto sd = models::diagonal_std(R);
  if (!sd) throw InputError("grid abstraction needs a diagonal noise covariance R R^T");
  return *sd;
}

AbstractMdp assemble(const Grid& grid, std::size_t num_inputs, const std::function<Eigen::VectorXd(std::size_t, std::size_t)>& mean_of,
                     const Eigen::VectorXd& sigma, double threshold, std::vector<Eigen::VectorXd> outputs) {
  if (grid.num_cells() >= std::numeric_limits<std::uint32_t>::max()) throw InputError("grid too large");
  const std::size_t ns = grid.num_cells();
  std::vector<std::vector<Entry>> rows(ns * num_inputs);
  parallel_for(ns, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      for (std::size_t u = 0; u < num_inputs; ++u) {
        rows[s * num_inputs + u] = gaussian_row(grid, mean_of(s, u), sigma, threshold);
      }
    }
  });
  std::size_t nnz = num_inputs;
  for (const auto& r : rows) nnz += r.size();
  std::vector<std::uint64_t> offsets;
  offsets.reserve((ns + 1) * num_inputs + 1);
  offsets.push_back(0);
  std::vector<std::uint32_t> cols;
  std::vector<double> probs;
  cols.reserve(nnz);
  probs.reserve(nnz);
  for (auto& r : rows) {
    for (const auto& [c, p] : r) {
      cols.push_back(c);
      probs.push_back(p);
    }
    offsets.push_back(cols.size());
    std::vector<Entry>().swap(r);
  }
  for (std::size_t u = 0; u < num_inputs; ++u) {
    cols.push_back(static_cast<std::uint32_t>(ns));
    probs.push_back(1.0);
    offsets.push_back(cols.size());
  }
  return AbstractMdp(ns, num_inputs, std::move(offsets), std::move(cols), std::move(probs), std::move(outputs));
}

void check_inputs(const std::vector<Eigen::VectorXd>& inputs, std::size_t input_dim) {
  if (inputs.empty()) throw InputError("at least one input sample required");
  for (const auto& u : inputs) {
    if (static_cast<std::size_t>(u.size()) != input_dim) throw InputError("input sample has the wrong dimension");
  }
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

ssr::SsrCertificate linear_grid_certificate(const models::LinearModel& model, const Grid& grid) {
  if (grid.dim() != model.state_dim()) throw InputError("grid dimension differs from the state dimension");
  const double a = models::spectral_norm(model.A());
  const double c = models::spectral_norm(model.C());
  ssr::SsrCertificate cert;
  cert.abstract_model = "grid";
  cert.concrete_model = "nominal";
  cert.delta = 0.0;
  if (a < 1.0) {
    const double radius = grid.beta() / (1.0 - a);
    cert.epsilon = c * radius;
    cert.relation = ssr::Relation{ssr::RelationKind::GridCell, radius, "||x_hat - center|| <= " + fmt_double(radius)};
    cert.provenance = {"grid abstraction, shared noise, beta=" + fmt_double(grid.beta()) + ", ||A||=" + fmt_double(a)};
  } else {
    cert.valid = false;
    cert.epsilon = std::numeric_limits<double>::infinity();
    cert.relation = ssr::Relation{ssr::RelationKind::GridCell, cert.epsilon, "unbounded"};
    cert.provenance = {"grid abstraction unavailable: ||A||=" + fmt_double(a) + " >= 1"};
  }
  return cert;
}

Abstraction abstract_linear(const models::LinearModel& model, const Grid& grid, std::vector<Eigen::VectorXd> inputs,
                            const AbstractionOptions& options) {
  check_inputs(inputs, model.input_dim());
  auto cert = linear_grid_certificate(model, grid);
  const Eigen::VectorXd sigma = axis_sigma(model.noise_factor());
  std::vector<Eigen::VectorXd> centers(grid.num_cells());
  std::vector<Eigen::VectorXd> outputs(grid.num_cells());
  for (std::size_t s = 0; s < grid.num_cells(); ++s) {
    centers[s] = grid.center(s);
    outputs[s] = model.output(centers[s]);
  }
  auto mean_of = [&](std::size_t s, std::size_t u) -> Eigen::VectorXd {
    return model.mean(centers[s], inputs[u], model.nominal_theta());
  };
  auto mdp = assemble(grid, inputs.size(), mean_of, sigma, options.prune_threshold, std::move(outputs));
  return Abstraction{grid, std::move(inputs), std::move(mdp), std::move(cert)};
}

double cell_offset_bound(const models::NonlinearModel& model, const Grid& grid, std::size_t s,
                         const Eigen::VectorXd& u) {
  const Eigen::MatrixXd M = model.dynamics().jacobian_bound(grid.cell(s), u, model.nominal_theta());
  return models::spectral_norm(M) * grid.beta();
}

Abstraction abstract_nonlinear(const models::NonlinearModel& model, const Grid& grid,
                               std::vector<Eigen::VectorXd> inputs, const AbstractionOptions& options) {
  if (grid.dim() != model.state_dim()) throw InputError("grid dimension differs from the state dimension");
  check_inputs(inputs, model.input_dim());
  const Eigen::VectorXd sigma = axis_sigma(model.noise_factor());
  const double r_inv = models::spectral_norm(model.noise_factor_inverse());
  std::vector<Eigen::VectorXd> centers(grid.num_cells());
  std::vector<Eigen::VectorXd> outputs(grid.num_cells());
  for (std::size_t s = 0; s < grid.num_cells(); ++s) {
    centers[s] = grid.center(s);
    outputs[s] = model.output(centers[s]);
  }
  ssr::DeltaTable table(grid.num_cells(), inputs.size());
  parallel_for(grid.num_cells(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      for (std::size_t u = 0; u < inputs.size(); ++u) {
        const double ell = cell_offset_bound(model, grid, s, inputs[u]);
        table.at(s, u) = std::clamp(1.0 - ssr::coupling_mass_from_norm(r_inv * ell), 0.0, 1.0);
      }
    }
  });
  auto mean_of = [&](std::size_t s, std::size_t u) -> Eigen::VectorXd {
    return model.mean(centers[s], inputs[u], model.nominal_theta());
  };
  auto mdp = assemble(grid, inputs.size(), mean_of, sigma, options.prune_threshold, std::move(outputs));

  ssr::SsrCertificate cert;
  cert.abstract_model = "grid";
  cert.concrete_model = "nominal";
  cert.epsilon = grid.beta() * model.dynamics().output_lipschitz();
  cert.delta = std::move(table);
  cert.relation = ssr::Relation{ssr::RelationKind::GridCell, grid.beta(), "x_hat in cell(x_tilde)"};
  cert.provenance = {"grid abstraction, per-cell Lipschitz offset coupling, beta=" + fmt_double(grid.beta())};
  return Abstraction{grid, std::move(inputs), std::move(mdp), std::move(cert)};
}

}  // namespace robust_synth::abstraction
