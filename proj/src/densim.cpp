// SPDX-License-Identifier: Apache-2.0
#include "eacc/densim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

namespace eacc::densim {

std::size_t total_dimension(std::span<const std::uint32_t> dims) {
  std::size_t total = 1;
  for (std::uint32_t d : dims) {
    if (total > kDimensionCap * kDimensionCap / std::max<std::uint32_t>(d, 1))
      throw Error("subsystem dimension product overflows");
    total *= d;
  }
  return total;
}

DensityMatrix::DensityMatrix(std::vector<std::uint32_t> dims, Matrix rho)
    : dims_(std::move(dims)), rho_(std::move(rho)) {
  const std::size_t total = total_dimension(dims_);
  if (rho_.rows() != static_cast<Eigen::Index>(total) || rho_.cols() != static_cast<Eigen::Index>(total))
    throw Error("density matrix size does not match its subsystem dimensions");
}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<std::uint32_t> dims) {
  const auto total = static_cast<Eigen::Index>(total_dimension(dims));
  Matrix rho = Matrix::Identity(total, total) / static_cast<double>(total);
  return DensityMatrix(std::move(dims), std::move(rho));
}

DensityMatrix DensityMatrix::basis_projector(std::uint32_t dim, std::uint32_t index) {
  if (index >= dim) throw Error("basis index outside dimension");
  Matrix rho = Matrix::Zero(dim, dim);
  rho(index, index) = 1.0;
  return DensityMatrix({dim}, std::move(rho));
}

bool DensityMatrix::is_valid(double tol) const {
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho_.trace() - std::complex<double>(1.0, 0.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

DensityMatrix bell_projector(std::uint32_t dim, qsym::Displacement d) {
  if (d.x >= dim || d.z >= dim) throw Error("displacement outside dimension");
  const auto digits = qsym::weyl_digits(dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim) * dim);
  for (std::uint32_t j = 0; j < dim; ++j) {
    const double angle = 2.0 * std::numbers::pi * qsym::weyl_dot(dim, j, d.z) / digits.base;
    const std::uint32_t a = qsym::weyl_add(dim, j, d.x);
    psi(static_cast<Eigen::Index>(a) * dim + j) = std::polar(norm, angle);
  }
  return DensityMatrix({dim, dim}, psi * psi.adjoint());
}

ProductState to_factors(const qsym::SymbolicState& state, std::span<const qsym::SlotId> subset) {
  ProductState out;
  out.dims.reserve(subset.size());
  std::vector<std::size_t> position_of(state.layout().size(), subset.size());
  for (std::size_t pos = 0; pos < subset.size(); ++pos) {
    const qsym::SlotId slot = subset[pos];
    if (slot >= state.layout().size()) throw Error("subset slot out of range");
    if (position_of[slot] != subset.size()) throw Error("subset repeats a slot");
    position_of[slot] = pos;
    out.dims.push_back(state.layout()[slot].dim);
  }
  for (std::size_t pos = 0; pos < subset.size(); ++pos) {
    const qsym::SlotId slot = subset[pos];
    const std::uint32_t dim = out.dims[pos];
    const qsym::SlotContent& c = state.content(slot);
    switch (c.kind) {
      case qsym::ContentKind::erased:
        throw Error("subset contains erased slot " + state.layout()[slot].label);
      case qsym::ContentKind::classical:
        out.factors.push_back({FactorKind::classical, {pos}, DensityMatrix::basis_projector(dim, c.value)});
        break;
      case qsym::ContentKind::bell_half: {
        const qsym::Pair& p = state.pair(c.pair);
        const bool partner_erased = c.role == qsym::Role::first ? p.second_erased : p.first_erased;
        const qsym::SlotId other = c.role == qsym::Role::first ? p.second : p.first;
        if (partner_erased || position_of[other] == subset.size()) {
          out.factors.push_back({FactorKind::loose, {pos}, DensityMatrix::maximally_mixed({dim})});
        } else if (c.role == qsym::Role::first) {
          out.factors.push_back(
              {FactorKind::pair, {pos, position_of[other]}, bell_projector(dim, p.displacement)});
        }
        break;
      }
    }
  }
  return out;
}

namespace {

// local[f][i]: index of global basis state i inside factor f.
std::vector<std::vector<std::uint32_t>> local_indices(const ProductState& state, std::size_t total) {
  const std::size_t n = state.dims.size();
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t s = n; s-- > 1;) stride[s - 1] = stride[s] * state.dims[s];
  std::vector<std::vector<std::uint32_t>> local(state.factors.size(), std::vector<std::uint32_t>(total));
  for (std::size_t f = 0; f < state.factors.size(); ++f) {
    const auto& positions = state.factors[f].positions;
    for (std::size_t i = 0; i < total; ++i) {
      std::uint32_t idx = 0;
      for (std::size_t pos : positions) idx = idx * state.dims[pos] + (i / stride[pos]) % state.dims[pos];
      local[f][i] = idx;
    }
  }
  return local;
}

void check_cover(const ProductState& state) {
  std::vector<int> seen(state.dims.size(), 0);
  for (const auto& f : state.factors)
    for (std::size_t pos : f.positions) {
      if (pos >= seen.size()) throw Error("factor position out of range");
      ++seen[pos];
    }
  for (int s : seen)
    if (s != 1) throw Error("factors do not partition the subsystems");
}

std::complex<double> entry(const ProductState& state, const std::vector<std::vector<std::uint32_t>>& local,
                           std::size_t i, std::size_t j) {
  std::complex<double> v(1.0, 0.0);
  for (std::size_t f = 0; f < state.factors.size(); ++f) {
    v *= state.factors[f].rho.matrix()(local[f][i], local[f][j]);
    if (v == std::complex<double>(0.0, 0.0)) break;
  }
  return v;
}

}  // namespace

DensityMatrix assemble_serial(const ProductState& state) {
  const std::size_t total = total_dimension(state.dims);
  if (total > kDimensionCap) throw Error("dimension " + std::to_string(total) + " exceeds the 2^12 cap");
  check_cover(state);
  const auto local = local_indices(state, total);
  Matrix rho(total, total);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j) rho(i, j) = entry(state, local, i, j);
  return DensityMatrix(state.dims, std::move(rho));
}

DensityMatrix assemble(const ProductState& state) {
  const std::size_t total = total_dimension(state.dims);
  if (total > kDimensionCap) throw Error("dimension " + std::to_string(total) + " exceeds the 2^12 cap");
  check_cover(state);
  const auto local = local_indices(state, total);
  Matrix rho(total, total);
  const auto rows = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < total; ++j) rho(i, j) = entry(state, local, static_cast<std::size_t>(i), j);
  return DensityMatrix(state.dims, std::move(rho));
}

DensityMatrix to_density(const qsym::SymbolicState& state, std::span<const qsym::SlotId> subset) {
  return assemble(to_factors(state, subset));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const auto& dims = rho.dims();
  const std::size_t n = dims.size();
  std::vector<bool> kept(n, false);
  for (std::size_t k : keep) {
    if (k >= n) throw Error("partial trace index " + std::to_string(k) + " out of range");
    if (kept[k]) throw Error("partial trace index repeated");
    kept[k] = true;
  }
  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < n; ++s)
    if (!kept[s]) traced.push_back(s);

  std::vector<std::size_t> stride(n, 1);
  for (std::size_t s = n; s-- > 1;) stride[s - 1] = stride[s] * dims[s];

  std::vector<std::uint32_t> out_dims;
  for (std::size_t k : keep) out_dims.push_back(dims[k]);
  const std::size_t out_total = total_dimension(out_dims);
  std::vector<std::uint32_t> traced_dims;
  for (std::size_t t : traced) traced_dims.push_back(dims[t]);
  const std::size_t traced_total = total_dimension(traced_dims);

  // Global offset contributed by each kept index and each traced index.
  auto offsets = [&](std::span<const std::size_t> systems, std::size_t count) {
    std::vector<std::size_t> off(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rem = idx, acc = 0;
      for (std::size_t t = systems.size(); t-- > 0;) {
        acc += (rem % dims[systems[t]]) * stride[systems[t]];
        rem /= dims[systems[t]];
      }
      off[idx] = acc;
    }
    return off;
  };
  const auto keep_off = offsets(keep, out_total);
  const auto trace_off = offsets(traced, traced_total);

  Matrix out = Matrix::Zero(out_total, out_total);
  for (std::size_t a = 0; a < out_total; ++a)
    for (std::size_t b = 0; b < out_total; ++b) {
      std::complex<double> acc(0.0, 0.0);
      for (std::size_t t = 0; t < traced_total; ++t)
        acc += rho.matrix()(keep_off[a] + trace_off[t], keep_off[b] + trace_off[t]);
      out(a, b) = acc;
    }
  return DensityMatrix(std::move(out_dims), std::move(out));
}

double vn_entropy(const DensityMatrix& rho, double base) {
  if (rho.dim() == 1) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  double nats = 0.0;
  for (double lambda : solver.eigenvalues())
    if (lambda > kEigenClamp) nats -= lambda * std::log(lambda);
  return nats / std::log(base);
}

double vn_entropy(const ProductState& state, double base) {
  double total = 0.0;
  for (const auto& f : state.factors) total += vn_entropy(f.rho, base);
  return total;
}

CqEnsemble CqEnsemble::uniform(std::vector<std::uint64_t> labels, std::vector<DensityMatrix> states) {
  CqEnsemble ens;
  ens.weights.assign(states.size(), states.empty() ? 0.0 : 1.0 / static_cast<double>(states.size()));
  ens.labels = std::move(labels);
  ens.states = std::move(states);
  return ens;
}

namespace {

void check_ensemble(const CqEnsemble& ens) {
  if (ens.states.empty()) throw Error("empty ensemble");
  if (ens.states.size() > kEnsembleCap) throw Error("ensemble exceeds the 2^12 member cap");
  if (ens.weights.size() != ens.states.size() || ens.labels.size() != ens.states.size())
    throw Error("ensemble labels, weights and states differ in length");
  double sum = 0.0;
  for (double w : ens.weights) sum += w;
  if (std::abs(sum - 1.0) > kTolerance) throw Error("ensemble weights do not sum to 1");
  for (const auto& s : ens.states)
    if (s.dims() != ens.states.front().dims()) throw Error("ensemble members have mismatched layouts");
}

}  // namespace

DensityMatrix ensemble_average_serial(const CqEnsemble& ens) {
  check_ensemble(ens);
  Matrix sum = Matrix::Zero(ens.states.front().dim(), ens.states.front().dim());
  for (std::size_t m = 0; m < ens.states.size(); ++m) sum += ens.weights[m] * ens.states[m].matrix();
  return DensityMatrix(ens.states.front().dims(), std::move(sum));
}

DensityMatrix ensemble_average(const CqEnsemble& ens) {
  check_ensemble(ens);
  const std::size_t total = ens.states.front().dim();
  Matrix sum(total, total);
  const auto rows = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < total; ++j) {
      std::complex<double> acc(0.0, 0.0);
      for (std::size_t m = 0; m < ens.states.size(); ++m) acc += ens.weights[m] * ens.states[m].matrix()(i, j);
      sum(i, j) = acc;
    }
  return DensityMatrix(ens.states.front().dims(), std::move(sum));
}

CqQuantities cq_quantities(const CqEnsemble& ens, double base) {
  CqQuantities q;
  q.h_avg = vn_entropy(ensemble_average(ens), base);
  std::vector<double> member(ens.states.size());
  const auto count = static_cast<std::int64_t>(ens.states.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t m = 0; m < count; ++m) member[m] = vn_entropy(ens.states[m], base);
  for (std::size_t m = 0; m < member.size(); ++m) q.h_cond += ens.weights[m] * member[m];
  q.holevo = q.h_avg - q.h_cond;
  return q;
}

namespace {

struct CoreSplit {
  std::vector<std::size_t> loose;  // positions pulled out of every member
  std::vector<std::uint32_t> core_dims;
  std::vector<std::size_t> core_index;  // original position -> core position
};

CoreSplit split_shared_loose(const FactoredEnsemble& ens) {
  if (ens.members.empty()) throw Error("empty ensemble");
  if (ens.members.size() > kEnsembleCap) throw Error("ensemble exceeds the 2^12 member cap");
  if (ens.weights.size() != ens.members.size()) throw Error("ensemble weights and members differ in length");
  double sum = 0.0;
  for (double w : ens.weights) sum += w;
  if (std::abs(sum - 1.0) > kTolerance) throw Error("ensemble weights do not sum to 1");

  const auto& dims = ens.members.front().dims;
  auto loose_of = [](const ProductState& s) {
    std::set<std::size_t> out;
    for (const auto& f : s.factors)
      if (f.kind == FactorKind::loose) out.insert(f.positions.front());
    return out;
  };
  std::set<std::size_t> shared = loose_of(ens.members.front());
  for (const auto& m : ens.members) {
    if (m.dims != dims) throw Error("ensemble members have mismatched layouts");
    std::set<std::size_t> mine = loose_of(m), both;
    std::set_intersection(shared.begin(), shared.end(), mine.begin(), mine.end(),
                          std::inserter(both, both.begin()));
    shared = std::move(both);
  }
  CoreSplit split;
  split.loose.assign(shared.begin(), shared.end());
  split.core_index.assign(dims.size(), dims.size());
  for (std::size_t pos = 0; pos < dims.size(); ++pos) {
    if (shared.count(pos) != 0) continue;
    split.core_index[pos] = split.core_dims.size();
    split.core_dims.push_back(dims[pos]);
  }
  if (total_dimension(split.core_dims) > kDimensionCap)
    throw Error("ensemble core dimension exceeds the 2^12 cap");
  return split;
}

ProductState core_of(const ProductState& member, const CoreSplit& split) {
  ProductState core;
  core.dims = split.core_dims;
  for (const auto& f : member.factors) {
    if (f.kind == FactorKind::loose && split.core_index[f.positions.front()] == member.dims.size()) continue;
    Factor g = f;
    for (auto& pos : g.positions) pos = split.core_index[pos];
    core.factors.push_back(std::move(g));
  }
  return core;
}

double loose_entropy(const FactoredEnsemble& ens, const CoreSplit& split, double base) {
  double h = 0.0;
  for (std::size_t pos : split.loose) h += std::log(static_cast<double>(ens.members.front().dims[pos]));
  return h / std::log(base);
}

}  // namespace

CqQuantities cq_quantities_serial(const FactoredEnsemble& ens, double base) {
  const CoreSplit split = split_shared_loose(ens);
  const std::size_t total = total_dimension(split.core_dims);
  Matrix sum = Matrix::Zero(total, total);
  CqQuantities q;
  for (std::size_t m = 0; m < ens.members.size(); ++m) {
    sum += ens.weights[m] * assemble_serial(core_of(ens.members[m], split)).matrix();
    q.h_cond += ens.weights[m] * vn_entropy(ens.members[m], base);
  }
  q.h_avg = vn_entropy(DensityMatrix(split.core_dims, std::move(sum)), base) + loose_entropy(ens, split, base);
  q.holevo = q.h_avg - q.h_cond;
  return q;
}

CqQuantities cq_quantities(const FactoredEnsemble& ens, double base) {
  const CoreSplit split = split_shared_loose(ens);
  const std::size_t total = total_dimension(split.core_dims);
  Matrix sum = Matrix::Zero(total, total);
  double h_cond = 0.0;
  const auto count = static_cast<std::int64_t>(ens.members.size());
#pragma omp parallel
  {
    Matrix local = Matrix::Zero(total, total);
    double local_cond = 0.0;
#pragma omp for schedule(dynamic)
    for (std::int64_t m = 0; m < count; ++m) {
      local += ens.weights[m] * assemble_serial(core_of(ens.members[m], split)).matrix();
      local_cond += ens.weights[m] * vn_entropy(ens.members[m], base);
    }
#pragma omp critical
    {
      sum += local;
      h_cond += local_cond;
    }
  }
  CqQuantities q;
  q.h_cond = h_cond;
  q.h_avg = vn_entropy(DensityMatrix(split.core_dims, std::move(sum)), base) + loose_entropy(ens, split, base);
  q.holevo = q.h_avg - q.h_cond;
  return q;
}

}  // namespace eacc::densim
