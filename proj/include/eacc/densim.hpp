// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "eacc/qsym.hpp"

namespace eacc::densim {

using Matrix = Eigen::MatrixXcd;

/// Largest total dimension ever materialized as a dense matrix.
inline constexpr std::size_t kDimensionCap = std::size_t{1} << 12;
/// Largest ensemble accepted by the classical-quantum routines.
inline constexpr std::size_t kEnsembleCap = std::size_t{1} << 12;
/// Eigenvalues below this are treated as exactly zero.
inline constexpr double kEigenClamp = 1e-12;
/// Comparison tolerance for every derived (in)equality.
inline constexpr double kTolerance = 1e-9;

/// Dense operator on a tensor product; subsystem 0 is the most significant.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<std::uint32_t> dims, Matrix rho);

  static DensityMatrix maximally_mixed(std::vector<std::uint32_t> dims);
  static DensityMatrix basis_projector(std::uint32_t dim, std::uint32_t index);

  const std::vector<std::uint32_t>& dims() const { return dims_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const Matrix& matrix() const { return rho_; }

  /// Hermitian, PSD (eigenvalues >= -tol) and unit trace, all within tol.
  bool is_valid(double tol = kEigenClamp) const;

 private:
  std::vector<std::uint32_t> dims_;
  Matrix rho_;
};

std::size_t total_dimension(std::span<const std::uint32_t> dims);

/// |beta_{x,z}><beta_{x,z}| for beta = (X^x Z^z (x) I)|Phi>, on dim x dim.
DensityMatrix bell_projector(std::uint32_t dim, qsym::Displacement d);

enum class FactorKind { classical, pair, loose };

/// One tensor factor of a product state, acting on the listed positions
/// of the enclosing subsystem list (first position most significant).
struct Factor {
  FactorKind kind;
  std::vector<std::size_t> positions;
  DensityMatrix rho;
};

/// Exact state of a slot subset, kept in tensor-product form.
struct ProductState {
  std::vector<std::uint32_t> dims;
  std::vector<Factor> factors;
};

/// Classical slots give |x><x|, pairs wholly inside give a Bell projector,
/// halves whose partner is outside the subset or erased give I/dim.
/// Throws Error if the subset names an erased slot or repeats a slot.
ProductState to_factors(const qsym::SymbolicState& state, std::span<const qsym::SlotId> subset);

/// Dense tensor product of all factors; throws Error above kDimensionCap.
DensityMatrix assemble(const ProductState& state);
DensityMatrix assemble_serial(const ProductState& state);

DensityMatrix to_density(const qsym::SymbolicState& state, std::span<const qsym::SlotId> subset);

/// Keeps the listed subsystems, in the listed order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

/// -sum lambda log_base lambda over the spectrum.
double vn_entropy(const DensityMatrix& rho, double base);
/// Entropy of a product state: the sum of its factor entropies.
double vn_entropy(const ProductState& state, double base);

struct CqEnsemble {
  std::vector<std::uint64_t> labels;
  std::vector<double> weights;
  std::vector<DensityMatrix> states;

  /// Uniform weights over the given members.
  static CqEnsemble uniform(std::vector<std::uint64_t> labels, std::vector<DensityMatrix> states);
};

struct CqQuantities {
  double h_avg = 0.0;   // S(sum_m p_m sigma_m)
  double h_cond = 0.0;  // sum_m p_m S(sigma_m)
  double holevo = 0.0;  // h_avg - h_cond
};

DensityMatrix ensemble_average(const CqEnsemble& ens);
DensityMatrix ensemble_average_serial(const CqEnsemble& ens);
CqQuantities cq_quantities(const CqEnsemble& ens, double base);

/// Ensemble whose members are product states on a common subsystem list.
struct FactoredEnsemble {
  std::vector<double> weights;
  std::vector<ProductState> members;
};

/// Blockwise evaluation: conditional entropy from factor entropies, the
/// average state densely with loose factors shared by every member pulled
/// out (they are I/dim for every member, so they factor out of the mean).
CqQuantities cq_quantities(const FactoredEnsemble& ens, double base);
CqQuantities cq_quantities_serial(const FactoredEnsemble& ens, double base);

}  // namespace eacc::densim
